"""Grover search over an X-rotation / controlled-Y gate set, simulated densely
and checked against the closed-form success probability ``sin^2((2s+1) theta)``."""

from .analytic import (
    DegenerateOverlap,
    PredictionCurve,
    PseudoSpinReduction,
    RotationAxis,
    SaturatedOverlap,
    gamma_prime,
    matrix_element,
    predict,
    reduce,
    su2_rotation,
    w_theta,
)
from .gates import (
    Circuit,
    compile_circuit,
    load_unitary,
    m_gate,
    phase_flip_basis,
    reflection_about_state,
    u_gate,
    w_layer,
    w_layer_adjoint,
)
from .grover import GroverSpec, StepTrace, Variant, build_step, optimal_iterations, run
from .linalg import (
    DenseUnitary,
    StateVector,
    adjoint,
    apply,
    basis_state,
    equal_up_to_global_phase,
    from_bitstring,
    inner_product,
    multiply,
    tensor,
)

__version__ = "0.1.0"
