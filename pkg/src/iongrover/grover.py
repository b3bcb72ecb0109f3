"""Grover search with the ion gate set: corrected and original diffusion.

One step is ``Q = -P_gamma U^dagger P_tau U``. The original sequence builds
the diffusion as ``W P W`` instead of ``W P W^dagger``, i.e. it uses ``U``
where ``U^dagger`` belongs; that is the only difference modelled here.
Success after ``s`` steps is read out as ``|<tau|U Q^s|gamma>|^2``, the
trailing ``U`` being the final W layer of the circuit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .analytic import overlap_theta
from .gates import (
    Circuit,
    PhaseFlipState,
    compile_circuit,
    w_layer,
    w_ops,
)
from .linalg import MAX_QUBITS, DenseUnitary, DimensionMismatch, StateVector, basis_state


class Variant(enum.Enum):
    CORRECTED = "corrected"
    FENG_ORIGINAL = "feng"
    GENERAL_U = "general"


@dataclass(frozen=True, eq=False)
class GroverSpec:
    """A search instance.

    ``gamma`` defaults to ``|0...0>``. ``u`` defaults to ``W_n`` and is
    required for ``Variant.GENERAL_U``. ``max_iterations`` defaults to
    ``2 * ceil(pi / (4 theta))``, one full period of the success curve.
    """

    n_qubits: int
    tau: StateVector
    gamma: StateVector | None = None
    variant: Variant = Variant.CORRECTED
    u: DenseUnitary | None = None
    max_iterations: int | None = None

    def __post_init__(self):
        n = self.n_qubits
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"n_qubits must lie in [1, {MAX_QUBITS}], got {n}")
        variant = Variant(self.variant)
        object.__setattr__(self, "variant", variant)
        if self.gamma is None:
            object.__setattr__(self, "gamma", basis_state(n, 0))
        if self.u is None:
            if variant is Variant.GENERAL_U:
                raise ValueError("the general variant needs an explicit unitary")
            object.__setattr__(self, "u", w_layer(n))
        dim = 1 << n
        for name in ("gamma", "tau", "u"):
            if getattr(self, name).dim != dim:
                raise DimensionMismatch(f"{name} does not live on {n} qubits")
        if self.max_iterations is None:
            theta = overlap_theta(self.u, self.gamma, self.tau)
            if theta <= 0.0:
                raise ValueError("zero overlap: pass max_iterations explicitly")
            object.__setattr__(self, "max_iterations", 2 * math.ceil(math.pi / (4 * theta)))
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")


@dataclass(frozen=True, eq=False)
class StepTrace:
    s: int
    success_probability: float
    marked_amplitude_magnitude: float
    full_state: StateVector | None = None


def _reflect(state: StateVector, mat: np.ndarray) -> np.ndarray:
    """``(I - 2|v><v|) @ mat`` without forming the reflection."""
    m = state.basis_index()
    out = mat.copy()
    if m is not None:
        out[m, :] *= -1
    else:
        v = state.amps
        out -= 2 * np.outer(v, v.conj() @ mat)
    return out


def build_step(spec: GroverSpec) -> DenseUnitary:
    """``-P_gamma U^dagger P_tau U``, or ``-P_gamma U P_tau U`` for the original sequence."""
    u = spec.u.matrix
    back = u if spec.variant is Variant.FENG_ORIGINAL else u.conj().T
    return DenseUnitary(-_reflect(spec.gamma, back @ _reflect(spec.tau, u)))


def run(spec: GroverSpec, emit_state: bool = False) -> list[StepTrace]:
    q = build_step(spec).matrix
    u = spec.u.matrix
    tau = spec.tau.amps
    psi = spec.gamma.amps
    out = []
    for s in range(spec.max_iterations + 1):
        if s:
            psi = q @ psi
        amp = abs(np.vdot(tau, u @ psi))
        out.append(
            StepTrace(
                s=s,
                success_probability=min(amp * amp, 1.0),
                marked_amplitude_magnitude=min(amp, 1.0),
                full_state=StateVector(psi) if emit_state else None,
            )
        )
    return out


def success_probabilities(spec: GroverSpec) -> np.ndarray:
    return np.array([t.success_probability for t in run(spec)])


def optimal_iterations(theta: float) -> int:
    """Step count whose angle ``(2s+1) theta`` lands closest to ``pi/2``.

    This is the first peak of ``sin^2((2s+1) theta)``; ties go to the
    smaller ``s``.
    """
    if not 0.0 < theta <= math.pi / 2:
        raise ValueError(f"theta must lie in (0, pi/2], got {theta}")
    x = (math.pi / (2 * theta) - 1) / 2
    lo, hi = max(math.floor(x), 0), max(math.ceil(x), 0)
    d_lo = abs((2 * lo + 1) * theta - math.pi / 2)
    d_hi = abs((2 * hi + 1) * theta - math.pi / 2)
    return hi if d_hi < d_lo - 1e-12 else lo


def fig1_circuit(gamma: StateVector, tau: StateVector) -> Circuit:
    """One corrected iteration followed by the readout layer, as a gate list.

    ``W, P_tau, W^dagger, P_gamma, W``: applied to ``gamma`` it prepares
    ``-W Q gamma``, whose overlap with ``tau`` is the s = 1 success amplitude.
    """
    n = gamma.n_qubits
    if tau.n_qubits != n:
        raise DimensionMismatch("gamma and tau live on different registers")
    ops = [
        *w_ops(n),
        PhaseFlipState(tau),
        *w_ops(n, adjoint=True),
        PhaseFlipState(gamma),
        *w_ops(n),
    ]
    return Circuit(n, ops)


def circuit_success_probability(circuit: Circuit, gamma: StateVector, tau: StateVector) -> float:
    out = compile_circuit(circuit).matrix @ gamma.amps
    return float(abs(np.vdot(tau.amps, out)) ** 2)
