"""Closed-form treatment of the Grover step as an SU(2) rotation.

For a step ``Q = -P_gamma U^dagger P_tau U`` the plane spanned by
``gamma`` and ``U^dagger tau`` is invariant. In the orthonormal frame
``|0_L> = gamma'``, ``|1_L> = U^dagger tau`` the step is a rotation by
``4 theta`` about an axis in the XY plane, where ``sin theta = |<tau|U|gamma>|``.
The initial state sits at ``2 theta`` in the same plane, which gives
``P_s = sin^2((2s + 1) theta)`` for the success probability after ``s`` steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    MAX_QUBITS,
    NORM_TOL,
    DenseUnitary,
    DimensionMismatch,
    StateVector,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

# |U_tau_gamma| this close to 0 or 1 is treated as the degenerate endpoint
OVERLAP_TOL = 1e-12


class DegenerateOverlap(ValueError):
    """``<tau|U|gamma> = 0``: rotation axis undefined."""


class SaturatedOverlap(ValueError):
    """``|<tau|U|gamma>| = 1``: the orthonormalized prepared state is undefined."""


@dataclass(frozen=True)
class RotationAxis:
    nx: float
    ny: float

    def __post_init__(self):
        if abs(self.nx**2 + self.ny**2 - 1.0) > NORM_TOL:
            raise ValueError(f"axis ({self.nx}, {self.ny}) is not a unit vector")

    @classmethod
    def from_overlap(cls, u_tau_gamma: complex) -> "RotationAxis":
        """Axis fixed by the phase of the overlap alone."""
        mag = abs(u_tau_gamma)
        if mag <= OVERLAP_TOL:
            raise DegenerateOverlap("zero overlap has no phase")
        phase = u_tau_gamma / mag
        return cls(nx=-phase.imag, ny=phase.real)

    def sigma(self) -> np.ndarray:
        """``n . sigma`` as a 2x2 matrix."""
        return self.nx * SIGMA_X + self.ny * SIGMA_Y


@dataclass(frozen=True, eq=False)
class PseudoSpinReduction:
    u_tau_gamma: complex
    theta: float
    axis: RotationAxis
    q_prime: DenseUnitary


@dataclass(frozen=True)
class PredictionCurve:
    theta: float
    points: tuple[tuple[int, float], ...]

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.points])


def matrix_element(u: DenseUnitary, tau: StateVector, gamma: StateVector) -> complex:
    """``<tau|U|gamma>``."""
    if not (u.dim == tau.dim == gamma.dim):
        raise DimensionMismatch(
            f"operator dim {u.dim} with states of dim {tau.dim}, {gamma.dim}"
        )
    return complex(np.vdot(tau.amps, u.matrix @ gamma.amps))


def _interior_overlap(u, gamma, tau) -> complex:
    ov = matrix_element(u, tau, gamma)
    mag = abs(ov)
    if mag <= OVERLAP_TOL:
        raise DegenerateOverlap(f"|<tau|U|gamma>| = {mag:.3e}; the step leaves tau untouched")
    if mag >= 1.0 - OVERLAP_TOL:
        raise SaturatedOverlap(f"|<tau|U|gamma>| = {mag!r}; gamma' is undefined")
    return ov


def gamma_prime(u: DenseUnitary, gamma: StateVector, tau: StateVector) -> StateVector:
    """Component of ``gamma`` orthogonal to ``U^dagger tau``, normalized."""
    ov = matrix_element(u, tau, gamma)
    if abs(ov) >= 1.0 - OVERLAP_TOL:
        raise SaturatedOverlap(f"|<tau|U|gamma>| = {abs(ov)!r}; gamma' is undefined")
    back = u.matrix.conj().T @ tau.amps
    return StateVector((gamma.amps - ov * back) / math.sqrt(1.0 - abs(ov) ** 2))


def pseudo_spin_basis(u: DenseUnitary, gamma: StateVector, tau: StateVector) -> np.ndarray:
    """Columns ``[gamma', U^dagger tau]``, an isometry onto the invariant plane."""
    gp = gamma_prime(u, gamma, tau)
    return np.stack([gp.amps, u.matrix.conj().T @ tau.amps], axis=1)


def su2_rotation(axis: RotationAxis, angle: float) -> DenseUnitary:
    """``exp(-i angle/2 n.sigma) = cos(angle/2) I - i sin(angle/2) n.sigma``."""
    if abs(axis.nx**2 + axis.ny**2 - 1.0) > NORM_TOL:
        raise ValueError("rotation axis must be a unit vector")
    half = angle / 2
    return DenseUnitary(math.cos(half) * np.eye(2) - 1j * math.sin(half) * axis.sigma())


def reduce(u: DenseUnitary, gamma: StateVector, tau: StateVector) -> PseudoSpinReduction:
    """Reduce the Grover step for ``(U, gamma, tau)`` to its 2x2 rotation."""
    ov = _interior_overlap(u, gamma, tau)
    mag = abs(ov)
    theta = math.asin(min(mag, 1.0))
    phase = ov / mag
    c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
    q_prime = DenseUnitary(
        [
            [c2, -phase.conjugate() * s2],
            [phase * s2, c2],
        ]
    )
    return PseudoSpinReduction(
        u_tau_gamma=ov,
        theta=theta,
        axis=RotationAxis.from_overlap(ov),
        q_prime=q_prime,
    )


def predict(theta: float, s_max: int) -> PredictionCurve:
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    if s_max < 0:
        raise ValueError("s_max must be non-negative")
    pts = tuple((s, math.sin((2 * s + 1) * theta) ** 2) for s in range(s_max + 1))
    return PredictionCurve(theta=theta, points=pts)


def overlap_theta(u: DenseUnitary, gamma: StateVector, tau: StateVector) -> float:
    return math.asin(min(abs(matrix_element(u, tau, gamma)), 1.0))


def w_theta(n: int) -> float:
    """Overlap angle of the ``W_n`` layer between any two basis states."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must lie in [1, {MAX_QUBITS}], got {n}")
    return math.asin(2.0 ** (-n / 2))
