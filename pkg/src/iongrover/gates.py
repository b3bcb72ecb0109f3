"""The X-rotation / controlled-Y gate set, reflections, and a circuit compiler.

``u_gate(theta)`` is the ion X rotation ``R_x(2 theta)``; ``W_n`` is the
n-fold tensor power of ``R_x(-pi/2)`` and stands in for the Hadamard layer.
Phase-flip indices are zero-based computational basis labels
(``m = 0`` is ``|0...0>``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .linalg import (
    MAX_QUBITS,
    UNITARITY_TOL,
    DenseUnitary,
    DimensionMismatch,
    NotUnitaryError,
    StateVector,
    tensor_power,
)

PAULI_Y = np.array([[0, -1j], [1j, 0]])


def u_gate(theta: float) -> DenseUnitary:
    """Single-qubit X rotation ``[[cos t, -i sin t], [-i sin t, cos t]]``."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    c, s = math.cos(theta), math.sin(theta)
    return DenseUnitary([[c, -1j * s], [-1j * s, c]])


def m_gate() -> DenseUnitary:
    """Controlled-Y on two qubits, control = qubit 0."""
    return DenseUnitary(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, -1j],
            [0, 0, 1j, 0],
        ]
    )


def multi_controlled_y(n_controls: int) -> DenseUnitary:
    """Pauli Y on the last qubit iff all ``n_controls`` leading qubits are 1."""
    if n_controls < 0:
        raise ValueError("n_controls must be non-negative")
    dim = 1 << (n_controls + 1)
    m = np.eye(dim, dtype=complex)
    m[-2:, -2:] = PAULI_Y
    return DenseUnitary(m)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must lie in [1, {MAX_QUBITS}], got {n}")


def w_layer(n: int) -> DenseUnitary:
    _check_n(n)
    return tensor_power(u_gate(-math.pi / 4), n)


def w_layer_adjoint(n: int) -> DenseUnitary:
    _check_n(n)
    return tensor_power(u_gate(math.pi / 4), n)


def phase_flip_basis(n: int, m: int) -> DenseUnitary:
    """Diagonal sign flip of basis state ``m`` on ``n`` qubits."""
    _check_n(n)
    dim = 1 << n
    if not 0 <= m < dim:
        raise ValueError(f"basis index {m} out of range for {n} qubits")
    d = np.ones(dim, dtype=complex)
    d[m] = -1
    return DenseUnitary(np.diag(d))


def reflection_about_state(gamma: StateVector) -> DenseUnitary:
    """``I - 2|gamma><gamma|``; exact sign flip when ``gamma`` is a basis state."""
    if not isinstance(gamma, StateVector):
        gamma = StateVector(gamma)
    m = gamma.basis_index()
    if m is not None:
        return phase_flip_basis(gamma.n_qubits, m)
    v = gamma.amps
    return DenseUnitary(np.eye(gamma.dim) - 2 * np.outer(v, v.conj()))


# -- symbolic circuits ------------------------------------------------------


@dataclass(frozen=True)
class XRotation:
    """``u_gate(theta)`` on ``target``; note ``theta`` is half the Bloch angle."""

    theta: float
    target: int


@dataclass(frozen=True)
class ControlledY:
    control: int
    target: int


@dataclass(frozen=True)
class MultiControlledY:
    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))


@dataclass(frozen=True)
class PhaseFlipBasis:
    m: int


@dataclass(frozen=True, eq=False)
class PhaseFlipState:
    gamma: StateVector


@dataclass(frozen=True, eq=False)
class Custom:
    u: DenseUnitary
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.u.dim != 1 << len(self.qubits):
            raise DimensionMismatch(
                f"{self.u.dim}-dim unitary cannot act on {len(self.qubits)} qubits"
            )


GateOp = Union[XRotation, ControlledY, MultiControlledY, PhaseFlipBasis, PhaseFlipState, Custom]


@dataclass(frozen=True)
class Circuit:
    """Gate list applied to the register left to right."""

    n_qubits: int
    ops: tuple = field(default_factory=tuple)

    def __post_init__(self):
        _check_n(self.n_qubits)
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            _local(op, self.n_qubits)

    def then(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatch("circuits act on different registers")
        return Circuit(self.n_qubits, self.ops + other.ops)


def _check_qubits(qubits: Sequence[int], n: int) -> None:
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated qubit in {tuple(qubits)}")
    for q in qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for a {n}-qubit register")


def _local(op, n: int) -> tuple[np.ndarray, tuple[int, ...] | None]:
    """Local matrix and the qubits it acts on (None means the full register)."""
    if isinstance(op, XRotation):
        qubits, mat = (op.target,), u_gate(op.theta).matrix
    elif isinstance(op, ControlledY):
        qubits, mat = (op.control, op.target), m_gate().matrix
    elif isinstance(op, MultiControlledY):
        qubits = op.controls + (op.target,)
        mat = multi_controlled_y(len(op.controls)).matrix
    elif isinstance(op, Custom):
        qubits, mat = op.qubits, op.u.matrix
    elif isinstance(op, PhaseFlipBasis):
        return phase_flip_basis(n, op.m).matrix, None
    elif isinstance(op, PhaseFlipState):
        if op.gamma.n_qubits != n:
            raise DimensionMismatch("reflection state does not match the register")
        return reflection_about_state(op.gamma).matrix, None
    else:
        raise TypeError(f"unknown gate op {op!r}")
    _check_qubits(qubits, n)
    return mat, qubits


def embed(local: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """Lift a k-qubit matrix acting on ``qubits`` (in that order) to ``n`` qubits."""
    k = len(qubits)
    _check_qubits(qubits, n)
    if local.shape != (1 << k, 1 << k):
        raise DimensionMismatch(f"matrix of shape {local.shape} does not fit {k} qubits")
    dim = 1 << n
    # columns of the identity as an n-index tensor, plus one trailing column index
    full = np.eye(dim, dtype=complex).reshape([2] * n + [dim])
    g = local.reshape([2] * (2 * k))
    out = np.tensordot(g, full, axes=(list(range(k, 2 * k)), list(qubits)))
    out = np.moveaxis(out, list(range(k)), list(qubits))
    return out.reshape(dim, dim)


def compile_circuit(c: Circuit) -> DenseUnitary:
    """Dense unitary of ``c``; the first op is the rightmost factor."""
    dim = 1 << c.n_qubits
    total = np.eye(dim, dtype=complex)
    for op in c.ops:
        mat, qubits = _local(op, c.n_qubits)
        if qubits is not None:
            mat = embed(mat, qubits, c.n_qubits)
        total = mat @ total
    return DenseUnitary(total)


def w_ops(n: int, adjoint: bool = False) -> list[XRotation]:
    theta = math.pi / 4 if adjoint else -math.pi / 4
    return [XRotation(theta, q) for q in range(n)]


# -- unitary files ----------------------------------------------------------


class UnitaryFileError(ValueError):
    pass


def unitary_to_json(u: DenseUnitary) -> dict:
    return {
        "dim": u.dim,
        "entries": [[float(z.real), float(z.imag)] for z in u.matrix.ravel()],
    }


def unitary_from_json(obj: dict, tol: float = UNITARITY_TOL) -> DenseUnitary:
    """Parse ``{"dim": d, "entries": [[re, im], ...]}`` (row-major)."""
    try:
        dim = obj["dim"]
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise UnitaryFileError("expected an object with 'dim' and 'entries'") from exc
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise UnitaryFileError(f"'dim' must be a positive integer, got {dim!r}")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise UnitaryFileError(f"'entries' must hold {dim * dim} [re, im] pairs")
    flat = np.empty(dim * dim, dtype=complex)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise UnitaryFileError(f"entry {i} is not a [re, im] pair of numbers: {pair!r}")
        flat[i] = complex(pair[0], pair[1])
    try:
        return DenseUnitary(flat.reshape(dim, dim), tol=tol)
    except (NotUnitaryError, ValueError) as exc:
        raise UnitaryFileError(str(exc)) from exc


def load_unitary(path) -> DenseUnitary:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UnitaryFileError(f"{path}: not valid JSON ({exc})") from exc
    return unitary_from_json(obj)


def save_unitary(u: DenseUnitary, path) -> None:
    Path(path).write_text(json.dumps(unitary_to_json(u)))

