"""Dense complex vector / matrix kernel.

Basis labels are read with qubit 0 as the most significant bit, so
``tensor(a, b)`` puts ``a`` on the lower-numbered qubit and the bitstring
``"011"`` is basis index 3 of a 3-qubit register.

Both container types are immutable: the wrapped arrays are flagged
read-only on construction.
"""

from __future__ import annotations

from typing import Union

import numpy as np
from scipy.stats import unitary_group

NORM_TOL = 1e-12
UNITARITY_TOL = 1e-10
MAX_QUBITS = 12


class DimensionMismatch(ValueError):
    pass


class NotNormalizedError(ValueError):
    pass


class NotUnitaryError(ValueError):
    pass


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite entries are not allowed")
    arr.setflags(write=False)
    return arr


def _qubits_for(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of 2")
    return n


class StateVector:
    """Normalized register state with ``2**n_qubits`` amplitudes."""

    __slots__ = ("amps", "n_qubits")

    def __init__(self, amps, tol: float = NORM_TOL):
        amps = _frozen(amps)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        n = _qubits_for(amps.shape[0])
        if n > MAX_QUBITS:
            raise ValueError(f"at most {MAX_QUBITS} qubits are supported, got {n}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > tol:
            raise NotNormalizedError(f"state has squared norm {norm2!r}")
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "n_qubits", n)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __array__(self, dtype=None, copy=None):
        return self.amps if dtype is None else self.amps.astype(dtype)

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, amps={self.amps!r})"

    def basis_index(self, tol: float = NORM_TOL) -> int | None:
        """Index ``m`` if this is ``e^{i phi}|m>``, else None."""
        k = int(np.argmax(np.abs(self.amps)))
        if abs(abs(self.amps[k]) - 1.0) <= tol:
            return k
        return None


class DenseUnitary:
    """Square complex matrix, unitary within ``UNITARITY_TOL``."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = UNITARITY_TOL):
        matrix = _frozen(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise ValueError(f"expected a non-empty square matrix, got shape {matrix.shape}")
        res = unitarity_residual(matrix)
        if res > tol:
            raise NotUnitaryError(f"unitarity residual {res:.3e} exceeds {tol:.1e}")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("DenseUnitary is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return _qubits_for(self.dim)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self) -> str:
        return f"DenseUnitary(dim={self.dim}, matrix={self.matrix!r})"


MatrixLike = Union[DenseUnitary, np.ndarray]


def unitarity_residual(m) -> float:
    """Max entrywise deviation of ``m m^dagger`` from the identity."""
    m = np.asarray(m)
    d = np.diagonal(m)
    if np.count_nonzero(m) == np.count_nonzero(d):
        # diagonal: O(dim) instead of a dense product
        return float(np.max(np.abs(np.abs(d) ** 2 - 1)))
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def identity(dim: int) -> DenseUnitary:
    return DenseUnitary(np.eye(dim))


def basis_state(n_qubits: int, index: int) -> StateVector:
    dim = 1 << n_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def from_bitstring(bits: str) -> StateVector:
    """Basis state labelled by ``bits``, qubit 0 first."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"invalid bitstring {bits!r}")
    return basis_state(len(bits), int(bits, 2))


def to_bitstring(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugating the first argument."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot take <{a.dim}|{b.dim}>")
    return complex(np.vdot(a.amps, b.amps))


def apply(u: DenseUnitary, v: StateVector) -> StateVector:
    if u.dim != v.dim:
        raise DimensionMismatch(f"operator of dim {u.dim} applied to vector of dim {v.dim}")
    return StateVector(u.matrix @ v.amps)


def tensor(a: DenseUnitary, b: DenseUnitary) -> DenseUnitary:
    return DenseUnitary(np.kron(a.matrix, b.matrix))


def tensor_power(a: DenseUnitary, n: int) -> DenseUnitary:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    out = a.matrix
    for _ in range(n - 1):
        out = np.kron(out, a.matrix)
    return DenseUnitary(out)


def multiply(a: DenseUnitary, b: DenseUnitary) -> DenseUnitary:
    """Matrix product ``a @ b`` (``b`` acts first)."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot multiply dims {a.dim} and {b.dim}")
    return DenseUnitary(a.matrix @ b.matrix)


def adjoint(a: DenseUnitary) -> DenseUnitary:
    return DenseUnitary(a.matrix.conj().T)


def negate(a: DenseUnitary) -> DenseUnitary:
    return DenseUnitary(-a.matrix)


def equal_up_to_global_phase(a: MatrixLike, b: MatrixLike, tol: float = UNITARITY_TOL) -> bool:
    """True if ``max |a - e^{i phi} b| <= tol`` for some phase.

    The phase is read off ``b``'s largest-magnitude entry, which keeps the
    division well away from zero.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if b[k] == 0 or not np.any(a):
        raise ValueError("global phase is undefined for an all-zero matrix")
    ratio = a[k] / b[k]
    if ratio == 0:
        return False
    phase = ratio / abs(ratio)
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def random_unitary(dim: int, rng=None) -> DenseUnitary:
    """Haar-random unitary of size ``dim``."""
    if dim == 1:
        rng = np.random.default_rng(rng)
        return DenseUnitary([[np.exp(2j * np.pi * rng.random())]])
    return DenseUnitary(unitary_group.rvs(dim, random_state=rng))
