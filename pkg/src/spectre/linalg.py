"""Dense complex matrices, antiunitary operators and numerical tolerances.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything
handed out by this module is marked read-only so that triples built on top
of it can be shared freely.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_matrix",
    "dagger",
    "max_abs",
    "is_hermitian",
    "is_unitary",
    "Antiunitary",
    "antiunitary_square",
    "conjugate_by_antiunitary",
    "tensor",
    "eigenvalues_hermitian",
    "matrix_to_json",
    "matrix_from_json",
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used by every residual check."""

    abs_eps: float = 1e-10
    rel_eps: float = 1e-8

    def __post_init__(self):
        for name in ("abs_eps", "rel_eps"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and nonnegative, got {v!r}")
            object.__setattr__(self, name, v)

    def threshold(self, scale: float = 0.0) -> float:
        return self.abs_eps + self.rel_eps * scale

    @classmethod
    def from_env(cls, var: str = "SPECTRE_TOL") -> "Tolerance":
        """Read ``abs`` or ``abs,rel`` from an environment variable."""
        raw = os.environ.get(var)
        if not raw:
            return cls()
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) == 1:
            return cls(abs_eps=float(parts[0]))
        if len(parts) == 2:
            return cls(abs_eps=float(parts[0]), rel_eps=float(parts[1]))
        raise ValueError(f"cannot parse {var}={raw!r}; expected 'abs' or 'abs,rel'")


DEFAULT_TOL = Tolerance()


def as_matrix(m, *, copy: bool = True) -> np.ndarray:
    """Validate ``m`` as a finite square complex matrix and freeze it.

    With ``copy=False`` an already frozen complex array is passed through;
    anything writable is still copied so callers' arrays are never frozen.
    """
    if (not copy and isinstance(m, np.ndarray) and m.dtype == np.complex128
            and not m.flags.writeable):
        a = m
    else:
        a = np.array(m, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    a.flags.writeable = False
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    return max_abs(m - dagger(m)) <= tol.threshold(max_abs(m))


def is_unitary(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    return max_abs(dagger(m) @ m - np.eye(len(m))) <= tol.threshold(1.0)


# Pauli matrices; SIGMA0 is the identity.
SIGMA0 = as_matrix([[1, 0], [0, 1]])
SIGMA1 = as_matrix([[0, 1], [1, 0]])
SIGMA2 = as_matrix([[0, -1j], [1j, 0]])
SIGMA3 = as_matrix([[1, 0], [0, -1]])


@dataclass(frozen=True, eq=False)
class Antiunitary:
    """Antiunitary ``J v = u @ conj(v)`` relative to the standard basis.

    Unitarity of ``u`` is not enforced here; :func:`spectre.triple.verify`
    reports it as a residual so that damaged inputs can still be inspected.
    """

    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", as_matrix(self.u))

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.u @ np.conj(np.asarray(v, dtype=np.complex128))

    def square(self) -> np.ndarray:
        return antiunitary_square(self)

    def conjugate(self, m) -> np.ndarray:
        return conjugate_by_antiunitary(self, m)

    def compose(self, linear) -> "Antiunitary":
        """The antiunitary ``J∘L`` for a linear operator ``L``."""
        return Antiunitary(self.u @ np.conj(as_matrix(linear)))

    def inverse(self) -> "Antiunitary":
        # J^{-1} w = conj(u^{-1} w); equals J* when u is unitary
        return Antiunitary(np.conj(np.linalg.inv(self.u)))

    def unitary_residual(self) -> float:
        return max_abs(dagger(self.u) @ self.u - np.eye(self.dim))

    def __repr__(self):
        return f"Antiunitary(dim={self.dim})"


def antiunitary_square(j: Antiunitary) -> np.ndarray:
    """Matrix of the linear operator ``J²``, i.e. ``u @ conj(u)``."""
    out = j.u @ np.conj(j.u)
    out.flags.writeable = False
    return out


def conjugate_by_antiunitary(j: Antiunitary, m) -> np.ndarray:
    """``J m J*`` as a matrix: ``u @ conj(m) @ u†``."""
    m = as_matrix(m, copy=False)
    if m.shape != j.u.shape:
        raise ValueError(f"dimension mismatch: operator {m.shape} vs antiunitary {j.u.shape}")
    out = j.u @ np.conj(m) @ dagger(j.u)
    out.flags.writeable = False
    return out


def tensor(*factors) -> np.ndarray:
    """Kronecker product; the leftmost factor carries the slowest index."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f, copy=False))
    out.flags.writeable = False
    return out


def eigenvalues_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    m = as_matrix(m, copy=False)
    if not is_hermitian(m, tol):
        raise ValueError("eigenvalues_hermitian requires a Hermitian matrix")
    # symmetrize so eigvalsh sees exactly Hermitian data
    return np.linalg.eigvalsh((m + dagger(m)) / 2)


def matrix_to_json(m) -> list:
    """Array-of-rows with ``[re, im]`` entries (floats, exact repr)."""
    m = as_matrix(m, copy=False)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows: Sequence[Sequence[Iterable[float]]]) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ValueError("matrix must be a nonempty list of rows")
    n = len(rows)
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"row {i} must have {n} entries")
        for k, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ValueError(f"entry ({i}, {k}) must be a [re, im] pair")
            re, im = entry
            out[i, k] = complex(float(re), float(im))
    return as_matrix(out, copy=False)
