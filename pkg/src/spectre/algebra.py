"""Finite C*-algebras given as direct sums of matrix factors.

An algebra is declared by its Wedderburn data (a list of factors
``M_k(R)``, ``M_k(C)`` or ``M_k(H)``) together with the scalar field it is
considered over. Elements are coefficient vectors over the standard basis of
matrix units; over the reals complex and quaternionic factors contribute the
extra units ``i`` (resp. ``i, j, k``).

Quaternions are embedded in ``M_2(C)`` as ``a + bi + cj + dk ↦
[[a + bi, c + di], [-c + di, a - bi]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, as_matrix, dagger, max_abs

__all__ = [
    "Field",
    "AlgebraFactor",
    "BasisElement",
    "StructuredAlgebra",
    "Representation",
    "standard_basis",
    "center_basis",
    "diagonal_center",
    "diagonal_center_dense",
    "diagonal_center_coordinates",
    "defining_representation",
    "scalar_representation",
    "tensor_algebras",
    "tensor_representations",
    "realify",
    "is_quaternionic",
    "nullspace",
    "QUATERNION_UNITS",
    "amplify",
    "conjugate_representation",
]


class Field(str, Enum):
    REAL = "R"
    COMPLEX = "C"
    QUATERNION = "H"

    @classmethod
    def parse(cls, value) -> "Field":
        if isinstance(value, Field):
            return value
        key = str(value).strip().upper()
        aliases = {"R": cls.REAL, "REAL": cls.REAL, "C": cls.COMPLEX, "COMPLEX": cls.COMPLEX,
                   "H": cls.QUATERNION, "QUATERNION": cls.QUATERNION, "QUATERNIONIC": cls.QUATERNION}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown field {value!r}") from None


QUATERNION_UNITS = {
    "1": as_matrix([[1, 0], [0, 1]]),
    "i": as_matrix([[1j, 0], [0, -1j]]),
    "j": as_matrix([[0, 1], [-1, 0]]),
    "k": as_matrix([[0, 1j], [1j, 0]]),
}
_COMPLEX_UNITS = {"1": 1.0, "i": 1j}


@dataclass(frozen=True)
class AlgebraFactor:
    size: int
    field: Field = Field.COMPLEX

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 1:
            raise ValueError(f"factor size must be a positive integer, got {self.size!r}")
        object.__setattr__(self, "size", int(self.size))
        object.__setattr__(self, "field", Field.parse(self.field))

    @property
    def block_dim(self) -> int:
        """Dimension of the defining complex module."""
        return 2 * self.size if self.field is Field.QUATERNION else self.size

    def __str__(self):
        return f"M{self.size}({self.field.value})"


class BasisElement(NamedTuple):
    factor: int
    row: int
    col: int
    unit: str = "1"

    def __str__(self):
        suffix = "" if self.unit == "1" else f"*{self.unit}"
        return f"f{self.factor}:e{self.row}{self.col}{suffix}"


@dataclass(frozen=True, eq=False)
class StructuredAlgebra:
    factors: tuple
    scalar_field: Field = Field.COMPLEX

    def __post_init__(self):
        factors = tuple(f if isinstance(f, AlgebraFactor) else AlgebraFactor(*f) for f in self.factors)
        if not factors:
            raise ValueError("an algebra needs at least one factor")
        field = Field.parse(self.scalar_field)
        if field is Field.QUATERNION:
            raise ValueError("scalar field must be R or C")
        if field is Field.COMPLEX and any(f.field is not Field.COMPLEX for f in factors):
            raise ValueError("over C every factor must be complex")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "scalar_field", field)

    @classmethod
    def of(cls, *factors, scalar_field="C") -> "StructuredAlgebra":
        """Shorthand: ``StructuredAlgebra.of((2, 'C'), (1, 'C'))``."""
        return cls(tuple(AlgebraFactor(*f) if isinstance(f, tuple) else AlgebraFactor(f)
                         for f in factors), Field.parse(scalar_field))

    def __eq__(self, other):
        return (isinstance(other, StructuredAlgebra) and self.factors == other.factors
                and self.scalar_field == other.scalar_field)

    def __hash__(self):
        return hash((self.factors, self.scalar_field))

    def __str__(self):
        return " + ".join(map(str, self.factors)) + f" over {self.scalar_field.value}"

    @property
    def is_real(self) -> bool:
        return self.scalar_field is Field.REAL

    @cached_property
    def basis(self) -> tuple:
        out = []
        for idx, f in enumerate(self.factors):
            if self.scalar_field is Field.COMPLEX or f.field is Field.REAL:
                units = ("1",)
            elif f.field is Field.COMPLEX:
                units = ("1", "i")
            else:
                units = ("1", "i", "j", "k")
            for p in range(f.size):
                for q in range(f.size):
                    for u in units:
                        out.append(BasisElement(idx, p, q, u))
        return tuple(out)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def defining_dim(self) -> int:
        return sum(f.block_dim for f in self.factors)

    def _offsets(self):
        off, out = 0, []
        for f in self.factors:
            out.append(off)
            off += f.block_dim
        return out

    def defining_image(self, b: BasisElement) -> np.ndarray:
        f = self.factors[b.factor]
        off = self._offsets()[b.factor]
        n = self.defining_dim
        out = np.zeros((n, n), dtype=np.complex128)
        if f.field is Field.QUATERNION:
            q = QUATERNION_UNITS[b.unit]
            r, c = off + 2 * b.row, off + 2 * b.col
            out[r:r + 2, c:c + 2] = q
        else:
            out[off + b.row, off + b.col] = _COMPLEX_UNITS[b.unit]
        out.flags.writeable = False
        return out

    @cached_property
    def defining_images(self) -> tuple:
        return tuple(self.defining_image(b) for b in self.basis)

    @cached_property
    def _stack(self) -> np.ndarray:
        return np.stack(self.defining_images)

    def defining(self, coeffs) -> np.ndarray:
        """Matrix of the element ``coeffs`` in the defining representation."""
        return np.tensordot(self.coerce(coeffs), self._stack, axes=1)

    def coerce(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        if c.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coefficients, got {c.shape[0]}")
        if self.is_real and max_abs(c.imag) > 0:
            raise ValueError("coefficients of an algebra over R must be real")
        return c

    @cached_property
    def _coord_solver(self):
        return _CoordinateSolver(self.defining_images, self.is_real)

    def coords(self, matrix) -> np.ndarray:
        """Coefficients of ``matrix`` given in the defining representation."""
        return self._coord_solver(matrix)

    @cached_property
    def unit(self) -> np.ndarray:
        c = np.zeros(self.dim, dtype=np.complex128)
        for i, b in enumerate(self.basis):
            if b.row == b.col and b.unit == "1":
                c[i] = 1.0
        c.flags.writeable = False
        return c

    def basis_vector(self, i: int) -> np.ndarray:
        c = np.zeros(self.dim, dtype=np.complex128)
        c[i] = 1.0
        return c

    def multiply(self, x, y) -> np.ndarray:
        return self.coords(self.defining(x) @ self.defining(y))

    def star(self, x) -> np.ndarray:
        return self.coords(dagger(self.defining(x)))

    def to_json(self) -> dict:
        return {"scalar_field": self.scalar_field.value,
                "factors": [{"size": f.size, "field": f.field.value} for f in self.factors]}

    @classmethod
    def from_json(cls, doc: dict) -> "StructuredAlgebra":
        factors = tuple(AlgebraFactor(int(f["size"]), Field.parse(f.get("field", "C")))
                        for f in doc["factors"])
        return cls(factors, Field.parse(doc.get("scalar_field", "C")))


class _CoordinateSolver:
    """Least-squares inverse of ``c ↦ Σ c_i B_i`` for linearly independent ``B_i``."""

    def __init__(self, images: Sequence[np.ndarray], real: bool):
        self.real = real
        cols = np.stack([np.asarray(b).reshape(-1) for b in images], axis=1)
        if real:
            cols = np.vstack([cols.real, cols.imag])
        self.pinv = np.linalg.pinv(cols)

    def __call__(self, matrix) -> np.ndarray:
        v = np.asarray(matrix, dtype=np.complex128).reshape(-1)
        if self.real:
            return (self.pinv @ np.concatenate([v.real, v.imag])).astype(np.complex128)
        return self.pinv @ v


def standard_basis(a: StructuredAlgebra) -> list:
    return list(a.basis)


def center_basis(a: StructuredAlgebra) -> list:
    """One central element per factor unit; over R complex factors add ``i·1``."""
    out = []
    for idx, f in enumerate(a.factors):
        units = ("1", "i") if (a.is_real and f.field is Field.COMPLEX) else ("1",)
        for u in units:
            c = np.zeros(a.dim, dtype=np.complex128)
            for i, b in enumerate(a.basis):
                if b.factor == idx and b.row == b.col and b.unit == u:
                    c[i] = 1.0
            out.append(c)
    return out


def realify(m) -> np.ndarray:
    """Real ``2n×2n`` form ``[[Re, -Im], [Im, Re]]`` of a complex matrix."""
    m = np.asarray(m, dtype=np.complex128)
    return np.block([[m.real, -m.imag], [m.imag, m.real]])


def nullspace(mat: np.ndarray, rank_tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis (as columns) of the kernel, with relative rank cutoff."""
    mat = np.asarray(mat)
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(n, dtype=mat.dtype)
    # only V is needed; the full U of a tall system would be huge
    _, s, vh = np.linalg.svd(mat, full_matrices=mat.shape[0] < n)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rank_tol * max(smax, 1.0)))
    return np.conj(vh[rank:]).T


def _diagonal_operands(a: StructuredAlgebra):
    """Faithful matrices for ``A ⊗_K A``-computations over the scalar field."""
    mats = a.defining_images
    if a.is_real:
        # complex Kronecker products identify i⊗1 with 1⊗i; the realified
        # module keeps the real tensor product faithful
        mats = [realify(m) for m in mats]
    return np.stack(mats)


def diagonal_center(a: StructuredAlgebra, rank_tol: float = 1e-8) -> list:
    """Basis of ``{x : x⊗1 = 1⊗x}`` inside ``A ⊗_K A``.

    The operator ``x⊗1 - 1⊗x`` on ``V⊗V`` has entries ``x_ik δ_jl - δ_ik x_jl``;
    its distinct nonzero rows are the off-diagonal entries of ``x`` and the
    differences of consecutive diagonal entries, which is the system solved
    here. :func:`diagonal_center_dense` builds the full Kronecker operator.
    """
    ops = _diagonal_operands(a)
    n, dim = ops.shape[0], ops.shape[1]
    flat = ops.reshape(n, dim * dim)
    off = ~np.eye(dim, dtype=bool).reshape(-1)
    diag = ops[:, np.arange(dim), np.arange(dim)]
    rows = np.concatenate([flat[:, off], diag[:, 1:] - diag[:, :-1]], axis=1).T
    return _kernel_coeffs(rows, a.is_real, rank_tol)


def diagonal_center_dense(a: StructuredAlgebra, rank_tol: float = 1e-8) -> list:
    """Same solution space from the explicit operators ``x⊗1 - 1⊗x``."""
    ops = _diagonal_operands(a)
    dim = ops.shape[1]
    eye = np.eye(dim)
    cols = [(np.kron(m, eye) - np.kron(eye, m)).reshape(-1) for m in ops]
    return _kernel_coeffs(np.stack(cols, axis=1), a.is_real, rank_tol)


def diagonal_center_coordinates(a: StructuredAlgebra, rank_tol: float = 1e-8) -> list:
    """Same solution space in the basis ``b_i ⊗ b_j`` of ``A ⊗_K A``.

    ``x⊗1 - 1⊗x`` has coordinate matrix ``c uᵀ - u cᵀ`` for ``x = Σ c_i b_i``
    and unit ``u``; no representation is involved.
    """
    u = a.unit
    n = a.dim
    cols = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        cols.append((np.outer(e, u) - np.outer(u, e)).reshape(-1))
    return _kernel_coeffs(np.stack(cols, axis=1), a.is_real, rank_tol)


def _kernel_coeffs(system, real, rank_tol):
    system = np.asarray(system)
    if real:
        system = np.vstack([system.real, system.imag]) if np.iscomplexobj(system) else system
        ker = nullspace(system.astype(float), rank_tol)
    else:
        ker = nullspace(system.astype(np.complex128), rank_tol)
    return [ker[:, k].astype(np.complex128) for k in range(ker.shape[1])]


def is_quaternionic(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether ``m`` (size ``2k``, blocks of 2) commutes with ``j₀ = (1⊗iσ₂)·conj``."""
    m = as_matrix(m)
    if len(m) % 2:
        return False
    w = np.kron(np.eye(len(m) // 2), QUATERNION_UNITS["j"])
    # j₀ m j₀* = w conj(m) w†
    return max_abs(w @ np.conj(m) @ dagger(w) - m) <= tol.threshold(max_abs(m))


@dataclass(frozen=True, eq=False)
class Representation:
    """A *-representation given by the images of the standard basis.

    Construction checks linearity of dimensions, faithfulness, the
    *-property, multiplicativity on basis pairs and unitality.
    """

    algebra: StructuredAlgebra
    images: tuple
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        images = tuple(as_matrix(m) for m in self.images)
        if len(images) != self.algebra.dim:
            raise ValueError(f"need {self.algebra.dim} images, got {len(images)}")
        dims = {m.shape[0] for m in images}
        if len(dims) != 1:
            raise ValueError("all images must act on the same Hilbert space")
        object.__setattr__(self, "images", images)
        self._check()

    @property
    def hilbert_dim(self) -> int:
        return self.images[0].shape[0]

    @cached_property
    def _stack(self) -> np.ndarray:
        return np.stack(self.images)

    def __call__(self, coeffs) -> np.ndarray:
        return np.tensordot(self.algebra.coerce(coeffs), self._stack, axes=1)

    @cached_property
    def _coord_solver(self):
        return _CoordinateSolver(self.images, self.algebra.is_real)

    def coords(self, matrix) -> np.ndarray:
        """Coefficients of an operator lying in the image (least squares)."""
        return self._coord_solver(matrix)

    def _check(self):
        a = self.algebra
        stack = self._stack
        scale = max(1.0, max_abs(stack))
        thr = self.tol.threshold(scale)
        flat = stack.reshape(len(stack), -1).T
        if a.is_real:
            flat = np.vstack([flat.real, flat.imag])
        s = np.linalg.svd(flat, compute_uv=False)
        if s[-1] <= 1e-8 * s[0]:
            raise ValueError("representation is not faithful (basis images are dependent)")
        if max_abs(self(a.unit) - np.eye(self.hilbert_dim)) > thr:
            raise ValueError("representation is not unital")
        for i, b in enumerate(a.basis):
            star = a.star(a.basis_vector(i))
            if max_abs(self(star) - dagger(self.images[i])) > thr:
                raise ValueError(f"representation does not preserve * on {b}")
        defn = a._stack
        n = a.dim
        prods = np.einsum("iab,jbc->ijac", defn, defn).reshape(n * n, -1)
        coeffs = np.stack([a.coords(p) for p in prods])
        expected = np.tensordot(coeffs, stack, axes=1)
        actual = np.einsum("iab,jbc->ijac", stack, stack).reshape(n * n, *stack.shape[1:])
        if max_abs(expected - actual) > thr * max(1.0, scale):
            raise ValueError("representation is not multiplicative on basis pairs")


def defining_representation(a: StructuredAlgebra) -> Representation:
    return Representation(a, a.defining_images)


def scalar_representation(dim: int, scalar_field="C") -> Representation:
    """``C`` (or ``R``) acting by scalars on ``C^dim``."""
    a = StructuredAlgebra((AlgebraFactor(1, Field.parse(scalar_field)),), Field.parse(scalar_field))
    return Representation(a, (np.eye(dim),))


def _tensor_layout(a1: StructuredAlgebra, a2: StructuredAlgebra):
    """Wedderburn data of ``a1 ⊗ a2`` and, per basis element, the pair it comes from."""
    if a1.scalar_field is Field.COMPLEX or a2.scalar_field is Field.COMPLEX:
        for side in (a1, a2):
            if side.is_real and any(f.field is not Field.REAL for f in side.factors):
                raise NotImplementedError(
                    "a real algebra with complex or quaternionic factors tensored with a "
                    "complex algebra is not faithfully represented on H1 ⊗ H2")
        field = Field.COMPLEX
    else:
        field = Field.REAL
    factors, pairs = [], []
    for i, f1 in enumerate(a1.factors):
        for j, f2 in enumerate(a2.factors):
            if f1.field is not Field.REAL and f2.field is not Field.REAL and field is Field.REAL:
                raise NotImplementedError(
                    f"{f1} ⊗_R {f2} is not supported (needs an explicit Wedderburn isomorphism)")
            if field is Field.COMPLEX:
                kf = Field.COMPLEX
            else:
                kf = f2.field if f1.field is Field.REAL else f1.field
            factors.append(AlgebraFactor(f1.size * f2.size, kf))
            pairs.append((i, j))
    return StructuredAlgebra(tuple(factors), field), pairs


def tensor_algebras(a1: StructuredAlgebra, a2: StructuredAlgebra) -> StructuredAlgebra:
    """``a1 ⊗ a2`` as a direct sum of ``M_{kl}`` factors.

    Supported: everything over C, and over R whenever each pair of factors
    has at least one real side.
    """
    return _tensor_layout(a1, a2)[0]


def tensor_representations(r1: Representation, r2: Representation) -> Representation:
    """Representation of ``a1 ⊗ a2`` on ``H1 ⊗ H2`` by Kronecker products."""
    a1, a2 = r1.algebra, r2.algebra
    prod, pairs = _tensor_layout(a1, a2)
    index1 = {b: i for i, b in enumerate(a1.basis)}
    index2 = {b: i for i, b in enumerate(a2.basis)}
    images = []
    for b in prod.basis:
        i, j = pairs[b.factor]
        l = a2.factors[j].size
        p, r = divmod(b.row, l)
        q, s = divmod(b.col, l)
        # the unit lives on whichever side is not real
        u1 = b.unit if a1.factors[i].field is not Field.REAL and a1.is_real else "1"
        u2 = b.unit if u1 == "1" else "1"
        if prod.scalar_field is Field.COMPLEX:
            u1 = u2 = "1"
        m1 = r1.images[index1[BasisElement(i, p, q, u1)]]
        m2 = r2.images[index2[BasisElement(j, r, s, u2)]]
        images.append(np.kron(m1, m2))
    return Representation(prod, tuple(images))


def amplify(rep: Representation, multiplicity: int) -> Representation:
    """``a ↦ ρ(a) ⊗ 1`` on ``H ⊗ C^multiplicity``."""
    eye = np.eye(multiplicity)
    return Representation(rep.algebra, tuple(np.kron(m, eye) for m in rep.images), rep.tol)


def conjugate_representation(rep: Representation, w) -> Representation:
    """``a ↦ w ρ(a) w†`` for a unitary ``w``."""
    w = as_matrix(w)
    return Representation(rep.algebra, tuple(w @ m @ dagger(w) for m in rep.images), rep.tol)
