"""Example triples and a search for real structures on given data.

``one_point`` gives, for each of the twelve extended KO labels, the smallest
triple over ``A = C`` (scalars) with a nonzero Dirac operator; pass
``trivial_dirac=True`` for the smallest instance with ``D = 0``.
"""
from __future__ import annotations


import numpy as np
from scipy.optimize import least_squares

from .algebra import (Representation, StructuredAlgebra, amplify, conjugate_representation,
                      defining_representation, nullspace, scalar_representation)
from .ko import ALL_LABELS, KOLabel, SignTriple, parse_label, sign_table
from .linalg import (DEFAULT_TOL, SIGMA0, SIGMA1, SIGMA2, SIGMA3, Antiunitary, Tolerance,
                     as_matrix, dagger, max_abs, tensor)
from .triple import RealSpectralTriple, verify

__all__ = [
    "DEFAULT_SEED",
    "InfeasibleConstraints",
    "one_point",
    "two_point",
    "matrix_triple",
    "base_triple",
    "catalog",
    "real_structure_for",
    "random_unitary",
    "random_odd_hermitian",
    "random_triple",
    "unitary_relabel",
    "constraint_nullspace",
    "search_real_structure",
]

DEFAULT_SEED = 0x5EED

_I2 = SIGMA0
_IS2 = 1j * SIGMA2  # [[0, 1], [-1, 0]]
_G4 = tensor(SIGMA3, _I2)

# label -> (grading or None, J unitary, Dirac); D nonzero and exactly compatible
_ONE_POINT = {
    KOLabel(0, "plus"): (SIGMA3, _I2, SIGMA1),
    KOLabel(0, "minus"): (SIGMA3, SIGMA3, SIGMA1),
    KOLabel(1): (None, _I2, SIGMA2),
    KOLabel(2, "plus"): (_G4, tensor(SIGMA1, _IS2), tensor(SIGMA1, _I2)),
    KOLabel(2, "minus"): (_G4, tensor(SIGMA1, _IS2) @ _G4, tensor(SIGMA1, _I2)),
    KOLabel(3): (None, _IS2, _I2),
    KOLabel(4, "plus"): (_G4, tensor(_I2, _IS2), tensor(SIGMA1, _I2)),
    KOLabel(4, "minus"): (_G4, tensor(SIGMA3, _IS2), tensor(SIGMA1, _I2)),
    KOLabel(5): (None, _IS2, SIGMA3),
    KOLabel(6, "plus"): (SIGMA3, SIGMA1, SIGMA1),
    KOLabel(6, "minus"): (SIGMA3, SIGMA1 @ SIGMA3, SIGMA1),
    KOLabel(7): (None, np.eye(1), np.eye(1)),
}

_ONE = np.eye(1)
# D = 0 variants: dimension 1 unless J² = -1 or J must anticommute with γ
_ONE_POINT_TRIVIAL = {
    KOLabel(0, "plus"): (_ONE, _ONE),
    KOLabel(0, "minus"): (_ONE, _ONE),
    KOLabel(1): (None, _ONE),
    KOLabel(2, "plus"): (SIGMA3, _IS2),
    KOLabel(2, "minus"): (SIGMA3, SIGMA1),
    KOLabel(3): (None, _IS2),
    KOLabel(4, "plus"): (_I2, _IS2),
    KOLabel(4, "minus"): (_I2, _IS2),
    KOLabel(5): (None, _IS2),
    KOLabel(6, "plus"): (SIGMA3, SIGMA1),
    KOLabel(6, "minus"): (SIGMA3, _IS2),
    KOLabel(7): (None, _ONE),
}


def _label(n) -> KOLabel:
    if isinstance(n, KOLabel):
        return n
    if isinstance(n, str):
        return parse_label(n)
    return KOLabel(int(n))


def one_point(n, trivial_dirac: bool = False) -> RealSpectralTriple:
    """Smallest triple over ``A = C`` (acting by scalars) of KO label ``n``."""
    label = _label(n)
    if trivial_dirac:
        grading, u = _ONE_POINT_TRIVIAL[label]
        dirac = np.zeros_like(u)
    else:
        grading, u, dirac = _ONE_POINT[label]
    rep = scalar_representation(len(u))
    return RealSpectralTriple(rep, dirac, Antiunitary(u), label, grading)


def two_point(m: complex = 1.0) -> RealSpectralTriple:
    """Two-point space ``C ⊕ C`` of KO-dimension ``0₊``.

    The algebra acts as ``diag(a₀, a₁) ⊗ 1`` on ``C² ⊗ C²``, ``J`` is the flip
    composed with complex conjugation, ``γ = σ₃ ⊗ σ₃`` and
    ``D = X ⊗ 1 + 1 ⊗ conj(X)`` with ``X = [[0, m], [conj(m), 0]]``. On ``C²``
    alone no real structure satisfies the order-one condition for an
    off-diagonal ``D``.
    """
    a = StructuredAlgebra.of(1, 1)
    rep = amplify(defining_representation(a), 2)
    x = as_matrix([[0, m], [np.conj(m), 0]])
    dirac = tensor(x, _I2) + tensor(_I2, np.conj(x))
    return RealSpectralTriple(rep, dirac, Antiunitary(_swap(2)), KOLabel(0, "plus"),
                              tensor(SIGMA3, SIGMA3))


def _swap(k: int) -> np.ndarray:
    p = np.zeros((k * k, k * k))
    for i in range(k):
        for j in range(k):
            p[j * k + i, i * k + j] = 1.0
    return p


def matrix_triple(m: float = 1.0, mu: float = 0.5) -> RealSpectralTriple:
    """``M₂(C)`` on ``(C²⊗C²) ⊕ (C²⊗C²)`` with KO-dimension ``6₊``.

    ``a`` acts as ``a ⊗ 1`` on both summands, ``γ = diag(1, -1)``, ``J`` swaps
    the summands and flips the tensor factors, and the Dirac operator is
    off-diagonal with block ``T = X⊗1 + 1⊗X + μ`` for real symmetric ``X``.
    """
    a = StructuredAlgebra.of(2)
    base = amplify(defining_representation(a), 2)
    rep = Representation(a, tuple(np.kron(_I2, img) for img in base.images))
    p = _swap(2)
    z = np.zeros((4, 4))
    u = np.block([[z, p], [p, z]])
    x = np.array([[0, m], [m, 0]], dtype=float)
    t = np.kron(x, np.eye(2)) + np.kron(np.eye(2), x) + mu * np.eye(4)
    dirac = np.block([[z, t.T], [t, z]])
    grading = np.diag([1.0] * 4 + [-1.0] * 4)
    return RealSpectralTriple(rep, dirac, Antiunitary(u), KOLabel(6, "plus"), grading)


def base_triple(k: int, d=None, even: bool = False) -> RealSpectralTriple:
    """Commutative ``C^k`` acting diagonally on ``C^k`` with ``J = conj``.

    Odd version: KO 7 with a real diagonal Dirac operator (order one forces
    ``D`` diagonal here). Even version: KO ``0₊`` with ``γ = 1`` and ``D = 0``.
    """
    a = StructuredAlgebra.of(*([1] * k))
    rep = defining_representation(a)
    j = Antiunitary(np.eye(k))
    if even:
        return RealSpectralTriple(rep, np.zeros((k, k)), j, KOLabel(0, "plus"), np.eye(k))
    d = np.arange(1.0, k + 1) if d is None else np.asarray(d, dtype=float)
    return RealSpectralTriple(rep, np.diag(d), j, KOLabel(7))


def catalog() -> dict:
    """Every example triple, keyed by a short name."""
    out = {f"one_point[{label}]": one_point(label) for label in ALL_LABELS}
    out.update({f"one_point_trivial[{label}]": one_point(label, trivial_dirac=True)
                for label in ALL_LABELS})
    out["two_point"] = two_point()
    out["matrix"] = matrix_triple()
    out["base3"] = base_triple(3)
    return out


def real_structure_for(label, dim: int) -> Antiunitary:
    """Antiunitary on ``C^dim`` with ``J² = ε(label)``, built from catalog blocks."""
    label = _label(label)
    eps = sign_table(label).eps
    if eps < 0 and dim % 2:
        raise ValueError("J² = -1 needs an even dimension")
    block = one_point(label).real_structure.u
    blocks, left = [], dim
    while left >= len(block):
        blocks.append(block)
        left -= len(block)
    while left:
        filler = _IS2 if eps < 0 else _ONE
        blocks.append(filler)
        left -= len(filler)
    u = np.zeros((dim, dim), dtype=complex)
    off = 0
    for b in blocks:
        u[off:off + len(b), off:off + len(b)] = b
        off += len(b)
    return Antiunitary(u)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + dagger(z)) / 2


def random_odd_hermitian(grading, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix anticommuting with ``grading``."""
    h = random_hermitian(len(grading), rng)
    return (h - grading @ h @ grading) / 2


def unitary_relabel(t: RealSpectralTriple, w) -> RealSpectralTriple:
    """Conjugate every operator by a unitary ``w`` (``J ↦ wJw*``)."""
    w = as_matrix(w)
    wd = dagger(w)
    return RealSpectralTriple(
        conjugate_representation(t.rep, w), w @ t.dirac @ wd,
        Antiunitary(w @ t.real_structure.u @ w.T), t.ko,
        None if t.grading is None else w @ t.grading @ wd)


def random_triple(label, rng: np.random.Generator, multiplicity: int = 2,
                  relabel: bool = True) -> RealSpectralTriple:
    """Scalar-algebra triple of the given label with a random compatible ``D``.

    Built from ``one_point(label)`` on ``H ⊗ C^multiplicity`` with ``J ⊗ conj``;
    the Dirac operator is the ``J``-compatible part of a random odd Hermitian
    matrix.
    """
    base = one_point(label)
    n = base.hilbert_dim * multiplicity
    eye = np.eye(multiplicity)
    grading = None if base.grading is None else np.kron(base.grading, eye)
    j = Antiunitary(np.kron(base.real_structure.u, eye))
    h = random_hermitian(n, rng) if grading is None else random_odd_hermitian(grading, rng)
    eps_p = base.signs.eps_prime
    dirac = (h + eps_p * j.conjugate(h)) / 2
    t = RealSpectralTriple(scalar_representation(n), dirac, j, base.ko, grading)
    if relabel:
        t = unitary_relabel(t, random_unitary(n, rng))
    return t


class InfeasibleConstraints(ValueError):
    """The linear part of the real-structure constraints has only the zero solution."""


def _row_vec_ops(n):
    """Helpers for row-major ``vec``: ``vec(A U B) = kron(A, Bᵀ) vec(U)``."""
    eye = np.eye(n)
    transpose = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            transpose[i * n + j, j * n + i] = 1.0
    return eye, transpose


def constraint_nullspace(dirac, grading, signs: SignTriple, rank_tol: float = 1e-10) -> np.ndarray:
    """Columns span ``{U : Uᵀ = εU, DU = ε′U conj(D), γU = ε″U conj(γ)}``.

    For unitary ``U``, ``U conj(U) = εI`` is equivalent to ``Uᵀ = εU``, so the
    sign of ``J²`` is a linear condition here.
    """
    d = as_matrix(dirac)
    n = len(d)
    eye, transpose = _row_vec_ops(n)
    rows = [transpose - signs.eps * np.eye(n * n),
            np.kron(d, eye) - signs.eps_prime * np.kron(eye, np.conj(d).T)]
    if grading is not None:
        if signs.eps_double_prime is None:
            raise ValueError("a graded search needs an even KO label")
        g = as_matrix(grading)
        rows.append(np.kron(g, eye) - signs.eps_double_prime * np.kron(eye, np.conj(g).T))
    return nullspace(np.vstack(rows), rank_tol)


def _polar(u):
    a, _, b = np.linalg.svd(u)
    return a @ b


def search_real_structure(rep: Representation, dirac, grading, n, budget: int = 16,
                          seed: int = DEFAULT_SEED, tol: Tolerance = DEFAULT_TOL,
                          order_conditions: bool = True) -> list:
    """Antiunitaries ``J`` making ``(rep, D, γ, J)`` a real triple of label ``n``.

    The sign relations (including ``J² = ε``) are linear in the unitary part
    and are solved exactly as a nullspace. Inside it, unitarity and the order
    conditions are imposed by polar-projection sweeps followed by a
    least-squares polish, once per restart. Solutions are deduplicated up to
    a global phase and returned in lexicographic order; an empty list means
    the budget ran out. Raises :class:`InfeasibleConstraints` when the linear
    system alone admits no nonzero ``U``.
    """
    label = _label(n)
    signs = sign_table(label)
    if label.even != (grading is not None):
        raise ValueError(f"KO label {label} and grading presence disagree")
    d = as_matrix(dirac)
    g = None if grading is None else as_matrix(grading)
    dim = len(d)
    basis = constraint_nullspace(d, g, signs)
    if basis.shape[1] == 0:
        raise InfeasibleConstraints(f"no nonzero U satisfies the sign relations of {label}")
    r = basis.shape[1]
    imgs = rep._stack
    if order_conditions:
        da = np.einsum("ab,ibc->iac", d, imgs) - np.einsum("iab,bc->iac", imgs, d)
        # scalar images impose nothing
        keep = [i for i in range(len(imgs))
                if max_abs(imgs[i] - imgs[i][0, 0] * np.eye(dim)) > 0]
    else:
        keep = []
    eye = np.eye(dim)

    def unpack(x):
        z = x[:r] + 1j * x[r:]
        return (basis @ z).reshape(dim, dim)

    def residuals(x):
        u = unpack(x)
        parts = [(dagger(u) @ u - eye).reshape(-1)]
        if keep:
            opp = np.einsum("ab,ncb,dc->nad", u, imgs, np.conj(u))
            for i in keep:
                for j in keep:
                    o = opp[j]
                    parts.append((imgs[i] @ o - o @ imgs[i]).reshape(-1))
                    parts.append((da[i] @ o - o @ da[i]).reshape(-1))
        v = np.concatenate(parts)
        return np.concatenate([v.real, v.imag])

    rng = np.random.default_rng(seed)
    found = []
    for _ in range(budget):
        z = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        u = (basis @ z).reshape(dim, dim)
        for _ in range(50):
            u = _polar(u)
            z = dagger(basis) @ u.reshape(-1)
            u = (basis @ z).reshape(dim, dim)
        x0 = np.concatenate([z.real, z.imag])
        if max_abs(residuals(x0)) > 1e-13:
            x0 = least_squares(residuals, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15).x
        u = unpack(x0)
        cand = RealSpectralTriple(rep, d, Antiunitary(u), label, g)
        report = verify(cand, tol)
        if not report.passed:
            continue
        u = _normalize_phase(u)
        if not any(abs(np.vdot(v, u)) / dim > 1 - 1e-8 for v in found):
            found.append(u)
    found.sort(key=lambda v: tuple(np.round(np.concatenate([v.real.ravel(), v.imag.ravel()]), 9)))
    return [Antiunitary(v) for v in found]


def _normalize_phase(u):
    flat = u.reshape(-1)
    k = int(np.argmax(np.abs(flat) > np.max(np.abs(flat)) - 1e-9))
    return u * (np.conj(flat[k]) / abs(flat[k]))
