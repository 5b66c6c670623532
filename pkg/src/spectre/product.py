"""Products of real spectral triples and the ``J ↦ Jγ`` toggle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import amplify, tensor_representations
from .ko import KO_TABLE, KOLabel, SignTriple, sign_table
from .linalg import (DEFAULT_TOL, SIGMA0, SIGMA1, SIGMA2, SIGMA3, Antiunitary, Tolerance,
                     as_matrix, max_abs, tensor)
from .triple import RealSpectralTriple, infer_ko, measured_signs

__all__ = [
    "PAULI",
    "PauliChoice",
    "ODD_ODD_TABLE",
    "DEFAULT_DIM_CAP",
    "DimensionCapError",
    "ProductError",
    "j_beta",
    "toggle",
    "product",
    "alt_even_even_dirac",
    "product_signs",
]

DEFAULT_DIM_CAP = 4096

PAULI = {
    "s0": SIGMA0,
    "s1": SIGMA1,
    "is2": as_matrix(1j * SIGMA2),
    "s3": SIGMA3,
}


@dataclass(frozen=True)
class PauliChoice:
    """Names (keys of ``PAULI``) of the pair ``(M₊, M₋)``."""

    plus: str
    minus: str

    def __post_init__(self):
        for name in (self.plus, self.minus):
            if name not in PAULI:
                raise ValueError(f"{name!r} is not one of {sorted(PAULI)}")

    @property
    def m_plus(self) -> np.ndarray:
        return PAULI[self.plus]

    @property
    def m_minus(self) -> np.ndarray:
        return PAULI[self.minus]

    def pick(self, variant: int) -> np.ndarray:
        return self.m_plus if variant > 0 else self.m_minus


# rows n1, columns n2 (both odd)
ODD_ODD_TABLE = {
    (1, 1): PauliChoice("is2", "s1"), (1, 3): PauliChoice("s3", "s0"),
    (1, 5): PauliChoice("is2", "s1"), (1, 7): PauliChoice("s3", "s0"),
    (3, 1): PauliChoice("s0", "s3"), (3, 3): PauliChoice("s1", "is2"),
    (3, 5): PauliChoice("s0", "s3"), (3, 7): PauliChoice("s1", "is2"),
    (5, 1): PauliChoice("is2", "s1"), (5, 3): PauliChoice("s3", "s0"),
    (5, 5): PauliChoice("is2", "s1"), (5, 7): PauliChoice("s3", "s0"),
    (7, 1): PauliChoice("s0", "s3"), (7, 3): PauliChoice("s1", "is2"),
    (7, 5): PauliChoice("s0", "s3"), (7, 7): PauliChoice("s1", "is2"),
}


class DimensionCapError(ValueError):
    pass


class ProductError(RuntimeError):
    pass


def _require_even(t: RealSpectralTriple, what: str):
    if not t.even:
        raise ValueError(f"{what} needs an even triple, got KO-dimension {t.ko}")


def j_beta(t: RealSpectralTriple, beta: int, tol: Tolerance = DEFAULT_TOL) -> Antiunitary:
    """The element of ``{J, Jγ}`` realizing ``n₊`` (``beta=+1``) or ``n₋`` (``beta=-1``).

    The declared label decides which candidate is meant; the choice is then
    checked against the measured relations.
    """
    _require_even(t, "j_beta")
    if beta not in (1, -1):
        raise ValueError("beta must be +1 or -1")
    target = KOLabel(t.ko.n, "plus" if beta > 0 else "minus")
    j = t.real_structure if t.ko.beta == beta else t.real_structure.compose(t.grading)
    got = measured_signs(t, tol, j)
    want = sign_table(target)
    if (want.eps not in got["eps"] or want.eps_prime not in got["eps_prime"]
            or want.eps_double_prime not in got["eps_double_prime"]):
        raise ProductError(f"neither J nor Jγ realizes {target}; the triple does not "
                           f"satisfy its declared KO-dimension {t.ko}")
    return j


def toggle(t: RealSpectralTriple) -> RealSpectralTriple:
    """Replace ``J`` by ``Jγ`` and flip ``n₊ ↔ n₋``."""
    _require_even(t, "toggle")
    return t.replace(real_structure=t.real_structure.compose(t.grading), ko=t.ko.flipped())


def _pauli_sign(m, sigma) -> int:
    """``s`` with ``m conj(σ) m† = s σ``."""
    img = m @ np.conj(sigma) @ m.conj().T
    return 1 if max_abs(img - sigma) < 1e-12 else -1


def product_signs(l1: KOLabel, l2: KOLabel, variant: int = 1) -> SignTriple:
    """Signs carried by the product real structure, from the factors' labels alone."""
    n1, n2 = l1.n, l2.n
    if l1.even and l2.even:
        b1 = variant * KO_TABLE[n1][2]
        s1, s2 = sign_table(KOLabel(n1, b1)), sign_table(KOLabel(n2, variant))
        return SignTriple(s1.eps * s2.eps, s1.eps_prime, s1.eps_double_prime * s2.eps_double_prime)
    if l1.even:
        b1 = KO_TABLE[(n1 + n2) % 8][1]
        s1, s2 = sign_table(KOLabel(n1, b1)), sign_table(l2)
        return SignTriple(s1.eps * s2.eps, s1.eps_prime)
    if l2.even:
        b2 = KO_TABLE[(n1 + n2) % 8][1]
        s1, s2 = sign_table(l1), sign_table(KOLabel(n2, b2))
        return SignTriple(s1.eps * s2.eps, s2.eps_prime)
    m = ODD_ODD_TABLE[(n1, n2)].pick(variant)
    s1, s2 = sign_table(l1), sign_table(l2)
    msq = 1 if max_abs(m @ np.conj(m) - np.eye(2)) < 1e-12 else -1
    return SignTriple(s1.eps * s2.eps * msq, s1.eps_prime * _pauli_sign(m, SIGMA1),
                      _pauli_sign(m, SIGMA3))


def product(t1: RealSpectralTriple, t2: RealSpectralTriple, variant: int = 1,
            cap: int = DEFAULT_DIM_CAP, tol: Tolerance = DEFAULT_TOL) -> RealSpectralTriple:
    """Product triple ``t1 × t2`` with its real structure.

    ``variant`` selects ``J₊``/``J₋`` in the even–even and odd–odd cases and
    is ignored otherwise. The KO label of the result has ``n = n₁ + n₂``;
    for even results its variant is read off the constructed ``J``.
    """
    if variant not in (1, -1):
        raise ValueError("variant must be +1 or -1")
    n1, n2 = t1.hilbert_dim, t2.hilbert_dim
    size = n1 * n2 * (2 if not (t1.even or t2.even) else 1)
    if size > cap:
        raise DimensionCapError(f"product Hilbert dimension {size} exceeds cap {cap}")
    e1, e2 = np.eye(n1), np.eye(n2)
    d1, d2 = t1.dirac, t2.dirac
    k1, k2 = t1.ko.n, t2.ko.n
    n = (k1 + k2) % 8
    if t1.even and t2.even:
        rep = tensor_representations(t1.rep, t2.rep)
        dirac = tensor(d1, e2) + tensor(t1.grading, d2)
        grading = tensor(t1.grading, t2.grading)
        beta1 = variant * KO_TABLE[k1][2]
        u = tensor(j_beta(t1, beta1, tol).u, j_beta(t2, variant, tol).u)
    elif t1.even:
        rep = tensor_representations(t1.rep, t2.rep)
        dirac = tensor(d1, e2) + tensor(t1.grading, d2)
        grading = None
        u = tensor(j_beta(t1, KO_TABLE[n][1], tol).u, t2.real_structure.u)
    elif t2.even:
        rep = tensor_representations(t1.rep, t2.rep)
        dirac = tensor(d1, t2.grading) + tensor(e1, d2)
        grading = None
        u = tensor(t1.real_structure.u, j_beta(t2, KO_TABLE[n][1], tol).u)
    else:
        rep = amplify(tensor_representations(t1.rep, t2.rep), 2)
        dirac = tensor(d1, e2, SIGMA1) + tensor(e1, d2, SIGMA2)
        grading = tensor(e1, e2, SIGMA3)
        m = ODD_ODD_TABLE[(k1, k2)].pick(variant)
        u = tensor(t1.real_structure.u, t2.real_structure.u, m)
    predicted = product_signs(t1.ko, t2.ko, variant)
    label = _label_for(n, predicted)
    if label is None:
        raise ProductError(f"product of KO {t1.ko} and {t2.ko} (variant {variant:+d}) carries "
                           f"signs {predicted}, which match no column of dimension {n}")
    result = RealSpectralTriple(rep, dirac, Antiunitary(u), label, grading)
    if label not in infer_ko(result, tol):
        raise ProductError(f"constructed real structure does not realize {label}")
    return result


def _label_for(n: int, signs: SignTriple):
    for variant in ((None,) if n % 2 else ("plus", "minus")):
        label = KOLabel(n, variant)
        if sign_table(label) == signs:
            return label
    return None


def alt_even_even_dirac(t1: RealSpectralTriple, t2: RealSpectralTriple) -> np.ndarray:
    """``D₁⊗γ₂ + 1⊗D₂``, unitarily equivalent to the default ``D₁⊗1 + γ₁⊗D₂``."""
    if not (t1.even and t2.even):
        raise ValueError("alt_even_even_dirac needs two even triples")
    return tensor(t1.dirac, t2.grading) + tensor(np.eye(t1.hilbert_dim), t2.dirac)
