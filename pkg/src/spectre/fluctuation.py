"""J-compatible splitting, one-forms and inner fluctuations of the Dirac operator."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ko import SignTriple
from .linalg import (DEFAULT_TOL, Antiunitary, Tolerance, as_matrix, dagger,
                     eigenvalues_hermitian, max_abs)
from .triple import RealSpectralTriple, opposite_action, verify

__all__ = [
    "Split",
    "OneForm",
    "FluctuationError",
    "j_compatible_split",
    "one_form",
    "symmetrized_pairs",
    "fluctuate",
    "finite_fluct_components",
    "fiber_identity_residual",
    "spectral_action",
]


class FluctuationError(ValueError):
    pass


@dataclass(frozen=True)
class Split:
    """``D = compatible + endomorphism`` with the residuals of both relations."""

    compatible: np.ndarray
    endomorphism: np.ndarray
    compatible_residual: float
    endomorphism_residual: float

    def __iter__(self):
        return iter((self.compatible, self.endomorphism))


def j_compatible_split(d, j: Antiunitary, signs: SignTriple) -> Split:
    """Unique split ``d = d0 + m`` with ``d0 J = ε′ J d0`` and ``m J = -ε′ J m``.

    ``m = (d - ε′ J d J*) / 2``; relies on ``J² = ±1``.
    """
    d = as_matrix(d)
    ep = signs.eps_prime
    m = (d - ep * j.conjugate(d)) / 2
    d0 = d - m
    u = j.u
    # X J = s J X  ⟺  X u = s u conj(X)
    r0 = max_abs(d0 @ u - ep * u @ np.conj(d0))
    rm = max_abs(m @ u + ep * u @ np.conj(m))
    return Split(as_matrix(d0), as_matrix(m), r0, rm)


@dataclass(frozen=True)
class OneForm:
    terms: tuple
    matrix: np.ndarray

    @property
    def is_hermitian(self) -> bool:
        return max_abs(self.matrix - dagger(self.matrix)) <= DEFAULT_TOL.threshold(max_abs(self.matrix))

    def __neg__(self) -> "OneForm":
        return OneForm(tuple((-a, b) for a, b in self.terms), as_matrix(-self.matrix))


def one_form(t: RealSpectralTriple, pairs: Sequence) -> OneForm:
    """``Σ a_i [D, b_i]`` for coefficient-vector pairs ``(a_i, b_i)``."""
    d = t.dirac
    total = np.zeros_like(d)
    terms = []
    for a, b in pairs:
        ra, rb = t.rep(a), t.rep(b)
        total = total + ra @ (d @ rb - rb @ d)
        terms.append((np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)))
    return OneForm(tuple(terms), as_matrix(total))


def symmetrized_pairs(t: RealSpectralTriple, pairs: Sequence) -> list:
    """Pairs whose one-form is the Hermitian part of ``one_form(t, pairs)``.

    Uses ``(a[D, b])† = b*[D, a*] - [D, b*a*]``, so the adjoint is again a
    one-form over the algebra.
    """
    alg = t.algebra
    out = []
    for a, b in pairs:
        a = alg.coerce(a)
        b = alg.coerce(b)
        a_s, b_s = alg.star(a), alg.star(b)
        out.append((a / 2, b))
        out.append((b_s / 2, a_s))
        out.append((-alg.unit / 2, alg.multiply(b_s, a_s)))
    return out


def fluctuate(t: RealSpectralTriple, form: OneForm, symmetrize: bool = False,
              tol: Tolerance = DEFAULT_TOL) -> RealSpectralTriple:
    """Triple with ``D' = D + A + ε′ J A J*``; same algebra, ``γ``, ``J`` and label.

    Raises :class:`FluctuationError` for a non-Hermitian one-form unless
    ``symmetrize`` is set, and when the result fails verification.
    """
    a = form.matrix
    if not form.is_hermitian:
        if not symmetrize:
            raise FluctuationError("one-form is not Hermitian; pass symmetrize=True to use "
                                   "its Hermitian part")
        a = (a + dagger(a)) / 2
    ep = t.signs.eps_prime
    new = t.replace(dirac=t.dirac + a + ep * t.real_structure.conjugate(a))
    report = verify(new, tol)
    if not report.passed:
        broken = ", ".join(c.name for c in report.failures())
        raise FluctuationError(f"fluctuated triple fails: {broken}")
    return new


def finite_fluct_components(t: RealSpectralTriple, pairs: Sequence) -> np.ndarray:
    """``Φ = Σ (a_i [D, b_i] - [D, b_i°] a_i°)`` with ``x° = J x* J*``."""
    d = t.dirac
    phi = np.zeros_like(d)
    for a, b in pairs:
        ra, rb = t.rep(a), t.rep(b)
        ao, bo = opposite_action(t, a), opposite_action(t, b)
        phi = phi + ra @ (d @ rb - rb @ d) - (d @ bo - bo @ d) @ ao
    return as_matrix(phi)


def fiber_identity_residual(t: RealSpectralTriple, pairs: Sequence) -> dict:
    """Compare ``D + Φ`` with ``D + A + ε′JAJ*`` for the same pairs.

    The two agree whenever ``A`` is Hermitian, since then
    ``ε′ J A J* = -Σ [D, b_i°] a_i°``; for non-Hermitian ``A`` the residual is
    reported as is.
    """
    form = one_form(t, pairs)
    phi = finite_fluct_components(t, pairs)
    a = form.matrix
    fluct = t.dirac + a + t.signs.eps_prime * t.real_structure.conjugate(a)
    return {
        "one_form_hermitian": form.is_hermitian,
        "residual": max_abs(t.dirac + phi - fluct),
        "phi_hermitian_residual": max_abs(phi - dagger(phi)),
    }


def spectral_action(t_or_dirac, cutoff_scale: float, weights: Sequence = ((0, 1.0),)) -> float:
    """``Σ_{|λ| ≤ Λ} Σ_k c_k (λ/Λ)^{2 p_k}`` over the eigenvalues ``λ`` of ``D``."""
    if cutoff_scale <= 0:
        raise ValueError("cutoff_scale must be positive")
    d = t_or_dirac.dirac if isinstance(t_or_dirac, RealSpectralTriple) else t_or_dirac
    lam = eigenvalues_hermitian(d)
    lam = lam[np.abs(lam) <= cutoff_scale]
    x = (lam / cutoff_scale) ** 2
    return float(sum(c * np.sum(x ** p) for p, c in weights))
