"""Real spectral triples: axiom reports, KO inference and the J-fixed subalgebra."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Representation, nullspace
from .ko import ALL_LABELS, KOLabel, SignTriple, sign_table
from .linalg import DEFAULT_TOL, Antiunitary, Tolerance, as_matrix, dagger, max_abs

__all__ = [
    "RealSpectralTriple",
    "AxiomCheck",
    "AxiomReport",
    "verify",
    "measured_signs",
    "infer_ko",
    "j_fixed_subalgebra",
    "opposite_action",
    "opposite_images",
]


@dataclass(frozen=True, eq=False)
class RealSpectralTriple:
    """``(A, H, D, γ, J)`` with a declared KO label.

    Only shapes and parity are enforced on construction; the analytic
    conditions are reported by :func:`verify`.
    """

    rep: Representation
    dirac: np.ndarray
    real_structure: Antiunitary
    ko: KOLabel
    grading: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "dirac", as_matrix(self.dirac))
        if self.grading is not None:
            object.__setattr__(self, "grading", as_matrix(self.grading))
        if not isinstance(self.real_structure, Antiunitary):
            object.__setattr__(self, "real_structure", Antiunitary(self.real_structure))
        if not isinstance(self.ko, KOLabel):
            object.__setattr__(self, "ko", KOLabel.from_json(self.ko))
        n = self.rep.hilbert_dim
        shapes = [self.dirac.shape, self.real_structure.u.shape]
        if self.grading is not None:
            shapes.append(self.grading.shape)
        if any(s != (n, n) for s in shapes):
            raise ValueError(f"operators must all act on C^{n}")
        if self.ko.even != (self.grading is not None):
            raise ValueError(f"KO-dimension {self.ko} requires "
                             f"{'a' if self.ko.even else 'no'} grading")

    @property
    def hilbert_dim(self) -> int:
        return self.rep.hilbert_dim

    @property
    def algebra(self):
        return self.rep.algebra

    @property
    def even(self) -> bool:
        return self.grading is not None

    @property
    def signs(self) -> SignTriple:
        """Declared signs, looked up from the KO label."""
        return sign_table(self.ko)

    def replace(self, **changes) -> "RealSpectralTriple":
        return dataclasses.replace(self, **changes)

    def __repr__(self):
        return (f"RealSpectralTriple(A={self.algebra}, dim H={self.hilbert_dim}, "
                f"KO={self.ko})")


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold

    def to_json(self) -> dict:
        return {"name": self.name, "residual": self.residual,
                "threshold": self.threshold, "pass": self.passed}


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max(c.residual for c in self.checks)

    def to_json(self) -> dict:
        return {"pass": self.passed, "checks": [c.to_json() for c in self.checks]}

    def __str__(self):
        width = max(len(c.name) for c in self.checks)
        lines = [f"{c.name:<{width}}  {'PASS' if c.passed else 'FAIL'}  residual={c.residual:.3e}"
                 f"  (tol {c.threshold:.1e})" for c in self.checks]
        return "\n".join(lines)


def opposite_images(t: RealSpectralTriple) -> np.ndarray:
    """``J b* J*`` for every basis element ``b``, stacked."""
    u = t.real_structure.u
    # conj(b†) = bᵀ
    return np.einsum("ab,ncb,dc->nad", u, t.rep._stack, np.conj(u))


def opposite_action(t: RealSpectralTriple, b) -> np.ndarray:
    """Right action ``b° = J b* J*`` of an algebra element ``b``."""
    return t.real_structure.conjugate(dagger(t.rep(b)))


def _comm(x, y):
    return x @ y - y @ x


def verify(t: RealSpectralTriple, tol: Tolerance = DEFAULT_TOL,
           signs: Optional[SignTriple] = None) -> AxiomReport:
    """Residuals of every finite axiom; ``signs`` defaults to the declared ones."""
    signs = signs or t.signs
    d = t.dirac
    u = t.real_structure.u
    n = t.hilbert_dim
    eye = np.eye(n)
    nd = max_abs(d)
    checks = []

    def add(name, residual, scale):
        checks.append(AxiomCheck(name, float(residual), tol.threshold(scale)))

    add("D hermitian", max_abs(d - dagger(d)), nd)
    add("J unitary", t.real_structure.unitary_residual(), 1.0)
    add("J^2=eps", max_abs(u @ np.conj(u) - signs.eps * eye), 1.0)
    # DJ = ε′JD  ⟺  D u = ε′ u conj(D)
    add("DJ=eps'JD", max_abs(d @ u - signs.eps_prime * u @ np.conj(d)), nd)
    imgs = t.rep._stack
    na = max(max_abs(imgs), 1.0)
    if t.even:
        g = t.grading
        add("gamma hermitian", max_abs(g - dagger(g)), 1.0)
        add("gamma^2=1", max_abs(g @ g - eye), 1.0)
        add("D gamma=-gamma D", max_abs(d @ g + g @ d), nd)
        add("[gamma,a]=0", max(max_abs(_comm(g, a)) for a in imgs), na)
        eps2 = signs.eps_double_prime if signs.eps_double_prime is not None else 1
        add("Jgamma=eps''gammaJ", max_abs(u @ np.conj(g) - eps2 * g @ u), 1.0)
    opp = opposite_images(t)
    # all basis pairs at once: [a, b°] and [[D, a], b°]
    zero = np.einsum("iab,jbc->ijac", imgs, opp) - np.einsum("jab,ibc->ijac", opp, imgs)
    add("order zero", max_abs(zero), na * na)
    da = np.einsum("ab,ibc->iac", d, imgs) - np.einsum("iab,bc->iac", imgs, d)
    one = np.einsum("iab,jbc->ijac", da, opp) - np.einsum("jab,ibc->ijac", opp, da)
    add("order one", max_abs(one), nd * na * na)
    return AxiomReport(tuple(checks))


def measured_signs(t: RealSpectralTriple, tol: Tolerance = DEFAULT_TOL,
                   j: Optional[Antiunitary] = None) -> dict:
    """Which sign values each relation admits, e.g. ``{'eps': [1], 'eps_prime': [1, -1]}``."""
    j = j or t.real_structure
    u = j.u
    d = t.dirac
    eye = np.eye(t.hilbert_dim)
    sq = u @ np.conj(u)
    out = {
        "eps": [s for s in (1, -1) if max_abs(sq - s * eye) <= tol.threshold(1.0)],
        "eps_prime": [s for s in (1, -1)
                      if max_abs(d @ u - s * u @ np.conj(d)) <= tol.threshold(max_abs(d))],
    }
    if t.even:
        g = t.grading
        out["eps_double_prime"] = [s for s in (1, -1)
                                   if max_abs(u @ np.conj(g) - s * g @ u) <= tol.threshold(1.0)]
    return out


def infer_ko(t: RealSpectralTriple, tol: Tolerance = DEFAULT_TOL,
             include_toggled: bool = False) -> list:
    """All KO labels whose sign column matches the measured relations of ``J``.

    A vanishing Dirac operator satisfies both ``ε′`` relations, in which case
    both matching labels are returned. With ``include_toggled`` the labels
    realized by ``Jγ`` are added for even triples.
    """
    found = set(_matching_labels(t, measured_signs(t, tol), t.even))
    if include_toggled and t.even:
        jg = t.real_structure.compose(t.grading)
        found |= set(_matching_labels(t, measured_signs(t, tol, jg), True))
    return sorted(found)


def _matching_labels(t, measured, even):
    out = []
    for label in ALL_LABELS:
        if label.even != even:
            continue
        s = sign_table(label)
        if s.eps not in measured["eps"] or s.eps_prime not in measured["eps_prime"]:
            continue
        if even and s.eps_double_prime not in measured["eps_double_prime"]:
            continue
        out.append(label)
    return out


def j_fixed_subalgebra(t: RealSpectralTriple, star: bool = True,
                       rank_tol: float = 1e-8) -> list:
    """Real basis of ``{a : J a* J* = a}`` as coefficient vectors.

    With ``star=False`` the predicate ``J a J* = a`` is used instead (the
    natural one when ``*`` is trivial on a real algebra). The solve is over
    the real span of the basis coefficients.
    """
    a = t.algebra
    n = a.dim
    directions = [np.eye(n)[k].astype(np.complex128) for k in range(n)]
    if not a.is_real:
        directions += [1j * np.eye(n)[k] for k in range(n)]
    j = t.real_structure
    cols = []
    for c in directions:
        x = t.rep(c)
        y = j.conjugate(dagger(x) if star else x)
        diff = (y - x).reshape(-1)
        cols.append(np.concatenate([diff.real, diff.imag]))
    ker = nullspace(np.stack(cols, axis=1), rank_tol)
    if ker.shape[1] == 0:
        raise RuntimeError("J-fixed subalgebra came out empty; the unit is always fixed, "
                           "so this signals a numerical failure")
    out = []
    for k in range(ker.shape[1]):
        v = ker[:, k]
        c = v[:n].astype(np.complex128)
        if not a.is_real:
            c = c + 1j * v[n:]
        out.append(c)
    return out
