"""KO-dimension labels and their sign triples.

``KO_TABLE`` is the classical table indexed by ``n mod 8``;
``EXTENDED_KO_TABLE`` adds the exotic columns ``n_-`` obtained by
replacing ``J`` with ``Jγ`` on even triples.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

__all__ = ["SignTriple", "KOLabel", "KO_TABLE", "EXTENDED_KO_TABLE", "ALL_LABELS",
           "sign_table", "labels_for", "parse_label", "format_sign"]


@dataclass(frozen=True)
class SignTriple:
    """``(ε, ε′, ε″)``; ``eps_double_prime`` is ``None`` for odd parity."""

    eps: int
    eps_prime: int
    eps_double_prime: Optional[int] = None

    def __post_init__(self):
        for name in ("eps", "eps_prime"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1")
        if self.eps_double_prime not in (1, -1, None):
            raise ValueError("eps_double_prime must be +1, -1 or None")

    @property
    def even(self) -> bool:
        return self.eps_double_prime is not None

    def __str__(self):
        s = f"eps={format_sign(self.eps)} eps'={format_sign(self.eps_prime)}"
        if self.even:
            s += f" eps''={format_sign(self.eps_double_prime)}"
        return s

    def as_tuple(self):
        return (self.eps, self.eps_prime, self.eps_double_prime)


@dataclass(frozen=True, order=True)
class KOLabel:
    """``n mod 8`` plus ``'plus'``/``'minus'`` for even ``n`` (``None`` for odd)."""

    n: int
    variant: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n) % 8)
        v = self.variant
        if v in ("+", 1):
            v = "plus"
        elif v in ("-", -1):
            v = "minus"
        if self.n % 2 == 0:
            if v is None:
                v = "plus"
            if v not in ("plus", "minus"):
                raise ValueError(f"variant must be 'plus' or 'minus', got {self.variant!r}")
        elif v is not None:
            raise ValueError(f"odd KO-dimension {self.n} takes no variant")
        object.__setattr__(self, "variant", v)

    @property
    def even(self) -> bool:
        return self.n % 2 == 0

    @property
    def beta(self) -> Optional[int]:
        return None if self.variant is None else (1 if self.variant == "plus" else -1)

    def flipped(self) -> "KOLabel":
        if not self.even:
            raise ValueError(f"KO-dimension {self.n} is odd and has no exotic partner")
        return KOLabel(self.n, "minus" if self.variant == "plus" else "plus")

    def __str__(self):
        if self.variant is None:
            return str(self.n)
        return f"{self.n}{'+' if self.variant == 'plus' else '-'}"

    def to_json(self) -> dict:
        doc = {"n": self.n}
        if self.variant is not None:
            doc["variant"] = self.variant
        return doc

    @classmethod
    def from_json(cls, doc) -> "KOLabel":
        if isinstance(doc, str):
            return parse_label(doc)
        return cls(int(doc["n"]), doc.get("variant"))


P, M = 1, -1

# n: (eps, eps', eps'')
KO_TABLE = {
    0: (P, P, P),
    1: (P, M, None),
    2: (M, P, M),
    3: (M, P, None),
    4: (M, P, P),
    5: (M, M, None),
    6: (P, P, M),
    7: (P, P, None),
}

EXTENDED_KO_TABLE = {
    KOLabel(0, "plus"): (P, P, P),
    KOLabel(0, "minus"): (P, M, P),
    KOLabel(1): (P, M, None),
    KOLabel(2, "plus"): (M, P, M),
    KOLabel(2, "minus"): (P, M, M),
    KOLabel(3): (M, P, None),
    KOLabel(4, "plus"): (M, P, P),
    KOLabel(4, "minus"): (M, M, P),
    KOLabel(5): (M, M, None),
    KOLabel(6, "plus"): (P, P, M),
    KOLabel(6, "minus"): (M, M, M),
    KOLabel(7): (P, P, None),
}

ALL_LABELS = tuple(EXTENDED_KO_TABLE)


def sign_table(label: KOLabel) -> SignTriple:
    return SignTriple(*EXTENDED_KO_TABLE[label])


def labels_for(n: int) -> list:
    n %= 8
    if n % 2:
        return [KOLabel(n)]
    return [KOLabel(n, "plus"), KOLabel(n, "minus")]


_LABEL_RE = re.compile(r"^\s*(\d+)\s*(\+|-|plus|minus|p|m|_\+|_-)?\s*$")


def parse_label(text: str, default_variant: Optional[str] = "plus") -> KOLabel:
    """Parse ``'6+'``, ``'2-'``, ``'3'`` (also ``'6plus'``)."""
    m = _LABEL_RE.match(str(text))
    if not m:
        raise ValueError(f"cannot parse KO label {text!r}")
    n = int(m.group(1))
    if n > 7:
        raise ValueError(f"KO label must be 0..7, got {n}")
    suffix = m.group(2)
    if suffix is None:
        variant = default_variant if n % 2 == 0 else None
    elif n % 2:
        raise ValueError(f"odd KO-dimension {n} takes no variant")
    else:
        variant = "plus" if suffix.lstrip("_") in ("+", "plus", "p") else "minus"
    return KOLabel(n, variant)


def format_sign(s: int) -> str:
    return "+" if s > 0 else "-"
