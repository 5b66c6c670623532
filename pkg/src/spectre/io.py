"""JSON triple files.

Schema::

    {
      "hilbert_dim": int,
      "algebra": {"scalar_field": "R"|"C", "factors": [{"size": k, "field": "R"|"C"|"H"}, ...]},
      "images": [matrix, ...],            # one per standard basis element
      "dirac": matrix,
      "grading": matrix,                  # even KO-dimensions only
      "real_structure_unitary": matrix,   # may be absent for search-j inputs
      "ko": {"n": int, "variant": "plus"|"minus"}
    }

Matrices are arrays of rows with ``[re, im]`` entries. Canonical output is
compact JSON with sorted keys and a trailing newline.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .algebra import Representation, StructuredAlgebra
from .ko import KOLabel
from .linalg import Antiunitary, matrix_from_json, matrix_to_json
from .triple import RealSpectralTriple

__all__ = ["TripleData", "TripleFormatError", "triple_to_json", "triple_from_json", "dumps", "load_triple",
           "save_triple", "load_data", "load_pairs", "pairs_to_json"]


class TripleFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TripleData:
    """Parsed file contents before a real structure is attached."""

    rep: Representation
    dirac: np.ndarray
    grading: Optional[np.ndarray]
    real_structure: Optional[Antiunitary]
    ko: Optional[KOLabel]

    def triple(self) -> RealSpectralTriple:
        if self.real_structure is None or self.ko is None:
            raise TripleFormatError("file has no real structure or KO label")
        return RealSpectralTriple(self.rep, self.dirac, self.real_structure, self.ko, self.grading)


def triple_to_json(t: RealSpectralTriple) -> dict:
    doc = {
        "hilbert_dim": t.hilbert_dim,
        "algebra": t.algebra.to_json(),
        "images": [matrix_to_json(m) for m in t.rep.images],
        "dirac": matrix_to_json(t.dirac),
        "real_structure_unitary": matrix_to_json(t.real_structure.u),
        "ko": t.ko.to_json(),
    }
    if t.grading is not None:
        doc["grading"] = matrix_to_json(t.grading)
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _parse(doc: dict) -> TripleData:
    if not isinstance(doc, dict):
        raise TripleFormatError("triple file must hold a JSON object")
    try:
        algebra = StructuredAlgebra.from_json(doc["algebra"])
        images = [matrix_from_json(m) for m in doc["images"]]
        rep = Representation(algebra, tuple(images))
        dirac = matrix_from_json(doc["dirac"])
        grading = matrix_from_json(doc["grading"]) if doc.get("grading") is not None else None
        u = doc.get("real_structure_unitary")
        j = Antiunitary(matrix_from_json(u)) if u is not None else None
        ko = KOLabel.from_json(doc["ko"]) if doc.get("ko") is not None else None
    except KeyError as exc:
        raise TripleFormatError(f"missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise TripleFormatError(str(exc)) from exc
    if "hilbert_dim" in doc and int(doc["hilbert_dim"]) != rep.hilbert_dim:
        raise TripleFormatError(f"hilbert_dim {doc['hilbert_dim']} does not match images")
    return TripleData(rep, dirac, grading, j, ko)


def triple_from_json(doc: dict) -> RealSpectralTriple:
    data = _parse(doc)
    try:
        return data.triple()
    except ValueError as exc:
        raise TripleFormatError(str(exc)) from exc


def load_data(path) -> TripleData:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise TripleFormatError(f"{path}: invalid JSON ({exc})") from exc
    return _parse(doc)


def load_triple(path) -> RealSpectralTriple:
    try:
        return load_data(path).triple()
    except TripleFormatError:
        raise
    except ValueError as exc:
        raise TripleFormatError(str(exc)) from exc


def save_triple(t: RealSpectralTriple, path) -> None:
    Path(path).write_text(dumps(triple_to_json(t)))


def _vec_from_json(v) -> np.ndarray:
    return np.array([complex(float(re), float(im)) for re, im in v], dtype=np.complex128)


def load_pairs(path) -> list:
    """One-form pairs: ``[{"a": [[re, im], ...], "b": [[re, im], ...]}, ...]``."""
    try:
        doc = json.loads(Path(path).read_text())
        return [(_vec_from_json(p["a"]), _vec_from_json(p["b"])) for p in doc]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise TripleFormatError(f"{path}: cannot parse pairs ({exc})") from exc


def pairs_to_json(pairs) -> list:
    return [{"a": [[float(z.real), float(z.imag)] for z in a],
             "b": [[float(z.real), float(z.imag)] for z in b]} for a, b in pairs]
