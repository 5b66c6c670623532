"""Command-line front-end.

Exit codes: 0 success, 1 axiom failure (or no solution found), 2 input
error, 3 resource cap exceeded. ``SPECTRE_TOL`` (``abs`` or ``abs,rel``)
overrides the default tolerance.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import catalog as cat
from .fluctuation import (FluctuationError, fluctuate, j_compatible_split, one_form,
                          spectral_action)
from .io import TripleFormatError, load_data, load_pairs, load_triple, save_triple
from .ko import ALL_LABELS, KOLabel, format_sign, parse_label, sign_table
from .linalg import Tolerance, eigenvalues_hermitian, max_abs
from .product import DEFAULT_DIM_CAP, DimensionCapError, ProductError, product, toggle
from .triple import RealSpectralTriple, j_fixed_subalgebra, verify

EXIT_OK, EXIT_AXIOM, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, default=_jsonable) + "\n")
    else:
        print(text)


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, KOLabel):
        return str(x)
    raise TypeError(type(x))


def _signs_text(label: KOLabel) -> str:
    return str(sign_table(label))


def _signs_json(label: KOLabel) -> dict:
    s = sign_table(label)
    out = {"eps": s.eps, "eps_prime": s.eps_prime}
    if s.even:
        out["eps_double_prime"] = s.eps_double_prime
    return out


def _vec_json(c):
    return [[float(z.real), float(z.imag)] for z in c]


def _load(path) -> RealSpectralTriple:
    try:
        return load_triple(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except TripleFormatError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith(str(path)) else f"{path}: {msg}") from exc


def _label_arg(text) -> KOLabel:
    try:
        return parse_label(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_verify(args, tol) -> int:
    t = _load(args.path)
    report = verify(t, tol)
    payload = report.to_json()
    payload["ko"] = str(t.ko)
    _emit(args, payload, f"KO {t.ko}  ({_signs_text(t.ko)})\n{report}\n"
                         f"{'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_AXIOM


def cmd_product(args, tol) -> int:
    left, right = _load(args.left), _load(args.right)
    for name, t in (("left", left), ("right", right)):
        report = verify(t, tol)
        if not report.passed:
            names = ", ".join(c.name for c in report.failures())
            print(f"{name} triple fails verification: {names}", file=sys.stderr)
            return EXIT_AXIOM
    variant = 1 if args.variant == "plus" else -1
    result = product(left, right, variant, cap=args.cap, tol=tol)
    report = verify(result, tol)
    if args.out:
        save_triple(result, args.out)
    spectrum = eigenvalues_hermitian(result.dirac, tol)
    payload = {"ko": str(result.ko), "signs": _signs_json(result.ko),
               "hilbert_dim": result.hilbert_dim, "pass": report.passed,
               "spectrum": spectrum.tolist()}
    text = (f"KO {result.ko}  {_signs_text(result.ko)}\n"
            f"dim H = {result.hilbert_dim}\n"
            f"spectrum: {_fmt_spectrum(spectrum)}")
    _emit(args, payload, text)
    return EXIT_OK if report.passed else EXIT_AXIOM


def _fmt_spectrum(lam) -> str:
    return " ".join(f"{x:.6g}" for x in lam)


def cmd_toggle(args, tol) -> int:
    t = _load(args.triple)
    if not t.even:
        raise InputError(f"KO-dimension {t.ko} is odd; toggle needs an even triple")
    result = toggle(t)
    report = verify(result, tol)
    if args.out:
        save_triple(result, args.out)
    _emit(args, {"ko": str(result.ko), "signs": _signs_json(result.ko), "pass": report.passed},
          f"KO {t.ko} -> {result.ko}  {_signs_text(result.ko)}")
    return EXIT_OK if report.passed else EXIT_AXIOM


def cmd_table(args, tol) -> int:
    labels = [_label_arg(args.label)] if args.label else list(ALL_LABELS)
    if args.label and args.label.strip().isdigit() and int(args.label) % 2 == 0:
        # bare even n: show both variants
        labels = [KOLabel(int(args.label), "plus"), KOLabel(int(args.label), "minus")]
    if len(labels) == 1:
        text = _signs_text(labels[0])
    else:
        rows = [["n"] + [str(l) for l in labels],
                ["eps"] + [format_sign(sign_table(l).eps) for l in labels],
                ["eps'"] + [format_sign(sign_table(l).eps_prime) for l in labels],
                ["eps''"] + [format_sign(sign_table(l).eps_double_prime)
                             if l.even else "" for l in labels]]
        text = "\n".join(" ".join(f"{c:>5}" for c in r).rstrip() for r in rows)
    _emit(args, {str(l): _signs_json(l) for l in labels}, text)
    return EXIT_OK


def cmd_fixed_subalg(args, tol) -> int:
    t = _load(args.triple)
    basis = j_fixed_subalgebra(t, star=not args.no_star)
    alg = t.algebra
    lines = [f"real dimension {len(basis)} (algebra {alg}, real dimension "
             f"{alg.dim * (1 if alg.is_real else 2)})"]
    for c in basis:
        lines.append("  " + " ".join(f"{z.real + 0.0:+.6g}{z.imag + 0.0:+.6g}i" for z in c))
    _emit(args, {"real_dimension": len(basis), "basis": [_vec_json(c) for c in basis]},
          "\n".join(lines))
    return EXIT_OK


def cmd_split(args, tol) -> int:
    t = _load(args.triple)
    s = j_compatible_split(t.dirac, t.real_structure, t.signs)
    norm = float(np.linalg.norm(s.endomorphism, 2))
    ok = s.compatible_residual <= tol.threshold(max_abs(t.dirac)) and \
        s.endomorphism_residual <= tol.threshold(max_abs(t.dirac))
    _emit(args, {"norm_M": norm, "compatible_residual": s.compatible_residual,
                 "endomorphism_residual": s.endomorphism_residual, "pass": ok},
          f"||M|| = {norm:.6e}\n"
          f"d0 J - eps' J d0 residual = {s.compatible_residual:.3e}\n"
          f"M J + eps' J M residual  = {s.endomorphism_residual:.3e}")
    return EXIT_OK if ok else EXIT_AXIOM


def cmd_fluctuate(args, tol) -> int:
    t = _load(args.triple)
    try:
        pairs = load_pairs(args.pairs)
        form = one_form(t, pairs)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except (TripleFormatError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    try:
        result = fluctuate(t, form, symmetrize=args.symmetrize, tol=tol)
    except FluctuationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_AXIOM
    if args.out:
        save_triple(result, args.out)
    spectrum = eigenvalues_hermitian(result.dirac, tol)
    _emit(args, {"ko": str(result.ko), "spectrum": spectrum.tolist(), "pass": True},
          f"KO {result.ko}\nspectrum: {_fmt_spectrum(spectrum)}")
    return EXIT_OK


def cmd_spectrum(args, tol) -> int:
    t = _load(args.triple)
    lam = eigenvalues_hermitian(t.dirac, tol)
    payload = {"spectrum": lam.tolist()}
    text = _fmt_spectrum(lam)
    if args.cutoff is not None:
        sa = spectral_action(t, args.cutoff, [(p, 1.0) for p in args.powers])
        payload["spectral_action"] = sa
        text += f"\nspectral action (cutoff {args.cutoff}): {sa:.12g}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_make_example(args, tol) -> int:
    if args.kind == "one-point":
        if args.ko is None:
            raise InputError("--ko is required for one-point examples")
        t = cat.one_point(_label_arg(args.ko), trivial_dirac=args.trivial_dirac)
    elif args.kind == "two-point":
        t = cat.two_point()
    elif args.kind == "matrix":
        t = cat.matrix_triple()
    else:
        t = cat.base_triple(args.size)
    if args.ko is not None and args.kind != "one-point" and _label_arg(args.ko) != t.ko:
        raise InputError(f"{args.kind} example has KO-dimension {t.ko}; toggle or choose "
                         "a one-point example for other labels")
    save_triple(t, args.out)
    report = verify(t, tol)
    _emit(args, {"ko": str(t.ko), "hilbert_dim": t.hilbert_dim, "pass": report.passed},
          f"wrote {args.out}: KO {t.ko}, dim H = {t.hilbert_dim}")
    return EXIT_OK if report.passed else EXIT_AXIOM


def cmd_search_j(args, tol) -> int:
    try:
        data = load_data(args.triple_without_j)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except TripleFormatError as exc:
        raise InputError(str(exc)) from exc
    label = _label_arg(args.ko)
    try:
        sols = cat.search_real_structure(data.rep, data.dirac, data.grading, label,
                                         budget=args.budget, seed=args.seed, tol=tol)
    except cat.InfeasibleConstraints as exc:
        _emit(args, {"ko": str(label), "solutions": 0, "infeasible": True},
              f"infeasible: {exc}")
        return EXIT_AXIOM
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if sols and args.out:
        save_triple(RealSpectralTriple(data.rep, data.dirac, sols[0], label, data.grading),
                    args.out)
    payload = {"ko": str(label), "solutions": len(sols), "infeasible": False,
               "unitaries": [[[[float(z.real), float(z.imag)] for z in row] for row in s.u]
                             for s in sols]}
    text = f"{len(sols)} real structure(s) of KO {label} found (budget {args.budget})"
    _emit(args, payload, text)
    return EXIT_OK if sols else EXIT_AXIOM


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="spectre", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="axiom report for a triple file")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("product", parents=[common], help="product of two triples")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--variant", choices=("plus", "minus"), default="plus")
    s.add_argument("--out")
    s.add_argument("--cap", type=int, default=DEFAULT_DIM_CAP, help="Hilbert dimension cap")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("toggle", parents=[common], help="replace J by J·gamma")
    s.add_argument("--triple", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_toggle)

    s = sub.add_parser("table", parents=[common], help="KO sign table")
    s.add_argument("label", nargs="?")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("fixed-subalg", parents=[common], help="J-fixed central subalgebra")
    s.add_argument("--triple", required=True)
    s.add_argument("--no-star", action="store_true", help="use J a J* = a instead")
    s.set_defaults(func=cmd_fixed_subalg)

    s = sub.add_parser("split", parents=[common], help="J-compatible split of D")
    s.add_argument("--triple", required=True)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("fluctuate", parents=[common], help="inner fluctuation of D")
    s.add_argument("--triple", required=True)
    s.add_argument("--pairs", required=True)
    s.add_argument("--out")
    s.add_argument("--symmetrize", action="store_true")
    s.set_defaults(func=cmd_fluctuate)

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues of D")
    s.add_argument("--triple", required=True)
    s.add_argument("--cutoff", type=float)
    s.add_argument("--powers", type=int, nargs="*", default=[0])
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("make-example", parents=[common], help="write a catalog triple")
    s.add_argument("--kind", choices=("one-point", "two-point", "matrix", "base"),
                   default="one-point")
    s.add_argument("--ko")
    s.add_argument("--size", type=int, default=3, help="points of the base example")
    s.add_argument("--trivial-dirac", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_make_example)

    s = sub.add_parser("search-j", parents=[common], help="search real structures")
    s.add_argument("--triple-without-j", required=True)
    s.add_argument("--ko", required=True)
    s.add_argument("--budget", type=int, default=16)
    s.add_argument("--seed", type=lambda x: int(x, 0), default=cat.DEFAULT_SEED)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search_j)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        tol = Tolerance.from_env()
        return args.func(args, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DimensionCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ProductError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except (TripleFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
