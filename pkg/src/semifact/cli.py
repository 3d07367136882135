"""``sgf`` command line.

Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import invariants as inv
from .cache import cached_factorizations
from .core import Element, SemigroupPresentation, load_semigroup
from .errors import SemigroupError
from .plot import plot_delta
from .quasipoly import TranslatedCone, cone_fit, fit_search, format_poly, ray_fit
from .scanio import dumps_csv, dumps_jsonl, parse_element, read_scan, write_scan

log = logging.getLogger("semifact")


class UsageError(Exception):
    pass


def _ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _load(args) -> SemigroupPresentation:
    if not args.sgp:
        raise UsageError("--sgp is required")
    try:
        doc = json.loads(Path(args.sgp).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"--sgp: cannot read {args.sgp}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--sgp: invalid JSON: {exc.msg}") from None
    sgp, warnings = load_semigroup(doc, permissive=args.permissive)
    for w in warnings:
        log.warning("semigroup warning: %s", w)
    return sgp


def _element(args, sgp: SemigroupPresentation) -> Element:
    if args.element is None:
        raise UsageError("--element is required")
    try:
        e = parse_element(args.element)
    except ValueError:
        raise UsageError(f"--element: cannot parse {args.element!r}") from None
    if not e.torsion and sgp.ambient.torsion_orders:
        e = Element(e.free, (0,) * len(sgp.ambient.torsion_orders))
    return sgp.coerce(e) if len(e.free) == sgp.ambient.free_rank else sgp.coerce(e.free)


def _frac(x: Fraction) -> str:
    return str(x) if x.denominator != 1 else str(x.numerator)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_factor(args) -> None:
    sgp = _load(args)
    e = _element(args, sgp)
    z = cached_factorizations(args.cache, sgp, e)
    _emit({"element": str(e), "count": len(z), "factorizations": [list(v) for v in z.vectors()]})


def _require_member(args):
    sgp = _load(args)
    return sgp, _element(args, sgp)


def cmd_lengths(args) -> None:
    sgp, e = _require_member(args)
    _emit({"element": str(e), "lengths": list(inv.length_set(sgp, e).lengths)})


def cmd_delta(args) -> None:
    sgp, e = _require_member(args)
    _emit({"element": str(e), "delta": list(inv.delta_of_element(sgp, e).gaps)})


def cmd_maxlen(args) -> None:
    sgp, e = _require_member(args)
    _emit({"element": str(e), "max_len": inv.max_length(sgp, e)})


def cmd_minlen(args) -> None:
    sgp, e = _require_member(args)
    _emit({"element": str(e), "min_len": inv.min_length(sgp, e)})


def cmd_omega(args) -> None:
    sgp, e = _require_member(args)
    res = inv.omega(sgp, e) if sgp.is_numerical else inv.omega_bounded(sgp, e, args.cap)
    _emit({"element": str(e), "omega": res.value, "exact": res.exact})


def cmd_catenary(args) -> None:
    sgp, e = _require_member(args)
    z = cached_factorizations(args.cache, sgp, e)
    if not z.factorizations:
        inv.catenary_degree(sgp, e)  # raises NotInSemigroup
    _emit({"element": str(e), "catenary": inv.catenary_from_factorizations(z.vectors())})


def cmd_apery(args) -> None:
    sgp = _load(args)
    subset = _ints(args.subset, "--subset") if args.subset else sgp.numbers[:1]
    _emit({"subset": list(subset), "apery": inv.apery_set(sgp, subset)})


def _range(args, sgp: SemigroupPresentation):
    if args.box:
        try:
            lo_text, hi_text = args.box.split(":")
        except ValueError:
            raise UsageError(f"--box: expected x0,y0:x1,y1, got {args.box!r}") from None
        return _ints(lo_text, "--box"), _ints(hi_text, "--box")
    if args.from_ is None or args.to is None:
        raise UsageError("--from and --to (or --box) are required")
    if not sgp.is_numerical:
        return (args.from_,) * sgp.ambient.free_rank, (args.to,) * sgp.ambient.free_rank
    return args.from_, args.to


def _selection(args) -> list[str]:
    names = [x.strip() for x in args.invariants.split(",") if x.strip()]
    try:
        inv.normalize_selection(names)
    except ValueError as exc:
        raise UsageError(f"--invariants: {exc}") from None
    return names


def cmd_scan(args) -> None:
    sgp = _load(args)
    lo, hi = _range(args, sgp)
    table = inv.scan(sgp, lo, hi, _selection(args), omega_cap=args.cap, workers=args.workers)
    if args.out:
        write_scan(args.out, table, args.format)
    else:
        sys.stdout.write(dumps_csv(table) if args.format == "csv" else dumps_jsonl(table))


def _fit_json(report) -> dict:
    doc = report.to_json()
    doc["leading"] = [_frac(c) for c in report.qp.leading()]
    return doc


def cmd_fit(args) -> None:
    column = args.invariant
    if args.scan:
        table = read_scan(args.scan)
        if column not in table.columns:
            raise UsageError(f"--invariant: column {column!r} not in {args.scan}")
    else:
        sgp = _load(args)
        if not sgp.is_numerical:
            raise UsageError("fit over a range needs a numerical semigroup; use cone-fit or ray-fit")
        lo, hi = _range(args, sgp)
        table = inv.scan(sgp, lo, hi, [column])
    samples = {}
    for rec in table:
        v = getattr(rec, column)
        samples[rec.element.free[0]] = len(v) if isinstance(v, tuple) else v
    report = fit_search(samples, args.degree_bound, args.period_bound)
    _emit(_fit_json(report))


def cmd_ray_fit(args) -> None:
    sgp, e = _require_member(args)
    rf = ray_fit(sgp, e, args.invariant, args.degree_bound, args.period_bound, args.steps)
    doc = _fit_json(rf.report)
    doc["observed_degree"] = rf.observed_degree
    if rf.factorization_rank is not None:
        doc["factorization_rank"] = rf.factorization_rank
    _emit(doc)


def cmd_cone_fit(args) -> None:
    sgp = _load(args)
    if not args.base or not args.cone:
        raise UsageError("--base and --cone are required")
    base = _ints(args.base, "--base")
    gens = [_ints(g, "--cone") for g in args.cone.split(";")]
    cone = TranslatedCone(
        sgp.ambient.element(base),
        tuple(sgp.ambient.element(g) for g in gens),
        sgp.ambient,
    )
    cp = cone_fit(sgp, cone, args.invariant, args.degree, args.grid)
    if cp is None:
        _emit({"fit": None})
        return
    doc = cp.to_json()
    doc["poly_text"] = format_poly(cp.poly, [f"c{j + 1}" for j in range(cone.dim)])
    if cp.ambient_form is not None:
        names = ["x", "y", "z"] if cone.dim <= 3 else [f"x{j + 1}" for j in range(cone.dim)]
        doc["ambient_text"] = format_poly(cp.ambient_form, names)
    _emit(doc)


def cmd_delta_set(args) -> None:
    sgp = _load(args)
    if args.horizon is None:
        raise UsageError("--horizon is required")
    union, cert = inv.delta_of_semigroup(sgp, args.horizon, args.start_hint)
    _emit(
        {
            "delta": list(union.gaps),
            "certificate": {
                "period": cert.period,
                "start": cert.start,
                "verified_window": list(cert.verified_window),
                "status": cert.status,
                "minimal_period": cert.minimal_period,
            },
        }
    )


def cmd_plot_delta(args) -> None:
    sgp = _load(args)
    if args.horizon is None or not args.out:
        raise UsageError("--horizon and --out are required")
    points = plot_delta(sgp, args.horizon, args.out)
    _emit({"points": len(points), "svg": str(args.out), "csv": str(Path(args.out).with_suffix(".csv"))})


def cmd_verify_paper(args) -> int:
    from .reproduce import run_all

    results = run_all()
    for r in results:
        print(r.line(), flush=True)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgf", description="Factorization invariants of finitely generated semigroups.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, *flags: str, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--sgp", help="semigroup JSON document")
        p.add_argument("--permissive", action="store_true", help="downgrade non-minimal generators to a warning")
        if "element" in flags:
            p.add_argument("--element", help="60, 3,4 or 3,4|1")
        if "cache" in flags:
            p.add_argument("--cache", help="factorization cache directory")
        if "range" in flags:
            p.add_argument("--from", dest="from_", type=int)
            p.add_argument("--to", type=int)
            p.add_argument("--box", help="x0,y0:x1,y1")
        if "fit" in flags:
            p.add_argument("--degree-bound", type=int, default=2)
            p.add_argument("--period-bound", type=int, required=True)
        if "cap" in flags:
            p.add_argument("--cap", type=int, default=64, help="bullet length cap for non-numerical omega")
        return p

    add("factor", cmd_factor, "element", "cache")
    add("lengths", cmd_lengths, "element")
    add("delta", cmd_delta, "element")
    add("maxlen", cmd_maxlen, "element")
    add("minlen", cmd_minlen, "element")
    add("omega", cmd_omega, "element", "cap")
    add("catenary", cmd_catenary, "element", "cache")
    p = add("apery", cmd_apery)
    p.add_argument("--subset", help="comma-separated generators (default: the smallest)")
    p = add("scan", cmd_scan, "range", "cap")
    p.add_argument("--invariants", default="z_count")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--workers", type=int, default=1)
    p = add("fit", cmd_fit, "range", "fit")
    p.add_argument("--invariant", default="z_count")
    p.add_argument("--scan", help="read samples from a scan file instead of computing them")
    p = add("ray-fit", cmd_ray_fit, "element", "fit")
    p.add_argument("--invariant", default="z_count")
    p.add_argument("--steps", type=int)
    p = add("cone-fit", cmd_cone_fit)
    p.add_argument("--base")
    p.add_argument("--cone", help="generators separated by ';', e.g. 2,1;3,3")
    p.add_argument("--invariant", default="z_count")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--grid", type=int, default=6)
    p = add("delta-set", cmd_delta_set)
    p.add_argument("--horizon", type=int)
    p.add_argument("--start-hint", type=int)
    add("verify-paper", cmd_verify_paper)
    p = add("plot-delta", cmd_plot_delta)
    p.add_argument("--horizon", type=int)
    p.add_argument("--out")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        code = args.fn(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"sgf: error: {exc}\n")
        return 2
    except SemigroupError as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
