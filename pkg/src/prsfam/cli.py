"""Command-line front end.

Subcommands: ``gen`` (construct a family file), ``dual`` (transpose a
family file), ``measure`` (evaluate one measure, emit the result),
``verify`` (run every applicable bound report), ``weil`` (complete
residue-symbol sum check for one polynomial).

Exit codes: 0 success, 2 parameter/parse errors, 3 budget errors,
4 when ``verify`` finds a violated exact inequality.  Output is
deterministic for fixed inputs, including across ``--jobs`` settings;
exact rationals are serialized as "num/den" strings so nothing passes
through floating point.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import IO, Sequence

from . import __version__
from .bounds import BoundReport, KIND_EXACT, verify_family, weil_check
from .construct import (
    Family,
    dual,
    family_f1,
    family_f2,
    family_k_symbol,
    read_family,
    write_family,
)
from .errors import BudgetError, Error, InternalError, ParameterError
from .measures import (
    MODE_EXACT,
    MODE_SAMPLED,
    MODE_VERIFIED_LB,
    MeasureResult,
    PatternWitness,
    big_gamma,
    cross_correlation,
    cross_correlation_circ,
    f_complexity,
    gamma,
    gamma_circ,
)
from .poly import Poly

__all__ = ["main", "emit_report"]

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_BUDGET = 3
EXIT_VIOLATED = 4

_MEASURES = {
    "fc": f_complexity,
    "phi": cross_correlation,
    "phi0": cross_correlation_circ,
    "gamma": gamma,
    "gamma0": gamma_circ,
    "biggamma": big_gamma,
}


def _value_str(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)  # int and Fraction both print exactly ("7", "1/2")


def _witness_dict(w):
    if w is None:
        return None
    if isinstance(w, PatternWitness):
        return {"positions": list(w.positions), "pattern": list(w.pattern)}
    out = {"M": w.window, "D": list(w.shifts), "I": list(w.rows)}
    if w.pattern is not None:
        out["W"] = list(w.pattern)
    if w.root_maps is not None:
        out["maps"] = [list(m) for m in w.root_maps]
    return out


def _measure_dict(r: MeasureResult) -> dict:
    return {
        "name": r.name,
        "order": r.order,
        "value": _value_str(r.value),
        "mode": r.mode,
        "subject": r.subject,
        "witness": _witness_dict(r.witness),
        "err_bound": repr(r.err_bound),
    }


def _bound_dict(r: BoundReport) -> dict:
    return {
        "name": r.name,
        "order": r.params.get("ell"),
        "value": _value_str(r.measured),
        "mode": "exact",
        "bound": _value_str(r.theoretical),
        "satisfied": r.satisfied,
        "kind": r.kind,
        "ratio": None if r.ratio is None else repr(r.ratio),
        "params": {k: _value_str(v) if isinstance(v, (int, float, Fraction))
                   else v for k, v in r.params.items()},
        "note": r.note,
    }


def _to_dict(r) -> dict:
    if isinstance(r, MeasureResult):
        return _measure_dict(r)
    if isinstance(r, BoundReport):
        return _bound_dict(r)
    if isinstance(r, dict):
        return r
    raise ParameterError(f"cannot serialize result of type {type(r)!r}")


_CSV_FIELDS = ["name", "order", "value", "mode", "subject", "witness",
               "bound", "satisfied", "kind", "ratio", "note"]


def emit_report(results: Sequence, fmt: str, sink: IO[str]) -> None:
    """Serialize measure results and bound reports.

    JSON: one object per result, stable field order.  CSV: flat columns
    with a header row.  Text: one aligned human-readable line each.
    Deterministic for deterministic inputs.
    """
    if not results:
        raise ParameterError("nothing to report")
    dicts = [_to_dict(r) for r in results]
    if fmt == "json":
        json.dump(dicts, sink, indent=2)
        sink.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(sink, fieldnames=_CSV_FIELDS,
                                extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for d in dicts:
            row = dict(d)
            if isinstance(row.get("witness"), dict):
                row["witness"] = json.dumps(row["witness"],
                                            separators=(",", ":"))
            writer.writerow(row)
    elif fmt == "text":
        for d in dicts:
            if "bound" in d:
                mark = "ok" if d["satisfied"] else "VIOLATED"
                sink.write(f"{d['name']:34s} [{d['kind']}] measured="
                           f"{d['value']} bound={d['bound']} {mark}\n")
            else:
                sink.write(f"{d['name']:12s} order={d['order']} value="
                           f"{d['value']} ({d['mode']})\n")
    else:
        raise ParameterError(f"unknown format {fmt!r}")


def _open_sink(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _parse_poly(text: str, p: int) -> Poly:
    try:
        coeffs = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ParameterError(
            f"polynomial must be comma-separated integers, got {text!r}")
    return Poly(coeffs, p)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="prsfam",
        description="Construct pseudorandom sequence families, evaluate "
                    "their randomness measures exactly, and verify bounds.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a family and write it")
    gen.add_argument("--construction", required=True,
                     choices=["f1", "f2", "ksym"])
    gen.add_argument("--p", type=int, required=True, help="odd prime")
    gen.add_argument("--d", type=int, required=True, help="polynomial degree")
    gen.add_argument("--k", type=int, default=2,
                     help="alphabet size (ksym only; default 2)")
    gen.add_argument("--base", type=str, default=None,
                     help="f1 base polynomial, comma-separated coefficients "
                          "constant-first (default: deterministic search)")
    gen.add_argument("--no-trace-zero", action="store_true",
                     help="f2 only: drop the zero second-highest-"
                          "coefficient restriction")
    gen.add_argument("--allow-noncoprime", action="store_true",
                     help="ksym only: build even when gcd(k,(p^d-1)/(p-1))>1")
    gen.add_argument("--budget", type=int, default=None)
    gen.add_argument("--out", required=True)

    du = sub.add_parser("dual", help="transpose a family file")
    du.add_argument("--in", dest="in_path", required=True)
    du.add_argument("--out", required=True)

    meas = sub.add_parser("measure", help="evaluate one measure")
    meas.add_argument("--in", dest="in_path", required=True)
    meas.add_argument("--measure", required=True, choices=sorted(_MEASURES))
    meas.add_argument("--ell", type=int, default=1, help="order (default 1)")
    meas.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    meas.add_argument("--samples", type=int, default=1000)
    meas.add_argument("--seed", type=int, default=0)
    meas.add_argument("--budget", type=int, default=None)
    meas.add_argument("--jobs", type=int, default=1)
    meas.add_argument("--format", choices=["json", "csv", "text"],
                      default="json")
    meas.add_argument("--out", default=None)

    ver = sub.add_parser("verify", help="run all applicable bound reports")
    ver.add_argument("--in", dest="in_path", required=True)
    ver.add_argument("--c", type=float, default=10.0,
                     help="envelope scale constant (default 10)")
    ver.add_argument("--max-order", type=int, default=2,
                     help="envelope correlation orders to compute (default 2)")
    ver.add_argument("--budget", type=int, default=None)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--format", choices=["json", "csv", "text"],
                     default="json")
    ver.add_argument("--out", default=None)

    weil = sub.add_parser("weil", help="complete residue-symbol sum check")
    weil.add_argument("--poly", required=True,
                      help="comma-separated coefficients, constant first")
    weil.add_argument("--p", type=int, required=True)
    weil.add_argument("--format", choices=["json", "csv", "text"],
                      default="json")
    weil.add_argument("--out", default=None)

    return top


def _cmd_gen(args) -> int:
    if args.construction == "f1":
        base = None if args.base is None else _parse_poly(args.base, args.p)
        fam = family_f1(args.p, args.d, base=base, budget=args.budget)
    elif args.construction == "f2":
        fam = family_f2(args.p, args.d, trace_zero=not args.no_trace_zero,
                        budget=args.budget)
    else:
        fam = family_k_symbol(args.p, args.d, args.k,
                              require_coprime=not args.allow_noncoprime,
                              budget=args.budget)
    write_family(fam, args.out)
    return EXIT_OK


def _cmd_dual(args) -> int:
    fam = read_family(args.in_path)
    write_family(dual(fam), args.out)
    return EXIT_OK


def _cmd_measure(args) -> int:
    fam = read_family(args.in_path)
    name = args.measure
    fn = _MEASURES[name]
    kwargs = {"budget": args.budget}
    if name in ("phi", "gamma", "biggamma"):
        kwargs.update(mode=MODE_SAMPLED if args.mode == "sampled"
                      else MODE_EXACT,
                      seed=args.seed, samples=args.samples,
                      n_jobs=args.jobs)
    elif name in ("phi0", "gamma0"):
        kwargs["n_jobs"] = args.jobs
    sink, close = _open_sink(args.out)
    try:
        if name == "fc":
            try:
                result = fn(fam, budget=args.budget)
            except BudgetError as exc:
                if exc.verified_lower_bound is not None:
                    emit_report([{
                        "name": "f_complexity", "order": 0,
                        "value": str(exc.verified_lower_bound),
                        "mode": MODE_VERIFIED_LB, "subject": fam.construction,
                        "witness": None, "err_bound": "0.0",
                    }], args.format, sink)
                raise
        else:
            result = fn(fam, args.ell, **kwargs)
        emit_report([result], args.format, sink)
    finally:
        if close:
            sink.close()
    return EXIT_OK


def compute_verify_measures(fam: Family, max_order: int = 2,
                            budget: int | None = None,
                            n_jobs: int = 1) -> list[MeasureResult]:
    """The measure set ``verify`` feeds to ``verify_family``: covering
    complexity, the dual correlations the lower bound needs, and
    order-1..max_order correlations of the family for the envelopes."""
    dl = dual(fam)
    measures = [f_complexity(fam, budget=budget)]
    imax = 0
    base = fam.k if fam.k >= 3 else 2
    while base ** (imax + 1) <= fam.size:
        imax += 1
    imax = max(imax, 1) if fam.size >= 2 else 0
    for i in range(1, imax + 1):
        if fam.k == 2:
            measures.append(cross_correlation(dl, i, budget=budget,
                                              n_jobs=n_jobs))
        else:
            measures.append(gamma(dl, i, budget=budget, n_jobs=n_jobs))
    for ell in range(1, max_order + 1):
        if fam.k == 2:
            measures.append(cross_correlation(fam, ell, budget=budget,
                                              n_jobs=n_jobs))
        else:
            measures.append(gamma(fam, ell, budget=budget, n_jobs=n_jobs))
            measures.append(gamma_circ(dl, ell, budget=budget,
                                       n_jobs=n_jobs))
    return measures


def _cmd_verify(args) -> int:
    fam = read_family(args.in_path)
    measures = compute_verify_measures(fam, max_order=args.max_order,
                                       budget=args.budget, n_jobs=args.jobs)
    reports = verify_family(fam, measures, c=args.c)
    sink, close = _open_sink(args.out)
    try:
        emit_report(reports, args.format, sink)
    finally:
        if close:
            sink.close()
    violated = [r for r in reports if r.kind == KIND_EXACT and not r.satisfied]
    if violated:
        for r in violated:
            print(f"violated exact inequality: {r.name}", file=sys.stderr)
        return EXIT_VIOLATED
    return EXIT_OK


def _cmd_weil(args) -> int:
    h = _parse_poly(args.poly, args.p)
    report = weil_check(h, args.p)
    sink, close = _open_sink(args.out)
    try:
        emit_report([report], args.format, sink)
    finally:
        if close:
            sink.close()
    return EXIT_OK


_HANDLERS = {
    "gen": _cmd_gen,
    "dual": _cmd_dual,
    "measure": _cmd_measure,
    "verify": _cmd_verify,
    "weil": _cmd_weil,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalError:
        raise
    except Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
