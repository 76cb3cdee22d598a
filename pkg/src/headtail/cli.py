"""Command line front end.

Exit codes: 0 when every check passes, 1 when a check fails (or ``parse``
finds a bad line), 2 for unreadable input, bad options or engine limits.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import replace
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .algebra import NotOnLattice, to_q, to_text
from .cache import ResultCache, cached_colored_jones
from .diagram import PDError, is_alternating, parse_lines
from .stability import (
    FAIL,
    SKIPPED,
    Check,
    Inapplicable,
    MissingVolume,
    load_census,
    predict,
    verify_stabilization,
    volume_bounds,
)
from .statesum import ENGINES, FRONTIER_CAP, NAIVE_CAP, FrontierTooWide, TooLarge, bracket
from .stategraphs import graph_stats

log = logging.getLogger("headtail")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def builtin_knots() -> Path:
    return Path(str(resources.files("headtail") / "data" / "knots.pd"))


def builtin_census() -> Path:
    return Path(str(resources.files("headtail") / "data" / "census.csv"))


# -- input -------------------------------------------------------------------------

def _read(path: str | None) -> str:
    if path is None:
        path = str(builtin_knots())
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_input(args) -> list:
    """Diagrams from the input file, filtered by ``--only``; bad lines abort."""
    text = _read(args.file)
    wanted = set(args.only.split(",")) if args.only else None
    out = []
    for pl in parse_lines(text):
        if pl.error is not None:
            raise InputError(f"line {pl.line_no}: {pl.error}")
        d = pl.diagram
        if d.name is None:
            d = replace(d, name=f"line{pl.line_no}")
        if wanted is None or d.name in wanted:
            out.append(d)
    if wanted:
        missing = wanted - {d.name for d in out}
        if missing:
            raise InputError(f"knots not found: {', '.join(sorted(missing))}")
    if not out:
        log.warning("no diagrams in input")
    return out


def _caps(args) -> dict:
    return {"naive_cap": args.naive_cap, "frontier_cap": args.frontier_cap}


def _cache(args) -> ResultCache | None:
    return ResultCache(args.cache) if args.cache else None


def _poly_text(p, var: str) -> str:
    if var == "A":
        return to_text(p, "A")
    try:
        return to_q(p).to_text("q")
    except NotOnLattice:
        return to_text(p, "A")


def _emit_rows(args, header: list[str], rows: list[list], out) -> None:
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    for row in [header, *rows]:
        out.write("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip() + "\n")


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


# -- commands ----------------------------------------------------------------------

def cmd_parse(args, out) -> int:
    files = args.files or [None]
    errors = total = 0
    for f in files:
        text = _read(f)
        label = f or "builtin"
        if not text.strip():
            log.warning("%s: empty file", label)
            continue
        for pl in parse_lines(text):
            total += 1
            if pl.error is None:
                d = pl.diagram
                out.write(f"{label}:{pl.line_no}: OK {d.name or '-'} ({len(d.crossings)} crossings)\n")
            else:
                errors += 1
                out.write(f"{label}:{pl.line_no}: ERROR {pl.error}\n")
    out.write(f"{total - errors} OK, {errors} error(s)\n")
    return EXIT_FAIL if errors else EXIT_OK


def cmd_bracket(args, out) -> int:
    rows, blobs = [], []
    for d in load_input(args):
        bv = bracket(d, args.engine, **_caps(args))
        p = bv.reduced if args.convention == "reduced" else bv.unreduced
        blobs.append({"knot": d.name, "convention": args.convention, "bracket": p.to_json()})
        rows.append([d.name, len(d.crossings), to_text(p, "A")])
    if args.format == "json":
        json.dump(blobs, out, indent=2)
        out.write("\n")
    else:
        _emit_rows(args, ["knot", "crossings", "bracket"], rows, out)
    return EXIT_OK


def cmd_jones(args, out) -> int:
    rows, blobs = [], []
    cache = _cache(args)
    for d in load_input(args):
        cj = cached_colored_jones(d, args.n, args.engine, cache, **_caps(args))
        p = cj.normalized if args.normalized else cj.unnormalized
        blobs.append({
            "knot": d.name,
            "n": args.n,
            "unnormalized": cj.unnormalized.to_json(),
            "normalized": cj.normalized.to_json(),
        })
        rows.append([d.name, args.n, _poly_text(p, args.var)])
    if args.format == "json":
        json.dump(blobs, out, indent=2)
        out.write("\n")
    else:
        label = "J'(n)" if args.normalized else "J(n)"
        _emit_rows(args, ["knot", "n", label], rows, out)
    return EXIT_OK


def cmd_graphs(args, out) -> int:
    rows, blobs = [], []
    for d in load_input(args):
        sides = {pol: graph_stats(d, pol) for pol in ("A", "B")}
        blobs.append({"knot": d.name, **{pol: s.to_json() for pol, s in sides.items()}})
        for pol, s in sides.items():
            rows.append([d.name, pol, s.v, s.e, s.beta1, s.mu, s.tau, s.theta,
                         s.adequate, " ".join(map(str, s.multiplicities))])
    if args.format == "json":
        json.dump(blobs, out, indent=2)
        out.write("\n")
    else:
        _emit_rows(args, ["knot", "side", "v", "e", "beta1", "mu", "tau", "theta",
                          "adequate", "multiplicities"], rows, out)
    return EXIT_OK


def _load_census(args) -> dict:
    path = args.census or builtin_census()
    try:
        return load_census(path)
    except (OSError, KeyError, ValueError) as exc:
        raise InputError(f"cannot load census {path}: {exc}") from exc


def _verify_one(job):
    d, kwargs = job
    return verify_stabilization(d, **kwargs)


def cmd_verify(args, out) -> int:
    if args.n_max < 3:
        raise InputError("--n-max must be at least 3")
    census = _load_census(args)
    knots = load_input(args)
    jobs = [
        (d, dict(n_max=args.n_max, engine=args.engine, census=census.get(d.name),
                 cache=_cache(args), **_caps(args)))
        for d in knots
    ]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]

    if args.plot:
        from .plots import plot_report

        for d, r in zip(knots, reports):
            preds = {}
            sa, sb = graph_stats(d, "A"), graph_stats(d, "B")
            for n in r.headtails:
                try:
                    preds[n] = predict(sa, sb, n, is_alternating(d))
                except Inapplicable:
                    pass
            path = plot_report(r, args.plot, preds)
            if path is not None:
                log.info("wrote %s", path)

    if args.format == "json":
        json.dump([r.to_json() for r in reports], out, indent=2)
        out.write("\n")
    else:
        rows = [[r.knot, c.id, c.status, _fmt(c.expected), _fmt(c.got), c.detail]
                for r in reports for c in r.checks]
        _emit_rows(args, ["knot", "check", "status", "expected", "got", "detail"], rows, out)
        if args.format == "text":
            failed = [r.knot for r in reports if not r.passed]
            out.write(f"{len(reports) - len(failed)}/{len(reports)} knots pass"
                      + (f"; failing: {', '.join(failed)}" if failed else "") + "\n")
    return EXIT_FAIL if any(not r.passed for r in reports) else EXIT_OK


def cmd_volume_bounds(args, out) -> int:
    census = _load_census(args)
    checks: list[tuple[str, Check]] = []
    for d in load_input(args):
        sa, sb = graph_stats(d, "A"), graph_stats(d, "B")
        try:
            pred = predict(sa, sb, 2, is_alternating(d))
            c = volume_bounds(pred, census.get(d.name))
        except Inapplicable as exc:
            c = Check("volume-bounds", None, None, "INAPPLICABLE", str(exc))
        except MissingVolume as exc:
            c = Check("volume-bounds", None, None, SKIPPED, str(exc).strip("'\""))
        checks.append((d.name, c))
    if args.format == "json":
        json.dump([{"knot": k, **c.to_json()} for k, c in checks], out, indent=2)
        out.write("\n")
    else:
        rows = [[k, c.status, _fmt(c.expected), _fmt(c.got), c.detail] for k, c in checks]
        _emit_rows(args, ["knot", "status", "bounds", "volume", "detail"], rows, out)
    return EXIT_FAIL if any(c.status == FAIL for _, c in checks) else EXIT_OK


# -- argument parsing ------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="knot file, one PD code per line ('-' for stdin; "
                                                "default: the bundled knot table)")
    common.add_argument("--only", help="comma-separated knot names to keep")
    common.add_argument("--engine", choices=ENGINES, default="auto")
    common.add_argument("--naive-cap", type=_positive, default=NAIVE_CAP,
                        help="largest crossing count for the brute-force engine")
    common.add_argument("--frontier-cap", type=_positive, default=FRONTIER_CAP,
                        help="largest number of frontier pairings")
    common.add_argument("--cache", metavar="DIR", help="directory for cached polynomials")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.set_defaults(format="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="headtail", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate knot files")
    p.add_argument("files", nargs="*")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("bracket", parents=[common], help="Kauffman bracket")
    p.add_argument("--convention", choices=("reduced", "unreduced"), default="reduced")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jones", parents=[common], help="colored Jones polynomial")
    p.add_argument("--n", type=_positive, default=2, help="color; 2 gives the Jones polynomial")
    p.add_argument("--normalized", action="store_true", help="divide by the unknot value [n]")
    p.add_argument("--var", choices=("A", "q"), default="A", help="print in A or in q = A^4")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("graphs", parents=[common], help="A-graph and B-graph statistics")
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("verify", parents=[common], help="check head/tail stabilization")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--census", metavar="FILE", help="volume census CSV (default: bundled)")
    p.add_argument("--plot", metavar="DIR", help="write a PNG of |head| and |tail| per knot")
    p.add_argument("--jobs", type=_positive, default=1, help="knots verified in parallel")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("volume-bounds", parents=[common], help="volume bounds from graph data")
    p.add_argument("--census", metavar="FILE", help="volume census CSV (default: bundled)")
    p.set_defaults(func=cmd_volume_bounds)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args, out)
    except InputError as exc:
        log.error("%s", exc)
    except PDError as exc:
        log.error("bad diagram: %s", exc)
    except (TooLarge, FrontierTooWide) as exc:
        log.error("%s", exc)
    return EXIT_INPUT


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
