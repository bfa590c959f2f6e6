"""Command-line interface: ``meanders <command> ...``.

Exit codes: 0 ok, 2 malformed input, 3 numeric limits, 4 violated
precondition, 5 I/O failure.
"""
from __future__ import annotations

import argparse
import math
import re
import sys

from . import billiard, core, render
from . import bench as benchmod
from . import birainbow as br
from . import collapse as collapsemod
from . import gcd_falsifier as gf
from . import temperley_lieb as tl
from .errors import (
    BadParameters,
    InternalConsistencyError,
    MeanderError,
    NumericError,
    ParseError,
    PreconditionError,
)

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC, EXIT_PRECONDITION, EXIT_IO = 0, 2, 3, 4, 5

FORMATS = ("tuple", "pairs", "perm", "brackets", "flip", "shooting", "tl")


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------

def detect_format(text: str) -> str:
    s = re.sub(r"\s+", "", text)
    if re.search(r"e\d", s):
        return "tl"
    if "/" in s:
        return "brackets" if s.startswith("((") else "pairs"
    if s.startswith("(("):
        return "flip"
    if s.startswith("("):
        return "perm"
    return "tuple"


def read_meander(text: str, fmt: str, strands: int | None = None) -> core.Meander:
    """Parse any supported representation into a meander."""
    if fmt == "tuple":
        return core.birainbow_to_meander(br.parse_tuple(text).families)
    if fmt == "brackets":
        return core.parse_meander(text)
    if fmt == "pairs":
        if text.count("/") != 1:
            raise ParseError("partner lists need the form 'UPPER/LOWER'")
        up, low = text.split("/")
        return core.combine(core.parse_involution(up), core.parse_involution(low))
    if fmt == "perm":
        return core.meander_from_permutation(core.parse_cycles(text))
    if fmt == "flip":
        # cleaved expressions come from a flip and are turned back; twisted
        # ones are read as an upper collection over the lower rainbow
        b = core.parse_brackets(text)
        return core.unflip(b) if core.is_cleaved(b) else core.rainbow_meander(b)
    if fmt == "shooting":
        values = [t.strip() for t in text.split(",") if t.strip()]
        if not all(v.isdigit() for v in values):
            raise ParseError(f"shooting table must be comma-separated integers: {text!r}")
        return core.meander_from_shooting([int(v) for v in values])
    if fmt == "tl":
        if strands is None:
            raise BadParameters("a generator word needs --strands")
        return tl.closure_to_meander(tl.diagram(tl.parse_word(text, strands)))
    raise ParseError(f"unknown format {fmt!r}")


def write_meander(m: core.Meander, fmt: str) -> str:
    if fmt == "brackets":
        return core.format_meander(m)
    if fmt == "pairs":
        return core.format_involution(m.upper) + "/" + core.format_involution(m.lower)
    if fmt == "perm":
        return core.format_cycles(core.cycles_of(core.meander_permutation(m)))
    if fmt == "flip":
        return core.emit_brackets(core.flip(m))
    if fmt == "shooting":
        return ",".join(str(v) for v in core.trace_shooting(m))
    if fmt == "tuple":
        fams = br.families_of_meander(m)
        if fams is None:
            raise PreconditionError("meander is not a bi-rainbow meander")
        return br.format_tuple(fams)
    raise BadParameters(f"cannot write format {fmt!r}")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_count(args) -> int:
    fmt = args.format or detect_format(args.input)
    algorithm = args.algorithm
    if fmt == "tuple":
        t = br.parse_tuple(args.input)
        algorithm = algorithm or "inner"
        if algorithm in ("inner", "outer"):
            trace = br.StepTrace()
            fn = br.z_inner if algorithm == "inner" else br.z_outer
            z = fn(t, trace)
            if args.trace:
                for line in trace.lines():
                    print(line)
        elif algorithm == "gcd":
            z = br.z_gcd_small(t)
        elif algorithm == "collapse":
            z = collapsemod.z_via_collapse(t)
        else:
            z = br.z_oracle(t)
    else:
        m = read_meander(args.input, fmt, args.strands)
        algorithm = algorithm or "oracle"
        if algorithm == "oracle":
            z = core.count_components(m)
        else:
            fams = br.families_of_meander(m)
            if fams is None:
                raise PreconditionError(f"algorithm {algorithm!r} needs a bi-rainbow meander")
            ns = argparse.Namespace(**{**vars(args), "input": br.format_tuple(fams), "format": "tuple"})
            return cmd_count(ns)
    print(z)
    return EXIT_OK


def cmd_convert(args) -> int:
    src = args.source or detect_format(args.input)
    m = read_meander(args.input, src, args.strands)
    print(write_meander(m, args.to))
    return EXIT_OK


def falsify_pair(f1: str, f2: str, arity: int, budget: int = gf.DEFAULT_STAR_BUDGET,
                 lambda_budget: int = gf.DEFAULT_LAMBDA_BUDGET, workers: int = 1) -> gf.Counterexample:
    """What ``falsify`` runs: parse, search, and re-verify the counterexample."""
    p1, p2 = gf.parse_polynomial(f1, arity), gf.parse_polynomial(f2, arity)
    found = gf.falsify(p1, p2, star_budget=budget, lambda_budget=lambda_budget, workers=workers)
    fams = found.tuple.families
    g = math.gcd(gf.evaluate(p1, fams), gf.evaluate(p2, fams))
    if g != found.gcd_value or br.z_inner(fams) != found.z_true or g == found.z_true:
        raise InternalConsistencyError(f"counterexample {found} failed re-verification")
    return found


def cmd_falsify(args) -> int:
    found = falsify_pair(args.f1, args.f2, args.arity, args.budget, args.lambda_budget, args.workers)
    print(found)
    return EXIT_OK


def cmd_collapse(args) -> int:
    print(collapsemod.collapse(br.parse_tuple(args.tuple)))
    return EXIT_OK


def cmd_tl(args) -> int:
    w = tl.parse_word(args.word, args.strands)
    d = tl.diagram(w)
    m = tl.closure_to_meander(d)
    z = core.count_components(m)
    print(f"islands={d.islands} Z={z} trace_exp={d.islands + z}")
    if args.show:
        print(core.emit_brackets(core.arcs_to_brackets(m.upper)))
    return EXIT_OK


def _boundary(text: str, general: bool) -> billiard.BilliardBoundary:
    b = core.parse_brackets(text)
    if general or not core.is_cleaved(b):
        return billiard.boundary_from_general(b)
    return billiard.boundary_from_cleaved(b)


def cmd_billiard(args) -> int:
    bd = _boundary(args.brackets, args.general)
    print(f"trajectories={billiard.count_trajectories(bd)} edges={bd.edges}")
    if args.vertices:
        print(bd.vertex_text())
    return EXIT_OK


def cmd_render(args) -> int:
    if args.billiard:
        svg = render.billiard_svg(_boundary(args.input, False))
    else:
        fmt = args.format or detect_format(args.input)
        svg = render.meander_svg(read_meander(args.input, fmt, args.strands))
    _emit(svg, args.out)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_bench(args) -> int:
    if args.kernels:
        rows = benchmod.kernel_bench(args.points, repeats=args.trials, seed=args.seed)
        if args.csv:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                benchmod.write_kernel_csv(rows, fh)
        else:
            benchmod.write_kernel_csv(rows, sys.stdout)
        return EXIT_OK
    extra = [benchmod.fibonacci_pair(k) for k in args.fibonacci]
    records = benchmod.run_bench(
        args.sizes, trials=args.trials, n=args.families, seed=args.seed,
        algorithms=args.algorithms.split(","), workers=args.workers, extra=extra,
    )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            benchmod.write_csv(records, fh)
    else:
        benchmod.write_csv(records, sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meanders", description="Count and convert meander curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of closed curves")
    p.add_argument("input", help='tuple "4,5,3,4,5", bracket pair, cycles, or generator word')
    p.add_argument("--algorithm", choices=("inner", "outer", "gcd", "oracle", "collapse"))
    p.add_argument("--format", choices=FORMATS, help="override input auto-detection")
    p.add_argument("--strands", type=int, help="strand count for generator words")
    p.add_argument("--trace", action="store_true", help="print each retraction step")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("convert", help="translate between representations")
    p.add_argument("input")
    p.add_argument("--from", dest="source", choices=FORMATS)
    p.add_argument("--to", required=True, choices=("pairs", "perm", "brackets", "flip", "shooting", "tuple"))
    p.add_argument("--strands", type=int)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("bench", help="time the counting algorithms (CSV)")
    p.add_argument("--sizes", type=_int_list, default=[8, 16, 32, 48, 60], help="entry bit sizes")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--families", type=int, default=6)
    p.add_argument("--algorithms", default="inner,outer,gcd,oracle")
    p.add_argument("--fibonacci", type=_int_list, default=[], help="also time (F_k, F_k+1) for these k")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--kernels", action="store_true", help="compare the numba and numpy kernels instead")
    p.add_argument("--points", type=_int_list, default=[1000, 10000, 100000, 1000000])
    p.add_argument("--csv", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw an SVG")
    p.add_argument("input")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--strands", type=int)
    p.add_argument("--billiard", action="store_true", help="read a bracket expression and draw its billiard")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("falsify", help="counterexample to a gcd formula")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--budget", type=int, default=gf.DEFAULT_STAR_BUDGET, help="largest middle family tried")
    p.add_argument("--lambda-budget", type=int, default=gf.DEFAULT_LAMBDA_BUDGET, help="largest scale factor")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("collapse", help="paths and cycles of the collapsed meander")
    p.add_argument("tuple")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("tl", help="close a Temperley-Lieb word into a meander")
    p.add_argument("word")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--show", action="store_true", help="also print the closure's bracket expression")
    p.set_defaults(func=cmd_tl)

    p = sub.add_parser("billiard", help="build a billiard and count its trajectories")
    p.add_argument("brackets")
    p.add_argument("--general", action="store_true", help="always use the twisted construction")
    p.add_argument("--vertices", action="store_true", help="print the boundary polyline")
    p.set_defaults(func=cmd_billiard)
    return parser


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    if isinstance(exc, OSError):
        return EXIT_IO
    return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MeanderError, OSError) as exc:
        print(f"meanders: error: {exc}", file=sys.stderr)
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
