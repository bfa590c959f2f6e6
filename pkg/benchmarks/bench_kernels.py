"""Compare the numba and pure-numpy cycle-counting kernels.

    python3 benchmarks/bench_kernels.py --points 1000,100000,1000000 --repeats 5

Prints a CSV (kernel,backend,points,ns) plus a speedup summary on stderr.
"""
import argparse
import sys

from meanders import _kernels
from meanders.bench import kernel_bench, write_kernel_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", default="1000,10000,100000,1000000")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    grid = [int(p) for p in args.points.split(",")]
    rows = kernel_bench(grid, repeats=args.repeats, seed=args.seed)
    write_kernel_csv(rows, sys.stdout)

    if not _kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy path was timed", file=sys.stderr)
        return 0
    times = {(k, b, p): ns for k, b, p, ns in rows}
    for kernel in ("meander_cycles", "count_cycles"):
        for p in grid:
            ratio = times[(kernel, "numpy", p)] / max(times[(kernel, "numba", p)], 1)
            print(f"{kernel:>15} {p:>9} points: numba {ratio:6.1f}x faster", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
