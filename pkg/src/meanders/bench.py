"""Timing harness for the counting algorithms and the array kernels."""
from __future__ import annotations

import csv
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from . import _kernels, core
from . import birainbow as br

ALGORITHMS = ("inner", "outer", "gcd", "oracle")
CSV_HEADER = ("input", "algorithm", "ns", "remainder_ops", "bits", "n")


@dataclass(frozen=True)
class BenchRecord:
    input: str
    algorithm: str
    ns: int
    remainder_ops: int | None
    bits: int
    n: int

    def row(self) -> tuple:
        ops = "" if self.remainder_ops is None else self.remainder_ops
        return (self.input, self.algorithm, self.ns, ops, self.bits, self.n)


def fibonacci_pair(k: int) -> tuple[int, int]:
    """``(F_k, F_{k+1})`` with ``F_1 = F_2 = 1``."""
    a, b = 1, 1
    for _ in range(k - 1):
        a, b = b, a + b
    return a, b


def random_tuple(rng: random.Random, n: int, bits: int) -> tuple[int, ...]:
    return tuple(rng.randint(1, 2**bits) for _ in range(n))


def time_one(fams: tuple[int, ...], algorithm: str) -> BenchRecord:
    text = br.format_tuple(fams)
    b = br.bit_size(fams)
    ops = None
    if algorithm in ("inner", "outer"):
        trace = br.StepTrace()
        fn = br.z_inner if algorithm == "inner" else br.z_outer
        start = time.perf_counter_ns()
        fn(fams, trace)
        ns = time.perf_counter_ns() - start
        ops = trace.remainder_ops
    elif algorithm == "gcd":
        start = time.perf_counter_ns()
        br.z_gcd_small(fams)
        ns = time.perf_counter_ns() - start
    elif algorithm == "oracle":
        start = time.perf_counter_ns()
        br.z_oracle(fams)
        ns = time.perf_counter_ns() - start
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return BenchRecord(text, algorithm, ns, ops, b, len(fams))


def applicable(fams: tuple[int, ...], algorithm: str, oracle_max: int) -> bool:
    if algorithm == "gcd":
        return len(fams) <= 3
    if algorithm == "oracle":
        return 2 * sum(fams) <= min(oracle_max, core.oracle_cap())
    return True


def run_bench(
    sizes: Iterable[int],
    trials: int = 5,
    n: int = 6,
    seed: int = 0,
    algorithms: Iterable[str] = ALGORITHMS,
    oracle_max: int = 1 << 20,
    workers: int = 1,
    extra: Iterable[tuple[int, ...]] = (),
) -> list[BenchRecord]:
    """Time every algorithm on ``trials`` random ``n``-family tuples per bit size."""
    rng = random.Random(seed)
    inputs = list(extra)
    for bits in sizes:
        inputs.extend(random_tuple(rng, n, bits) for _ in range(trials))
    jobs = [(fams, alg) for fams in inputs for alg in algorithms if applicable(fams, alg, oracle_max)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: time_one(*job), jobs))
    return [time_one(*job) for job in jobs]


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())


# -- kernels -----------------------------------------------------------------

KERNEL_HEADER = ("kernel", "backend", "points", "ns")


def _random_meander_arrays(rng: np.random.Generator, points: int):
    # a random Dyck word for the upper side, a rainbow below
    alpha = points // 2
    word = np.zeros(points, dtype=np.bool_)
    word[rng.permutation(points)[:alpha]] = True
    # cycle lemma: rotate so every prefix has at least as many openers
    steps = np.where(word, 1, -1)
    depth = np.cumsum(steps)
    shift = (int(np.argmin(depth)) + 1) % points
    word = np.roll(word, -shift)
    upper = _kernels.bracket_matching_numpy(word)
    lower = np.arange(points - 1, -1, -1, dtype=np.int64)
    return upper, lower


def kernel_bench(points_grid: Iterable[int], repeats: int = 3, seed: int = 0) -> list[tuple]:
    """Best-of-``repeats`` wall time of each kernel on both backends."""
    rng = np.random.default_rng(seed)
    rows = []
    backends = [("numpy", _kernels.meander_cycles_numpy, _kernels.count_cycles_numpy)]
    if _kernels.HAVE_NUMBA:
        backends.insert(0, ("numba", _kernels.meander_cycles_numba, _kernels.count_cycles_numba))
    for points in points_grid:
        upper, lower = _random_meander_arrays(rng, points)
        composed = upper[lower]
        for name, meander_fn, cycles_fn in backends:
            meander_fn(upper, lower)  # warm-up / JIT compile
            cycles_fn(composed)
            for kernel, fn, args in (("meander_cycles", meander_fn, (upper, lower)),
                                     ("count_cycles", cycles_fn, (composed,))):
                best = None
                for _ in range(repeats):
                    start = time.perf_counter_ns()
                    fn(*args)
                    ns = time.perf_counter_ns() - start
                    best = ns if best is None else min(best, ns)
                rows.append((kernel, name, points, best))
    return rows


def write_kernel_csv(rows: Iterable[tuple], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(KERNEL_HEADER)
    w.writerows(rows)
