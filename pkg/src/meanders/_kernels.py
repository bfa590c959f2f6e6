"""Hot loops over point arrays.

Each kernel exists twice: a numba ``@njit`` loop and a pure-numpy path.  The
module-level names (``count_cycles`` ...) dispatch to numba when it imports
and ``MEANDER_DISABLE_NUMBA`` is unset (or ``0``); both implementations stay
importable under explicit names so tests and the benchmark can compare them.

All arrays here are 0-based ``int64`` permutations / involutions.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_disabled = os.environ.get("MEANDER_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _disabled


def _njit(func):
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)


# -- cycle counting ----------------------------------------------------------

def _count_cycles_loop(perm):
    n = perm.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
    return cycles


count_cycles_numba = _njit(_count_cycles_loop)


def count_cycles_numpy(perm):
    """Cycle count by pointer doubling: O(N log N) work, no Python-level loop over N."""
    perm = np.asarray(perm, dtype=np.int64)
    n = perm.shape[0]
    if n == 0:
        return 0
    index = np.arange(n, dtype=np.int64)
    label = index.copy()
    jump = perm.copy()
    span = 1
    while span < n:
        label = np.minimum(label, label[jump])
        jump = jump[jump]
        span *= 2
    # one more round so windows of length >= n are covered
    label = np.minimum(label, label[jump])
    return int(np.count_nonzero(label == index))


# -- meander permutation -----------------------------------------------------

def _meander_cycles_loop(upper, lower):
    # point k (0-based) is odd in 1-based numbering iff k is even
    n = upper.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            if k % 2 == 0:
                k = upper[k]
            else:
                k = lower[k]
    return cycles


meander_cycles_numba = _njit(_meander_cycles_loop)


def combined_permutation(upper, lower):
    """Upper partner on 1-based odd points, lower partner on even ones (0-based arrays)."""
    upper = np.asarray(upper, dtype=np.int64)
    lower = np.asarray(lower, dtype=np.int64)
    out = lower.copy()
    out[0::2] = upper[0::2]
    return out


def meander_cycles_numpy(upper, lower):
    return count_cycles_numpy(combined_permutation(upper, lower))


# -- non-crossing check ------------------------------------------------------

def _interlace_witness_loop(pairing):
    n = pairing.shape[0]
    stack = np.empty(n, dtype=np.int64)
    top = 0
    for p in range(n):
        q = pairing[p]
        if q > p:
            stack[top] = p
            top += 1
        else:
            opener = stack[top - 1]
            if opener != q:
                return opener, q
            top -= 1
    return -1, -1


interlace_witness_numba = _njit(_interlace_witness_loop)


def bracket_matching_numpy(opens):
    """Matching-bracket partner for a balanced boolean open/close sequence."""
    opens = np.asarray(opens, dtype=np.bool_)
    n = opens.shape[0]
    steps = np.where(opens, 1, -1)
    depth = np.cumsum(steps)
    # an opener reaching depth d and the closer returning to d-1 share key d
    key = np.where(opens, depth, depth + 1)
    order = np.lexsort((np.arange(n), key))
    match = np.empty(n, dtype=np.int64)
    first = order[0::2]
    second = order[1::2]
    match[first] = second
    match[second] = first
    return match


def interlace_witness_numpy(pairing):
    pairing = np.asarray(pairing, dtype=np.int64)
    if pairing.shape[0] == 0:
        return -1, -1
    opens = pairing > np.arange(pairing.shape[0])
    depth = np.cumsum(np.where(opens, 1, -1))
    if depth.min() >= 0 and depth[-1] == 0:
        if np.array_equal(bracket_matching_numpy(opens), pairing):
            return -1, -1
    # slow path only to name the offending pair
    return _interlace_witness_loop(pairing)


if USE_NUMBA:
    count_cycles = count_cycles_numba
    meander_cycles = meander_cycles_numba
    interlace_witness = interlace_witness_numba
else:
    count_cycles = count_cycles_numpy
    meander_cycles = meander_cycles_numpy
    interlace_witness = interlace_witness_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
