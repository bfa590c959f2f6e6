"""Reference implementations used as test oracles.

Written independently of the package: plain lists, 1-based points, no numpy.
"""
import itertools
import math

# worked example with two curves on ten points
TWO_CURVE_UPPER = [(1, 10), (2, 5), (3, 4), (6, 9), (7, 8)]
TWO_CURVE_LOWER = [(1, 6), (2, 3), (4, 5), (7, 10), (8, 9)]

# connected example on fourteen points with a known shooting table
CONNECTED_UPPER = [(1, 12), (2, 5), (3, 4), (6, 11), (7, 10), (8, 9), (13, 14)]
CONNECTED_LOWER = [(1, 14), (2, 3), (4, 13), (5, 6), (7, 12), (8, 11), (9, 10)]
CONNECTED_SHOOTING = (1, 10, 11, 12, 9, 8, 3, 6, 5, 4, 7, 2, 13, 14)


def partner_list(pairs, points):
    out = [0] * (points + 1)
    for a, b in pairs:
        out[a], out[b] = b, a
    return out


def trace_curves(upper, lower):
    """Count closed curves by walking: leave every point through its upper arc,
    come back through a lower arc.  ``upper``/``lower`` are 1-based partner lists
    with a dummy slot 0."""
    n = len(upper) - 1
    seen = [False] * (n + 1)
    curves = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        curves += 1
        k = start
        while True:
            seen[k] = True
            k = upper[k]
            seen[k] = True
            k = lower[k]
            if k == start:
                break
    return curves


def birainbow_partners(fams):
    alpha = sum(fams)
    n = 2 * alpha
    upper = [0] * (n + 1)
    left = 0
    for a in fams:
        lo, hi = 2 * left + 1, 2 * (left + a)
        for i in range(a):
            upper[lo + i], upper[hi - i] = hi - i, lo + i
        left += a
    lower = [0] * (n + 1)
    for k in range(1, n + 1):
        lower[k] = n + 1 - k
    return upper, lower


def z_reference(fams):
    if not fams:
        return 0
    return trace_curves(*birainbow_partners(fams))


def euclid(a, b):
    seq = []
    a, b = max(a, b), min(a, b)
    while b:
        seq.append((a, b, a % b))
        a, b = b, a % b
    return seq


def dyck_words(alpha):
    """All balanced words of ``alpha`` bracket pairs (True = opening)."""
    def rec(opened, closed, word):
        if opened == closed == alpha:
            yield tuple(word)
            return
        if opened < alpha:
            word.append(True)
            yield from rec(opened + 1, closed, word)
            word.pop()
        if closed < opened:
            word.append(False)
            yield from rec(opened, closed + 1, word)
            word.pop()
    yield from rec(0, 0, [])


def word_partners(word):
    n = len(word)
    out = [0] * (n + 1)
    stack = []
    for i, opening in enumerate(word, start=1):
        if opening:
            stack.append(i)
        else:
            j = stack.pop()
            out[i], out[j] = j, i
    return out


def word_blocks(word):
    blocks = []
    o = c = 0
    for opening in word:
        if opening:
            if c:
                blocks.append((o, c))
                o = c = 0
            o += 1
        else:
            c += 1
    if o or c:
        blocks.append((o, c))
    return tuple(blocks)


def compositions(total, max_parts):
    for parts in range(1, min(total, max_parts) + 1):
        for cuts in itertools.combinations(range(1, total), parts - 1):
            edges = (0, *cuts, total)
            yield tuple(edges[i + 1] - edges[i] for i in range(parts))


def all_tuples(max_alpha=14, max_n=6):
    for a in range(1, max_alpha + 1):
        yield from compositions(a, max_n)


def fib(k):
    a, b = 1, 1
    for _ in range(k - 1):
        a, b = b, a + b
    return a


def gcd3(a, b, c):
    return math.gcd(a + b, b + c)
