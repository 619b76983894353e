"""Independent brute-force oracles.

These only use raw lists and itertools, never the library's solvers or
enumeration, so they can check them.
"""

import itertools
import math
import random


def subsets_upto(m, k):
    for size in range(k + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(m), size))


def subsets_budget(costs, B):
    m = len(costs)
    for size in range(m + 1):
        for c in itertools.combinations(range(m), size):
            if sum(costs[j] for j in c) <= B:
                yield frozenset(c)


def utils(rows, S):
    return tuple(sum(r[j] for j in S) for r in rows)


def mnw_key(u):
    pos = [x for x in u if x > 0]
    return (len(pos), math.prod(pos))


def leximin_key(u):
    return tuple(sorted(u))


def best_value(rows, candidates, key):
    return max(key(utils(rows, S)) for S in candidates)


def public_opt(rows, k=None, costs=None, B=None, objective="mnw"):
    key = mnw_key if objective == "mnw" else leximin_key
    cands = subsets_upto(len(rows[0]), k) if costs is None else subsets_budget(costs, B)
    return best_value(rows, cands, key)


def private_opt(rows, objective="mnw"):
    n, m = len(rows), len(rows[0])
    key = mnw_key if objective == "mnw" else leximin_key
    best = None
    for owners in itertools.product(range(n), repeat=m):
        u = [0] * n
        for j, i in enumerate(owners):
            u[i] += rows[i][j]
        v = key(u)
        best = v if best is None or v > best else best
    return best


def has_set_cover(n, family, k):
    universe = set(range(n))
    return any(
        set().union(*c) >= universe if c else not universe
        for size in range(k + 1)
        for c in itertools.combinations([set(s) for s in family], size)
    )


def has_packing(family, r):
    return any(
        all(not (set(a) & set(b)) for a, b in itertools.combinations(c, 2))
        for c in itertools.combinations(family, r)
    )


def has_equal_partition(a):
    m, total = len(a), sum(a)
    if m % 2 or total % 2:
        return False
    return any(2 * sum(a[i] for i in c) == total for c in itertools.combinations(range(m), m // 2))


def has_small_hitting_assignment(n, clauses, c):
    return any(
        all(set(cl) & set(on) for cl in clauses)
        for size in range(c + 1)
        for on in itertools.combinations(range(n), size)
    )


def compositions_max_product(n, lower, remainder):
    total = lower * n + remainder
    best = 0

    def walk(left, parts, acc):
        nonlocal best
        if parts == 1:
            if left >= lower:
                best = max(best, acc * left)
            return
        for a in range(lower, left - lower * (parts - 1) + 1):
            walk(left - a, parts - 1, acc * a)

    walk(total, n, 1)
    return best


def random_rows(rng: random.Random, n, m, V):
    rows = [[rng.randint(0, V) for _ in range(m)] for _ in range(n)]
    for r in rows:
        if not any(r):
            r[rng.randrange(m)] = rng.randint(1, V)
    return rows
