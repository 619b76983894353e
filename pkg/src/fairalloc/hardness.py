"""Gadget generators: classical NP-hard sources encoded as public goods instances.

Each generator returns a ``GadgetInstance`` whose ``decide`` method turns the
optimal utility vector (under ``objective``) into the yes/no answer of the
source problem, so callers need no per-gadget logic. Thresholds on Nash
welfare are stored un-rooted, as products.

Element, set, variable and good indices are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .model import PublicGoodsInstance


@dataclass(frozen=True)
class GadgetInstance:
    kind: str
    instance: PublicGoodsInstance
    objective: str  # "mnw" | "leximin" | "maxmin"
    threshold: int
    yes_iff: str
    params: dict = field(default_factory=dict)

    @property
    def solver_objective(self) -> str:
        # a leximin optimum also maximizes the minimum
        return "mnw" if self.objective == "mnw" else "leximin"

    def decide(self, utils: Sequence[int]) -> bool:
        """Source answer read off an optimal utility vector."""
        if self.kind == "setcover":
            return sum(1 for u in utils if u > 0) >= self.threshold
        if self.objective == "mnw":
            return math.prod(utils) >= self.threshold
        if self.objective == "maxmin":
            return min(utils) >= self.threshold
        # msat: clause agents first, dummy agent last
        return all(u >= self.threshold for u in utils[:-1])


def from_set_cover(universe_size: int, family: Sequence[Sequence[int]], k: int) -> GadgetInstance:
    """One agent per element, one good per set; every agent positive iff a k-cover exists."""
    n = universe_size
    if not 0 <= k < n:
        raise ValueError(f"set cover gadget needs 0 <= k < n (k={k}, n={n})")
    for s in family:
        if not s or any(not 0 <= e < n for e in s):
            raise ValueError(f"malformed set {list(s)!r}")
    rows = [[1 if i in s else 0 for s in family] for i in range(n)]
    covered = all(any(r) for r in rows)
    # picking up to k of fewer than k sets is picking them all
    inst = PublicGoodsInstance.with_k(rows, min(k, len(family)), strict=covered and bool(family))
    return GadgetInstance(
        kind="setcover",
        instance=inst,
        objective="mnw",
        threshold=n,
        yes_iff=f"MNW gives all {n} agents positive utility iff a set cover of size {k} exists",
        params={"universe_size": n, "family": [sorted(s) for s in family], "k": k},
    )


def from_ersp(n: int, family: Sequence[Sequence[int]], d: int, r: int) -> GadgetInstance:
    """Exact regular set packing: goods are the sets plus n universally liked dummies, k = r + n."""
    m = len(family)
    for s in family:
        if len(set(s)) != d or len(s) != d or any(not 0 <= e < n for e in s):
            raise ValueError(f"set {list(s)!r} is not a {d}-subset of the {n} elements")
    if d * r > n:
        raise ValueError(f"d*r={d * r} exceeds n={n}")
    if not 0 <= r <= m:
        raise ValueError(f"r={r} outside [0, {m}]")
    rows = [[1 if i in s else 0 for s in family] + [1] * n for i in range(n)]
    threshold = (n + 1) ** (d * r) * n ** (n - d * r)
    return GadgetInstance(
        kind="ersp",
        instance=PublicGoodsInstance.with_k(rows, r + n),
        objective="mnw",
        threshold=threshold,
        yes_iff=f"max Nash product >= {threshold} iff {r} pairwise disjoint sets exist",
        params={"n": n, "family": [sorted(s) for s in family], "d": d, "r": r},
    )


def eqsp_scale(a: Sequence[int]) -> int:
    """Smallest s > 0 making s*sum(a) even and divisible by len(a)/2."""
    m, R = len(a), sum(a)
    s = 1
    while (s * R) % 2 or (2 * s * R) % m:
        s += 1
    return s


def from_eqsp(a: Sequence[int], objective: str = "mnw") -> GadgetInstance:
    """Two agents, k = m/2; the product (or the minimum) hits its cap iff an
    equal-sized equal-sum partition exists.

    Inputs are multiplied by ``eqsp_scale(a)`` so the shift 2R/m is integral;
    scaling does not change the answer.
    """
    if objective not in ("mnw", "maxmin"):
        raise ValueError(f"unknown objective {objective!r}")
    m = len(a)
    if m == 0 or m % 2 or any(x < 0 for x in a):
        raise ValueError("need an even number of nonnegative integers")
    s = eqsp_scale(a)
    b = [s * x for x in a]
    R = sum(b)
    C = 2 * R // m
    rows = [[x + R for x in b], [C + R - x for x in b]]
    half = (R + R * m) // 2
    threshold = half * half if objective == "mnw" else half
    return GadgetInstance(
        kind="eqsp",
        instance=PublicGoodsInstance.with_k(rows, m // 2, strict=R > 0),
        objective=objective,
        threshold=threshold,
        yes_iff=f"{'Nash product' if objective == 'mnw' else 'minimum utility'} reaches "
        f"{threshold} iff an equal-sized equal-sum partition exists",
        params={"a": list(a), "scale": s, "R": R, "C": C, "maxmin_threshold": half},
    )


def from_monotone_sat(n: int, clauses: Sequence[Sequence[int]], c: int) -> GadgetInstance:
    """m clause agents plus a dummy agent; n variable goods plus m-c+1 dummy goods; k = m+1."""
    m = len(clauses)
    if not 0 <= c < m:
        raise ValueError(f"need 0 <= c < m (c={c}, m={m})")
    if c > n:
        raise ValueError(f"c={c} exceeds the {n} variables")
    for cl in clauses:
        if not cl or any(not 0 <= x < n for x in cl):
            raise ValueError(f"malformed clause {list(cl)!r}")
    dummies = m - c + 1
    rows = [[1 if j in cl else 0 for j in range(n)] + [1] * dummies for cl in clauses]
    rows.append([0] * n + [1] * dummies)
    need = m - c + 2
    return GadgetInstance(
        kind="msat",
        instance=PublicGoodsInstance.with_k(rows, m + 1),
        objective="leximin",
        threshold=need,
        yes_iff=f"leximin gives every clause agent >= {need} (dummy agent {dummies}) "
        f"iff a satisfying assignment with at most {c} true variables exists",
        params={"n": n, "clauses": [sorted(cl) for cl in clauses], "c": c},
    )


def max_product_bounded_sum(n: int, lower: int, remainder: int) -> int:
    """Largest product of n integers >= lower summing to lower*n + remainder."""
    if not 0 <= remainder < n:
        raise ValueError(f"need 0 <= remainder < n (remainder={remainder}, n={n})")
    if lower < 1:
        raise ValueError("lower bound must be at least 1")
    return (lower + 1) ** remainder * lower ** (n - remainder)
