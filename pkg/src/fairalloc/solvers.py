"""Exact and approximate MNW / leximin solvers.

Tie-breaking is uniform: among optimal public selections the one with the
smallest bitmask wins (see ``fairalloc.model``). Decision vectors and private
assignments break ties by their position in lexicographic enumeration order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .model import (
    NashScore,
    PrivateGoodsInstance,
    PublicDecisionsInstance,
    PublicGoodsInstance,
    ScaleError,
    UnsupportedError,
    assignments,
    decision_vectors,
    goods_of,
    mask_of,
    partition_of,
    utility_table,
)

OBJECTIVES = ("mnw", "leximin")
DEFAULT_MAX_TYPES = 3


@dataclass(frozen=True)
class SolveResult:
    allocation: object
    utilities: tuple[int, ...]
    objective: str
    value: Union[NashScore, tuple[int, ...]]
    method: str
    rank: int


def objective_value(objective: str, utils: Sequence[int]):
    if objective == "mnw":
        return NashScore.of(utils)
    if objective == "leximin":
        return tuple(sorted(int(u) for u in utils))
    raise ValueError(f"unknown objective {objective!r}")


def _check_objective(objective: str) -> None:
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")


def best_row(table: np.ndarray, objective: str) -> int:
    """Index of the first optimal row of a (candidates x agents) utility table."""
    _check_objective(objective)
    candidates = np.arange(len(table))
    if objective == "mnw":
        counts = (table > 0).sum(axis=1)
        candidates = candidates[counts == counts.max()]
        best, best_product = candidates[0], -1
        for i in candidates:
            p = math.prod(int(v) for v in table[i] if v > 0)
            if p > best_product:
                best, best_product = i, p
        return int(best)
    ordered = np.sort(table, axis=1)
    for col in range(ordered.shape[1]):
        column = ordered[candidates, col]
        candidates = candidates[column == column.max()]
        if len(candidates) == 1:
            break
    return int(candidates[0])


def _public_result(instance, x, objective, method) -> SolveResult:
    utils = tuple(sum(row[j] for j in x) for row in instance.valuations)
    return SolveResult(
        allocation=frozenset(x),
        utilities=utils,
        objective=objective,
        value=objective_value(objective, utils),
        method=method,
        rank=mask_of(x),
    )


def brute_force(instance: PublicGoodsInstance, objective: str = "mnw") -> SolveResult:
    masks, table = utility_table(instance)
    i = best_row(table, objective)
    return _public_result(instance, goods_of(masks[i]), objective, "bruteforce")


def brute_force_mnw(instance: PublicGoodsInstance) -> SolveResult:
    return brute_force(instance, "mnw")


def brute_force_leximin(instance: PublicGoodsInstance) -> SolveResult:
    return brute_force(instance, "leximin")


def brute_force_decisions(instance: PublicDecisionsInstance, objective: str = "mnw") -> SolveResult:
    outcomes = list(decision_vectors(instance))
    n = instance.n
    tables = [np.array(issue, dtype=object) for issue in instance.values]
    utils = np.zeros((len(outcomes), n), dtype=object)
    for r, x in enumerate(outcomes):
        utils[r] = sum(t[:, d] for t, d in zip(tables, x))
    i = best_row(utils, objective)
    u = tuple(int(v) for v in utils[i])
    return SolveResult(outcomes[i], u, objective, objective_value(objective, u), "bruteforce", i)


def brute_force_private(instance: PrivateGoodsInstance, objective: str = "mnw") -> SolveResult:
    owners = list(assignments(instance))
    V = np.array(instance.valuations, dtype=object)
    utils = np.zeros((len(owners), instance.n), dtype=object)
    for r, own in enumerate(owners):
        for j, i in enumerate(own):
            utils[r, i] += V[i, j]
    i = best_row(utils, objective)
    u = tuple(int(v) for v in utils[i])
    alloc = partition_of(owners[i], instance.n)
    return SolveResult(alloc, u, objective, objective_value(objective, u), "bruteforce", i)


# --------------------------------------------------------------------------
# constantly many agent types


def agent_types(instance: PublicGoodsInstance):
    """Distinct valuation rows in first-seen order, their multiplicities, and each agent's type."""
    rows: list[tuple[int, ...]] = []
    type_of = []
    for row in instance.valuations:
        if row not in rows:
            rows.append(row)
        type_of.append(rows.index(row))
    weights = [type_of.count(t) for t in range(len(rows))]
    return rows, weights, type_of


def _expand(u: Sequence[int], type_of: Sequence[int]) -> tuple[int, ...]:
    return tuple(u[t] for t in type_of)


@dataclass
class DpTable:
    """Sparse table keyed by (per-type utilities, last good) -> (min cost, predecessor).

    Good indices in keys are 1-based; key ``(zeros, 0)`` is the dummy base cell.
    """

    cells: dict
    zero: tuple[int, ...]

    def subset(self, key) -> frozenset:
        goods = []
        while key is not None and key[1] > 0:
            goods.append(key[1] - 1)
            key = self.cells[key][1]
        return frozenset(goods)


def build_dp_table(rows: Sequence[Sequence[int]], costs: Sequence[int], B: int) -> DpTable:
    t = len(rows)
    zero = (0,) * t
    base = (zero, 0)
    cells = {base: (0, None)}
    # cheapest cell per utility key over all goods processed so far
    cheapest = {zero: (0, base)}
    for j in range(1, len(costs) + 1):
        c = costs[j - 1]
        gain = tuple(row[j - 1] for row in rows)
        fresh: dict = {}
        for u, (b, key) in cheapest.items():
            nb = b + c
            if nb > B:
                continue
            nu = tuple(a + g for a, g in zip(u, gain))
            if nu not in fresh or nb < fresh[nu][0]:
                fresh[nu] = (nb, key)
        for nu, (nb, pred) in fresh.items():
            cells[(nu, j)] = (nb, pred)
            if nu not in cheapest or nb < cheapest[nu][0]:
                cheapest[nu] = (nb, (nu, j))
    return DpTable(cells, zero)


def dp_const_agent_types(
    instance: PublicGoodsInstance, objective: str = "mnw", max_types: int = DEFAULT_MAX_TYPES
) -> SolveResult:
    """Exact optimum by dynamic programming over per-type utility vectors.

    Works for budgets and cardinality (as unit costs). Only reachable cells
    are stored; the dense table size is used for the refusal message.
    """
    _check_objective(objective)
    rows, weights, type_of = agent_types(instance)
    t = len(rows)
    if t > max_types:
        cells = (instance.m * instance.V + 1) ** t * (instance.m + 1)
        raise ScaleError(
            "dp-agent-types",
            cells,
            max_types,
            f"{t} agent types exceeds bound {max_types} (dense table: {cells} cells)",
        )
    table = build_dp_table(rows, instance.costs, instance.budget)
    best_key, best_value, best_mask = None, None, None
    for key in table.cells:
        value = objective_value(objective, _expand(key[0], type_of))
        if best_value is None or value > best_value:
            best_key, best_value, best_mask = key, value, None
        elif value == best_value:
            if best_mask is None:
                best_mask = mask_of(table.subset(best_key))
            mask = mask_of(table.subset(key))
            if mask < best_mask:
                best_key, best_mask = key, mask
    x = table.subset(best_key)
    return _public_result(instance, x, objective, "dp-agent-types")


# --------------------------------------------------------------------------
# constantly many good types


def good_types(instance: PublicGoodsInstance):
    """Groups of good indices sharing a valuation column and cost, first-seen order."""
    groups: dict = {}
    for j in range(instance.m):
        key = (tuple(row[j] for row in instance.valuations), instance.costs[j])
        groups.setdefault(key, []).append(j)
    return list(groups.items())


def enum_const_good_types(
    instance: PublicGoodsInstance, objective: str = "mnw", max_types: int = DEFAULT_MAX_TYPES
) -> SolveResult:
    """Exact optimum by enumerating how many goods of each type are picked."""
    _check_objective(objective)
    groups = good_types(instance)
    t = len(groups)
    if t > max_types:
        cells = (instance.m + 1) ** t
        raise ScaleError(
            "enum-good-types",
            cells,
            max_types,
            f"{t} good types exceeds bound {max_types} (table: {cells} cells)",
        )
    B = instance.budget
    best = None
    for counts in itertools.product(*(range(len(members) + 1) for _, members in groups)):
        if sum(r * key[1] for r, (key, _) in zip(counts, groups)) > B:
            continue
        u = tuple(
            sum(r * key[0][i] for r, (key, _) in zip(counts, groups)) for i in range(instance.n)
        )
        x = frozenset(j for r, (_, members) in zip(counts, groups) for j in members[:r])
        cand = (objective_value(objective, u), -mask_of(x))
        if best is None or cand > best[0]:
            best = (cand, x)
    return _public_result(instance, best[1], objective, "enum-good-types")


# --------------------------------------------------------------------------
# greedy approximation


class AdditiveValuation:
    """Valuation oracle for additive agents; ``maximize`` is exact top-r."""

    def __init__(self, instance: PublicGoodsInstance):
        self.rows = instance.valuations

    def value(self, agent: int, goods) -> int:
        row = self.rows[agent]
        return sum(row[j] for j in goods)

    def maximize(self, goods, agent: int, r: int) -> frozenset:
        row = self.rows[agent]
        return frozenset(sorted(goods, key=lambda j: (-row[j], j))[:r])


def alg_greedy(instance: PublicGoodsInstance, oracle=None, objective: str = "mnw") -> SolveResult:
    """Union of every agent's best floor(k/n) goods, padded to exactly k.

    Padding adds the unselected good with the largest total marginal value,
    lowest index first.
    """
    _check_objective(objective)
    if not instance.is_cardinality:
        raise UnsupportedError("greedy needs a cardinality constraint")
    n, k = instance.n, instance.k
    if k < n:
        raise UnsupportedError(f"greedy needs k >= n (k={k}, n={n})")
    oracle = oracle or AdditiveValuation(instance)
    goods = range(instance.m)
    x: set[int] = set()
    for i in range(n):
        x |= oracle.maximize(goods, i, k // n)
    while len(x) < k:
        def gain(g):
            return sum(oracle.value(i, x | {g}) - oracle.value(i, x) for i in range(n))

        x.add(max((g for g in goods if g not in x), key=lambda g: (gain(g), -g)))
    return _public_result(instance, frozenset(x), objective, "greedy")


METHODS = {
    "bruteforce": brute_force,
    "dp-agent-types": dp_const_agent_types,
    "enum-good-types": enum_const_good_types,
    "greedy": lambda inst, objective: alg_greedy(inst, objective=objective),
}


def solve(instance, objective: str = "mnw", method: str = "bruteforce") -> SolveResult:
    if isinstance(instance, PublicDecisionsInstance):
        if method != "bruteforce":
            raise UnsupportedError(f"method {method} only applies to public goods")
        return brute_force_decisions(instance, objective)
    if isinstance(instance, PrivateGoodsInstance):
        if method != "bruteforce":
            raise UnsupportedError(f"method {method} only applies to public goods")
        return brute_force_private(instance, objective)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return METHODS[method](instance, objective)
