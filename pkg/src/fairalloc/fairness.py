"""Proportional and round-robin shares, Prop1/alpha checks and Pareto audits.

All shares are exact (``Fraction`` for the proportional share, ``int`` for the
round-robin share). Share computations are only defined for cardinality
constraints; budget instances raise ``UnsupportedError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .model import (
    PublicGoodsInstance,
    UnsupportedError,
    goods_of,
    top_values,
    utilities,
    utility_table,
)


def _require_cardinality(instance: PublicGoodsInstance) -> None:
    if not instance.is_cardinality:
        raise UnsupportedError("fairness shares are only defined under a cardinality constraint")


def prop_share(instance: PublicGoodsInstance, agent: int) -> Fraction:
    _require_cardinality(instance)
    return Fraction(top_values(instance.valuations[agent], instance.k), instance.n)


def rrs_share(instance: PublicGoodsInstance, agent: int) -> int:
    _require_cardinality(instance)
    return top_values(instance.valuations[agent], instance.k // instance.n)


def achieved_ratio(value: int, share) -> Optional[Fraction]:
    """value/share, or None when the share is zero."""
    if share == 0:
        return None
    return Fraction(value) / Fraction(share)


def check_alpha_prop(instance: PublicGoodsInstance, alloc, alpha) -> bool:
    _require_cardinality(instance)
    alpha = Fraction(alpha)
    u = utilities(instance, alloc)
    return all(u[i] >= alpha * prop_share(instance, i) for i in range(instance.n))


def check_alpha_rrs(instance: PublicGoodsInstance, alloc, alpha) -> bool:
    # RRS_i = 0 passes for every alpha
    _require_cardinality(instance)
    alpha = Fraction(alpha)
    u = utilities(instance, alloc)
    return all(u[i] >= alpha * rrs_share(instance, i) for i in range(instance.n))


def best_swap(instance: PublicGoodsInstance, x: frozenset, agent: int):
    """The single change that helps ``agent`` most, as ``(removed, added, gain)``.

    Adds the agent's favourite unselected good (lowest index among ties). If
    the selection still has room it is a pure addition and ``removed`` is None;
    otherwise the agent's least-valued selected good is dropped (highest index
    among ties). Returns None when every good is already selected.
    """
    row = instance.valuations[agent]
    outside = [j for j in range(instance.m) if j not in x]
    if not outside:
        return None
    added = max(outside, key=lambda j: (row[j], -j))
    if len(x) < instance.k:
        return None, added, row[added]
    if not x:
        return None
    removed = min(x, key=lambda j: (row[j], -j))
    return removed, added, row[added] - row[removed]


@dataclass(frozen=True)
class Prop1Result:
    satisfied: bool
    # agent -> (removed good or None, added good); only agents below the share
    witnesses: dict
    failing: tuple[int, ...] = ()

    def __bool__(self):
        return self.satisfied


def check_prop1(instance: PublicGoodsInstance, alloc, alpha=1) -> Prop1Result:
    _require_cardinality(instance)
    alpha = Fraction(alpha)
    x = instance.check_allocation(alloc)
    u = utilities(instance, x)
    witnesses = {}
    failing = []
    for i in range(instance.n):
        target = alpha * prop_share(instance, i)
        if u[i] >= target:
            continue
        swap = best_swap(instance, x, i)
        if swap is not None and u[i] + swap[2] >= target:
            witnesses[i] = swap[:2]
        else:
            failing.append(i)
    return Prop1Result(not failing, witnesses, tuple(failing))


def apply_swap(x: frozenset, swap) -> frozenset:
    removed, added = swap
    y = set(x)
    if removed is not None:
        y.discard(removed)
    y.add(added)
    return frozenset(y)


@dataclass(frozen=True)
class ParetoResult:
    optimal: bool
    witness: Optional[frozenset] = None

    def __bool__(self):
        return self.optimal


def check_pareto_optimal(instance: PublicGoodsInstance, alloc) -> ParetoResult:
    """Brute-force Pareto check; the witness is the first dominating selection."""
    u = np.array(utilities(instance, alloc))
    masks, table = utility_table(instance)
    dominating = (table >= u).all(axis=1) & (table > u).any(axis=1)
    hits = np.flatnonzero(dominating)
    if len(hits) == 0:
        return ParetoResult(True)
    return ParetoResult(False, goods_of(masks[hits[0]]))


@dataclass(frozen=True)
class AgentFairness:
    utility: int
    prop_share: Fraction
    rrs_share: int
    alpha_prop: Optional[Fraction]
    alpha_rrs: Optional[Fraction]
    prop1: bool
    prop1_witness: Optional[tuple]


@dataclass(frozen=True)
class FairnessReport:
    agents: tuple[AgentFairness, ...]
    prop1: bool
    pareto_optimal: Optional[bool]
    pareto_witness: Optional[frozenset] = None

    @property
    def alpha_prop(self) -> Optional[Fraction]:
        vals = [a.alpha_prop for a in self.agents if a.alpha_prop is not None]
        return min(vals) if vals else None

    @property
    def alpha_rrs(self) -> Optional[Fraction]:
        vals = [a.alpha_rrs for a in self.agents if a.alpha_rrs is not None]
        return min(vals) if vals else None


def audit(instance: PublicGoodsInstance, alloc, alpha=1, pareto: bool = True) -> FairnessReport:
    """Per-agent shares and ratios plus global Prop1 and PO verdicts.

    With ``pareto=False`` the brute-force PO check is skipped and reported as None.
    """
    x = instance.check_allocation(alloc)
    u = utilities(instance, x)
    p1 = check_prop1(instance, x, alpha)
    rows = []
    for i in range(instance.n):
        ps, rs = prop_share(instance, i), rrs_share(instance, i)
        rows.append(
            AgentFairness(
                utility=u[i],
                prop_share=ps,
                rrs_share=rs,
                alpha_prop=achieved_ratio(u[i], ps),
                alpha_rrs=achieved_ratio(u[i], rs),
                prop1=i not in p1.failing,
                prop1_witness=p1.witnesses.get(i),
            )
        )
    po = check_pareto_optimal(instance, x) if pareto else None
    return FairnessReport(
        agents=tuple(rows),
        prop1=p1.satisfied,
        pareto_optimal=None if po is None else po.optimal,
        pareto_witness=None if po is None else po.witness,
    )
