"""Instances, allocations and exact objective comparisons.

Three sibling models share this module:

* ``PublicGoodsInstance``: pick a set of goods under a cardinality or budget
  constraint; every agent enjoys every selected good.
* ``PrivateGoodsInstance``: partition the goods among the agents.
* ``PublicDecisionsInstance``: fix one alternative per issue.

Allocations are plain Python values, with indices 0-based throughout:

* public selection -> ``frozenset`` of good indices
* private partition -> ``tuple`` of ``n`` frozensets
* decision vector -> ``tuple`` of alternative indices, one per issue

Public selections are enumerated in increasing bitmask order where good ``j``
is bit ``j`` (good 0 is the least significant bit). The bitmask is the
tie-break rank used by every solver.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

import numpy as np

DEFAULT_MAX_ENUM = 2**22


class FairAllocError(Exception):
    """Base class for library errors."""


class InfeasibleAllocationError(FairAllocError, ValueError):
    pass


class UnsupportedError(FairAllocError, ValueError):
    """Operation is undefined for this constraint type or parameter regime."""


class ScaleError(FairAllocError):
    """Brute-force work would exceed the configured state cap."""

    def __init__(self, what: str, estimate: int, cap: int, message: str | None = None):
        self.estimate = estimate
        self.cap = cap
        super().__init__(message or f"{what}: {estimate} states exceeds cap {cap}")


def max_enum() -> int:
    """State cap for brute force, read from FAIRALLOC_MAX_ENUM."""
    raw = os.environ.get("FAIRALLOC_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


def check_scale(what: str, estimate: int) -> None:
    cap = max_enum()
    if estimate > cap:
        raise ScaleError(what, estimate, cap)


# --------------------------------------------------------------------------
# constraints and instances


@dataclass(frozen=True)
class Cardinality:
    k: int


@dataclass(frozen=True)
class Budget:
    B: int
    costs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(int(c) for c in self.costs))


Constraint = Union[Cardinality, Budget]


def _as_matrix(rows) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        out.append(tuple(int(v) for v in row))
    return tuple(out)


def _check_rows(valuations, width: int, strict: bool, what: str = "agent") -> None:
    for i, row in enumerate(valuations):
        if len(row) != width:
            raise ValueError(f"{what} {i + 1}: expected {width} values, got {len(row)}")
        if any(v < 0 for v in row):
            raise ValueError(f"{what} {i + 1}: negative value")
        if strict and not any(v > 0 for v in row):
            raise ValueError(f"{what} {i + 1} values no good")


@dataclass(frozen=True)
class PublicGoodsInstance:
    """Additive public goods with a cardinality or budget constraint.

    ``strict=False`` skips the positive-row invariant; hardness gadgets use it
    when the source problem can leave an agent with nothing to like.
    """

    valuations: tuple[tuple[int, ...], ...]
    constraint: Constraint
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "valuations", _as_matrix(self.valuations))
        if not self.valuations:
            raise ValueError("instance needs at least one agent")
        m = len(self.valuations[0])
        if self.strict and m == 0:
            raise ValueError("instance needs at least one good")
        _check_rows(self.valuations, m, self.strict)
        c = self.constraint
        if isinstance(c, Cardinality):
            if not 0 <= c.k <= m:
                raise ValueError(f"k={c.k} outside [0, {m}]")
        elif isinstance(c, Budget):
            if c.B < 0:
                raise ValueError("budget must be nonnegative")
            if len(c.costs) != m:
                raise ValueError(f"{len(c.costs)} costs for {m} goods")
            if any(x <= 0 for x in c.costs):
                raise ValueError("costs must be positive")
        else:
            raise TypeError(f"unknown constraint {c!r}")

    @classmethod
    def with_k(cls, valuations, k: int, strict: bool = True) -> "PublicGoodsInstance":
        return cls(valuations, Cardinality(k), strict=strict)

    @classmethod
    def with_budget(cls, valuations, B: int, costs, strict: bool = True) -> "PublicGoodsInstance":
        return cls(valuations, Budget(B, tuple(costs)), strict=strict)

    @property
    def n(self) -> int:
        return len(self.valuations)

    @property
    def m(self) -> int:
        return len(self.valuations[0])

    @property
    def V(self) -> int:
        return max(max(row, default=0) for row in self.valuations)

    @property
    def is_cardinality(self) -> bool:
        return isinstance(self.constraint, Cardinality)

    @property
    def k(self) -> int:
        if not self.is_cardinality:
            raise UnsupportedError("k is only defined for cardinality constraints")
        return self.constraint.k

    @property
    def costs(self) -> tuple[int, ...]:
        if self.is_cardinality:
            return (1,) * self.m
        return self.constraint.costs

    @property
    def budget(self) -> int:
        return self.constraint.k if self.is_cardinality else self.constraint.B

    def as_budget(self) -> "PublicGoodsInstance":
        """Same instance with cardinality rewritten as unit-cost budget."""
        if not self.is_cardinality:
            return self
        return PublicGoodsInstance(self.valuations, Budget(self.k, self.costs), strict=self.strict)

    def cost(self, goods) -> int:
        c = self.costs
        return sum(c[j] for j in goods)

    def is_feasible(self, x) -> bool:
        try:
            self.check_allocation(x)
        except InfeasibleAllocationError:
            return False
        return True

    def check_allocation(self, x) -> frozenset:
        if not isinstance(x, (set, frozenset)):
            raise InfeasibleAllocationError(f"expected a set of goods, got {type(x).__name__}")
        for j in x:
            if not (isinstance(j, (int, np.integer)) and 0 <= j < self.m):
                raise InfeasibleAllocationError(f"good index {j!r} out of range")
        if self.is_cardinality:
            if len(x) > self.k:
                raise InfeasibleAllocationError(f"{len(x)} goods selected, k={self.k}")
        elif self.cost(x) > self.constraint.B:
            raise InfeasibleAllocationError(f"cost {self.cost(x)} exceeds budget {self.constraint.B}")
        return frozenset(int(j) for j in x)


@dataclass(frozen=True)
class PrivateGoodsInstance:
    valuations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "valuations", _as_matrix(self.valuations))
        if not self.valuations or not self.valuations[0]:
            raise ValueError("instance needs at least one agent and one good")
        _check_rows(self.valuations, len(self.valuations[0]), strict=True)

    @property
    def n(self) -> int:
        return len(self.valuations)

    @property
    def m(self) -> int:
        return len(self.valuations[0])

    @property
    def V(self) -> int:
        return max(max(row) for row in self.valuations)

    def check_allocation(self, x) -> tuple[frozenset, ...]:
        if not isinstance(x, (tuple, list)) or len(x) != self.n:
            raise InfeasibleAllocationError(f"expected {self.n} bundles")
        bundles = tuple(frozenset(b) for b in x)
        seen: set[int] = set()
        for b in bundles:
            if seen & b:
                raise InfeasibleAllocationError("bundles overlap")
            seen |= b
        if seen != set(range(self.m)):
            raise InfeasibleAllocationError("bundles do not cover every good")
        return bundles


@dataclass(frozen=True)
class PublicDecisionsInstance:
    """``values[j][i][l]`` is agent i's value for alternative l of issue j."""

    values: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        issues = tuple(_as_matrix(issue) for issue in self.values)
        object.__setattr__(self, "values", issues)
        if not issues:
            raise ValueError("instance needs at least one issue")
        n = len(issues[0])
        if n == 0:
            raise ValueError("instance needs at least one agent")
        for j, issue in enumerate(issues):
            if len(issue) != n:
                raise ValueError(f"issue {j + 1}: expected {n} agents, got {len(issue)}")
            width = len(issue[0])
            if width < 2:
                raise ValueError(f"issue {j + 1}: needs at least two alternatives")
            _check_rows(issue, width, strict=False)

    @property
    def n(self) -> int:
        return len(self.values[0])

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def alternatives(self) -> tuple[int, ...]:
        return tuple(len(issue[0]) for issue in self.values)

    def check_allocation(self, x) -> tuple[int, ...]:
        if not isinstance(x, (tuple, list)) or len(x) != self.m:
            raise InfeasibleAllocationError(f"expected {self.m} decisions")
        for j, (d, t) in enumerate(zip(x, self.alternatives)):
            if not 0 <= d < t:
                raise InfeasibleAllocationError(f"issue {j + 1}: alternative {d} out of range")
        return tuple(int(d) for d in x)


Instance = Union[PublicGoodsInstance, PrivateGoodsInstance, PublicDecisionsInstance]


# --------------------------------------------------------------------------
# utilities and objectives


def utility(instance: Instance, alloc, agent: int) -> int:
    if not 0 <= agent < instance.n:
        raise IndexError(f"agent {agent} out of range")
    return utilities(instance, alloc)[agent]


def utilities(instance: Instance, alloc) -> tuple[int, ...]:
    """Per-agent additive utilities of a feasible allocation."""
    x = instance.check_allocation(alloc)
    if isinstance(instance, PublicGoodsInstance):
        return tuple(sum(row[j] for j in x) for row in instance.valuations)
    if isinstance(instance, PrivateGoodsInstance):
        return tuple(sum(row[j] for j in b) for row, b in zip(instance.valuations, x))
    return tuple(
        sum(issue[i][d] for issue, d in zip(instance.values, x)) for i in range(instance.n)
    )


@dataclass(frozen=True, order=True)
class NashScore:
    """Nash product with the zero-welfare tie-break.

    Compares first by how many agents get positive utility, then by the exact
    product over those agents. With everyone positive this is the plain Nash
    product order; no roots are taken.
    """

    positive_count: int
    product: int

    @classmethod
    def of(cls, utils: Sequence[int]) -> "NashScore":
        positive = [int(u) for u in utils if u > 0]
        return cls(len(positive), math.prod(positive))


def nash_score(instance: Instance, alloc) -> NashScore:
    return NashScore.of(utilities(instance, alloc))


@dataclass(frozen=True)
class UtilityVector:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def __len__(self):
        return len(self.values)


def leximin_compare(u, w) -> int:
    """-1, 0 or 1 as ``u`` is leximin-worse than, equal to, or better than ``w``."""
    a = u.sorted if isinstance(u, UtilityVector) else tuple(sorted(u))
    b = w.sorted if isinstance(w, UtilityVector) else tuple(sorted(w))
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return (a > b) - (a < b)


# --------------------------------------------------------------------------
# enumeration


def mask_of(goods) -> int:
    return sum(1 << j for j in goods)


def goods_of(mask: int) -> frozenset:
    return frozenset(j for j in range(mask.bit_length()) if mask >> j & 1)


def count_feasible_upper(instance: PublicGoodsInstance) -> int:
    if instance.is_cardinality:
        return sum(math.comb(instance.m, i) for i in range(instance.k + 1))
    return 2**instance.m


def feasible_masks(instance: PublicGoodsInstance) -> list[int]:
    """All feasible selections as bitmasks, ascending."""
    check_scale("enumerate feasible selections", count_feasible_upper(instance))
    costs = instance.costs
    cap = instance.budget
    masks: list[int] = []

    def walk(j: int, mask: int, spent: int) -> None:
        if j == instance.m:
            masks.append(mask)
            return
        walk(j + 1, mask, spent)
        if spent + costs[j] <= cap:
            walk(j + 1, mask | 1 << j, spent + costs[j])

    walk(0, 0, 0)
    masks.sort()
    return masks


def enumerate_feasible(instance: PublicGoodsInstance) -> Iterator[frozenset]:
    for mask in feasible_masks(instance):
        yield goods_of(mask)


def _value_dtype(instance) -> type:
    bound = max(1, instance.m) * max(1, instance.V)
    return np.int64 if bound < 2**62 else object


def utility_table(instance: PublicGoodsInstance) -> tuple[list[int], np.ndarray]:
    """Feasible masks and the matching (selections x agents) utility matrix."""
    masks = feasible_masks(instance)
    dtype = _value_dtype(instance)
    V = np.array(instance.valuations, dtype=dtype).reshape(instance.n, instance.m)
    mdtype = np.int64 if instance.m < 63 else object
    bits = (np.array(masks, dtype=mdtype)[:, None] >> np.arange(instance.m)) & 1
    table = bits.astype(dtype) @ V.T
    return masks, np.asarray(table).reshape(len(masks), instance.n)


def decision_vectors(instance: PublicDecisionsInstance) -> Iterator[tuple[int, ...]]:
    """Every outcome in lexicographic order (issue 0 most significant)."""
    check_scale("enumerate decision vectors", math.prod(instance.alternatives))
    return itertools.product(*(range(t) for t in instance.alternatives))


def assignments(instance: PrivateGoodsInstance) -> Iterator[tuple[int, ...]]:
    """Owner of each good, lexicographic (good 0 most significant)."""
    check_scale("enumerate partitions", instance.n**instance.m)
    return itertools.product(range(instance.n), repeat=instance.m)


def partition_of(owners: Sequence[int], n: int) -> tuple[frozenset, ...]:
    return tuple(frozenset(j for j, o in enumerate(owners) if o == i) for i in range(n))


def top_values(row: Sequence[int], r: int) -> int:
    """Sum of the r largest entries."""
    return sum(sorted(row, reverse=True)[: max(r, 0)])
