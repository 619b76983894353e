"""Model reductions with back-maps and oracle round-trip checks.

* public goods -> public decisions (MNW): every good becomes a binary issue;
  ``k*T`` agents like deciding "select" and ``(m-k)*T`` like "skip", which
  pins the number of selected goods to exactly ``k`` at the optimum.
* public goods -> public decisions (leximin): two auxiliary agents do the same
  job with tiny values; originals are scaled by ``M = m^2 + 1`` so everything
  stays integral.
* private goods -> public goods (MNW and leximin): each good gets ``n``
  agent-specific copies, ``k = m``, and two dummy agents per good who like
  all of its copies.

When ``k = m`` a public source needs no reduction; an identity artifact
(``target is None``) is returned and its back-map selects every good.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .model import (
    PrivateGoodsInstance,
    PublicDecisionsInstance,
    PublicGoodsInstance,
    UnsupportedError,
    check_scale,
    count_feasible_upper,
    utilities,
)
from .solvers import (
    brute_force,
    brute_force_decisions,
    brute_force_private,
    objective_value,
)

PUBLIC_TO_DECISIONS = "public-to-decisions"
PRIVATE_TO_PUBLIC = "private-to-public"


@dataclass(frozen=True)
class ReductionArtifact:
    name: str
    objective: str
    source: object
    target: Optional[object]
    parameters: dict = field(default_factory=dict)

    @property
    def identity(self) -> bool:
        return self.target is None

    def back_map(self, target_allocation=None):
        """Source allocation corresponding to a target allocation."""
        if self.identity:
            return frozenset(range(self.source.m))
        if self.name == PUBLIC_TO_DECISIONS:
            return frozenset(j for j, d in enumerate(target_allocation) if d == 0)
        return _copies_to_partition(self.source, set(target_allocation))


def _copies_to_partition(source: PrivateGoodsInstance, selected: set) -> tuple[frozenset, ...]:
    # copy (good j, agent l) is target good j*n + l; duplicate copies go to the
    # lowest agent and uncovered goods to agent 0 so the partition is total
    n, m = source.n, source.m
    bundles = [set() for _ in range(n)]
    for j in range(m):
        owners = [l for l in range(n) if j * n + l in selected]
        bundles[owners[0] if owners else 0].add(j)
    return tuple(frozenset(b) for b in bundles)


def agent_blowup(n: int, m: int, V: int) -> int:
    """Smallest T with 2**T >= (m*V)**(2*m*n), i.e. ceil(2mn log2(mV)) exactly."""
    return ((m * V) ** (2 * m * n) - 1).bit_length()


def _require_public_cardinality(src: PublicGoodsInstance, what: str) -> None:
    if not isinstance(src, PublicGoodsInstance) or not src.is_cardinality:
        raise UnsupportedError(f"{what} needs a public goods instance with a cardinality constraint")
    if src.k < src.n:
        raise UnsupportedError(f"{what} needs k >= n (k={src.k}, n={src.n})")


def public_to_decision_mnw(src: PublicGoodsInstance, T: Optional[int] = None) -> ReductionArtifact:
    """``T`` may be overridden for mutation tests; the default is ``agent_blowup``."""
    _require_public_cardinality(src, "public-to-decisions (MNW)")
    n, m, k = src.n, src.m, src.k
    if k == m:
        return ReductionArtifact(PUBLIC_TO_DECISIONS, "mnw", src, None, {"k": k})
    if T is None:
        T = agent_blowup(n, m, src.V)
    issues = []
    for j in range(m):
        table = [(src.valuations[i][j], 0) for i in range(n)]
        table += [(1, 0)] * (k * T)
        table += [(0, 1)] * ((m - k) * T)
        issues.append(table)
    target = PublicDecisionsInstance(issues)
    params = {"k": k, "T": T, "type_a": k * T, "type_b": (m - k) * T}
    return ReductionArtifact(PUBLIC_TO_DECISIONS, "mnw", src, target, params)


def public_to_decision_lex(src: PublicGoodsInstance) -> ReductionArtifact:
    _require_public_cardinality(src, "public-to-decisions (leximin)")
    n, m, k = src.n, src.m, src.k
    if k == m:
        return ReductionArtifact(PUBLIC_TO_DECISIONS, "leximin", src, None, {"k": k, "M": 1})
    M = m * m + 1
    issues = []
    for j in range(m):
        table = [(M * src.valuations[i][j], 0) for i in range(n)]
        table += [(m - k, 0), (0, k)]
        issues.append(table)
    target = PublicDecisionsInstance(issues)
    return ReductionArtifact(PUBLIC_TO_DECISIONS, "leximin", src, target, {"k": k, "M": M})


def _private_to_public(src: PrivateGoodsInstance, objective: str) -> ReductionArtifact:
    if not isinstance(src, PrivateGoodsInstance):
        raise UnsupportedError("private-to-public needs a private goods instance")
    n, m = src.n, src.m
    rows = [[0] * (n * m) for _ in range(n + 2 * m)]
    for j in range(m):
        for l in range(n):
            g = j * n + l
            rows[l][g] = src.valuations[l][j]
            rows[n + 2 * j][g] = 1
            rows[n + 2 * j + 1][g] = 1
    target = PublicGoodsInstance.with_k(rows, m)
    copies = [[j, l] for j in range(m) for l in range(n)]
    return ReductionArtifact(PRIVATE_TO_PUBLIC, objective, src, target, {"k": m, "copies": copies})


def private_to_public_mnw(src: PrivateGoodsInstance) -> ReductionArtifact:
    return _private_to_public(src, "mnw")


def private_to_public_lex(src: PrivateGoodsInstance) -> ReductionArtifact:
    return _private_to_public(src, "leximin")


REDUCTIONS = {
    (PUBLIC_TO_DECISIONS, "mnw"): public_to_decision_mnw,
    (PUBLIC_TO_DECISIONS, "leximin"): public_to_decision_lex,
    (PRIVATE_TO_PUBLIC, "mnw"): private_to_public_mnw,
    (PRIVATE_TO_PUBLIC, "leximin"): private_to_public_lex,
}


def reduce(source, reduction: str, objective: str) -> ReductionArtifact:
    try:
        fn = REDUCTIONS[(reduction, objective)]
    except KeyError:
        raise UnsupportedError(f"no reduction {reduction!r} for objective {objective!r}") from None
    return fn(source)


@dataclass(frozen=True)
class RoundTripReport:
    reduction: str
    objective: str
    equal: bool
    feasible: bool
    source_allocation: object
    source_value: object
    mapped_allocation: object
    mapped_value: object
    target_allocation: object = None
    # decisions targets: issues decided "select"; private targets: one copy per good
    selected_count: Optional[int] = None
    distinct_copies: Optional[bool] = None


def verify_roundtrip(artifact: ReductionArtifact) -> RoundTripReport:
    """Solve the target by brute force, map back, and compare with the source optimum."""
    src, objective = artifact.source, artifact.objective
    if artifact.name == PUBLIC_TO_DECISIONS:
        check_scale("source brute force", count_feasible_upper(src))
        direct = brute_force(src, objective)
    else:
        direct = brute_force_private(src, objective)

    target_alloc = None
    selected_count = distinct = None
    if artifact.identity:
        mapped = artifact.back_map()
    elif artifact.name == PUBLIC_TO_DECISIONS:
        target_alloc = brute_force_decisions(artifact.target, objective).allocation
        mapped = artifact.back_map(target_alloc)
        selected_count = len(mapped)
    else:
        check_scale("target brute force", count_feasible_upper(artifact.target))
        target_alloc = brute_force(artifact.target, objective).allocation
        mapped = artifact.back_map(target_alloc)
        n = src.n
        distinct = len({g // n for g in target_alloc}) == len(target_alloc)

    feasible = True
    try:
        mapped_utils = utilities(src, mapped)
    except ValueError:
        feasible = False
    mapped_value = objective_value(objective, mapped_utils) if feasible else None
    return RoundTripReport(
        reduction=artifact.name,
        objective=objective,
        equal=feasible and mapped_value == direct.value,
        feasible=feasible,
        source_allocation=direct.allocation,
        source_value=direct.value,
        mapped_allocation=mapped,
        mapped_value=mapped_value,
        target_allocation=target_alloc,
        selected_count=selected_count,
        distinct_copies=distinct,
    )
