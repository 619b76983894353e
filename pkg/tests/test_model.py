import itertools
import math

import pytest
from hypothesis import given, strategies as st

from conftest import public_instances, valuation_rows
from fairalloc import (
    Budget,
    InfeasibleAllocationError,
    NashScore,
    PublicDecisionsInstance,
    PublicGoodsInstance,
    ScaleError,
    UtilityVector,
    enumerate_feasible,
    leximin_compare,
    nash_score,
    utilities,
    utility,
)
from fairalloc.model import PrivateGoodsInstance, feasible_masks, utility_table

TOY = PublicGoodsInstance.with_k([[2, 1, 0], [0, 1, 2]], 2)


def test_utility_additive():
    assert utility(TOY, frozenset({0, 2}), 0) == 2
    assert utility(TOY, frozenset(), 1) == 0


def test_utility_decisions_single_issue():
    inst = PublicDecisionsInstance([[[3, 1]]])
    assert utility(inst, (0,), 0) == 3


def test_utility_private_own_bundle():
    inst = PrivateGoodsInstance([[3, 1], [1, 3]])
    assert utilities(inst, (frozenset({0}), frozenset({1}))) == (3, 3)


def test_utility_errors():
    with pytest.raises(InfeasibleAllocationError):
        utility(TOY, frozenset({0, 1, 2}), 0)
    with pytest.raises(IndexError):
        utility(TOY, frozenset(), 5)
    with pytest.raises(InfeasibleAllocationError):
        utilities(PrivateGoodsInstance([[1, 1], [1, 1]]), (frozenset({0}), frozenset()))


def test_nash_score_toy_by_enumeration():
    products = {
        c: math.prod(sum(r[j] for j in c) for r in TOY.valuations)
        for c in itertools.combinations(range(3), 2)
    }
    assert sorted(products.values()) == [3, 3, 4]
    assert nash_score(TOY, frozenset({0, 2})) == NashScore(2, 4)


def test_nash_score_conventions():
    assert NashScore.of([0, 0]) == NashScore(0, 1)
    assert NashScore.of([3, 0]) == NashScore(1, 3)
    # more positive agents beats any product
    assert NashScore.of([1, 1]) > NashScore.of([100, 0])


@pytest.mark.parametrize(
    "u,w,expected",
    [((1, 3), (2, 2), -1), ((2, 2), (2, 2), 0), ((2, 1), (1, 1), 1)],
)
def test_leximin_compare(u, w, expected):
    assert leximin_compare(u, w) == expected
    assert leximin_compare(UtilityVector(u), UtilityVector(w)) == expected


def test_leximin_compare_length_mismatch():
    with pytest.raises(ValueError):
        leximin_compare((1,), (1, 2))


def test_enumerate_feasible_examples():
    pg = PublicGoodsInstance.with_k([[1, 1, 1]], 3)
    assert len(list(enumerate_feasible(pg))) == 8
    pg1 = PublicGoodsInstance.with_k([[1, 1, 1]], 1)
    assert list(enumerate_feasible(pg1)) == [frozenset(), {0}, {1}, {2}]
    budget = PublicGoodsInstance.with_budget([[1, 1]], 2, (2, 3))
    assert list(enumerate_feasible(budget)) == [frozenset(), {0}]


def test_instance_validation():
    with pytest.raises(ValueError, match="values no good"):
        PublicGoodsInstance.with_k([[0]], 1)
    with pytest.raises(ValueError):
        PublicGoodsInstance.with_k([[1, 2]], 3)
    with pytest.raises(ValueError):
        PublicGoodsInstance.with_budget([[1, 2]], 3, (1,))
    with pytest.raises(ValueError):
        PublicGoodsInstance.with_k([[1, -1]], 1)
    with pytest.raises(ValueError):
        PublicDecisionsInstance([[[1]]])


def test_scale_cap(monkeypatch):
    monkeypatch.setenv("FAIRALLOC_MAX_ENUM", "7")
    with pytest.raises(ScaleError) as err:
        list(enumerate_feasible(PublicGoodsInstance.with_k([[1, 1, 1]], 3)))
    assert err.value.estimate == 8


@given(public_instances())
def test_cardinality_equals_unit_budget(inst):
    assert list(enumerate_feasible(inst)) == list(enumerate_feasible(inst.as_budget()))
    assert isinstance(inst.as_budget().constraint, Budget)


@given(public_instances())
def test_enumeration_is_ascending_and_feasible(inst):
    masks = feasible_masks(inst)
    assert masks == sorted(set(masks))
    expected = sum(math.comb(inst.m, i) for i in range(inst.k + 1))
    assert len(masks) == expected


@given(public_instances(max_m=5, k_at_least_n=True), st.data())
def test_nash_argmax_scale_invariant(inst, data):
    agent = data.draw(st.integers(0, inst.n - 1))
    factor = data.draw(st.integers(2, 5))
    scaled_rows = [list(r) for r in inst.valuations]
    scaled_rows[agent] = [factor * v for v in scaled_rows[agent]]
    scaled = PublicGoodsInstance.with_k(scaled_rows, inst.k)

    def argmax_set(instance):
        scores = {x: nash_score(instance, x) for x in enumerate_feasible(instance)}
        best = max(scores.values())
        return {x for x, s in scores.items() if s == best}

    assert argmax_set(inst) == argmax_set(scaled)


def test_scale_invariance_needs_all_agents_positive():
    # k < n: the tie-break product covers different agents in each option
    inst = PublicGoodsInstance.with_k([[1, 0], [0, 1]], 1)
    scaled = PublicGoodsInstance.with_k([[2, 0], [0, 1]], 1)
    assert nash_score(inst, frozenset({0})) == nash_score(inst, frozenset({1}))
    assert nash_score(scaled, frozenset({0})) > nash_score(scaled, frozenset({1}))


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3))
def test_leximin_total_preorder(vectors):
    a, b, c = vectors
    assert leximin_compare(a, b) == -leximin_compare(b, a)
    assert (leximin_compare(a, b) == 0) == (sorted(a) == sorted(b))
    if leximin_compare(a, b) <= 0 and leximin_compare(b, c) <= 0:
        assert leximin_compare(a, c) <= 0


@given(st.lists(st.integers(1, 50), min_size=1, max_size=5), st.lists(st.integers(1, 50), min_size=1, max_size=5))
def test_nash_order_matches_product_when_all_positive(u, w):
    w = (w * 5)[: len(u)]
    assert (NashScore.of(u) < NashScore.of(w)) == (math.prod(u) < math.prod(w))


@given(public_instances(max_m=5))
def test_utility_table_matches_direct(inst):
    masks, table = utility_table(inst)
    for mask, row in zip(masks, table):
        x = frozenset(j for j in range(inst.m) if mask >> j & 1)
        assert tuple(int(v) for v in row) == utilities(inst, x)


@given(valuation_rows(2, 3))
def test_decisions_utility_sums_issues(rows):
    inst = PublicDecisionsInstance([[[v, 0] for v in col] for col in zip(*rows)])
    assert utilities(inst, (0, 0, 0)) == tuple(sum(r) for r in rows)
    assert utilities(inst, (1, 1, 1)) == (0, 0)
