import pytest
from hypothesis import given, strategies as st

import oracles
from fairalloc import (
    brute_force_leximin,
    brute_force_mnw,
    from_eqsp,
    from_ersp,
    from_monotone_sat,
    from_set_cover,
    max_product_bounded_sum,
    solve,
)
from fairalloc.hardness import eqsp_scale


def verdict(gadget):
    res = solve(gadget.instance, gadget.solver_objective)
    return gadget.decide(res.utilities)


def test_set_cover_examples():
    assert verdict(from_set_cover(2, [[0], [1], [0, 1]], 1))
    assert not verdict(from_set_cover(2, [[0], [1]], 1))
    g = from_set_cover(2, [], 1)
    assert not verdict(g)
    assert brute_force_mnw(g.instance).value.positive_count == 0


def test_set_cover_rejects_large_k():
    with pytest.raises(ValueError):
        from_set_cover(2, [[0]], 2)


def test_ersp_worked_example():
    g = from_ersp(4, [[0, 1], [2, 3], [0, 2]], 2, 2)
    assert g.threshold == 625
    assert g.instance.k == 6 and g.instance.m == 7
    res = brute_force_mnw(g.instance)
    assert res.value.product == 625 and verdict(g)
    assert res.allocation == {0, 1, 3, 4, 5, 6}


def test_ersp_overlapping_family_fails():
    g = from_ersp(4, [[0, 1], [1, 2], [0, 2]], 2, 2)
    assert brute_force_mnw(g.instance).value.product < g.threshold


def test_ersp_single_set_always_yes():
    g = from_ersp(3, [[0, 1]], 2, 1)
    assert g.threshold == 4 ** 2 * 3 and verdict(g)


def test_ersp_rejects_malformed():
    with pytest.raises(ValueError):
        from_ersp(3, [[0, 1, 2]], 2, 1)
    with pytest.raises(ValueError):
        from_ersp(3, [[0, 1], [1, 2]], 2, 2)


def test_eqsp_examples():
    g = from_eqsp([1, 3, 2, 2], "maxmin")
    assert (g.params["R"], g.params["C"], g.instance.k, g.threshold) == (8, 4, 2, 20)
    res = brute_force_leximin(g.instance)
    assert res.utilities == (20, 20)
    g = from_eqsp([1, 1])
    assert g.params["maxmin_threshold"] == 3 and g.threshold == 9
    assert verdict(g)


def test_eqsp_all_zero():
    g = from_eqsp([0, 0, 0, 0], "maxmin")
    assert g.threshold == 0 and verdict(g)


def test_eqsp_scaling_keeps_values_integral():
    # sum 5 is odd; scale 2 makes it 10, and m/2 = 2 divides it
    assert eqsp_scale([1, 1, 1, 2]) == 2
    g = from_eqsp([1, 1, 1, 2])
    assert not verdict(g)
    # zero padding would turn this no-instance into a yes-instance
    assert not verdict(from_eqsp([4, 1, 1, 1, 1, 0]))
    assert oracles.has_equal_partition([4, 1, 1, 1, 1, 0, 0, 0])


def test_eqsp_rejects_odd_length():
    with pytest.raises(ValueError):
        from_eqsp([1, 2, 3])


def test_msat_examples():
    g = from_monotone_sat(2, [[0], [0, 1]], 1)
    assert g.threshold == 3 and verdict(g)
    res = brute_force_leximin(g.instance)
    assert min(res.utilities[:-1]) >= 3 and res.utilities[-1] == 2
    g = from_monotone_sat(2, [[0], [1]], 1)
    assert not verdict(g)
    assert min(brute_force_leximin(g.instance).utilities[:-1]) == 2


def test_msat_rejects_bad_parameters():
    with pytest.raises(ValueError):
        from_monotone_sat(2, [[0]], 1)
    with pytest.raises(ValueError):
        from_monotone_sat(2, [[0], []], 0)


def test_amgm_examples():
    assert max_product_bounded_sum(3, 2, 2) == 18
    assert max_product_bounded_sum(4, 3, 0) == 81
    assert max_product_bounded_sum(1, 5, 0) == 5
    with pytest.raises(ValueError):
        max_product_bounded_sum(2, 1, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_amgm_matches_compositions(n):
    for lower in range(1, 4):
        for r in range(n):
            assert max_product_bounded_sum(n, lower, r) == oracles.compositions_max_product(n, lower, r)


subsets = st.lists(st.integers(0, 3), min_size=1, max_size=3, unique=True)


@given(st.integers(2, 4), st.lists(subsets, max_size=4), st.integers(0, 3))
def test_set_cover_verdicts(n, family, k):
    family = [[e for e in s if e < n] for s in family]
    family = [s for s in family if s]
    k = min(k, n - 1)
    assert verdict(from_set_cover(n, family, k)) == oracles.has_set_cover(n, family, k)


@given(st.integers(2, 4), st.data())
def test_ersp_verdicts(n, data):
    d = data.draw(st.integers(1, n))
    family = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=d, max_size=d, unique=True),
                                min_size=1, max_size=4))
    r = data.draw(st.integers(1, min(len(family), n // d)))
    g = from_ersp(n, family, d, r)
    assert verdict(g) == oracles.has_packing(family, r)
    # with d < n any MNW optimum keeps every dummy; with d = n a full set ties a dummy
    m = len(family)
    dummies = set(range(m, m + n))
    best = brute_force_mnw(g.instance)
    if d < n:
        assert dummies <= best.allocation
    else:
        rows = g.instance.valuations
        with_dummies = [x | dummies for x in oracles.subsets_upto(m, r)]
        assert oracles.best_value(rows, with_dummies, oracles.mnw_key) == (
            best.value.positive_count, best.value.product)


@pytest.mark.parametrize("objective", ["mnw", "maxmin"])
@given(data=st.data())
def test_eqsp_verdicts(objective, data):
    half = data.draw(st.integers(1, 3))
    a = data.draw(st.lists(st.integers(0, 5), min_size=2 * half, max_size=2 * half))
    assert verdict(from_eqsp(a, objective)) == oracles.has_equal_partition(a)


@given(st.integers(1, 4), st.data())
def test_msat_verdicts(n, data):
    clauses = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True),
                                 min_size=2, max_size=4))
    c = data.draw(st.integers(0, min(n, len(clauses) - 1)))
    g = from_monotone_sat(n, clauses, c)
    assert verdict(g) == oracles.has_small_hitting_assignment(n, clauses, c)
    dummies = range(n, g.instance.m)
    assert set(dummies) <= brute_force_leximin(g.instance).allocation
