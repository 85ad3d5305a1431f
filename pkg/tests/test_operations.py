import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specseq.cosimplicial import ContractError, Unit, UniversalExample, validate_map
from specseq.operations import (
    Host,
    RCycle,
    external_horizontal,
    external_op,
    external_product,
    external_vertical,
    internal_op,
    iota,
    orbit_pushforward,
    random_boundary,
    random_column_boundary,
    random_cycle,
    random_host,
    random_lower,
    representing_map,
    sharpness_example,
    structure_map,
    universal,
    w_page,
    welldefinedness_suite,
)

TRIPLES = [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 2)]


@pytest.mark.parametrize("r,s,t", [(2, 1, 1), (3, 1, 2), (2, 0, 1)])
def test_representing_map_of_iota_is_a_map(r, s, t):
    y = universal(r, s, t).iota()
    y.check()
    validate_map(representing_map(y), 2 * (s + r) + 1, degree_bound=t + r + 2)


def test_w_page_table():
    assert [w_page(3, 2, 2, m) for m in range(0, 3)] == [3, 4, 3]
    assert [w_page(2, 1, 1, m) for m in range(0, 2)] == [2, 2]
    assert [w_page(4, 3, 5, m) for m in range(2, 6)] == [4, 6, 5, 4]
    with pytest.raises(ContractError):
        w_page(2, 1, 1, 3)


def test_rcycle_check_names_the_failing_condition():
    host = universal(2, 1, 1).host
    bad = RCycle(host, 2, 1, 1, {1: 1})
    with pytest.raises(ContractError, match="k = 0"):
        bad.check()


@pytest.mark.parametrize("r,s,t", [(2, 1, 1), (3, 1, 2), (2, 2, 2)])
def test_product_of_iota_is_nonzero(r, s, t):
    y = universal(r, s, t).iota()
    res = external_product(y, y)
    assert res.bidegree == (-2 * s, 2 * t)
    assert not res.zero


@pytest.mark.parametrize("r,s,t", [(2, 1, 1), (3, 2, 2)])
def test_operations_on_iota_are_nonzero(r, s, t):
    y = universal(r, s, t).iota()
    for m in range(t - s, t + 3):
        assert not external_op(y, m).zero


@given(st.integers(0, 10 ** 6), st.sampled_from(TRIPLES))
def test_square_is_lowest_operation(seed, rst):
    rng = random.Random(seed)
    r, s, t = rst
    host = random_host(rng, r, s, t)
    y = random_cycle(host, r, s, t, rng)
    assert external_horizontal(y, t - s).coords == external_product(y, y).coords


@given(st.integers(0, 10 ** 6), st.sampled_from(TRIPLES))
def test_product_commutes(seed, rst):
    rng = random.Random(seed)
    r, s, t = rst
    host = random_host(rng, r, s, t)
    x, y = random_cycle(host, r, s, t, rng), random_cycle(host, r, s, t, rng)
    assert external_product(x, y).coords == external_product(y, x).coords


@given(st.integers(0, 10 ** 6), st.sampled_from(TRIPLES))
def test_operations_are_additive(seed, rst):
    rng = random.Random(seed)
    r, s, t = rst
    host = random_host(rng, r, s, t)
    x, y = random_cycle(host, r, s, t, rng), random_cycle(host, r, s, t, rng)
    for m in range(t - s, t + 2):
        a = external_op(x, m).coords ^ external_op(y, m).coords
        assert external_op(x + y, m).coords == a


@given(st.integers(0, 10 ** 6), st.sampled_from(TRIPLES))
def test_operations_vanish_on_lower_filtration_and_dF(seed, rst):
    rng = random.Random(seed)
    r, s, t = rst
    host = random_host(rng, r, s, t, boundaries=True)
    for b in (random_lower(host, r, s, t, rng), random_column_boundary(host, r, s, t, rng)):
        b.check()
        push = orbit_pushforward(b)
        for m in range(t - s, t + 2):
            assert external_op(b, m, push=push).zero


@given(st.integers(0, 10 ** 6))
def test_vertical_operations_vanish_on_boundaries(seed):
    rng = random.Random(seed)
    host = random_host(rng, 2, 1, 1, boundaries=True)
    b = random_boundary(host, 2, 1, 1, rng)
    for m in (1, 2, 3):
        assert external_vertical(b, m).zero


def test_welldefinedness_small():
    rep = welldefinedness_suite(2, 1, 1, seed=3, hosts=2, samples=2)
    assert rep["failures"] == []
    assert rep["cases"] > 0


@pytest.mark.parametrize("r,s", [(2, 1), (3, 2)])
def test_sharpness_example(r, s):
    rep = sharpness_example(r, s)
    assert rep["failures"] == []
    assert all(row["before"] == 1 and row["at"] == 0 for row in rep["rows"])


def test_horizontal_keeps_page_r_diagnostic():
    y = universal(3, 2, 2).iota()
    res = external_horizontal(y, 1)
    assert res.page == 4
    assert res.diagnostic is not None and res.diagnostic.page == 3


def test_internal_operation_on_the_unit():
    host = Host(Unit())
    theta = structure_map(host, lambda p, lab: [0] if lab[0] == 0 else [])
    validate_map(theta, 4, degree_bound=4)
    y = RCycle(host, 2, 0, 0, {0: 1})
    assert not internal_op(theta, 0, y).zero
    assert internal_op(theta, 1, y).zero


def test_product_needs_same_host():
    a = universal(2, 1, 1).iota()
    b = iota(2, 1, 1, host=Host(UniversalExample(2, 1, 1)))
    with pytest.raises(ContractError):
        external_product(a, b)
