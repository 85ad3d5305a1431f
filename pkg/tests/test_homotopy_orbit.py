import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specseq.cosimplicial import UniversalExample, validate
from specseq.f2linalg import kernel_of_images
from specseq.homotopy_orbit import (
    HomotopyOrbit,
    exactness_ranks,
    inclusion_on_top_cohomology,
    mayonethree_dims,
    omega_bar,
    omega_tilde_A,
    orbit_boundary,
    orbit_chain_complex,
    q_chain,
    upsilon,
    w_resolution,
)
from specseq.simplex_chains import betti, delta_chains, skeleton
from specseq.verify import _random_chain_complex


def test_w_resolution_is_acyclic():
    W = w_resolution(6).chain_complex()
    W.check()
    h = betti(W)
    assert h[0] == 1
    assert all(h.get(n, 0) == 0 for n in range(1, 6))


@given(st.integers(0, 10 ** 6))
def test_orbit_homology_formula(seed):
    C, K = _random_chain_complex(random.Random(seed))
    got = betti(orbit_chain_complex(C, 6))
    want = mayonethree_dims(K, 5)
    assert all(got.get(n, 0) == want[n] for n in range(6))


@given(st.integers(0, 10 ** 6))
def test_w_cap_doubling(seed):
    C, _ = _random_chain_complex(random.Random(seed))
    a, b = betti(orbit_chain_complex(C, 4)), betti(orbit_chain_complex(C, 8))
    assert all(a.get(n, 0) == b.get(n, 0) for n in range(4))


@pytest.mark.parametrize("p,t", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_q_chain_of_cycles_is_a_cycle(p, t):
    C = skeleton(delta_chains(p), t)
    for z in kernel_of_images(C.boundary_images(t)):
        for m in range(t, 2 * t + 2):
            assert orbit_boundary(C, q_chain(m, C, t, z)) == {}


def test_upsilon_asymmetric_table():
    for s in range(5):
        for s2 in range(5):
            h = {p: d for p, d in upsilon(s, s2).cohomology_dims().items() if d}
            assert h == {s + s2: 1}


@pytest.mark.parametrize("s", range(5))
def test_omega_tables(s):
    h = {p: d for p, d in omega_bar(s).cohomology_dims().items() if d}
    assert h == {p: 1 for p in range(s, 2 * s + 1)}
    Ot, A = omega_tilde_A(s)
    assert {p: d for p, d in A.cohomology_dims().items() if d} == {p: 1 for p in range(s + 1, 2 * s + 1)}
    want = {0: 1} if s == 0 else {p: 1 for p in range(s + 2, 2 * s + 1)}
    assert {p: d for p, d in Ot.cohomology_dims().items() if d} == want


@pytest.mark.parametrize("s", range(5))
def test_top_cohomology_map_vanishes(s):
    assert not any(inclusion_on_top_cohomology(s))


@pytest.mark.parametrize("s", range(5))
def test_short_exact_sequences_dims(s):
    for p, (u, a, ob, ot) in exactness_ranks(s).items():
        assert a + ob == u
        assert ot + a == u


def test_homotopy_orbit_identities():
    validate(HomotopyOrbit(UniversalExample(2, 1, 1), M=3), level_cap=4, degree_bound=6)


def test_orbit_labels_ordered_pairs():
    E = HomotopyOrbit(UniversalExample(2, 1, 1))
    labs = E.labels(1, 2)
    assert all(E.degree(1, lab) == 2 for lab in labs)
    assert all(E.sigma(E.sigma(lab)) == lab for lab in labs)
