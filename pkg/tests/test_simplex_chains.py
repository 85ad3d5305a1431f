from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specseq.f2linalg import F2Matrix, LinAlgError
from specseq.simplex_chains import (
    ChainComplex,
    Injection,
    based_injections,
    based_words,
    betti,
    chain_complex,
    collapse,
    delta_chains,
    expected_skeleton_homology,
    faces,
    injections,
    insert_zero,
    skeleton,
    splitting_S,
    words,
)


def test_word_counts():
    for p in range(6):
        for k in range(p + 1):
            assert len(words(k, p)) == comb(p + 1, k + 1)
            assert len(based_words(k, p)) == comb(p, k)
            assert all(w & 1 for w in based_words(k, p))


def test_injection_order_is_integer_order():
    inj = injections(1, 3)
    assert inj == sorted(inj)
    assert [i.word for i in inj] == sorted(i.word for i in inj)
    assert Injection.from_image([0, 2], 3).word_string() == "1010"


@given(st.integers(0, 5), st.data())
def test_coface_identities_on_words(p, data):
    w = data.draw(st.sampled_from(words(data.draw(st.integers(0, p)), p)))
    # d^j d^i = d^i d^{j-1} for i < j
    for j in range(p + 3):
        for i in range(j):
            assert insert_zero(insert_zero(w, i), j) == insert_zero(insert_zero(w, j - 1), i)
    # s^j d^i = id for i in {j, j+1}
    for j in range(p + 1):
        assert collapse(insert_zero(w, j), j) == w
        assert collapse(insert_zero(w, j + 1), j) == w


def test_collapse_detects_non_injective():
    assert collapse(0b11, 0) is None
    assert collapse(0b101, 0) == 0b11


def test_faces_drop_one_point():
    assert sorted(faces(0b1011)) == sorted([0b1010, 0b1001, 0b0011])


@pytest.mark.parametrize("p", range(7))
def test_delta_chains_is_a_complex_and_contractible(p):
    C = delta_chains(p)
    C.check()
    assert {q: d for q, d in betti(C).items() if d} == {0: 1}


@pytest.mark.parametrize("p", range(7))
def test_skeleton_homology(p):
    C = delta_chains(p)
    for t in range(p + 1):
        got = {q: d for q, d in betti(skeleton(C, t)).items() if d}
        assert got == expected_skeleton_homology(p, t)
        if t > 0 and t < p:
            assert got[t] == comb(p, t + 1)


@pytest.mark.parametrize("p", range(1, 6))
def test_skeleton_euler_characteristic(p):
    # independent check: chi(sk_t) = sum (-1)^k C(p+1, k+1)
    C = delta_chains(p)
    for t in range(p + 1):
        chi = sum((-1) ** k * comb(p + 1, k + 1) for k in range(t + 1))
        h = betti(skeleton(C, t))
        assert sum((-1) ** q * d for q, d in h.items()) == chi


@pytest.mark.parametrize("p", range(1, 5))
def test_splitting_is_a_contraction(p):
    # d S + S d = id in degrees t >= 1
    C = delta_chains(p)
    for t in range(1, p):
        d_up = C.differential(t + 1)
        d_here = C.differential(t)
        h = d_up @ splitting_S(p, t) + splitting_S(p, t - 1) @ d_here
        assert h == F2Matrix.identity(C.dim(t))


def test_based_injections_count():
    assert len(based_injections(4, 2)) == comb(4, 2)
    with pytest.raises(ValueError):
        based_injections(-1, 0)


def test_chain_complex_check_catches_bad_boundary():
    C = ChainComplex({0: ("a",), 1: ("b",), 2: ("c",)}, {1: (1,), 2: (1,)})
    with pytest.raises(LinAlgError):
        C.check()


def test_chain_complex_cancels_repeated_labels():
    C = chain_complex({0: ["x"], 1: ["e"]}, lambda lab: ["x", "x"] if lab == "e" else [])
    assert C.boundary_images(1) == (0,)
