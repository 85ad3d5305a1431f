"""Linear algebra against brute-force enumeration on spaces of dimension <= 4."""

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specseq.f2linalg import (
    Echelon,
    F2Matrix,
    LinAlgError,
    QuotientCoords,
    apply_images,
    compose_images,
    images_to_matrix,
    kernel_basis,
    kernel_of_images,
    matrix_to_images,
    rank,
    rank_profile,
    solve,
    subquotient,
)


def span(rows):
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


def log2(n):
    return n.bit_length() - 1


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    n = draw(st.integers(0, max_rows))
    m = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    return F2Matrix.from_rows(rows, m)


@given(matrices())
def test_rank_matches_span_size(M):
    assert rank(M) == log2(len(span(M.rows)))


@given(matrices())
def test_rref_has_same_row_space(M):
    r, pivots, R = rank_profile(M)
    assert span(R.rows) == span(M.rows)
    assert len(pivots) == r == len(set(pivots))


@given(matrices())
def test_kernel_basis_is_the_kernel(M):
    K = kernel_basis(M)
    brute = {v for v in range(1 << M.ncols) if M.apply(v) == 0}
    assert span(K.rows) == brute
    assert K.nrows == M.ncols - rank(M)


@given(matrices(), st.integers(0, 15))
def test_solve_agrees_with_search(M, b):
    b &= (1 << M.nrows) - 1
    sols = [x for x in range(1 << M.ncols) if M.apply(x) == b]
    x = solve(M, b)
    if sols:
        assert x is not None and M.apply(x) == b
    else:
        assert x is None


@given(matrices(), matrices())
def test_subquotient_dimension(A, B):
    if A.ncols != B.ncols:
        return
    num = F2Matrix.from_rows(A.rows + B.rows, A.ncols)
    d, reps = subquotient(num, B)
    assert d == log2(len(span(num.rows))) - log2(len(span(B.rows)))
    # reps are independent modulo B and lie in num
    big = span(num.rows)
    assert all(r in big for r in reps.rows)
    assert log2(len(span(reps.rows + B.rows))) == log2(len(big))


def test_subquotient_rejects_escaping_denominator():
    with pytest.raises(LinAlgError):
        subquotient(F2Matrix.from_rows([1], 2), F2Matrix.from_rows([2], 2))


@given(matrices(), matrices())
def test_quotient_coords_roundtrip(A, B):
    if A.ncols != B.ncols:
        return
    num = F2Matrix.from_rows(A.rows + B.rows, A.ncols)
    _, reps = subquotient(num, B)
    Q = QuotientCoords(B.rows, reps.rows)
    den = span(B.rows)
    for v in span(num.rows):
        c = Q.coords(v)
        w = 0
        for i in range(len(reps.rows)):
            if c >> i & 1:
                w ^= reps.rows[i]
        assert v ^ w in den


@given(st.lists(st.integers(0, 15), max_size=4))
def test_kernel_of_images(imgs):
    brute = {v for v in range(1 << len(imgs)) if apply_images(imgs, v) == 0}
    ker = kernel_of_images(imgs)
    assert span(ker) == brute
    assert len(ker) == log2(len(brute))


@given(st.lists(st.integers(0, 15), max_size=4), st.lists(st.integers(0, 15), max_size=4))
def test_compose_matches_matrix_product(inner, outer):
    inner = [v & ((1 << len(outer)) - 1) for v in inner]
    A = images_to_matrix(outer, 4)
    B = images_to_matrix(inner, len(outer))
    assert matrix_to_images(A @ B) == compose_images(outer, inner)


def test_echelon_tags_track_combinations():
    e = Echelon()
    vs = [0b1010, 0b0110, 0b1100]
    for i, v in enumerate(vs):
        e.add(v, 1 << i)
    res, tag = e.reduce(0b1100)
    assert res == 0
    acc = 0
    for i in range(3):
        if tag >> i & 1:
            acc ^= vs[i]
    assert acc == 0b1100


def test_empty_shapes():
    Z = F2Matrix.zero(0, 3)
    assert rank(Z) == 0
    assert kernel_basis(Z).nrows == 3
    assert solve(F2Matrix.zero(2, 0), 0) == 0
    assert solve(F2Matrix.zero(2, 0), 1) is None


def test_exhaustive_2x2():
    for rows in product(range(4), repeat=2):
        M = F2Matrix.from_rows(rows, 2)
        assert rank(M) + kernel_basis(M).nrows == 2
