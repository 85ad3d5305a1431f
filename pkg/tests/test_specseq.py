"""Spectral sequence pages against a persistence-pairing oracle, route
agreement, locality and d^r d^r = 0."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specseq.cosimplicial import (
    Conormalization,
    DirectSum,
    Tensor,
    UniversalExample,
    VSquare,
    conormalize,
    universal_example,
)
from specseq.f2linalg import F2Matrix, rank
from specseq.homotopy_orbit import HomotopyOrbit
from specseq.specseq import SpectralSequence, WindowUnderflow, total_homology


def persistence_dims(B, cols, nrange, rmax):
    """dims[(r, s, n)] from pairing the total complex of B on columns
    lo..hi (finite bicomplex, every column inside) in total degrees around nrange.

    Basis elements enter from the highest column down, so each prefix is the
    subcomplex F^{-s}. A pair (x in column a, killed by y in column b <= a)
    is visible on pages 1 .. a-b; unpaired cycles are visible forever.
    """
    lo, hi = cols
    nlo, nhi = nrange
    elems = []
    for c in range(hi, lo - 1, -1):
        for n in range(nlo - 1, nhi + 2):
            for j in range(B.dim(c, n + c)):
                elems.append((c, n, j))
    index = {e: i for i, e in enumerate(elems)}

    def boundary(e):
        c, n, j = e
        q = n + c
        v = 0
        for k in range(B.dim(c, q - 1)):
            if B.hd(c, q)[j] >> k & 1 and (c, n - 1, k) in index:
                v ^= 1 << index[(c, n - 1, k)]
        if c + 1 <= hi:
            for k in range(B.dim(c + 1, q)):
                if B.cd(c, q)[j] >> k & 1 and (c + 1, n - 1, k) in index:
                    v ^= 1 << index[(c + 1, n - 1, k)]
        return v

    lows = {}
    paired = {}  # x -> y
    killer = {}  # y -> x
    for i, e in enumerate(elems):
        v = boundary(e)
        while v:
            low = v.bit_length() - 1
            if low not in lows:
                break
            v ^= lows[low]
        if v:
            low = v.bit_length() - 1
            lows[low] = v
            paired[low] = i
            killer[i] = low
    dims = {}
    for i, (c, n, j) in enumerate(elems):
        if not nlo <= n <= nhi:
            continue
        if i in paired:
            length = c - elems[paired[i]][0]
        elif i in killer:
            length = elems[killer[i]][0] - c
        else:
            length = None
        for r in range(1, rmax + 1):
            if length is None or length >= r:
                dims[(r, c, n)] = dims.get((r, c, n), 0) + 1
    return dims


FINITE = [
    UniversalExample(2, 1, 1),
    UniversalExample(3, 0, 2),
    UniversalExample(1, 2, 3),
    VSquare(1, 2),
    DirectSum([UniversalExample(2, 1, 2), UniversalExample(3, 0, 1)]),
    Tensor(UniversalExample(2, 1, 1), UniversalExample(2, 0, 0)),
]


@pytest.mark.parametrize("Y", FINITE, ids=repr)
@pytest.mark.parametrize("method", ["reduced", "direct", "global"])
def test_pages_match_persistence_oracle(Y, method):
    B = Conormalization(Y)
    hi = Y.max_column()
    oracle = persistence_dims(B, (0, hi), (-2, 4), 4)
    ss = SpectralSequence(B, window=(0, hi), method=method)
    for r in range(1, 5):
        for c in range(0, hi + 1):
            for n in range(-2, 5):
                assert ss.dim(r, c, n + c) == oracle.get((r, c, n), 0), (r, c, n)


@pytest.mark.parametrize("Y", FINITE[:4], ids=repr)
def test_orbit_pages_match_persistence_oracle(Y):
    E = HomotopyOrbit(Y, M=4)
    B = Conormalization(E)
    hi = E.max_column()
    lo_deg = 2 * min(Y.degree_range(p)[0] for p in range(hi + 1)) - hi
    oracle = persistence_dims(B, (0, hi), (lo_deg, lo_deg + 3), 3)
    ss = SpectralSequence(B)
    for r in range(1, 4):
        for c in range(0, hi + 1):
            for n in range(lo_deg, lo_deg + 4):
                assert ss.dim(r, c, n + c) == oracle.get((r, c, n), 0), (r, c, n)


ROUTE_OBJECTS = [
    HomotopyOrbit(UniversalExample(2, 1, 1)),
    HomotopyOrbit(UniversalExample(1, 1, 2)),
    UniversalExample(3, 1, 2),
    Tensor(UniversalExample(2, 1, 1), UniversalExample(2, 1, 1)),
]


@given(st.sampled_from(ROUTE_OBJECTS), st.integers(1, 4), st.integers(0, 3), st.integers(0, 5))
def test_routes_agree(Y, r, s, q):
    B = Conormalization(Y)
    red = SpectralSequence(B)
    direct = SpectralSequence(B, method="direct")
    glob = SpectralSequence(B, window=(0, 12), method="global")
    dims = {red.dim(r, s, q), direct.dim(r, s, q), glob.dim(r, s, q)}
    assert len(dims) == 1
    ranks = {rank(S.differential(r, s, q)) for S in (red, direct, glob)}
    assert len(ranks) == 1


@given(st.sampled_from(ROUTE_OBJECTS), st.integers(1, 4), st.integers(0, 3), st.integers(0, 6))
def test_dr_squares_to_zero(Y, r, s, q):
    ss = SpectralSequence(Conormalization(Y))
    first = ss.differential(r, s, q)
    second = ss.differential(r, s + r, q + r - 1)
    assert (first @ second).is_zero()


@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 4), st.integers(1, 4))
def test_locality_window_enlargement(r, s, q, extra):
    # columns s-r+1 .. s+r are all an entry reads: cutting the complex above
    # any hi >= s+r changes nothing
    B = conormalize(universal_example(None, 1, 2))
    hi = s + r
    a = SpectralSequence(B, window=(0, hi), method="global")
    b = SpectralSequence(B, window=(0, hi + extra), method="global")
    c = SpectralSequence(B)
    assert a.dim(r, s, q) == b.dim(r, s, q) == c.dim(r, s, q)


def test_window_underflow_is_raised():
    B = conormalize(universal_example(None, 1, 1))
    ss = SpectralSequence(B, window=(0, 2))
    with pytest.raises(WindowUnderflow):
        ss.dim(3, 1, 1)


def test_global_route_needs_finite_window():
    from specseq.cosimplicial import ContractError

    with pytest.raises(ContractError):
        SpectralSequence(conormalize(UniversalExample(2, 1, 1)), method="global")


@given(st.integers(2, 4))
def test_w_cap_doubling_on_pages(M):
    Y = UniversalExample(2, 1, 1)
    a = SpectralSequence(Conormalization(HomotopyOrbit(Y, M)))
    b = SpectralSequence(Conormalization(HomotopyOrbit(Y, 2 * M)))
    for r in (1, 2, 3):
        for c in range(0, 7):
            for q in range(2, 2 + M):
                assert a.dim(r, c, q) == b.dim(r, c, q)


def test_universal_example_pages_frozen():
    ss = SpectralSequence(conormalize(UniversalExample(3, 1, 2)))
    nonzero = {(r, c, q) for r in range(1, 5) for c in range(6) for q in range(8) if ss.dim(r, c, q)}
    assert nonzero == {(r, 1, 2) for r in (1, 2, 3)} | {(r, 4, 4) for r in (1, 2, 3)}
    d = ss.differential(3, 1, 2)
    assert d == F2Matrix.from_rows([1], 1)


def test_orbit_e1_frozen():
    # counts of covering pairs of based injections, see the e1basis suite
    ss = SpectralSequence(Conormalization(HomotopyOrbit(UniversalExample(2, 1, 1))))
    got = {(c, q): ss.dim(1, c, q) for c in range(7) for q in range(1, 5) if ss.dim(1, c, q)}
    assert got == {(1, 2): 1, (1, 3): 1, (1, 4): 1, (2, 2): 1, (3, 3): 3, (3, 4): 1,
                   (4, 3): 4, (4, 4): 6, (5, 4): 15, (6, 4): 10}


@pytest.mark.parametrize("s,t", [(0, 0), (1, 1), (1, 3), (2, 2)])
def test_infinite_example_total_homology(s, t):
    D = conormalize(universal_example(None, s, t))
    h = total_homology(D, (0, t + 4), (t - s - 2, t - s + 2))
    assert h == {n: int(n == t - s) for n in h}


def test_class_coordinates_roundtrip():
    ss = SpectralSequence(Conormalization(HomotopyOrbit(UniversalExample(2, 1, 1))))
    e = ss.entry(2, 4, 4)
    for i, v in enumerate(e.reps):
        assert e.coords(v) == 1 << i
