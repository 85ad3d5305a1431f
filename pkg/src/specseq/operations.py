"""Representing maps, external products and the operations preQ^m.

An r-cycle y of Y at (-s, t) is kept as its components y^c in C(Y)(c, t+c-s)
for c = s .. s+r-1 (any tail lies in B^r, so nothing is lost). The
representing map Psi_y: D_{rst} -> Y sends an injection word w: [k] -> [p]
to Y(w) applied to the normalized lift of y^k; on the normalized part the
vertical differential is the full alternating coface sum, so the cycle
conditions make this a map of cosimplicial chain complexes.

The operations push the generator xi of E(e(D_{rst})) at the relevant
bidegree through e(Psi_y). Vertical ones (m >= t) sit at (-s, m+t); the
horizontal ones (t-s <= m <= t) sit at (m-s-t, 2t) and are reported at page
w(m), where they stop depending on the chosen cycle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cosimplicial import (
    Conormalization,
    ContractError,
    Cosimplicial,
    CosimplicialMap,
    DirectSum,
    Tensor,
    UniversalExample,
    VSquare,
    _cofaces,
    mod2,
    suspend,
)
from .f2linalg import bits
from .homotopy_orbit import HomotopyOrbit, OrbitMap
from .specseq import Layout, SpectralSequence


# -- hosts ---------------------------------------------------------------------

class Host:
    """Y together with C(Y), e(Y), C(e(Y)) and their spectral sequences."""

    def __init__(self, Y: Cosimplicial, method: str = "reduced"):
        self.Y = Y
        self.C = Conormalization(Y)
        self.eY = HomotopyOrbit(Y)
        self.Ce = Conormalization(self.eY)
        self.YY = Tensor(Y, Y)
        self.CYY = Conormalization(self.YY)
        self.ss = SpectralSequence(self.C, method=method)
        self.ess = SpectralSequence(self.Ce, method=method)
        self._inc: dict = {}

    def __repr__(self):
        return f"Host({self.Y!r})"

    def inc_labels(self, pairs: Iterable[tuple]) -> list:
        """Y (x) Y -> e(Y), a (x) b -> e_0 (x) a (x) b."""
        return mod2((0, a, b) for a, b in pairs)


_UNIVERSAL: Dict[Tuple, "Universal"] = {}


class Universal:
    """D_{rst} with the generators xi of its homotopy-orbit spectral sequence."""

    def __init__(self, r: int, s: int, t: int):
        if r is None or r < 1:
            raise ContractError("the universal example needs a finite r >= 1")
        self.r, self.s, self.t = r, s, t
        self.D = UniversalExample(r, s, t)
        self.host = Host(self.D)

    def iota(self) -> "RCycle":
        return iota(self.r, self.s, self.t, host=self.host)

    def xi(self, page: int, col: int, q: int):
        """The E^page entry of e(D_{rst}) at column col, degree q; it must be
        one-dimensional."""
        e = self.host.ess.entry(page, col, q)
        if e.dim != 1:
            raise ContractError(f"E^{page}(e(D)) at (-{col}, {q}) has dimension {e.dim}, expected 1")
        return e


def universal(r: int, s: int, t: int) -> Universal:
    key = (r, s, t)
    U = _UNIVERSAL.get(key)
    if U is None:
        U = Universal(r, s, t)
        _UNIVERSAL[key] = U
    return U


# -- r-cycles ------------------------------------------------------------------

@dataclass
class RCycle:
    """y in Z^r_{-s,t}(Y) given by its components on columns s .. s+r-1."""

    host: Host
    r: int
    s: int
    t: int
    comps: Dict[int, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.t - self.s

    def degree(self, c: int) -> int:
        return self.n + c

    def component(self, c: int) -> int:
        return self.comps.get(c, 0)

    def columns(self) -> range:
        return range(self.s, self.s + self.r)

    def layout(self) -> Layout:
        return self.host.ss.layout(self.s, self.r, self.n)

    def vector(self) -> int:
        L = self.layout()
        v = 0
        for c in self.columns():
            v |= L.put(self.component(c), c)
        return v

    def check(self) -> None:
        """hd y^s = 0 and cd y^{s+k} = hd y^{s+k+1} for k <= r-2."""
        C = self.host.C
        ss = self.host.ss
        for c, u in self.comps.items():
            if c not in self.columns():
                raise ContractError(f"component in column {c} outside {self.s}..{self.s + self.r - 1}")
            if u >> C.dim(c, self.degree(c)):
                raise ContractError(f"component in column {c} is out of range")
        if ss._hd(self.s, self.degree(self.s), self.component(self.s)):
            raise ContractError("not an r-cycle: hd y^s != 0 (k = -1)")
        for k in range(self.r - 1):
            c = self.s + k
            lhs = ss._cd(c, self.degree(c), self.component(c))
            rhs = ss._hd(c + 1, self.degree(c + 1), self.component(c + 1))
            if lhs != rhs:
                raise ContractError(f"not an r-cycle: cd y^{c} != hd y^{c + 1} (k = {k})")

    def __add__(self, other: "RCycle") -> "RCycle":
        if other.host is not self.host or (other.r, other.s, other.t) != (self.r, self.s, self.t):
            raise ContractError("cycles live in different places")
        comps = {c: self.component(c) ^ other.component(c) for c in self.columns()}
        return RCycle(self.host, self.r, self.s, self.t, {c: u for c, u in comps.items() if u})

    def is_zero(self) -> bool:
        return not any(self.comps.values())


def cycle_from_vector(host: Host, r: int, s: int, t: int, v: int, layout: Layout = None) -> RCycle:
    L = layout or host.ss.layout(s, r, t - s)
    comps = {}
    for c in range(s, s + r):
        u = L.comp(v, c)
        if u:
            comps[c] = u
    return RCycle(host, r, s, t, comps)


def iota(r: int, s: int, t: int, host: Host = None) -> RCycle:
    """The sum of id_[k], k = s .. s+r-1, in D_{rst}."""
    host = host or universal(r, s, t).host
    comps = {}
    for k in range(s, s + r):
        if host.C.dim(k, k + t - s):
            comps[k] = 1
    return RCycle(host, r, s, t, comps)


# -- representing maps ---------------------------------------------------------

class RepresentingMap(CosimplicialMap):
    """Psi_y: D_{rst} -> Y."""

    def __init__(self, y: RCycle, source: UniversalExample = None):
        y.check()
        D = source or UniversalExample(y.r, y.s, y.t)
        if (D.r, D.s, D.t) != (y.r, y.s, y.t):
            raise ContractError("source does not match the cycle")
        super().__init__(D, y.host.Y)
        self.y = y
        C = y.host.C
        self._lift = {k: C.normal_lift(k, y.degree(k), y.component(k)) for k in y.columns()}
        self._cache: dict = {}

    def image(self, p, lab):
        key = (p, lab)
        out = self._cache.get(key)
        if out is None:
            k = lab.bit_count() - 1
            base = self._lift.get(k, [])
            missing = [i for i in range(p + 1) if not (lab >> i) & 1]
            _, out = _cofaces(self.target, k, base, missing)
            self._cache[key] = out
        return out


def representing_map(y: RCycle) -> RepresentingMap:
    return RepresentingMap(y, universal(y.r, y.s, y.t).D if y.r >= 1 else None)


class PushForward:
    """C(e(f)) applied to vectors, one basis label at a time."""

    def __init__(self, f: CosimplicialMap, src: Conormalization, tgt: Conormalization, orbit: bool = True):
        self.f = OrbitMap(f, source=src.Y, target=tgt.Y) if orbit else f
        self.src, self.tgt = src, tgt
        self._cache: dict = {}

    def label(self, p: int, q: int, j: int) -> int:
        key = (p, q, j)
        out = self._cache.get(key)
        if out is None:
            lab = self.src.basis(p, q)[j]
            out = self.tgt.reduce_labels(p, q, self.f.image(p, lab))
            self._cache[key] = out
        return out

    def apply(self, p: int, q: int, u: int) -> int:
        out = 0
        for j in bits(u):
            out ^= self.label(p, q, j)
        return out

    def apply_layout(self, v: int, L: Layout, M: Layout) -> int:
        out = 0
        for c in range(L.c0, L.c0 + L.w):
            u = L.comp(v, c)
            if u and M.c0 <= c < M.c0 + M.w:
                out |= M.put(self.apply(c, L.n + c, u), c)
        return out


def orbit_pushforward(y: RCycle) -> PushForward:
    U = universal(y.r, y.s, y.t)
    return PushForward(representing_map(y), U.host.Ce, y.host.Ce)


# -- results -------------------------------------------------------------------

@dataclass
class OpResult:
    """A class of E^page(e(Y)) (or of Y for internal operations) at column col
    and internal degree q, as coordinates in the entry's representatives."""

    page: int
    col: int
    q: int
    coords: int
    dim: int
    rep: int = 0
    diagnostic: Optional["OpResult"] = None

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (-self.col, self.q)

    @property
    def zero(self) -> bool:
        return self.coords == 0


def _class_in(ss: SpectralSequence, page: int, col: int, q: int, v: int, L: Layout) -> OpResult:
    e = ss.entry(page, col, q)
    w = e.layout.project(v, L)
    return OpResult(page, col, q, e.coords(w), e.dim, w)


def _push_xi(y: RCycle, page: int, col: int, q: int, push: PushForward = None) -> OpResult:
    U = universal(y.r, y.s, y.t)
    src = U.xi(page, col, q)
    push = push or orbit_pushforward(y)
    tgt = y.host.ess.entry(page, col, q)
    v = push.apply_layout(src.reps[0], src.layout, tgt.layout)
    return OpResult(page, col, q, tgt.coords(v), tgt.dim, v)


def w_page(r: int, s: int, t: int, m: int) -> int:
    """Page on which the horizontal operation of index m is well defined."""
    if not t - s <= m <= t:
        raise ContractError(f"m = {m} is outside [{t - s}, {t}]")
    if m == t - s:
        return r
    if m <= t - r + 2:
        return 2 * r - 2
    return r + t - m


def external_vertical(y: RCycle, m: int, page: int = None, push: PushForward = None) -> OpResult:
    """preQ_v^m(y) in E^r_{-s,m+t}(e(Y)) (or on a later page when asked)."""
    if m < y.t:
        raise ContractError(f"vertical operations need m >= t = {y.t}")
    return _push_xi(y, page or y.r, y.s, m + y.t, push)


def external_horizontal(y: RCycle, m: int, page: int = None, push: PushForward = None) -> OpResult:
    """preQ_h^m(y) at (m-s-t, 2t), at page w(m) unless another page is given;
    the page-r value is kept as the diagnostic."""
    w = w_page(y.r, y.s, y.t, m)
    col = y.s + y.t - m
    push = push or orbit_pushforward(y)
    res = _push_xi(y, page or w, col, 2 * y.t, push)
    if res.page != y.r:
        res.diagnostic = _push_xi(y, y.r, col, 2 * y.t, push)
    return res


def external_op(y: RCycle, m: int, push: PushForward = None) -> OpResult:
    """Vertical for m > t, horizontal for t-s <= m <= t."""
    if m > y.t:
        return external_vertical(y, m, push=push)
    return external_horizontal(y, m, push=push)


# -- the external product ------------------------------------------------------

def _aw_pair(host: Host, a: int, qa: int, x: int, b: int, qb: int, z: int) -> list:
    """Labels of Y (x) Y at level a+b for AW of x (column a) and z (column b),
    using normalized lifts."""
    Y = host.Y
    p = a + b
    lx = host.C.normal_lift(a, qa, x)
    lz = host.C.normal_lift(b, qb, z)
    _, fx = _cofaces(Y, a, lx, range(a + 1, p + 1))
    _, fz = _cofaces(Y, b, lz, range(0, a))
    return mod2((u, v) for u in fx for v in fz)


def product_vector(x: RCycle, y: RCycle, layout: Layout) -> int:
    """inc AW (x (x) y) projected to the given layout of C(e(Y))."""
    host = x.host
    out = 0
    lo, hi = layout.c0, layout.c0 + layout.w - 1
    for a in x.columns():
        u = x.component(a)
        if not u:
            continue
        for b in y.columns():
            z = y.component(b)
            if not z or not lo <= a + b <= hi:
                continue
            pairs = _aw_pair(host, a, x.degree(a), u, b, y.degree(b), z)
            q = x.degree(a) + y.degree(b)
            out ^= layout.put(host.Ce.reduce_labels(a + b, q, host.inc_labels(pairs)), a + b)
    return out


def external_product(x: RCycle, y: RCycle) -> OpResult:
    """mu_r([x], [y]) in E^r(e(Y)) at (-(s+s'), t+t')."""
    if x.host is not y.host:
        raise ContractError("the product needs both cycles in the same host")
    if x.r != y.r:
        raise ContractError("the product needs cycles on the same page")
    if x.r < 2:
        raise ContractError("the product is defined from page 2 on")
    r = x.r
    col, q = x.s + y.s, x.t + y.t
    e = x.host.ess.entry(r, col, q)
    v = product_vector(x, y, e.layout)
    return OpResult(r, col, q, e.coords(v), e.dim, v)


# -- internal operations -------------------------------------------------------

def internal_op(theta: CosimplicialMap, m: int, y: RCycle) -> OpResult:
    """Q^m[y] = E(theta) applied to the external operation, in E(Y)."""
    host = y.host
    if theta.source is not host.eY and not isinstance(theta.source, HomotopyOrbit):
        raise ContractError("theta must be defined on e(Y)")
    ext = external_op(y, m)
    push = PushForward(theta, host.Ce, host.C, orbit=False)
    src = host.ess.entry(ext.page, ext.col, ext.q)
    tgt = host.ss.entry(ext.page, ext.col, ext.q)
    v = push.apply_layout(ext.rep, src.layout, tgt.layout)
    return OpResult(ext.page, ext.col, ext.q, tgt.coords(v), tgt.dim, v)


def structure_map(host: Host, fn) -> CosimplicialMap:
    """theta: e(Y) -> Y from a function (p, label of e(Y)) -> labels of Y."""
    return CosimplicialMap(host.eY, host.Y, fn)


# -- sampling ------------------------------------------------------------------

def random_cycle(host: Host, r: int, s: int, t: int, rng: random.Random) -> RCycle:
    basis = host.ss.tower(s, t - s, r)
    v = 0
    for z in basis:
        if rng.getrandbits(1):
            v ^= z
    return cycle_from_vector(host, r, s, t, v)


def random_lower(host: Host, r: int, s: int, t: int, rng: random.Random) -> RCycle:
    """A sample of Z^{r-1}_{-s-1,t+1}, seen as an r-cycle at (-s, t)."""
    if r < 2:
        return RCycle(host, r, s, t, {})
    basis = host.ss.tower(s + 1, t - s, r - 1)
    L = host.ss.layout(s + 1, r - 1, t - s)
    v = 0
    for z in basis:
        if rng.getrandbits(1):
            v ^= z
    comps = {c: L.comp(v, c) for c in range(s + 1, s + r) if L.comp(v, c)}
    return RCycle(host, r, s, t, comps)


def random_column_boundary(host: Host, r: int, s: int, t: int, rng: random.Random) -> RCycle:
    """The boundary of a random element of C(Y)(s, t+1): a sample of dF^{-s}."""
    n = t - s
    ss = host.ss
    d = host.C.dim(s, t + 1)
    u = rng.getrandbits(d) if d else 0
    src = ss.layout(s, 1, n + 1)
    L = ss.layout(s, r, n)
    return cycle_from_vector(host, r, s, t, ss.boundary(src, src.put(u, s), L), L)


def random_boundary(host: Host, r: int, s: int, t: int, rng: random.Random) -> RCycle:
    """A sample of B^r_{-s,t}: the boundary of y in Z^{r-1} starting at
    column s-r+1 (with an arbitrary part in columns >= s), plus an element of
    Z^{r-1}_{-s-1,t+1}."""
    n = t - s
    ss = host.ss
    start = max(0, s - r + 1)
    L = ss.layout(s, r, n)
    v = 0
    if start < s:
        Lz = ss.layout(start, s - start, n + 1)
        for z in ss.tower(start, n + 1, s - start):
            if rng.getrandbits(1):
                v ^= ss.boundary(Lz, z, L)
    Lf = ss.layout(s, r, n + 1)
    if Lf.total:
        v ^= ss.boundary(Lf, rng.getrandbits(Lf.total), L)
    low = random_lower(host, r, s, t, rng)
    return cycle_from_vector(host, r, s, t, v, L) + low


def random_host(rng: random.Random, r: int, s: int, t: int, boundaries: bool = False) -> Host:
    """A small monomial host containing D_{rst} and one or two other summands
    chosen near (r, s, t). With boundaries=True a summand is added whose
    cycles have nonzero boundaries at (-s, t)."""
    parts: List[Cosimplicial] = [UniversalExample(r, s, t)]
    menu = [
        lambda: UniversalExample(max(1, r - 1), s + 1, t + 1),
        lambda: UniversalExample(r, max(0, s - 1), max(max(0, s - 1), t - 1)),
        lambda: UniversalExample(1, s, t),
        lambda: VSquare(s, t),
        lambda: UniversalExample(r, s, t),
        lambda: suspend(UniversalExample(max(1, r - 1), s, s), t - s),
    ]
    for _ in range(rng.randint(1, 2)):
        parts.append(rng.choice(menu)())
    if boundaries:
        extra = []
        if s >= r - 1 and r >= 2:
            extra.append(lambda: UniversalExample(r - 1, s + 1 - r, t - r + 2))
        if s >= 1:
            extra.append(lambda: UniversalExample(1, s - 1, t))
        extra.append(lambda: VSquare(s, t))
        parts.append(rng.choice(extra)())
    return Host(DirectSum(parts))


# -- well-definedness and sharpness --------------------------------------------

def _add(a: OpResult, b: OpResult) -> int:
    return a.coords ^ b.coords


def welldefinedness_suite(r: int, s: int, t: int, seed: int = 0, hosts: int = 3, samples: int = 3,
                          vertical_range: int = 2) -> dict:
    """Operations of boundaries: vertical ones vanish at page r, horizontal
    ones at page w(m). Returns {cases, failures}."""
    rng = random.Random(seed)
    cases, failures = 0, []
    for h in range(hosts):
        host = random_host(rng, r, s, t, boundaries=True)
        for k in range(samples):
            b = random_boundary(host, r, s, t, rng)
            push = orbit_pushforward(b)
            for m in range(t, t + vertical_range + 1):
                cases += 1
                res = external_vertical(b, m, push=push)
                if not res.zero:
                    failures.append({"host": repr(host.Y), "sample": k, "kind": "vertical", "m": m})
            for m in range(t - s, t + 1):
                cases += 1
                res = external_horizontal(b, m, push=push)
                if not res.zero:
                    failures.append({"host": repr(host.Y), "sample": k, "kind": "horizontal", "m": m,
                                     "page": res.page})
    return {"suite": "welldefined", "r": r, "s": s, "t": t, "cases": cases, "failures": failures}


def sharpness_example(r: int, s: int) -> dict:
    """Y = D_{r-1,s+1-r,s-r+2}, y = iota, b = boundary of y at (-s, s).

    The horizontal operations of b are nonzero at page w(m)-1 and zero at
    page w(m). Returns a table per m plus the failures."""
    if s < r - 1 or r < 2:
        raise ContractError("the example needs r >= 2 and s >= r-1")
    t = s
    Y = UniversalExample(r - 1, s + 1 - r, s - r + 2)
    host = Host(Y)
    y = iota(r - 1, s + 1 - r, s - r + 2, host=host)
    ss = host.ss
    Ly = y.layout()
    L = ss.layout(s, r, t - s)
    b = cycle_from_vector(host, r, s, t, ss.boundary(Ly, y.vector(), L), L)
    push = orbit_pushforward(b)
    rows, failures = [], []
    for m in range(t - s, t + 1):
        w = w_page(r, s, t, m)
        before = external_horizontal(b, m, page=w - 1, push=push)
        at = external_horizontal(b, m, page=w, push=push)
        rows.append({"m": m, "w": w, "before": int(not before.zero), "at": int(not at.zero),
                     "bidegree": list(at.bidegree)})
        if before.zero or not at.zero:
            failures.append({"m": m, "w": w})
    return {"suite": "sharpness", "r": r, "s": s, "t": t, "rows": rows, "failures": failures}
