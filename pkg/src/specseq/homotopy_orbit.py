"""The group of order two acting by swapping tensor factors.

W is the free resolution with e_i and its swap in each degree i and
d(e_i) = (1 + sigma) e_{i-1}. The homotopy orbits e(Y) = W (x)_pi (Y (x) Y)
have, in each degree i of W, one basis vector e_i (x) a (x) b for every
ordered pair of basis labels (a, b); the label sigma e_i (x) a (x) b is the
same vector as e_i (x) b (x) a. Labels are triples (i, a, b).

Also here: the row complexes Upsilon_{s,s'} and their quotients and
subcomplexes under the swap, and the chain level q^m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Optional, Sequence

from .cosimplicial import (
    Bicomplex,
    ContractError,
    Cosimplicial,
    CosimplicialMap,
    DirectSum,
    Tensor,
    full_mask,
    mod2,
    toggle,
)
from .f2linalg import Echelon, apply_images, bits, kernel_of_images, rank_of, subquotient_rows
from .simplex_chains import ChainComplex, based_words, chain_complex, homology


# -- the resolution W ----------------------------------------------------------

@dataclass(frozen=True)
class WResolution:
    """Degrees 0..M, basis (i, 0) = e_i and (i, 1) = sigma e_i."""

    M: int

    def __post_init__(self):
        if self.M < 0:
            raise ContractError("W cap must be nonnegative")

    def basis(self, i: int) -> tuple:
        if 0 <= i <= self.M:
            return ((i, 0), (i, 1))
        return ()

    def boundary(self, lab) -> list:
        i, _ = lab
        if i == 0:
            return []
        return [(i - 1, 0), (i - 1, 1)]

    def sigma(self, lab):
        return (lab[0], 1 - lab[1])

    def chain_complex(self) -> ChainComplex:
        return chain_complex({i: self.basis(i) for i in range(self.M + 1)}, self.boundary)

    def trivial_coinvariants(self) -> ChainComplex:
        """W (x)_pi K with trivial action: one generator per degree, d = 0."""
        return chain_complex({i: ((i,),) for i in range(self.M + 1)}, lambda lab: [(lab[0] - 1,), (lab[0] - 1,)])


def w_resolution(M: int) -> WResolution:
    return WResolution(M)


@dataclass
class PiComplex:
    """A chain complex with an involution sigma given by images per degree."""

    complex: ChainComplex
    sigma: Dict[int, tuple]

    def check(self) -> None:
        C = self.complex
        for q in C.degrees():
            s = self.sigma.get(q, ())
            if [apply_images(s, v) for v in s] != [1 << j for j in range(C.dim(q))]:
                raise ContractError(f"sigma is not an involution in degree {q}")
            lhs = [apply_images(C.boundary_images(q), v) for v in s]
            rhs = [apply_images(self.sigma.get(q - 1, ()), v) for v in C.boundary_images(q)]
            if lhs != rhs:
                raise ContractError(f"sigma does not commute with the boundary in degree {q}")


def swap_pi_complex(C: ChainComplex) -> PiComplex:
    """C (x) C with the factor swap."""
    T = tensor_chain_complex(C, C)
    sigma = {}
    for q in T.degrees():
        ix = T.index(q)
        sigma[q] = tuple(1 << ix[(b, a)] for a, b in T.basis(q))
    return PiComplex(T, sigma)


# -- orbit complexes of plain chain complexes ----------------------------------

def _degrees_of(C: ChainComplex) -> dict:
    return {lab: q for q in C.degrees() for lab in C.basis(q)}


def _bd_labels(C: ChainComplex, q: int, lab) -> list:
    below = C.basis(q - 1)
    return [below[j] for j in bits(C.boundary_images(q)[C.index(q)[lab]])]


def tensor_chain_complex(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    da, db = _degrees_of(A), _degrees_of(B)
    labels: Dict[int, list] = {}
    for qa in A.degrees():
        for qb in B.degrees():
            labels.setdefault(qa + qb, []).extend((a, b) for a in A.basis(qa) for b in B.basis(qb))

    def bd(lab):
        a, b = lab
        return [(x, b) for x in _bd_labels(A, da[a], a)] + [(a, y) for y in _bd_labels(B, db[b], b)]

    return chain_complex(labels, bd)


def orbit_chain_complex(C: ChainComplex, M: int) -> ChainComplex:
    """W_{<=M} (x)_pi (C (x) C) on ordered-pair labels (i, a, b)."""
    deg = _degrees_of(C)
    labels: Dict[int, list] = {}
    for i in range(M + 1):
        for qa in C.degrees():
            for qb in C.degrees():
                labels.setdefault(i + qa + qb, []).extend((i, a, b) for a in C.basis(qa) for b in C.basis(qb))

    def bd(lab):
        i, a, b = lab
        out = []
        if i > 0:
            out += [(i - 1, a, b), (i - 1, b, a)]
        out += [(i, x, b) for x in _bd_labels(C, deg[a], a)]
        out += [(i, a, y) for y in _bd_labels(C, deg[b], b)]
        return out

    return chain_complex(labels, bd)


def mayonethree_dims(K_dims: Dict[int, int], nmax: int) -> Dict[int, int]:
    """Homology dims of W (x)_pi (K (x) K) for K with zero differential.

    Each basis vector a gives a class e_m (x) a (x) a in every degree
    2|a| + m, and each pair a < b gives e_0 (x) a (x) b.
    """
    out = {n: 0 for n in range(nmax + 1)}
    flat = [d for d, n in sorted(K_dims.items()) for _ in range(n)]
    for d in flat:
        for n in range(2 * d, nmax + 1):
            out[n] += 1
    for i in range(len(flat)):
        for j in range(i + 1, len(flat)):
            n = flat[i] + flat[j]
            if n <= nmax:
                out[n] += 1
    return out


def q_chain(m: int, C: ChainComplex, q: int, c: int) -> dict:
    """q^m(c) = e_{m-|c|} (x) c (x) c + e_{m+1-|c|} (x) c (x) dc on ordered pairs.

    c is a vector in degree q; returns a dict {(i, a, b): None} (a mod-2 set).
    Terms with negative e-index vanish.
    """
    labs = [C.basis(q)[j] for j in bits(c)]
    dc = [C.basis(q - 1)[j] for j in bits(apply_images(C.boundary_images(q), c))] if q - 1 in C.labels else []
    acc: dict = {}
    i0 = m - q
    if i0 >= 0:
        toggle(acc, ((i0, a, b) for a in labs for b in labs))
    if i0 + 1 >= 0:
        toggle(acc, ((i0 + 1, a, b) for a in labs for b in dc))
    return acc


def orbit_boundary(C: ChainComplex, elem: dict) -> dict:
    """Boundary in W (x)_pi (C (x) C) of a mod-2 set of labels (i, a, b), no W cap."""
    deg = _degrees_of(C)
    acc: dict = {}
    for i, a, b in elem:
        if i > 0:
            toggle(acc, [(i - 1, a, b), (i - 1, b, a)])
        toggle(acc, ((i, x, b) for x in _bd_labels(C, deg[a], a)))
        toggle(acc, ((i, a, y) for y in _bd_labels(C, deg[b], b)))
    return acc


# -- homotopy orbits of cosimplicial objects ------------------------------------

class HomotopyOrbit(Cosimplicial):
    """e(Y) = W (x)_pi (Y (x) Y) with W truncated at M (None: no truncation)."""

    def __init__(self, Y: Cosimplicial, M: Optional[int] = None):
        self.Y = Y
        self.M = M
        self.YY = Tensor(Y, Y)
        self.monomial = Y.monomial
        self.level_cap = Y.level_cap
        self._cache: dict = {}

    def __repr__(self):
        return f"e({self.Y!r})"

    def degree_range(self, p):
        lo, hi = self.YY.degree_range(p)
        if hi is not None and hi < lo:
            return (0, -1)
        if self.M is None or hi is None:
            return (lo, None)
        return (lo, hi + self.M)

    def _irange(self, p, q):
        lo, hi = self.YY.degree_range(p)
        if hi is not None and hi < lo:
            return range(0)
        top = q - lo
        if self.M is not None:
            top = min(top, self.M)
        bot = 0 if hi is None else max(0, q - hi)
        return range(bot, top + 1)

    def degree(self, p, lab):
        i, a, b = lab
        return i + self.Y.degree(p, a) + self.Y.degree(p, b)

    def labels(self, p, q):
        key = ("L", p, q)
        out = self._cache.get(key)
        if out is None:
            out = tuple((i, a, b) for i in self._irange(p, q) for a, b in self.YY.labels(p, q - i))
            self._cache[key] = out
        return out

    def boundary(self, p, lab):
        i, a, b = lab
        out = []
        if i > 0:
            out += [(i - 1, a, b), (i - 1, b, a)]
        Y = self.Y
        out += [(i, x, b) for x in Y.boundary(p, a)]
        out += [(i, a, y) for y in Y.boundary(p, b)]
        return out

    def coface(self, k, p, lab):
        i, a, b = lab
        Y = self.Y
        fb = Y.coface(k, p, b)
        return [(i, x, y) for x in Y.coface(k, p, a) for y in fb]

    def codegeneracy(self, j, p, lab):
        i, a, b = lab
        Y = self.Y
        fb = Y.codegeneracy(j, p, b)
        return [(i, x, y) for x in Y.codegeneracy(j, p, a) for y in fb]

    def hit(self, p, lab):
        return self.Y.hit(p, lab[1]) & self.Y.hit(p, lab[2])

    def conormal_labels(self, p, q):
        key = ("C", p, q)
        out = self._cache.get(key)
        if out is None:
            out = tuple((i, a, b) for i in self._irange(p, q) for a, b in self.YY.conormal_labels(p, q - i))
            self._cache[key] = out
        return out

    def labels_by_hit(self, p, q):
        out: dict = {}
        for lab in self.labels(p, q):
            out.setdefault(self.hit(p, lab), []).append(lab)
        return out

    def max_column(self):
        return self.YY.max_column()

    def sigma(self, lab):
        """The swap: sigma (e_i (x) a (x) b) = e_i (x) b (x) a (after relabelling W)."""
        i, a, b = lab
        return (i, b, a)


def homotopy_orbit(Y: Cosimplicial, M: Optional[int] = None) -> HomotopyOrbit:
    return HomotopyOrbit(Y, M)


def orbit_label(lab) -> tuple:
    """Rewrite (i, a, b) with representatives a <= b: returns (i, twisted, a, b)
    where twisted=1 means sigma e_i (x) a (x) b."""
    i, a, b = lab
    if b < a:
        return (i, 1, b, a)
    return (i, 0, a, b)


class OrbitMap(CosimplicialMap):
    """e(f): e_i (x) a (x) b -> e_i (x) f(a) (x) f(b)."""

    def __init__(self, f: CosimplicialMap, M: Optional[int] = None,
                 source: HomotopyOrbit = None, target: HomotopyOrbit = None):
        super().__init__(source or HomotopyOrbit(f.source, M), target or HomotopyOrbit(f.target, M))
        self.f = f

    def image(self, p, lab):
        i, a, b = lab
        fb = self.f.image(p, b)
        return [(i, x, y) for x in self.f.image(p, a) for y in fb]


class OrbitBicomplex(Bicomplex):
    """W (x)_pi B for a bicomplex B with a label involution; W in the vertical
    (internal) direction. Labels (i, x)."""

    def __init__(self, B: Bicomplex, swap, M: Optional[int] = None):
        self.B, self.swap, self.M = B, swap, M

    def max_column(self):
        return self.B.max_column()

    def available(self, p):
        return self.B.available(p)

    def degree_range(self, p):
        lo, hi = self.B.degree_range(p)
        return (lo, None if hi is None or self.M is None else hi + self.M)

    def _irange(self, p, q):
        lo, hi = self.B.degree_range(p)
        top = q - lo if self.M is None else min(q - lo, self.M)
        bot = 0 if hi is None else max(0, q - hi)
        return range(bot, top + 1)

    def basis(self, p, q):
        if p < 0:
            return ()
        return tuple((i, x) for i in self._irange(p, q) for x in self.B.basis(p, q - i))

    def hd(self, p, q):
        ix = self.index(p, q - 1)
        B = self.B
        out = []
        for i, x in self.basis(p, q):
            v = 0
            if i > 0:
                v ^= 1 << ix[(i - 1, x)]
                v ^= 1 << ix[(i - 1, self.swap(x))]
            below = B.basis(p, q - i - 1)
            for j in bits(B.hd(p, q - i)[B.index(p, q - i)[x]]):
                v ^= 1 << ix[(i, below[j])]
            out.append(v)
        return out

    def cd(self, p, q):
        ix = self.index(p + 1, q)
        B = self.B
        out = []
        for i, x in self.basis(p, q):
            v = 0
            nxt = B.basis(p + 1, q - i)
            for j in bits(B.cd(p, q - i)[B.index(p, q - i)[x]]):
                v ^= 1 << ix[(i, nxt[j])]
            out.append(v)
        return out


# -- W (x) X (x) Y and the sum splitting ---------------------------------------

class WTensor(Cosimplicial):
    """W_{<=M} (x) X (x) Y without coinvariants; labels (i, e, a, b), e in {0, 1}."""

    def __init__(self, X: Cosimplicial, Y: Cosimplicial, M: Optional[int] = None):
        self.X, self.Y, self.M = X, Y, M
        self.XY = Tensor(X, Y)
        self.monomial = self.XY.monomial
        self.level_cap = self.XY.level_cap

    def degree_range(self, p):
        lo, hi = self.XY.degree_range(p)
        if hi is not None and hi < lo:
            return (0, -1)
        return (lo, None if hi is None or self.M is None else hi + self.M)

    def degree(self, p, lab):
        return lab[0] + self.XY.degree(p, (lab[2], lab[3]))

    def labels(self, p, q):
        lo, hi = self.XY.degree_range(p)
        top = q - lo if self.M is None else min(q - lo, self.M)
        bot = 0 if hi is None else max(0, q - hi)
        return tuple((i, e, a, b) for i in range(bot, top + 1) for e in (0, 1)
                     for a, b in self.XY.labels(p, q - i))

    def boundary(self, p, lab):
        i, e, a, b = lab
        out = [(i - 1, 0, a, b), (i - 1, 1, a, b)] if i > 0 else []
        return out + [(i, e, x, y) for x, y in self.XY.boundary(p, (a, b))]

    def coface(self, k, p, lab):
        i, e, a, b = lab
        return [(i, e, x, y) for x, y in self.XY.coface(k, p, (a, b))]

    def codegeneracy(self, j, p, lab):
        i, e, a, b = lab
        return [(i, e, x, y) for x, y in self.XY.codegeneracy(j, p, (a, b))]

    def hit(self, p, lab):
        return self.XY.hit(p, (lab[2], lab[3]))

    def conormal_labels(self, p, q):
        lo, hi = self.XY.degree_range(p)
        top = q - lo if self.M is None else min(q - lo, self.M)
        bot = 0 if hi is None else max(0, q - hi)
        return tuple((i, e, a, b) for i in range(bot, top + 1) for e in (0, 1)
                     for a, b in self.XY.conormal_labels(p, q - i))

    def max_column(self):
        return self.XY.max_column()


@dataclass
class SumSplit:
    """e(X + Y) and e(X) + e(Y) + W (x) X (x) Y with mutually inverse maps."""

    source: HomotopyOrbit
    target: DirectSum
    forward: CosimplicialMap
    backward: CosimplicialMap


def sum_split(X: Cosimplicial, Y: Cosimplicial, M: Optional[int] = None) -> SumSplit:
    if X.level_cap != Y.level_cap:
        raise ContractError("summands must have equal level caps")
    S = HomotopyOrbit(DirectSum([X, Y]), M)
    T = DirectSum([HomotopyOrbit(X, M), HomotopyOrbit(Y, M), WTensor(X, Y, M)])

    def fwd(p, lab):
        i, (n, a), (m, b) = lab
        if n == m:
            return [(n, (i, a, b))]
        if n == 0:
            return [(2, (i, 0, a, b))]
        return [(2, (i, 1, b, a))]

    def bwd(p, lab):
        n, inner = lab
        if n < 2:
            i, a, b = inner
            return [(i, (n, a), (n, b))]
        i, e, a, b = inner
        if e == 0:
            return [(i, (0, a), (1, b))]
        return [(i, (1, b), (0, a))]

    return SumSplit(S, T, CosimplicialMap(S, T, fwd), CosimplicialMap(T, S, bwd))


def diagonal_map(Y: Cosimplicial) -> CosimplicialMap:
    """Y -> Y + Y, a -> (a, a)."""
    return CosimplicialMap(Y, DirectSum([Y, Y]), lambda p, lab: [(0, lab), (1, lab)])


# -- cochain complexes of rows --------------------------------------------------

@dataclass
class CochainComplex:
    """labels[p] ordered basis in degree p; images[p][j] the coboundary of basis
    vector j over labels[p+1]."""

    labels: Dict[int, tuple]
    images: Dict[int, list]
    _index: dict = field(default_factory=dict, repr=False)

    def degrees(self) -> list:
        return sorted(p for p, b in self.labels.items() if b)

    def dim(self, p: int) -> int:
        return len(self.labels.get(p, ()))

    def index(self, p: int) -> dict:
        ix = self._index.get(p)
        if ix is None:
            ix = {lab: j for j, lab in enumerate(self.labels.get(p, ()))}
            self._index[p] = ix
        return ix

    def coboundary(self, p: int) -> list:
        return self.images.get(p, [0] * self.dim(p))

    def check(self) -> None:
        for p in self.degrees():
            nxt = self.coboundary(p + 1)
            if any(apply_images(nxt, v) for v in self.coboundary(p)):
                raise ContractError(f"coboundary squares to nonzero at {p}")

    def cohomology(self) -> Dict[int, tuple]:
        """p -> (dim, representative rows over labels[p])."""
        out = {}
        for p in self.degrees():
            cyc = kernel_of_images(self.coboundary(p))
            bnd = list(self.coboundary(p - 1)) if self.dim(p - 1) else []
            reps = subquotient_rows(cyc, bnd)
            out[p] = (len(reps), reps)
        return out

    def cohomology_dims(self) -> Dict[int, int]:
        return {p: h[0] for p, h in self.cohomology().items() if h[0]}


def cochain_complex(labels: Dict[int, Sequence], cobd) -> CochainComplex:
    labels = {p: tuple(b) for p, b in labels.items() if len(b)}
    index = {p: {lab: j for j, lab in enumerate(b)} for p, b in labels.items()}
    images = {}
    for p, b in labels.items():
        above = index.get(p + 1, {})
        imgs = []
        for lab in b:
            v = 0
            for f in cobd(lab):
                j = above.get(f)
                if j is not None:
                    v ^= 1 << j
            imgs.append(v)
        images[p] = imgs
    return CochainComplex(labels, images)


def subcomplex(C: CochainComplex, spans: Dict[int, Iterable[int]]) -> CochainComplex:
    """Subcomplex with basis the reduced echelon rows of the given spans."""
    labels, images, ech = {}, {}, {}
    for p in C.degrees():
        e = Echelon()
        for v in spans.get(p, ()):
            e.add(v)
        rows = e.reduced_rows()
        labels[p] = tuple(rows)
        e2 = Echelon()
        for j, r in enumerate(rows):
            e2.add(r, 1 << j)
        ech[p] = e2
    for p in C.degrees():
        out = []
        for r in labels[p]:
            w = apply_images(C.coboundary(p), r)
            if p + 1 not in ech:
                if w:
                    raise ContractError("span is not closed under the coboundary")
                out.append(0)
                continue
            res, tag = ech[p + 1].reduce(w)
            if res:
                raise ContractError("span is not closed under the coboundary")
            out.append(tag)
        images[p] = out
    return CochainComplex(labels, images)


def quotient_complex(C: CochainComplex, spans: Dict[int, Iterable[int]]) -> CochainComplex:
    """C modulo a subcomplex; basis = standard vectors off the echelon pivots."""
    labels, images, red = {}, {}, {}
    for p in C.degrees():
        e = Echelon()
        for v in spans.get(p, ()):
            e.add(v)
        rows = e.reduced_rows()
        piv = {r & -r: r for r in rows}
        keep = [j for j in range(C.dim(p)) if (1 << j) not in piv]
        labels[p] = tuple(C.labels[p][j] for j in keep)
        red[p] = (piv, {j: n for n, j in enumerate(keep)})

    def project(p, v):
        piv, comp = red[p]
        for low, r in piv.items():
            if v & low:
                v ^= r
        out = 0
        for j in bits(v):
            out |= 1 << comp[j]
        return out

    for p in C.degrees():
        _, comp = red[p]
        out = []
        for j in comp:
            w = apply_images(C.coboundary(p), 1 << j)
            out.append(project(p + 1, w) if p + 1 in red else 0)
        images[p] = out
    return CochainComplex(labels, images)


def _d0_class(z: int, s: int, p: int) -> list:
    """d^0 of a based injection word [s] -> [p], rewritten in the based basis
    of H_s at level p + 1."""
    w = z << 1
    if s == 0:
        return [1]
    pts = list(bits(w))
    return [1 | (w ^ (1 << x)) for x in pts]


def upsilon_labels(s: int, s2: int, p: int) -> tuple:
    full = (1 << (p + 1)) - 1
    return tuple((a, b) for a in based_words(s, p) for b in based_words(s2, p) if a | b == full)


def upsilon(s: int, s2: int) -> CochainComplex:
    """Upsilon_{s,s'}: covering pairs of based injections, coboundary from d^0."""
    if s < 0 or s2 < 0:
        raise ContractError("s and s' must be nonnegative")
    labels = {p: upsilon_labels(s, s2, p) for p in range(max(s, s2), s + s2 + 1)}

    def cobd(lab):
        a, b = lab
        p = max(a.bit_length(), b.bit_length()) - 1
        da, db = _d0_class(a, s, p), _d0_class(b, s2, p)
        return mod2((x, y) for x in da for y in db)

    # labels only record words; pairs at level p have top bit p set
    return cochain_complex(labels, cobd)


def swap_images(U: CochainComplex) -> Dict[int, list]:
    return {p: [1 << U.index(p)[(b, a)] for a, b in U.labels[p]] for p in U.degrees()}


def omega_bar(s: int) -> CochainComplex:
    """Upsilon_{s,s} modulo the swap, on orbit labels (a, b) with a <= b."""
    U = upsilon(s, s)
    labels = {p: tuple(lab for lab in U.labels[p] if lab[0] <= lab[1]) for p in U.degrees()}
    im = {}
    for p in U.degrees():
        ix_up = U.labels.get(p + 1, ())
        rows = []
        for a, b in labels[p]:
            v = U.coboundary(p)[U.index(p)[(a, b)]]
            acc: dict = {}
            toggle(acc, (tuple(sorted(ix_up[j])) for j in bits(v)))
            rows.append(list(acc))
        im[p] = rows
    idx = {p: {lab: j for j, lab in enumerate(labels[p])} for p in labels}
    images = {}
    for p in labels:
        out = []
        for row in im[p]:
            w = 0
            for lab in row:
                w ^= 1 << idx[p + 1][lab]
            out.append(w)
        images[p] = out
    return CochainComplex(labels, images)


def omega_tilde_A(s: int):
    """(Omega-tilde, A) as subcomplexes of Upsilon_{s,s}: ker(1+sigma) and
    im(1+sigma)."""
    U = upsilon(s, s)
    sw = swap_images(U)
    img, ker = {}, {}
    for p in U.degrees():
        n = U.dim(p)
        one_plus = [(1 << j) ^ sw[p][j] for j in range(n)]
        img[p] = [v for v in one_plus if v]
        ker[p] = kernel_of_images(one_plus)
    return subcomplex(U, ker), subcomplex(U, img)


def A_spans(s: int) -> Dict[int, list]:
    U = upsilon(s, s)
    sw = swap_images(U)
    return {p: [v for v in ((1 << j) ^ sw[p][j] for j in range(U.dim(p))) if v] for p in U.degrees()}


def inclusion_on_top_cohomology(s: int) -> list:
    """Images in H^{2s}(Upsilon_{s,s}) of a basis of H^{2s}(A), as coordinate
    bitmasks; all zero exactly when the induced map vanishes."""
    U = upsilon(s, s)
    _, A = omega_tilde_A(s)
    p = 2 * s
    HA = A.cohomology().get(p, (0, []))[1]
    HU = U.cohomology().get(p, (0, []))[1]
    bnd = list(U.coboundary(p - 1)) if U.dim(p - 1) else []
    e = Echelon()
    for v in bnd:
        e.add(v)
    for j, r in enumerate(HU):
        e.add(r, 1 << j)
    out = []
    for rep in HA:
        amb = 0
        for j in bits(rep):
            amb ^= A.labels[p][j]
        res, tag = e.reduce(amb)
        if res:
            raise ContractError("cocycle image is not a cocycle")
        out.append(tag)
    return out


def exactness_ranks(s: int) -> dict:
    """Rank bookkeeping for 0 -> A -> Upsilon -> Omega-bar -> 0 and
    0 -> Omega-tilde -> Upsilon -> A -> 0 in each degree."""
    U = upsilon(s, s)
    Ot, A = omega_tilde_A(s)
    Ob = omega_bar(s)
    return {p: (U.dim(p), A.dim(p), Ob.dim(p), Ot.dim(p)) for p in U.degrees()}
