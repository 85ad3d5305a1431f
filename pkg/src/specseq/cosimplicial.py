"""Cosimplicial chain complexes over GF(2) and their conormalization.

Objects are described at the level of basis labels. For every level p and
internal degree q an object lists its basis labels, and it gives the boundary,
cofaces and codegeneracies of a single label as a list of labels (repeats
cancel in pairs).

Objects built from injections (the universal examples, tensor products,
homotopy orbits, direct sums of these) are "monomial": every coface d^k with
k >= 1 sends a label to a single label. For them the conormalization has a
basis of labels that no d^k with k >= 1 hits, and reducing modulo the
degenerate part just forgets the other labels. Such objects never need their
full levels enumerated, so they carry no level cap.

Other objects (for example read from a file) are stored as matrices up to a
finite level cap and conormalized by elimination.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .f2linalg import Echelon, F2Matrix, LinAlgError, apply_images, bits, kernel_of_images
from .simplex_chains import collapse, faces, insert_zero, words


class ContractError(ValueError):
    pass


def toggle(acc: dict, labs: Iterable[Hashable]) -> None:
    """Add labels into a mod-2 accumulator (a dict used as an ordered set)."""
    for x in labs:
        if x in acc:
            del acc[x]
        else:
            acc[x] = None


def mod2(labs: Iterable[Hashable]) -> list:
    acc: dict = {}
    toggle(acc, labs)
    return list(acc)


def full_mask(p: int) -> int:
    """Bitmask of [1, p] inside a (p+1)-bit word."""
    return (1 << (p + 1)) - 2


# -- base class ----------------------------------------------------------------

class Cosimplicial:
    """A cosimplicial chain complex described on basis labels."""

    monomial = False
    level_cap: Optional[int] = None

    def degree_range(self, p: int) -> Tuple[int, Optional[int]]:
        """Inclusive bounds of nonzero internal degrees at level p (hi may be None)."""
        raise NotImplementedError

    def labels(self, p: int, q: int) -> tuple:
        raise NotImplementedError

    def boundary(self, p: int, lab) -> list:
        raise NotImplementedError

    def coface(self, i: int, p: int, lab) -> list:
        """d^i of a label at level p, as labels at level p + 1."""
        raise NotImplementedError

    def codegeneracy(self, j: int, p: int, lab) -> list:
        """s^j of a label at level p, as labels at level p - 1."""
        raise NotImplementedError

    def degree(self, p: int, lab) -> int:
        raise NotImplementedError

    # monomial objects also provide these
    def hit(self, p: int, lab) -> int:
        raise NotImplementedError

    def conormal_labels(self, p: int, q: int) -> tuple:
        raise NotImplementedError

    def max_column(self) -> Optional[int]:
        """Columns of the conormalization above this are zero (None if unknown)."""
        return None

    # -- derived helpers --------------------------------------------------------

    def _index(self, p: int, q: int) -> dict:
        cache = self.__dict__.setdefault("_index_cache", {})
        ix = cache.get((p, q))
        if ix is None:
            ix = {lab: j for j, lab in enumerate(self.labels(p, q))}
            cache[(p, q)] = ix
        return ix

    def dim(self, p: int, q: int) -> int:
        return len(self.labels(p, q))

    def degrees(self, p: int, hi: Optional[int] = None) -> range:
        lo, top = self.degree_range(p)
        if top is None:
            if hi is None:
                raise ContractError("unbounded degrees need an explicit bound")
            top = hi
        elif hi is not None:
            top = min(top, hi)
        return range(lo, top + 1)

    def vector(self, p: int, q: int, labs: Iterable[Hashable]) -> int:
        ix = self._index(p, q)
        v = 0
        for lab in labs:
            v ^= 1 << ix[lab]
        return v

    def unvector(self, p: int, q: int, v: int) -> list:
        labs = self.labels(p, q)
        return [labs[j] for j in bits(v)]

    def boundary_images(self, p: int, q: int) -> list:
        return [self.vector(p, q - 1, self.boundary(p, lab)) for lab in self.labels(p, q)]

    def coface_images(self, i: int, p: int, q: int) -> list:
        return [self.vector(p + 1, q, self.coface(i, p, lab)) for lab in self.labels(p, q)]

    def codegeneracy_images(self, j: int, p: int, q: int) -> list:
        return [self.vector(p - 1, q, self.codegeneracy(j, p, lab)) for lab in self.labels(p, q)]

    def coface_set(self, i: int, p: int, labs: Iterable[Hashable]) -> list:
        acc: dict = {}
        for lab in labs:
            toggle(acc, self.coface(i, p, lab))
        return list(acc)

    def boundary_set(self, p: int, labs: Iterable[Hashable]) -> list:
        acc: dict = {}
        for lab in labs:
            toggle(acc, self.boundary(p, lab))
        return list(acc)

    def codegeneracy_set(self, j: int, p: int, labs: Iterable[Hashable]) -> list:
        acc: dict = {}
        for lab in labs:
            toggle(acc, self.codegeneracy(j, p, lab))
        return list(acc)


class Monomial(Cosimplicial):
    """Base for label-monomial objects; subclasses give hit() and enumeration."""

    monomial = True

    def labels_by_hit(self, p: int, q: int) -> Dict[int, list]:
        cache = self.__dict__.setdefault("_byhit_cache", {})
        key = (p, q)
        out = cache.get(key)
        if out is None:
            out = {}
            for lab in self.labels(p, q):
                out.setdefault(self.hit(p, lab), []).append(lab)
            cache[key] = out
        return out

    def conormal_labels(self, p: int, q: int) -> tuple:
        return tuple(self.labels_by_hit(p, q).get(0, ()))


# -- concrete monomial objects -------------------------------------------------

class UniversalExample(Monomial):
    """The cofiber of sk_{s-1} into sk_{s+r-1} of the cosimplicial simplex,
    suspended t - s times. r=None means no upper truncation.

    Labels at level p are injection words [k] -> [p] with s <= k <= s+r-1,
    sitting in internal degree k + t - s.
    """

    def __init__(self, r: Optional[int], s: int, t: int):
        if r is not None and r < 1:
            raise ContractError("r must be at least 1")
        if s < 0 or t < s:
            raise ContractError("need 0 <= s <= t")
        self.r, self.s, self.t = r, s, t
        self.shift = t - s
        self.top = None if r is None else s + r - 1

    def __repr__(self):
        r = "inf" if self.r is None else self.r
        return f"D({r},{self.s},{self.t})"

    def kmax(self, p: int) -> int:
        return p if self.top is None else min(p, self.top)

    def degree_range(self, p):
        return (self.s + self.shift, self.kmax(p) + self.shift)

    def degree(self, p, lab):
        return lab.bit_count() - 1 + self.shift

    def labels(self, p, q):
        k = q - self.shift
        if k < self.s or k > self.kmax(p):
            return ()
        return tuple(words(k, p))

    def boundary(self, p, lab):
        if lab.bit_count() - 1 <= self.s:
            return []
        return faces(lab)

    def coface(self, i, p, lab):
        return [insert_zero(lab, i)]

    def codegeneracy(self, j, p, lab):
        w = collapse(lab, j)
        return [] if w is None else [w]

    def hit(self, p, lab):
        return full_mask(p) & ~lab

    def conormal_labels(self, p, q):
        k = q - self.shift
        if k < self.s or k > self.kmax(p):
            return ()
        full = (1 << (p + 1)) - 1
        if k == p:
            return (full,)
        if k == p - 1:
            return (full ^ 1,)
        return ()

    def max_column(self):
        return None if self.top is None else self.top + 1

    def identity_word(self, k: int) -> int:
        return (1 << (k + 1)) - 1


class VSquare(Monomial):
    """Two copies of the cosimplicial module of s-simplices in internal
    degrees t+1 and t, joined by the identity differential."""

    def __init__(self, s: int, t: int):
        self.s, self.t = s, t

    def __repr__(self):
        return f"V({self.s},{self.t})"

    def degree_range(self, p):
        if p < self.s:
            return (self.t, self.t - 1)
        return (self.t, self.t + 1)

    def degree(self, p, lab):
        return self.t + lab[0]

    def labels(self, p, q):
        if q == self.t + 1:
            return tuple((1, w) for w in words(self.s, p))
        if q == self.t:
            return tuple((0, w) for w in words(self.s, p))
        return ()

    def boundary(self, p, lab):
        return [(0, lab[1])] if lab[0] == 1 else []

    def coface(self, i, p, lab):
        return [(lab[0], insert_zero(lab[1], i))]

    def codegeneracy(self, j, p, lab):
        w = collapse(lab[1], j)
        return [] if w is None else [(lab[0], w)]

    def hit(self, p, lab):
        return full_mask(p) & ~lab[1]

    def max_column(self):
        return self.s + 1


class Unit(Monomial):
    """The constant object: a single basis vector in degree 0 at every level."""

    def degree_range(self, p):
        return (0, 0)

    def degree(self, p, lab):
        return 0

    def labels(self, p, q):
        return (0,) if q == 0 else ()

    def boundary(self, p, lab):
        return []

    def coface(self, i, p, lab):
        return [0]

    def codegeneracy(self, j, p, lab):
        return [0]

    def hit(self, p, lab):
        return full_mask(p)

    def max_column(self):
        return 0


class Suspension(Cosimplicial):
    """Levelwise shift of internal degrees by k; cofaces unchanged."""

    def __init__(self, Y: Cosimplicial, k: int):
        self.Y, self.k = Y, k
        self.monomial = Y.monomial
        self.level_cap = Y.level_cap

    def degree_range(self, p):
        lo, hi = self.Y.degree_range(p)
        return (lo + self.k, None if hi is None else hi + self.k)

    def degree(self, p, lab):
        return self.Y.degree(p, lab) + self.k

    def labels(self, p, q):
        return self.Y.labels(p, q - self.k)

    def boundary(self, p, lab):
        return self.Y.boundary(p, lab)

    def coface(self, i, p, lab):
        return self.Y.coface(i, p, lab)

    def codegeneracy(self, j, p, lab):
        return self.Y.codegeneracy(j, p, lab)

    def hit(self, p, lab):
        return self.Y.hit(p, lab)

    def conormal_labels(self, p, q):
        return self.Y.conormal_labels(p, q - self.k)

    def labels_by_hit(self, p, q):
        return self.Y.labels_by_hit(p, q - self.k)

    def max_column(self):
        return self.Y.max_column()


def suspend(Y: Cosimplicial, k: int) -> Cosimplicial:
    if k == 0:
        return Y
    return Suspension(Y, k)


class DirectSum(Cosimplicial):
    """Direct sum; labels are (summand index, label)."""

    def __init__(self, parts: Sequence[Cosimplicial]):
        self.parts = tuple(parts)
        self.monomial = all(P.monomial for P in self.parts)
        caps = [P.level_cap for P in self.parts if P.level_cap is not None]
        self.level_cap = min(caps) if caps else None

    def __repr__(self):
        return " + ".join(repr(P) for P in self.parts)

    def degree_range(self, p):
        los, his = [], []
        for P in self.parts:
            lo, hi = P.degree_range(p)
            if hi is not None and hi < lo:
                continue
            los.append(lo)
            his.append(hi)
        if not los:
            return (0, -1)
        return (min(los), None if None in his else max(his))

    def degree(self, p, lab):
        return self.parts[lab[0]].degree(p, lab[1])

    def labels(self, p, q):
        return tuple((n, x) for n, P in enumerate(self.parts) for x in P.labels(p, q))

    def boundary(self, p, lab):
        n, x = lab
        return [(n, y) for y in self.parts[n].boundary(p, x)]

    def coface(self, i, p, lab):
        n, x = lab
        return [(n, y) for y in self.parts[n].coface(i, p, x)]

    def codegeneracy(self, j, p, lab):
        n, x = lab
        return [(n, y) for y in self.parts[n].codegeneracy(j, p, x)]

    def hit(self, p, lab):
        return self.parts[lab[0]].hit(p, lab[1])

    def conormal_labels(self, p, q):
        return tuple((n, x) for n, P in enumerate(self.parts) for x in P.conormal_labels(p, q))

    def labels_by_hit(self, p, q):
        out: Dict[int, list] = {}
        for n, P in enumerate(self.parts):
            for h, labs in P.labels_by_hit(p, q).items():
                out.setdefault(h, []).extend((n, x) for x in labs)
        return out

    def max_column(self):
        ms = [P.max_column() for P in self.parts]
        if any(m is None for m in ms):
            return None
        return max(ms, default=0)


def _covering_pairs(A: Dict[int, list], B: Dict[int, list], full: int) -> list:
    """Pairs (a, b) with hit(a) & hit(b) == 0 from hit-grouped label lists."""
    out = []
    bkeys = list(B)
    for ha, la in A.items():
        free = full & ~ha
        nfree = free.bit_count()
        if (1 << nfree) <= len(bkeys):
            sub = free
            while True:
                lb = B.get(sub)
                if lb:
                    out.extend((a, b) for a in la for b in lb)
                if sub == 0:
                    break
                sub = (sub - 1) & free
        else:
            for hb in bkeys:
                if hb & ha == 0:
                    lb = B[hb]
                    out.extend((a, b) for a in la for b in lb)
    return out


class Tensor(Cosimplicial):
    """Levelwise tensor product; labels are pairs (a, b)."""

    def __init__(self, X: Cosimplicial, Y: Cosimplicial):
        self.X, self.Y = X, Y
        self.monomial = X.monomial and Y.monomial
        caps = [c for c in (X.level_cap, Y.level_cap) if c is not None]
        self.level_cap = min(caps) if caps else None
        self._cache: dict = {}

    def __repr__(self):
        return f"({self.X!r} x {self.Y!r})"

    def degree_range(self, p):
        xl, xh = self.X.degree_range(p)
        yl, yh = self.Y.degree_range(p)
        if (xh is not None and xh < xl) or (yh is not None and yh < yl):
            return (0, -1)
        hi = None if xh is None or yh is None else xh + yh
        return (xl + yl, hi)

    def _split(self, p, q):
        xl, xh = self.X.degree_range(p)
        yl, yh = self.Y.degree_range(p)
        top = q - yl
        if xh is not None:
            top = min(top, xh)
        lo = xl
        if yh is not None:
            lo = max(lo, q - yh)
        return range(lo, top + 1)

    def degree(self, p, lab):
        return self.X.degree(p, lab[0]) + self.Y.degree(p, lab[1])

    def labels(self, p, q):
        key = ("L", p, q)
        out = self._cache.get(key)
        if out is None:
            out = tuple(
                (a, b)
                for qa in self._split(p, q)
                for a in self.X.labels(p, qa)
                for b in self.Y.labels(p, q - qa)
            )
            self._cache[key] = out
        return out

    def boundary(self, p, lab):
        a, b = lab
        return [(x, b) for x in self.X.boundary(p, a)] + [(a, y) for y in self.Y.boundary(p, b)]

    def coface(self, i, p, lab):
        a, b = lab
        return [(x, y) for x in self.X.coface(i, p, a) for y in self.Y.coface(i, p, b)]

    def codegeneracy(self, j, p, lab):
        a, b = lab
        return [(x, y) for x in self.X.codegeneracy(j, p, a) for y in self.Y.codegeneracy(j, p, b)]

    def hit(self, p, lab):
        return self.X.hit(p, lab[0]) & self.Y.hit(p, lab[1])

    def conormal_labels(self, p, q):
        key = ("C", p, q)
        out = self._cache.get(key)
        if out is None:
            full = full_mask(p)
            out = []
            for qa in self._split(p, q):
                A = self.X.labels_by_hit(p, qa)
                if not A:
                    continue
                B = self.Y.labels_by_hit(p, q - qa)
                if not B:
                    continue
                pairs = _covering_pairs(A, B, full)
                pairs.sort()
                out.extend(pairs)
            out = tuple(out)
            self._cache[key] = out
        return out

    def labels_by_hit(self, p, q):
        key = ("H", p, q)
        out = self._cache.get(key)
        if out is None:
            out = {}
            for lab in self.labels(p, q):
                out.setdefault(self.hit(p, lab), []).append(lab)
            self._cache[key] = out
        return out

    def max_column(self):
        a, b = self.X.max_column(), self.Y.max_column()
        if a is None or b is None:
            return None
        return a + b


def tensor(X: Cosimplicial, Y: Cosimplicial) -> Tensor:
    return Tensor(X, Y)


def universal_example(r, s: int, t: int, level_cap: Optional[int] = None) -> Cosimplicial:
    """D_{rst}; r may be an int >= 1 or None / "inf" for no truncation.

    With a level cap the object is materialized into matrices up to that level.
    """
    if isinstance(r, str):
        if r != "inf":
            raise ContractError("r must be an integer or 'inf'")
        r = None
    if t < s:
        raise ContractError("t must be at least s")
    D = UniversalExample(r, s, t)
    if level_cap is None:
        return D
    return materialize(D, level_cap)


def default_level_cap(r: Optional[int], s: int) -> Optional[int]:
    return None if r is None else 2 * (s + r) + 1


# -- matrix-backed objects -----------------------------------------------------

class MatrixCosimplicial(Cosimplicial):
    """Cosimplicial chain complex given by matrices up to a finite level cap.

    dims[p] maps degree -> dimension and the labels in degree q are the pairs
    (q, j). diff[(p, q)] holds boundary images into (p, q-1), cof[(p, i, q)]
    images of d^i into (p+1, q), cod[(p, j, q)] images of s^j into (p-1, q).
    Missing entries are zero maps. names optionally records where each basis
    vector came from.
    """

    def __init__(self, dims, diff, cof, cod, level_cap: int, names=None):
        self.dims = {p: {q: n for q, n in d.items() if n} for p, d in dims.items()}
        self.diff = dict(diff)
        self.cof = dict(cof)
        self.cod = dict(cod)
        self.level_cap = level_cap
        self.names = names

    def degree_range(self, p):
        d = self.dims.get(p, {})
        if not d:
            return (0, -1)
        return (min(d), max(d))

    def labels(self, p, q):
        n = self.dims.get(p, {}).get(q, 0)
        return tuple((q, j) for j in range(n))

    def degree(self, p, lab):
        return lab[0]

    def _images(self, table, key, n):
        im = table.get(key)
        return im if im is not None else (0,) * n

    def boundary_images(self, p, q):
        return list(self._images(self.diff, (p, q), self.dim(p, q)))

    def coface_images(self, i, p, q):
        if p + 1 > self.level_cap:
            raise ContractError("coface leaves the level cap")
        return list(self._images(self.cof, (p, i, q), self.dim(p, q)))

    def codegeneracy_images(self, j, p, q):
        return list(self._images(self.cod, (p, j, q), self.dim(p, q)))

    def boundary(self, p, lab):
        q, j = lab
        return [(q - 1, x) for x in bits(self.boundary_images(p, q)[j])]

    def coface(self, i, p, lab):
        q, j = lab
        return [(q, x) for x in bits(self.coface_images(i, p, q)[j])]

    def codegeneracy(self, j, p, lab):
        q, k = lab
        return [(q, x) for x in bits(self.codegeneracy_images(j, p, q)[k])]


def materialize(Y: Cosimplicial, level_cap: int, degree_bound: Optional[int] = None) -> MatrixCosimplicial:
    """Matrices of Y on levels 0..level_cap (degrees capped by degree_bound)."""
    dims, diff, cof, cod, names = {}, {}, {}, {}, {}
    for p in range(level_cap + 1):
        dims[p] = {}
        for q in Y.degrees(p, degree_bound):
            labs = Y.labels(p, q)
            if not labs:
                continue
            dims[p][q] = len(labs)
            names[(p, q)] = labs
    for p in range(level_cap + 1):
        for q in dims[p]:
            diff[(p, q)] = tuple(Y.boundary_images(p, q)) if (q - 1) in dims[p] else (0,) * dims[p][q]
            if p < level_cap:
                for i in range(p + 2):
                    cof[(p, i, q)] = tuple(Y.coface_images(i, p, q))
            if p > 0:
                for j in range(p):
                    cod[(p, j, q)] = tuple(Y.codegeneracy_images(j, p, q))
    return MatrixCosimplicial(dims, diff, cof, cod, level_cap, names=names)


def validate(Y: Cosimplicial, level_cap: Optional[int] = None, degree_bound: Optional[int] = None) -> None:
    """Check the cosimplicial identities and compatibility with the boundary.

    Raises ContractError naming the first failing identity.
    """
    cap = level_cap if level_cap is not None else Y.level_cap
    if cap is None:
        raise ContractError("validation needs a level cap")
    if Y.level_cap is not None:
        cap = min(cap, Y.level_cap)

    def comp(a, b):
        return [apply_images(a, v) for v in b]

    for p in range(cap + 1):
        for q in Y.degrees(p, degree_bound):
            n = Y.dim(p, q)
            if not n:
                continue
            bd = Y.boundary_images(p, q)
            bd2 = Y.boundary_images(p, q - 1)
            if any(comp(bd2, bd)):
                raise ContractError(f"boundary squares to nonzero at level {p} degree {q}")
            if p < cap:
                cofs = [Y.coface_images(i, p, q) for i in range(p + 2)]
                cofs_low = [Y.coface_images(i, p, q - 1) for i in range(p + 2)]
                bd_up = Y.boundary_images(p + 1, q)
                for i in range(p + 2):
                    if comp(bd_up, cofs[i]) != comp(cofs_low[i], bd):
                        raise ContractError(f"d^{i} does not commute with the boundary at level {p} degree {q}")
                if p + 1 < cap:
                    for j in range(p + 3):
                        upper = Y.coface_images(j, p + 1, q)
                        for i in range(j):
                            lhs = comp(upper, cofs[i])
                            rhs = comp(Y.coface_images(i, p + 1, q), cofs[j - 1])
                            if lhs != rhs:
                                raise ContractError(f"d^{j}d^{i} != d^{i}d^{j-1} at level {p} degree {q}")
                # s^j d^i relations: s^j on level p+1, d^i on level p
                for j in range(p + 1):
                    sj = Y.codegeneracy_images(j, p + 1, q)
                    for i in range(p + 2):
                        lhs = comp(sj, cofs[i])
                        if i == j or i == j + 1:
                            rhs = [1 << x for x in range(n)]
                        elif i < j:
                            rhs = comp(Y.coface_images(i, p - 1, q), Y.codegeneracy_images(j - 1, p, q))
                        else:
                            rhs = comp(Y.coface_images(i - 1, p - 1, q), Y.codegeneracy_images(j, p, q))
                        if lhs != rhs:
                            raise ContractError(f"s^{j}d^{i} identity fails at level {p} degree {q}")
            if p >= 2:
                # s^j s^i = s^i s^{j+1} for i <= j, from level p to p-2
                for j in range(p - 1):
                    for i in range(j + 1):
                        lhs = comp(Y.codegeneracy_images(j, p - 1, q), Y.codegeneracy_images(i, p, q))
                        rhs = comp(Y.codegeneracy_images(i, p - 1, q), Y.codegeneracy_images(j + 1, p, q))
                        if lhs != rhs:
                            raise ContractError(f"s^{j}s^{i} identity fails at level {p} degree {q}")
            if p >= 1:
                bd_low = Y.boundary_images(p - 1, q)
                for j in range(p):
                    sj = Y.codegeneracy_images(j, p, q)
                    sj_low = Y.codegeneracy_images(j, p, q - 1)
                    if comp(bd_low, sj) != comp(sj_low, bd):
                        raise ContractError(f"s^{j} does not commute with the boundary at level {p} degree {q}")


# -- conormalization -----------------------------------------------------------

class Bicomplex:
    """Column-graded bicomplex: basis(p, q), horizontal hd and vertical cd.

    hd(p, q) lists images of basis(p, q) in basis(p, q-1) (internal boundary),
    cd(p, q) lists images in basis(p+1, q) (the coface direction).
    """

    def basis(self, p: int, q: int) -> tuple:
        raise NotImplementedError

    def hd(self, p: int, q: int) -> list:
        raise NotImplementedError

    def cd(self, p: int, q: int) -> list:
        raise NotImplementedError

    def max_column(self) -> Optional[int]:
        return None

    def available(self, p: int) -> bool:
        """Whether column p (with its cd) can be computed."""
        return True

    def degree_range(self, p: int) -> Tuple[int, Optional[int]]:
        raise NotImplementedError

    def dim(self, p: int, q: int) -> int:
        if p < 0:
            return 0
        return len(self.basis(p, q))

    def index(self, p: int, q: int) -> dict:
        cache = self.__dict__.setdefault("_bindex", {})
        ix = cache.get((p, q))
        if ix is None:
            ix = {lab: j for j, lab in enumerate(self.basis(p, q))}
            cache[(p, q)] = ix
        return ix

    def is_zero_column(self, p: int) -> bool:
        if p < 0:
            return True
        m = self.max_column()
        return m is not None and p > m

    def check(self, pmax: int, qmax: int) -> None:
        """hd^2 = 0, cd^2 = 0 and hd cd = cd hd on columns <= pmax."""
        for p in range(pmax + 1):
            if not self.available(p + 1):
                break
            lo, _ = self.degree_range(p)
            for q in range(lo, qmax + 1):
                h = self.hd(p, q)
                if any(apply_images(self.hd(p, q - 1), v) for v in h):
                    raise ContractError(f"hd^2 != 0 at ({p}, {q})")
                c = self.cd(p, q)
                if any(apply_images(self.cd(p + 1, q), v) for v in c):
                    raise ContractError(f"cd^2 != 0 at ({p}, {q})")
                a = [apply_images(self.cd(p, q - 1), v) for v in h]
                b = [apply_images(self.hd(p + 1, q), v) for v in c]
                if a != b:
                    raise ContractError(f"hd and cd do not commute at ({p}, {q})")


class _Reducer:
    """Projection of Y^p_q onto the complement of the degenerate part."""

    __slots__ = ("rref", "pivmask", "compress")

    def __init__(self, spanning: Iterable[int], n: int):
        e = Echelon()
        for v in spanning:
            e.add(v)
        rows = e.reduced_rows()
        self.rref = {r & -r: r for r in rows}
        self.pivmask = 0
        for low in self.rref:
            self.pivmask |= low
        self.compress = {}
        for j in range(n):
            if not (self.pivmask >> j) & 1:
                self.compress[j] = len(self.compress)

    def positions(self) -> list:
        return list(self.compress)

    def __call__(self, v: int) -> int:
        hit = v & self.pivmask
        while hit:
            low = hit & -hit
            v ^= self.rref[low]
            hit ^= low
        out = 0
        c = self.compress
        while v:
            low = v & -v
            out |= 1 << c[low.bit_length() - 1]
            v ^= low
        return out


class Conormalization(Bicomplex):
    """The conormalized bicomplex C(Y): column p is Y^p modulo the images of
    d^1, ..., d^p, with vertical map induced by d^0."""

    def __init__(self, Y: Cosimplicial):
        self.Y = Y
        self._basis: dict = {}
        self._hd: dict = {}
        self._cd: dict = {}
        self._red: dict = {}

    def __repr__(self):
        return f"C({self.Y!r})"

    def max_column(self):
        return self.Y.max_column()

    def available(self, p):
        cap = self.Y.level_cap
        if cap is None or p + 1 <= cap:
            return True
        return self.is_zero_column(p)

    def degree_range(self, p):
        return self.Y.degree_range(p)

    def _reducer(self, p, q) -> _Reducer:
        red = self._red.get((p, q))
        if red is None:
            Y = self.Y
            span = []
            if p >= 1:
                for k in range(1, p + 1):
                    span.extend(Y.coface_images(k, p - 1, q))
            red = _Reducer(span, Y.dim(p, q))
            self._red[(p, q)] = red
        return red

    def basis(self, p, q):
        if p < 0:
            return ()
        key = (p, q)
        b = self._basis.get(key)
        if b is None:
            if self.is_zero_column(p):
                b = ()
            elif self.Y.monomial:
                b = tuple(self.Y.conormal_labels(p, q))
            else:
                if self.Y.level_cap is not None and p > self.Y.level_cap:
                    raise ContractError(f"column {p} exceeds the level cap")
                labs = self.Y.labels(p, q)
                b = tuple(labs[j] for j in self._reducer(p, q).positions())
            self._basis[key] = b
        return b

    def reduce_labels(self, p: int, q: int, labs: Iterable[Hashable]) -> int:
        """Class in basis(p, q) of a sum of labels of Y^p_q."""
        if self.is_zero_column(p):
            return 0
        if self.Y.monomial:
            ix = self.index(p, q)
            v = 0
            for lab in labs:
                j = ix.get(lab)
                if j is not None:
                    v ^= 1 << j
            return v
        return self._reducer(p, q)(self.Y.vector(p, q, labs))

    def lift(self, p: int, q: int, v: int) -> list:
        """Labels of Y^p_q of the complement section of a class."""
        b = self.basis(p, q)
        return [b[j] for j in bits(v)]

    def normal_section(self, p: int, q: int) -> list:
        """For each basis class, its unique lift into the intersection of the
        kernels of s^0, ..., s^{p-1}, as an int over Y.labels(p, q)."""
        cache = self.__dict__.setdefault("_normal", {})
        out = cache.get((p, q))
        if out is not None:
            return out
        Y = self.Y
        n = Y.dim(p, q)
        if p == 0:
            ix = Y._index(p, q)
            out = [1 << ix[lab] for lab in self.basis(p, q)]
        else:
            m = Y.dim(p - 1, q)
            stacked = [0] * n
            for j in range(p):
                for i, im in enumerate(Y.codegeneracy_images(j, p, q)):
                    stacked[i] |= im << (j * m)
            kern = kernel_of_images(stacked)
            e = Echelon()
            for t, k in enumerate(kern):
                e.add(self.reduce_labels(p, q, Y.unvector(p, q, k)), 1 << t)
            out = []
            for j in range(self.dim(p, q)):
                res, tag = e.reduce(1 << j)
                if res:
                    raise ContractError("normalized part does not surject onto the conormalization")
                v = 0
                for t in bits(tag):
                    v ^= kern[t]
                out.append(v)
        cache[(p, q)] = out
        return out

    def normal_lift(self, p: int, q: int, v: int) -> list:
        sec = self.normal_section(p, q)
        w = 0
        for j in bits(v):
            w ^= sec[j]
        return self.Y.unvector(p, q, w)

    def hd(self, p, q):
        key = (p, q)
        out = self._hd.get(key)
        if out is None:
            Y = self.Y
            out = [self.reduce_labels(p, q - 1, Y.boundary(p, lab)) for lab in self.basis(p, q)]
            self._hd[key] = out
        return out

    def cd(self, p, q):
        key = (p, q)
        out = self._cd.get(key)
        if out is None:
            if not self.available(p):
                raise ContractError(f"column {p} has no coface within the level cap")
            Y = self.Y
            if self.is_zero_column(p + 1):
                out = [0] * self.dim(p, q)
            else:
                out = [self.reduce_labels(p + 1, q, Y.coface(0, p, lab)) for lab in self.basis(p, q)]
            self._cd[key] = out
        return out


def conormalize(Y: Cosimplicial) -> Conormalization:
    return Conormalization(Y)


class TensorBicomplex(Bicomplex):
    """A (x) B with columns and degrees adding; labels (p1, q1, a, b)."""

    def __init__(self, A: Bicomplex, B: Bicomplex):
        self.A, self.B = A, B
        self._basis: dict = {}

    def max_column(self):
        a, b = self.A.max_column(), self.B.max_column()
        return None if a is None or b is None else a + b

    def available(self, p):
        return all(self.A.available(i) and self.B.available(p - i) for i in range(p + 1))

    def degree_range(self, p):
        los, his = [], []
        for i in range(p + 1):
            al, ah = self.A.degree_range(i)
            bl, bh = self.B.degree_range(p - i)
            los.append(al + bl)
            his.append(None if ah is None or bh is None else ah + bh)
        return (min(los), None if None in his else max(his))

    def basis(self, p, q):
        if p < 0:
            return ()
        key = (p, q)
        out = self._basis.get(key)
        if out is None:
            out = []
            for p1 in range(p + 1):
                p2 = p - p1
                if self.A.is_zero_column(p1) or self.B.is_zero_column(p2):
                    continue
                al, ah = self.A.degree_range(p1)
                bl, bh = self.B.degree_range(p2)
                top = q - bl if ah is None else min(ah, q - bl)
                bot = al if bh is None else max(al, q - bh)
                for q1 in range(bot, top + 1):
                    for a in self.A.basis(p1, q1):
                        for b in self.B.basis(p2, q - q1):
                            out.append((p1, q1, a, b))
            out = tuple(out)
            self._basis[key] = out
        return out

    def _images(self, p, q, vertical: bool) -> list:
        A, B = self.A, self.B
        tp = p + 1 if vertical else p
        tq = q if vertical else q - 1
        ix = self.index(tp, tq)
        out = []
        for p1, q1, a, b in self.basis(p, q):
            p2, q2 = p - p1, q - q1
            v = 0
            ia = A.index(p1, q1)[a]
            ib = B.index(p2, q2)[b]
            if vertical:
                ba = A.basis(p1 + 1, q1)
                for j in bits(A.cd(p1, q1)[ia]):
                    v ^= 1 << ix[(p1 + 1, q1, ba[j], b)]
                bb = B.basis(p2 + 1, q2)
                for j in bits(B.cd(p2, q2)[ib]):
                    v ^= 1 << ix[(p1, q1, a, bb[j])]
            else:
                ba = A.basis(p1, q1 - 1)
                for j in bits(A.hd(p1, q1)[ia]):
                    v ^= 1 << ix[(p1, q1 - 1, ba[j], b)]
                bb = B.basis(p2, q2 - 1)
                for j in bits(B.hd(p2, q2)[ib]):
                    v ^= 1 << ix[(p1, q1, a, bb[j])]
            out.append(v)
        return out

    def hd(self, p, q):
        return self._images(p, q, False)

    def cd(self, p, q):
        return self._images(p, q, True)


# -- maps ----------------------------------------------------------------------

class CosimplicialMap:
    """Map of cosimplicial chain complexes given on labels."""

    def __init__(self, source: Cosimplicial, target: Cosimplicial, fn: Callable = None):
        self.source, self.target = source, target
        self._fn = fn

    def image(self, p: int, lab) -> list:
        return self._fn(p, lab)

    def image_set(self, p: int, labs: Iterable[Hashable]) -> list:
        acc: dict = {}
        for lab in labs:
            toggle(acc, self.image(p, lab))
        return list(acc)


def identity_map(Y: Cosimplicial) -> CosimplicialMap:
    return CosimplicialMap(Y, Y, lambda p, lab: [lab])


class TensorMap(CosimplicialMap):
    def __init__(self, f: CosimplicialMap, g: CosimplicialMap):
        super().__init__(Tensor(f.source, g.source), Tensor(f.target, g.target))
        self.f, self.g = f, g

    def image(self, p, lab):
        a, b = lab
        fb = self.g.image(p, b)
        return mod2((x, y) for x in self.f.image(p, a) for y in fb)


def validate_map(f: CosimplicialMap, level_cap: int, degree_bound: Optional[int] = None) -> None:
    """Check that f commutes with boundary, cofaces and codegeneracies."""
    X, Y = f.source, f.target
    for p in range(level_cap + 1):
        for q in X.degrees(p, degree_bound):
            for lab in X.labels(p, q):
                img = f.image(p, lab)
                lhs = sorted(map(repr, Y.boundary_set(p, img)))
                rhs = sorted(map(repr, f.image_set(p, X.boundary(p, lab))))
                if lhs != rhs:
                    raise ContractError(f"map does not commute with the boundary at level {p}")
                if p < level_cap:
                    for i in range(p + 2):
                        lhs = sorted(map(repr, Y.coface_set(i, p, img)))
                        rhs = sorted(map(repr, f.image_set(p + 1, X.coface(i, p, lab))))
                        if lhs != rhs:
                            raise ContractError(f"map does not commute with d^{i} at level {p}")
                for j in range(p):
                    lhs = sorted(map(repr, Y.codegeneracy_set(j, p, img)))
                    rhs = sorted(map(repr, f.image_set(p - 1, X.codegeneracy(j, p, lab))))
                    if lhs != rhs:
                        raise ContractError(f"map does not commute with s^{j} at level {p}")


class BicomplexMap:
    """Map of bicomplexes preserving column and internal degree."""

    def __init__(self, source: Bicomplex, target: Bicomplex, fn: Callable):
        self.source, self.target = source, target
        self._fn = fn
        self._cache: dict = {}

    def images(self, p: int, q: int) -> list:
        key = (p, q)
        out = self._cache.get(key)
        if out is None:
            out = self._fn(p, q)
            self._cache[key] = out
        return out

    def apply(self, p: int, q: int, v: int) -> int:
        if not v:
            return 0
        return apply_images(self.images(p, q), v)

    def check(self, pmax: int, qmax: int) -> None:
        S, T = self.source, self.target
        for p in range(pmax + 1):
            lo, _ = S.degree_range(p)
            for q in range(lo, qmax + 1):
                f = self.images(p, q)
                a = [apply_images(T.hd(p, q), v) for v in f]
                b = [apply_images(self.images(p, q - 1), v) for v in S.hd(p, q)]
                if a != b:
                    raise ContractError(f"map does not commute with hd at ({p}, {q})")
                a = [apply_images(T.cd(p, q), v) for v in f]
                b = [apply_images(self.images(p + 1, q), v) for v in S.cd(p, q)]
                if a != b:
                    raise ContractError(f"map does not commute with cd at ({p}, {q})")


def conormal_map(f: CosimplicialMap, CX: Conormalization = None, CY: Conormalization = None) -> BicomplexMap:
    """C(f): induced map of conormalizations."""
    CX = CX or Conormalization(f.source)
    CY = CY or Conormalization(f.target)

    def fn(p, q):
        return [CY.reduce_labels(p, q, f.image(p, lab)) for lab in CX.basis(p, q)]

    return BicomplexMap(CX, CY, fn)


def _cofaces(Y: Cosimplicial, p: int, labs: list, idx: Iterable[int]) -> Tuple[int, list]:
    for i in idx:
        labs = Y.coface_set(i, p, labs)
        p += 1
    return p, labs


def _codegens(Y: Cosimplicial, p: int, labs: list, idx: Iterable[int]) -> Tuple[int, list]:
    for j in idx:
        labs = Y.codegeneracy_set(j, p, labs)
        p -= 1
    return p, labs


def alexander_whitney(CX: Conormalization, CY: Conormalization, CXY: Conormalization = None) -> BicomplexMap:
    """C(X) (x) C(Y) -> C(X (x) Y): x at level p and y at level m go to
    d^{p+m}...d^{p+1} x (x) d^{p-1}...d^0 y.

    The formula does not preserve the images of d^1, ..., d^p, so classes are
    first lifted to the normalized part (kernels of the codegeneracies), where
    it does.
    """
    X, Y = CX.Y, CY.Y
    CXY = CXY or Conormalization(Tensor(X, Y))
    src = TensorBicomplex(CX, CY)

    def fn(p, q):
        out = []
        for p1, q1, a, b in src.basis(p, q):
            m = p - p1
            la = CX.normal_lift(p1, q1, 1 << CX.index(p1, q1)[a])
            lb = CY.normal_lift(m, q - q1, 1 << CY.index(m, q - q1)[b])
            _, fa = _cofaces(X, p1, la, range(p1 + 1, p + 1))
            _, fb = _cofaces(Y, m, lb, range(0, p1))
            out.append(CXY.reduce_labels(p, q, [(x, y) for x in fa for y in fb]))
        return out

    return BicomplexMap(src, CXY, fn)


def _shuffles(p: int, m: int):
    """Pairs (mu, nu) of complementary increasing tuples, |mu| = p, |nu| = m."""
    n = p + m
    for mu in combinations(range(n), p):
        ms = set(mu)
        yield mu, tuple(i for i in range(n) if i not in ms)


def shuffle_map(CXY: Conormalization, CX: Conormalization, CY: Conormalization) -> BicomplexMap:
    """C(X (x) Y) -> C(X) (x) C(Y) by sums of codegeneracy strings over shuffles.

    The x factor receives s^{nu} (largest index first) and the y factor s^{mu}.
    """
    X, Y = CX.Y, CY.Y
    tgt = TensorBicomplex(CX, CY)

    def fn(p, q):
        ix = tgt.index(p, q)
        out = []
        for a, b in CXY.basis(p, q):
            v = 0
            for p1 in range(p + 1):
                m = p - p1
                if CX.is_zero_column(p1) or CY.is_zero_column(m):
                    continue
                for mu, nu in _shuffles(p1, m):
                    _, xa = _codegens(X, p, [a], reversed(nu))
                    if not xa:
                        continue
                    _, yb = _codegens(Y, p, [b], reversed(mu))
                    if not yb:
                        continue
                    for qa in {X.degree(p1, x) for x in xa}:
                        va = CX.reduce_labels(p1, qa, [x for x in xa if X.degree(p1, x) == qa])
                        qb = q - qa
                        vb = CY.reduce_labels(m, qb, [y for y in yb if Y.degree(m, y) == qb])
                        ba, bb = CX.basis(p1, qa), CY.basis(m, qb)
                        for i in bits(va):
                            for j in bits(vb):
                                v ^= 1 << ix[(p1, qa, ba[i], bb[j])]
            out.append(v)
        return out

    return BicomplexMap(CXY, tgt, fn)
