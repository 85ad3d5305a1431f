"""Spectral sequence of the column filtration of a bicomplex.

Column s of a bicomplex B holds B(s, q); the entry at bidegree (-s, t) has
internal degree t and total degree n = t - s. The filtration F^{-s} of the
total complex is "columns >= s", and d^r goes from (-s, t) to
(-s-r, t+r-1).

Entries are computed locally. For r >= 1 a class in E^r_{-s,t} is
represented by a vector supported on columns s .. s+r-1 (its window). Any
element of Z^r agrees with such a vector up to a tail in F^{-s-r}, and the
tail lies in Z^{r-1}_{-s-1} which is part of B^r. So

    Z^r = {x on the window : (hd x_c + cd x_{c-1}) = 0 for c in [s, s+r-1]}

and B^r is spanned by the window projections of
  - the boundaries of y on columns s-r+1 .. s+r-1 (degree n+1) whose
    boundary vanishes in columns below s, and
  - Z^{r-1} of column s+1 (vectors on s+1 .. s+r-1).
Only columns s-r+1 .. s+r are ever read, so column-infinite bicomplexes are
handled exactly.

Vectors on a window are ints: column s occupies the lowest bits, then s+1,
and so on. Echelon pivots are lowest set bits, so class representatives have
their pivot in column s.

Three routes compute the same pages:
  - "reduced" (default): each column is contracted onto its vertical
    homology (f, g, h with hd h + h hd = 1 - g f), and the perturbation
    lemma turns cd into a small filtered complex (H, delta) with
    delta = f cd (h cd)^k g. Its pages agree with ours from E^1 on;
    representatives go back through g_inf = sum (h cd)^k g and coordinates
    are read through f_inf = f sum (cd h)^k.
  - "direct": the Z^r / B^r description above on the bicomplex itself.
  - "global": the raw definitions on Tot B / F^{-hi-1} for a finite window,
    reading every column; a reference for the locality claim.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cosimplicial import Bicomplex, BicomplexMap, ContractError, CosimplicialMap, conormal_map
from .f2linalg import Echelon, F2Matrix, LinAlgError, apply_images, bits, kernel_of_images
from .simplex_chains import ChainComplex, homology


class WindowUnderflow(ValueError):
    """Raised when a computation needs columns outside the available data."""


# -- layouts -------------------------------------------------------------------

class Layout:
    """Columns c0 .. c0+w-1 at total degree n, stacked from the lowest bit."""

    __slots__ = ("c0", "w", "n", "dims", "offs", "total")

    def __init__(self, B: Optional[Bicomplex], c0: int, w: int, n: int, dims: Sequence[int] = None):
        self.c0, self.w, self.n = c0, w, n
        if dims is None:
            dims = [B.dim(c, n + c) for c in range(c0, c0 + w)]
        self.dims = list(dims)
        self.offs = []
        o = 0
        for d in self.dims:
            self.offs.append(o)
            o += d
        self.total = o

    def comp(self, v: int, c: int) -> int:
        k = c - self.c0
        if k < 0 or k >= self.w:
            return 0
        return (v >> self.offs[k]) & ((1 << self.dims[k]) - 1)

    def put(self, u: int, c: int) -> int:
        k = c - self.c0
        if u and (k < 0 or k >= self.w):
            raise LinAlgError("component outside the layout")
        return u << self.offs[k] if u else 0

    def project(self, v: int, other: "Layout") -> int:
        """Re-express v (over other) on this layout, dropping foreign columns."""
        out = 0
        for c in range(self.c0, self.c0 + self.w):
            out |= self.put(other.comp(v, c), c)
        return out

    def columns(self, v: int) -> Dict[int, int]:
        return {c: self.comp(v, c) for c in range(self.c0, self.c0 + self.w) if self.comp(v, c)}


@dataclass
class Entry:
    """E^r_{-s,t}: representatives on the window layout and a coordinate
    function for r-cycles on that layout."""

    r: int
    s: int
    t: int
    layout: Layout
    reps: list
    _coords: object = field(repr=False)
    znum: int = 0

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: int) -> int:
        """Bitmask of representatives congruent to the Z^r vector v mod B^r."""
        return self._coords(v)

    def reps_matrix(self) -> F2Matrix:
        return F2Matrix.from_rows(self.reps, self.layout.total)


def _echelon_coords(ech: Echelon):
    def coords(v: int) -> int:
        res, tag = ech.reduce(v)
        if res:
            raise LinAlgError("vector is not an r-cycle of this entry")
        return tag
    return coords


class ColumnReduction:
    """Contraction of B(c, q) onto its hd-homology.

    The basis used for coordinates is hd(e_k) for k in K_{q+1} (alpha part),
    homology representatives (beta part) and e_k for k in K_q (gamma part),
    where K_q are the basis vectors whose hd images are independent.
    f = beta part, g = representative, h = sum over alpha of e_k in degree q+1.
    """

    __slots__ = ("ech", "na", "nh", "kup", "hreps")

    def __init__(self, ech, na, nh, kup, hreps):
        self.ech, self.na, self.nh, self.kup, self.hreps = ech, na, nh, kup, hreps

    def _tag(self, v: int) -> int:
        res, tag = self.ech.reduce(v)
        if res:
            raise LinAlgError("column reduction does not span")
        return tag

    def f(self, v: int) -> int:
        if not v or not self.nh:
            return 0
        return (self._tag(v) >> self.na) & ((1 << self.nh) - 1)

    def h(self, v: int) -> int:
        if not v or not self.na:
            return 0
        a = self._tag(v) & ((1 << self.na) - 1)
        out = 0
        kup = self.kup
        for i in bits(a):
            out |= 1 << kup[i]
        return out

    def fh(self, v: int):
        if not v:
            return 0, 0
        tag = self._tag(v)
        fv = (tag >> self.na) & ((1 << self.nh) - 1) if self.nh else 0
        a = tag & ((1 << self.na) - 1) if self.na else 0
        out = 0
        for i in bits(a):
            out |= 1 << self.kup[i]
        return fv, out

    def g(self, x: int) -> int:
        out = 0
        for j in bits(x):
            out ^= self.hreps[j]
        return out


@dataclass
class Page:
    r: int
    entries: Dict[Tuple[int, int], Entry]
    differentials: Dict[Tuple[int, int], F2Matrix]

    def dims(self) -> Dict[Tuple[int, int], int]:
        return {k: e.dim for k, e in self.entries.items()}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SPECSEQ_THREADS", "1")))
    except ValueError:
        return 1


class SpectralSequence:
    """Pages of the column filtration of Tot B.

    window=(lo, hi) restricts the columns that may be read; columns outside it
    that are not known to vanish raise WindowUnderflow. method is "reduced",
    "direct" or "global" (see the module docstring); "global" needs a finite
    window and treats columns above hi as zero.
    """

    METHODS = ("reduced", "direct", "global")

    def __init__(self, B: Bicomplex, window: Optional[Tuple[int, Optional[int]]] = None,
                 method: str = "reduced", local: Optional[bool] = None):
        if local is False:
            method = "global"
        if method not in self.METHODS:
            raise ContractError(f"unknown method {method!r}")
        self.B = B
        self.window = window
        self.method = method
        if method == "global" and (window is None or window[1] is None):
            raise ContractError("the global route needs a finite column window")
        self._towers: Dict[Tuple[int, int], list] = {}
        self._entries: Dict[Tuple[int, int, int], Entry] = {}
        self._kz: dict = {}
        self._red: dict = {}
        self._delta: dict = {}

    # -- column access -------------------------------------------------------

    def _need(self, c: int, with_cd: bool = False) -> None:
        B = self.B
        if c < 0 or B.is_zero_column(c):
            return
        if self.window is not None:
            lo, hi = self.window
            if c < lo or (hi is not None and c > hi):
                raise WindowUnderflow(f"column {c} is outside the window {self.window}")
        if with_cd and not B.available(c):
            raise WindowUnderflow(f"column {c} exceeds the available levels")
        if not with_cd and c > 0 and not B.available(c - 1):
            raise WindowUnderflow(f"column {c} exceeds the available levels")

    def layout(self, c0: int, w: int, n: int) -> Layout:
        return Layout(self.B, c0, w, n)

    def _hd(self, c: int, q: int, u: int) -> int:
        if not u:
            return 0
        return apply_images(self.B.hd(c, q), u)

    def _cd(self, c: int, q: int, u: int) -> int:
        if not u or self.B.is_zero_column(c + 1):
            return 0
        return apply_images(self.B.cd(c, q), u)

    def boundary(self, L: Layout, v: int, target: Layout) -> int:
        """Total boundary of v (on L) projected to the target layout."""
        out = 0
        for c in range(L.c0, L.c0 + L.w):
            u = L.comp(v, c)
            if not u:
                continue
            q = L.n + c
            if target.c0 <= c < target.c0 + target.w:
                out ^= target.put(self._hd(c, q, u), c)
            if target.c0 <= c + 1 < target.c0 + target.w:
                out ^= target.put(self._cd(c, q, u), c + 1)
        return out

    # -- Z towers ------------------------------------------------------------

    def tower(self, c: int, n: int, k: int) -> list:
        """Basis of Z^k at column c, total degree n, on layout (c, k, n); k >= 1."""
        key = (c, n)
        T = self._towers.setdefault(key, [])
        while len(T) < k:
            j = len(T)  # building Z^{j+1}
            col = c + j
            self._need(col)
            if j > 0:
                self._need(col - 1, with_cd=True)
            B = self.B
            q = n + col
            m = B.dim(col, q)
            hd = B.hd(col, q) if m else []
            if j == 0:
                kern = kernel_of_images(hd)
                T.append(kern)
                continue
            prev = T[-1]
            Lp = Layout(B, c, j, n)
            lastc = col - 1
            imgs = [self._cd(lastc, n + lastc, Lp.comp(z, lastc)) for z in prev]
            imgs.extend(hd)
            nz = len(prev)
            off = Lp.total
            out = []
            for tag in kernel_of_images(imgs):
                v = 0
                low = tag & ((1 << nz) - 1)
                for i in bits(low):
                    v ^= prev[i]
                v |= (tag >> nz) << off
                out.append(v)
            T.append(out)
        return T[k - 1]

    # -- entries -------------------------------------------------------------

    def entry(self, r: int, s: int, t: int) -> Entry:
        if r < 0 or s < 0:
            raise ContractError("need r >= 0 and s >= 0")
        key = (r, s, t)
        e = self._entries.get(key)
        if e is None:
            if r == 0 or self.method == "direct":
                e = self._entry_local(r, s, t)
            elif self.method == "global":
                e = self._entry_global(r, s, t)
            else:
                e = self._entry_reduced(r, s, t)
            self._entries[key] = e
        return e

    def _finish(self, r, s, t, L, num, den) -> Entry:
        ech = Echelon()
        for v in den:
            ech.add(v)
        for v in den:
            if not self._is_cycle(r, s, L, v):
                raise LinAlgError("B^r is not contained in Z^r")
        reps = []
        for v in num:
            red, _ = ech.reduce(v)
            if red:
                tag = 1 << len(reps)
                ech.add(red, tag)
                reps.append(red)
        return Entry(r, s, t, L, reps, _echelon_coords(ech), len(num))

    def _is_cycle(self, r, s, L, v) -> bool:
        if r == 0:
            return True
        cond = self.layout(s, r, L.n - 1)
        return self.boundary(L, v, cond) == 0

    def _entry_local(self, r: int, s: int, t: int) -> Entry:
        n = t - s
        B = self.B
        if r == 0:
            self._need(s)
            L = self.layout(s, 1, n)
            num = [1 << j for j in range(L.total)]
            return self._finish(r, s, t, L, num, [])
        for c in range(max(0, s - r + 1), s + r - 1):
            self._need(c, with_cd=True)
        self._need(s + r - 1)
        L = self.layout(s, r, n)
        num = self.tower(s, n, r)
        den = []
        # boundaries of y on columns s-r+1 .. s+r-1 with no boundary below s
        Lfree = self.layout(s, r, n + 1)
        for c in range(s, s + r):
            for j in range(Lfree.dims[c - s]):
                v = self.boundary(Lfree, Lfree.put(1 << j, c), L)
                if v:
                    den.append(v)
        start = max(0, s - r + 1)
        if start < s:
            Ly = self.layout(start, s - start, n + 1)
            for z in self.tower(start, n + 1, s - start):
                u = self._cd(s - 1, n + s, Ly.comp(z, s - 1))
                if u:
                    den.append(L.put(u, s))
        if r >= 2:
            Lz = self.layout(s + 1, r - 1, n)
            for z in self.tower(s + 1, n, r - 1):
                den.append(L.project(z, Lz))
        return self._finish(r, s, t, L, num, den)

    def _entry_global(self, r: int, s: int, t: int) -> Entry:
        lo, hi = self.window
        n = t - s
        if s < lo or s > hi:
            raise WindowUnderflow(f"column {s} is outside the window {self.window}")
        L = self.layout(s, hi - s + 1, n)

        def zspace(c0, deg, k):
            """Z^k at column c0 in the quotient complex, on columns c0..hi."""
            if c0 > hi:
                return self.layout(hi + 1, 0, deg), []
            La = self.layout(c0, hi - c0 + 1, deg)
            if k <= 0:
                return La, [1 << j for j in range(La.total)]
            cond = self.layout(c0, min(k, hi - c0 + 1), deg - 1)
            imgs = [self.boundary(La, 1 << j, cond) for j in range(La.total)]
            return La, kernel_of_images(imgs)

        Lz, num = zspace(s, n, r)
        den = []
        if r == 0:
            den = [L.project(v, Lz) for v in zspace(s + 1, n, 0)[1]]
        else:
            start = max(lo, s - r + 1)
            Lb, ys = zspace(start, n + 1, s - start)
            den = [self.boundary(Lb, y, L) for y in ys]
            Lc, zs = zspace(s + 1, n, r - 1)
            den += [L.project(z, Lc) for z in zs]
        den = [v for v in den if v]
        return self._finish_global(r, s, t, L, num, den)

    def _finish_global(self, r, s, t, L, num, den) -> Entry:
        ech = Echelon()
        for v in den:
            ech.add(v)
        nume = Echelon()
        for v in num:
            nume.add(v)
        for v in den:
            if not nume.contains(v):
                raise LinAlgError("B^r is not contained in Z^r")
        reps = []
        for v in num:
            red, _ = ech.reduce(v)
            if red:
                ech.add(red, 1 << len(reps))
                reps.append(red)
        return Entry(r, s, t, L, reps, _echelon_coords(ech), len(num))

    # -- the reduced route -----------------------------------------------------

    def _kernel_split(self, c: int, q: int):
        """(K_q, kernel basis) for hd on B(c, q)."""
        key = (c, q)
        out = self._kz.get(key)
        if out is None:
            e = Echelon()
            piv, tags = e.piv, e.tags
            kcols, kern = [], []
            hd = self.B.hd(c, q) if self.B.dim(c, q) else []
            for j, im in enumerate(hd):
                v, tag = e.reduce(im, 1 << j)
                if v:
                    low = v & -v
                    piv[low] = v
                    tags[low] = tag
                    kcols.append(j)
                else:
                    kern.append(tag)
            out = (kcols, kern)
            self._kz[key] = out
        return out

    def reduction(self, c: int, q: int) -> ColumnReduction:
        key = (c, q)
        red = self._red.get(key)
        if red is None:
            B = self.B
            kup, _ = self._kernel_split(c, q + 1)
            kq, zq = self._kernel_split(c, q)
            ech = Echelon()
            na = len(kup)
            if na:
                hd_up = B.hd(c, q + 1)
                for i, j in enumerate(kup):
                    ech.add(hd_up[j], 1 << i)
            hreps = []
            for z in zq:
                if ech.add(z, 1 << (na + len(hreps))):
                    hreps.append(z)
            nh = len(hreps)
            for l, j in enumerate(kq):
                if not ech.add(1 << j, 1 << (na + nh + l)):
                    raise LinAlgError("complement of the cycles is degenerate")
            red = ColumnReduction(ech, na, nh, kup, hreps)
            self._red[key] = red
        return red

    def hdim(self, c: int, n: int) -> int:
        """dim E^1 at column c, total degree n."""
        if c < 0 or self.B.is_zero_column(c):
            return 0
        return self.reduction(c, n + c).nh

    def _hlayout(self, c0: int, w: int, n: int) -> Layout:
        return Layout(None, c0, w, n, [self.hdim(c, n) for c in range(c0, c0 + w)])

    def delta(self, a: int, n: int, j: int, upto: int) -> Dict[int, int]:
        """Components of delta(e_j) for e_j in H(a) at total degree n, in
        columns a+1 .. upto (each over H(c) at total degree n-1)."""
        key = (a, n, j)
        got = self._delta.get(key)
        if got is not None and got[0] >= upto:
            return got[1]
        out: Dict[int, int] = {}
        u = self.reduction(a, n + a).hreps[j]
        c = a
        while u and c < upto:
            self._need(c, with_cd=True)
            v = self._cd(c, n + c, u)
            c += 1
            if not v:
                break
            fv, u = self.reduction(c, n + c - 1).fh(v)
            if fv:
                out[c] = fv
        self._delta[key] = (upto, out)
        return out

    def _delta_on(self, src: Layout, tgt: Layout) -> list:
        """Images of the basis of src (H-layout, degree n) under delta on tgt."""
        out = []
        hi = tgt.c0 + tgt.w - 1
        for k in range(src.w):
            a = src.c0 + k
            for j in range(src.dims[k]):
                v = 0
                for c, comp in self.delta(a, src.n, j, hi).items():
                    if tgt.c0 <= c <= hi:
                        v ^= tgt.put(comp, c)
                out.append(v)
        return out

    def g_inf(self, x: int, HL: Layout) -> int:
        """g_inf of an H-window vector, truncated to the same columns."""
        L = self.layout(HL.c0, HL.w, HL.n)
        n = HL.n
        out = 0
        u = 0
        for c in range(HL.c0, HL.c0 + HL.w):
            w = self.reduction(c, n + c).g(HL.comp(x, c))
            if u:
                v = self._cd(c - 1, n + c - 1, u)
                if v:
                    w ^= self.reduction(c, n + c - 1).h(v)
            u = w
            out |= L.put(w, c)
        return out

    def f_inf(self, v: int, L: Layout) -> int:
        """f_inf of a window vector, on the H-layout of the same columns."""
        n = L.n
        HL = self._hlayout(L.c0, L.w, n)
        out = 0
        carry = 0
        last = L.c0 + L.w - 1
        for c in range(L.c0, L.c0 + L.w):
            w = L.comp(v, c) ^ carry
            red = self.reduction(c, n + c)
            if c < last:
                fv, hv = red.fh(w)
                carry = self._cd(c, n + c + 1, hv)
            else:
                fv = red.f(w)
            out |= HL.put(fv, c)
        return out

    def _entry_reduced(self, r: int, s: int, t: int) -> Entry:
        n = t - s
        start = max(0, s - r + 1)
        for c in range(start, s + r - 1):
            self._need(c, with_cd=True)
        self._need(s + r - 1)
        HL = self._hlayout(s, r, n)
        cond = self._hlayout(s, r, n - 1)
        num = kernel_of_images(self._delta_on(HL, cond))
        den = []
        Y = self._hlayout(start, s + r - start, n + 1)
        W = self._hlayout(start, s + r - start, n)
        low = W.offs[s - start] if s > start else 0
        imgs = self._delta_on(Y, W)
        mask = (1 << low) - 1
        for tag in kernel_of_images([v & mask for v in imgs]):
            v = 0
            for i in bits(tag):
                v ^= imgs[i]
            if v:
                den.append(v >> low)
        if r >= 2:
            Z = self._hlayout(s + 1, r - 1, n)
            zc = self._hlayout(s + 1, r - 1, n - 1)
            for z in kernel_of_images(self._delta_on(Z, zc)):
                if z:
                    den.append(HL.project(z, Z))
        ech = Echelon()
        for v in den:
            ech.add(v)
        check = self._delta_on(HL, cond)
        for v in den:
            img = 0
            for i in bits(v):
                img ^= check[i]
            if img:
                raise LinAlgError("B^r is not contained in Z^r")
        hreps = []
        for v in num:
            red, _ = ech.reduce(v)
            if red:
                ech.add(red, 1 << len(hreps))
                hreps.append(red)
        small = _echelon_coords(ech)
        L = self.layout(s, r, n)
        reps = [self.g_inf(x, HL) for x in hreps]

        def coords(v: int) -> int:
            return small(self.f_inf(v, L))

        return Entry(r, s, t, L, reps, coords, len(num))

    def dim(self, r: int, s: int, t: int) -> int:
        return self.entry(r, s, t).dim

    # -- differentials -------------------------------------------------------

    def d_image(self, r: int, s: int, t: int, v: int) -> int:
        """A representative (on the target entry's layout) of d^r[v]."""
        e = self.entry(r, s, t)
        tgt = self.entry(r, s + r, t + r - 1)
        return self.boundary(e.layout, v, tgt.layout)

    def differential(self, r: int, s: int, t: int) -> F2Matrix:
        """Matrix of d^r: E^r_{-s,t} -> E^r_{-s-r,t+r-1}; row i is the image
        of representative i as a coordinate bitmask."""
        e = self.entry(r, s, t)
        if not e.dim:
            return F2Matrix.from_rows([], self.entry(r, s + r, t + r - 1).dim)
        tgt = self.entry(r, s + r, t + r - 1)
        rows = [tgt.coords(self.d_image(r, s, t, v)) for v in e.reps]
        return F2Matrix.from_rows(rows, tgt.dim)

    def class_at(self, r: int, s: int, t: int, v: int, layout: Layout) -> int:
        """Coordinates in E^r_{-s,t} of a vector given on another layout that
        is an r-cycle there."""
        e = self.entry(r, s, t)
        return e.coords(e.layout.project(v, layout))

    # -- pages ---------------------------------------------------------------

    def page(self, r: int, bidegrees: Iterable[Tuple[int, int]], with_differentials: bool = True) -> Page:
        bidegrees = list(bidegrees)
        nthreads = _threads()
        if nthreads > 1:
            with ThreadPoolExecutor(nthreads) as ex:
                list(ex.map(lambda b: self.entry(r, b[0], b[1]), bidegrees))
        entries = {(s, t): self.entry(r, s, t) for s, t in bidegrees}
        diffs = {}
        if with_differentials:
            for s, t in bidegrees:
                if entries[(s, t)].dim:
                    diffs[(s, t)] = self.differential(r, s, t)
        return Page(r, entries, diffs)

    def stable_page(self, bidegrees: Sequence[Tuple[int, int]], r_start: int = 1, r_max: int = 64) -> Tuple[int, Dict]:
        """First r >= r_start at which the dims and vanishing differentials
        repeat on the given bidegrees (E^infinity detection on a window)."""
        prev = None
        for r in range(r_start, r_max + 1):
            dims = {b: self.dim(r, *b) for b in bidegrees}
            quiet = all(self.differential(r, *b).is_zero() for b in bidegrees if dims[b])
            if quiet and prev == dims:
                return r - 1, dims
            prev = dims if quiet else None
        raise ContractError("pages did not stabilize")

    # -- maps ----------------------------------------------------------------

    def induced(self, f: BicomplexMap, target: "SpectralSequence", r: int, s: int, t: int) -> F2Matrix:
        """E^r(f) at (-s, t) in representative bases (rows = images)."""
        src = self.entry(r, s, t)
        tgt = target.entry(r, s, t)
        L, M = src.layout, tgt.layout
        rows = []
        for v in src.reps:
            w = 0
            for c in range(L.c0, L.c0 + L.w):
                u = L.comp(v, c)
                if u and M.c0 <= c < M.c0 + M.w:
                    w |= M.put(f.apply(c, L.n + c, u), c)
            rows.append(tgt.coords(w))
        return F2Matrix.from_rows(rows, tgt.dim)


def spectral_sequence(B: Bicomplex, **kw) -> SpectralSequence:
    return SpectralSequence(B, **kw)


def induced_map(f, r: int, s: int, t: int, S: SpectralSequence = None, T: SpectralSequence = None) -> F2Matrix:
    """E^r of a cosimplicial map (or bicomplex map) at (-s, t)."""
    if isinstance(f, CosimplicialMap):
        f = conormal_map(f)
    S = S or SpectralSequence(f.source)
    T = T or SpectralSequence(f.target)
    return S.induced(f, T, r, s, t)


# -- assembled total complex ---------------------------------------------------

@dataclass
class FilteredComplex:
    """Tot of B restricted to columns lo..hi (quotient by columns > hi) in
    total degrees nlo..nhi, as a chain complex with column blocks."""

    B: Bicomplex
    cols: Tuple[int, int]
    degrees: Tuple[int, int]
    layouts: Dict[int, Layout]
    complex: ChainComplex

    def filtration_of(self, n: int, j: int) -> int:
        L = self.layouts[n]
        for k in range(L.w):
            if L.offs[k] <= j < L.offs[k] + L.dims[k]:
                return L.c0 + k
        raise IndexError(j)


def filtered_total(B: Bicomplex, cols: Tuple[int, int], degrees: Tuple[int, int]) -> FilteredComplex:
    lo, hi = cols
    nlo, nhi = degrees
    S = SpectralSequence(B)
    layouts = {n: Layout(B, lo, hi - lo + 1, n) for n in range(nlo - 1, nhi + 2)}
    labels, images = {}, {}
    for n in range(nlo, nhi + 1):
        L = layouts[n]
        labels[n] = tuple(range(L.total))
        if n - 1 >= nlo:
            images[n] = tuple(S.boundary(L, 1 << j, layouts[n - 1]) for j in range(L.total))
    return FilteredComplex(B, cols, degrees, layouts, ChainComplex(labels, images))


def total_homology(B: Bicomplex, cols: Tuple[int, int], degrees: Tuple[int, int]) -> Dict[int, int]:
    """Homology dims of the assembled total complex in the interior degrees."""
    F = filtered_total(B, cols, (degrees[0] - 1, degrees[1] + 1))
    h = homology(F.complex)
    return {n: h[n][0] if n in h else 0 for n in range(degrees[0], degrees[1] + 1)}


def einf_check(B: Bicomplex, r_stop: int, bidegrees: Iterable[Tuple[int, int]]) -> Dict[Tuple[int, int], int]:
    """Dims of E^{r_stop} on the bidegrees; the caller asserts they vanish."""
    S = SpectralSequence(B)
    return {b: S.dim(r_stop, *b) for b in bidegrees}
