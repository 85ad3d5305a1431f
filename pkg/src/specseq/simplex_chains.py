"""Ordered injections, chains on the standard simplex, and homology of
finite chain complexes over GF(2).

An order-preserving injection [k] -> [p] is stored as the (p+1)-bit word with
bit i set iff i is in the image. Injections with the same source and target
are ordered by comparing words from bit p down to bit 0, which is the same as
comparing the words as integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from itertools import combinations
from math import comb
from typing import Dict, Hashable, Iterable, Optional, Sequence

from .f2linalg import (
    Echelon,
    F2Matrix,
    LinAlgError,
    apply_images,
    bits,
    images_to_matrix,
    kernel_of_images,
    subquotient_rows,
)


# -- raw word helpers, shared with the cosimplicial module --------------------

def words(k: int, p: int) -> list:
    """All words of injections [k] -> [p], increasing."""
    if k < 0 or k > p:
        return []
    return sorted(sum(1 << i for i in c) for c in combinations(range(p + 1), k + 1))


def based_words(k: int, p: int) -> list:
    """Words of injections [k] -> [p] sending 0 to 0, increasing."""
    if k < 0 or k > p:
        return []
    return sorted(1 | sum(1 << i for i in c) for c in combinations(range(1, p + 1), k))


def faces(w: int) -> list:
    """Words obtained by deleting one image point, lowest point first."""
    out = []
    v = w
    while v:
        low = v & -v
        out.append(w ^ low)
        v ^= low
    return out


def insert_zero(w: int, i: int) -> int:
    """Coface d^i on words: shift bits at positions >= i up by one."""
    low = w & ((1 << i) - 1)
    return low | ((w >> i) << (i + 1))


def collapse(w: int, j: int) -> Optional[int]:
    """Codegeneracy s^j on words (j and j+1 merge); None if not injective."""
    if (w >> j) & 3 == 3:
        return None
    low = w & ((1 << (j + 1)) - 1)
    return low | ((w >> (j + 1)) << j)


def image_points(w: int) -> list:
    return list(bits(w))


# -- the Injection type -------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class Injection:
    """Order-preserving injection [k] -> [p] encoded by its image word."""

    k: int
    p: int
    word: int

    def __post_init__(self):
        if self.word.bit_count() != self.k + 1 or self.word >> (self.p + 1):
            raise ValueError("word does not describe an injection [k] -> [p]")

    @classmethod
    def from_image(cls, image: Iterable[int], p: int) -> "Injection":
        image = sorted(set(image))
        return cls(len(image) - 1, p, sum(1 << i for i in image))

    @classmethod
    def identity(cls, k: int) -> "Injection":
        return cls(k, k, (1 << (k + 1)) - 1)

    def image(self) -> tuple:
        return tuple(bits(self.word))

    def __call__(self, x: int) -> int:
        return self.image()[x]

    def word_string(self) -> str:
        """Letters for positions 0..p, left to right."""
        return "".join("1" if (self.word >> i) & 1 else "0" for i in range(self.p + 1))

    def _key(self):
        return (self.p, self.k, self.word)

    def __lt__(self, other: "Injection") -> bool:
        return self._key() < other._key()

    def coface(self, i: int) -> "Injection":
        if not 0 <= i <= self.p + 1:
            raise ValueError("coface index out of range")
        return Injection(self.k, self.p + 1, insert_zero(self.word, i))

    def codegeneracy(self, j: int) -> Optional["Injection"]:
        if not 0 <= j < self.p:
            raise ValueError("codegeneracy index out of range")
        w = collapse(self.word, j)
        return None if w is None else Injection(self.k, self.p - 1, w)

    def is_based(self) -> bool:
        return bool(self.word & 1)

    def __repr__(self):
        return f"Injection({self.k}->{self.p}, {self.image()})"


def injections(k: int, p: int) -> list:
    return [Injection(k, p, w) for w in words(k, p)]


def based_injections(p: int, r: int) -> list:
    """Injections [r] -> [p] with 0 -> 0 in increasing order; C(p, r) of them."""
    if p < 0 or r < 0:
        raise ValueError("p and r must be nonnegative")
    return [Injection(r, p, w) for w in based_words(r, p)]


# -- chain complexes ----------------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Finite chain complex with labelled bases.

    labels[q] is the ordered basis in degree q and images[q][j] is the boundary
    of basis vector j, as an int over labels[q-1].
    """

    labels: Dict[int, tuple]
    images: Dict[int, tuple]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def degrees(self) -> list:
        return sorted(q for q, b in self.labels.items() if b)

    def dim(self, q: int) -> int:
        return len(self.labels.get(q, ()))

    def basis(self, q: int) -> tuple:
        return self.labels.get(q, ())

    def index(self, q: int) -> dict:
        ix = self._index.get(q)
        if ix is None:
            ix = {lab: j for j, lab in enumerate(self.basis(q))}
            self._index[q] = ix
        return ix

    def boundary_images(self, q: int) -> tuple:
        imgs = self.images.get(q)
        if imgs is None:
            return (0,) * self.dim(q)
        return imgs

    def differential(self, q: int) -> F2Matrix:
        """Matrix of the boundary C_q -> C_{q-1}."""
        return images_to_matrix(self.boundary_images(q), self.dim(q - 1))

    def vector(self, q: int, labs: Iterable[Hashable]) -> int:
        ix = self.index(q)
        v = 0
        for lab in labs:
            v ^= 1 << ix[lab]
        return v

    def check(self) -> None:
        for q in self.degrees():
            imgs = self.boundary_images(q)
            lim = 1 << self.dim(q - 1)
            for im in imgs:
                if im >= lim:
                    raise LinAlgError(f"boundary image out of range in degree {q}")
            lower = self.boundary_images(q - 1)
            for im in imgs:
                if apply_images(lower, im):
                    raise LinAlgError(f"boundary does not square to zero at degree {q}")


def chain_complex(labels: Dict[int, Sequence], boundary) -> ChainComplex:
    """Build a complex from bases and a function label -> labels of its boundary.

    Repeated labels in a boundary cancel in pairs.
    """
    labels = {q: tuple(b) for q, b in labels.items() if len(b)}
    index = {q: {lab: j for j, lab in enumerate(b)} for q, b in labels.items()}
    images = {}
    for q, b in labels.items():
        below = index.get(q - 1, {})
        imgs = []
        for lab in b:
            v = 0
            for f in boundary(lab):
                j = below.get(f)
                if j is not None:
                    v ^= 1 << j
            imgs.append(v)
        images[q] = tuple(imgs)
    return ChainComplex(labels, images)


def delta_chains(p: int) -> ChainComplex:
    """Normalized chains on the standard p-simplex."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    labels = {k: injections(k, p) for k in range(p + 1)}

    def bd(e: Injection):
        if e.k == 0:
            return []
        return [Injection(e.k - 1, p, w) for w in faces(e.word)]

    return chain_complex(labels, bd)


def skeleton(C: ChainComplex, t: int) -> ChainComplex:
    """Brutal truncation: everything above degree t is dropped."""
    labels = {q: b for q, b in C.labels.items() if q <= t}
    images = {q: im for q, im in C.images.items() if q <= t}
    return ChainComplex(labels, images)


def splitting_S(p: int, t: int) -> F2Matrix:
    """Matrix Delta^p_t -> Delta^p_{t+1} adjoining 0 to the image (or 0)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    src = words(t, p)
    tgt = {w: j for j, w in enumerate(words(t + 1, p))}
    imgs = [0 if w & 1 else 1 << tgt[w | 1] for w in src]
    return images_to_matrix(imgs, len(tgt))


def homology(C: ChainComplex) -> Dict[int, tuple]:
    """Map degree -> (dim, reps) with reps an F2Matrix of cycle rows."""
    out = {}
    for q in C.degrees():
        cycles = kernel_of_images(C.boundary_images(q))
        bounds = [im for im in C.boundary_images(q + 1)]
        reps = subquotient_rows(cycles, bounds)
        out[q] = (len(reps), F2Matrix.from_rows(reps, C.dim(q)))
    return out


def betti(C: ChainComplex) -> Dict[int, int]:
    return {q: h[0] for q, h in homology(C).items()}


def expected_skeleton_homology(p: int, t: int) -> Dict[int, int]:
    """Homology dims of the t-skeleton of the p-simplex by counting."""
    if t < 0:
        return {}
    if t == 0:
        return {0: p + 1}
    out = {0: 1}
    if comb(p, t + 1):
        out[t] = comb(p, t + 1)
    return out
