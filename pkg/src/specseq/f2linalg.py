"""Exact linear algebra over the two-element field.

Vectors are Python ints: bit j holds coordinate j, addition is XOR. A matrix
is a tuple of such row ints plus an explicit column count, so empty matrices
(no rows, or no columns) are ordinary values.

Echelon forms use the lowest set bit of a row as its pivot. That choice makes
the "reduced" representatives below canonical functions of the row space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

WORD = 64


class LinAlgError(ValueError):
    pass


def popcount(v: int) -> int:
    return v.bit_count()


def bits(v: int):
    """Yield indices of set bits of v in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def parity(v: int) -> int:
    return v.bit_count() & 1


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over GF(2); row i is the int rows[i], bit j is entry (i, j)."""

    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise LinAlgError("row count does not match data")
        lim = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= lim:
                raise LinAlgError("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "F2Matrix":
        rows = tuple(rows)
        return cls(len(rows), ncols, rows)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "F2Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise LinAlgError("ragged matrix")
            v = 0
            for j, x in enumerate(row):
                if x & 1:
                    v |= 1 << j
            rows.append(v)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "F2Matrix":
        """Build the matrix whose j-th column is the int cols[j]."""
        return cls.from_rows(cols, nrows).transpose()

    def to_lists(self) -> list:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_words(self) -> list:
        """Row-major packed 64-bit words, ceil(ncols/64) per row."""
        per = -(-self.ncols // WORD)
        mask = (1 << WORD) - 1
        out = []
        for r in self.rows:
            for w in range(per):
                out.append((r >> (WORD * w)) & mask)
        return out

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "F2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            for j in bits(r):
                cols[j] |= bit
        return F2Matrix(self.ncols, self.nrows, tuple(cols))

    def columns(self) -> list:
        return list(self.transpose().rows)

    def apply(self, v: int) -> int:
        """Matrix times column vector v (as an int over the columns)."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise LinAlgError("shape mismatch in product")
        orows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            for j in bits(r):
                acc ^= orows[j]
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in sum")
        return F2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def stack(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.ncols:
            raise LinAlgError("column mismatch in stack")
        return F2Matrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)


# -- echelon machinery on raw row lists --------------------------------------

class Echelon:
    """Incremental echelon basis keyed by lowest set bit.

    Optionally tracks, for each stored row, which inserted vectors it is a
    combination of (a tag bitmask), so callers can recover coefficients.
    """

    __slots__ = ("piv", "tags")

    def __init__(self):
        self.piv = {}
        self.tags = {}

    def __len__(self):
        return len(self.piv)

    def reduce(self, v: int, tag: int = 0):
        piv = self.piv
        tags = self.tags
        while v:
            low = v & -v
            row = piv.get(low)
            if row is None:
                break
            v ^= row
            tag ^= tags[low]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        low = v & -v
        self.piv[low] = v
        self.tags[low] = tag
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def pivots(self) -> list:
        return sorted(p.bit_length() - 1 for p in self.piv)

    def reduced_rows(self) -> list:
        """Fully reduced rows sorted by pivot (the RREF)."""
        order = sorted(self.piv)
        done = {}
        for low in reversed(order):
            v = self.piv[low]
            rest = v ^ low
            while rest:
                b = rest & -rest
                rest ^= b
                if b in done and v & b:
                    v ^= done[b]
            done[low] = v
        return [done[low] for low in order]


def _rref_rows(rows: Iterable[int]) -> list:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.reduced_rows()


def rank_of(rows: Iterable[int]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


# -- public operations --------------------------------------------------------

def rank_profile(M: F2Matrix):
    """Return (rank, pivots, reduced) with reduced the RREF of M.

    The RREF has rank nonzero rows sorted by pivot, padded with zero rows to
    keep the shape of M.
    """
    red = _rref_rows(M.rows)
    pivots = [(r & -r).bit_length() - 1 for r in red]
    padded = tuple(red) + (0,) * (M.nrows - len(red))
    return len(red), pivots, F2Matrix(M.nrows, M.ncols, padded)


def rank(M: F2Matrix) -> int:
    return rank_of(M.rows)


def kernel_basis(M: F2Matrix) -> F2Matrix:
    """Rows spanning {v : M v = 0}, one per free column of the RREF."""
    red = _rref_rows(M.rows)
    pivcols = {}
    for r in red:
        pivcols[(r & -r).bit_length() - 1] = r
    out = []
    for f in range(M.ncols):
        if f in pivcols:
            continue
        v = 1 << f
        fb = 1 << f
        for p, r in pivcols.items():
            if r & fb:
                v |= 1 << p
        out.append(v)
    return F2Matrix.from_rows(out, M.ncols)


def solve(M: F2Matrix, b: int) -> Optional[int]:
    """Solve M x = b; free variables are set to zero. None if unsolvable."""
    if b < 0 or b >> M.nrows:
        raise LinAlgError("right-hand side does not match the row count")
    # augment each row with its right-hand-side bit at position ncols
    top = 1 << M.ncols
    aug = [r | (top if (b >> i) & 1 else 0) for i, r in enumerate(M.rows)]
    red = _rref_rows(aug)
    x = 0
    for r in red:
        low = r & -r
        if low == top:
            return None
        if r & top:
            x |= low
    return x


def subquotient(num: F2Matrix, den: F2Matrix):
    """Quotient of row-space(num) by row-space(den).

    Returns (dim, reps) where reps are canonical rows of row-space(num): the
    rows of its RREF whose pivots are not pivots of row-space(den).
    """
    if num.ncols != den.ncols:
        raise LinAlgError("ambient dimensions differ")
    reps = subquotient_rows(num.rows, den.rows)
    return len(reps), F2Matrix.from_rows(reps, num.ncols)


def subquotient_rows(num_rows: Iterable[int], den_rows: Iterable[int]) -> list:
    en = Echelon()
    for r in num_rows:
        en.add(r)
    ed = Echelon()
    for r in den_rows:
        if not en.contains(r):
            raise LinAlgError("denominator escapes numerator")
        ed.add(r)
    denpiv = set(ed.piv)
    return [r for r in en.reduced_rows() if (r & -r) not in denpiv]


class QuotientCoords:
    """Coordinates of vectors in V/W against a fixed list of representatives.

    Built from a spanning set of W and representatives whose classes form a
    basis of V/W; coords(v) returns the bitmask of representatives whose sum
    is congruent to v modulo W.
    """

    def __init__(self, den_rows: Iterable[int], reps: Sequence[int]):
        self.e = Echelon()
        for r in den_rows:
            self.e.add(r)
        self.n = len(reps)
        for i, r in enumerate(reps):
            if not self.e.add(r, 1 << i):
                raise LinAlgError("representatives are dependent modulo the denominator")

    def coords(self, v: int) -> int:
        res, tag = self.e.reduce(v)
        if res:
            raise LinAlgError("vector is not in the numerator span")
        return tag

    def is_zero_class(self, v: int) -> bool:
        return self.coords(v) == 0


# -- maps given by the images of basis vectors --------------------------------

def apply_images(images: Sequence[int], v: int) -> int:
    """Image of v under the map sending basis vector j to images[j]."""
    out = 0
    while v:
        low = v & -v
        out ^= images[low.bit_length() - 1]
        v ^= low
    return out


def kernel_of_images(images: Sequence[int]) -> list:
    """Spanning set (in fact a basis) of the kernel of a map given by images."""
    e = Echelon()
    out = []
    piv, tags = e.piv, e.tags
    for j, im in enumerate(images):
        v, tag = e.reduce(im, 1 << j)
        if v:
            low = v & -v
            piv[low] = v
            tags[low] = tag
        else:
            out.append(tag)
    return out


def images_to_matrix(images: Sequence[int], target_dim: int) -> F2Matrix:
    return F2Matrix.from_columns(list(images), target_dim)


def matrix_to_images(M: F2Matrix) -> list:
    return list(M.transpose().rows)


def compose_images(outer: Sequence[int], inner: Sequence[int]) -> list:
    """Images of outer after inner."""
    return [apply_images(outer, v) for v in inner]
