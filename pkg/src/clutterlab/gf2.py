"""Linear algebra over GF(2) on int bitsets.

A vector of width ``n`` is stored as a Python int whose most significant bit
(bit ``n-1``) is coordinate 1, so integer order is lexicographic order of the
0/1 strings.  Python ints are arbitrary precision, so widths are not limited
by the machine word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, WidthMismatch

MAX_WIDTH = 4096
DEFAULT_POINT_CAP = 22


@dataclass(frozen=True, order=True)
class BitVector:
    """A 0/1 vector of fixed width."""

    width: int
    value: int

    def __post_init__(self):
        if not 0 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width {self.width} outside 0..{MAX_WIDTH}")
        if self.value < 0 or self.value >> self.width:
            raise ValueError(f"value {self.value} does not fit in width {self.width}")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a 0/1 string: {s!r}")
        return cls(len(s), int(s, 2) if s else 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        return cls.from_string("".join("1" if b else "0" for b in bits))

    @classmethod
    def from_support(cls, width: int, support: Iterable[int]) -> "BitVector":
        """Build from 1-based coordinate labels."""
        value = 0
        for i in support:
            if not 1 <= i <= width:
                raise ValueError(f"coordinate {i} outside 1..{width}")
            value |= 1 << (width - i)
        return cls(width, value)

    @classmethod
    def zero(cls, width: int) -> "BitVector":
        return cls(width, 0)

    @classmethod
    def unit(cls, width: int, i: int) -> "BitVector":
        return cls.from_support(width, [i])

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - j)) & 1 for j in range(self.width))

    def support(self) -> frozenset[int]:
        """1-based coordinates holding a 1."""
        return frozenset(j + 1 for j in range(self.width)
                         if (self.value >> (self.width - 1 - j)) & 1)

    def weight(self) -> int:
        return self.value.bit_count()

    def __getitem__(self, i: int) -> int:
        """0-based coordinate access, like a sequence."""
        if not -self.width <= i < self.width:
            raise IndexError(i)
        i %= self.width
        return (self.value >> (self.width - 1 - i)) & 1

    def __len__(self) -> int:
        return self.width

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_width(self.width, other.width)
        return BitVector(self.width, self.value ^ other.value)

    def __and__(self, other: "BitVector") -> "BitVector":
        _check_width(self.width, other.width)
        return BitVector(self.width, self.value & other.value)

    def __or__(self, other: "BitVector") -> "BitVector":
        _check_width(self.width, other.width)
        return BitVector(self.width, self.value | other.value)

    def dot(self, other: "BitVector") -> int:
        _check_width(self.width, other.width)
        return (self.value & other.value).bit_count() & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""


def _check_width(a: int, b: int) -> None:
    if a != b:
        raise WidthMismatch(f"width {a} != width {b}")


# ---------------------------------------------------------------------------
# int-level elimination
# ---------------------------------------------------------------------------


def rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Fully reduced row echelon basis of the span of ``rows``.

    Pivots are leading (highest) bits; rows are returned in decreasing pivot
    order, which is the lexicographically smallest pivot-coordinate order.
    """
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r ^ b < r:
                r ^= b
        if r:
            # clear the new pivot from existing rows
            top = 1 << (r.bit_length() - 1)
            basis = [b ^ r if b & top else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return tuple(basis)


def reduce(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against a fully reduced basis; zero iff ``v`` is in the span."""
    for b in basis:
        if v >> (b.bit_length() - 1) & 1:
            v ^= b
    return v


def pivots(basis: Sequence[int]) -> list[int]:
    return [b.bit_length() - 1 for b in basis]


def null_space(rows: Iterable[int], width: int) -> tuple[int, ...]:
    """Basis (reduced) of ``{x : r.x = 0 for every row r}``."""
    basis = rref(rows)
    piv = {b.bit_length() - 1: b for b in basis}
    out = []
    for free in range(width):
        if free in piv:
            continue
        v = 1 << free
        for p, b in piv.items():
            if b >> free & 1:
                v |= 1 << p
        out.append(v)
    return rref(out)


def span_points(basis: Sequence[int]) -> np.ndarray | list[int]:
    """All GF(2) combinations of ``basis``; numpy array when everything fits 64 bits."""
    if all(b < (1 << 64) for b in basis):
        pts = np.zeros(1, dtype=np.uint64)
        for b in basis:
            pts = np.concatenate([pts, pts ^ np.uint64(b)])
        pts.sort()
        return pts
    pts_list = [0]
    for b in basis:
        pts_list += [p ^ b for p in pts_list]
    pts_list.sort()
    return pts_list


def kernel_combinations(keys: Sequence[int], vectors: Sequence[int]) -> list[int]:
    """Combinations of ``vectors`` whose matching ``keys`` sum to zero.

    Row-reduces the ``keys`` while carrying the same operations on
    ``vectors``; the carried vectors of rows whose key vanishes span the
    kernel of the linear map ``vectors[i] -> keys[i]``.
    """
    rows = [[k, v] for k, v in zip(keys, vectors)]
    kernel = []
    pivot_rows: list[list[int]] = []
    for row in rows:
        for pr in pivot_rows:
            if row[0] >> (pr[0].bit_length() - 1) & 1:
                row[0] ^= pr[0]
                row[1] ^= pr[1]
        if row[0]:
            pivot_rows.append(row)
        else:
            kernel.append(row[1])
    return kernel


# ---------------------------------------------------------------------------
# BinarySpace
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinarySpace:
    """A GF(2)-linear subspace of {0,1}^width held as a canonical basis.

    Two spaces are equal iff their bases are equal, because the basis is kept
    in fully reduced row echelon form.
    """

    width: int
    basis: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width {self.width} outside 0..{MAX_WIDTH}")
        canon = rref(self.basis)
        if any(b >> self.width for b in canon):
            raise WidthMismatch("basis vector wider than the space")
        object.__setattr__(self, "basis", canon)

    @classmethod
    def full(cls, width: int) -> "BinarySpace":
        return cls(width, tuple(1 << i for i in range(width)))

    @classmethod
    def from_strings(cls, rows: Iterable[str], width: int | None = None) -> "BinarySpace":
        vecs = [BitVector.from_string(r) for r in rows]
        return span(vecs, width=width)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_vectors(self) -> list[BitVector]:
        return [BitVector(self.width, b) for b in self.basis]

    def contains(self, v: BitVector | int) -> bool:
        if isinstance(v, BitVector):
            _check_width(self.width, v.width)
            v = v.value
        return reduce(v, self.basis) == 0

    __contains__ = contains

    def point_values(self, cap: int = DEFAULT_POINT_CAP) -> list[int]:
        """Sorted int values of every point."""
        if self.rank > cap:
            raise CapExceeded(f"rank {self.rank} exceeds point-enumeration cap {cap}")
        pts = span_points(self.basis)
        return [int(p) for p in pts]

    def points_array(self, cap: int = DEFAULT_POINT_CAP) -> np.ndarray:
        if self.rank > cap:
            raise CapExceeded(f"rank {self.rank} exceeds point-enumeration cap {cap}")
        if self.width > 64:
            raise ValueError("points_array needs width <= 64")
        return span_points(self.basis)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(enumerate_points(self))

    def __len__(self) -> int:
        return 1 << self.rank

    def __str__(self) -> str:
        rows = ", ".join(str(v) for v in self.basis_vectors()) or "-"
        return f"BinarySpace(width={self.width}, rank={self.rank}, basis=[{rows}])"


def span(generators: Iterable[BitVector], width: int | None = None) -> BinarySpace:
    gens = list(generators)
    if width is None:
        if not gens:
            raise ValueError("width required for an empty generator list")
        width = gens[0].width
    for g in gens:
        _check_width(width, g.width)
    return BinarySpace(width, tuple(g.value for g in gens))


def orthogonal_complement(space: BinarySpace) -> BinarySpace:
    return BinarySpace(space.width, null_space(space.basis, space.width))


def enumerate_points(space: BinarySpace, cap: int = DEFAULT_POINT_CAP) -> list[BitVector]:
    return [BitVector(space.width, p) for p in space.point_values(cap)]


def contains(space: BinarySpace, v: BitVector) -> bool:
    return space.contains(v)


def intersect_coordinate_zero(space: BinarySpace, coords: Iterable[int]) -> BinarySpace:
    """Subspace of points vanishing on the given 1-based coordinates."""
    mask = 0
    for c in coords:
        mask |= 1 << (space.width - c)
    kernel = kernel_combinations([b & mask for b in space.basis], space.basis)
    return BinarySpace(space.width, tuple(kernel))


def project(space: BinarySpace, keep: Sequence[int]) -> BinarySpace:
    """Image under the coordinate projection onto ``keep`` (1-based, in order)."""
    out = []
    w = len(keep)
    for b in space.basis:
        v = 0
        for j, c in enumerate(keep):
            if b >> (space.width - c) & 1:
                v |= 1 << (w - 1 - j)
        out.append(v)
    return BinarySpace(w, tuple(out))
