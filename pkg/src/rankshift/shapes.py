"""Multidegrees in Z_+^r and the lattice boxes they span.

A Shape is a tuple of r nonnegative integers.  Shapes are ordered
coordinatewise (a partial order: use .coords as a sort key when a total
order is needed).  box(m) is the point set {l : 0 <= l <= m}, always
iterated in row-major order, i.e. lexicographic with the last coordinate
varying fastest.
"""

from dataclasses import dataclass
from itertools import product
from math import prod


@dataclass(frozen=True)
class Shape:
    coords: tuple

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not coords:
            raise ValueError("rank must be at least 1")
        if any(c < 0 for c in coords):
            raise ValueError("shape coordinates must be nonnegative")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords):
        return cls(coords)

    @classmethod
    def zero(cls, rank):
        return cls((0,) * rank)

    @classmethod
    def cube(cls, k, rank):
        """The constant shape (k, ..., k), written k-bar elsewhere."""
        return cls((k,) * rank)

    @classmethod
    def unit(cls, j, rank):
        """Standard basis vector e_j, 0-based direction index."""
        return cls(tuple(1 if i == j else 0 for i in range(rank)))

    @classmethod
    def parse(cls, text):
        """Parse '3' or '1,2' into a Shape."""
        return cls(tuple(int(part) for part in str(text).split(",")))

    @property
    def rank(self):
        return len(self.coords)

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    @property
    def total(self):
        return sum(self.coords)

    @property
    def min_coord(self):
        return min(self.coords)

    @property
    def volume(self):
        """Number of lattice points in box(self)."""
        return prod(c + 1 for c in self.coords)

    def __add__(self, other):
        self._check_rank(other)
        return Shape(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check_rank(other)
        diff = tuple(a - b for a, b in zip(self.coords, other.coords))
        if any(d < 0 for d in diff):
            raise ValueError(f"{other.coords} does not divide below {self.coords}")
        return Shape(diff)

    def __le__(self, other):
        """Coordinatewise domination (partial order)."""
        self._check_rank(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __ge__(self, other):
        return other.__le__(self)

    def scaled(self, k):
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        return Shape(tuple(k * c for c in self.coords))

    def sup(self, other):
        self._check_rank(other)
        return Shape(tuple(max(a, b) for a, b in zip(self.coords, other.coords)))

    def box(self):
        """All points 0 <= l <= self as plain tuples, row-major order."""
        return product(*(range(c + 1) for c in self.coords))

    def index_of(self, point):
        """Row-major index of a box point."""
        idx = 0
        for c, m in zip(point, self.coords):
            idx = idx * (m + 1) + c
        return idx

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"Shape{self.coords}"
