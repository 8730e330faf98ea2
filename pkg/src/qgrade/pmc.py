"""Pointed matched circles and chain-level bookkeeping on them.

Points are labelled 1..4k in the positive direction of the circle, starting
just after the basepoint z.  A 1-chain is stored by its multiplicities on the
intervals I_j = [a_j, a_{j+1}] for j = 1..4k-1; the interval through z always
has multiplicity zero and is not stored.  A 0-chain is stored by its
coefficients at a_1..a_{4k}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadPointCount, DimensionMismatch, MalformedMatching
from .linalg import as_fraction

H1Chain = tuple  # tuple[Fraction, ...] of length 4k - 1
H0Chain = tuple  # tuple[Fraction, ...] of length 4k


@dataclass(frozen=True)
class PointedMatchedCircle:
    n_points: int
    matching: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(int(i) for i in p)) for p in self.matching))
        object.__setattr__(self, "matching", pairs)
        validate(self)

    @classmethod
    def from_pairs(cls, n_points: int, pairs: Iterable[Sequence[int]]) -> "PointedMatchedCircle":
        pairs = [tuple(p) for p in pairs]
        for p in pairs:
            if len(p) != 2:
                raise MalformedMatching(f"matched pair {list(p)} does not have two points")
        return cls(int(n_points), tuple(pairs))

    @property
    def genus(self) -> int:
        return self.n_points // 4

    @property
    def h1_dim(self) -> int:
        return self.n_points - 1

    def pair_of(self, point: int) -> int:
        """Index (into ``matching``) of the matched pair containing ``point``."""
        for idx, pair in enumerate(self.matching):
            if point in pair:
                return idx
        raise MalformedMatching(f"point {point} is not matched")

    def partner(self, point: int) -> int:
        a, b = self.matching[self.pair_of(point)]
        return b if a == point else a

    def reversed(self) -> "PointedMatchedCircle":
        """The same circle with its orientation reversed (-Z)."""
        n = self.n_points
        return PointedMatchedCircle(n, tuple((n + 1 - a, n + 1 - b) for a, b in self.matching))

    def zero_h1(self) -> H1Chain:
        return (Fraction(0),) * self.h1_dim

    def interval(self, j: int) -> H1Chain:
        """The class [j, j+1] as a 1-chain."""
        if not 1 <= j < self.n_points:
            raise DimensionMismatch(f"interval index {j} out of range 1..{self.n_points - 1}")
        return tuple(Fraction(int(i == j - 1)) for i in range(self.h1_dim))

    def point(self, i: int) -> H0Chain:
        if not 1 <= i <= self.n_points:
            raise DimensionMismatch(f"point index {i} out of range 1..{self.n_points}")
        return tuple(Fraction(int(k == i - 1)) for k in range(self.n_points))

    def to_dict(self) -> dict:
        return {"n_points": self.n_points, "matching": [list(p) for p in self.matching]}

    @classmethod
    def from_dict(cls, data: dict) -> "PointedMatchedCircle":
        try:
            return cls.from_pairs(data["n_points"], data["matching"])
        except (KeyError, TypeError) as exc:
            raise MalformedMatching(f"bad pointed matched circle {data!r}: {exc}") from exc


def torus() -> PointedMatchedCircle:
    """The genus-one circle with matching {1,3}, {2,4}."""
    return PointedMatchedCircle(4, ((1, 3), (2, 4)))


def validate(pmc: PointedMatchedCircle) -> None:
    n = pmc.n_points
    if not isinstance(n, int) or n <= 0 or n % 4:
        raise BadPointCount(f"n_points must be a positive multiple of 4, got {n!r}")
    seen: list[int] = []
    for pair in pmc.matching:
        if len(pair) != 2:
            raise MalformedMatching(f"matched pair {pair} does not have two points")
        seen.extend(pair)
    if sorted(seen) != list(range(1, n + 1)):
        raise MalformedMatching(f"matching {[list(p) for p in pmc.matching]} is not a perfect pairing of 1..{n}")


def _chain(pmc: PointedMatchedCircle, chain: Sequence, length: int, what: str) -> tuple:
    if len(chain) != length:
        raise DimensionMismatch(f"{what} has length {len(chain)}, expected {length}")
    return tuple(as_fraction(c) for c in chain)


def h1(pmc: PointedMatchedCircle, chain: Sequence) -> H1Chain:
    return _chain(pmc, chain, pmc.h1_dim, "1-chain")


def h0(pmc: PointedMatchedCircle, chain: Sequence) -> H0Chain:
    return _chain(pmc, chain, pmc.n_points, "0-chain")


def _padded(pmc, alpha) -> list[Fraction]:
    # multiplicities c_0..c_{4k}, with the z-interval at both ends
    return [Fraction(0), *h1(pmc, alpha), Fraction(0)]


def boundary(pmc: PointedMatchedCircle, alpha: Sequence) -> H0Chain:
    """Boundary of a 1-chain, with d I_j = a_{j+1} - a_j."""
    c = _padded(pmc, alpha)
    return tuple(c[i - 1] - c[i] for i in range(1, pmc.n_points + 1))


def mu(pmc: PointedMatchedCircle, alpha: Sequence, x: Sequence) -> Fraction:
    """Average local multiplicity of ``alpha`` near the points of ``x``."""
    c = _padded(pmc, alpha)
    x = h0(pmc, x)
    return sum(((c[i - 1] + c[i]) / 2 * x[i - 1] for i in range(1, pmc.n_points + 1)), Fraction(0))


def reverse_orientation(pmc: PointedMatchedCircle, alpha: Sequence) -> H1Chain:
    """Push a 1-chain on -Z forward along the identity map to Z."""
    return tuple(-c for c in reversed(h1(pmc, alpha)))


def is_integral(chain: Sequence) -> bool:
    return all(as_fraction(c).denominator == 1 for c in chain)
