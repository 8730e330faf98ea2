"""Arithmetic in the rational grading group G'_Q(Z) and its coset spaces.

An element is a pair (m; alpha) of a rational Maslov component and a rational
1-chain on the pointed matched circle, multiplied by

    (m1; a1) * (m2; a2) = (m1 + m2 + mu(a2, d a1); a1 + a2).

The twisting term c(a1, a2) = mu(a2, d a1) is bilinear and alternating on
chains of the circle (mu(a, d a) telescopes to zero), so q -> q*g is a
one-parameter subgroup and the subgroup generated by rational multiples of a
list of elements is either the graph of a linear functional over the span of
their 1-chains, or the full preimage of that span.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import pmc as _pmc
from .errors import (
    CircleMismatch,
    GradingSetMismatch,
    IndeterminateCoset,
    NoSolution,
)
from .linalg import as_fraction, solve_rational
from .pmc import PointedMatchedCircle


@dataclass(frozen=True)
class GradingElement:
    maslov: Fraction
    h1: tuple
    pmc: PointedMatchedCircle = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "maslov", as_fraction(self.maslov))
        object.__setattr__(self, "h1", _pmc.h1(self.pmc, self.h1))

    def __mul__(self, other: "GradingElement") -> "GradingElement":
        if not isinstance(other, GradingElement):
            return NotImplemented
        return mul(self, other)

    def __str__(self) -> str:
        return f"({fmt(self.maslov)};{','.join(fmt(c) for c in self.h1)})"

    @property
    def is_central(self) -> bool:
        return not any(self.h1)

    def is_integral(self) -> bool:
        """Whether the element lies in the integral group G' (m in Z/2, alpha integral)."""
        return (2 * self.maslov).denominator == 1 and _pmc.is_integral(self.h1)


def fmt(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def element(pmc: PointedMatchedCircle, maslov, h1: Sequence) -> GradingElement:
    return GradingElement(as_fraction(maslov), tuple(h1), pmc)


def _same_circle(*elements: GradingElement) -> PointedMatchedCircle:
    circle = elements[0].pmc
    for g in elements[1:]:
        if g.pmc != circle:
            raise CircleMismatch("grading elements live on different pointed matched circles")
    return circle


def cocycle(pmc: PointedMatchedCircle, a1: Sequence, a2: Sequence) -> Fraction:
    """The twisting term mu(a2, d a1) of the product."""
    return _pmc.mu(pmc, a2, _pmc.boundary(pmc, a1))


def identity(pmc: PointedMatchedCircle) -> GradingElement:
    return GradingElement(Fraction(0), pmc.zero_h1(), pmc)


def lambda_pow(pmc: PointedMatchedCircle, q=1) -> GradingElement:
    return GradingElement(as_fraction(q), pmc.zero_h1(), pmc)


def mul(g1: GradingElement, g2: GradingElement, *rest: GradingElement) -> GradingElement:
    circle = _same_circle(g1, g2, *rest)
    m = g1.maslov + g2.maslov + cocycle(circle, g1.h1, g2.h1)
    out = GradingElement(m, tuple(a + b for a, b in zip(g1.h1, g2.h1)), circle)
    for g in rest:
        out = mul(out, g)
    return out


def product(elements: Iterable[GradingElement], pmc: PointedMatchedCircle) -> GradingElement:
    out = identity(pmc)
    for g in elements:
        out = mul(out, g)
    return out


def inverse(g: GradingElement) -> GradingElement:
    circle = g.pmc
    return GradingElement(-g.maslov + cocycle(circle, g.h1, g.h1), tuple(-a for a in g.h1), circle)


def scale(q, g: GradingElement) -> GradingElement:
    q = as_fraction(q)
    return GradingElement(q * g.maslov, tuple(q * a for a in g.h1), g.pmc)


def R(g: GradingElement) -> GradingElement:
    """Anti-homomorphism G'(-Z) -> G'(Z); the target circle is ``g.pmc.reversed()``."""
    return GradingElement(g.maslov, _pmc.reverse_orientation(g.pmc, g.h1), g.pmc.reversed())


def commutator_exponent(g: GradingElement, h: GradingElement) -> Fraction:
    """Exponent e with g*h = lambda^e * h*g."""
    circle = _same_circle(g, h)
    return 2 * _pmc.mu(circle, h.h1, _pmc.boundary(circle, g.h1))


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE_YES = "indeterminate-yes"

    @property
    def holds(self) -> bool:
        return self is not Membership.NO


def canonical_word(generators: Sequence[GradingElement], coeffs: Sequence, pmc: PointedMatchedCircle) -> GradingElement:
    """Product of coeffs[i] * generators[i], one factor per generator, in order."""
    return product((scale(t, g) for t, g in zip(coeffs, generators)), pmc)


def _indeterminacy(pmc: PointedMatchedCircle, gens: Sequence[GradingElement]) -> bool:
    # splitting q*g into two factors shifts the Maslov part by q q' mu(a, d a)
    if any(cocycle(pmc, g.h1, g.h1) != 0 for g in gens):
        return True
    # reordering two factors shifts it by the commutator
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if cocycle(pmc, g.h1, h.h1) != cocycle(pmc, h.h1, g.h1):
                return True
    # a relation among the 1-chains whose canonical word is a nonzero power of lambda
    if gens:
        matrix = [[g.h1[j] for g in gens] for j in range(pmc.h1_dim)]
        sol = solve_rational(matrix, [0] * pmc.h1_dim, len(gens))
        for k in sol.kernel:
            if canonical_word(gens, k, pmc).maslov != 0:
                return True
    return False


@dataclass(frozen=True)
class SubgroupSpan:
    """Subgroup of G'_Q generated by all rational multiples of ``generators``."""

    pmc: PointedMatchedCircle = field(repr=False)
    generators: tuple
    indeterminate: bool = field(init=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.pmc != self.pmc:
                raise CircleMismatch("subgroup generators live on different circles")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "indeterminate", _indeterminacy(self.pmc, gens))

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def h1_matrix(self) -> list[list[Fraction]]:
        return [[g.h1[j] for g in self.generators] for j in range(self.pmc.h1_dim)]

    def word(self, coeffs: Sequence) -> GradingElement:
        return canonical_word(self.generators, coeffs, self.pmc)


def span_subgroup(generators: Iterable[GradingElement], pmc: PointedMatchedCircle | None = None) -> SubgroupSpan:
    gens = tuple(generators)
    if pmc is None:
        if not gens:
            raise ValueError("an empty span needs an explicit circle")
        pmc = gens[0].pmc
    return SubgroupSpan(pmc, gens)


def trivial_subgroup(pmc: PointedMatchedCircle) -> SubgroupSpan:
    return SubgroupSpan(pmc, ())


def member(P: SubgroupSpan, g: GradingElement) -> Membership:
    if g.pmc != P.pmc:
        raise CircleMismatch("element and subgroup live on different circles")
    sol = solve_rational(P.h1_matrix(), g.h1, len(P.generators))
    if sol is None:
        return Membership.NO
    if P.indeterminate:
        return Membership.INDETERMINATE_YES
    return Membership.YES if P.word(sol.particular).maslov == g.maslov else Membership.NO


def same_subgroup(P: SubgroupSpan, Q: SubgroupSpan) -> bool:
    if P.pmc != Q.pmc or P.indeterminate != Q.indeterminate:
        return False
    return all(member(Q, g).holds for g in P.generators) and all(member(P, g).holds for g in Q.generators)


@dataclass(frozen=True)
class DoubleCoset:
    """The double coset left * rep * right."""

    left: SubgroupSpan
    rep: GradingElement
    right: SubgroupSpan

    def __post_init__(self):
        if not (self.left.pmc == self.rep.pmc == self.right.pmc):
            raise CircleMismatch("double coset data live on different circles")

    @property
    def pmc(self) -> PointedMatchedCircle:
        return self.rep.pmc

    def __str__(self) -> str:
        return f"{self.left}\\{self.rep}/{self.right}"

    def with_rep(self, rep: GradingElement) -> "DoubleCoset":
        return DoubleCoset(self.left, rep, self.right)


def right_coset(P: SubgroupSpan, rep: GradingElement) -> DoubleCoset:
    """P \\ G' coset of rep (subgroup acting on the left)."""
    return DoubleCoset(P, rep, trivial_subgroup(rep.pmc))


def left_coset(rep: GradingElement, P: SubgroupSpan) -> DoubleCoset:
    """G' / P coset of rep (subgroup acting on the right)."""
    return DoubleCoset(trivial_subgroup(rep.pmc), rep, P)


@dataclass(frozen=True)
class RelativeGrading:
    kind: str  # "distinct" | "same" | "indeterminate"
    q: Fraction | None = None

    def __str__(self) -> str:
        if self.kind == "same":
            return f"Same({fmt(self.q)})"
        return self.kind.capitalize()

    @property
    def is_same(self) -> bool:
        return self.kind == "same"


DISTINCT = RelativeGrading("distinct")
INDETERMINATE = RelativeGrading("indeterminate")


def Same(q) -> RelativeGrading:
    return RelativeGrading("same", as_fraction(q))


class _Reduction:
    """Solutions (t, s) of  h1(p_L(t) * a * p_R(s)) = target  and the resulting Maslov values."""

    def __init__(self, dc: DoubleCoset, target_h1: Sequence):
        self.dc = dc
        left, right = dc.left.generators, dc.right.generators
        self.nl = len(left)
        pmc = dc.pmc
        target = _pmc.h1(pmc, target_h1)
        matrix = [[g.h1[j] for g in left] + [g.h1[j] for g in right] for j in range(pmc.h1_dim)]
        rhs = [t - a for t, a in zip(target, dc.rep.h1)]
        self.solution = solve_rational(matrix, rhs, self.nl + len(right))

    def element(self, coeffs: Sequence) -> GradingElement:
        t, s = coeffs[: self.nl], coeffs[self.nl:]
        return mul(self.dc.left.word(t), self.dc.rep, self.dc.right.word(s))

    def determinate(self) -> bool:
        if self.dc.left.indeterminate or self.dc.right.indeterminate:
            return False
        base = self.element(self.solution.particular).maslov
        for k in self.solution.kernel:
            shifted = [p + v for p, v in zip(self.solution.particular, k)]
            if self.element(shifted).maslov != base:
                return False
        return True


def coset_reduce(dc: DoubleCoset, target_h1: Sequence) -> GradingElement:
    """The representative of ``dc`` whose 1-chain is ``target_h1``."""
    red = _Reduction(dc, target_h1)
    if red.solution is None:
        raise NoSolution(f"no element of {dc} has 1-chain {list(map(fmt, target_h1))}")
    if not red.determinate():
        raise IndeterminateCoset(f"{dc} meets the 1-chain in more than one lambda-orbit point")
    return red.element(red.solution.particular)


def relative_lambda(a: DoubleCoset, b: DoubleCoset) -> RelativeGrading:
    """Exponent q with b = lambda^q * a, when it exists and is unique."""
    if not (same_subgroup(a.left, b.left) and same_subgroup(a.right, b.right)):
        raise GradingSetMismatch("double cosets belong to different grading sets")
    red = _Reduction(a, b.rep.h1)
    if red.solution is None:
        return DISTINCT
    if not red.determinate():
        return INDETERMINATE
    return Same(b.rep.maslov - red.element(red.solution.particular).maslov)


def in_left_coset(P: SubgroupSpan, g: GradingElement, h: GradingElement) -> Membership:
    """Is g in h * P ?"""
    return member(P, mul(inverse(h), g))


def in_right_coset(P: SubgroupSpan, g: GradingElement, h: GradingElement) -> Membership:
    """Is g in P * h ?"""
    return member(P, mul(g, inverse(h)))
