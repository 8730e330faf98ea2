"""Combinatorial Heegaard diagrams (closed or bordered) and their domains.

A diagram is stored as a cell structure on the Heegaard surface:

* every curve is cut by its intersection points into *segments*; segment
  ``c:i`` of a circle with points p_0..p_{r-1} runs from p_i to p_{i+1 mod r};
  an alpha arc from boundary point a_u to a_v with interior points
  p_0..p_{r-1} has segments ``c:0`` (a_u -> p_0) ... ``c:r`` (p_{r-1} -> a_v);
* the boundary circle of a bordered diagram is cut into intervals ``Z:j``
  (a_j -> a_{j+1}, j = 1..4k-1) and ``Z:z`` (a_{4k} -> a_1, through z), with
  the points a_j numbered along the boundary orientation of the surface;
* each region lists its oriented boundary as one or more cycles of signed
  edges (``+a:0``, ``-b:1``, ...), traversed with the region on the left,
  together with its Euler characteristic.

Corners, Euler measure, point measure and all boundary operators are derived
from these cycles.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from . import grgroup
from .errors import (
    ClosedDiagramHasNoBoundary,
    IndeterminateGrading,
    InvalidDiagram,
    NoConnectingDomain,
    NoRationalDomain,
    NotConnecting,
)
from .grgroup import DoubleCoset, GradingElement, SubgroupSpan
from .linalg import as_fraction, solve_integer, solve_rational
from .pmc import PointedMatchedCircle

ALPHA, BETA, BOUNDARY = "alpha", "beta", "boundary"
Z_INTERVAL = "Z:z"


@dataclass(frozen=True)
class Curve:
    name: str
    kind: str  # "alpha" (circle), "arc" (alpha arc) or "beta"
    points: tuple
    ends: tuple | None = None

    @property
    def is_arc(self) -> bool:
        return self.kind == "arc"


class Edge(NamedTuple):
    id: str
    kind: str  # ALPHA, BETA or BOUNDARY
    tail: str | None  # None for a circle without intersection points
    head: str | None
    curve: str


class Region(NamedTuple):
    name: str
    cycles: tuple  # tuple of cycles, each a tuple of (sign, edge id)
    chi: int = 1


def boundary_vertex(j: int) -> str:
    return f"@{j}"


def parse_signed(token: str) -> tuple[int, str]:
    token = token.strip()
    if token.startswith("-"):
        return -1, token[1:]
    if token.startswith("+"):
        return 1, token[1:]
    return 1, token


def format_signed(sign: int, edge: str) -> str:
    return ("+" if sign > 0 else "-") + edge


class Domain(tuple):
    """Rational multiplicities indexed by the diagram's regions."""

    def __new__(cls, values: Iterable):
        return super().__new__(cls, (as_fraction(v) for v in values))

    def __add__(self, other):
        return Domain(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return Domain(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Domain(-a for a in self)

    def __rmul__(self, q):
        q = as_fraction(q)
        return Domain(q * a for a in self)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self)


class Generator(tuple):
    """A generator: its intersection points, ordered by beta circle."""

    @property
    def name(self) -> str:
        return ",".join(self)


class Pi2(NamedTuple):
    particular: Domain
    periodic_basis: list


class BoundaryData(NamedTuple):
    is_connecting: bool
    del_boundary: tuple | None


@dataclass(frozen=True)
class BorderedDiagram:
    genus: int
    boundary: PointedMatchedCircle | None
    curves: tuple  # of Curve
    points: tuple  # of (name, alpha curve, beta curve)
    regions: tuple  # of Region
    z_region: str
    name: str = field(default="", compare=False)

    def __post_init__(self):
        self._validate()

    # ---------------------------------------------------------------- structure
    @property
    def is_closed(self) -> bool:
        return self.boundary is None

    @cached_property
    def curve_by_name(self) -> dict:
        return {c.name: c for c in self.curves}

    @cached_property
    def alpha_circles(self) -> list:
        return [c for c in self.curves if c.kind == "alpha"]

    @cached_property
    def alpha_arcs(self) -> list:
        return [c for c in self.curves if c.kind == "arc"]

    @cached_property
    def beta_circles(self) -> list:
        return [c for c in self.curves if c.kind == "beta"]

    @cached_property
    def point_names(self) -> list:
        return [p[0] for p in self.points]

    @cached_property
    def point_curves(self) -> dict:
        return {p[0]: (p[1], p[2]) for p in self.points}

    @cached_property
    def edges(self) -> dict:
        out: dict[str, Edge] = {}
        for c in self.curves:
            kind = BETA if c.kind == "beta" else ALPHA
            if c.is_arc:
                stops = [boundary_vertex(c.ends[0]), *c.points, boundary_vertex(c.ends[1])]
                for i in range(len(stops) - 1):
                    out[f"{c.name}:{i}"] = Edge(f"{c.name}:{i}", kind, stops[i], stops[i + 1], c.name)
            elif c.points:
                r = len(c.points)
                for i in range(r):
                    out[f"{c.name}:{i}"] = Edge(f"{c.name}:{i}", kind, c.points[i], c.points[(i + 1) % r], c.name)
            else:
                out[f"{c.name}:0"] = Edge(f"{c.name}:0", kind, None, None, c.name)
        if self.boundary is not None:
            n = self.boundary.n_points
            for j in range(1, n):
                out[f"Z:{j}"] = Edge(f"Z:{j}", BOUNDARY, boundary_vertex(j), boundary_vertex(j + 1), "Z")
            out[Z_INTERVAL] = Edge(Z_INTERVAL, BOUNDARY, boundary_vertex(n), boundary_vertex(1), "Z")
        return out

    @cached_property
    def region_names(self) -> list:
        return [r.name for r in self.regions]

    @cached_property
    def region_index(self) -> dict:
        return {r.name: i for i, r in enumerate(self.regions)}

    @cached_property
    def z_index(self) -> int:
        return self.region_index[self.z_region]

    @cached_property
    def free_regions(self) -> list:
        """Indices of the regions whose multiplicity is unknown (all but z)."""
        return [i for i in range(len(self.regions)) if i != self.z_index]

    @cached_property
    def corners(self) -> list:
        """Per region, a Counter of corners by vertex."""
        out = []
        for region in self.regions:
            counts: Counter = Counter()
            for cycle in region.cycles:
                for (s1, e1), (s2, e2) in zip(cycle, cycle[1:] + cycle[:1]):
                    if len(cycle) == 1:
                        break
                    a, b = self.edges[e1], self.edges[e2]
                    if a.kind != b.kind:
                        counts[a.head if s1 > 0 else a.tail] += 1
            out.append(counts)
        return out

    @cached_property
    def corner_count(self) -> list:
        return [sum(c.values()) for c in self.corners]

    @cached_property
    def beta_coboundary(self) -> list:
        """Per region, the 0-chain d(dR restricted to beta) as a Counter over points."""
        out = []
        for region in self.regions:
            chain: Counter = Counter()
            for cycle in region.cycles:
                for sign, e in cycle:
                    edge = self.edges[e]
                    if edge.kind == BETA and edge.tail is not None:
                        chain[edge.head] += sign
                        chain[edge.tail] -= sign
            out.append(chain)
        return out

    @cached_property
    def boundary_arcs(self) -> list:
        """Per region, the multiset of boundary intervals it touches (by index, 'z' for Z:z)."""
        out = []
        for region in self.regions:
            arcs: Counter = Counter()
            for cycle in region.cycles:
                for sign, e in cycle:
                    if self.edges[e].kind == BOUNDARY:
                        arcs[e.split(":")[1]] += sign
            out.append(arcs)
        return out

    def occupied_arcs(self, x: Sequence[str]) -> frozenset:
        """Matched-pair indices of the alpha arcs occupied by ``x``."""
        out = set()
        for p in x:
            curve = self.curve_by_name[self.point_curves[p][0]]
            if curve.is_arc:
                out.add(self.boundary.pair_of(curve.ends[0]))
        return frozenset(out)

    # --------------------------------------------------------------- validation
    def _fail(self, msg: str):
        raise InvalidDiagram(f"{self.name or 'diagram'}: {msg}")

    def _validate(self):
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            self._fail("curve names are not unique")
        if "Z" in names:
            self._fail("'Z' is reserved for the boundary circle")
        n_alpha, n_arcs, n_beta = len(self.alpha_circles), len(self.alpha_arcs), len(self.beta_circles)
        g = self.genus
        if n_beta != g:
            self._fail(f"expected {g} beta circles, found {n_beta}")
        if self.boundary is None:
            if n_arcs:
                self._fail("a closed diagram cannot have alpha arcs")
            if n_alpha != g:
                self._fail(f"expected {g} alpha circles, found {n_alpha}")
        else:
            k = self.boundary.genus
            if n_arcs != 2 * k:
                self._fail(f"expected {2 * k} alpha arcs, found {n_arcs}")
            if n_alpha != g - k:
                self._fail(f"expected {g - k} alpha circles, found {n_alpha}")
            ends = sorted(e for c in self.alpha_arcs for e in c.ends)
            if ends != list(range(1, self.boundary.n_points + 1)):
                self._fail("alpha arc endpoints must use every boundary point exactly once")
            for c in self.alpha_arcs:
                if self.boundary.partner(c.ends[0]) != c.ends[1]:
                    self._fail(f"arc {c.name} does not join a matched pair")
        for c in self.curves:
            if c.kind not in ("alpha", "arc", "beta"):
                self._fail(f"unknown curve kind {c.kind!r}")
            if len(set(c.points)) != len(c.points):
                self._fail(f"curve {c.name} passes through a point twice")
        pnames = self.point_names
        if len(set(pnames)) != len(pnames):
            self._fail("point names are not unique")
        for name, a, b in self.points:
            ca, cb = self.curve_by_name.get(a), self.curve_by_name.get(b)
            if ca is None or cb is None or ca.kind == "beta" or cb.kind != "beta":
                self._fail(f"point {name} must lie on one alpha curve and one beta circle")
            if name not in ca.points or name not in cb.points:
                self._fail(f"point {name} is missing from the point lists of {a} or {b}")
        for c in self.curves:
            for p in c.points:
                owner = self.point_curves.get(p)
                if owner is None or c.name not in owner:
                    self._fail(f"curve {c.name} lists unknown point {p}")
        rnames = self.region_names
        if len(set(rnames)) != len(rnames):
            self._fail("region names are not unique")
        if self.z_region not in rnames:
            self._fail(f"z region {self.z_region!r} is not a region")
        usage: Counter = Counter()
        for region in self.regions:
            for cycle in region.cycles:
                if not cycle:
                    self._fail(f"region {region.name} has an empty boundary cycle")
                for sign, e in cycle:
                    if e not in self.edges:
                        self._fail(f"region {region.name} uses unknown edge {e}")
                    usage[(e, sign)] += 1
                for (s1, e1), (s2, e2) in zip(cycle, cycle[1:] + cycle[:1]):
                    a, b = self.edges[e1], self.edges[e2]
                    end = a.head if s1 > 0 else a.tail
                    start = b.tail if s2 > 0 else b.head
                    if end != start:
                        self._fail(f"region {region.name}: {format_signed(s1, e1)} does not continue into {format_signed(s2, e2)}")
        for e, edge in self.edges.items():
            plus, minus = usage[(e, 1)], usage[(e, -1)]
            if edge.kind == BOUNDARY:
                if (plus, minus) != (1, 0):
                    self._fail(f"boundary interval {e} must be used once, positively")
            elif (plus, minus) != (1, 1):
                self._fail(f"edge {e} must bound exactly two regions with opposite orientations (got +{plus}/-{minus})")
        if self.boundary is not None:
            zi = self.z_index
            if self.boundary_arcs[zi]["z"] != 1:
                self._fail("the z region must contain the basepoint interval Z:z")
        vertices = set(pnames)
        if self.boundary is not None:
            vertices |= {boundary_vertex(j) for j in range(1, self.boundary.n_points + 1)}
        euler = len(vertices) - len(self.edges) + sum(r.chi for r in self.regions)
        euler += sum(1 for e in self.edges.values() if e.tail is None)  # vertexless loops
        expected = 2 - 2 * self.genus - (0 if self.boundary is None else 1)
        if euler != expected:
            self._fail(f"Euler characteristic {euler} does not match the surface ({expected})")

    # ----------------------------------------------------------------- domains
    def domain(self, values: dict | Sequence) -> Domain:
        if isinstance(values, dict):
            unknown = set(values) - set(self.region_names)
            if unknown:
                raise InvalidDiagram(f"unknown regions {sorted(unknown)}")
            return Domain(values.get(name, 0) for name in self.region_names)
        if len(values) != len(self.regions):
            raise InvalidDiagram("domain length does not match the number of regions")
        return Domain(values)

    def zero_domain(self) -> Domain:
        return Domain([0] * len(self.regions))

    def check_generator(self, x: Sequence[str]) -> Generator:
        x = tuple(x)
        for p in x:
            if p not in self.point_curves:
                raise InvalidDiagram(f"unknown intersection point {p}")
        key = {b.name: i for i, b in enumerate(self.beta_circles)}
        ordered = Generator(sorted(x, key=lambda p: key[self.point_curves[p][1]]))
        if not is_generator(self, ordered):
            raise InvalidDiagram(f"{ordered.name} is not a generator")
        return ordered

    def corner_system(self) -> list:
        """Rows (one per intersection point) of d(d^beta B) as a function of the free regions."""
        rows = []
        for p in self.point_names:
            rows.append([Fraction(self.beta_coboundary[i][p]) for i in self.free_regions])
        return rows

    def point_chain(self, x: Sequence[str], y: Sequence[str]) -> list:
        cx, cy = Counter(x), Counter(y)
        return [Fraction(cx[p] - cy[p]) for p in self.point_names]

    def lift(self, free_values: Sequence) -> Domain:
        full = [Fraction(0)] * len(self.regions)
        for i, v in zip(self.free_regions, free_values):
            full[i] = as_fraction(v)
        return Domain(full)


def is_generator(d: BorderedDiagram, x: Sequence[str]) -> bool:
    if len(x) != d.genus or len(set(x)) != len(x):
        return False
    alphas = Counter(d.point_curves[p][0] for p in x)
    betas = Counter(d.point_curves[p][1] for p in x)
    if any(betas[b.name] != 1 for b in d.beta_circles):
        return False
    if any(alphas[a.name] != 1 for a in d.alpha_circles):
        return False
    return all(alphas[a.name] <= 1 for a in d.alpha_arcs)


def enumerate_generators(d: BorderedDiagram) -> list:
    """All generators, in lexicographic order of the beta circles' point lists."""
    out = []
    for choice in itertools.product(*(b.points for b in d.beta_circles)):
        if is_generator(d, choice):
            out.append(Generator(choice))
    return out


def domain_boundaries(d: BorderedDiagram, B: Sequence, x: Sequence[str], y: Sequence[str], want_boundary: bool = True) -> BoundaryData:
    """Whether B connects x to y, and its boundary part on the circle as a 1-chain."""
    B = d.domain(B)
    chain: Counter = Counter()
    for i, mult in enumerate(B):
        if mult:
            for p, c in d.beta_coboundary[i].items():
                chain[p] += mult * c
    target = Counter(x)
    target.subtract(Counter(y))
    connecting = B[d.z_index] == 0 and all(chain[p] == target[p] for p in d.point_names)
    del_b = None
    if want_boundary:
        if d.is_closed:
            raise ClosedDiagramHasNoBoundary("a closed diagram has no boundary component")
        del_b = del_boundary(d, B)
    return BoundaryData(connecting, del_b)


def del_boundary(d: BorderedDiagram, B: Sequence) -> tuple:
    if d.is_closed:
        raise ClosedDiagramHasNoBoundary("a closed diagram has no boundary component")
    out = [Fraction(0)] * d.boundary.h1_dim
    for i, mult in enumerate(B):
        for key, c in d.boundary_arcs[i].items():
            if key != "z":
                out[int(key) - 1] += mult * c
    return tuple(out)


def solve_pi2(d: BorderedDiagram, x: Sequence[str], y: Sequence[str], ring: str = "Q") -> Pi2 | None:
    """Domains from x to y with n_z = 0, over Z or Q; None when there are none."""
    d.check_generator(x)
    d.check_generator(y)
    matrix = d.corner_system()
    rhs = d.point_chain(x, y)
    ncols = len(d.free_regions)
    if ring == "Q":
        sol = solve_rational(matrix, rhs, ncols)
    elif ring == "Z":
        sol = solve_integer(matrix, rhs, ncols)
    else:
        raise ValueError(f"ring must be 'Z' or 'Q', not {ring!r}")
    if sol is None:
        return None
    return Pi2(d.lift(sol.particular), [d.lift(k) for k in sol.kernel])


def same_spinc(d: BorderedDiagram, x, y) -> bool:
    return solve_pi2(d, x, y, "Z") is not None


def torsion_difference(d: BorderedDiagram, x, y) -> bool:
    return solve_pi2(d, x, y, "Q") is not None


def euler_measure(d: BorderedDiagram, B: Sequence) -> Fraction:
    B = d.domain(B)
    return sum((m * (d.regions[i].chi - Fraction(d.corner_count[i], 4)) for i, m in enumerate(B)), Fraction(0))


def point_measure(d: BorderedDiagram, B: Sequence, x: Sequence[str]) -> Fraction:
    B = d.domain(B)
    total = Fraction(0)
    for p in x:
        for i, m in enumerate(B):
            if m:
                total += m * Fraction(d.corners[i][p], 4)
    return total


def maslov_measure(d: BorderedDiagram, B: Sequence, x, y) -> Fraction:
    """e(B) + n_x(B) + n_y(B)."""
    return euler_measure(d, B) + point_measure(d, B, x) + point_measure(d, B, y)


def g_prime(d: BorderedDiagram, B: Sequence, x, y) -> GradingElement:
    """(-e(B) - n_x(B) - n_y(B); d^boundary B) in G'(Z) for the diagram's own circle."""
    info = domain_boundaries(d, B, x, y)
    if not info.is_connecting:
        raise NotConnecting("the domain does not connect the given generators")
    return GradingElement(-maslov_measure(d, B, x, y), info.del_boundary, d.boundary)


def _side(side: str) -> str:
    side = side.upper()
    if side not in ("A", "D"):
        raise ValueError(f"side must be 'A' or 'D', not {side!r}")
    return side


def periodic_subgroup(d: BorderedDiagram, x0, side: str = "A") -> SubgroupSpan:
    """Span of q * g'(P) over rational periodic domains P at x0 (through R for side D)."""
    if d.is_closed:
        raise ClosedDiagramHasNoBoundary("periodic subgroups need a bordered diagram")
    side = _side(side)
    pi2 = solve_pi2(d, x0, x0, "Q")
    gens = [g_prime(d, P, x0, x0) for P in pi2.periodic_basis]
    if side == "D":
        return grgroup.span_subgroup([grgroup.R(g) for g in gens], d.boundary.reversed())
    return grgroup.span_subgroup(gens, d.boundary)


def generator_grading(d: BorderedDiagram, x0, x, side: str = "A", periodic: SubgroupSpan | None = None) -> DoubleCoset:
    """Grading of x relative to the base generator x0, as a one-sided coset."""
    side = _side(side)
    pi2 = solve_pi2(d, x0, x, "Q")
    if pi2 is None:
        raise NoConnectingDomain(f"no rational domain connects {','.join(x0)} to {','.join(x)}")
    if periodic is None:
        periodic = periodic_subgroup(d, x0, side)
    g = g_prime(d, pi2.particular, x0, x)
    if side == "A":
        return grgroup.right_coset(periodic, g)
    return grgroup.left_coset(grgroup.R(g), periodic)


def closed_relative_grading(d: BorderedDiagram, x, y) -> Fraction:
    """gr(y) - gr(x) = e(B) + n_x(B) + n_y(B) for any rational domain B from x to y."""
    pi2 = solve_pi2(d, x, y, "Q")
    if pi2 is None:
        raise NoRationalDomain(f"no rational domain connects {','.join(x)} to {','.join(y)}")
    for P in pi2.periodic_basis:
        if maslov_measure(d, P, x, y) != 0:
            raise IndeterminateGrading("a rational periodic domain has nonzero Maslov measure")
    return maslov_measure(d, pi2.particular, x, y)


# ------------------------------------------------------------------ text format
def _cycles(raw) -> tuple:
    if raw and isinstance(raw[0], str):
        raw = [raw]
    return tuple(tuple(parse_signed(tok) for tok in cyc) for cyc in raw)


def from_dict(data: dict, name: str = "") -> BorderedDiagram:
    try:
        boundary = data.get("boundary")
        pmc = PointedMatchedCircle.from_dict(boundary) if boundary else None
        curves_raw = data["curves"]
        curves = []
        for c in curves_raw.get("alpha", []):
            curves.append(Curve(c["name"], "alpha", tuple(c.get("points", []))))
        for c in curves_raw.get("alpha_arcs", []):
            curves.append(Curve(c["name"], "arc", tuple(c.get("points", [])), tuple(int(e) for e in c["ends"])))
        for c in curves_raw.get("beta", []):
            curves.append(Curve(c["name"], "beta", tuple(c.get("points", []))))
        points = tuple((p["name"], p["alpha"], p["beta"]) for p in data["points"])
        regions = tuple(Region(r["name"], _cycles(r["edges"]), int(r.get("chi", 1))) for r in data["regions"])
        d = BorderedDiagram(int(data["genus"]), pmc, tuple(curves), points, regions, data["z_region"], name=name or data.get("name", ""))
        declared = [(i, r["boundary_arcs"]) for i, r in enumerate(data["regions"]) if "boundary_arcs" in r]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDiagram(f"malformed diagram {name!r}: {exc!r}") from exc
    # optional redundant field: the boundary intervals each region touches
    for i, listed in declared:
        if Counter(str(a) for a in listed) != +d.boundary_arcs[i]:
            d._fail(f"region {d.regions[i].name}: boundary_arcs {listed} disagree with its edges")
    return d


def to_dict(d: BorderedDiagram) -> dict:
    curves: dict = {"alpha": [], "alpha_arcs": [], "beta": []}
    for c in d.curves:
        if c.kind == "alpha":
            curves["alpha"].append({"name": c.name, "points": list(c.points)})
        elif c.kind == "arc":
            curves["alpha_arcs"].append({"name": c.name, "ends": list(c.ends), "points": list(c.points)})
        else:
            curves["beta"].append({"name": c.name, "points": list(c.points)})
    return {
        "name": d.name,
        "genus": d.genus,
        "boundary": None if d.boundary is None else d.boundary.to_dict(),
        "curves": curves,
        "points": [{"name": p, "alpha": a, "beta": b} for p, a, b in d.points],
        "regions": [
            {"name": r.name, "chi": r.chi, "edges": [[format_signed(s, e) for s, e in cyc] for cyc in r.cycles]}
            for r in d.regions
        ],
        "z_region": d.z_region,
    }
