"""Gluing two bordered diagrams along their boundary circles.

Point a'_j of the second diagram is identified with a_{4k+1-j} of the first,
interval Z':j with Z:(4k-j), and the two basepoint intervals with each other.
Alpha arcs join into alpha circles, regions touching the boundary are spliced
into closed regions, and every name is prefixed by ``1.`` or ``2.``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from . import grgroup
from .diagram import (
    BOUNDARY,
    Z_INTERVAL,
    BorderedDiagram,
    Curve,
    Domain,
    Generator,
    Region,
    enumerate_generators,
    generator_grading,
    periodic_subgroup,
    solve_pi2,
)
from .errors import BoundaryMismatch, InvalidDiagram, NoConnectingDomain
from .grgroup import DoubleCoset, RelativeGrading


@dataclass(frozen=True)
class GluedDiagram:
    diagram: BorderedDiagram
    left: BorderedDiagram
    right: BorderedDiagram
    members: dict  # closed region name -> list of (side, region name)

    def split_generator(self, x) -> tuple[Generator, Generator]:
        """The pair (x1, x2) of bordered generators making up a closed generator."""
        x1 = [p[2:] for p in x if p.startswith("1.")]
        x2 = [p[2:] for p in x if p.startswith("2.")]
        return self.left.check_generator(x1), self.right.check_generator(x2)

    def join_generators(self, x1, x2) -> Generator:
        return self.diagram.check_generator([f"1.{p}" for p in x1] + [f"2.{p}" for p in x2])

    def split_domain(self, B) -> tuple[Domain, Domain]:
        B = self.diagram.domain(B)
        parts = ({}, {})
        for name, mult in zip(self.diagram.region_names, B):
            for side, rname in self.members[name]:
                parts[side - 1][rname] = mult
        return self.left.domain(parts[0]), self.right.domain(parts[1])


def _mirror_interval(key: str, n: int) -> str:
    if key == Z_INTERVAL:
        return key
    return f"Z:{n - int(key.split(':')[1])}"


def _rotate_to_boundary(cycle):
    """Rotate a cycle so it starts right after a boundary edge (if it has one)."""
    for i, (_, e) in enumerate(cycle):
        if e.startswith("Z:"):
            return cycle[i + 1:] + cycle[: i + 1]
    return cycle


def glue(d1: BorderedDiagram, d2: BorderedDiagram) -> GluedDiagram:
    if d1.is_closed or d2.is_closed:
        raise BoundaryMismatch("both diagrams must be bordered")
    if d2.boundary != d1.boundary.reversed():
        raise BoundaryMismatch("the second boundary is not the orientation reverse of the first")
    n = d1.boundary.n_points

    # ---- curves, and where each old segment lands
    seg_map: dict[tuple[int, str], tuple[int, str]] = {}
    curves: list[Curve] = []
    for side, d in ((1, d1), (2, d2)):
        for c in d.curves:
            if c.is_arc:
                continue
            curves.append(Curve(f"{side}.{c.name}", c.kind, tuple(f"{side}.{p}" for p in c.points)))
            for e in d.edges.values():
                if e.curve == c.name:
                    seg_map[(side, e.id)] = (1, f"{side}.{e.id}")

    alpha_of = {(side, c.name): f"{side}.{c.name}" for side, d in ((1, d1), (2, d2)) for c in d.curves}
    arcs2 = {frozenset(c.ends): c for c in d2.alpha_arcs}
    for a1 in d1.alpha_arcs:
        u, v = a1.ends
        a2 = arcs2[frozenset((n + 1 - u, n + 1 - v))]
        forward = a2.ends == (n + 1 - v, n + 1 - u)
        a2_points = list(a2.points) if forward else list(reversed(a2.points))
        name = f"1.{a1.name}+2.{a2.name}"
        pts = [f"1.{p}" for p in a1.points] + [f"2.{p}" for p in a2_points]
        curves.append(Curve(name, "alpha", tuple(pts)))
        alpha_of[(1, a1.name)] = alpha_of[(2, a2.name)] = name
        # old segments in circle order: a1 segments, then a2 segments (reversed if needed)
        order = [((1, f"{a1.name}:{i}"), 1) for i in range(len(a1.points) + 1)]
        r2 = len(a2.points) + 1
        idx2 = range(r2) if forward else reversed(range(r2))
        order += [((2, f"{a2.name}:{i}"), 1 if forward else -1) for i in idx2]
        # old segment k is followed by a point unless it ends at a boundary point
        m = len(pts)
        if m == 0:
            for key, sign in order:
                seg_map[key] = (sign, f"{name}:0")
            continue
        ends_at_point = [True] * len(order)
        ends_at_point[len(a1.points)] = False
        ends_at_point[-1] = False
        # the segment before the first old segment belongs to the new segment ending at pts[0]
        current = m - 1
        for k, (key, sign) in enumerate(order):
            seg_map[key] = (sign, f"{name}:{current}")
            if ends_at_point[k]:
                current = (current + 1) % m

    # ---- regions: split boundary-touching cycles into paths and splice them
    paths_after: dict[tuple[int, str], tuple] = {}  # (side, Z edge) -> (path, region, end Z edge)
    closed_cycles = []  # (side, region, cycle) with no boundary edge
    for side, d in ((1, d1), (2, d2)):
        for region in d.regions:
            for cycle in region.cycles:
                if not any(d.edges[e].kind == BOUNDARY for _, e in cycle):
                    closed_cycles.append((side, region.name, list(cycle)))
                    continue
                rot = _rotate_to_boundary(list(cycle))
                # rot ends with a Z edge; split at every Z edge
                start_edge = rot[-1][1]
                path = []
                for sign, e in rot:
                    if e.startswith("Z:"):
                        paths_after[(side, start_edge)] = (path, region.name, e)
                        start_edge, path = e, []
                    else:
                        path.append((sign, e))

    parent: dict[tuple[int, str], tuple[int, str]] = {}

    def find(key):
        while parent.setdefault(key, key) != key:
            key = parent[key]
        return key

    def union(a, b):
        parent[find(a)] = find(b)

    for side, d in ((1, d1), (2, d2)):
        for region in d.regions:
            find((side, region.name))

    new_cycles: list[tuple[tuple[int, str], list]] = []
    for side, rname, cycle in closed_cycles:
        new_cycles.append(((side, rname), [(s * seg_map[(side, e)][0], seg_map[(side, e)][1]) for s, e in cycle]))

    seen: set = set()
    for start in sorted(paths_after):
        if start in seen:
            continue
        entries: list[tuple[int, str]] = []
        junction: list[bool] = []
        key = start
        owner = (start[0], paths_after[start][1])
        while key not in seen:
            seen.add(key)
            side = key[0]
            path, rname, end_edge = paths_after[key]
            union((side, rname), owner)
            for i, (s, e) in enumerate(path):
                sign, new = seg_map[(side, e)]
                entries.append((s * sign, new))
                junction.append(i == len(path) - 1)
            other = 3 - side
            key = (other, _mirror_interval(end_edge, n))
        new_cycles.append((owner, _collapse(entries, junction)))

    # ---- assemble merged regions
    shared = defaultdict(int)
    for region in d1.regions:
        shared[find((1, region.name))] += sum(1 for cyc in region.cycles for _, e in cyc if e.startswith("Z:"))
    members = defaultdict(list)
    chis = defaultdict(int)
    for side, d in ((1, d1), (2, d2)):
        for region in d.regions:
            root = find((side, region.name))
            members[root].append((side, region.name))
            chis[root] += region.chi
    names = {root: "+".join(f"{s}.{r}" for s, r in mem) for root, mem in members.items()}
    cycles_by_root = defaultdict(list)
    for owner, cyc in new_cycles:
        cycles_by_root[find(owner)].append(tuple(cyc))
    regions = tuple(
        Region(names[root], tuple(cycles_by_root[root]), chis[root] - shared[root])
        for root in sorted(members, key=lambda r: names[r])
    )
    points = tuple(
        (f"{side}.{p}", alpha_of[(side, a)], f"{side}.{b}")
        for side, d in ((1, d1), (2, d2))
        for p, a, b in d.points
    )
    z_name = names[find((1, d1.z_region))]
    closed = BorderedDiagram(
        d1.genus + d2.genus,
        None,
        tuple(sorted(curves, key=lambda c: (c.kind, c.name))),
        points,
        regions,
        z_name,
        name=f"{d1.name} + {d2.name}",
    )
    return GluedDiagram(closed, d1, d2, {names[root]: mem for root, mem in members.items()})


def _collapse(entries, junction):
    entries, junction = list(entries), list(junction)
    while len(entries) > 1 and any(junction):
        i = junction.index(True)
        j = (i + 1) % len(entries)
        if entries[i] != entries[j]:
            raise InvalidDiagram(f"gluing mismatch at a boundary point: {entries[i]} vs {entries[j]}")
        junction[i] = junction[j]
        del entries[j], junction[j]
    return entries


def class_base(d: BorderedDiagram, x) -> Generator:
    """First generator (in enumeration order) joined to x by a rational domain."""
    for g in enumerate_generators(d):
        if solve_pi2(d, g, x, "Q") is not None:
            return g
    raise NoConnectingDomain(f"{','.join(x)} is not a generator of the diagram")  # pragma: no cover


def tensor_coset(glued: GluedDiagram, x) -> DoubleCoset:
    """Bordered grading of a closed generator: A-side coset of x1 times D-side coset of x2."""
    x1, x2 = glued.split_generator(x)
    b1, b2 = class_base(glued.left, x1), class_base(glued.right, x2)
    ga = generator_grading(glued.left, b1, x1, "A")
    gd = generator_grading(glued.right, b2, x2, "D")
    return DoubleCoset(ga.left, grgroup.mul(ga.rep, gd.rep), gd.right)


def bordered_relative_grading(glued: GluedDiagram, x, y) -> RelativeGrading:
    """q with gr(y) = lambda^q gr(x) for the tensor gradings, or Distinct/Indeterminate."""
    x1, x2 = glued.split_generator(x)
    y1, y2 = glued.split_generator(y)
    if solve_pi2(glued.left, x1, y1, "Q") is None or solve_pi2(glued.right, x2, y2, "Q") is None:
        return RelativeGrading("distinct")
    return grgroup.relative_lambda(tensor_coset(glued, x), tensor_coset(glued, y))


@dataclass(frozen=True)
class OracleRow:
    x: Generator
    y: Generator
    closed: RelativeGrading  # Same(gr(y) - gr(x)), or Distinct / Indeterminate
    bordered: RelativeGrading
    agree: bool


def compare_with_closed(glued: GluedDiagram) -> list[OracleRow]:
    """Check every ordered pair of closed generators against the closed-diagram formula.

    The bordered answer q satisfies gr(y) = lambda^q gr(x), which corresponds
    to q = -(gr_Q(y) - gr_Q(x)) on the closed side.
    """
    from .diagram import closed_relative_grading
    from .errors import IndeterminateGrading, NoRationalDomain

    rows = []
    gens = enumerate_generators(glued.diagram)
    for x in gens:
        for y in gens:
            bordered = bordered_relative_grading(glued, x, y)
            try:
                closed = grgroup.Same(closed_relative_grading(glued.diagram, x, y))
            except NoRationalDomain:
                closed = grgroup.DISTINCT
            except IndeterminateGrading:
                closed = grgroup.INDETERMINATE
            if closed.is_same:
                agree = bordered.is_same and bordered.q == -closed.q
            else:
                agree = bordered.kind == closed.kind
            rows.append(OracleRow(x, y, closed, bordered, agree))
    return rows
