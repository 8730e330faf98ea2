"""Programmatic genus-one bordered diagrams.

The surface is the unit square with opposite sides glued and a small disk
around the corner removed.  The horizontal side is the alpha arc ``h`` (ends
2 and 4), the vertical side is the alpha arc ``v`` (ends 1 and 3), and the
boundary circle meets them in the order a_1 = v-start, a_2 = h-start,
a_3 = v-end, a_4 = h-end, following the boundary orientation.  The beta
circle is a straight line of primitive direction (p, q).

The four square corners become the boundary intervals: (0,0) is Z:1, (0,1)
is Z:2, (1,1) is Z:3 and (1,0) carries the basepoint.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .diagram import BorderedDiagram, Curve, Region
from .errors import InvalidDiagram
from .pmc import torus


def _generic_offset(p: int, q: int) -> tuple[Fraction, Fraction]:
    for k in range(1, 100):
        ox, oy = Fraction(1, 2 * k + 1), Fraction(1, 3 * k + 7)
        level = q * ox - p * oy
        if level.denominator != 1:
            return ox, oy
    raise AssertionError("no generic offset found")  # pragma: no cover


def slope_diagram(p: int, q: int, name: str | None = None) -> BorderedDiagram:
    """Bordered solid torus whose beta circle has direction (p, q) on the square."""
    if (p, q) == (0, 0) or gcd(p, q) != 1:
        raise InvalidDiagram(f"slope ({p}, {q}) is not primitive")
    ox, oy = _generic_offset(p, q)

    # crossings of the line o + t(p, q), t in [0, 1), with x in Z (on v) and y in Z (on h)
    hits = []
    for m in range(-abs(p) - 2, abs(p) + 3):
        if p:
            t = (m - ox) / p
            if 0 <= t < 1:
                hits.append((t, "v", (oy + t * q) % 1))
    for m in range(-abs(q) - 2, abs(q) + 3):
        if q:
            t = (m - oy) / q
            if 0 <= t < 1:
                hits.append((t, "h", (ox + t * p) % 1))
    hits.sort()

    h_pts = sorted((pos, i) for i, (_, c, pos) in enumerate(hits) if c == "h")
    v_pts = sorted((pos, i) for i, (_, c, pos) in enumerate(hits) if c == "v")
    label = {}
    for n, (_, i) in enumerate(h_pts, 1):
        label[i] = f"h{n}"
    for n, (_, i) in enumerate(v_pts, 1):
        label[i] = f"v{n}"
    beta_points = [label[i] for i in range(len(hits))]
    h_names = [label[i] for _, i in h_pts]
    v_names = [label[i] for _, i in v_pts]

    # perimeter atoms, counter-clockwise from the corner (0,0): edges and point markers
    r, s = len(h_names), len(v_names)
    atoms: list[tuple[str, object]] = [("edge", "+Z:1")]
    for side, names, sign, seg in (
        ("bottom", h_names, "+", lambda i: f"h:{i}"),
        ("right", v_names, "+", lambda i: f"v:{i}"),
        ("top", h_names[::-1], "-", lambda i: f"h:{r - i}"),
        ("left", v_names[::-1], "-", lambda i: f"v:{s - i}"),
    ):
        for i, pt in enumerate(names):
            atoms.append(("edge", sign + seg(i)))
            atoms.append(("mark", (side, pt)))
        atoms.append(("edge", sign + seg(len(names))))
        atoms.append(("edge", {"bottom": "+Z:z", "right": "+Z:3", "top": "+Z:2", "left": None}[side]))
    atoms = [a for a in atoms if a[1] is not None]

    # chord b:i leaves beta point i and arrives at beta point i+1
    def leaving(pt: str):
        if pt.startswith("h"):
            return ("bottom" if q > 0 else "top", pt)
        return ("left" if p > 0 else "right", pt)

    def arriving(pt: str):
        if pt.startswith("h"):
            return ("top" if q > 0 else "bottom", pt)
        return ("right" if p > 0 else "left", pt)

    n = len(beta_points)
    chord_at = {}
    for i in range(n):
        start, end = leaving(beta_points[i]), arriving(beta_points[(i + 1) % n])
        chord_at[start] = (f"+b:{i}", end)
        chord_at[end] = (f"-b:{i}", start)
    position = {a[1]: k for k, a in enumerate(atoms) if a[0] == "mark"}

    used: set[int] = set()
    cycles = []
    for k0, (kind, _) in enumerate(atoms):
        if kind != "edge" or k0 in used:
            continue
        cycle, k = [], k0
        while True:
            kind, val = atoms[k]
            if kind == "edge":
                if k in used:
                    break
                used.add(k)
                cycle.append(val)
                k = (k + 1) % len(atoms)
            else:
                edge, other = chord_at[val]
                cycle.append(edge)
                k = (position[other] + 1) % len(atoms)
        cycles.append(cycle)

    regions = []
    z_region = None
    for idx, cyc in enumerate(cycles):
        rname = f"R{idx}"
        parsed = tuple((1 if e[0] == "+" else -1, e[1:]) for e in cyc)
        regions.append(Region(rname, (parsed,), 1))
        if "+Z:z" in cyc:
            z_region = rname

    points = tuple((label[i], "h" if c == "h" else "v", "b") for i, (_, c, _) in enumerate(hits))
    curves = (
        Curve("h", "arc", tuple(h_names), (2, 4)),
        Curve("v", "arc", tuple(v_names), (1, 3)),
        Curve("b", "beta", tuple(beta_points)),
    )
    return BorderedDiagram(1, torus(), curves, points, tuple(regions), z_region, name=name or f"slope({p},{q})")
