"""Lower convex hulls of (abscissa, value) point clouds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .values import INF, Value, fmt_value


@dataclass(frozen=True)
class Side:
    start: Tuple[int, Fraction]
    end: Tuple[int, Fraction]

    @property
    def length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def inclination(self) -> Fraction:
        """(u1 - u2)/(s2 - s1): the valuation of the roots this side stands for."""
        return (self.start[1] - self.end[1]) / self.length

    @property
    def slope(self) -> Fraction:
        """Geometric slope, the negated inclination."""
        return -self.inclination


class NewtonPolygon:
    """Lower convex hull of the finite points, left to right.

    Sides come out in decreasing order of inclination.
    """

    def __init__(self, points: Sequence[Tuple[int, Value]]):
        finite = sorted((int(s), Fraction(u)) for s, u in points if u is not INF)
        if not finite:
            raise ValueError("a Newton polygon needs at least one finite point")
        # keep the lowest ordinate per abscissa
        best = {}
        for s, u in finite:
            if s not in best or u < best[s]:
                best[s] = u
        pts = sorted(best.items())
        hull: List[Tuple[int, Fraction]] = []
        for pt in pts:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
                hull.pop()
            hull.append(pt)
        self.points = tuple(pts)
        self.vertices = tuple(hull)
        self.sides = tuple(Side(a, b) for a, b in zip(hull, hull[1:]))

    @property
    def one_sided(self) -> bool:
        return len(self.sides) == 1

    @property
    def length(self) -> int:
        return self.vertices[-1][0] - self.vertices[0][0]

    def inclinations(self) -> List[Tuple[Fraction, int]]:
        return [(s.inclination, s.length) for s in self.sides]

    def side_with_inclination(self, gamma) -> Side:
        for s in self.sides:
            if s.inclination == gamma:
                return s
        raise ValueError(f"no side of inclination {gamma}")

    def on_segment(self, side: Side) -> List[int]:
        """Abscissae of the given points lying on a side."""
        out = []
        for s, u in self.points:
            if side.start[0] <= s <= side.end[0]:
                if u + side.inclination * (s - side.start[0]) == side.start[1]:
                    out.append(s)
        return out

    def to_json(self) -> dict:
        return {
            "vertices": [[s, fmt_value(u)] for s, u in self.vertices],
            "sides": [{"inclination": fmt_value(s.inclination), "length": s.length}
                      for s in self.sides],
        }

    def __repr__(self):
        return "NewtonPolygon(%s)" % ", ".join(f"({s}, {u})" for s, u in self.vertices)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(points: Sequence[Tuple[int, Value]]) -> NewtonPolygon:
    return NewtonPolygon(points)
