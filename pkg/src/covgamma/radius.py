"""Smallest enclosing homothet ratio of a finite point set.

For a body ``K = {x : n_k . x <= b_k}`` and points ``p_i`` the ratio is the LP

    minimise lam  s.t.  n_k . (p_i - u) <= lam * b_k   for all i, k

over free ``u`` and ``lam >= 0``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (LE, OPTIMAL, LpProblem, Q, dot, fmt, fmt_vec, solve_lp)
from .polytope import HalfSpace, HPolytope, cross_polytope

CROSS_POLYTOPE_3 = "cross_polytope_3"
TRIANGLE_2 = "equilateral_triangle_2"
GENERAL = "general"


@dataclass(frozen=True)
class GaugeBody:
    """A bounded convex body with the origin as its base point."""

    kind: str
    polytope: HPolytope
    vertices: Optional[tuple] = None

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def is_centrally_symmetric(self) -> bool:
        return {h[:2] for h in self.polytope.canonical()} == \
            {(tuple(-c for c in n), b) for n, b, _ in self.polytope.canonical()}

    def gauge(self, x) -> Fraction:
        """Minkowski functional; assumes the origin is interior."""
        return max((dot(h.normal, x) / h.rhs for h in self.polytope.halfspaces),
                   default=Fraction(0))

    def contains(self, x, lam=1, u=None) -> bool:
        lam = Q(lam)
        if u is None:
            u = (Fraction(0),) * self.dim
        y = tuple(a - b for a, b in zip(x, u))
        return all(dot(h.normal, y) <= lam * h.rhs for h in self.polytope.halfspaces)


def cross_polytope_body() -> GaugeBody:
    return GaugeBody(CROSS_POLYTOPE_3, cross_polytope(3))


# Affine chart of an equilateral triangle: vertices (2/3,-1/3), (-1/3,2/3),
# (-1/3,-1/3), centroid at the origin.  Covering functionals are affine
# invariants, so every rational equilateral triangle is handled in this chart.
CHART_TRIANGLE_VERTICES = (
    (Fraction(2, 3), Fraction(-1, 3)),
    (Fraction(-1, 3), Fraction(2, 3)),
    (Fraction(-1, 3), Fraction(-1, 3)),
)


def triangle_body() -> GaugeBody:
    P = HPolytope((
        HalfSpace((-1, 0), Fraction(1, 3)),
        HalfSpace((0, -1), Fraction(1, 3)),
        HalfSpace((1, 1), Fraction(1, 3)),
    ))
    return GaugeBody(TRIANGLE_2, P, CHART_TRIANGLE_VERTICES)


def general_body(P: HPolytope) -> GaugeBody:
    return GaugeBody(GENERAL, P)


@dataclass(frozen=True)
class RatioCertificate:
    ratio: Fraction
    center: tuple
    active: tuple

    def to_json(self) -> dict:
        return {"ratio": fmt(self.ratio), "center": fmt_vec(self.center),
                "active": list(self.active)}


def min_ratio(body: GaugeBody, points) -> RatioCertificate:
    """Exact minimum ``lam`` with every point in ``lam * K + u`` for some ``u``."""
    pts = [tuple(Q(c) for c in p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    d = body.dim
    hs = body.polytope.halfspaces
    cons = []
    seen = set()
    for p in pts:
        for h in hs:
            # n.p - n.u - lam b <= 0
            row = tuple(-c for c in h.normal) + (-h.rhs,)
            rhs = -dot(h.normal, p)
            if (row, rhs) in seen:
                continue
            seen.add((row, rhs))
            cons.append((row, LE, rhs))
    obj = (Fraction(0),) * d + (Fraction(1),)
    bounds = ((None, None),) * d + ((Fraction(0), None),)
    res = solve_lp(LpProblem(obj, tuple(cons), "min", bounds))
    if res.status != OPTIMAL:
        raise RuntimeError(f"enclosing-ratio LP returned {res.status}")
    u, lam = res.x[:d], res.x[d]
    active = tuple(i for i, p in enumerate(pts)
                   if any(dot(h.normal, tuple(a - b for a, b in zip(p, u))) == lam * h.rhs
                          for h in hs))
    return RatioCertificate(lam, u, active)


def min_ratio_two_points_symmetric(body: GaugeBody, p, q) -> Fraction:
    """Closed form ``gauge(p - q) / 2`` for an origin-symmetric body."""
    if not body.is_centrally_symmetric():
        raise ValueError("body is not centrally symmetric about the origin")
    diff = tuple(Q(a) - Q(b) for a, b in zip(p, q))
    return body.gauge(diff) / 2


def pair_ratio(body: GaugeBody, p, q) -> Fraction:
    if body.kind == CROSS_POLYTOPE_3:
        return sum((abs(Q(a) - Q(b)) for a, b in zip(p, q)), Fraction(0)) / 2
    return min_ratio(body, [p, q]).ratio
