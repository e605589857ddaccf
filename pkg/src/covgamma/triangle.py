"""Three-copy covering ratio of an equilateral triangle.

Every computation happens in a fixed affine chart of the triangle. Covering
ratios are affine invariants, and Q^2 has no equilateral triangle with
rational vertices anyway, so a rational equilateral input is necessarily a
triangle in Q^3 (for example a facet of K1).
"""

from dataclasses import dataclass
from fractions import Fraction

from .certifier import CoverageResult, verify_covering_2d
from .exact import Q, fmt, fmt_vec
from .radius import CHART_TRIANGLE_VERTICES, min_ratio, triangle_body
from .witness import LowerBoundVerdict, WitnessSet, certify_lower_bound, minimax_group_ratio

GAMMA3 = Fraction(2, 3)


def _sq(u, v) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(u, v)), Fraction(0))


def check_equilateral(T) -> tuple:
    """Validate three rational points forming an equilateral triangle."""
    pts = tuple(tuple(Q(c) for c in p) for p in T)
    if len(pts) != 3 or len({len(p) for p in pts}) != 1:
        raise ValueError("need three points of equal dimension")
    d = [_sq(pts[0], pts[1]), _sq(pts[1], pts[2]), _sq(pts[2], pts[0])]
    if d[0] == 0 or len(set(d)) != 1:
        raise ValueError("triangle is not equilateral")
    return pts


def to_chart(T, x) -> tuple:
    """Barycentric coordinates of ``x`` w.r.t. ``T`` sent to the chart triangle."""
    pts = check_equilateral(T)
    x = tuple(Q(c) for c in x)
    # solve x - t2 = w0 (t0 - t2) + w1 (t1 - t2) by least squares normal equations
    e0 = [a - c for a, c in zip(pts[0], pts[2])]
    e1 = [b - c for b, c in zip(pts[1], pts[2])]
    r = [a - c for a, c in zip(x, pts[2])]
    g00 = sum(a * a for a in e0)
    g01 = sum(a * b for a, b in zip(e0, e1))
    g11 = sum(b * b for b in e1)
    r0 = sum(a * b for a, b in zip(e0, r))
    r1 = sum(a * b for a, b in zip(e1, r))
    det = g00 * g11 - g01 * g01
    w0 = (r0 * g11 - r1 * g01) / det
    w1 = (g00 * r1 - g01 * r0) / det
    w2 = 1 - w0 - w1
    V = CHART_TRIANGLE_VERTICES
    return tuple(w0 * V[0][k] + w1 * V[1][k] + w2 * V[2][k] for k in range(2))


def corner_translations(lam) -> tuple:
    """Translations placing ``lam T`` in each corner of the chart triangle."""
    lam = Q(lam)
    return tuple(tuple((1 - lam) * c for c in v) for v in CHART_TRIANGLE_VERTICES)


def chart_witness_set() -> WitnessSet:
    pts = [(f"v{i}", v) for i, v in enumerate(CHART_TRIANGLE_VERTICES)]
    pts.append(("centroid", (Fraction(0), Fraction(0))))
    return WitnessSet(tuple(pts), (("triangle", None),))


@dataclass
class TriangleCertificate:
    value: Fraction
    covering: CoverageResult
    lower: LowerBoundVerdict
    minimax: Fraction
    vertex_centroid_ratio: Fraction

    def to_json(self) -> dict:
        return {"gamma3": fmt(self.value), "covering": self.covering.to_json(),
                "translations": [fmt_vec(t) for t in corner_translations(self.value)],
                "lower": {"status": self.lower.status, "nodes": self.lower.nodes,
                          "minimax": fmt(self.minimax)},
                "vertex_centroid_ratio": fmt(self.vertex_centroid_ratio)}


def certify_triangle_gamma3(T=None) -> TriangleCertificate:
    if T is not None:
        check_equilateral(T)
    body = triangle_body()
    cov = verify_covering_2d(GAMMA3, corner_translations(GAMMA3))
    W = chart_witness_set()
    lower = certify_lower_bound(3, GAMMA3, W, body=body)
    mm = minimax_group_ratio(body, W.coords, 3)
    vc = min_ratio(body, [CHART_TRIANGLE_VERTICES[0], (0, 0)]).ratio
    return TriangleCertificate(GAMMA3, cov, lower, mm, vc)


def triangle_gamma3(T=None) -> Fraction:
    """Exact ``gamma_3`` of an equilateral triangle, with both halves certified.

    ``T`` defaults to the facet ``e1 e2 e3`` of K1.  Raises AssertionError if
    either the covering or the witness bound fails to certify.
    """
    if T is None:
        T = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    cert = certify_triangle_gamma3(T)
    if not cert.covering.covered:
        raise AssertionError("corner covering not certified")
    if not cert.lower.certified or cert.minimax != GAMMA3:
        raise AssertionError("witness lower bound not certified")
    return cert.value
