"""H-polytopes over the rationals, with strict constraints carried as flags.

The cross-polytope K1 = {x : |x1| + |x2| + |x3| <= 1} and its homothets are the
main inhabitants.  Vertex labels follow a fixed convention::

    p = (0, 0, 1)   q = (0, 0, -1)
    a = (1, 0, 0)   c = (-1, 0, 0)
    b = (0, 1, 0)   d = (0, -1, 0)
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import NamedTuple, Optional

from .exact import (LE, OPTIMAL, LpProblem, Q, dot, fmt, fmt_vec, parse_vec,
                    solve_linear, solve_lp)

VERTEX_LABELS = {
    "p": (0, 0, 1), "q": (0, 0, -1),
    "a": (1, 0, 0), "c": (-1, 0, 0),
    "b": (0, 1, 0), "d": (0, -1, 0),
}
VERTEX_LABELS = {k: tuple(Fraction(x) for x in v) for k, v in VERTEX_LABELS.items()}


@dataclass(frozen=True)
class HalfSpace:
    """``normal . x <= rhs``, or ``< rhs`` when ``strict``."""

    normal: tuple
    rhs: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(Q(c) for c in self.normal))
        object.__setattr__(self, "rhs", Q(self.rhs))
        if not any(self.normal):
            raise ValueError("halfspace normal must be nonzero")

    def value(self, x) -> Fraction:
        return dot(self.normal, x)

    def contains(self, x) -> bool:
        v = dot(self.normal, x)
        return v < self.rhs if self.strict else v <= self.rhs

    def complement(self) -> "HalfSpace":
        """The strict or non-strict opposite side (closure flips)."""
        return HalfSpace(tuple(-c for c in self.normal), -self.rhs, not self.strict)

    def closed(self) -> "HalfSpace":
        return self if not self.strict else HalfSpace(self.normal, self.rhs, False)

    def to_json(self) -> dict:
        return {"n": fmt_vec(self.normal), "b": fmt(self.rhs), "strict": self.strict}

    @classmethod
    def from_json(cls, d) -> "HalfSpace":
        return cls(parse_vec(d["n"]), Q(d["b"]), bool(d.get("strict", False)))


@dataclass(frozen=True)
class HPolytope:
    halfspaces: tuple

    def __post_init__(self):
        hs = tuple(self.halfspaces)
        if hs:
            d = len(hs[0].normal)
            if any(len(h.normal) != d for h in hs):
                raise ValueError("mixed dimensions in halfspace list")
        object.__setattr__(self, "halfspaces", hs)

    @property
    def dim(self) -> int:
        return len(self.halfspaces[0].normal)

    def __len__(self):
        return len(self.halfspaces)

    def contains(self, x) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    def closure_contains(self, x) -> bool:
        return all(dot(h.normal, x) <= h.rhs for h in self.halfspaces)

    def tight(self, x) -> list:
        """Indices of constraints satisfied with equality at ``x``."""
        return [i for i, h in enumerate(self.halfspaces) if dot(h.normal, x) == h.rhs]

    def intersect(self, *more) -> "HPolytope":
        hs = list(self.halfspaces)
        for h in more:
            if isinstance(h, HPolytope):
                hs.extend(h.halfspaces)
            else:
                hs.append(h)
        return HPolytope(tuple(hs))

    def to_json(self) -> dict:
        return {"halfspaces": [h.to_json() for h in self.halfspaces]}

    @classmethod
    def from_json(cls, d) -> "HPolytope":
        return cls(tuple(HalfSpace.from_json(h) for h in d["halfspaces"]))

    def canonical(self) -> tuple:
        """Halfspaces with normals scaled to coprime integers, sorted."""
        out = set()
        for h in self.halfspaces:
            scale = max(abs(c) for c in h.normal)
            n = tuple(c / scale for c in h.normal)
            out.add((n, h.rhs / scale, h.strict))
        return tuple(sorted(out))


def cross_polytope(dim: int = 3) -> HPolytope:
    """The unit l1 ball as ``2**dim`` non-strict halfspaces."""
    return HPolytope(tuple(HalfSpace(tuple(Fraction(s) for s in signs), Fraction(1))
                           for signs in product((1, -1), repeat=dim)))


def l1_norm(x) -> Fraction:
    return sum((abs(c) for c in x), Fraction(0))


def homothet(P: HPolytope, lam, u) -> HPolytope:
    """Image ``{lam * x + u : x in P}``; strictness is preserved."""
    lam = Q(lam)
    if lam <= 0:
        raise ValueError("homothety ratio must be positive")
    u = tuple(Q(c) for c in u)
    return HPolytope(tuple(HalfSpace(h.normal, lam * h.rhs + dot(h.normal, u), h.strict)
                           for h in P.halfspaces))


class Emptiness(NamedTuple):
    empty: bool
    witness: Optional[tuple] = None
    slack: Optional[Fraction] = None


def is_empty(P: HPolytope) -> Emptiness:
    """Exact emptiness test honouring strict constraints.

    Maximises a common slack ``s`` (capped at 1) over the strict constraints
    subject to the non-strict ones.  Nonempty iff the LP is feasible with
    ``s > 0``, or feasible at all when nothing is strict.
    """
    d = P.dim
    strict = any(h.strict for h in P.halfspaces)
    cons = []
    for h in P.halfspaces:
        cons.append((h.normal + (Fraction(1 if h.strict else 0),), LE, h.rhs))
    bounds = ((None, None),) * d + ((Fraction(0), Fraction(1 if strict else 0)),)
    obj = (Fraction(0),) * d + (Fraction(1),)
    res = solve_lp(LpProblem(obj, tuple(cons), "max", bounds))
    if res.status != OPTIMAL:
        return Emptiness(True)
    s = res.x[-1]
    if strict and s <= 0:
        return Emptiness(True)
    return Emptiness(False, res.x[:d], s)


def maximize(P: HPolytope, c) -> Optional[tuple]:
    """Max of ``c . x`` over the closure of ``P``; (value, point) or None."""
    cons = tuple((h.normal, LE, h.rhs) for h in P.halfspaces)
    res = solve_lp(LpProblem(tuple(Q(v) for v in c), cons, "max"))
    if res.status != OPTIMAL:
        return None
    return res.value, res.x


def bounding_box(P: HPolytope) -> list:
    """Exact per-coordinate ``(min, max)`` of a bounded polytope's closure."""
    box = []
    for i in range(P.dim):
        e = [Fraction(0)] * P.dim
        e[i] = Fraction(1)
        hi = maximize(P, e)
        e[i] = Fraction(-1)
        lo = maximize(P, e)
        if hi is None or lo is None:
            raise ValueError("polytope is empty or unbounded")
        box.append((-lo[0], hi[0]))
    return box


# ---------------------------------------------------------------- facets


@dataclass(frozen=True)
class FacetTriangle:
    """A facet of K1: the sign octant ``signs`` and its three vertices."""

    signs: tuple
    vertices: tuple
    plane: HalfSpace

    @property
    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @property
    def centroid(self) -> tuple:
        return tuple(sum(v[i] for v in self.vertices) / 3 for i in range(3))

    def barycentric_point(self, w) -> tuple:
        return tuple(sum(wk * v[i] for wk, v in zip(w, self.vertices)) for i in range(3))

    def contains(self, x) -> bool:
        return (dot(self.plane.normal, x) == self.plane.rhs
                and all(s * c >= 0 for s, c in zip(self.signs, x)))

    def edge_constraints(self) -> list:
        """Halfspaces cutting the facet out of its plane: ``s_i x_i >= 0``."""
        out = []
        for i, s in enumerate(self.signs):
            n = [Fraction(0)] * 3
            n[i] = Fraction(-s)
            out.append(HalfSpace(tuple(n), Fraction(0)))
        return out


def facets_of_cross_polytope() -> list:
    out = []
    for signs in product((1, -1), repeat=3):
        verts = []
        for i, s in enumerate(signs):
            v = [Fraction(0)] * 3
            v[i] = Fraction(s)
            verts.append(tuple(v))
        plane = HalfSpace(tuple(Fraction(s) for s in signs), Fraction(1))
        out.append(FacetTriangle(tuple(signs), tuple(verts), plane))
    return out


def facet_by_label(label: str) -> FacetTriangle:
    for f in facets_of_cross_polytope():
        if f.label == label:
            return f
    raise KeyError(label)


def facets_at_vertex(v) -> list:
    """The four facets containing vertex ``v`` of K1."""
    return [f for f in facets_of_cross_polytope() if tuple(v) in f.vertices]


def cross_polytope_vertices() -> list:
    out = []
    for i in range(3):
        for s in (1, -1):
            v = [Fraction(0)] * 3
            v[i] = Fraction(s)
            out.append(tuple(v))
    return out


# ---------------------------------------------------------------- symmetry


@dataclass(frozen=True)
class SymmetryOp:
    """Signed permutation: ``(g x)_i = sign[i] * x[perm[i]]``."""

    perm: tuple
    sign: tuple

    @property
    def matrix(self) -> tuple:
        rows = []
        for i in range(len(self.perm)):
            r = [0] * len(self.perm)
            r[self.perm[i]] = self.sign[i]
            rows.append(tuple(r))
        return tuple(rows)

    def apply(self, x) -> tuple:
        return tuple(s * x[j] for j, s in zip(self.perm, self.sign))

    def compose(self, other: "SymmetryOp") -> "SymmetryOp":
        """``self o other``."""
        perm = tuple(other.perm[j] for j in self.perm)
        sign = tuple(s * other.sign[j] for j, s in zip(self.perm, self.sign))
        return SymmetryOp(perm, sign)

    def apply_polytope(self, P: HPolytope) -> HPolytope:
        # g is orthogonal, so n.x <= b maps to (g n).y <= b
        return HPolytope(tuple(HalfSpace(self.apply(h.normal), h.rhs, h.strict)
                               for h in P.halfspaces))


def symmetry_group(dim: int = 3) -> list:
    return [SymmetryOp(perm, sign)
            for perm in permutations(range(dim))
            for sign in product((1, -1), repeat=dim)]


IDENTITY = SymmetryOp((0, 1, 2), (1, 1, 1))


# ---------------------------------------------------------------- sections


def _plane_chart(F: FacetTriangle):
    """Affine chart of the facet plane: drop x3, recover it from the plane."""
    s = F.signs

    def lift(y):
        return (y[0], y[1], s[2] * (1 - s[0] * y[0] - s[1] * y[1]))

    def restrict(h):
        # n.x <= b with x3 = s3 (1 - s1 x1 - s2 x2)
        n = h.normal
        k = n[2] * s[2]
        return ((n[0] - k * s[0], n[1] - k * s[1]), h.rhs - k)

    return lift, restrict


def section_polygon(F: FacetTriangle, C: HPolytope):
    """``(vertices, dim)`` of ``F cap closure(C)``; vertices cyclic when 2D."""
    lift, restrict = _plane_chart(F)
    lines = [restrict(h) for h in F.edge_constraints()] + [restrict(h) for h in C.halfspaces]
    lines = [(n, b) for n, b in lines if any(n) or b < 0]
    if any(not any(n) for n, b in lines):
        return [], -1  # 0 <= negative: infeasible
    pts = set()
    for (n1, b1), (n2, b2) in combinations(lines, 2):
        y = solve_linear([n1, n2], [b1, b2])
        if y is None:
            continue
        if all(dot(n, y) <= b for n, b in lines):
            pts.add(y)
    if not pts:
        return [], -1
    pts = sorted(pts)
    if len(pts) == 1:
        return [], 0
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    if all(_cross(pts[0], pts[1], p) == 0 for p in pts[2:]):
        return [], 1

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    from functools import cmp_to_key

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        c = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if c > 0 else (1 if c < 0 else 0)

    ring = sorted(pts, key=cmp_to_key(cmp))
    # drop vertices that sit in the middle of an edge
    out = []
    k = len(ring)
    for i in range(k):
        if _cross(ring[i - 1], ring[i], ring[(i + 1) % k]) != 0:
            out.append(ring[i])
    return [lift(p) for p in out], 2


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def facet_section(F: FacetTriangle, C: HPolytope) -> list:
    """Exact convex polygon ``F cap C`` (cyclic); [] when empty or degenerate."""
    return section_polygon(F, C)[0]


def facet_section_dim(F: FacetTriangle, C: HPolytope) -> int:
    """Dimension of ``F cap C``: -1 empty, 0 point, 1 segment, 2 polygon."""
    return section_polygon(F, C)[1]


def classify_section_counts(u, lam, v) -> tuple:
    """Sorted edge counts of the four facet sections of ``lam K1 + u`` at vertex ``v``.

    Degenerate (point or segment) sections count as 0 edges.
    """
    u = tuple(Q(c) for c in u)
    v = tuple(Q(c) for c in v)
    lam = Q(lam)
    if v not in cross_polytope_vertices():
        raise ValueError(f"{v} is not a vertex of K1")
    if l1_norm(tuple(a - b for a, b in zip(v, u))) > lam:
        raise ValueError("vertex is not covered by the homothet")
    C = homothet(cross_polytope(), lam, u)
    return tuple(sorted(len(facet_section(F, C)) for F in facets_at_vertex(v)))
