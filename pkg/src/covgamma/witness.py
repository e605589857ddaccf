"""Witness points on the boundary of K1 and the assignment engine.

A covering of K1 by ``m`` translates of ``mu K1`` with ``mu < lam`` would sort
any finite set of boundary points into at most ``m`` groups, each group
fitting in one copy and therefore having enclosing ratio ``< lam``.  If an
exhaustive search shows no such grouping exists, ``gamma_m(K1) >= lam``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .exact import Q, fmt, fmt_vec
from .polytope import (VERTEX_LABELS, FacetTriangle, facets_of_cross_polytope,
                       symmetry_group)
from .radius import (CROSS_POLYTOPE_3, GaugeBody, cross_polytope_body, min_ratio,
                     pair_ratio)

VERTICES, CENTERS, NODES, MIDPOINTS = "vertices", "centers", "nodes", "midpoints"
GENERATOR_NAMES = (VERTICES, CENTERS, NODES, MIDPOINTS)

CERTIFIED, INCONCLUSIVE = "certified", "inconclusive"
DEFAULT_NODE_BUDGET = 2 * 10 ** 6


def _check_node_ratio(lam) -> Fraction:
    lam = Q(lam)
    if not (Fraction(1, 2) <= lam < 1):
        raise ValueError(f"node ratio must lie in [1/2, 1), got {fmt(lam)}")
    return lam


def node_points(facet: FacetTriangle, lam) -> list:
    """The three ``lam``-node points of a facet.

    Barycentric weights ``(1-lam, 1-lam, 2lam-1)`` and their cyclic shifts; the
    k-th point has the small weight on vertex ``(k + 2) % 3``.
    """
    lam = _check_node_ratio(lam)
    a, b = 1 - lam, 2 * lam - 1
    weights = [(a, a, b), (b, a, a), (a, b, a)]
    return [facet.barycentric_point(w) for w in weights]


def node_midpoints(facet: FacetTriangle, lam) -> list:
    """Midpoints of the sides of the node-point triangle."""
    n = node_points(facet, lam)
    return [tuple((x + y) / 2 for x, y in zip(n[i], n[(i + 1) % 3])) for i in range(3)]


@dataclass(frozen=True)
class WitnessSet:
    points: tuple          # ((label, point), ...)
    generators: tuple      # ((name, lam or None), ...)

    def __len__(self):
        return len(self.points)

    @property
    def labels(self) -> list:
        return [lbl for lbl, _ in self.points]

    @property
    def coords(self) -> list:
        return [p for _, p in self.points]

    def transformed(self, g) -> "WitnessSet":
        return WitnessSet(tuple((lbl, g.apply(p)) for lbl, p in self.points), self.generators)

    def extended(self, other: "WitnessSet") -> "WitnessSet":
        seen = {p for _, p in self.points}
        pts = list(self.points)
        for lbl, p in other.points:
            if p not in seen:
                seen.add(p)
                pts.append((lbl, p))
        return WitnessSet(tuple(pts), self.generators + other.generators)

    def to_json(self) -> dict:
        return {"generators": [[g, None if l is None else fmt(l)] for g, l in self.generators],
                "points": {lbl: fmt_vec(p) for lbl, p in self.points}}


def parse_generators(spec: str) -> list:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    bad = [s for s in names if s not in GENERATOR_NAMES]
    if bad or not names:
        raise ValueError(f"unknown witness generators: {bad or spec!r}")
    return names


def build_witness_set(generators, lam=None) -> WitnessSet:
    """Deduplicated labelled boundary points from the named generators.

    ``lam`` is the node ratio used by the ``nodes``/``midpoints`` generators.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    facets = facets_of_cross_polytope()
    pts, seen, used = [], set(), []

    def add(label, p):
        if p not in seen:
            seen.add(p)
            pts.append((label, p))

    for g in generators:
        if g == VERTICES:
            for lbl in ("p", "a", "b", "c", "d", "q"):
                add(lbl, VERTEX_LABELS[lbl])
            used.append((g, None))
        elif g == CENTERS:
            for f in facets:
                add(f"C{f.label}", f.centroid)
            used.append((g, None))
        elif g == NODES:
            for f in facets:
                for k, p in enumerate(node_points(f, lam)):
                    add(f"N{f.label}.{k}", p)
            used.append((g, Q(lam)))
        elif g == MIDPOINTS:
            for f in facets:
                for k, p in enumerate(node_midpoints(f, lam)):
                    add(f"M{f.label}.{k}", p)
            used.append((g, Q(lam)))
        else:
            raise ValueError(f"unknown generator {g!r}")
    return WitnessSet(tuple(pts), tuple(used))


# ---------------------------------------------------------------- engine


@dataclass
class LowerBoundVerdict:
    status: str
    m: int
    target: Fraction
    witness_set: WitnessSet
    nodes: int = 0
    lp_calls: int = 0
    groups: Optional[list] = None        # counterexample, lists of labels
    group_ratios: Optional[list] = None
    reason: str = ""
    attempts: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def assignment(self) -> dict:
        if self.groups is None:
            return {}
        return {lbl: i for i, g in enumerate(self.groups) for lbl in g}

    def to_json(self) -> dict:
        d = {"status": self.status, "m": self.m, "lambda": fmt(self.target),
             "witness_set": self.witness_set.to_json(), "nodes_explored": self.nodes,
             "lp_calls": self.lp_calls, "reason": self.reason}
        if self.groups is not None:
            d["counterexample"] = {
                "groups": self.groups,
                "ratios": [fmt(r) for r in self.group_ratios],
            }
        if self.attempts:
            d["attempts"] = self.attempts
        return d


class _OutOfBudget(Exception):
    pass


def _order(labels, pts, conflicts):
    """Vertices first, then by decreasing conflict degree (stable)."""
    deg = [sum(row) for row in conflicts]
    is_vertex = [lbl in VERTEX_LABELS for lbl in labels]
    return sorted(range(len(pts)), key=lambda i: (not is_vertex[i], -deg[i], i))


def certify_lower_bound(m: int, target, W: WitnessSet, budget: int = DEFAULT_NODE_BUDGET,
                        body: Optional[GaugeBody] = None) -> LowerBoundVerdict:
    """Search for a grouping of ``W`` into at most ``m`` groups, each of ratio < target.

    None exists -> certified (``gamma_m >= target``).  One found -> inconclusive
    with the grouping as a re-verified counterexample.  Budget exhausted ->
    inconclusive without one.
    """
    if m < 1:
        raise ValueError("m must be positive")
    target = Q(target)
    body = body or cross_polytope_body()
    labels, pts = W.labels, W.coords
    n = len(pts)
    conflicts = [[False] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        c = pair_ratio(body, pts[i], pts[j]) >= target
        conflicts[i][j] = conflicts[j][i] = c
    order = _order(labels, pts, conflicts)
    memo = {}
    stats = {"nodes": 0, "lp": 0}

    def ratio_of(key):
        r = memo.get(key)
        if r is None:
            stats["lp"] += 1
            r = min_ratio(body, [pts[i] for i in sorted(key)]).ratio
            memo[key] = r
        return r

    groups = []  # list of frozensets

    def fits(gi, i):
        g = groups[gi]
        if any(conflicts[i][j] for j in g):
            return False
        if len(g) == 1:
            return True
        return ratio_of(g | {i}) < target

    def doomed(k):
        # points that clash with every open group need distinct fresh groups
        forced = [i for i in order[k:]
                  if all(any(conflicts[i][j] for j in g) for g in groups)]
        free = m - len(groups)
        if len(forced) <= free:
            return False
        clique = []
        for i in forced:
            if all(conflicts[i][j] for j in clique):
                clique.append(i)
                if len(clique) > free:
                    return True
        return False

    def dfs(k):
        stats["nodes"] += 1
        if stats["nodes"] > budget:
            raise _OutOfBudget
        if k == n:
            return True
        if doomed(k):
            return False
        i = order[k]
        for gi in range(len(groups)):
            if fits(gi, i):
                old = groups[gi]
                groups[gi] = old | {i}
                if dfs(k + 1):
                    return True
                groups[gi] = old
        if len(groups) < m:
            # groups are interchangeable: only one fresh group is ever tried
            groups.append(frozenset((i,)))
            if dfs(k + 1):
                return True
            groups.pop()
        return False

    verdict = LowerBoundVerdict(CERTIFIED, m, target, W)
    try:
        found = dfs(0)
    except _OutOfBudget:
        verdict.status = INCONCLUSIVE
        verdict.reason = "budget exhausted"
        found = False
    verdict.nodes = stats["nodes"]
    verdict.lp_calls = stats["lp"]
    if found:
        ratios = []
        for g in groups:
            r = min_ratio(body, [pts[i] for i in sorted(g)]).ratio
            if not r < target:
                raise AssertionError("counterexample group failed re-verification")
            ratios.append(r)
        verdict.status = INCONCLUSIVE
        verdict.reason = "counterexample assignment"
        verdict.groups = [[labels[i] for i in sorted(g)] for g in groups]
        verdict.group_ratios = ratios
    elif verdict.status == CERTIFIED:
        verdict.reason = "all assignments refuted"
    return verdict


def certify_with_enrichment(m: int, target, W: WitnessSet, budget: int = DEFAULT_NODE_BUDGET,
                            offsets=(Fraction(1, 30), Fraction(1, 15))) -> LowerBoundVerdict:
    """Retry an inconclusive search with node points at ``target - offset`` added."""
    target = Q(target)
    verdict = certify_lower_bound(m, target, W, budget)
    attempts = [{"extra": None, "status": verdict.status, "reason": verdict.reason}]
    for eps in offsets:
        if verdict.certified:
            break
        lam = target - Q(eps)
        if not (Fraction(1, 2) <= lam < 1):
            continue
        W2 = W.extended(build_witness_set([NODES], lam))
        verdict = certify_lower_bound(m, target, W2, budget)
        attempts.append({"extra": f"nodes@{fmt(lam)}", "status": verdict.status,
                         "reason": verdict.reason})
    verdict.attempts = attempts
    return verdict


def minimax_group_ratio(body: GaugeBody, points, m: int) -> Fraction:
    """Brute force ``min over groupings into <= m groups of max group ratio``."""
    pts = [tuple(Q(c) for c in p) for p in points]
    best = None

    def partitions(i, blocks):
        if i == len(pts):
            yield blocks
            return
        for b in range(len(blocks)):
            blocks[b].append(i)
            yield from partitions(i + 1, blocks)
            blocks[b].pop()
        if len(blocks) < m:
            blocks.append([i])
            yield from partitions(i + 1, blocks)
            blocks.pop()

    for blocks in partitions(0, []):
        worst = max(min_ratio(body, [pts[i] for i in b]).ratio for b in blocks)
        if best is None or worst < best:
            best = worst
    return best


# ---------------------------------------------------------------- local ratio checks


def _node_index(eta):
    idx = {}
    for f in facets_of_cross_polytope():
        for p in node_points(f, eta):
            idx.setdefault(p, set()).add(f.label)
    return idx


def three_node_ratio(eta, points) -> Fraction:
    """Enclosing ratio of three ``eta``-node points from three distinct facets.

    Raises ValueError on malformed input and AssertionError if the ratio falls
    below ``eta``.
    """
    eta = _check_node_ratio(eta)
    pts = [tuple(Q(c) for c in p) for p in points]
    if len(pts) != 3:
        raise ValueError("need exactly three points")
    idx = _node_index(eta)
    owners = []
    for p in pts:
        if p not in idx:
            raise ValueError(f"{fmt_vec(p)} is not an {fmt(eta)}-node point")
        owners.append(idx[p])
    # need a system of distinct facet representatives
    if not any(len({a, b, c}) == 3 for a in owners[0] for b in owners[1] for c in owners[2]):
        raise ValueError("points do not come from three distinct facets")
    r = min_ratio(cross_polytope_body(), pts).ratio
    if r < eta:
        raise AssertionError(f"ratio {fmt(r)} below {fmt(eta)}")
    return r


def _canonical_triple(triple, group):
    best = None
    for g in group:
        key = tuple(sorted(g.apply(s) for s in triple))
        if best is None or key < best:
            best = key
    return best


def three_node_minima(eta) -> dict:
    """Minimum ratio over node-point choices for each facet-triple class.

    Keys are canonical sign-vector triples (one per symmetry orbit); values are
    ``(min ratio, shares_vertex)``.
    """
    eta = _check_node_ratio(eta)
    group = symmetry_group()
    facets = {f.signs: f for f in facets_of_cross_polytope()}
    reps = {}
    for triple in combinations(sorted(facets), 3):
        key = _canonical_triple(triple, group)
        reps.setdefault(key, triple)
    body = cross_polytope_body()
    out = {}
    for key, triple in sorted(reps.items()):
        fs = [facets[s] for s in triple]
        shared = set(fs[0].vertices) & set(fs[1].vertices) & set(fs[2].vertices)
        best = None
        for a in node_points(fs[0], eta):
            for b in node_points(fs[1], eta):
                for c in node_points(fs[2], eta):
                    r = min_ratio(body, [a, b, c]).ratio
                    if best is None or r < best:
                        best = r
        out[key] = (best, bool(shared))
    return out


def nodes_near_vertex(v, eta) -> list:
    """One ``eta``-node point nearest ``v`` on each of three facets around ``v``.

    The facets are taken consecutively around ``v`` (pab, pbc, pcd for v = p).
    """
    v = tuple(Q(c) for c in v)
    k = next(i for i, c in enumerate(v) if c != 0)
    s = v[k]
    others = [i for i in range(3) if i != k]
    ring = [(1, 1), (-1, 1), (-1, -1)]
    out = []
    for s1, s2 in ring:
        signs = [0, 0, 0]
        signs[k] = s
        signs[others[0]], signs[others[1]] = s1, s2
        f = next(f for f in facets_of_cross_polytope() if f.signs == tuple(signs))
        pts = node_points(f, eta)
        out.append(max(pts, key=lambda p: (p[k] * s, p)))
    return out
