"""Exact decision of ``K subset union_i (lam K + u_i)``.

The uncovered part of a cell ``P`` after removing a closed copy ``C`` is split
into the sequential-complement cells

    P cap {h_1, ..., h_{j-1}} cap {not h_j}        (not h_j strict)

and the search recurses on each with the remaining copies.  An empty tree is
a proof of coverage; a nonempty leaf with no copy left yields an exact
uncovered point.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import Q, fmt, fmt_vec
from .polytope import HPolytope, bounding_box, homothet, is_empty
from .radius import GaugeBody, cross_polytope_body, triangle_body

COVERED, NOT_COVERED, INCONCLUSIVE = "covered", "not_covered", "inconclusive"
DEFAULT_CELL_BUDGET = 10 ** 6


@dataclass(frozen=True)
class CoveringConfig:
    body: GaugeBody
    lam: Fraction
    translations: tuple

    def __post_init__(self):
        lam = Q(self.lam)
        if lam <= 0:
            raise ValueError("ratio must be positive")
        if not self.translations:
            raise ValueError("need at least one translation")
        ts = tuple(tuple(Q(c) for c in t) for t in self.translations)
        if any(len(t) != self.body.dim for t in ts):
            raise ValueError("translation dimension does not match body")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "translations", ts)

    @property
    def m(self) -> int:
        return len(self.translations)

    def copies(self) -> list:
        return [homothet(self.body.polytope, self.lam, t) for t in self.translations]

    def covers_point(self, x) -> bool:
        return any(self.body.contains(x, self.lam, t) for t in self.translations)

    def with_lambda(self, lam) -> "CoveringConfig":
        return CoveringConfig(self.body, Q(lam), self.translations)

    def to_json(self) -> dict:
        return {"body": self.body.kind, "lambda": fmt(self.lam),
                "translations": [fmt_vec(t) for t in self.translations]}


@dataclass
class CoverageResult:
    status: str
    witness: Optional[tuple] = None
    cells: int = 0
    depth: int = 0
    lp_calls: int = field(default=0, compare=False)

    @property
    def covered(self) -> bool:
        return self.status == COVERED

    def to_json(self) -> dict:
        d = {"status": self.status, "cells": self.cells, "depth": self.depth}
        if self.witness is not None:
            d["witness"] = fmt_vec(self.witness)
        return d


class _Budget(Exception):
    pass


def verify_covering(cfg: CoveringConfig, budget: int = DEFAULT_CELL_BUDGET) -> CoverageResult:
    """Decide coverage exactly.  ``budget`` caps the number of cells explored."""
    copies = cfg.copies()
    stats = {"cells": 0, "depth": 0}

    def cover(P, remaining, depth):
        stats["cells"] += 1
        stats["depth"] = max(stats["depth"], depth)
        if stats["cells"] > budget:
            raise _Budget
        probe = is_empty(P)
        if probe.empty:
            return None
        w = probe.witness
        # recurse first on a copy holding the cell's witness
        pick = next((i for i in remaining if copies[i].closure_contains(w)), None)
        if pick is None:
            return w
        rest = tuple(i for i in remaining if i != pick)
        prefix = []
        for h in copies[pick].halfspaces:
            cell = P.intersect(*prefix, h.complement())
            found = cover(cell, rest, depth + 1)
            if found is not None:
                return found
            prefix.append(h)
        return None

    root = cfg.body.polytope
    try:
        w = cover(root, tuple(range(len(copies))), 0)
    except _Budget:
        return CoverageResult(INCONCLUSIVE, None, stats["cells"] - 1, stats["depth"])
    if w is None:
        return CoverageResult(COVERED, None, stats["cells"], stats["depth"])
    if not root.contains(w) or cfg.covers_point(w):
        raise AssertionError(f"unsound witness {w}")
    return CoverageResult(NOT_COVERED, w, stats["cells"], stats["depth"])


def verify_covering_2d(lam, translations, budget: int = DEFAULT_CELL_BUDGET) -> CoverageResult:
    """Coverage of the chart equilateral triangle by translates of ``lam T``."""
    return verify_covering(CoveringConfig(triangle_body(), Q(lam), tuple(translations)), budget)


def cross_polytope_config(lam, translations) -> CoveringConfig:
    return CoveringConfig(cross_polytope_body(), Q(lam), tuple(translations))


def sample_points(body: GaugeBody, n: int, seed, resolution: int = 2 ** 20) -> list:
    """Deterministic pseudorandom rational points of ``body`` by rejection."""
    rng = random.Random(seed)
    box = bounding_box(body.polytope)
    out = []
    while len(out) < n:
        x = tuple(lo + (hi - lo) * Fraction(rng.randint(0, resolution), resolution)
                  for lo, hi in box)
        if body.contains(x):
            out.append(x)
    return out


def sample_check(cfg: CoveringConfig, n: int, seed=0) -> Fraction:
    """Fraction of ``n`` random points of the body that the copies cover."""
    if n < 1:
        raise ValueError("n must be positive")
    pts = sample_points(cfg.body, n, seed)
    hit = sum(1 for x in pts if cfg.covers_point(x))
    return Fraction(hit, n)


def uncovered_samples(cfg: CoveringConfig, n: int, seed=0) -> list:
    return [x for x in sample_points(cfg.body, n, seed) if not cfg.covers_point(x)]


def config_from_json(d: dict) -> CoveringConfig:
    """Inverse of ``CoveringConfig.to_json``; ``body`` defaults to K1."""
    from .radius import CROSS_POLYTOPE_3, TRIANGLE_2
    kind = d.get("body", CROSS_POLYTOPE_3)
    bodies = {CROSS_POLYTOPE_3: cross_polytope_body, TRIANGLE_2: triangle_body}
    if kind not in bodies:
        raise ValueError(f"unknown body {kind!r}")
    if "lambda" not in d or "translations" not in d:
        raise ValueError("config needs 'lambda' and 'translations'")
    ts = tuple(tuple(parse_coord(c) for c in t) for t in d["translations"])
    return CoveringConfig(bodies[kind](), parse_coord(d["lambda"]), ts)


def parse_coord(c) -> Fraction:
    # JSON ints are fine, JSON floats are not
    if isinstance(c, float):
        raise ValueError(f"decimal value {c!r} not allowed; write p/q")
    return Q(c)
