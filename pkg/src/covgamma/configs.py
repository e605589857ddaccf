"""Covering configurations, symmetric completion, searches and the gamma table."""

import math
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from .certifier import (COVERED, DEFAULT_CELL_BUDGET, INCONCLUSIVE, NOT_COVERED,
                        CoverageResult, CoveringConfig, cross_polytope_config,
                        sample_points, verify_covering)
from .exact import Q, fmt, fmt_vec
from .polytope import l1_norm, symmetry_group
from .radius import cross_polytope_body
from .witness import (CENTERS, DEFAULT_NODE_BUDGET, MIDPOINTS, NODES, VERTICES,
                      build_witness_set, certify_lower_bound, certify_with_enrichment)

UNCHECKED = "unchecked"
INCOMPLETE_COUNT = "lists 10 of 14"

F = Fraction


def _pm(*vs):
    out = []
    for v in vs:
        v = tuple(Q(c) for c in v)
        out.append(v)
        out.append(tuple(-c for c in v))
    return tuple(out)


def axis_vectors(t) -> tuple:
    t = Q(t)
    return _pm((t, 0, 0), (0, t, 0), (0, 0, t))


@dataclass
class CatalogEntry:
    id: str
    m: int
    lam: Fraction
    translations: tuple
    provenance: str
    flags: tuple = ()
    verified: str = UNCHECKED
    witness: Optional[tuple] = None
    derived_from: Optional[str] = None
    stats: dict = field(default_factory=dict)

    def config(self) -> CoveringConfig:
        return cross_polytope_config(self.lam, self.translations)

    def verify(self, budget: int = DEFAULT_CELL_BUDGET) -> CoverageResult:
        res = verify_covering(self.config(), budget)
        self.verified = res.status
        self.witness = res.witness
        self.stats = {"cells": res.cells, "depth": res.depth}
        return res

    def to_json(self) -> dict:
        d = {"id": self.id, "m": self.m, "lambda": fmt(self.lam),
             "translations": [fmt_vec(t) for t in self.translations],
             "provenance": self.provenance, "flags": list(self.flags),
             "verified": self.verified}
        if self.witness is not None:
            d["witness"] = fmt_vec(self.witness)
        if self.derived_from:
            d["derived_from"] = self.derived_from
        return d


def catalog() -> list:
    """The explicit configurations stated for m = 6, 10 and 14 (unverified)."""
    return [
        CatalogEntry("m6", 6, F(2, 3), axis_vectors(F(1, 3)),
                     "published 6-copy construction: axis +-1/3 e_i"),
        CatalogEntry("m10", 10, F(3, 5),
                     axis_vectors(F(2, 5)) + _pm((F(2, 5), F(2, 5), 0), (0, F(2, 5), F(2, 5))),
                     "published 10-copy list: axis +-2/5 e_i, +-(2/5,2/5,0), +-(0,2/5,2/5)"),
        CatalogEntry("m14", 14, F(4, 7),
                     axis_vectors(F(3, 7)) + _pm((F(2, 7), F(1, 7), 0), (F(1, 7), F(2, 7), 0)),
                     "published 14-copy list: axis +-3/7 e_i, +-(2/7,1/7,0), +-(1/7,2/7,0)",
                     flags=(INCOMPLETE_COUNT,)),
    ]


def catalog_entry(entry_id: str) -> CatalogEntry:
    for e in catalog():
        if e.id == entry_id:
            return e
    raise KeyError(f"no catalog entry {entry_id!r}")


# ---------------------------------------------------------------- symmetry


def orbit(v, group=None) -> tuple:
    group = group or symmetry_group()
    return tuple(sorted({g.apply(v) for g in group}))


def canonical_set(vectors, group=None) -> tuple:
    """Lexicographically least image of a translation set under the group."""
    group = group or symmetry_group()
    return min(tuple(sorted(g.apply(v) for v in vectors)) for g in group)


def _screen(cfg: CoveringConfig, lam) -> Optional[tuple]:
    """Cheap necessary check: an uncovered boundary witness, if any."""
    gens = [VERTICES, CENTERS]
    pts = list(build_witness_set(gens).coords)
    if F(1, 2) <= lam < 1:
        pts += build_witness_set([NODES, MIDPOINTS], lam).coords
    for p in pts:
        if not cfg.covers_point(p):
            return p
    return None


def complete_by_symmetry(entry: CatalogEntry, target_count: Optional[int] = None,
                         budget: int = DEFAULT_CELL_BUDGET, max_candidates: int = 200) -> list:
    """Symmetric completions of ``entry`` to exactly ``target_count`` translations.

    Full orbits of the entry's vectors are kept.  Partially present orbits are
    filled with +- pairs of orbit images: added on top of the listed vectors
    when the list is short, or re-chosen when the list has the right size but
    fails to cover.  Candidates are deduplicated up to symmetry and each one is
    decided by the certifier (after a cheap witness-point screen).
    """
    target = entry.m if target_count is None else target_count
    T = tuple(entry.translations)
    if len(T) > target:
        raise ValueError(f"entry already has {len(T)} > {target} translations")
    group = symmetry_group()
    if len(T) == target:
        e = replace(entry, id=entry.id, flags=tuple(entry.flags))
        if e.verify(budget).status == COVERED:
            return [e]
    classes = {}
    for t in T:
        classes.setdefault(orbit(t, group), set()).add(t)
    keep, pool, listed = [], [], []
    for orb, present in sorted(classes.items()):
        if len(present) == len(orb):
            keep.extend(orb)
        else:
            pairs = sorted({tuple(sorted((v, tuple(-c for c in v)))) for v in orb})
            pool.extend(pairs)
            listed.extend(present)
    need = target - len(keep)
    if need < 0 or need % 2:
        return []
    superset = len(T) < target
    seen, cands = set(), []
    for combo in combinations(pool, need // 2):
        vecs = [v for pair in combo for v in pair]
        if superset and not set(listed) <= set(vecs):
            continue
        full = tuple(keep) + tuple(vecs)
        if len(set(full)) != target:
            continue
        key = canonical_set(full, group)
        if key in seen:
            continue
        seen.add(key)
        cands.append(full)
        if len(cands) >= max_candidates:
            break
    out = []
    for i, full in enumerate(cands):
        e = CatalogEntry(f"{entry.id}-sym{i}", target, entry.lam, full,
                         f"symmetric completion of {entry.id}", derived_from=entry.id)
        w = _screen(e.config(), entry.lam)
        if w is not None:
            e.verified, e.witness = NOT_COVERED, w
        else:
            e.verify(budget)
        out.append(e)
    out.sort(key=lambda e: (e.verified != COVERED, e.id))
    return out


def best_completion(entry: CatalogEntry, budget: int = DEFAULT_CELL_BUDGET) -> Optional[CatalogEntry]:
    for e in complete_by_symmetry(entry, entry.m, budget):
        if e.verified == COVERED:
            return e
    return None


# ---------------------------------------------------------------- searches


def simplest_between(lo, hi) -> Fraction:
    """Simplest rational strictly inside ``(lo, hi)``; ``lo >= 0``, hi may be None."""
    lo = Q(lo)
    fl = math.floor(lo)
    if hi is None or fl + 1 < hi:
        return Fraction(fl + 1)
    hi = Q(hi)
    # fl <= lo < hi <= fl + 1
    inner_lo = 1 / (hi - fl)
    inner_hi = None if lo == fl else 1 / (lo - fl)
    return fl + 1 / simplest_between(inner_lo, inner_hi)


def binary_search_lambda(m: int, generator: Callable, lo, hi, steps: int = 12,
                         budget: int = DEFAULT_CELL_BUDGET) -> Fraction:
    """Smallest certified-covering ratio found by Stern-Brocot bisection.

    ``generator(lam)`` returns at most ``m`` translations.  The invariant keeps
    ``lo`` uncovered and ``hi`` covered; each probe is the simplest rational in
    between, so low-denominator answers are hit in few steps.
    """
    lo, hi = Q(lo), Q(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")

    def covered(lam):
        ts = tuple(generator(lam))
        if len(ts) > m:
            raise ValueError(f"generator produced {len(ts)} > {m} translations")
        res = verify_covering(cross_polytope_config(lam, ts), budget)
        if res.status == INCONCLUSIVE:
            raise RuntimeError(f"certifier budget exhausted at lambda={fmt(lam)}")
        return res.status == COVERED

    if covered(lo):
        return lo
    if not covered(hi):
        raise ValueError(f"not covered at upper end {fmt(hi)}")
    for _ in range(steps):
        mid = simplest_between(lo, hi)
        if covered(mid):
            hi = mid
        else:
            lo = mid
    return hi


def seed_families(m: int, lam) -> list:
    """Symmetric starting configurations with at most ``m`` translations."""
    lam = Q(lam)
    t = 1 - lam
    s = t / 3
    fams = [((F(0),) * 3,)]
    if m >= 6:
        fams.append(axis_vectors(t))
    if m >= 10:
        fams.append(axis_vectors(t) + _pm((t, t, 0), (t, -t, 0)))
    if m >= 14:
        fams.append(axis_vectors(t) + tuple((a * s, b * s, c * s)
                                            for a in (1, -1) for b in (1, -1) for c in (1, -1)))
        fams.append(axis_vectors(t) + _pm((2 * s, s, 0), (s, 2 * s, 0),
                                          (2 * s, -s, 0), (s, -2 * s, 0)))
    return sorted((tuple(f) for f in fams if len(f) <= m), key=len, reverse=True)


def local_search_upper(m: int, lam, seed=0, iterations: int = 20,
                       budget: int = DEFAULT_CELL_BUDGET, samples: int = 400) -> Optional[CoveringConfig]:
    """Heuristic search for an ``m``-covering at ratio ``lam``.

    Returns a configuration only when the exact certifier says Covered.
    """
    if m < 1:
        raise ValueError("m must be positive")
    lam = Q(lam)
    rng = random.Random(seed)
    probe = sample_points(cross_polytope_body(), samples, seed)

    def score(ts):
        cfg = cross_polytope_config(lam, ts)
        return sum(1 for x in probe if cfg.covers_point(x))

    for start in seed_families(m, lam):
        ts = list(start)
        cur = score(ts)
        for _ in range(iterations):
            res = verify_covering(cross_polytope_config(lam, ts), budget)
            if res.status == COVERED:
                return cross_polytope_config(lam, ts)
            if res.status == INCONCLUSIVE:
                break
            w = res.witness
            if len(ts) < m:
                trial = ts + [w]
            else:
                k = min(range(len(ts)),
                        key=lambda i: (l1_norm(tuple(a - b for a, b in zip(ts[i], w))), i))
                step = Fraction(rng.randint(1, 4), 4)
                moved = tuple((a + step * (b - a)).limit_denominator(420)
                              for a, b in zip(ts[k], w))
                trial = ts[:k] + [moved] + ts[k + 1:]
            sc = score(trial)
            if sc >= cur:
                ts, cur = trial, sc
    return None


# ---------------------------------------------------------------- gamma table

# (m range, target, generators, node ratio) for the prescribed witness sets
LOWER_PLAN = (
    (range(1, 6), F(1), (VERTICES,), None),
    (range(6, 10), F(2, 3), (VERTICES, CENTERS), None),
    (range(10, 14), F(3, 5), (VERTICES, NODES), F(3, 5)),
    (range(14, 10 ** 9), F(4, 7), (VERTICES, NODES, MIDPOINTS), F(4, 7)),
)


def lower_plan(m: int):
    for rng_, target, gens, lam in LOWER_PLAN:
        if m in rng_:
            return target, gens, lam
    raise ValueError(m)


@dataclass
class GammaTableRow:
    m: int
    upper: Fraction
    upper_config_id: str
    upper_reused: bool
    lower: Fraction
    lower_method: str
    lower_status: str
    runtime: float = 0.0

    @property
    def tight(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {"m": self.m, "lower": fmt(self.lower), "upper": fmt(self.upper),
                "tight": self.tight, "lower_method": self.lower_method,
                "lower_status": self.lower_status,
                "upper_config_id": self.upper_config_id,
                "upper_reused": self.upper_reused, "runtime": round(self.runtime, 3)}


def upper_candidates(cell_budget: int = DEFAULT_CELL_BUDGET) -> list:
    """Certified upper-bound configurations: trivial copy plus the catalog."""
    out = [CatalogEntry("trivial", 1, F(1), ((F(0),) * 3,), "K1 covers itself")]
    out[0].verify(cell_budget)
    for e in catalog():
        if e.verify(cell_budget).status == COVERED and len(e.translations) <= e.m:
            out.append(e)
            continue
        best = best_completion(e, cell_budget)
        if best is not None:
            out.append(best)
    return out


def best_lower_bound(m: int, W, hi, steps: int = 4,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> Fraction:
    """Largest target certified on ``W`` found by Stern-Brocot descent below ``hi``."""
    lo = F(0)   # nothing has ratio < 0, so 0 is always certified
    hi = Q(hi)
    for _ in range(steps):
        mid = simplest_between(lo, hi)
        v = certify_lower_bound(m, mid, W, node_budget)
        if v.certified:
            lo = mid
        else:
            hi = mid
    return lo


def _row_lower(m: int, node_budget: int, descent_steps: int):
    start = time.perf_counter()
    target, gens, lam = lower_plan(m)
    W = build_witness_set(gens, lam)
    v = certify_with_enrichment(m, target, W, node_budget)
    name = "+".join(gens)
    if v.certified:
        lower, method = target, f"witness[{name}]@{fmt(target)}"
    else:
        lower = best_lower_bound(m, W, target, descent_steps, node_budget)
        method = f"descent[{name}] ({v.reason} at {fmt(target)})"
    return m, lower, method, v.status, time.perf_counter() - start


def gamma_table(m_min: int, m_max: int, node_budget: int = DEFAULT_NODE_BUDGET,
                cell_budget: int = DEFAULT_CELL_BUDGET, descent_steps: int = 4,
                jobs: int = 1) -> list:
    """One row per m: best certified covering above, witness-engine bound below.

    Rows whose prescribed witness set does not certify fall back to a
    Stern-Brocot descent on the same set, then to monotonicity in m.
    """
    if not 1 <= m_min <= m_max:
        raise ValueError("need 1 <= m_min <= m_max")
    t0 = time.perf_counter()
    uppers = upper_candidates(cell_budget)
    upper_time = time.perf_counter() - t0
    ms = list(range(m_min, m_max + 1))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            lowers = list(ex.map(_row_lower, ms, [node_budget] * len(ms),
                                 [descent_steps] * len(ms)))
    else:
        lowers = [_row_lower(m, node_budget, descent_steps) for m in ms]
    rows = []
    for m, lower, method, status, runtime in lowers:
        best = min((e for e in uppers if len(e.translations) <= m),
                   key=lambda e: (e.lam, len(e.translations)))
        rows.append(GammaTableRow(m, best.lam, best.id, best.m < m, lower, method, status,
                                  runtime))
    # gamma_m is non-increasing in m, so a bound at larger m carries down
    for i in range(len(rows) - 2, -1, -1):
        nxt = rows[i + 1]
        if nxt.lower > rows[i].lower:
            rows[i].lower = nxt.lower
            rows[i].lower_method = f"monotone from m={nxt.m}"
    if rows:
        rows[0].runtime += upper_time
    for r in rows:
        if r.lower > r.upper:
            raise AssertionError(f"lower bound exceeds upper bound at m={r.m}")
    return rows


def table_csv(rows) -> str:
    lines = ["m,lower,upper,tight,lower_method,upper_config_id,runtime"]
    for r in rows:
        d = r.to_json()
        lines.append(",".join([str(d["m"]), d["lower"], d["upper"], str(d["tight"]).lower(),
                               '"' + d["lower_method"] + '"', d["upper_config_id"],
                               str(d["runtime"])]))
    return "\n".join(lines) + "\n"
