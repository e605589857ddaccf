# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Lower bounds from finite point sets
#
# If m copies at ratio below t covered the body, every boundary point would land
# in some copy. Each copy's points then fit in a homothet of ratio below t. The
# engine searches all groupings; if none works, the ratio can't drop below t.

from fractions import Fraction as F

from covgamma.witness import (CENTERS, NODES, VERTICES, build_witness_set,
                              certify_lower_bound, node_points, three_node_minima)
from covgamma.polytope import facet_by_label

for m, t, gens, lam in [(5, F(1), [VERTICES], None),
                        (9, F(2, 3), [VERTICES, CENTERS], None),
                        (11, F(3, 5), [VERTICES, NODES], F(3, 5))]:
    v = certify_lower_bound(m, t, build_witness_set(gens, lam))
    print(m, t, v.status, v.reason)

# Node points live on each facet. At ratio 2/3 all three collapse onto the
# facet centroid.

f = facet_by_label("+++")
print([[str(c) for c in p] for p in node_points(f, F(3, 5))])
print(set(node_points(f, F(2, 3))))

# With 12 copies the same witness set no longer forces 3/5. The engine returns
# a grouping where every group has ratio below 3/5, re-checked by LP.

W = build_witness_set([VERTICES, NODES], F(3, 5))
v = certify_lower_bound(12, F(3, 5), W)
for g, r in zip(v.groups, v.group_ratios):
    print(r, g)

# Minimum ratio over node choices on three facets, one class per orbit.

for key, (r, shared) in three_node_minima(F(3, 5)).items():
    print(key, r, "shares a vertex" if shared else "")
