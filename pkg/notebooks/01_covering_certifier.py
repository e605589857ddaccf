# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Deciding whether translates of a shrunken octahedron cover it
#
# The body is the unit l1 ball in 3-space. We ask whether six copies at ratio
# 2/3, pushed 1/3 along each axis, cover it. The certifier answers exactly:
# either an empty decomposition tree or a rational point nobody covers.

from fractions import Fraction as F

from covgamma.certifier import cross_polytope_config, sample_check, verify_covering
from covgamma.configs import axis_vectors, binary_search_lambda

axis = axis_vectors(F(1, 3))
res = verify_covering(cross_polytope_config(F(2, 3), axis))
print(res.status, res.cells, "cells, depth", res.depth)

# Shrinking the copies a little opens a hole, and the certifier hands back a
# point in it. Here the hole sits at a vertex of the octahedron.

res = verify_covering(cross_polytope_config(F(13, 20), axis))
print(res.status, [str(c) for c in res.witness])

# Random sampling agrees with the exact verdict but cannot prove anything on
# its own.

print(sample_check(cross_polytope_config(F(2, 3), axis), 2000, seed=1))

# Bisection over rationals (mediants, not midpoints) finds the smallest ratio
# at which these fixed translations cover.

print(binary_search_lambda(6, lambda lam: axis, F(1, 2), 1, steps=8))
