from fractions import Fraction as F

import pytest

from covgamma.certifier import NOT_COVERED, verify_covering_2d
from covgamma.polytope import facets_of_cross_polytope
from covgamma.radius import CHART_TRIANGLE_VERTICES, min_ratio, triangle_body
from covgamma.triangle import (GAMMA3, certify_triangle_gamma3, check_equilateral,
                               corner_translations, to_chart, triangle_gamma3)

E123 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_gamma3_is_two_thirds():
    assert triangle_gamma3() == F(2, 3)
    for f in facets_of_cross_polytope():
        assert triangle_gamma3(f.vertices) == F(2, 3)


def test_certificate_parts():
    c = certify_triangle_gamma3(E123)
    assert c.covering.covered
    assert c.lower.certified and c.minimax == F(2, 3)
    assert c.vertex_centroid_ratio == F(2, 3)
    assert c.to_json()["gamma3"] == "2/3"


def test_vertex_centroid_ratio_in_chart():
    T = triangle_body()
    for v in CHART_TRIANGLE_VERTICES:
        assert min_ratio(T, [v, (0, 0)]).ratio == F(2, 3)


def test_corner_copies_below_two_thirds_fail():
    for lam in (F(1, 2), F(13, 20)):
        res = verify_covering_2d(lam, corner_translations(lam))
        assert res.status == NOT_COVERED


def test_chart_map():
    assert to_chart(E123, (F(1, 3),) * 3) == (0, 0)
    for v, w in zip(E123, CHART_TRIANGLE_VERTICES):
        assert to_chart(E123, v) == w


def test_scaled_rational_equilateral():
    T = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
    assert triangle_gamma3(T) == GAMMA3


@pytest.mark.parametrize("T", [((0, 0), (1, 0), (0, 1)), ((0, 0, 0), (1, 0, 0), (2, 0, 0)),
                               ((0, 0), (0, 0), (0, 0)), ((1, 0, 0), (0, 1, 0))])
def test_rejects_non_equilateral(T):
    with pytest.raises(ValueError):
        check_equilateral(T)
    with pytest.raises(ValueError):
        triangle_gamma3(T)
