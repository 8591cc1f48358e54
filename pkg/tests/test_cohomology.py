from math import comb

import pytest

from graphlie.cohomology import (
    era_cohomology,
    era_poincare_by_monomials,
    ker_pi_star_dims,
    ker_pi_star_from_series,
    poincare_series,
    ring_product,
    traag_cohomology,
)
from graphlie.errors import DegreeOutOfRange, NotSpecial
from graphlie.gf2k import GF2, GF4, Echelon
from graphlie.graphs import (
    LabelledGraph,
    MixedGraph,
    clique_polynomial,
    labelled_graphs,
    special_mixed_graphs,
)
from graphlie.lie import traag_presentation
from graphlie.series import PowerSeries, series_mul
from graphlie.tensor import QuadraticPresentation, quadratic_dual

T = 2
ARROW = MixedGraph.build("uv", [], [("u", "v")])


def dims(p, N=4):
    return [int(c) for c in poincare_series(p, N)]


def padded(coeffs, N):
    return (list(coeffs) + [0] * (N + 1))[: N + 1]


def test_dual_dimension_examples():
    assert dims(traag_cohomology(ARROW, GF2)) == [1, 2, 1, 0, 0]
    assert dims(traag_cohomology(MixedGraph.build("x"), GF2)) == [1, 1, 0, 0, 0]
    lam = MixedGraph.build("uvz", [], [("u", "z"), ("v", "z")])
    assert dims(traag_cohomology(lam, GF2)) == [1, 3, 2, 0, 0]


def test_display_for_a_directed_edge():
    p = traag_cohomology(ARROW, GF2)
    assert p.display_relations() == ["u* v* + v* u*", "u*^2 + u* v*", "v*^2"]
    assert p.display_matches()


def test_display_with_several_arrows_from_one_origin():
    star = MixedGraph.build(["x", "y1", "y2"], [], [("x", "y1"), ("x", "y2")])
    p = traag_cohomology(star, GF2)
    assert "x*^2 + x* y1* + x* y2*" in p.display_relations()
    assert p.display_matches()


def test_traag_cohomology_requires_special():
    with pytest.raises(NotSpecial):
        traag_cohomology(MixedGraph.build("uvw", [], [("u", "v"), ("v", "w")]), GF2)


@pytest.mark.parametrize("F", [GF2, GF4], ids=lambda F: F.name)
def test_poincare_series_is_the_clique_polynomial(F):
    for g in special_mixed_graphs(4):
        p = traag_cohomology(g, F)
        assert p.display_matches(), g.describe()
        assert dims(p, 5) == padded(clique_polynomial(g).coeffs, 5), g.describe()


def test_dual_of_dual_is_the_envelope_data():
    for g in special_mixed_graphs(3):
        p = traag_cohomology(g, GF2)
        assert quadratic_dual(p.dual) == traag_presentation(g, GF2).tensor_presentation()


def test_froberg_pairing_between_envelope_and_cohomology():
    N = 6
    for g in special_mixed_graphs(4):
        h_u = traag_presentation(g, GF2).algebra(N).hilbert_series(N)
        P = poincare_series(traag_cohomology(g, GF2), N)
        assert series_mul(h_u, P.at_neg()) == PowerSeries.one(N), g.describe()


def test_era_cohomology_examples():
    two = LabelledGraph.build("ab", [], {"a": 1, "b": 1})
    assert dims(era_cohomology(two, GF2)) == [1, 2, 2, 2, 2]
    for n in (2, 3):
        verts = [str(i) for i in range(n)]
        kn = LabelledGraph.build(verts, [(a, b) for a in verts for b in verts if a < b], {v: 1 for v in verts})
        assert dims(era_cohomology(kn, GF2)) == [comb(n + d - 1, d) for d in range(5)]
    path = LabelledGraph.build("abc", [("a", "b"), ("b", "c")])
    assert dims(era_cohomology(path, GF2)) == [1, 3, 2, 0, 0]


def test_era_cohomology_matches_monomial_count():
    for g in labelled_graphs(4):
        p = era_cohomology(g, GF2)
        assert p.display_matches(), g.describe()
        assert poincare_series(p, 5) == era_poincare_by_monomials(g, 5), g.describe()


def test_kernel_dimension_examples():
    assert ker_pi_star_dims(ARROW) == [0, 0, 1]
    assert ker_pi_star_from_series(ARROW, GF2, 4) == [0, 0, 1]
    six = MixedGraph.build(
        ["c", "d", "v1", "v2", "w1", "w2"],
        [("v1", "v2"), ("w1", "w2")],
        [("v1", "c"), ("v2", "c"), ("w1", "c"), ("w2", "c"), ("d", "c")],
    )
    assert ker_pi_star_dims(six) == [0, 0, 5, 2]
    assert ker_pi_star_from_series(six, GF2, 5) == [0, 0, 5, 2]
    assert ker_pi_star_from_series(MixedGraph.build("ab", [("a", "b")]), GF2, 4) == [0]


def test_kernel_counts_match_series_difference():
    for g in special_mixed_graphs(4):
        assert ker_pi_star_from_series(g, GF2, 5) == ker_pi_star_dims(g), g.describe()


def test_ring_products_in_the_field_sensitive_example():
    g = MixedGraph.build(["v", "v1", "v2"], [("v", "v1")], [("v1", "v2"), ("v", "v2")])
    p = traag_cohomology(g, GF4)
    a, b, c = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    x = [T, 1, 0]
    assert ring_product(p, [a, [0, T, 1], x]) == 0
    assert ring_product(p, [a, [0, T, 1]]) != 0
    assert len(Echelon(GF4, [ring_product(p, [x, e]) for e in (a, b, c)])) == 3


def test_ring_product_of_non_adjacent_classes_vanishes():
    p = traag_cohomology(MixedGraph.build("ab"), GF2)
    assert ring_product(p, [[1, 0], [0, 1]]) == 0
    assert ring_product(p, [[1, 0], [1, 0]]) == 0
    with pytest.raises(DegreeOutOfRange):
        ring_product(p, [[1, 0]] * 3, N=2)
    with pytest.raises(ValueError):
        ring_product(p, [[1, 0, 0]])


def test_annihilators_in_the_sum_of_squares_dual():
    s = QuadraticPresentation(2, GF4, [GF4.pack([1, 1, 0])], ["x", "y"])
    A = quadratic_dual(s).algebra(3)
    for a in GF4.elements():
        for b in GF4.elements():
            if a or b:
                assert A.mul(GF4.pack([a, b]), 1, GF4.pack([b, a]), 1) == 0
