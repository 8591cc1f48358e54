from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphlie.classify import enumerate_subspaces
from graphlie.errors import ArityMismatch, DegreeOutOfRange, DerivationLawViolated, NotSpecial, TerminusInX
from graphlie.gf2k import GF2, GF4
from graphlie.graphs import LabelledGraph, MixedGraph, labelled_graphs, special_mixed_graphs
from graphlie.lie import (
    DerivationData,
    LieAlgebraHandle,
    check_homomorphism,
    defect_report,
    era_presentation,
    free_bracket,
    free_presentation,
    free_square,
    hnn_embedding_dims,
    hnn_presentation,
    pbw_dims,
    quadratic_cover_presentation,
    quadraticity_defect,
    retract_quotient,
    subalgebra_closure,
    torsion_witness,
    traag_presentation,
    traag_signature_presentation,
    traag_square_presentation,
)
from graphlie.series import necklace2
from graphlie.tensor import QuadraticPresentation, lie2_size

T = 2
LAMBDA_S = MixedGraph.build(["1", "2", "3"], [], [("1", "2"), ("3", "2")])
F4_GRAPH = MixedGraph.build(["v", "v1", "v2"], [("v", "v1")], [("v1", "v2"), ("v", "v2")])
SMALL_SPECIAL = special_mixed_graphs(4)


def handle(g, field=GF2, order=4):
    if isinstance(g, LabelledGraph):
        return LieAlgebraHandle(era_presentation(g, field), order=order)
    return LieAlgebraHandle(traag_presentation(g, field), order=order)


def rows(F, n, *vectors):
    return QuadraticPresentation.from_lists(F, n, [list(v) for v in vectors])


@given(st.sampled_from([GF2, GF4]), st.data())
def test_square_of_sum_and_scalar(F, data):
    n = data.draw(st.integers(1, 4))
    vec = st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n)
    x, y = data.draw(vec), data.draw(vec)
    c = data.draw(st.integers(0, F.q - 1))
    s = [a ^ b for a, b in zip(x, y)]
    assert free_square(F, s) == free_square(F, x) ^ free_bracket(F, x, y) ^ free_square(F, y)
    cx = [F.mul(c, a) for a in x]
    assert free_square(F, cx) == F.scale(free_square(F, x), F.square(c))
    assert free_bracket(F, x, y) == free_bracket(F, y, x)
    assert free_bracket(F, x, x) == 0


def test_traag_presentation_examples():
    edge = MixedGraph.build("vw", [("v", "w")])
    assert traag_presentation(edge, GF2) == rows(GF2, 2, [0, 0, 1])
    arrow = MixedGraph.build("uv", [], [("u", "v")])
    assert traag_presentation(arrow, GF2) == rows(GF2, 2, [1, 0, 1])
    # columns 1^[2], 2^[2], 3^[2], [1,2], [1,3], [2,3]
    assert traag_presentation(LAMBDA_S, GF2) == rows(GF2, 3, [1, 0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 1])


@pytest.mark.parametrize("F", [GF2, GF4], ids=lambda F: F.name)
def test_three_presentation_forms_agree(F):
    for g in SMALL_SPECIAL:
        p = traag_presentation(g, F)
        assert traag_signature_presentation(g, F) == p, g.describe()
        assert traag_square_presentation(g, F) == p, g.describe()


def test_signature_form_needs_special_graph():
    with pytest.raises(NotSpecial):
        traag_signature_presentation(MixedGraph.build("uvw", [], [("u", "v"), ("v", "w")]), GF2)


def test_era_presentation_examples():
    k2 = LabelledGraph.build("uv", [("u", "v")], {"u": 1, "v": 1})
    assert era_presentation(k2, GF2) == rows(GF2, 2, [1, 0, 0], [0, 1, 0], [0, 0, 1])
    path = LabelledGraph.build("xyz", [("x", "y"), ("y", "z")], {"x": 1, "z": 1})
    assert era_presentation(path, GF2) == rows(GF2, 3, [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1])
    simple = MixedGraph.build("abc", [("a", "b")])
    assert era_presentation(LabelledGraph.build("abc", [("a", "b")]), GF2) == traag_presentation(simple, GF2)


def test_graded_dims_examples():
    assert LieAlgebraHandle(free_presentation(2, GF2), order=6).graded_dims(6) == tuple(int(necklace2(k, 2)) for k in range(1, 7))
    assert LieAlgebraHandle(rows(GF2, 1, [1]), order=4).graded_dims(4) == (1, 0, 0, 0)
    assert handle(MixedGraph.build("ab", [("a", "b")])).graded_dims(4) == (2, 2, 0, 2)


def test_lie_dims_two_ways_and_pbw():
    for g in SMALL_SPECIAL:
        h = handle(g)
        dims = h.graded_dims(4)
        assert tuple(len(b) for b in h.lie_components_from_words(4)[1:]) == dims
        assert pbw_dims(h.presentation, 4) == dims


def test_element_arity():
    h = handle(LAMBDA_S)
    with pytest.raises(ArityMismatch):
        h.element([1, 0])


def test_closure_examples():
    h = handle(LAMBDA_S)
    assert subalgebra_closure(h, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 4).dims == h.graded_dims(4)
    b = subalgebra_closure(h, [[1, 0, 1], [0, 1, 0]], 4)
    assert b.dims[1:3] == (3, 1)
    product = MixedGraph.build(["v", "w", "z"], [("v", "z"), ("w", "z")], [("v", "w")])
    assert subalgebra_closure(handle(product), [[1, 0, 1], [0, 1, 0]], 4).dims[1] == 3


@st.composite
def graph_and_subspace(draw, F=GF2):
    g = draw(st.sampled_from(SMALL_SPECIAL))
    k = draw(st.integers(1, g.n))
    vecs = [draw(st.lists(st.integers(0, F.q - 1), min_size=g.n, max_size=g.n)) for _ in range(k)]
    return g, vecs


@given(graph_and_subspace())
def test_fast_closure_matches_full_closure(data):
    g, U = data
    h = handle(g)
    assert subalgebra_closure(h, U, 4).bases == subalgebra_closure(h, U, 4, full=True).bases


@given(graph_and_subspace())
def test_cover_dims_match_cover_closure(data):
    g, U = data
    h = handle(g)
    s = subalgebra_closure(h, U, 4)
    cover = quadratic_cover_presentation(s, h.algebra)
    assert pbw_dims(cover, 4) == LieAlgebraHandle(cover, order=4).graded_dims(4)
    # the cover agrees with the subalgebra through degree 2
    assert pbw_dims(cover, 4)[:2] == s.dims[:2]


def test_cover_examples():
    h = handle(LAMBDA_S)
    s = subalgebra_closure(h, [[1, 0, 1], [0, 1, 0]], 4)
    assert quadratic_cover_presentation(s, h.algebra).relations == ()
    h4 = handle(F4_GRAPH, GF4)
    s4 = subalgebra_closure(h4, [[T, 1, 0], [0, 0, 1]], 4)
    assert quadratic_cover_presentation(s4, h4.algebra).relations == ()
    full = subalgebra_closure(h, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 4)
    assert quadratic_cover_presentation(full, h.algebra).relations == h.presentation.relations


def test_defect_examples():
    w = quadraticity_defect(handle(LAMBDA_S), [[1, 0, 1], [0, 1, 0]], 4)
    assert (w.defect_degree, w.cover_dim, w.subalgebra_dim) == (3, 2, 1)
    assert w.format_generators(LAMBDA_S.vertices) == ["1 + 3", "2"]
    w4 = quadraticity_defect(handle(F4_GRAPH, GF4), [[T, 1, 0], [0, 0, 1]], 4)
    assert w4.defect_degree == 3
    assert quadraticity_defect(handle(F4_GRAPH, GF2), [[1, 1, 0], [0, 0, 1]], 4) is None


def test_free_algebra_has_no_defect():
    h = LieAlgebraHandle(free_presentation(3, GF2), order=4)
    for U in enumerate_subspaces(GF2, 3):
        if U:
            assert quadraticity_defect(h, [list(r) for r in U], 4) is None


@given(graph_and_subspace())
def test_witness_reverifies(data):
    g, U = data
    h = handle(g)
    w = quadraticity_defect(h, U, 4)
    if w is not None:
        assert w.reverify(h) == w
        assert w.cover_dims[w.defect_degree - 1] > w.subalgebra_dims[w.defect_degree - 1]


def test_defect_depth_validation():
    with pytest.raises(ValueError):
        defect_report(handle(LAMBDA_S), [[1, 0, 0]], 1)


def test_induced_subgraph_generators_span_the_subgraph_algebra():
    for g in SMALL_SPECIAL:
        h = handle(g)
        for k in range(1, g.n):
            for sub in combinations(g.vertices, k):
                U = [[1 if v == w else 0 for v in g.vertices] for w in sub]
                assert subalgebra_closure(h, U, 4).dims == handle(g.induced(sub)).graded_dims(4)


def test_homomorphism_examples():
    star = MixedGraph.build(["x", "y1", "y2"], [], [("x", "y1"), ("x", "y2")])
    target = MixedGraph.build(["x", "y", "y1"], [("x", "y")], [("x", "y1")])
    res = check_homomorphism(traag_presentation(star, GF2), handle(target), [[1, 0, 0], [0, 0, 1], [0, 1, 1]], 4)
    assert res.verdict == "graded-iso" and res.describe() == "graded-iso-up-to-4"
    h = handle(LAMBDA_S)
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert check_homomorphism(h.presentation, h, ident, 4).verdict == "graded-iso"
    k2 = traag_presentation(MixedGraph.build("ab", [("a", "b")]), GF2)
    free = LieAlgebraHandle(free_presentation(2, GF2), order=4)
    assert check_homomorphism(k2, free, [[1, 0], [0, 1]], 4).verdict == "neither"
    # a valid map that is not onto
    assert check_homomorphism(free_presentation(1, GF2), free, [[1, 0]], 4).verdict == "valid"
    with pytest.raises(ArityMismatch):
        check_homomorphism(k2, free, [[1, 0]], 4)


def square_values(F, n, idx):
    c = [0] * n
    c[idx] = 1
    return F.unpack(free_square(F, c), lie2_size(n))


def test_hnn_of_square_map_is_a_directed_edge():
    base = free_presentation(1, GF2, ["w"])
    ext = hnn_presentation(DerivationData(base, [[1]], [square_values(GF2, 1, 0)]))
    # columns w^[2], t^[2], [w,t]
    assert ext == QuadraticPresentation(2, GF2, [GF2.pack([1, 0, 1])], ["w", "t"])
    assert ext.format_relations() == ["w^[2] + [w,t]"]


def test_hnn_with_zero_derivation_is_a_direct_product():
    base = free_presentation(1, GF2, ["w"])
    ext = hnn_presentation(DerivationData(base, [[1]], [[0]]))
    assert LieAlgebraHandle(ext, order=4).graded_dims(4) == (2, 2, 0, 2)


@pytest.mark.parametrize(
    "g",
    [
        MixedGraph.build(["a", "b", "t"], [], [("a", "t"), ("b", "t")]),
        MixedGraph.build(["a", "b", "c", "t"], [("b", "c")], [("a", "t")]),
        MixedGraph.build(["a", "b", "c", "t"], [("a", "b"), ("b", "c")], [("a", "t"), ("b", "t")]),
    ],
    ids=lambda g: g.describe(),
)
def test_graph_algebra_splits_as_hnn_over_a_negative_vertex(g):
    # t sorts last, so its generator index matches the HNN letter
    base_graph = g.induced(v for v in g.vertices if v != "t")
    base = traag_presentation(base_graph, GF2)
    star = sorted(o for o, t in g.directed_edges if t == "t")
    gens = [[1 if v == s else 0 for v in base_graph.vertices] for s in star]
    vals = [square_values(GF2, base.n, base_graph.index(s)) for s in star]
    d = DerivationData(base, gens, vals)
    assert hnn_presentation(d) == traag_presentation(g, GF2)
    base_dims, image_dims = hnn_embedding_dims(d, 4)
    assert base_dims == image_dims


def test_derivation_law_violation():
    base = rows(GF2, 3, [0, 0, 0, 1, 0, 0])  # [x, y] = 0 among x, y, z
    bad = DerivationData(base, [[1, 0, 0], [0, 1, 0]], [[0, 0, 0, 0, 1, 0], [0] * 6])
    with pytest.raises(DerivationLawViolated):
        hnn_presentation(bad)
    with pytest.raises(ValueError):
        hnn_presentation(DerivationData(free_presentation(1, GF2), [[1]], [[0]], degree=2))


def test_torsion_examples():
    tri = MixedGraph.build("123", [], [("1", "2"), ("2", "3"), ("3", "1")])
    assert torsion_witness(handle(tri), [1, 1, 1]) == 1
    h = handle(LAMBDA_S)
    assert all(torsion_witness(h, h.field.unit(a)) is None for a in range(3))
    racg = handle(LabelledGraph.build("v", [], {"v": 1}))
    assert torsion_witness(racg, [1]) == 1
    with pytest.raises(DegreeOutOfRange):
        torsion_witness(h, [1, 0, 0], maxpow=3)


def test_special_graph_generators_are_torsion_free():
    for g in SMALL_SPECIAL:
        h = handle(g)
        for a in range(g.n):
            assert torsion_witness(h, h.field.unit(a)) is None


def test_retract_examples():
    arrow = MixedGraph.build("uv", [], [("u", "v")])
    r = retract_quotient(arrow, ["u"], GF2)
    assert r.quotient_dims == (1, 1, 0, 1) and r.agree
    assert retract_quotient(arrow, [], GF2).agree
    with pytest.raises(TerminusInX):
        retract_quotient(arrow, ["v"], GF2)
    # killing the terminus leaves an elementary abelian quotient, not the induced graph's algebra
    assert not retract_quotient(arrow, ["v"], GF2, allow_termini=True).agree


def test_killing_non_termini_matches_induced_subgraph():
    for g in SMALL_SPECIAL:
        free = [v for v in g.vertices if v not in g.termini()]
        for k in range(len(free) + 1):
            for X in combinations(free, k):
                assert retract_quotient(g, X, GF2).agree, (g.describe(), X)


def test_era_lie_dims_two_ways():
    for g in labelled_graphs(3):
        h = handle(g)
        assert pbw_dims(h.presentation, 4) == h.graded_dims(4)
