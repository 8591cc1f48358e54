import pytest

from graphlie.classify import (
    brute_force_bk,
    brute_force_search,
    bk_predicate,
    classify_graph,
    enumerate_subspaces,
    field_kind,
    gaussian_binomial,
    subspace_count,
    verify_theorem,
)
from graphlie.errors import BudgetExceeded, KindMismatch
from graphlie.gf2k import GF, GF2, GF4, Echelon
from graphlie.graphs import LabelledGraph, MixedGraph, cone, disjoint_union, signature_of, special_mixed_graphs
from graphlie.lie import LieAlgebraHandle, free_presentation, quadraticity_defect, traag_presentation

T = 2
LAMBDA_S = MixedGraph.build(["1", "2", "3"], [], [("1", "2"), ("3", "2")])
F4_GRAPH = MixedGraph.build(["v", "v1", "v2"], [("v", "v1")], [("v1", "v2"), ("v", "v2")])
FILLED_PATH = LabelledGraph.build("xyz", [("x", "y"), ("y", "z")], {"x": 1, "z": 1})


def single_negative_cones():
    """Cone over a small simple Droms graph plus one negative vertex."""
    bases = [
        MixedGraph.build([]),
        MixedGraph.build(["a"]),
        MixedGraph.build(["a", "b"]),
        MixedGraph.build(["a", "b"], [("a", "b")]),
    ]
    out = []
    for base in bases:
        g = disjoint_union(base, MixedGraph.build(["y"]))
        out.append(cone(g, signature_of(g, ["y"]), "v"))
    return out


def test_field_kind():
    assert field_kind(GF2) == "F2"
    assert field_kind(GF4) == "F4"
    assert field_kind(GF(4)) == "F4"
    assert field_kind("ContainsF4") == "F4"
    with pytest.raises(ValueError):
        field_kind(GF(3))


def test_predicate_examples():
    assert not bk_predicate(LAMBDA_S, GF2, "TRAAG")
    assert bk_predicate(F4_GRAPH, GF2, "TRAAG")
    assert not bk_predicate(F4_GRAPH, "ContainsF4", "TRAAG")
    assert not bk_predicate(FILLED_PATH, GF2, "ERA")
    assert not bk_predicate(FILLED_PATH, GF4, "ERA")
    with pytest.raises(KindMismatch):
        bk_predicate(LAMBDA_S, GF2, "ERA")
    with pytest.raises(KindMismatch):
        bk_predicate(FILLED_PATH, GF2, "TRAAG")
    with pytest.raises(KindMismatch):
        bk_predicate(LAMBDA_S, GF2, "RACG")


def test_subspace_counts():
    assert len(list(enumerate_subspaces(GF2, 2))) == 5
    assert len(list(enumerate_subspaces(GF4, 2))) == 7
    assert len(list(enumerate_subspaces(GF2, 4))) == 67
    assert [gaussian_binomial(4, k, 2) for k in range(5)] == [1, 15, 35, 15, 1]


@pytest.mark.parametrize("F,n", [(GF2, 1), (GF2, 3), (GF2, 5), (GF4, 1), (GF4, 3)])
def test_enumeration_is_complete_and_irredundant(F, n):
    subs = list(enumerate_subspaces(F, n))
    assert len(subs) == subspace_count(F, n)
    spans = set()
    for rows in subs:
        packed = [F.pack(r) for r in rows]
        e = Echelon(F, packed)
        assert len(e) == len(rows)
        assert e.basis() == packed  # already in reduced echelon form
        spans.add(tuple(packed))
    assert len(spans) == len(subs)
    assert [len(r) for r in subs] == sorted(len(r) for r in subs)


def test_enumeration_bounds():
    with pytest.raises(BudgetExceeded):
        next(enumerate_subspaces(GF2, 6))
    with pytest.raises(BudgetExceeded):
        next(enumerate_subspaces(GF4, 5))
    with pytest.raises(BudgetExceeded):
        next(enumerate_subspaces(GF(3), 2))


def test_brute_force_examples():
    h = LieAlgebraHandle(traag_presentation(LAMBDA_S, GF2), order=4)
    w = brute_force_bk(h, 4)
    assert w is not None and w.defect_degree == 3
    assert quadraticity_defect(h, [[1, 0, 1], [0, 1, 0]], 4).defect_degree == 3
    assert brute_force_bk(LieAlgebraHandle(free_presentation(3, GF2), order=4), 4) is None
    h4 = LieAlgebraHandle(traag_presentation(F4_GRAPH, GF4), order=4)
    assert brute_force_bk(h4, 4).defect_degree == 3
    assert quadraticity_defect(h4, [[T, 1, 0], [0, 0, 1]], 4).defect_degree == 3


def test_search_reports_work_done():
    h = LieAlgebraHandle(traag_presentation(F4_GRAPH, GF2), order=4)
    res = brute_force_search(h, 4)
    assert res.witness is None and res.subspaces_checked == 16
    only_lines = brute_force_search(h, 4, dims=[1])
    assert only_lines.subspaces_checked == 7


def test_classify_verdict_record():
    v = classify_graph(LAMBDA_S, GF2)
    d = v.as_dict()
    assert v.agree and not v.flagged
    assert d["predicate"] is False and d["defect_degree"] == 3
    assert "elapsed_ms" not in d
    assert "elapsed_ms" in v.as_dict(timing=True)
    assert classify_graph(FILLED_PATH, GF2).algebra_kind == "ERA"


def test_verify_small_family():
    rep = verify_theorem(special_mixed_graphs(3), GF2)
    assert rep.ok and len(rep.agreements) == 13
    assert "13 agree, 0 disagree" in rep.summary()


def test_verify_records_graphs_outside_bounds():
    five = MixedGraph.build("abcde")
    rep = verify_theorem([LAMBDA_S, five], GF4)
    assert len(rep.verdicts) == 1
    assert rep.errors and rep.errors[0][0] == five.describe()
    assert not rep.ok


def test_single_negative_cones_have_no_witness_over_f4():
    for g in single_negative_cones():
        assert bk_predicate(g, GF4, "TRAAG"), g.describe()
        h = LieAlgebraHandle(traag_presentation(g, GF4), order=4)
        assert brute_force_bk(h, 4) is None, g.describe()
