"""Worked examples with known answers, runnable as one suite.

Each check returns ``(passed, detail)``; :func:`run_all` collects them in a
fixed order so the report is stable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Callable

from graphlie.classify import brute_force_bk, enumerate_subspaces
from graphlie.cohomology import (
    era_cohomology,
    ker_pi_star_dims,
    ker_pi_star_from_series,
    poincare_series,
    ring_product,
    traag_cohomology,
)
from graphlie.gf2k import GF2, GF4, Echelon
from graphlie.graphs import LabelledGraph, MixedGraph
from graphlie.lie import (
    DerivationData,
    LieAlgebraHandle,
    check_homomorphism,
    defect_report,
    era_presentation,
    free_presentation,
    hnn_presentation,
    quadraticity_defect,
    torsion_witness,
    traag_presentation,
)
from graphlie.series import necklace2
from graphlie.tensor import QuadraticPresentation, TensorPresentation, quadratic_dual

T = 2  # the class of T in F_4 = F_2[T]/(T^2 + T + 1)
DEPTH = 4


def lambda_s() -> MixedGraph:
    return MixedGraph.build(["1", "2", "3"], [], [("1", "2"), ("3", "2")])


def f4_graph() -> MixedGraph:
    """Cone with tip v over the directed edge v1 -> v2."""
    return MixedGraph.build(["v", "v1", "v2"], [("v", "v1")], [("v1", "v2"), ("v", "v2")])


def directed_star(k: int) -> MixedGraph:
    ys = [f"y{i}" for i in range(1, k + 1)]
    return MixedGraph.build(["x"] + ys, [], [("x", y) for y in ys])


def six_vertex_graph() -> MixedGraph:
    return MixedGraph.build(
        ["c", "d", "v1", "v2", "w1", "w2"],
        [("v1", "v2"), ("w1", "w2")],
        [("v1", "c"), ("v2", "c"), ("w1", "c"), ("w2", "c"), ("d", "c")],
    )


def _defect(h: LieAlgebraHandle, rows, degree: int = 3) -> tuple[bool, str]:
    r = defect_report(h, rows, DEPTH)
    w = r.witness
    detail = f"closure {r.subalgebra.dims}, cover {r.cover_dims}"
    return w is not None and w.defect_degree == degree, detail


# -- the examples ------------------------------------------------------------------


def one_generator() -> tuple[bool, str]:
    free = LieAlgebraHandle(free_presentation(1, GF2, ["x"]), order=6)
    trunc = LieAlgebraHandle(QuadraticPresentation(1, GF2, [1], ["x"]), order=6)
    lie_free = free.graded_dims(4)
    lie_trunc = trunc.graded_dims(4)
    env_trunc = tuple(trunc.algebra.dims(4))
    coh_free = tuple(int(c) for c in poincare_series(traag_cohomology(MixedGraph.build(["x"]), GF2), 4))
    ok = (
        lie_free == (1, 1, 0, 1)
        and lie_trunc == (1, 0, 0, 0)
        and env_trunc == (1, 1, 0, 0, 0)
        and coh_free == (1, 1, 0, 0, 0)
    )
    return ok, f"free {lie_free}, truncated {lie_trunc}, envelope {env_trunc}, dual of free {coh_free}"


def product_with_free_abelian() -> tuple[bool, str]:
    # <v, w | [v,w] + v^[2]> times <z>: z commutes with v and w
    g = MixedGraph.build(["v", "w", "z"], [("v", "z"), ("w", "z")], [("v", "w")])
    h = LieAlgebraHandle(traag_presentation(g, GF2), order=DEPTH)
    r = defect_report(h, [[1, 0, 1], [0, 1, 0]], DEPTH)
    ok = r.subalgebra.dims[1] == 3 and r.witness is not None and r.witness.defect_degree == 3
    return ok, f"dim h_2 = {r.subalgebra.dims[1]}, defect degree {r.witness and r.witness.defect_degree}"


def sum_of_squares_relation() -> tuple[bool, str]:
    details = []
    ok = True
    for F in (GF2, GF4):
        p = QuadraticPresentation(2, F, [0b11 if F.m == 1 else F.pack([1, 1, 0])], ["x", "y"])
        h = LieAlgebraHandle(p, order=DEPTH)
        for rows in enumerate_subspaces(F, 2):
            if rows and quadraticity_defect(h, [list(r) for r in rows], DEPTH) is not None:
                ok = False
        dual = TensorPresentation(2, F, p.tensor_presentation().relations)
        A = quadratic_dual(dual)
        expected = Echelon(F, [F.pack([0, 1, 0, 0]), F.pack([0, 0, 1, 0]), F.pack([1, 0, 0, 1])]).basis()
        ok = ok and list(A.relations) == expected
        alg = A.algebra(order=3)
        for a, b in product(F.elements(), repeat=2):
            if not (a or b):
                continue
            x = F.pack([a, b])
            y = F.pack([b, a])
            if alg.mul(x, 1, y, 1):
                ok = False
            ann = [z for z in (F.pack([c, e]) for c, e in product(F.elements(), repeat=2)) if not alg.mul(x, 1, z, 1)]
            if len(Echelon(F, ann)) != 1 or not Echelon(F, ann).contains(y):
                ok = False
        details.append(F.name)
    return ok, "no defect in any subspace, annihilators of degree-1 elements are lines over " + ", ".join(details)


def torsion_on_oriented_triangle() -> tuple[bool, str]:
    tri = MixedGraph.build(["1", "2", "3"], [], [("1", "2"), ("2", "3"), ("3", "1")])
    h = LieAlgebraHandle(traag_presentation(tri, GF2), order=DEPTH)
    s = torsion_witness(h, [1, 1, 1], 2)
    special = LieAlgebraHandle(traag_presentation(lambda_s(), GF2), order=DEPTH)
    free_gens = all(torsion_witness(special, special.field.unit(a), 2) is None for a in range(3))
    return s == 1 and free_gens, f"sum of generators squares to zero at s = {s}; special generators torsion-free: {free_gens}"


def non_rigid_star() -> tuple[bool, str]:
    src = traag_presentation(directed_star(2), GF2)
    # target: x' -> y1' directed, x' - y' plain; vertex order x, y, y1
    tgt_graph = MixedGraph.build(["x", "y", "y1"], [("x", "y")], [("x", "y1")])
    tgt = LieAlgebraHandle(traag_presentation(tgt_graph, GF2), order=DEPTH)
    # images: x -> x', y1 -> y1', y2 -> y1' + y'
    res = check_homomorphism(src, tgt, [[1, 0, 0], [0, 0, 1], [0, 1, 1]], DEPTH)
    return res.verdict == "graded-iso", res.describe()


def kernel_single_edge() -> tuple[bool, str]:
    g = MixedGraph.build(["u", "v"], [], [("u", "v")])
    counts = ker_pi_star_dims(g)
    series = ker_pi_star_from_series(g, GF2, 4)
    ps = tuple(int(c) for c in poincare_series(traag_cohomology(g, GF2), 4))
    ok = counts == [0, 0, 1] and series == [0, 0, 1] and ps == (1, 2, 1, 0, 0)
    return ok, f"kernel dims {counts}, from series {series}, Poincare {ps}"


def kernel_six_vertices() -> tuple[bool, str]:
    g = six_vertex_graph()
    counts = ker_pi_star_dims(g)
    series = ker_pi_star_from_series(g, GF2, 5)
    ok = counts == [0, 0, 5, 2] and series == [0, 0, 5, 2]
    return ok, f"kernel dims {counts}, from series {series}"


def lambda_s_subalgebra() -> tuple[bool, str]:
    h = LieAlgebraHandle(traag_presentation(lambda_s(), GF2), order=DEPTH)
    r = defect_report(h, [[1, 0, 1], [0, 1, 0]], DEPTH)
    ok = (
        not r.cover.relations
        and r.subalgebra.dims[1:3] == (3, 1)
        and r.witness is not None
        and r.witness.defect_degree == 3
    )
    return ok, f"cover free: {not r.cover.relations}, closure {r.subalgebra.dims}, cover {r.cover_dims}"


def square_graph() -> tuple[bool, str]:
    c4 = MixedGraph.build(["1", "2", "3", "4"], [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")])
    ok1, d1 = _defect(LieAlgebraHandle(traag_presentation(c4, GF2), order=DEPTH), [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    c4d = MixedGraph.build(["1", "2", "3", "4"], [("3", "4"), ("1", "4")], [("1", "2"), ("3", "2")])
    ok2, d2 = _defect(LieAlgebraHandle(traag_presentation(c4d, GF2), order=DEPTH), [[1, 0, 1, 0], [0, 1, 0, 0]])
    return ok1 and ok2, f"simple: {d1}; directed: {d2}"


def path_graph() -> tuple[bool, str]:
    edges = [("2", "3"), ("3", "4"), ("4", "1")]
    p4 = MixedGraph.build(["1", "2", "3", "4"], edges)
    ok1, d1 = _defect(LieAlgebraHandle(traag_presentation(p4, GF2), order=DEPTH), [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    p4d = MixedGraph.build(["1", "2", "3", "4"], [("2", "3"), ("3", "4")], [("4", "1")])
    ok2, d2 = _defect(LieAlgebraHandle(traag_presentation(p4d, GF2), order=DEPTH), [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    return ok1 and ok2, f"simple: {d1}; with 4 -> 1: {d2}"


def non_special_graph() -> tuple[bool, str]:
    chain = MixedGraph.build(["u", "v", "w"], [], [("u", "v"), ("v", "w")])
    mixed = MixedGraph.build(["u", "v", "w"], [("v", "w")], [("u", "v")])
    ok1, d1 = _defect(LieAlgebraHandle(traag_presentation(chain, GF2), order=DEPTH), [[1, 0, 1], [0, 1, 0]])
    ok2, d2 = _defect(LieAlgebraHandle(traag_presentation(mixed, GF2), order=DEPTH), [[1, 0, 1], [0, 1, 0]])
    return ok1 and ok2, f"u->v->w: {d1}; u->v, v-w: {d2}"


def field_sensitivity() -> tuple[bool, str]:
    g = f4_graph()
    h2 = LieAlgebraHandle(traag_presentation(g, GF2), order=DEPTH)
    none_over_f2 = brute_force_bk(h2, DEPTH) is None
    h4 = LieAlgebraHandle(traag_presentation(g, GF4), order=DEPTH)
    r = defect_report(h4, [[T, 1, 0], [0, 0, 1]], DEPTH)
    wit = r.witness is not None and r.witness.defect_degree == 3 and not r.cover.relations
    p = traag_cohomology(g, GF4)
    a, b, c = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    x = [T, 1, 0]
    vanishes = ring_product(p, [a, [0, T, 1], x]) == 0 and ring_product(p, [a, [0, T, 1]]) != 0
    prods = [ring_product(p, [x, e]) for e in (a, b, c)]
    independent = len(Echelon(GF4, prods)) == 3
    ok = none_over_f2 and wit and vanishes and independent
    return ok, (
        f"F2 search finds nothing: {none_over_f2}; F4 defect at 3: {wit}; "
        f"a(Tb+c)(Ta+b) = 0: {vanishes}; xa, xb, xc independent: {independent}"
    )


def coxeter_complete_graph() -> tuple[bool, str]:
    ok = True
    for n in (2, 3):
        verts = [str(i) for i in range(1, n + 1)]
        edges = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1 :]]
        g = LabelledGraph.build(verts, edges, {v: 1 for v in verts})
        h = LieAlgebraHandle(era_presentation(g, GF2), order=4)
        env = tuple(h.algebra.dims(4))
        lie = h.graded_dims(4)
        coh = tuple(poincare_series(era_cohomology(g, GF2), 4))
        ok = ok and env == tuple(comb(n, d) for d in range(5))
        ok = ok and lie == (n, 0, 0, 0)
        ok = ok and coh == tuple(comb(n + d - 1, d) for d in range(5))
    return ok, "elementary abelian; exterior envelope; symmetric cohomology"


def coxeter_square_and_path() -> tuple[bool, str]:
    c4 = LabelledGraph.build(["1", "2", "3", "4"], [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")], {str(i): 1 for i in range(1, 5)})
    p4 = LabelledGraph.build(["1", "2", "3", "4"], [("2", "3"), ("3", "4"), ("4", "1")], {str(i): 1 for i in range(1, 5)})
    rows = [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    ok1, d1 = _defect(LieAlgebraHandle(era_presentation(c4, GF2), order=DEPTH), rows)
    ok2, d2 = _defect(LieAlgebraHandle(era_presentation(p4, GF2), order=DEPTH), rows)
    return ok1 and ok2, f"square: {d1}; path: {d2}"


def labelled_paths() -> tuple[bool, str]:
    first = LabelledGraph.build(["x", "y", "z"], [("x", "y"), ("y", "z")], {"x": 1})
    ok1, d1 = _defect(LieAlgebraHandle(era_presentation(first, GF2), order=DEPTH), [[1, 1, 0], [0, 0, 1]])
    second = LabelledGraph.build(["x", "y", "z"], [("x", "y"), ("y", "z")], {"x": 1, "z": 1})
    w = brute_force_bk(LieAlgebraHandle(era_presentation(second, GF2), order=DEPTH), DEPTH)
    ok2 = w is not None and w.defect_degree == 3
    return ok1 and ok2, f"filled-empty-empty: {d1}; filled-empty-filled witness degree {w and w.defect_degree}"


def hnn_directed_edge() -> tuple[bool, str]:
    base = free_presentation(1, GF2, ["w"])
    ext = hnn_presentation(DerivationData(base, [[1]], [[1]]))
    target = traag_presentation(MixedGraph.build(["t", "w"], [], [("w", "t")]), GF2)
    # match generator order (w, t) against the graph's sorted order (t, w)
    same = ext.n == 2 and _same_up_to_swap(ext, target)
    return same, f"relations {ext.format_relations()}"


def _same_up_to_swap(p: QuadraticPresentation, q: QuadraticPresentation) -> bool:
    F = p.field
    swapped = []
    for r in q.relations:
        a, b, c = F.unpack(r, 3)
        swapped.append(F.pack([b, a, c]))
    return p.relations == QuadraticPresentation(2, F, swapped).relations


def witt_values() -> tuple[bool, str]:
    ok = True
    for n in (1, 2, 3):
        h = LieAlgebraHandle(free_presentation(n, GF2), order=6)
        ok = ok and h.graded_dims(6) == tuple(int(necklace2(k, n)) for k in range(1, 7))
    return ok, "free algebras on 1, 2, 3 generators match the necklace counts"


EXAMPLES: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("one-generator", one_generator),
    ("product-with-free-abelian", product_with_free_abelian),
    ("sum-of-squares-relation", sum_of_squares_relation),
    ("restricted-witt", witt_values),
    ("hnn-directed-edge", hnn_directed_edge),
    ("torsion-oriented-triangle", torsion_on_oriented_triangle),
    ("non-rigid-star", non_rigid_star),
    ("kernel-single-edge", kernel_single_edge),
    ("kernel-six-vertices", kernel_six_vertices),
    ("non-special", non_special_graph),
    ("lambda-s", lambda_s_subalgebra),
    ("square", square_graph),
    ("path", path_graph),
    ("field-sensitivity", field_sensitivity),
    ("coxeter-complete", coxeter_complete_graph),
    ("coxeter-square-path", coxeter_square_and_path),
    ("labelled-paths", labelled_paths),
]


@dataclass
class ExampleResult:
    name: str
    passed: bool
    detail: str
    elapsed_ms: float


def run_all() -> list[ExampleResult]:
    out = []
    for name, fn in EXAMPLES:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as e:  # a crash is reported as a failure of that example
            ok, detail = False, f"{type(e).__name__}: {e}"
        out.append(ExampleResult(name, bool(ok), detail, (time.perf_counter() - start) * 1000))
    return out
