"""Cohomology rings of graph Lie algebras as quadratic duals.

The ring is computed as ``T(V*)/(Q^perp)``, where ``Q`` is the quadratic
relation space of the envelope.  For the graph algebras handled here this
dual is the cohomology ring; elsewhere it is simply the quadratic dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Sequence

from graphlie.errors import DegreeOutOfRange
from graphlie.gf2k import GF, Echelon
from graphlie.graphs import LabelledGraph, MixedGraph, cliques, negative_clique_counts, signature_of
from graphlie.lie import era_presentation, traag_presentation
from graphlie.series import DEFAULT_ORDER, PowerSeries
from graphlie.tensor import DEFAULT_BUDGET, QuadraticAlgebra, TensorPresentation, quadratic_dual


@dataclass
class CohomologyPresentation:
    """Dual quadratic data plus human-readable relations.

    ``display`` pairs each printed relation with its tensor in ``V* (x) V*``;
    the span of these tensors is checked against ``dual.relations``.
    """

    dual: TensorPresentation
    display: list[tuple[str, int]]
    _algebras: dict = dc_field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.dual.n

    @property
    def field(self) -> GF:
        return self.dual.field

    @property
    def names(self) -> tuple[str, ...]:
        return self.dual.names

    def display_relations(self) -> list[str]:
        return [text for text, _ in self.display]

    def display_matches(self) -> bool:
        """Do the printed relations span exactly the dual relation space?"""
        shown = Echelon(self.field, [t for _, t in self.display]).basis()
        return tuple(shown) == self.dual.relations

    def algebra(self, N: int = DEFAULT_ORDER, budget: int = DEFAULT_BUDGET) -> QuadraticAlgebra:
        key = (N, budget)
        alg = self._algebras.get(key)
        if alg is None:
            alg = QuadraticAlgebra(self.dual, order=N, budget=budget)
            self._algebras[key] = alg
        return alg


class _Display:
    def __init__(self, field: GF, names: Sequence[str]):
        self.field = field
        self.names = list(names)
        self.n = len(names)
        self.items: list[tuple[str, int]] = []

    def _bit(self, i: int, j: int) -> int:
        return 1 << (self.field.m * (i * self.n + j))

    def _mono(self, i: int, j: int) -> str:
        a, b = self.names[i], self.names[j]
        return f"{a}^2" if i == j else f"{a} {b}"

    def add(self, monos: Sequence[tuple[int, int]]) -> None:
        t = 0
        for i, j in monos:
            t ^= self._bit(i, j)
        self.items.append((" + ".join(self._mono(i, j) for i, j in monos), t))


def _commutation_display(disp: _Display, adjacent) -> None:
    for i, j in combinations(range(disp.n), 2):
        if adjacent(i, j):
            disp.add([(i, j), (j, i)])
        else:
            disp.add([(i, j)])
            disp.add([(j, i)])


def traag_cohomology(g: MixedGraph, field: GF) -> CohomologyPresentation:
    """Dual of the graph algebra of a special mixed graph.

    Displayed relations: both orders of products of non-adjacent generators,
    commutators on edges, ``p^2 + sum_q p q`` over the directed edges
    ``p -> q`` leaving an origin ``p``, and ``u^2`` for every other vertex.
    """
    signature_of(g)
    dual = quadratic_dual(traag_presentation(g, field))
    disp = _Display(field, dual.names)
    adj = g.adjacency()
    V = g.vertices
    _commutation_display(disp, lambda i, j: V[j] in adj[V[i]])
    out_edges: dict[int, list[int]] = {}
    for o, t in g.directed_edges:
        out_edges.setdefault(g.index(o), []).append(g.index(t))
    for i in range(g.n):
        if i in out_edges:
            disp.add([(i, i)] + [(i, q) for q in sorted(out_edges[i])])
        else:
            disp.add([(i, i)])
    return CohomologyPresentation(dual, disp.items)


def era_cohomology(g: LabelledGraph, field: GF) -> CohomologyPresentation:
    """Dual of the labelled-graph algebra: ``u^2`` for unlabelled ``u``, products of non-adjacent pairs, commutators."""
    dual = quadratic_dual(era_presentation(g, field))
    disp = _Display(field, dual.names)
    adj = g.adjacency()
    V = g.vertices
    _commutation_display(disp, lambda i, j: V[j] in adj[V[i]])
    for i, b in enumerate(g.labels):
        if not b:
            disp.add([(i, i)])
    return CohomologyPresentation(dual, disp.items)


def poincare_series(p: CohomologyPresentation, N: int = DEFAULT_ORDER, budget: int = DEFAULT_BUDGET) -> PowerSeries:
    return p.algebra(N, budget).hilbert_series(N)


def ker_pi_star_dims(g: MixedGraph) -> list[int]:
    """Degreewise dimensions of the kernel of restriction to the directed-edge-free graph.

    Entry ``i`` counts the i-cliques that contain a negative vertex.
    """
    return negative_clique_counts(g)


def ker_pi_star_from_series(g: MixedGraph, field: GF, N: int = DEFAULT_ORDER) -> list[int]:
    """The same counts as a difference of two Poincare series."""
    full = poincare_series(traag_cohomology(g, field), N)
    simple = poincare_series(traag_cohomology(g.simple_part(), field), N)
    diff = [int(a - b) for a, b in zip(full, simple)]
    while len(diff) > 1 and diff[-1] == 0:
        diff.pop()
    return diff


def ring_product(p: CohomologyPresentation, factors: Sequence, N: int = DEFAULT_ORDER) -> int:
    """Normal form of a product of degree-1 classes (coefficient lists or packed vectors)."""
    d = len(factors)
    if d > N:
        raise DegreeOutOfRange(f"product of degree {d} beyond order {N}")
    alg = p.algebra(N)
    F = p.field
    vecs = []
    for f in factors:
        if isinstance(f, int):
            vecs.append(f)
        else:
            if len(f) != p.n:
                raise ValueError(f"expected {p.n} coefficients, got {len(f)}")
            vecs.append(F.pack(f))
    x, _ = alg.product([(v, 1) for v in vecs])
    return x


def era_poincare_by_monomials(g: LabelledGraph, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Count the surviving commutative monomials directly.

    A monomial survives when its support is a clique and every unlabelled
    vertex in it has exponent one, so each clique ``s`` contributes
    ``z^|s| / (1 - z)^(labelled vertices of s)``.
    """
    verts, adj = g.vertices, g.adjacency()
    theta = g.theta
    total = [0] * (N + 1)
    for c in cliques(verts, adj):
        k = len(c)
        if k > N:
            continue
        lab = sum(theta[v] for v in c)
        for extra in range(0, N - k + 1):
            if lab == 0:
                if extra == 0:
                    total[k] += 1
                continue
            total[k + extra] += comb(extra + lab - 1, lab - 1)
    return PowerSeries(total)
