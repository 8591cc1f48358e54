"""Bloch-Kato predicates on graphs and an exhaustive subalgebra search.

The search enumerates every subspace of the degree-1 component and looks
for a generating subspace whose quadratic cover is larger than the
subalgebra it generates (a defect witness).  Finding one refutes the weak
Bloch-Kato property; finding none is evidence up to the search depth.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from graphlie.errors import BudgetExceeded, KindMismatch
from graphlie.gf2k import GF, GF2, GF4
from graphlie.graphs import (
    LabelledGraph,
    MixedGraph,
    common_origin_per_component,
    is_labelled_droms,
    is_mixed_droms,
)
from graphlie.lie import (
    DEFAULT_DEPTH,
    DefectWitness,
    LieAlgebraHandle,
    era_presentation,
    quadraticity_defect,
    traag_presentation,
)

TRAAG = "TRAAG"
ERA = "ERA"
# largest number of generators for which the subspace search is allowed
ENUMERATION_CAP = {1: 5, 2: 4}


def field_kind(field: GF | str) -> str:
    """``"F2"`` for the prime field, ``"F4"`` for any field containing F_4."""
    if isinstance(field, str):
        s = field.strip().upper()
        if s in ("F2", "CONTAINSF4", "F4"):
            return "F2" if s == "F2" else "F4"
        raise ValueError(f"unknown field kind {field!r}")
    if field.m == 1:
        return "F2"
    if field.m % 2 == 0:
        return "F4"
    raise ValueError(f"{field.name} does not contain F4")


def algebra_kind(g) -> str:
    return ERA if isinstance(g, LabelledGraph) else TRAAG


def bk_predicate(g: MixedGraph | LabelledGraph, field: GF | str, kind: str) -> bool:
    """The graph-theoretic Bloch-Kato criterion for the given field and algebra kind."""
    fk = field_kind(field)
    kind = kind.upper()
    if kind == TRAAG:
        if not isinstance(g, MixedGraph):
            raise KindMismatch("TRAAG needs a mixed graph")
        if fk == "F2":
            return is_mixed_droms(g)
        return is_mixed_droms(g) and common_origin_per_component(g)
    if kind == ERA:
        if not isinstance(g, LabelledGraph):
            raise KindMismatch("ERA needs a labelled graph")
        return is_labelled_droms(g)
    raise KindMismatch(f"unknown algebra kind {kind!r}")


def presentation_for(g: MixedGraph | LabelledGraph, field: GF):
    return era_presentation(g, field) if isinstance(g, LabelledGraph) else traag_presentation(g, field)


# -- subspaces -------------------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(field: GF, n: int) -> int:
    return sum(gaussian_binomial(n, k, field.q) for k in range(n + 1))


def _check_cap(field: GF, n: int) -> None:
    cap = ENUMERATION_CAP.get(field.m)
    if cap is None or n > cap:
        raise BudgetExceeded(
            f"subspace search over {field.name} with {n} generators is outside the enumeration bounds"
        )


def enumerate_subspaces(field: GF, n: int, dims: Iterable[int] | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every subspace of ``field^n`` once, as reduced echelon rows.

    Ordered by dimension, then lexicographically by the rows.
    """
    _check_cap(field, n)
    dims = range(n + 1) if dims is None else sorted(set(dims))
    elems = list(field.elements())
    for k in dims:
        if not 0 <= k <= n:
            continue
        found = []
        for pivots in combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
            for vals in product(elems, repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                found.append(tuple(tuple(r) for r in rows))
        found.sort()
        yield from found


# -- the search ------------------------------------------------------------------


@dataclass
class SearchResult:
    witness: DefectWitness | None
    subspaces_checked: int
    depth: int


def brute_force_search(h: LieAlgebraHandle, depth: int = DEFAULT_DEPTH, dims: Iterable[int] | None = None) -> SearchResult:
    """Check subspaces in enumeration order and stop at the first defect."""
    checked = 0
    for rows in enumerate_subspaces(h.field, h.n, dims):
        checked += 1
        if not rows:
            continue
        w = quadraticity_defect(h, [list(r) for r in rows], depth)
        if w is not None:
            return SearchResult(w, checked, depth)
    return SearchResult(None, checked, depth)


def brute_force_bk(h: LieAlgebraHandle, depth: int = DEFAULT_DEPTH) -> DefectWitness | None:
    """The first defect witness in enumeration order, or None."""
    return brute_force_search(h, depth).witness


@dataclass
class ClassificationVerdict:
    graph: str
    predicate_bk: bool
    oracle_result: DefectWitness | None
    field_kind: str
    algebra_kind: str
    depth: int
    subspaces_checked: int
    elapsed_ms: float = 0.0
    names: tuple[str, ...] = ()

    @property
    def agree(self) -> bool:
        return self.predicate_bk == (self.oracle_result is None)

    @property
    def flagged(self) -> bool:
        """A defect first seen above degree 3 (depth sufficiency is not guaranteed)."""
        return self.oracle_result is not None and self.oracle_result.defect_degree > 3

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "graph": self.graph,
            "kind": self.algebra_kind,
            "field": self.field_kind,
            "predicate": self.predicate_bk,
            "witness": None,
            "defect_degree": None,
            "depth": self.depth,
            "subspaces_checked": self.subspaces_checked,
            "agree": self.agree,
        }
        if self.oracle_result is not None:
            out["witness"] = self.oracle_result.format_generators(self.names)
            out["defect_degree"] = self.oracle_result.defect_degree
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def classify_graph(
    g: MixedGraph | LabelledGraph, field: GF, depth: int = DEFAULT_DEPTH, kind: str | None = None
) -> ClassificationVerdict:
    kind = kind or algebra_kind(g)
    start = time.perf_counter()
    pred = bk_predicate(g, field, kind)
    h = LieAlgebraHandle(presentation_for(g, field), order=depth)
    res = brute_force_search(h, depth)
    elapsed = (time.perf_counter() - start) * 1000
    return ClassificationVerdict(
        g.describe(), pred, res.witness, field_kind(field), kind, depth, res.subspaces_checked, elapsed, g.vertices
    )


@dataclass
class TheoremReport:
    field_kind: str
    algebra_kind: str
    depth: int
    verdicts: list[ClassificationVerdict] = dc_field(default_factory=list)
    errors: list[tuple[str, str]] = dc_field(default_factory=list)

    @property
    def agreements(self) -> list[ClassificationVerdict]:
        return [v for v in self.verdicts if v.agree]

    @property
    def disagreements(self) -> list[ClassificationVerdict]:
        return [v for v in self.verdicts if not v.agree]

    @property
    def flagged(self) -> list[ClassificationVerdict]:
        return [v for v in self.verdicts if v.flagged]

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.errors

    def summary(self) -> str:
        return (
            f"{self.algebra_kind}/{self.field_kind} depth {self.depth}: "
            f"{len(self.agreements)} agree, {len(self.disagreements)} disagree, "
            f"{len(self.flagged)} flagged, {len(self.errors)} errors"
        )


def verify_theorem(
    family: Sequence[MixedGraph | LabelledGraph], field: GF, kind: str | None = None, depth: int = DEFAULT_DEPTH
) -> TheoremReport:
    """Compare the predicate with the search on every graph of ``family``.

    A graph that hits a budget or enumeration bound is recorded as an error
    and the rest of the family still runs.
    """
    kinds = {kind.upper()} if kind else {algebra_kind(g) for g in family}
    report = TheoremReport(field_kind(field), "/".join(sorted(kinds)) or TRAAG, depth)
    for g in family:
        try:
            report.verdicts.append(classify_graph(g, field, depth, kind))
        except BudgetExceeded as e:
            report.errors.append((g.describe(), str(e)))
    return report

