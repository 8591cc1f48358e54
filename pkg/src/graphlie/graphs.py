"""Mixed graphs, 2-labelled graphs and their combinatorics.

A mixed graph is a simple graph in which some edges carry a direction
(origin -> terminus).  Vertex identifiers are strings and every graph keeps
its vertices sorted, so all downstream bases and witnesses are ordered
deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Mapping

from graphlie.errors import DuplicateVertex, NotDroms, NotSpecial
from graphlie.series import format_series


def _edge(a: str, b: str) -> frozenset:
    if a == b:
        raise ValueError(f"loop at vertex {a!r}")
    return frozenset((a, b))


@dataclass(frozen=True)
class MixedGraph:
    vertices: tuple[str, ...]
    plain_edges: frozenset = frozenset()
    directed_edges: frozenset = frozenset()

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        plain: Iterable[tuple[str, str]] = (),
        directed: Iterable[tuple[str, str]] = (),
    ) -> "MixedGraph":
        verts = tuple(sorted(str(v) for v in vertices))
        if len(set(verts)) != len(verts):
            raise DuplicateVertex("vertex listed twice")
        vs = set(verts)
        pe = set()
        for a, b in plain:
            a, b = str(a), str(b)
            if a not in vs or b not in vs:
                raise ValueError(f"edge {a}-{b} uses an unknown vertex")
            pe.add(_edge(a, b))
        de = set()
        for o, t in directed:
            o, t = str(o), str(t)
            if o not in vs or t not in vs:
                raise ValueError(f"edge {o}->{t} uses an unknown vertex")
            _edge(o, t)
            de.add((o, t))
        supports = [frozenset(e) for e in de]
        if len(set(supports)) != len(supports):
            raise ValueError("an edge is directed both ways")
        if pe & set(supports):
            raise ValueError("an edge is both plain and directed")
        return cls(verts, frozenset(pe), frozenset(de))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def edges(self) -> frozenset:
        """Edge set of the underlying simple graph."""
        return self.plain_edges | frozenset(frozenset(e) for e in self.directed_edges)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges():
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def termini(self) -> set[str]:
        return {t for _, t in self.directed_edges}

    def origins(self) -> set[str]:
        return {o for o, _ in self.directed_edges}

    def underlying(self) -> "SimpleGraph":
        return SimpleGraph(self.vertices, self.edges())

    def simple_part(self) -> "MixedGraph":
        """The graph with every directed edge removed."""
        return MixedGraph(self.vertices, self.plain_edges, frozenset())

    def induced(self, subset: Iterable[str]) -> "MixedGraph":
        s = set(subset)
        return MixedGraph(
            tuple(v for v in self.vertices if v in s),
            frozenset(e for e in self.plain_edges if e <= s),
            frozenset(e for e in self.directed_edges if e[0] in s and e[1] in s),
        )

    def relabel(self, mapping: Mapping[str, str]) -> "MixedGraph":
        return MixedGraph.build(
            [mapping[v] for v in self.vertices],
            [tuple(mapping[x] for x in e) for e in self.plain_edges],
            [(mapping[o], mapping[t]) for o, t in self.directed_edges],
        )

    def describe(self) -> str:
        parts = sorted("-".join(sorted(e)) for e in self.plain_edges)
        parts += sorted(f"{o}->{t}" for o, t in self.directed_edges)
        return "{" + ",".join(self.vertices) + "}" + ("[" + " ".join(parts) + "]" if parts else "")


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: frozenset = frozenset()

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "SimpleGraph":
        g = MixedGraph.build(vertices, edges)
        return cls(g.vertices, g.plain_edges)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def induced(self, subset: Iterable[str]) -> "SimpleGraph":
        s = set(subset)
        return SimpleGraph(tuple(v for v in self.vertices if v in s), frozenset(e for e in self.edges if e <= s))


@dataclass(frozen=True)
class LabelledGraph:
    vertices: tuple[str, ...]
    edges: frozenset
    labels: tuple[int, ...]

    @classmethod
    def build(
        cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = (), theta: Mapping[str, int] | None = None
    ) -> "LabelledGraph":
        g = SimpleGraph.build(vertices, edges)
        theta = dict(theta or {})
        unknown = set(theta) - set(g.vertices)
        if unknown:
            raise ValueError(f"labels for unknown vertices {sorted(unknown)}")
        labels = []
        for v in g.vertices:
            b = int(theta.get(v, 0))
            if b not in (0, 1):
                raise ValueError(f"label of {v!r} must be 0 or 1")
            labels.append(b)
        return cls(g.vertices, g.edges, tuple(labels))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def theta(self) -> dict[str, int]:
        return dict(zip(self.vertices, self.labels))

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.vertices, self.edges)

    def adjacency(self) -> dict[str, set[str]]:
        return self.underlying().adjacency()

    def induced(self, subset: Iterable[str]) -> "LabelledGraph":
        s = set(subset)
        th = self.theta
        verts = tuple(v for v in self.vertices if v in s)
        return LabelledGraph(verts, frozenset(e for e in self.edges if e <= s), tuple(th[v] for v in verts))

    def describe(self) -> str:
        verts = ",".join(v + ("*" if b else "") for v, b in zip(self.vertices, self.labels))
        parts = sorted("-".join(sorted(e)) for e in self.edges)
        return "{" + verts + "}" + ("[" + " ".join(parts) + "]" if parts else "")


@dataclass(frozen=True)
class Signature:
    theta: tuple[tuple[str, int], ...]

    def __getitem__(self, v: str) -> int:
        return dict(self.theta)[v]

    def as_dict(self) -> dict[str, int]:
        return dict(self.theta)

    @property
    def negative(self) -> set[str]:
        return {v for v, b in self.theta if b}


@dataclass(frozen=True)
class CliquePolynomial:
    coeffs: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:

        return format_series(self.coeffs)


# -- predicates on mixed graphs ---------------------------------------------


def is_special(g: MixedGraph) -> bool:
    """Every edge touching a terminus is directed into that same terminus."""
    term = g.termini()
    if not term:
        return True
    if any(e & term for e in g.plain_edges):
        return False
    return all(o not in term for o, _ in g.directed_edges)


def _special_violation(g: MixedGraph) -> tuple[str, ...] | None:
    term = g.termini()
    for e in sorted(g.plain_edges, key=sorted):
        if e & term:
            t = sorted(e & term)[0]
            o = next(o for o, tt in sorted(g.directed_edges) if tt == t)
            return tuple(sorted({o, t} | set(e)))
    for o, t in sorted(g.directed_edges):
        if o in term:
            o2 = next(x for x, tt in sorted(g.directed_edges) if tt == o)
            return tuple(sorted({o2, o, t}))
    return None


def signature_of(g: MixedGraph, negative: Iterable[str] = ()) -> Signature:
    """Signature with theta = 1 exactly on the termini.

    Isolated vertices are positive unless listed in ``negative``.
    """
    if not is_special(g):
        raise NotSpecial(f"graph {g.describe()} is not special")
    adj = g.adjacency()
    neg = set(g.termini())
    for v in negative:
        if v not in adj:
            raise ValueError(f"unknown vertex {v!r}")
        if adj[v]:
            if v not in neg:
                raise ValueError(f"vertex {v!r} is not isolated and not a terminus")
        neg.add(v)
    return Signature(tuple((v, int(v in neg)) for v in g.vertices))


def cone(g: MixedGraph, sig: Signature, tip: str) -> MixedGraph:
    """Add a central ``tip``: plain edges to positive, arrows to negative vertices."""
    if tip in g.vertices:
        raise DuplicateVertex(f"tip {tip!r} already a vertex")
    th = sig.as_dict()
    plain = [tuple(e) for e in g.plain_edges] + [(tip, v) for v in g.vertices if not th[v]]
    directed = list(g.directed_edges) + [(tip, v) for v in g.vertices if th[v]]
    return MixedGraph.build(list(g.vertices) + [tip], plain, directed)


def disjoint_union(g: MixedGraph, h: MixedGraph) -> MixedGraph:
    if set(g.vertices) & set(h.vertices):
        raise DuplicateVertex("graphs share vertices")
    return MixedGraph.build(
        g.vertices + h.vertices,
        [tuple(e) for e in g.plain_edges | h.plain_edges],
        g.directed_edges | h.directed_edges,
    )


def connected_components(vertices: Iterable[str], adj: Mapping[str, set[str]]) -> list[tuple[str, ...]]:
    seen: set[str] = set()
    comps = []
    for v in sorted(vertices):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def central_vertices(vertices: Iterable[str], adj: Mapping[str, set[str]]) -> list[str]:
    vs = set(vertices)
    return sorted(v for v in vs if vs - {v} <= adj[v])


def _is_connected(vertices: tuple[str, ...], adj: Mapping[str, set[str]]) -> bool:
    if not vertices:
        return True
    sub = {v: adj[v] & set(vertices) for v in vertices}
    return len(connected_components(vertices, sub)) == 1


def simple_droms_obstruction(vertices: Iterable[str], edges: frozenset) -> tuple[str, tuple[str, ...]] | None:
    """First induced C4 or P4 (by sorted vertex quadruple), or None."""
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    for quad in combinations(sorted(adj), 4):
        degs = sorted(len(adj[v] & set(quad)) for v in quad)
        if degs == [2, 2, 2, 2]:
            return "C4", quad
        if degs == [1, 1, 2, 2] and _is_connected(quad, adj):
            return "P4", quad
    return None


def _lambda_s(g: MixedGraph) -> tuple[str, ...] | None:
    adj = g.adjacency()
    into: dict[str, list[str]] = {}
    for o, t in g.directed_edges:
        into.setdefault(t, []).append(o)
    for t in sorted(into):
        for a, b in combinations(sorted(into[t]), 2):
            if b not in adj[a]:
                return tuple(sorted((a, b, t)))
    return None


def mixed_droms_obstruction(g: MixedGraph) -> tuple[str, tuple[str, ...]] | None:
    """Reason why ``g`` is not mixed Droms, as (kind, vertices); None if it is."""
    bad = _special_violation(g)
    if bad is not None:
        return "not-special", bad
    lam = _lambda_s(g)
    if lam is not None:
        return "Lambda_s", lam
    return simple_droms_obstruction(g.vertices, g.edges())


def is_mixed_droms(g: MixedGraph) -> bool:
    return mixed_droms_obstruction(g) is None


def is_mixed_droms_by_decomposition(g: MixedGraph) -> bool:
    """Recognise the closure of signed singletons under cones and disjoint unions."""
    if not is_special(g):
        return False
    return _decomposes(g)


def _decomposes(g: MixedGraph) -> bool:
    if g.n <= 1:
        return True
    adj = g.adjacency()
    comps = connected_components(g.vertices, adj)
    if len(comps) > 1:
        return all(_decomposes(g.induced(c)) for c in comps)
    term = g.termini()
    for z in central_vertices(g.vertices, adj):
        if z in term:
            continue
        rest = g.induced(v for v in g.vertices if v != z)
        rest_term = rest.termini()
        rest_adj = rest.adjacency()
        ok = True
        for w in rest.vertices:
            arrow = (z, w) in g.directed_edges
            if arrow and rest_adj[w] and w not in rest_term:
                ok = False
            if not arrow and w in rest_term:
                ok = False
        if ok and _decomposes(rest):
            return True
    return False


def common_origin_per_component(g: MixedGraph) -> bool:
    adj = g.adjacency()
    for comp in connected_components(g.vertices, adj):
        cs = set(comp)
        origins = {o for o, t in g.directed_edges if o in cs}
        if len(origins) > 1:
            return False
    return True


# -- labelled graphs ----------------------------------------------------------


def labelled_droms_obstruction(g: LabelledGraph) -> tuple[str, tuple[str, ...]] | None:
    bad = simple_droms_obstruction(g.vertices, g.edges)
    if bad is not None:
        return bad
    adj = g.adjacency()
    th = g.theta
    for mid in g.vertices:
        if th[mid]:
            continue
        for a, b in combinations(sorted(adj[mid]), 2):
            if b in adj[a]:
                continue
            if th[a] or th[b]:
                kind = "filled-empty-filled" if th[a] and th[b] else "filled-empty-empty"
                return kind, (a, mid, b)
    return None


def is_labelled_droms(g: LabelledGraph) -> bool:
    return labelled_droms_obstruction(g) is None


def central_condition(g: LabelledGraph) -> bool:
    """Every connected induced subgraph is all-0 or has a central vertex labelled 1."""
    if simple_droms_obstruction(g.vertices, g.edges) is not None:
        raise NotDroms(f"underlying graph of {g.describe()} is not Droms")
    adj = g.adjacency()
    th = g.theta
    for k in range(1, g.n + 1):
        for sub in combinations(g.vertices, k):
            if not any(th[v] for v in sub) or not _is_connected(sub, adj):
                continue
            sadj = {v: adj[v] & set(sub) for v in sub}
            if not any(th[v] for v in central_vertices(sub, sadj)):
                return False
    return True


# -- induced pattern search -----------------------------------------------------


def contains_induced(g: MixedGraph, pattern: MixedGraph) -> tuple[str, ...] | None:
    """Vertices of the first induced copy of ``pattern`` (brute force), or None."""
    k = pattern.n
    pv = pattern.vertices
    p_edges = {frozenset(e) for e in pattern.plain_edges}
    p_dir = set(pattern.directed_edges)
    for sub in combinations(g.vertices, k):
        h = g.induced(sub)
        if len(h.plain_edges) != len(p_edges) or len(h.directed_edges) != len(p_dir):
            continue
        for perm in permutations(sub):
            m = dict(zip(pv, perm))
            if {frozenset(m[x] for x in e) for e in p_edges} == set(h.plain_edges) and {
                (m[o], m[t]) for o, t in p_dir
            } == set(h.directed_edges):
                return sub
    return None


# -- cliques ------------------------------------------------------------------------


def cliques(vertices: Iterable[str], adj: Mapping[str, set[str]]) -> Iterator[tuple[str, ...]]:
    """All cliques (including the empty one), each as a sorted tuple."""
    order = sorted(vertices)

    def extend(clique: tuple[str, ...], cand: list[str]) -> Iterator[tuple[str, ...]]:
        yield clique
        for i, v in enumerate(cand):
            yield from extend(clique + (v,), [w for w in cand[i + 1 :] if w in adj[v]])

    yield from extend((), order)


def _graph_vertices_adj(g) -> tuple[tuple[str, ...], dict[str, set[str]]]:
    if isinstance(g, (MixedGraph, SimpleGraph, LabelledGraph)):
        return g.vertices, g.adjacency()
    raise TypeError(f"not a graph: {g!r}")


def clique_polynomial(g) -> CliquePolynomial:
    """Counts of i-cliques; a mixed graph contributes its underlying simple graph."""
    verts, adj = _graph_vertices_adj(g)
    counts = [0] * (len(verts) + 1)
    for c in cliques(verts, adj):
        counts[len(c)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return CliquePolynomial(tuple(counts))


def negative_clique_counts(g: MixedGraph) -> list[int]:
    """``n[i]`` = number of i-cliques (i >= 2) meeting the negative vertices."""
    sig = signature_of(g)
    neg = sig.negative
    verts, adj = _graph_vertices_adj(g)
    counts = [0] * (len(verts) + 1)
    for c in cliques(verts, adj):
        hit = neg.intersection(c)
        if len(hit) > 1:
            raise AssertionError(f"clique {c} meets several negative vertices")
        if len(c) >= 2 and hit:
            counts[len(c)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def clique_number(g) -> int:
    return clique_polynomial(g).degree()


# -- exhaustive families ----------------------------------------------------------


def _names(n: int) -> list[str]:
    return [str(i + 1) for i in range(n)]


@lru_cache(maxsize=None)
def _atlas(max_n: int) -> tuple:
    import networkx as nx

    out = []
    for G in nx.graph_atlas_g():
        k = G.number_of_nodes()
        if 1 <= k <= max_n:
            out.append((k, tuple(sorted(tuple(sorted(e)) for e in G.edges()))))
    return tuple(out)


def _automorphisms(k: int, edges: tuple) -> list[tuple[int, ...]]:
    es = {frozenset(e) for e in edges}
    out = []
    for p in permutations(range(k)):
        if all(frozenset((p[a], p[b])) in es for a, b in edges):
            out.append(p)
    return out


def simple_graphs(max_n: int) -> list[SimpleGraph]:
    """All simple graphs on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    out = []
    for k, edges in _atlas(max_n):
        names = _names(k)
        out.append(SimpleGraph.build(names, [(names[a], names[b]) for a, b in edges]))
    return out


def special_mixed_graphs(max_n: int) -> list[MixedGraph]:
    """All special mixed graphs on 1..max_n vertices up to isomorphism.

    A special graph is a simple graph plus an independent set of
    non-isolated termini; every edge at a terminus points into it.
    """
    out = []
    for k, edges in _atlas(max_n):
        names = _names(k)
        adj: dict[int, set[int]] = {i: set() for i in range(k)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        auts = _automorphisms(k, edges)
        seen = set()
        nonisolated = [v for v in range(k) if adj[v]]
        for r in range(len(nonisolated) + 1):
            for S in combinations(nonisolated, r):
                if any(b in adj[a] for a, b in combinations(S, 2)):
                    continue
                key = min(tuple(sorted(p[s] for s in S)) for p in auts)
                if key in seen:
                    continue
                seen.add(key)
                Sset = set(S)
                plain, directed = [], []
                for a, b in edges:
                    if a in Sset:
                        directed.append((names[b], names[a]))
                    elif b in Sset:
                        directed.append((names[a], names[b]))
                    else:
                        plain.append((names[a], names[b]))
                out.append(MixedGraph.build(names, plain, directed))
    return out


def labelled_graphs(max_n: int) -> list[LabelledGraph]:
    """All 2-labelled simple graphs on 1..max_n vertices up to isomorphism."""
    out = []
    for k, edges in _atlas(max_n):
        names = _names(k)
        auts = _automorphisms(k, edges)
        seen = set()
        for labels in product((0, 1), repeat=k):
            key = min(tuple(labels[p.index(i)] for i in range(k)) for p in auts)
            if key in seen:
                continue
            seen.add(key)
            out.append(
                LabelledGraph.build(
                    names, [(names[a], names[b]) for a, b in edges], dict(zip(names, key))
                )
            )
    return out


def all_mixed_graphs(n: int) -> Iterator[MixedGraph]:
    """Every mixed graph on the vertex set 1..n (labelled, not up to isomorphism)."""
    names = _names(n)
    pairs = list(combinations(names, 2))
    for states in product(range(4), repeat=len(pairs)):
        plain, directed = [], []
        for (a, b), s in zip(pairs, states):
            if s == 1:
                plain.append((a, b))
            elif s == 2:
                directed.append((a, b))
            elif s == 3:
                directed.append((b, a))
        yield MixedGraph.build(names, plain, directed)


def mixed_graphs_up_to_iso(n: int) -> list[MixedGraph]:
    """All mixed graphs on exactly n vertices up to isomorphism (small n)."""
    out = []
    for k, edges in _atlas(n):
        if k != n:
            continue
        names = _names(k)
        auts = _automorphisms(k, edges)
        seen = set()
        for states in product(range(3), repeat=len(edges)):
            key = min(_orient_key(p, edges, states) for p in auts)
            if key in seen:
                continue
            seen.add(key)
            plain, directed = [], []
            for (a, b), s in zip(edges, states):
                if s == 0:
                    plain.append((names[a], names[b]))
                elif s == 1:
                    directed.append((names[a], names[b]))
                else:
                    directed.append((names[b], names[a]))
            out.append(MixedGraph.build(names, plain, directed))
    return out


def _orient_key(p: tuple[int, ...], edges: tuple, states: tuple[int, ...]) -> tuple:
    items = []
    for (a, b), s in zip(edges, states):
        x, y = p[a], p[b]
        if s == 0:
            items.append((min(x, y), max(x, y), 0))
        else:
            o, t = (x, y) if s == 1 else (y, x)
            items.append((o, t, 1))
    return tuple(sorted(items))
