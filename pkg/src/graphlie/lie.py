"""Graded restricted Lie algebras realized inside their restricted envelopes.

An element of degree ``d`` is a packed vector of ``A_d`` (normal-word
coordinates).  Degree-1 elements therefore are plain coefficient vectors
over the generators.  The Lie part of ``A`` is the restricted subalgebra
generated by the generators, computed degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from graphlie.errors import ArityMismatch, DerivationLawViolated, DegreeOutOfRange, TerminusInX
from graphlie.gf2k import GF, Echelon, kernel
from graphlie.graphs import LabelledGraph, MixedGraph, signature_of
from graphlie.series import DEFAULT_ORDER, petrogradsky_dims
from graphlie.tensor import (
    DEFAULT_BUDGET,
    QuadraticAlgebra,
    QuadraticPresentation,
    lie2_pairs,
    lie2_size,
    restricted_lie_span,
)

DEFAULT_DEPTH = 4


def _bracket_col(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return n + i * n - i * (i + 1) // 2 + (j - i - 1)


def free_square(field: GF, coeffs: Sequence[int]) -> int:
    """``x^[2]`` of ``x = sum c_i v_i`` in the degree-2 Lie basis.

    Uses ``(x + y)^[2] = x^[2] + [x, y] + y^[2]`` and ``(c x)^[2] = c^2 x^[2]``.
    """
    n = len(coeffs)
    m = field.m
    out = 0
    for i, c in enumerate(coeffs):
        if c:
            out ^= field.square(c) << (m * i)
    for i in range(n):
        for j in range(i + 1, n):
            c = field.mul(coeffs[i], coeffs[j])
            if c:
                out ^= c << (m * _bracket_col(n, i, j))
    return out


def free_bracket(field: GF, x: Sequence[int], y: Sequence[int]) -> int:
    """``[x, y]`` of two degree-1 elements in the degree-2 Lie basis."""
    n = len(x)
    m = field.m
    out = 0
    for i in range(n):
        for j in range(n):
            if i != j and x[i] and y[j]:
                out ^= field.mul(x[i], y[j]) << (m * _bracket_col(n, i, j))
    return out


# -- graph presentations ------------------------------------------------------------


def traag_presentation(g: MixedGraph, field: GF) -> QuadraticPresentation:
    """Brackets for plain edges, ``[o, t] + o^[2]`` for directed edges ``o -> t``."""
    n = g.n
    m = field.m
    rows = []
    for e in g.plain_edges:
        a, b = sorted(g.index(v) for v in e)
        rows.append(1 << (m * _bracket_col(n, a, b)))
    for o, t in g.directed_edges:
        i, j = g.index(o), g.index(t)
        rows.append((1 << (m * _bracket_col(n, i, j))) | (1 << (m * i)))
    return QuadraticPresentation(n, field, rows, g.vertices)


def traag_signature_presentation(g: MixedGraph, field: GF) -> QuadraticPresentation:
    """Edge relations ``[v, w] + theta(v) w^[2] + theta(w) v^[2]`` (special graphs only)."""
    theta = signature_of(g).as_dict()
    n = g.n
    m = field.m
    rows = []
    for e in g.edges():
        v, w = sorted(e)
        i, j = g.index(v), g.index(w)
        r = 1 << (m * _bracket_col(n, i, j))
        if theta[v]:
            r ^= 1 << (m * j)
        if theta[w]:
            r ^= 1 << (m * i)
        rows.append(r)
    return QuadraticPresentation(n, field, rows, g.vertices)


def traag_square_presentation(g: MixedGraph, field: GF) -> QuadraticPresentation:
    """The bracket-free form built only from squares of sums of generators."""
    n = g.n
    rows = []

    def sq(idx: Iterable[int]) -> int:
        c = [0] * n
        for i in idx:
            c[i] = 1
        return free_square(field, c)

    for e in g.plain_edges:
        i, j = (g.index(v) for v in e)
        rows.append(sq([i, j]) ^ sq([i]) ^ sq([j]))
    for o, t in g.directed_edges:
        i, j = g.index(o), g.index(t)
        rows.append(sq([i, j]) ^ sq([j]))
    return QuadraticPresentation(n, field, rows, g.vertices)


def era_presentation(g: LabelledGraph, field: GF) -> QuadraticPresentation:
    """``v^[2]`` for every labelled vertex and ``[v, w]`` for every edge."""
    n = g.n
    m = field.m
    rows = [1 << (m * i) for i, b in enumerate(g.labels) if b]
    index = {v: i for i, v in enumerate(g.vertices)}
    for e in g.edges:
        a, b = sorted(index[v] for v in e)
        rows.append(1 << (m * _bracket_col(n, a, b)))
    return QuadraticPresentation(n, field, rows, g.vertices)


def free_presentation(n: int, field: GF, names: Sequence[str] | None = None) -> QuadraticPresentation:
    return QuadraticPresentation(n, field, (), names)


# -- handles and subalgebras -----------------------------------------------------


class LieAlgebraHandle:
    """A presentation together with its lazily computed envelope."""

    def __init__(self, presentation: QuadraticPresentation, order: int = DEFAULT_ORDER, budget: int = DEFAULT_BUDGET):
        self.presentation = presentation
        self.field = presentation.field
        self.n = presentation.n
        self.order = order
        self.algebra: QuadraticAlgebra = presentation.algebra(order=order, budget=budget)
        self._full: SubalgebraData | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.names

    def element(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.n:
            raise ArityMismatch(f"expected {self.n} coefficients, got {len(coeffs)}")
        return self.field.pack(coeffs)

    def lie_components(self, N: int) -> list[list[int]]:
        """Bases of ``g_d`` for ``d = 0..N`` (``g_0`` is empty)."""
        if self._full is None or self._full.depth < N:
            gens = [self.field.unit(a) for a in range(self.n)]
            self._full = subalgebra_closure(self, gens, N)
        return [list(b) for b in self._full.bases[: N + 1]]

    def graded_dims(self, N: int) -> tuple[int, ...]:
        return tuple(len(b) for b in self.lie_components(N)[1:])

    def hilbert_series(self, N: int):
        return self.algebra.hilbert_series(N)

    def lie_components_from_words(self, N: int) -> list[list[int]]:
        """``g_d`` as the normal form of the free restricted Lie span in the word space."""
        out: list[list[int]] = [[]]
        for d in range(1, N + 1):
            ech = Echelon(self.field)
            for t in restricted_lie_span(self.n, d, self.field):
                ech.add(self.algebra.normal_form(t, d))
            out.append(ech.basis())
        return out

    def format_element(self, x: int, d: int) -> str:
        """Sum of normal words with coefficients, e.g. ``u v + (T) v u``."""
        F = self.field
        if not x:
            return "0"
        words = self.algebra.slice(d).words
        terms = []
        for k, c in F.items(x):
            w = " ".join(self.names[a] for a in words[k]) or "1"
            terms.append((f"({F.format_element(c)})" if c != 1 else "") + w)
        return " + ".join(terms)


def bracket_with_degree_one(alg: QuadraticAlgebra, u: int, x: int, d: int) -> int:
    """``[u, x]`` for ``u`` of degree 1 and ``x`` of degree ``d``."""
    F = alg.field
    out = 0
    for a, c in F.items(u):
        out ^= F.scale(alg.left_mul(a, x, d) ^ alg.right_mul(x, d, a), c)
    return out


@dataclass
class SubalgebraData:
    """Graded bases of the restricted subalgebra generated by degree-1 elements."""

    field: GF
    generators: tuple[int, ...]
    bases: list[list[int]]
    depth: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases[1:])

    def rank(self) -> int:
        return len(self.generators)


def _closure_bases(alg: QuadraticAlgebra, gens: Sequence[int], N: int, full: bool = False) -> list[list[int]]:
    F = alg.field
    bases: list[list[int]] = [[], Echelon(F, gens).basis()]
    for d in range(2, N + 1):
        ech = Echelon(F)
        if full:
            for i in range(1, d // 2 + 1):
                for s in bases[i]:
                    for t in bases[d - i]:
                        ech.add(alg.bracket(s, i, t, d - i))
        else:
            for u in bases[1]:
                for x in bases[d - 1]:
                    ech.add(bracket_with_degree_one(alg, u, x, d - 1))
        if d % 2 == 0:
            for b in bases[d // 2]:
                ech.add(alg.square(b, d // 2))
        bases.append(ech.basis())
    return bases


def subalgebra_closure(h: LieAlgebraHandle, U: Sequence, N: int, full: bool = False) -> SubalgebraData:
    """Restricted subalgebra generated by the degree-1 elements ``U``, to degree ``N``.

    By default each degree is spanned by brackets with degree-1 elements and
    squares of the half-degree basis; ``full=True`` brackets all pairs of
    lower degrees instead (slower, used as a cross-check).
    """
    F = h.field
    gens = [x if isinstance(x, int) else h.element(x) for x in U]
    basis = Echelon(F, gens).basis()
    bases = _closure_bases(h.algebra, basis, N, full)
    return SubalgebraData(F, tuple(basis), bases, N)


def quadratic_cover_presentation(s: SubalgebraData, alg: QuadraticAlgebra) -> QuadraticPresentation:
    """Generators: the basis of ``h_1``; relations: the kernel of the free degree-2 part onto ``h_2``."""
    gens = s.generators
    k = len(gens)
    values = []
    for i, j in lie2_pairs(k):
        if i == j:
            values.append(alg.square(gens[i], 1))
        else:
            values.append(alg.bracket(gens[i], 1, gens[j], 1))
    rel = kernel(s.field, values, alg.dim(2)) if k else []
    return QuadraticPresentation(k, s.field, rel, tuple(f"y{i + 1}" for i in range(k)))


@lru_cache(maxsize=4096)
def pbw_dims(presentation: QuadraticPresentation, N: int, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Graded Lie dimensions read off the envelope's Hilbert series."""
    alg = presentation.algebra(order=N, budget=budget)
    return petrogradsky_dims(alg.hilbert_series(N))


@dataclass(frozen=True)
class DefectWitness:
    """A degree-1 generating subspace whose quadratic cover is strictly larger."""

    field: GF
    n: int
    generators: tuple[tuple[int, ...], ...]
    defect_degree: int
    cover_dim: int
    subalgebra_dim: int
    cover_dims: tuple[int, ...]
    subalgebra_dims: tuple[int, ...]

    def format_generators(self, names: Sequence[str]) -> list[str]:
        return [format_degree_one(self.field, row, names) for row in self.generators]

    def reverify(self, h: LieAlgebraHandle) -> "DefectWitness | None":
        """Recompute the defect from the stored echelon basis."""
        return quadraticity_defect(h, [list(r) for r in self.generators], len(self.cover_dims))

    def as_dict(self, names: Sequence[str]) -> dict:
        F = self.field
        return {
            "generators": [[F.format_element(c) for c in row] for row in self.generators],
            "span": self.format_generators(names),
            "defect_degree": self.defect_degree,
            "cover_dim": self.cover_dim,
            "subalgebra_dim": self.subalgebra_dim,
            "cover_dims": list(self.cover_dims),
            "subalgebra_dims": list(self.subalgebra_dims),
        }


def format_degree_one(field: GF, coeffs: Sequence[int], names: Sequence[str]) -> str:
    terms = []
    for c, v in zip(coeffs, names):
        if c:
            terms.append(v if c == 1 else f"({field.format_element(c)}){v}")
    return " + ".join(terms) or "0"


@dataclass
class DefectReport:
    """Closure and cover dimensions for one generating subspace."""

    subalgebra: SubalgebraData
    cover: QuadraticPresentation
    cover_dims: tuple[int, ...]
    witness: DefectWitness | None


def defect_report(h: LieAlgebraHandle, U: Sequence, N: int = DEFAULT_DEPTH) -> DefectReport:
    if N < 2:
        raise ValueError("defect depth must be at least 2")
    s = subalgebra_closure(h, U, N)
    cover = quadratic_cover_presentation(s, h.algebra)
    cdims = pbw_dims(cover, N, h.algebra.budget)
    sdims = s.dims
    witness = None
    for d in range(2, N + 1):
        if cdims[d - 1] != sdims[d - 1]:
            F = h.field
            witness = DefectWitness(
                F,
                h.n,
                tuple(tuple(F.unpack(g, h.n)) for g in s.generators),
                d,
                cdims[d - 1],
                sdims[d - 1],
                cdims,
                sdims,
            )
            break
    return DefectReport(s, cover, cdims, witness)


def quadraticity_defect(h: LieAlgebraHandle, U: Sequence, N: int = DEFAULT_DEPTH) -> DefectWitness | None:
    """First degree ``<= N`` where the quadratic cover outgrows the subalgebra, or None."""
    return defect_report(h, U, N).witness


# -- homomorphisms ---------------------------------------------------------------


@dataclass
class HomomorphismCheck:
    verdict: str  # "graded-iso", "valid" or "neither"
    depth: int
    source_dims: tuple[int, ...]
    target_dims: tuple[int, ...]
    image_dims: tuple[int, ...]

    def describe(self) -> str:
        return f"graded-iso-up-to-{self.depth}" if self.verdict == "graded-iso" else self.verdict


def _lie2_values(alg: QuadraticAlgebra, images: Sequence[int]) -> list[int]:
    out = []
    for i, j in lie2_pairs(len(images)):
        if i == j:
            out.append(alg.square(images[i], 1))
        else:
            out.append(alg.bracket(images[i], 1, images[j], 1))
    return out


def check_homomorphism(
    src: QuadraticPresentation, tgt: LieAlgebraHandle, images: Sequence, N: int = DEFAULT_DEPTH
) -> HomomorphismCheck:
    """Does ``generator_i -> images[i]`` define a map, and is it bijective in degrees ``<= N``?"""
    if len(images) != src.n:
        raise ArityMismatch(f"{src.n} generators but {len(images)} images")
    F = tgt.field
    imgs = [x if isinstance(x, int) else tgt.element(x) for x in images]
    values = _lie2_values(tgt.algebra, imgs)
    ok = True
    for r in src.relations:
        acc = 0
        for col, c in F.items(r):
            acc ^= F.scale(values[col], c)
        if acc:
            ok = False
            break
    tdims = tgt.graded_dims(N)
    if not ok:
        return HomomorphismCheck("neither", N, (), tdims, ())
    sdims = pbw_dims(src, N, tgt.algebra.budget)
    idims = subalgebra_closure(tgt, imgs, N).dims
    iso = sdims == tdims and idims == tdims
    return HomomorphismCheck("graded-iso" if iso else "valid", N, sdims, tdims, idims)


# -- HNN extensions ----------------------------------------------------------------


@dataclass
class DerivationData:
    """A degree-1 derivation from the subalgebra generated by ``generators`` into the base.

    ``values[i]`` is the image of ``generators[i]``: a degree-2 element given
    in the free degree-2 Lie basis of the base generators.
    """

    base: QuadraticPresentation
    generators: list[list[int]]
    values: list[list[int]]
    degree: int = 1


def _lie2_to_envelope(alg: QuadraticAlgebra, row: int) -> int:
    F = alg.field
    n = alg.n
    units = [F.unit(a) for a in range(n)]
    vals = _lie2_values(alg, units)
    out = 0
    for col, c in F.items(row):
        out ^= F.scale(vals[col], c)
    return out


def check_derivation(d: DerivationData) -> None:
    """Raise DerivationLawViolated unless the generator values extend to degree 2."""
    base = d.base
    F = base.field
    if len(d.values) != len(d.generators):
        raise ArityMismatch("one value per domain generator is required")
    alg = base.algebra(order=3)
    gens = [F.pack(g) for g in d.generators]
    phis = [_lie2_to_envelope(alg, F.pack(v)) for v in d.values]
    k = len(gens)
    a2, a3 = [], []
    for i, j in lie2_pairs(k):
        if i == j:
            a2.append(alg.square(gens[i], 1))
            a3.append(alg.bracket(gens[i], 1, phis[i], 2))
        else:
            a2.append(alg.bracket(gens[i], 1, gens[j], 1))
            a3.append(alg.bracket(phis[i], 2, gens[j], 1) ^ alg.bracket(gens[i], 1, phis[j], 2))
    for rel in kernel(F, a2, alg.dim(2)):
        acc = 0
        for col, c in F.items(rel):
            acc ^= F.scale(a3[col], c)
        if acc:
            raise DerivationLawViolated(
                "the values do not respect a degree-2 relation among the domain generators"
            )


def hnn_presentation(d: DerivationData, letter: str = "t") -> QuadraticPresentation:
    """Base generators plus ``t``; base relations plus ``[t, x] + phi(x)`` per domain generator."""
    if d.degree != 1:
        raise ValueError("only degree-1 derivations give quadratic presentations")
    check_derivation(d)
    base = d.base
    F = base.field
    n = base.n
    m = F.m
    N1 = n + 1
    rows = []
    for r in base.relations:
        rows.append(_reindex_lie2(F, r, n, N1))
    for g, v in zip(d.generators, d.values):
        row = _reindex_lie2(F, F.pack(v), n, N1)
        for j, c in enumerate(g):
            if c:
                row ^= c << (m * _bracket_col(N1, j, n))
        rows.append(row)
    return QuadraticPresentation(N1, F, rows, tuple(base.names) + (letter,))


def _reindex_lie2(F: GF, row: int, n: int, n_new: int) -> int:
    """Move a degree-2 Lie element on ``n`` generators into the basis on ``n_new >= n``."""
    out = 0
    m = F.m
    pairs = lie2_pairs(n)
    for col, c in F.items(row):
        i, j = pairs[col]
        new = i if i == j else _bracket_col(n_new, i, j)
        out ^= c << (m * new)
    return out


def hnn_embedding_dims(d: DerivationData, N: int = DEFAULT_DEPTH) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Graded dims of the base and of its image inside the HNN extension."""
    ext = LieAlgebraHandle(hnn_presentation(d), order=N)
    base_dims = pbw_dims(d.base, N)
    gens = [ext.field.unit(a) for a in range(d.base.n)]
    return base_dims, subalgebra_closure(ext, gens, N).dims


# -- torsion and retractions ---------------------------------------------------------


def torsion_witness(h: LieAlgebraHandle, x, maxpow: int = 2) -> int | None:
    """Smallest ``s <= maxpow`` with ``x^[2^s] = 0``, or None."""
    F = h.field
    y = x if isinstance(x, int) else h.element(x)
    d = 1
    for s in range(1, maxpow + 1):
        if 2 * d > h.order:
            raise DegreeOutOfRange(f"x^[2^{s}] lives in degree {2 * d} beyond order {h.order}")
        y = h.algebra.square(y, d)
        d *= 2
        if not y:
            return s
    return None


def kill_generators(p: QuadraticPresentation, X: Iterable[str]) -> QuadraticPresentation:
    """Quotient by the generators in ``X``: drop them and every term that involves them."""
    Xs = set(X)
    keep = [i for i, v in enumerate(p.names) if v not in Xs]
    pos = {old: new for new, old in enumerate(keep)}
    F = p.field
    m = F.m
    k = len(keep)
    pairs = lie2_pairs(p.n)
    rows = []
    for r in p.relations:
        out = 0
        for col, c in F.items(r):
            i, j = pairs[col]
            if i in pos and j in pos:
                new = pos[i] if i == j else _bracket_col(k, pos[i], pos[j])
                out ^= c << (m * new)
        rows.append(out)
    return QuadraticPresentation(k, F, rows, tuple(p.names[i] for i in keep))


@dataclass
class RetractReport:
    quotient_dims: tuple[int, ...]
    induced_dims: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return self.quotient_dims == self.induced_dims


def retract_quotient(
    g: MixedGraph, X: Iterable[str], field: GF, N: int = DEFAULT_DEPTH, allow_termini: bool = False
) -> RetractReport:
    """Compare the quotient of the graph algebra by ``X`` with the algebra of the induced graph."""
    signature_of(g)
    X = set(X)
    if not allow_termini and X & g.termini():
        raise TerminusInX(f"{sorted(X & g.termini())} are termini of directed edges")
    quotient = kill_generators(traag_presentation(g, field), X)
    induced = traag_presentation(g.induced(set(g.vertices) - X), field)
    return RetractReport(pbw_dims(quotient, N), pbw_dims(induced, N))
