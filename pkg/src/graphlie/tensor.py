"""Degree-truncated quadratic algebras ``T(V)/(Q)`` with ``Q`` inside ``V (x) V``.

Each graded piece ``A_d`` is described by its normal words: the words of
length ``d`` that are not leading words of the ideal under lexicographic
order.  Since the ideal is two-sided, every suffix of a normal word is
normal, so ``A_d`` is computed as the quotient of ``V (x) A_{d-1}`` (column
``a * dim A_{d-1} + i`` for the word ``a + w_i``, which is lexicographic
order again) by the images of ``q (x) w`` for normal ``w`` of length
``d - 2``.  The resulting normal forms coincide with a full row reduction
inside the ``n**d`` word space.

Vectors of ``A_d`` are packed ints in normal-word coordinates; word-space
tensors are packed ints over the ``n**d`` words in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from graphlie.errors import BudgetExceeded, DegreeOutOfRange
from graphlie.gf2k import GF, Echelon, annihilator
from graphlie.series import DEFAULT_ORDER, PowerSeries

DEFAULT_BUDGET = 2_000_000


# -- the degree-2 Lie basis ------------------------------------------------------


def lie2_size(n: int) -> int:
    """Number of free degree-2 Lie basis elements: n squares plus C(n, 2) brackets."""
    return n + n * (n - 1) // 2


def lie2_pairs(n: int) -> list[tuple[int, int]]:
    """Column labels of the degree-2 Lie basis: ``(i, i)`` squares then ``(i, j)`` brackets."""
    return [(i, i) for i in range(n)] + list(combinations(range(n), 2))


def lie2_labels(names: Sequence[str]) -> list[str]:
    out = []
    for i, j in lie2_pairs(len(names)):
        out.append(f"{names[i]}^[2]" if i == j else f"[{names[i]},{names[j]}]")
    return out


def relation_to_quadratic_tensor(field: GF, r: int, n: int) -> int:
    """Send a degree-2 Lie element (packed over :func:`lie2_pairs`) into ``V (x) V``.

    Brackets become ``v_i v_j + v_j v_i`` and squares become ``v_i v_i``.
    """
    m = field.m
    out = 0
    for col, c in field.items(r):
        i, j = _pair_at(n, col)
        if i == j:
            out ^= c << (m * (i * n + i))
        else:
            out ^= (c << (m * (i * n + j))) ^ (c << (m * (j * n + i)))
    return out


def _pair_at(n: int, col: int) -> tuple[int, int]:
    if col < n:
        return col, col
    col -= n
    for i in range(n):
        span = n - 1 - i
        if col < span:
            return i, i + 1 + col
        col -= span
    raise IndexError("column outside the degree-2 Lie basis")


class TensorPresentation:
    """Quadratic data ``(n, field, Q)`` with ``Q`` a subspace of ``V (x) V``."""

    def __init__(self, n: int, field: GF, relations: Iterable[int] = (), names: Sequence[str] | None = None):
        self.n = n
        self.field = field
        self.relations = tuple(Echelon(field, relations).basis())
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("one name per generator is required")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorPresentation):
            return NotImplemented
        return (self.n, self.field, self.relations) == (other.n, other.field, other.relations)

    def __hash__(self) -> int:
        return hash((self.n, self.field, self.relations))

    def __repr__(self) -> str:
        return f"TensorPresentation(n={self.n}, {self.field.name}, rank={len(self.relations)})"

    def algebra(self, order: int = DEFAULT_ORDER, budget: int = DEFAULT_BUDGET) -> "QuadraticAlgebra":
        return QuadraticAlgebra(self, order=order, budget=budget)


class QuadraticPresentation:
    """Generators plus a relation subspace of the free degree-2 Lie component.

    Relations are packed rows over :func:`lie2_pairs` and are kept in
    reduced echelon form, so two presentations with the same relation
    span compare equal.
    """

    def __init__(self, n: int, field: GF, relations: Iterable[int] = (), names: Sequence[str] | None = None):
        self.n = n
        self.field = field
        self.relations = tuple(Echelon(field, relations).basis())
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("one name per generator is required")

    @classmethod
    def from_lists(cls, field: GF, n: int, rows: Sequence[Sequence[int]], names=None) -> "QuadraticPresentation":
        width = lie2_size(n)
        for r in rows:
            if len(r) != width:
                raise ValueError(f"relation rows need {width} coefficients, got {len(r)}")
        return cls(n, field, [field.pack(r) for r in rows], names)

    @property
    def ncols(self) -> int:
        return lie2_size(self.n)

    def relation_lists(self) -> list[list[int]]:
        return [self.field.unpack(r, self.ncols) for r in self.relations]

    def tensor_relations(self) -> list[int]:
        return [relation_to_quadratic_tensor(self.field, r, self.n) for r in self.relations]

    def tensor_presentation(self) -> TensorPresentation:
        return TensorPresentation(self.n, self.field, self.tensor_relations(), self.names)

    def algebra(self, order: int = DEFAULT_ORDER, budget: int = DEFAULT_BUDGET) -> "QuadraticAlgebra":
        return QuadraticAlgebra(self.tensor_presentation(), order=order, budget=budget)

    def format_relations(self) -> list[str]:
        """Relations as sums of labelled basis elements, e.g. ``[u,v] + u^[2]``."""
        labels = lie2_labels(self.names)
        F = self.field
        out = []
        for r in self.relations:
            terms = []
            for col, c in F.items(r):
                coeff = "" if c == 1 else f"({F.format_element(c)})"
                terms.append(coeff + labels[col])
            out.append(" + ".join(terms))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticPresentation):
            return NotImplemented
        return (self.n, self.field, self.relations) == (other.n, other.field, other.relations)

    def __hash__(self) -> int:
        return hash((self.n, self.field, self.relations))

    def __repr__(self) -> str:
        return f"QuadraticPresentation(n={self.n}, {self.field.name}, relations={self.format_relations()})"


def quadratic_dual(p: QuadraticPresentation | TensorPresentation) -> TensorPresentation:
    """The dual quadratic data: ``Q`` replaced by its annihilator in ``V* (x) V*``.

    The dual basis of ``V* (x) V*`` is indexed by the same words, so the
    annihilator is taken under the coordinate pairing.
    """
    if isinstance(p, QuadraticPresentation):
        p = p.tensor_presentation()
    perp = annihilator(p.field, list(p.relations), p.n * p.n)
    return TensorPresentation(p.n, p.field, perp, tuple(f"{v}*" for v in p.names))


# -- graded slices -------------------------------------------------------------


@dataclass
class GradedSlice:
    """One graded piece ``A_d``.

    ``left[a][i]`` is the normal form of ``a * w_i`` for the i-th normal
    word of degree ``d - 1``; ``first``/``rest`` split each normal word into
    its first letter and the index of its suffix in degree ``d - 1``.
    """

    degree: int
    n: int
    words: list[tuple[int, ...]]
    first: list[int]
    rest: list[int]
    left: list[list[int]]
    relation_rank: int = 0
    index: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {w: i for i, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def ambient_dim(self) -> int:
        return self.n**self.degree

    def basis_tensors(self, field: GF) -> list[int]:
        """The normal words as unit tensors in the word space."""
        return [field.unit(word_index(w, self.n)) for w in self.words]


def word_index(word: Sequence[int], n: int) -> int:
    idx = 0
    for a in word:
        idx = idx * n + a
    return idx


def index_word(idx: int, n: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        idx, a = divmod(idx, n)
        out.append(a)
    return tuple(reversed(out))


def lincomb(field: GF, table: Sequence[int], x: int) -> int:
    """``sum_i x_i * table[i]`` for a packed coefficient vector ``x``."""
    out = 0
    if field.m == 1:
        while x:
            low = x & -x
            out ^= table[low.bit_length() - 1]
            x ^= low
        return out
    for i, c in field.items(x):
        out ^= field.scale(table[i], c)
    return out


class QuadraticAlgebra:
    """Lazily computed graded pieces of ``T(V)/(Q)`` up to a fixed order."""

    def __init__(self, presentation: TensorPresentation, order: int = DEFAULT_ORDER, budget: int = DEFAULT_BUDGET):
        self.presentation = presentation
        self.n = presentation.n
        self.field = presentation.field
        self.order = order
        self.budget = budget
        n = self.n
        self.slices: list[GradedSlice] = [
            GradedSlice(0, n, [()], [-1], [-1], []),
            GradedSlice(1, n, [(a,) for a in range(n)], list(range(n)), [0] * n, [[1 << (self.field.m * a)] for a in range(n)]),
        ]
        self._right: dict[tuple[int, int], list[int]] = {}

    # -- construction ------------------------------------------------------

    def ensure(self, d: int) -> None:
        if d < 0:
            raise DegreeOutOfRange(f"negative degree {d}")
        while len(self.slices) <= d:
            self.slices.append(self._next_slice())

    def _next_slice(self) -> GradedSlice:
        F = self.field
        m = F.m
        n = self.n
        d = len(self.slices)
        prev = self.slices[d - 1]
        D = prev.dim
        ncand = n * D
        if ncand > self.budget:
            raise BudgetExceeded(
                f"degree {d} needs a candidate space of {ncand} coordinates (budget {self.budget})"
            )
        ech = Echelon(F)
        Q = self.presentation.relations
        if Q and d >= 2:
            # q = sum_{a,b} q_ab a(x)b times a normal word w of degree d-2
            grouped = []
            for q in Q:
                by_a: dict[int, list[tuple[int, int]]] = {}
                for col, c in F.items(q):
                    a, b = divmod(col, n)
                    by_a.setdefault(a, []).append((b, c))
                grouped.append(by_a)
            lmaps = prev.left
            for j in range(self.slices[d - 2].dim):
                for by_a in grouped:
                    vec = 0
                    for a, terms in by_a.items():
                        part = 0
                        for b, c in terms:
                            part ^= F.scale(lmaps[b][j], c)
                        vec ^= part << (m * a * D)
                    if vec:
                        ech.add(vec)
        pivmask = ech.pivmask
        words, first, rest = [], [], []
        col_to_idx = [-1] * ncand
        for c in range(ncand):
            if not (pivmask >> (m * c)) & 1:
                a, i = divmod(c, D)
                col_to_idx[c] = len(words)
                words.append((a,) + prev.words[i])
                first.append(a)
                rest.append(i)
        left = [[0] * D for _ in range(n)]
        for c in range(ncand):
            a, i = divmod(c, D)
            k = col_to_idx[c]
            if k >= 0:
                left[a][i] = 1 << (m * k)
            else:
                row = ech.rows[1 << (m * c)]
                left[a][i] = self._compress(row ^ (1 << (m * c)), col_to_idx)
        return GradedSlice(d, n, words, first, rest, left, relation_rank=len(ech))

    def _compress(self, row: int, col_to_idx: list[int]) -> int:
        F = self.field
        m = F.m
        out = 0
        for col, c in F.items(row):
            out |= c << (m * col_to_idx[col])
        return out

    # -- queries -------------------------------------------------------------

    def slice(self, d: int) -> GradedSlice:
        self._check(d)
        self.ensure(d)
        return self.slices[d]

    def _check(self, d: int) -> None:
        if d < 0 or d > self.order:
            raise DegreeOutOfRange(f"degree {d} outside 0..{self.order}")

    def dim(self, d: int) -> int:
        return self.slice(d).dim

    def dims(self, N: int | None = None) -> list[int]:
        N = self.order if N is None else N
        return [self.dim(d) for d in range(N + 1)]

    def hilbert_series(self, N: int | None = None) -> PowerSeries:
        return PowerSeries(self.dims(N))

    def basis_words(self, d: int) -> list[tuple[int, ...]]:
        return list(self.slice(d).words)

    def word_element(self, word: Sequence[int]) -> int:
        """Normal form of a single word."""
        d = len(word)
        self._check(d)
        x = 1
        for k in range(d - 1, -1, -1):
            x = self.left_mul(word[k], x, d - 1 - k)
        return x

    # -- multiplication ----------------------------------------------------

    def left_mul(self, a: int, x: int, d: int) -> int:
        """``a * x`` for a generator ``a`` and ``x`` in degree ``d``."""
        return lincomb(self.field, self.slice(d + 1).left[a], x)

    def right_table(self, d: int, a: int) -> list[int]:
        """``right_table(d, a)[i]`` = normal form of ``w_i * a`` for ``w_i`` in degree ``d - 1``."""
        key = (d, a)
        tab = self._right.get(key)
        if tab is not None:
            return tab
        if d == 1:
            tab = [1 << (self.field.m * a)]
        else:
            prev = self.slice(d - 1)
            inner = self.right_table(d - 1, a)
            lt = self.slice(d).left
            F = self.field
            tab = [lincomb(F, lt[prev.first[i]], inner[prev.rest[i]]) for i in range(prev.dim)]
        self._right[key] = tab
        return tab

    def right_mul(self, x: int, d: int, a: int) -> int:
        """``x * a`` for ``x`` in degree ``d``."""
        return lincomb(self.field, self.right_table(d + 1, a), x)

    def mul(self, x: int, i: int, y: int, j: int) -> int:
        """Product of ``x`` in degree ``i`` and ``y`` in degree ``j``."""
        self._check(i + j)
        F = self.field
        if i == 0:
            return F.scale(y, F.entry(x, 0))
        if j == 0:
            return F.scale(x, F.entry(y, 0))
        if i == 1:
            out = 0
            for a, c in F.items(x):
                out ^= F.scale(self.left_mul(a, y, j), c)
            return out
        sl = self.slice(i)
        m = F.m
        parts: dict[int, int] = {}
        for k, c in F.items(x):
            a = sl.first[k]
            parts[a] = parts.get(a, 0) ^ (c << (m * sl.rest[k]))
        out = 0
        for a, part in parts.items():
            out ^= self.left_mul(a, self.mul(part, i - 1, y, j), i - 1 + j)
        return out

    def bracket(self, x: int, i: int, y: int, j: int) -> int:
        return self.mul(x, i, y, j) ^ self.mul(y, j, x, i)

    def square(self, x: int, i: int) -> int:
        return self.mul(x, i, x, i)

    def product(self, factors: Sequence[tuple[int, int]]) -> tuple[int, int]:
        """Product of ``(element, degree)`` factors; returns ``(element, degree)``."""
        x, dx = 1, 0
        for y, dy in factors:
            x = self.mul(x, dx, y, dy)
            dx += dy
        return x, dx

    # -- word-space projection ---------------------------------------------

    def normal_form(self, t: int, d: int) -> int:
        """Project a word-space tensor of degree ``d`` to ``A_d``."""
        self._check(d)
        if d <= 1:
            return t
        F = self.field
        m = F.m
        size = self.n ** (d - 1)
        mask = (1 << (m * size)) - 1
        out = 0
        for a in range(self.n):
            part = (t >> (m * a * size)) & mask
            if part:
                out ^= self.left_mul(a, self.normal_form(part, d - 1), d - 1)
        return out

    def lift(self, x: int, d: int) -> int:
        """Representative tensor of ``x``: the combination of its normal words."""
        sl = self.slice(d)
        F = self.field
        out = 0
        for k, c in F.items(x):
            out ^= c << (F.m * word_index(sl.words[k], self.n))
        return out


def quad_algebra_slices(
    p: QuadraticPresentation | TensorPresentation, N: int, budget: int = DEFAULT_BUDGET
) -> list[GradedSlice]:
    """Graded pieces ``A_0 .. A_N`` of the envelope of ``p``."""
    if isinstance(p, QuadraticPresentation):
        p = p.tensor_presentation()
    alg = QuadraticAlgebra(p, order=N, budget=budget)
    return [alg.slice(d) for d in range(N + 1)]


def normal_form(alg: QuadraticAlgebra, t: int, d: int) -> int:
    return alg.normal_form(t, d)


# -- word-space tensors ----------------------------------------------------------


def tensor_mul(field: GF, n: int, x: int, y: int, dy: int) -> int:
    """Concatenation product of word-space tensors; ``dy`` is the degree of ``y``."""
    shift = field.m * n**dy
    out = 0
    for i, c in field.items(x):
        out ^= field.scale(y, c) << (shift * i)
    return out


def tensor_bracket(field: GF, n: int, x: int, dx: int, y: int, dy: int) -> int:
    return tensor_mul(field, n, x, y, dy) ^ tensor_mul(field, n, y, x, dx)


def restricted_lie_span(n: int, d: int, field: GF) -> list[int]:
    """Basis of the degree-``d`` free restricted Lie component inside the word space.

    Built from brackets of all lower pieces plus squares of a basis of the
    half-degree piece.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    spans: dict[int, list[int]] = {1: [field.unit(a) for a in range(n)]}
    for e in range(2, d + 1):
        ech = Echelon(field)
        for i in range(1, e // 2 + 1):
            j = e - i
            for s in spans[i]:
                for t in spans[j]:
                    ech.add(tensor_bracket(field, n, s, i, t, j))
        if e % 2 == 0:
            for b in spans[e // 2]:
                ech.add(tensor_mul(field, n, b, b, e // 2))
        spans[e] = ech.basis()
    return spans[d]
