"""Finite fields F_{2^m} (m <= 8) and exact linear algebra over them.

Vectors are packed into Python integers: the entry in column ``j`` occupies
bits ``[m*j, m*j + m)`` and holds the polynomial-basis coordinates of a field
element (bit ``i`` is the coefficient of ``T^i``).  Addition of vectors is
plain XOR; scalar multiplication is done slot-wise with shifts, so row
reduction never leaves integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

# Conway polynomials over F_2; bit i is the coefficient of T^i.
CONWAY_MODULI = {
    1: 0b11,
    2: 0b111,  # T^2 + T + 1
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
}


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit patterns (polynomials over F_2)."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def polymod(a: int, mod: int) -> int:
    """Remainder of the F_2-polynomial ``a`` modulo ``mod``."""
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for p in range(1 << d, 1 << (d + 1)):
            if polymod(poly, p) == 0:
                return False
    return True


class GF:
    """The field F_2[T]/(modulus) with 2^m elements.

    Elements are ints in ``range(2**m)``.  Instances compare equal when
    they share the degree and the modulus.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= 8:
            raise ValueError(f"extension degree must be in 1..8, got {m}")
        if modulus is None:
            modulus = CONWAY_MODULI[m]
        if modulus.bit_length() - 1 != m or not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#b} is not irreducible of degree {m}")
        self.m = m
        self.modulus = modulus
        self.q = 1 << m
        self._red = modulus ^ (1 << m)
        q = self.q
        self._mul = [[polymod(clmul(a, b), modulus) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            inv[a] = row.index(1)
        self._inv = inv
        self._low_masks: dict[int, int] = {}

    # -- scalars -----------------------------------------------------------

    @property
    def name(self) -> str:
        return f"F{self.q}"

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[a]

    def square(self, a: int) -> int:
        return self._mul[a][a]

    def power(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._mul[out][a]
            a = self._mul[a][a]
            e >>= 1
        return out

    def format_element(self, a: int) -> str:
        if a == 0:
            return "0"
        terms = []
        for i in range(self.m - 1, -1, -1):
            if a >> i & 1:
                terms.append("1" if i == 0 else ("T" if i == 1 else f"T^{i}"))
        return "+".join(terms)

    def parse_element(self, text: str) -> int:
        """Parse ``0``, ``1``, ``T``, ``T+1``, ``T^2+T`` ... into an element."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty field element")
        value = 0
        for term in s.split("+"):
            if term == "0":
                continue
            if term == "1":
                e = 0
            elif term == "T":
                e = 1
            elif term.startswith("T^") and term[2:].isdigit():
                e = int(term[2:])
            else:
                raise ValueError(f"cannot parse field element {text!r}")
            if e and self.m == 1:
                raise ValueError(f"{text!r} is not an element of F2")
            value ^= polymod(1 << e, self.modulus) if e >= self.m else 1 << e
        return value

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.m}, {self.modulus:#b})"

    def __reduce__(self):
        return (GF, (self.m, self.modulus))

    # -- packed vectors ----------------------------------------------------

    def low_mask(self, nslots: int) -> int:
        """Bit mask with bit ``m*j`` set for every slot ``j < nslots`` (rounded up)."""
        size = 1
        while size < nslots:
            size <<= 1
        mask = self._low_masks.get(size)
        if mask is None:
            mask = ((1 << (self.m * size)) - 1) // (self.q - 1)
            self._low_masks[size] = mask
        return mask

    def pack(self, coeffs: Iterable[int]) -> int:
        m = self.m
        v = 0
        for j, c in enumerate(coeffs):
            if c:
                v |= c << (m * j)
        return v

    def unpack(self, v: int, n: int) -> list[int]:
        m, mask = self.m, self.q - 1
        return [(v >> (m * j)) & mask for j in range(n)]

    def unit(self, j: int) -> int:
        return 1 << (self.m * j)

    def entry(self, v: int, j: int) -> int:
        return (v >> (self.m * j)) & (self.q - 1)

    def support_mask(self, v: int) -> int:
        """Bit ``m*j`` set exactly when column ``j`` of ``v`` is nonzero."""
        if self.m == 1:
            return v
        low = self.low_mask((v.bit_length() + self.m - 1) // self.m)
        s = 0
        for i in range(self.m):
            s |= (v >> i) & low
        return s

    def lead(self, v: int) -> int:
        """Index of the leftmost (lowest) nonzero column, or -1."""
        if not v:
            return -1
        return ((v & -v).bit_length() - 1) // self.m

    def columns(self, v: int) -> Iterator[int]:
        """Indices of nonzero columns in increasing order."""
        s = self.support_mask(v)
        m = self.m
        while s:
            low = s & -s
            yield (low.bit_length() - 1) // m
            s ^= low

    def items(self, v: int) -> Iterator[tuple[int, int]]:
        """``(column, coefficient)`` pairs of the nonzero entries."""
        if self.m == 1:
            while v:
                low = v & -v
                yield low.bit_length() - 1, 1
                v ^= low
            return
        mask = self.q - 1
        m = self.m
        for j in self.columns(v):
            yield j, (v >> (m * j)) & mask

    def times_t(self, v: int) -> int:
        """Multiply every entry of ``v`` by the generator T."""
        m = self.m
        low = self.low_mask((v.bit_length() + m - 1) // m)
        top = (v >> (m - 1)) & low
        return ((v & ~(low << (m - 1))) << 1) ^ (top * self._red)

    def scale(self, v: int, c: int) -> int:
        if c == 0 or v == 0:
            return 0
        if c == 1:
            return v
        out = 0
        cur = v
        while True:
            if c & 1:
                out ^= cur
            c >>= 1
            if not c:
                return out
            cur = self.times_t(cur)

    def dot(self, u: int, v: int) -> int:
        """Bilinear pairing sum_j u_j v_j."""
        acc = 0
        mul = self._mul
        for j, a in self.items(u):
            b = self.entry(v, j)
            if b:
                acc ^= mul[a][b]
        return acc


GF2 = GF(1)
GF4 = GF(2)


def field_from_name(name: str) -> GF:
    """``"F2"``/``"f4"``/``"F8"`` ... -> field instance."""
    s = name.strip().upper()
    if not s.startswith("F") or not s[1:].isdigit():
        raise ValueError(f"unknown field {name!r}")
    q = int(s[1:])
    m = q.bit_length() - 1
    if q < 2 or 1 << m != q or m > 8:
        raise ValueError(f"unsupported field {name!r}: need F_(2^m) with m <= 8")
    if m == 1:
        return GF2
    if m == 2:
        return GF4
    return GF(m)


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a subspace.

    Pivots are the leftmost nonzero columns; pivot entries are 1 and every
    pivot column is zero in all other rows, so the basis is canonical.
    """

    __slots__ = ("field", "rows", "pivmask", "_scaled")

    def __init__(self, field: GF, vectors: Iterable[int] = ()):
        self.field = field
        self.rows: dict[int, int] = {}  # pivot slot bit -> row
        self.pivmask = 0
        self._scaled: dict[tuple[int, int], int] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon(self.field)
        e.rows = dict(self.rows)
        e.pivmask = self.pivmask
        return e

    def _row_times(self, bit: int, c: int) -> int:
        if c == 1:
            return self.rows[bit]
        key = (bit, c)
        r = self._scaled.get(key)
        if r is None:
            r = self.field.scale(self.rows[bit], c)
            self._scaled[key] = r
        return r

    def reduce(self, v: int) -> int:
        """Normal form of ``v``: zero in every pivot column, same coset."""
        piv = self.pivmask
        if not piv:
            return v
        F = self.field
        rows = self.rows
        if F.m == 1:
            h = v & piv
            while h:
                low = h & -h
                v ^= rows[low]
                h = v & piv
            return v
        m = F.m
        mask = F.q - 1
        while True:
            h = F.support_mask(v) & piv
            if not h:
                return v
            low = h & -h
            shift = low.bit_length() - 1
            c = (v >> shift) & mask
            v ^= self._row_times(low, c)

    def add(self, v: int) -> bool:
        """Insert ``v``; return True when the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        F = self.field
        m = F.m
        low = r & -r
        shift = ((low.bit_length() - 1) // m) * m
        bit = 1 << shift
        c = (r >> shift) & (F.q - 1)
        if c != 1:
            r = F.scale(r, F.inv(c))
        if m == 1:
            for b, row in self.rows.items():
                if row & bit:
                    self.rows[b] = row ^ r
        else:
            mask = F.q - 1
            changed = False
            for b, row in self.rows.items():
                e = (row >> shift) & mask
                if e:
                    self.rows[b] = row ^ F.scale(r, e)
                    changed = True
            if changed:
                self._scaled.clear()
        self.rows[bit] = r
        self.pivmask |= bit
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def pivots(self) -> list[int]:
        m = self.field.m
        return sorted((b.bit_length() - 1) // m for b in self.rows)

    def basis(self) -> list[int]:
        """Rows in increasing pivot order (the reduced echelon form)."""
        return [self.rows[b] for b in sorted(self.rows)]


@dataclass
class Matrix:
    """Dense matrix over a field with packed rows."""

    field: GF
    ncols: int
    rows: list[int] = dc_field(default_factory=list)

    @classmethod
    def from_lists(cls, field: GF, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(field, ncols, [field.pack(r) for r in entries])

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, n, [field.unit(i) for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [self.field.unpack(r, self.ncols) for r in self.rows]

    def transpose(self) -> "Matrix":
        F = self.field
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j, c in F.items(r):
                cols[j] |= c << (F.m * i)
        return Matrix(F, len(self.rows), cols)

    def rank(self) -> int:
        return len(Echelon(self.field, self.rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.ncols, self.rows) == (other.field, other.ncols, other.rows)


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns of ``M``."""
    e = Echelon(M.field, M.rows)
    return Matrix(M.field, M.ncols, e.basis()), len(e), e.pivots()


def kernel(field: GF, vectors: Sequence[int], ncols: int) -> list[int]:
    """Basis (reduced echelon) of the relations ``sum c_i v_i = 0``.

    Each kernel vector is packed with one slot per input vector.
    """
    m = field.m
    shift = m * ncols
    e = Echelon(field)
    for i, v in enumerate(vectors):
        e.add(v | (1 << (shift + m * i)))
    limit = 1 << shift
    return sorted(r >> shift for b, r in e.rows.items() if b >= limit)


def express(field: GF, vectors: Sequence[int], target: int, ncols: int) -> list[int] | None:
    """Coefficients ``c`` with ``sum c_i v_i = target``, or None."""
    m = field.m
    shift = m * ncols
    e = Echelon(field)
    for i, v in enumerate(vectors):
        e.add(v | (1 << (shift + m * i)))
    r = e.reduce(target)
    if r & ((1 << shift) - 1):
        return None
    return field.unpack(r >> shift, len(vectors))


def annihilator(field: GF, vectors: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{a : sum_j a_j v_j = 0 for every v}`` (bilinear pairing)."""
    e = Echelon(field, vectors)
    basis = e.basis()
    piv = e.pivots()
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        a = field.unit(f)
        for p, row in zip(piv, basis):
            c = field.entry(row, f)
            if c:
                a |= c << (field.m * p)
        out.append(a)
    return Echelon(field, out).basis()
