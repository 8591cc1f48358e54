"""Truncated power series with exact rational coefficients, and the mod-2
Moebius / necklace machinery that turns Hilbert series into graded
dimensions of restricted Lie algebras.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from graphlie.errors import BadConstantTerm, NonIntegralDimension, NonpositiveCoefficient

DEFAULT_ORDER = 8


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PowerSeries:
    """Series ``c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs at least the constant term")
        self.coeffs = cs

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1] == other.coeffs[: n + 1]
        return NotImplemented

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: order + 1], order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self.coeffs])

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries([a * other for a in self.coeffs])
        return series_mul(self, other)

    __rmul__ = __mul__

    def at_neg(self) -> "PowerSeries":
        """The series in ``-z``."""
        return PowerSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def dilate(self, k: int) -> "PowerSeries":
        """Substitute ``z -> z^k`` keeping the same truncation order."""
        out = [Fraction(0)] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > self.order:
                break
            out[i * k] = c
        return PowerSeries(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"PowerSeries({format_series(self.coeffs)}, order={self.order})"

    def __str__(self) -> str:
        return format_series(self.coeffs, big_o=True)


def format_series(coeffs: Sequence, big_o: bool = False, var: str = "z") -> str:
    """``1 + 2z - 1/2*z^3``; optionally followed by ``+ O(z^{N+1})``.

    Integer coefficients sit directly against the variable, fractions get a ``*``.
    """
    parts: list[str] = []
    for k, c in enumerate(coeffs):
        c = _frac(c)
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{mono}" if mag.denominator == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts) if parts else "0"
    if big_o:
        n = len(coeffs)
        text += f" + O({var}^{n})"
    return text


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a.coeffs[: n + 1]):
        if x:
            for j, y in enumerate(b.coeffs[: n + 1 - i]):
                out[i + j] += x * y
    return PowerSeries(out)


def series_inverse(a: PowerSeries) -> PowerSeries:
    if a[0] != 1:
        raise BadConstantTerm(f"constant term must be 1, got {a[0]}")
    n = a.order
    inv = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        inv[k] = -sum(a.coeffs[j] * inv[k - j] for j in range(1, k + 1))
    return PowerSeries(inv)


def series_log(a: PowerSeries) -> PowerSeries:
    if a[0] != 1:
        raise BadConstantTerm(f"constant term must be 1, got {a[0]}")
    n = a.order
    # k*L_k = k*a_k - sum_{j<k} j*L_j*a_{k-j}
    L = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        s = k * a.coeffs[k] - sum(j * L[j] * a.coeffs[k - j] for j in range(1, k))
        L[k] = s / k
    return PowerSeries(L)


# -- arithmetic functions ------------------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def mobius2(n: int) -> int:
    """mu(n) for odd n; 2^(s-1) mu(m) for n = 2^s m with m odd."""
    if n < 1:
        raise ValueError("mobius2 is defined for n >= 1")
    s = 0
    while n % 2 == 0:
        n //= 2
        s += 1
    if s == 0:
        return mobius(n)
    return (1 << (s - 1)) * mobius(n)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def necklace2(k: int, t) -> Fraction:
    """M_{2,k}(t) = (1/k) sum_{j | k} mu_2(k/j) t^j."""
    if k < 1:
        raise ValueError("k must be positive")
    t = _frac(t)
    return sum((mobius2(k // j) * t**j for j in divisors(k)), Fraction(0)) / k


# -- Hilbert series and dimensions ------------------------------------------------


def froberg_reciprocal(clique_coeffs: Sequence[int], order: int = DEFAULT_ORDER) -> PowerSeries:
    """Truncated ``1 / p(-z)``; every coefficient must come out nonnegative."""
    p = PowerSeries(clique_coeffs, order)
    out = series_inverse(p.at_neg())
    if any(c < 0 for c in out.coeffs):
        raise NonpositiveCoefficient(f"1/p(-z) has a negative coefficient: {out}")
    return out


def _as_dims(ell: Sequence[Fraction]) -> tuple[int, ...]:
    for k, x in enumerate(ell, start=1):
        if x.denominator != 1 or x < 0:
            raise NonIntegralDimension(f"dimension in degree {k} would be {x}")
    return tuple(int(x) for x in ell)


def petrogradsky_dims(phi: PowerSeries, order: int | None = None) -> tuple[int, ...]:
    """Graded dimensions ``(l_1, ..., l_N)`` with prod (1+z^k)^{l_k} = phi.

    Computed as the coefficients of sum_n mu_2(n)/n * log phi(z^n).
    """
    if order is not None:
        phi = phi.truncate(order)
    N = phi.order
    log_phi = series_log(phi)
    total = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        w = Fraction(mobius2(n), n)
        for i, c in enumerate(log_phi.coeffs):
            if i * n > N:
                break
            total[i * n] += w * c
    return _as_dims(total[1:])


def pbw_product(ell: Sequence[int], order: int = DEFAULT_ORDER) -> PowerSeries:
    """Truncated ``prod_k (1 + z^k)^{l_k}``."""
    out = [0] * (order + 1)
    out[0] = 1
    for k, l in enumerate(ell, start=1):
        if k > order or l == 0:
            continue
        factor = [0] * (order + 1)
        for j in range(0, min(l, order // k) + 1):
            factor[j * k] = comb(l, j)
        new = [0] * (order + 1)
        for i, a in enumerate(out):
            if a:
                for j in range(0, order + 1 - i):
                    if factor[j]:
                        new[i + j] += a * factor[j]
        out = new
    return PowerSeries(out)


def power_sums(poly: Sequence, order: int = DEFAULT_ORDER) -> list[Fraction]:
    """Power sums ``p_m = sum_i lambda_i^m`` (m = 1..N) of p(z) = prod (1 + lambda_i z).

    Newton's identities in the elementary symmetric coefficients of ``poly``.
    """
    cs = [_frac(c) for c in poly]
    if not cs or cs[0] != 1:
        raise BadConstantTerm("polynomial must have constant term 1")
    e = cs + [Fraction(0)] * (order + 1)
    p: list[Fraction] = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        s = Fraction((-1) ** (m - 1) * m) * e[m]
        for i in range(1, m):
            s += (-1) ** (i - 1) * e[i] * p[m - i]
        p[m] = s
    return p[1:]


def witt_dims_from_power_sums(psums: Sequence, order: int | None = None) -> tuple[int, ...]:
    """``l_k = (1/k) sum_{d | k} mu_2(k/d) p_d``."""
    ps = [_frac(x) for x in psums]
    N = len(ps) if order is None else order
    if N > len(ps):
        raise ValueError("not enough power sums for the requested order")
    ell = []
    for k in range(1, N + 1):
        ell.append(sum((mobius2(k // d) * ps[d - 1] for d in divisors(k)), Fraction(0)) / k)
    return _as_dims(ell)
