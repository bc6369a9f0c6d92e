"""Exact big-rational primitives shared by every other module.

Everything here is pure and exact: Python ints for big integers,
``fractions.Fraction`` for rationals (always reduced, denominator > 0 by
construction), and a small dense polynomial type over the rationals.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from mpmath import mp, mpf


def pochhammer(alpha, k: int) -> Fraction:
    """Rising factorial alpha (alpha+1) ... (alpha+k-1); 1 for k = 0."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    alpha = Fraction(alpha)
    out = Fraction(1)
    for i in range(k):
        out *= alpha + i
    return out


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _primes_upto(k: int) -> list[int]:
    if k < 2:
        return []
    sieve = bytearray([1]) * (k + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(k) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(range(p * p, k + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=64)
def lcm_upto(k: int) -> int:
    """d_k = lcm(1, ..., k), via the largest prime power <= k per prime.

    Builds the product over primes directly instead of folding pairwise
    lcms; that keeps it usable up to k ~ 10^6.
    """
    if k < 1:
        raise ValueError("lcm_upto needs k >= 1")
    out = 1
    for p in _primes_upto(k):
        pe = p
        while pe * p <= k:
            pe *= p
        out *= pe
    return out


@lru_cache(maxsize=None)
def power_sum(i: int, m: int) -> Fraction:
    """H^(i)_m = sum_{t=1}^{m} t^{-i} as an exact rational; 0 for m = 0."""
    if m < 0:
        raise ValueError("power_sum needs m >= 0")
    if m == 0:
        return Fraction(0)
    return power_sum(i, m - 1) + Fraction(1, m ** i)


class QPolynomial:
    """Dense univariate polynomial over Fraction, lowest degree first.

    Coefficients are kept canonical (no trailing zeros).  The zero
    polynomial has degree -1, used as the distinguished sentinel.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls([])

    @classmethod
    def from_roots(cls, scale, roots: Sequence[tuple[Fraction | int, int]]) -> "QPolynomial":
        """scale * prod (X - root)^multiplicity."""
        out = cls([scale])
        for root, mult in roots:
            out = out * cls([-Fraction(root), 1]) ** mult
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + (-other)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self or not other:
            return QPolynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return QPolynomial(out)

    def __pow__(self, e: int) -> "QPolynomial":
        if e < 0:
            raise ValueError("negative power")
        out = QPolynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> "QPolynomial":
        c = Fraction(c)
        return QPolynomial([c * x for x in self.coeffs])

    def derivative(self) -> "QPolynomial":
        return QPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, c) -> "QPolynomial":
        """Taylor shift: returns q with q(X) = p(X + c)."""
        c = Fraction(c)
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            pw = Fraction(1)
            for j in range(i, -1, -1):
                out[j] += a * binomial(i, i - j) * pw
                pw *= c
        return QPolynomial(out)

    def eval_exact(self, x) -> Fraction:
        x = Fraction(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)!r})"


def poly_eval_precise(p: QPolynomial, x, dps: int | None = None):
    """Horner evaluation of p at a high-precision real/complex point.

    Runs at the caller's working precision unless ``dps`` is given.  Each
    coefficient is converted exactly (num/den division is the only
    rounding), so the result is accurate to working precision up to the
    usual Horner error, well below the caller's guard digits.
    """
    def _run():
        acc = mpf(0)
        for c in reversed(p.coeffs):
            cc = mpf(c.numerator) / c.denominator
            acc = acc * x + cc
        return acc

    if dps is None:
        return _run()
    with mp.workdps(dps):
        return _run()


# Truncated power-series helpers over Fraction (used for exact partial
# fractions).  A series is a plain list of Fractions, index = power.

def series_mul_linear_power(series: list[Fraction], c0: Fraction, e: int, order: int) -> list[Fraction]:
    """Multiply a truncated series by (c0 + u)^e, truncating at ``order``."""
    top = min(e, order - 1)
    c0 = Fraction(c0)
    pw = []
    for s in range(top + 1):
        pw.append(binomial(e, s) * c0 ** (e - s))
    out = [Fraction(0)] * order
    for i, a in enumerate(series):
        if a == 0:
            continue
        for j, b in enumerate(pw):
            k = i + j
            if k >= order:
                break
            out[k] += a * b
    return out


def series_inverse(series: Sequence[Fraction], order: int) -> list[Fraction]:
    """Multiplicative inverse of a truncated series with nonzero constant term."""
    if not series or series[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    inv = [Fraction(0)] * order
    inv[0] = 1 / Fraction(series[0])
    for s in range(1, order):
        acc = Fraction(0)
        for i in range(1, min(s, len(series) - 1) + 1):
            acc += Fraction(series[i]) * inv[s - i]
        inv[s] = -acc * inv[0]
    return inv


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * order
    for i, x in enumerate(a):
        if i >= order:
            break
        if x == 0:
            continue
        for j, y in enumerate(b):
            k = i + j
            if k >= order:
                break
            out[k] += x * y
    return out
