"""Well-poised summands and their exact decomposition into zeta linear forms.

The central object is the rational function

    R(t) = (2n)!^(a-6r) * (t-(2r+1)n)_{2rn}^3 (t+n+1)_{2rn}^3 / (t-n)_{2n+1}^a

with a odd and 6r < a.  Summing R over integer t > n gives a number
S_n = l_0 + l_3 zeta(3) + l_5 zeta(5) + ... + l_a zeta(a) with rational
coefficients; summing (1/2) R'' gives the companion form
S''_n = l''_0 + sum_i l_i * C(i+1,2) * zeta(i+2) with the *same* l_i.
This module produces those coefficients exactly.

The decomposition route is: exact partial fractions c_{i,j} of R at its
integer poles j in [-n, n] (Taylor expansion by truncated series, no
linear solves), then re-indexing of the pole tails against zeta tails.
The i = 1 coefficients sum to zero (forced by decay), which makes the
harmonic contribution to l_0 finite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .exact_kernel import (
    QPolynomial,
    binomial,
    lcm_upto,
    power_sum,
    series_inverse,
    series_mul,
    series_mul_linear_power,
)


@dataclass(frozen=True)
class FormSpec:
    """Parameter triple (a, r, n) of a summand family.

    Validity: a odd, r >= 1, n >= 1, 6r <= a, and decay exponent
    2n(a - 6r) >= 2 so the defining series converges absolutely.  The
    decay requirement excludes a = 6r.
    """

    a: int
    r: int
    n: int

    def __post_init__(self):
        if self.a < 1 or self.a % 2 == 0:
            raise ValueError(f"a must be a positive odd integer, got {self.a}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if 6 * self.r > self.a:
            raise ValueError(f"need 6r <= a, got a={self.a}, r={self.r}")
        if 2 * self.n * (self.a - 6 * self.r) < 2:
            raise ValueError(
                f"decay exponent 2n(a-6r) = {2 * self.n * (self.a - 6 * self.r)} < 2; "
                "the series would not converge fast enough (a = 6r is rejected)"
            )


@dataclass(frozen=True)
class Summand:
    """Factored representation of R(t): scalar, numerator roots, poles.

    numerator_roots is a tuple of (root, multiplicity); poles are the
    integers -n..n, each of order a.  The factored form is kept because
    expansion is only needed for the asymptotic tail machinery.
    """

    spec: FormSpec
    scale: int
    numerator_roots: tuple[tuple[int, int], ...]

    @property
    def poles(self) -> range:
        return range(-self.spec.n, self.spec.n + 1)

    @property
    def pole_order(self) -> int:
        return self.spec.a

    @property
    def numerator_degree(self) -> int:
        return sum(m for _, m in self.numerator_roots)

    @property
    def decay_exponent(self) -> int:
        """Exponent D with R(t) ~ const * t^-D at infinity."""
        return self.spec.a * (2 * self.spec.n + 1) - self.numerator_degree

    def first_nonzero_term(self) -> int:
        """Terms vanish for t <= (2r+1)n because of the left Pochhammer."""
        return (2 * self.spec.r + 1) * self.spec.n + 1

    def eval_exact(self, t) -> Fraction:
        t = Fraction(t)
        if t.denominator == 1 and -self.spec.n <= t <= self.spec.n:
            raise ValueError(f"t={t} is a pole")
        v = Fraction(self.scale)
        for root, mult in self.numerator_roots:
            v *= Fraction(t - root) ** mult
        for j in self.poles:
            v /= Fraction(t - j) ** self.pole_order
        return v

    def numerator_poly(self) -> QPolynomial:
        return QPolynomial.from_roots(self.scale, self.numerator_roots)

    def denominator_poly(self) -> QPolynomial:
        return QPolynomial.from_roots(1, [(j, self.pole_order) for j in self.poles])


def build_summand(spec: FormSpec) -> Summand:
    a, r, n = spec.a, spec.r, spec.n
    scale = math.factorial(2 * n) ** (a - 6 * r)
    roots: list[tuple[int, int]] = []
    for k in range(2 * r * n):
        roots.append(((2 * r + 1) * n - k, 3))   # (t - (2r+1)n + k)
        roots.append((-(n + 1 + k), 3))          # (t + n+1 + k)
    return Summand(spec=spec, scale=scale, numerator_roots=tuple(roots))


@dataclass(frozen=True)
class PartialFractionTable:
    """Exact coefficients c_{i,j} with R(t) = sum c_{i,j} / (t-j)^i."""

    spec: FormSpec
    coeffs: dict[tuple[int, int], Fraction] = field(hash=False)

    def c(self, i: int, j: int) -> Fraction:
        return self.coeffs[(i, j)]

    def c1_sum(self) -> Fraction:
        n = self.spec.n
        return sum(self.coeffs[(1, j)] for j in range(-n, n + 1))

    def column_sum(self, i: int) -> Fraction:
        n = self.spec.n
        return sum(self.coeffs[(i, j)] for j in range(-n, n + 1))

    def reconstruct_at(self, t) -> Fraction:
        t = Fraction(t)
        a, n = self.spec.a, self.spec.n
        out = Fraction(0)
        for j in range(-n, n + 1):
            base = t - j
            if base == 0:
                raise ValueError(f"t={t} is a pole")
            inv = 1 / base
            p = inv
            for i in range(1, a + 1):
                out += self.coeffs[(i, j)] * p
                p *= inv
        return out


def partial_fractions(summand: Summand) -> PartialFractionTable:
    """Exact Taylor expansion of R(t) (t-j)^a at each pole j.

    Per pole: expand numerator and the deleted denominator as truncated
    series in u = t - j up to u^(a-1), invert, multiply.  Work is
    O(a^2 n^2) rational operations overall and perfectly conditioned.
    """
    spec = summand.spec
    a, n = spec.a, spec.n
    coeffs: dict[tuple[int, int], Fraction] = {}
    for j in range(-n, n + 1):
        order = a
        num = [Fraction(summand.scale)] + [Fraction(0)] * (order - 1)
        for root, mult in summand.numerator_roots:
            num = series_mul_linear_power(num, Fraction(j - root), mult, order)
        den = [Fraction(1)] + [Fraction(0)] * (order - 1)
        for m in range(-n, n + 1):
            if m == j:
                continue
            den = series_mul_linear_power(den, Fraction(j - m), a, order)
        ser = series_mul(num, series_inverse(den, order), order)
        for i in range(1, a + 1):
            coeffs[(i, j)] = ser[a - i]
    return PartialFractionTable(spec=spec, coeffs=coeffs)


@lru_cache(maxsize=32)
def table_for(spec: FormSpec) -> PartialFractionTable:
    return partial_fractions(build_summand(spec))


PLAIN = "plain"
DOUBLE_DERIVED = "double_derived"


@dataclass(frozen=True)
class ZetaLinearForm:
    """Exact rational data of one linear form in zeta values.

    kind = "plain":          value = constant + sum_i coeff_i * zeta(i)
    kind = "double_derived": value = constant + sum_i coeff_i * C(i+1,2) * zeta(i+2)

    zeta_coeffs maps odd i in {3, ..., a} to l_i; both kinds built from
    one table carry identical l_i.  Coefficients at even arguments vanish
    identically (well-poised symmetry) and are verified exactly during
    construction.
    """

    spec: FormSpec
    kind: str
    constant: Fraction
    zeta_coeffs: dict[int, Fraction] = field(hash=False)

    def terms(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yields (zeta argument, slot index i, effective coefficient)."""
        for i in sorted(self.zeta_coeffs):
            li = self.zeta_coeffs[i]
            if self.kind == PLAIN:
                yield i, i, li
            else:
                yield i + 2, i, li * binomial(i + 1, 2)

    def all_coefficients(self) -> list[Fraction]:
        return [self.constant] + [c for _, _, c in self.terms()]

    def evaluate(self, zeta_fn):
        """Numeric value at the caller's working precision.

        ``zeta_fn(s)`` must return zeta(s) as an mpf.
        """
        from mpmath import mpf

        out = mpf(self.constant.numerator) / self.constant.denominator
        for arg, _i, c in self.terms():
            out += (mpf(c.numerator) / c.denominator) * zeta_fn(arg)
        return out


def _check_structure(table: PartialFractionTable) -> None:
    if table.c1_sum() != 0:
        raise ArithmeticError(
            "order-1 partial fraction coefficients do not sum to zero; "
            "the series re-indexing is invalid for this input"
        )
    for i in range(2, table.spec.a + 1, 2):
        if table.column_sum(i) != 0:
            raise ArithmeticError(
                f"even-order column sum c_{i},* is nonzero; "
                "well-poised symmetry is broken"
            )


def zeta_form_plain(table: PartialFractionTable) -> ZetaLinearForm:
    """Collapse pole tails onto zeta values for the plain sum.

    For i >= 2:  sum_{t>n} (t-j)^{-i} = zeta(i) - H^(i)_{n-j}, so
    l_i = sum_j c_{i,j} and the finite parts feed l_0.  For i = 1 the
    individual tails diverge; since sum_j c_{1,j} = 0 they telescope to
    -sum_j c_{1,j} H^(1)_{n-j}.
    """
    _check_structure(table)
    a, n = table.spec.a, table.spec.n
    zc = {i: table.column_sum(i) for i in range(3, a + 1, 2)}
    l0 = Fraction(0)
    for j in range(-n, n + 1):
        l0 -= table.c(1, j) * power_sum(1, n - j)
        for i in range(2, a + 1):
            l0 -= table.c(i, j) * power_sum(i, n - j)
    return ZetaLinearForm(spec=table.spec, kind=PLAIN, constant=l0, zeta_coeffs=zc)


def zeta_form_derived(table: PartialFractionTable) -> ZetaLinearForm:
    """Same for the double-derived sum.

    (1/2) d^2/dt^2 (t-j)^{-i} = C(i+1,2) (t-j)^{-(i+2)}, so every slot
    shifts by two and picks up the binomial multiplier; all tails now
    converge individually (i + 2 >= 3).
    """
    _check_structure(table)
    a, n = table.spec.a, table.spec.n
    zc = {i: table.column_sum(i) for i in range(3, a + 1, 2)}
    l0pp = Fraction(0)
    for j in range(-n, n + 1):
        for i in range(1, a + 1):
            l0pp -= table.c(i, j) * binomial(i + 1, 2) * power_sum(i + 2, n - j)
    return ZetaLinearForm(spec=table.spec, kind=DOUBLE_DERIVED, constant=l0pp, zeta_coeffs=zc)


def half_second_derivative_exact(table: PartialFractionTable, t) -> Fraction:
    """(1/2) R''(t) evaluated exactly through the partial fractions."""
    t = Fraction(t)
    a, n = table.spec.a, table.spec.n
    out = Fraction(0)
    for j in range(-n, n + 1):
        base = t - j
        if base == 0:
            raise ValueError(f"t={t} is a pole")
        inv = 1 / base
        p = inv ** 3
        for i in range(1, a + 1):
            out += table.c(i, j) * binomial(i + 1, 2) * p
            p *= inv
    return out


def verify_partial_sum_identity(table: PartialFractionTable,
                                form: ZetaLinearForm,
                                upto: int) -> bool:
    """Exact finite-T identity certifying the l_0 / l''_0 bookkeeping.

    For every T > n:
      plain:   sum_{t=n+1}^{T} R(t)        == l_0   + sum_{i,j} c_{i,j} H^(i)_{T-j}
      derived: sum_{t=n+1}^{T} (1/2)R''(t) == l''_0 + sum_{i,j} c_{i,j} C(i+1,2) H^(i+2)_{T-j}

    Both sides are rationals; equality is checked bit for bit.  The left
    side is evaluated through an independent route (factored products for
    R, differentiated partial fractions for R'').
    """
    spec = table.spec
    a, n = spec.a, spec.n
    summand = build_summand(spec)
    if form.kind == PLAIN:
        lhs = sum((summand.eval_exact(t) for t in range(n + 1, upto + 1)), Fraction(0))
        rhs = form.constant
        for j in range(-n, n + 1):
            for i in range(1, a + 1):
                rhs += table.c(i, j) * power_sum(i, upto - j)
    else:
        lhs = sum((half_second_derivative_exact(table, t) for t in range(n + 1, upto + 1)),
                  Fraction(0))
        rhs = form.constant
        for j in range(-n, n + 1):
            for i in range(1, a + 1):
                rhs += table.c(i, j) * binomial(i + 1, 2) * power_sum(i + 2, upto - j)
    return lhs == rhs


@dataclass(frozen=True)
class DenominatorReport:
    spec: FormSpec
    kind: str
    exponent: int
    d2n: int
    passed: bool
    scaled: dict[str, int] = field(hash=False)


def denominator_check(form: ZetaLinearForm) -> DenominatorReport:
    """Does d_{2n}^{a+2} clear every coefficient to an integer?"""
    spec = form.spec
    d2n = lcm_upto(2 * spec.n)
    mult = d2n ** (spec.a + 2)
    scaled: dict[str, int] = {}
    ok = True
    items = [("l0", form.constant)] + [(f"l{i}", form.zeta_coeffs[i]) for i in sorted(form.zeta_coeffs)]
    for name, coeff in items:
        v = coeff * mult
        if v.denominator != 1:
            ok = False
            scaled[name] = 0
        else:
            scaled[name] = v.numerator
    return DenominatorReport(spec=spec, kind=form.kind, exponent=spec.a + 2,
                             d2n=d2n, passed=ok, scaled=scaled)


def smallest_clearing_exponent(form: ZetaLinearForm) -> int | None:
    """Least e with d_{2n}^e * coefficient integral for all coefficients."""
    spec = form.spec
    d2n = lcm_upto(2 * spec.n)
    coeffs = [form.constant] + list(form.zeta_coeffs.values())
    for e in range(0, spec.a + 3):
        mult = d2n ** e
        if all((c * mult).denominator == 1 for c in coeffs):
            return e
    return None


@dataclass(frozen=True)
class GrowthReport:
    a: int
    r: int
    bound_log: float
    rows: tuple[tuple[int, float], ...]   # (n, max_i log|l_i| / n)
    slack: float
    flagged: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.flagged


def coeff_growth(a: int, r: int, n_values, slack: float = 0.5) -> GrowthReport:
    """Empirical growth exponent of the coefficients against the bound
    log(2^{2(a-6r)} (2r+1)^{6(2r+1)}), flagging any n exceeding bound+slack."""
    bound = 2 * (a - 6 * r) * math.log(2) + 6 * (2 * r + 1) * math.log(2 * r + 1)
    rows = []
    flagged = []
    for n in n_values:
        spec = FormSpec(a=a, r=r, n=n)
        form = zeta_form_plain(table_for(spec))
        mx = max(
            [abs(form.constant)] + [abs(c) for c in form.zeta_coeffs.values()]
        )
        val = _log_of_fraction(mx) / n
        rows.append((n, val))
        if val > bound + slack:
            flagged.append(n)
    return GrowthReport(a=a, r=r, bound_log=bound, rows=tuple(rows),
                        slack=slack, flagged=tuple(flagged))


def _log_of_fraction(x: Fraction) -> float:
    """log |x| for possibly huge rationals, via bit lengths."""
    if x == 0:
        return float("-inf")
    num, den = abs(x.numerator), x.denominator
    return (_log_of_int(num)) - (_log_of_int(den))


def _log_of_int(v: int) -> float:
    if v.bit_length() <= 900:
        return math.log(v)
    top = v >> (v.bit_length() - 64)
    return math.log(top) + (v.bit_length() - 64) * math.log(2)


# Canonical JSON encodings (stable field order, rationals as digit strings).

def _frac_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _frac_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def spec_json(spec: FormSpec) -> dict:
    return {"a": spec.a, "r": spec.r, "n": spec.n}


def table_to_json(table: PartialFractionTable) -> dict:
    return {
        "schema": "zetaforms/partial-fractions@1",
        "spec": spec_json(table.spec),
        "coefficients": [
            {"i": i, "j": j, **_frac_json(table.coeffs[(i, j)])}
            for (i, j) in sorted(table.coeffs)
        ],
    }


def table_from_json(doc: dict) -> PartialFractionTable:
    spec = FormSpec(**doc["spec"])
    coeffs = {(e["i"], e["j"]): Fraction(int(e["num"]), int(e["den"]))
              for e in doc["coefficients"]}
    return PartialFractionTable(spec=spec, coeffs=coeffs)


def form_to_json(form: ZetaLinearForm) -> dict:
    return {
        "schema": "zetaforms/linear-form@1",
        "spec": spec_json(form.spec),
        "kind": form.kind,
        "constant": _frac_json(form.constant),
        "zeta_coefficients": [
            {"i": i, "zeta_argument": arg, "coefficient": _frac_json(form.zeta_coeffs[i]),
             "multiplier": str(binomial(i + 1, 2)) if form.kind == DOUBLE_DERIVED else "1"}
            for arg, i, _c in form.terms()
        ],
    }


def form_from_json(doc: dict) -> ZetaLinearForm:
    spec = FormSpec(**doc["spec"])
    zc = {e["i"]: _frac_from_json(e["coefficient"]) for e in doc["zeta_coefficients"]}
    return ZetaLinearForm(spec=spec, kind=doc["kind"],
                          constant=_frac_from_json(doc["constant"]), zeta_coeffs=zc)
