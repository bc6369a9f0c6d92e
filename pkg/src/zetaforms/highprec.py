"""Arbitrary-precision evaluation with certified truncation bounds.

Three layers:

* Euler-Maclaurin power sums.  ``zeta_value`` and the tail sums
  sum_{m >= T} m^{-s} carry an explicit remainder bound: for the
  completely monotone integrand x^{-s} the Euler-Maclaurin remainder is
  no larger than the first omitted correction term, so the loop simply
  stops once that term is below target (doubling the expansion point if
  the terms bottom out too early).

* Direct summation of the defining series.  Terms are advanced by the
  exact term ratio; the double-derived summand (1/2) R''(t) is realized
  as R(t) (L(t)^2 + L'(t))/2 where L = R'/R is a sum of simple poles,
  updated in O(1) per step.

* Tail completion.  Either an elementary bound
  sum_{t >= T} R(t) <= A(T) (T^-D + T^{1-D}/(D-1)) when the decay
  exponent D is large enough to truncate outright, or the exact Laurent
  expansion of R at infinity: R = sum b_s t^-s with integer b_s from
  long division, whose truncation error is controlled exactly through
  the division residual.  The tail then becomes a finite combination of
  certified power-sum tails.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from mpmath import mp, mpf

from .linear_forms import FormSpec, Summand, build_summand, PLAIN, DOUBLE_DERIVED


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision plus guard digits."""

    digits: int = 50
    guard: int = 20

    def __post_init__(self):
        if self.digits < 50:
            raise ValueError("digits must be >= 50")
        if self.guard < 10:
            raise ValueError("guard must be >= 10")

    @property
    def workdps(self) -> int:
        return self.digits + self.guard


def _ilog10(v: int) -> float:
    """log10 of a positive int without overflow."""
    if v <= 0:
        raise ValueError("need positive value")
    bl = v.bit_length()
    if bl <= 900:
        return math.log10(v)
    top = v >> (bl - 64)
    return math.log10(top) + (bl - 64) * math.log10(2)


def _log10_add(x: float, y: float) -> float:
    """log10(10^x + 10^y)."""
    if x < y:
        x, y = y, x
    if x == float("-inf"):
        return x
    return x + math.log10(1 + 10 ** max(y - x, -300))


# ---------------------------------------------------------------------------
# Euler-Maclaurin power sums


def _em_power_tail(s: int, x0: int, tol_log10: float) -> tuple[mpf, float]:
    """sum_{m >= x0} m^{-s} at current working precision.

    Returns (value, certified log10 bound of the truncation remainder).
    Requires integer s >= 2, integer x0 >= 1.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    if x0 < 1:
        raise ValueError("need x0 >= 1")
    tol = mpf(10) ** tol_log10
    extra = 0
    needed = max(x0, int(0.46 * (-tol_log10)) + 8) if tol_log10 < 0 else x0
    while True:
        X = max(x0, needed + extra)
        direct = mpf(0)
        for m in range(x0, X):
            direct += mpf(m) ** (-s)
        value, bound = _em_at(s, X, tol)
        if bound is not None:
            blog = float(mp.log(bound, 10)) if bound > 0 else float("-inf")
            return direct + value, blog
        extra = max(32, 2 * (X - x0) if X > x0 else X)


def _em_at(s: int, X: int, tol: mpf) -> tuple[mpf, mpf | None]:
    """Euler-Maclaurin expansion of sum_{m >= X} m^{-s} at the point X.

    Returns (value, remainder_bound) or (partial, None) if the correction
    terms bottom out above ``tol`` (caller must enlarge X).
    """
    Xf = mpf(X)
    head = Xf ** (1 - s) / (s - 1) + Xf ** (-s) / 2
    acc = head
    poch = mpf(s)                       # s (s+1) ... running rising factorial
    xpow = Xf ** (-s - 1)
    prev = None
    k = 1
    while True:
        b = mp.bernoulli(2 * k)
        # term = B_{2k}/(2k)! * (s)_{2k-1} * X^{-s-2k+1}
        term = b / math.factorial(2 * k) * poch * xpow
        xpow /= Xf * Xf
        at = abs(term)
        if at < tol:
            return acc, at
        if prev is not None and at >= prev:
            return acc, None            # terms no longer decreasing
        acc += term
        prev = at
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        k += 1
        if k > 4000:
            return acc, None


_ZETA_CACHE: dict[tuple[int, int], mpf] = {}


def zeta_value(s: int, ctx: PrecisionContext) -> mpf:
    """zeta(s) for integer s >= 2, absolute error below 10^-digits."""
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"zeta_value needs an integer s >= 2, got {s!r}")
    key = (s, ctx.workdps)
    hit = _ZETA_CACHE.get(key)
    if hit is not None:
        return hit
    with mp.workdps(ctx.workdps):
        v, _bound = _em_power_tail(s, 1, -(ctx.digits + 4))
    _ZETA_CACHE[key] = v
    return v


def power_sum_tail(s: int, start: int, ctx: PrecisionContext) -> mpf:
    """sum_{m >= start} m^{-s}, certified below 10^-digits."""
    with mp.workdps(ctx.workdps):
        v, _ = _em_power_tail(s, start, -(ctx.digits + 4))
    return v


def _em_tail_range(s_lo: int, s_hi: int, x0: int, tol_log10) -> list[mpf]:
    """Power-sum tails for every integer s in [s_lo, s_hi] at one start x0.

    Shares the direct part across all s values; the per-s expansion is
    the same certified routine as the scalar case.  ``tol_log10`` is one
    float or a per-s sequence (the heaviest tolerance sets the expansion
    point, each s stops at its own).
    """
    count = s_hi - s_lo + 1
    if isinstance(tol_log10, (int, float)):
        tols = [float(tol_log10)] * count
    else:
        tols = [float(t) for t in tol_log10]
        if len(tols) != count:
            raise ValueError("one tolerance per s value required")
    hardest = min(tols)
    extra = 0
    needed = max(x0, int(0.46 * (-hardest)) + 8) if hardest < 0 else x0
    while True:
        X = max(x0, needed + extra)
        acc = [mpf(0)] * count
        ok = True
        for m in range(x0, X):
            w = mpf(m) ** (-s_lo)
            mi = mpf(m)
            for idx in range(count):
                acc[idx] += w
                w = w / mi
        for idx in range(count):
            s = s_lo + idx
            value, bound = _em_at(s, X, mpf(10) ** tols[idx])
            if bound is None:
                ok = False
                break
            acc[idx] += value
        if ok:
            return acc
        extra = max(32, 2 * extra, X)


# ---------------------------------------------------------------------------
# Laurent expansion of the summand at infinity


def _int_poly_from_roots(scale: int, roots: Iterable[tuple[int, int]]) -> list[int]:
    out = [scale]
    for root, mult in roots:
        for _ in range(mult):
            nxt = [0] * (len(out) + 1)
            for i, c in enumerate(out):
                nxt[i] -= root * c
                nxt[i + 1] += c
            out = nxt
    return out


class LaurentTail:
    """Expansion R(t) = sum_{s >= D} b_s t^{-s} with exact error control.

    Writing x = 1/t, R = x^D p(x)/q(x) with integer polynomials and
    q(0) = 1; long division yields integer coefficients b and, after K
    steps, an exact residual e(x) with

        R(t) - W_K(t) = t^{-D-K} e(1/t) / q(1/t).

    For t >= 2n the factorized bound |q(1/t)| >= 2^-degQ turns coefficient
    norms of e and q into fully explicit tail bounds, for the function
    itself and for (1/2) of its second derivative.
    """

    def __init__(self, summand: Summand):
        self.summand = summand
        spec = summand.spec
        if spec.a * (2 * spec.n + 1) > 2000:
            raise ArithmeticError(
                "Laurent tail needs the expanded denominator; its degree "
                f"{spec.a * (2 * spec.n + 1)} is past the practical cap. "
                "Large n has a steep decay exponent: use plain truncation.")
        n = summand.spec.n
        self.min_t = 2 * n + 2
        P = _int_poly_from_roots(summand.scale, summand.numerator_roots)
        Q = _int_poly_from_roots(1, [(j, summand.pole_order) for j in summand.poles])
        assert Q[-1] == 1
        self.D = (len(Q) - 1) - (len(P) - 1)
        self.degQ = len(Q) - 1
        self.p_rev = P[::-1]
        self.q_rev = Q[::-1]
        self.b: list[int] = []
        self.rem = list(self.p_rev)
        # coefficient norms of q(x): sum |q_i|, sum i|q_i|, sum i(i-1)|q_i|
        self.Aq = sum(abs(c) for c in self.q_rev)
        self.Aq1 = sum(i * abs(c) for i, c in enumerate(self.q_rev))
        self.Aq2 = sum(i * (i - 1) * abs(c) for i, c in enumerate(self.q_rev))

    def extend(self, K: int) -> None:
        if K <= len(self.b):
            return
        need_len = K + self.degQ + 1
        if len(self.rem) < need_len:
            self.rem.extend([0] * (need_len - len(self.rem)))
        for s in range(len(self.b), K):
            c = self.rem[s]
            self.b.append(c)
            if c:
                for i in range(1, self.degQ + 1):
                    self.rem[s + i] -= c * self.q_rev[i]

    def _e_norms(self, K: int) -> tuple[int, int, int]:
        self.extend(K)
        Ae = Ae1 = Ae2 = 0
        for u in range(self.degQ):
            v = abs(self.rem[K + u])
            Ae += v
            Ae1 += u * v
            Ae2 += u * (u - 1) * v
        return Ae, Ae1, Ae2

    def tail_bound_log10(self, kind: str, K: int, T: int) -> float:
        """Certified log10 bound for |sum_{t >= T} (R - W_K)(t)| (plain)
        or the same for (1/2)(R - W_K)'' (double-derived).  T >= 2n+2."""
        if T < self.min_t:
            raise ValueError(f"T must be >= {self.min_t}")
        Ae, Ae1, Ae2 = self._e_norms(K)
        if Ae == 0:
            return float("-inf")
        lgQ2 = self.degQ * math.log10(2)
        v = self.D + K
        if kind == PLAIN:
            c_log = _ilog10(Ae) + lgQ2
            power = v
        else:
            B0 = _ilog10(Ae) + lgQ2
            B1 = _ilog10(Ae1 * self.Aq + Ae * self.Aq1) + 2 * lgQ2 if (Ae1 or self.Aq1) else float("-inf")
            inner = (Ae2 * self.Aq + Ae * self.Aq2) * self.Aq + 2 * self.Aq1 * (Ae1 * self.Aq + Ae * self.Aq1)
            B2 = _ilog10(inner) + 3 * lgQ2 if inner else float("-inf")
            c_log = math.log10(v) + math.log10(v + 1) + B0
            if B1 != float("-inf"):
                c_log = _log10_add(c_log, math.log10(2 * v + 2) + B1)
            if B2 != float("-inf"):
                c_log = _log10_add(c_log, B2)
            c_log -= math.log10(2)
            power = v + 2
        tail_pow = _log10_add(-power * math.log10(T),
                              (1 - power) * math.log10(T) - math.log10(power - 1))
        return c_log + tail_pow

    def tail_value(self, kind: str, K: int, T: int, tol_log10: float) -> mpf:
        """sum_{t >= T} W_K(t) (plain) or sum (1/2) W_K''(t) (derived)."""
        self.extend(K)
        spread = math.log10(max(K, 1)) + 2
        if kind == PLAIN:
            tols = [tol_log10 - (_ilog10(abs(b)) if b else 0) - spread
                    for b in self.b[:K]]
            tails = _em_tail_range(self.D, self.D + K - 1, T, tols)
            out = mpf(0)
            for i in range(K):
                if self.b[i]:
                    out += mpf(self.b[i]) * tails[i]
            return out
        tols = []
        for i in range(K):
            s = self.D + i
            scale = (_ilog10(abs(self.b[i])) if self.b[i] else 0) \
                + math.log10(s * (s + 1) / 2)
            tols.append(tol_log10 - scale - spread)
        tails = _em_tail_range(self.D + 2, self.D + K + 1, T, tols)
        out = mpf(0)
        for i in range(K):
            if self.b[i]:
                s = self.D + i
                out += mpf(self.b[i]) * (mpf(s) * (s + 1) / 2) * tails[i]
        return out


_LAURENT_CACHE: dict[FormSpec, LaurentTail] = {}


def _laurent_for(spec: FormSpec) -> LaurentTail:
    lt = _LAURENT_CACHE.get(spec)
    if lt is None:
        lt = LaurentTail(build_summand(spec))
        _LAURENT_CACHE[spec] = lt
    return lt


# ---------------------------------------------------------------------------
# Direct summation


def _elementary_tail_bound_log10(spec: FormSpec, kind: str, T: int) -> float:
    """log10 bound for the absolute tail sum_{t >= T} of the summand
    (or of |(1/2) R''|), using factor-by-factor comparisons only."""
    a, r, n = spec.a, spec.r, spec.n
    if T <= (2 * r + 1) * n + 1 or T <= 2 * n + 1:
        return float("inf")
    D = spec.a + 2 * n * (a - 6 * r)
    logA = ((a - 6 * r) * math.lgamma(2 * n + 1) / math.log(10)
            + 6 * r * n * math.log10(1 + (2 * r + 1) * n / T)
            - a * (2 * n + 1) * math.log10(1 - n / T))
    tail = _log10_add(-D * math.log10(T), (1 - D) * math.log10(T) - math.log10(D - 1))
    out = logA + tail
    if kind == DOUBLE_DERIVED:
        cL = 12 * r * n + a * (2 * n + 1)
        out += math.log10((cL * cL + cL) / 2) - 2 * math.log10(T - (2 * r + 1) * n)
    return out


def _direct_sum(spec: FormSpec, kind: str, t_start: int, t_stop: int) -> mpf:
    """sum of the summand (plain) or of (1/2) R'' over t in [t_start, t_stop),
    at the current working precision."""
    a, r, n = spec.a, spec.r, spec.n
    if t_stop <= t_start:
        return mpf(0)
    summand = build_summand(spec)
    t = t_start
    Rt_frac = summand.eval_exact(t)
    Rt = mpf(Rt_frac.numerator) / mpf(Rt_frac.denominator)
    derived = kind == DOUBLE_DERIVED
    if derived:
        # L = R'/R as three pole blocks, updated in O(1) per step
        Su = sum(1 / mpf(t - root) for root in range(n + 1, (2 * r + 1) * n + 1))
        Sv = sum(1 / mpf(t + n + 1 + k) for k in range(2 * r * n))
        Sw = sum(1 / mpf(t - m) for m in range(-n, n + 1))
        Tu = sum(1 / mpf(t - root) ** 2 for root in range(n + 1, (2 * r + 1) * n + 1))
        Tv = sum(1 / mpf(t + n + 1 + k) ** 2 for k in range(2 * r * n))
        Tw = sum(1 / mpf(t - m) ** 2 for m in range(-n, n + 1))
    acc = mpf(0)
    c = (2 * r + 1) * n
    while t < t_stop:
        if derived:
            L = 3 * (Su + Sv) - a * Sw
            Lp = -3 * (Tu + Tv) + a * Tw
            acc += Rt * (L * L + Lp) / 2
        else:
            acc += Rt
        tm = mpf(t)
        ratio = ((tm - n) / (tm - c)) ** 3 * ((tm + c + 1) / (tm + n + 1)) ** 3 \
            * ((tm - n) / (tm + n + 1)) ** a
        Rt *= ratio
        if derived:
            Su += 1 / (tm - n) - 1 / (tm - c)
            Sv += 1 / (tm + c + 1) - 1 / (tm + n + 1)
            Sw += 1 / (tm + n + 1) - 1 / (tm - n)
            Tu += 1 / (tm - n) ** 2 - 1 / (tm - c) ** 2
            Tv += 1 / (tm + c + 1) ** 2 - 1 / (tm + n + 1) ** 2
            Tw += 1 / (tm + n + 1) ** 2 - 1 / (tm - n) ** 2
        t += 1
    return acc


@dataclass(frozen=True)
class EvalResult:
    value: mpf
    method: str                 # "direct" or "direct+laurent"
    split_T: int
    terms: int
    tail_bound_log10: float
    laurent_K: int | None = None


_DIRECT_TERM_CAP = 250_000
_DIRECT_T_CAP = 1_000_000


def eval_S_direct(spec: FormSpec, kind: str, ctx: PrecisionContext,
                  abs_tol_log10: float | None = None,
                  wdps: int | None = None) -> EvalResult:
    """Evaluate the defining series with a certified absolute tail bound.

    Picks plain truncation when the polynomial decay is steep enough to
    reach the target within a bounded number of terms, otherwise sums a
    short head and completes with the certified Laurent tail.
    """
    if kind not in (PLAIN, DOUBLE_DERIVED):
        raise ValueError(f"unknown kind {kind!r}")
    wdps = wdps or ctx.workdps
    tol = abs_tol_log10 if abs_tol_log10 is not None else -(ctx.digits + ctx.guard // 2)
    t0 = build_summand(spec).first_nonzero_term()

    T = max(64, 2 * t0)
    chosen = None
    while T <= _DIRECT_T_CAP:
        if _elementary_tail_bound_log10(spec, kind, T) < tol and T - t0 <= _DIRECT_TERM_CAP:
            chosen = T
            break
        T *= 2
    if chosen is not None:
        with mp.workdps(wdps):
            head = _direct_sum(spec, kind, t0, chosen)
        return EvalResult(value=head, method="direct", split_T=chosen,
                          terms=chosen - t0,
                          tail_bound_log10=_elementary_tail_bound_log10(spec, kind, chosen))

    lt = _laurent_for(spec)
    T = max(lt.min_t, 2 * t0, 48)
    K = 64
    while True:
        bound = lt.tail_bound_log10(kind, K, T)
        if bound < tol:
            break
        K *= 2
        if K > 16384:
            raise ArithmeticError(
                f"Laurent tail for {spec} does not reach 10^{tol}; "
                "raise the split point or lower the precision target"
            )
    with mp.workdps(wdps):
        head = _direct_sum(spec, kind, t0, T)
        tail = lt.tail_value(kind, K, T, tol)
        value = head + tail
    return EvalResult(value=value, method="direct+laurent", split_T=T,
                      terms=max(0, T - t0), tail_bound_log10=bound, laurent_K=K)


def form_residual(form, ctx: PrecisionContext) -> mpf:
    """|S_direct - linear-form value| for either kind.

    The linear form combines coefficients of size up to B = max|l| that
    cancel down to the series value, so resolving the identity to
    10^-digits absolute needs log10(B) extra working digits on top of the
    context; they are added automatically.
    """
    from .linear_forms import _log_of_fraction

    coeff_log10 = max(
        0.0,
        max(_log_of_fraction(c) for c in form.all_coefficients()) / math.log(10),
    )
    wdps = ctx.workdps + int(coeff_log10) + 5
    res = eval_S_direct(form.spec, form.kind, ctx, wdps=wdps)
    with mp.workdps(wdps):
        zctx = PrecisionContext(digits=wdps - ctx.guard, guard=ctx.guard)
        target = form.evaluate(lambda s: zeta_value(s, zctx))
        return abs(res.value - target)


# ---------------------------------------------------------------------------
# Empirical rates against the asymptotic constants


@dataclass(frozen=True)
class RateSample:
    n: int
    log_sn_over_n: float
    log_sppn_over_n: float
    sign_pp: int
    cos_reference: float          # cos(n omega_a + phi_a), the |.|-law reference
    excluded: bool
    sign_plain: int
    cos_signed: float             # cos(n omega_signed + phi_signed)
    log_amp_ratio: float          # log(|S''_n| / (eps''^n |cos n omega + phi|))


@dataclass(frozen=True)
class RateReport:
    a: int
    r: int
    log_eps_a: float
    log_eps_pp_a: float
    omega_a: float
    phi_a: float
    cos_exclusion: float
    samples: tuple[RateSample, ...]

    def fit_slope(self, n_lo: int, n_hi: int) -> float:
        """Least-squares slope of log|S_n| against n on [n_lo, n_hi]."""
        pts = [(s.n, s.log_sn_over_n * s.n) for s in self.samples if n_lo <= s.n <= n_hi]
        if len(pts) < 2:
            raise ValueError("need at least two samples in range")
        N = len(pts)
        sx = sum(p[0] for p in pts)
        sy = sum(p[1] for p in pts)
        sxx = sum(p[0] * p[0] for p in pts)
        sxy = sum(p[0] * p[1] for p in pts)
        return (N * sxy - sx * sy) / (N * sxx - sx * sx)

    def sign_agreement(self, n_lo: int, n_hi: int,
                       signed_law: bool = False) -> tuple[float, int, int]:
        """(rate, matches, counted) of sign(S''_n) == sign(cos reference),
        near-zero cosines excluded.  ``signed_law`` switches the reference
        from cos(n omega + phi) to the pi-shifted signed-law cosine."""
        match = counted = 0
        for s in self.samples:
            if s.n < n_lo or s.n > n_hi or s.excluded:
                continue
            counted += 1
            c = s.cos_signed if signed_law else s.cos_reference
            ref = 1 if c > 0 else -1
            if ref == s.sign_pp:
                match += 1
        return (match / counted if counted else float("nan")), match, counted


def measure_rates(a: int, r: int, n_values: Sequence[int], saddle_data,
                  cos_exclusion: float = 1e-3, min_digits: int = 0) -> RateReport:
    """High-precision |S_n|, |S''_n| along n, against the saddle constants.

    Working precision is auto-scaled per n: the double-derived series
    cancels from term scale eps_a^n down to eps''_a^n, so the decimal
    budget grows like n log10(eps_a / eps''_a) plus a fixed reserve.
    ``min_digits`` raises the floor.
    """
    if (saddle_data.a, saddle_data.r) != (a, r):
        raise ValueError("saddle data does not match (a, r)")
    L = float(saddle_data.log_eps_a)
    Lpp = float(saddle_data.log_eps_pp_a)
    omega = float(saddle_data.omega_a)
    phi = float(saddle_data.phi_a)
    dec_gap = max(0.0, (L - Lpp) / math.log(10))
    samples = []
    for n in n_values:
        spec = FormSpec(a=a, r=r, n=n)
        digits = max(int(n * dec_gap) + 64, min_digits)
        wdps = digits + 20
        tol = n * Lpp / math.log(10) - 34
        ctx = PrecisionContext(digits=max(50, digits), guard=20)
        plain = eval_S_direct(spec, PLAIN, ctx, abs_tol_log10=tol, wdps=wdps)
        derived = eval_S_direct(spec, DOUBLE_DERIVED, ctx, abs_tol_log10=tol, wdps=wdps)
        with mp.workdps(wdps):
            log_sn = float(mp.log(abs(plain.value))) / n
            log_spp = float(mp.log(abs(derived.value))) / n if derived.value != 0 else float("-inf")
            cref = float(mp.cos(n * saddle_data.omega_a + saddle_data.phi_a))
            csig = float(mp.cos(n * saddle_data.omega_signed + saddle_data.phi_signed))
            if derived.value != 0 and abs(cref) >= cos_exclusion:
                amp = float(mp.log(abs(derived.value)) - n * saddle_data.log_eps_pp_a
                            - mp.log(abs(cref)))
            else:
                amp = float("nan")
        samples.append(RateSample(
            n=n,
            log_sn_over_n=log_sn,
            log_sppn_over_n=log_spp,
            sign_pp=1 if derived.value > 0 else (-1 if derived.value < 0 else 0),
            cos_reference=cref,
            excluded=abs(cref) < cos_exclusion,
            sign_plain=1 if plain.value > 0 else (-1 if plain.value < 0 else 0),
            cos_signed=csig,
            log_amp_ratio=amp,
        ))
    return RateReport(a=a, r=r, log_eps_a=L, log_eps_pp_a=Lpp,
                      omega_a=omega, phi_a=phi, cos_exclusion=cos_exclusion,
                      samples=tuple(samples))
