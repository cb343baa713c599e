"""Discrete Painleve-I hierarchy machinery for the recurrence coefficients.

The Hankel betas satisfy the string equation
``2m V_n^(2m) - 2t beta_n = n + (lam + 1/2)(1 - (-1)^n)``
where ``V_n^(2m) = C_{n,n-2}^(2m-2) + beta_n C_{n,n}^(2m-2)`` and the C's
are basis-expansion coefficients of even powers of x.  This module offers
the generic recursion route, explicit closed forms for orders up to 10,
the dP_I / dP_I^(2) displays for m = 2, 3, a forward generator that
solves the string equation for the top beta, the Volterra lattice residual
and the Freud limit constants.  Boundary convention throughout:
``beta_0 = 0`` and every negative index is treated as zero, which makes
the n = 1 equation reproduce ``beta_1 = mu_2 / mu_0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Sequence, Tuple

import mpmath
from mpmath import mpf

from .errors import InsufficientDataError, ParameterError
from .hankel import RecurrenceTable, recurrence_table
from .moments import WeightParams, mu0
from .scalar import extended, pochhammer, rounded

BetaFn = Callable[[int], mpf]


@dataclass(frozen=True)
class VTable:
    """V_n^(2m) for n = 1..n_max over a fixed recurrence table."""

    order: int
    values: Dict[int, mpf]
    betas: RecurrenceTable
    n_max: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n_max", max(self.values) if self.values else 0)

    def value(self, n: int) -> mpf:
        if n not in self.values:
            raise InsufficientDataError(f"V_{n} not in table")
        return self.values[n]


def _v_row_coeffs(beta: BetaFn, n: int, m_power: int) -> Dict[int, mpf]:
    """Coefficients of P_{n-2} and P_n in x^{2 m_power} P_n.

    Same T-map as the full basis expansion, but degrees that cannot come
    back down to n within the remaining steps are dropped, so only the
    stencil beta_{n-(m_power)}..beta_{n+m_power} is ever touched.
    """
    coeffs: Dict[int, mpf] = {n: mpf(1)}
    for step in range(m_power):
        remaining = m_power - step - 1
        nxt: Dict[int, mpf] = {}
        for d, a in coeffs.items():
            if d + 2 <= n + 2 * remaining:
                nxt[d + 2] = nxt.get(d + 2, mpf(0)) + a
            if d <= n + 2 * remaining:
                nxt[d] = nxt.get(d, mpf(0)) + a * (beta(d) + beta(d + 1))
            if d >= 2:
                nxt[d - 2] = nxt.get(d - 2, mpf(0)) + a * beta(d - 1) * beta(d)
        coeffs = nxt
    return coeffs


def v_generic(beta: BetaFn, m: int, n: int) -> mpf:
    """V_n^(2m) from the expansion recursion: C_{n,n-2} + beta_n C_{n,n}."""
    if m < 1:
        raise ParameterError("order m must be at least 1")
    row = _v_row_coeffs(beta, n, m - 1)
    return row.get(n - 2, mpf(0)) + beta(n) * row.get(n, mpf(0))


def v_closed(beta: BetaFn, m: int, n: int) -> mpf:
    """Explicit closed forms of V_n^(2m) for m <= 5."""

    def V2(k):
        return beta(k)

    def V4(k):
        return V2(k) * (V2(k + 1) + V2(k) + V2(k - 1))

    def V6(k):
        return V2(k) * (V4(k + 1) + V4(k) + V4(k - 1) + V2(k + 1) * V2(k - 1))

    def V8(k):
        return (
            V2(k) * (V6(k + 1) + V6(k) + V6(k - 1))
            + V4(k) * V2(k + 1) * V2(k - 1)
            + V2(k + 1) * V2(k) * V2(k - 1) * (V2(k + 2) + V2(k - 2))
        )

    def V10(k):
        prod3 = V2(k + 1) * V2(k) * V2(k - 1)
        return (
            V2(k) * (V8(k + 1) + V8(k) + V8(k - 1))
            + V6(k) * V2(k + 1) * V2(k - 1)
            + prod3 * (V4(k + 2) + V4(k - 2))
            + prod3
            * (
                (V2(k) + V2(k - 1)) * V2(k + 2)
                + (V2(k + 1) + V2(k)) * V2(k - 2)
                + V2(k + 2) * V2(k - 2)
            )
        )

    forms = {1: V2, 2: V4, 3: V6, 4: V8, 5: V10}
    if m not in forms:
        raise ParameterError(f"closed form available for m <= 5 only, got m={m}")
    return forms[m](n)


def c_column(beta: BetaFn, n: int, m_power: int) -> Dict[int, mpf]:
    """C^(2 m_power)_{a,n} for all a, by the column recursion
    C_{a,n}^(2k+2) = b_{n+2} b_{n+1} C_{a,n+2}^(2k) + (b_n + b_{n+1}) C_{a,n}^(2k) + C_{a,n-2}^(2k).

    Independent of the row route; the two are linked by the symmetry
    relation C_{n,n+2l} * (beta_{n+1}...beta_{n+2l}) = C_{n+2l,n}.
    """
    memo: Dict[Tuple[int, int], Dict[int, mpf]] = {}

    def col(k: int, nn: int) -> Dict[int, mpf]:
        if nn < 0:
            return {}
        key = (k, nn)
        if key in memo:
            return memo[key]
        if k == 0:
            out = {nn: mpf(1)}
        else:
            out = {}
            up = col(k - 1, nn + 2)
            mid = col(k - 1, nn)
            down = col(k - 1, nn - 2)
            fac_up = beta(nn + 2) * beta(nn + 1)
            fac_mid = beta(nn) + beta(nn + 1)
            for a, v in up.items():
                out[a] = out.get(a, mpf(0)) + fac_up * v
            for a, v in mid.items():
                out[a] = out.get(a, mpf(0)) + fac_mid * v
            for a, v in down.items():
                out[a] = out.get(a, mpf(0)) + v
        memo[key] = out
        return out

    return col(m_power, n)


def v_table(betas: RecurrenceTable, m: int, n_max: int, route: str = "generic") -> VTable:
    """V_n^(2m) for n = 1..n_max; needs betas through n_max + m - 1."""
    need = n_max + m - 1
    if betas.N < need:
        raise InsufficientDataError(
            f"V table to n={n_max} at order 2m={2 * m} needs beta_1..beta_{need}"
        )
    fn = v_generic if route == "generic" else v_closed
    values = {}
    with extended(betas.precision_bits):
        for n in range(1, n_max + 1):
            values[n] = fn(betas.beta_or_zero, m, n)
    return VTable(order=2 * m, values=values, betas=betas)


def string_rhs(params: WeightParams, n: int) -> mpf:
    parity = 0 if n % 2 == 0 else 2
    return n + (params.lam + mpf(1) / 2) * parity


def string_residual(
    betas: RecurrenceTable, m: int, n: int, route: str = "generic"
) -> mpf:
    """Signed residual of 2m V_n^(2m) - 2t beta_n - n - (lam+1/2)(1-(-1)^n).

    ``route`` selects how V is computed: "generic" (expansion recursion),
    "closed" (explicit closed forms, m <= 5) or "explicit" (the
    dP_I / dP_I^(2) displays written out in betas, m = 2 or 3 only).
    """
    if n < 1:
        raise ParameterError("string equation index must be positive")
    params = betas.params
    with extended(betas.precision_bits):
        b = betas.beta_or_zero
        if route == "explicit":
            lhs = _explicit_lhs(b, m, n, params.t)
        else:
            fn = v_generic if route == "generic" else v_closed
            lhs = 2 * m * fn(b, m, n) - 2 * params.t * b(n)
        value = lhs - string_rhs(params, n)
    return rounded(value, betas.precision_bits)


def _explicit_lhs(b: BetaFn, m: int, n: int, t: mpf) -> mpf:
    if m == 2:
        return 4 * b(n) * (b(n - 1) + b(n) + b(n + 1)) - 2 * t * b(n)
    if m == 3:
        bracket = (
            b(n - 2) * b(n - 1)
            + b(n - 1) ** 2
            + 2 * b(n - 1) * b(n)
            + b(n - 1) * b(n + 1)
            + b(n) ** 2
            + 2 * b(n) * b(n + 1)
            + b(n + 1) ** 2
            + b(n + 1) * b(n + 2)
        )
        return 6 * b(n) * bracket - 2 * t * b(n)
    raise ParameterError(f"explicit dP display exists for m in (2, 3), got m={m}")


class _SeedBetas:
    """beta lookup over a growing dict, for the forward generator."""

    def __init__(self, values: Dict[int, mpf]):
        self.values = values

    def __call__(self, n: int) -> mpf:
        if n <= 0:
            return mpf(0)
        try:
            return self.values[n]
        except KeyError:
            raise InsufficientDataError(f"beta_{n} not yet generated")


def beta_forward(
    params: WeightParams, seeds: Sequence[mpf], n_max: int
) -> RecurrenceTable:
    """Generate betas by solving the string equation for the top index.

    ``seeds`` must hold at least the m-1 betas the first equation needs
    (for m=2 a single beta_1 suffices).  The equation at index n is affine
    in beta_{n+m-1}, so each step is solved from two evaluations.  The
    forward orbit is exponentially unstable, so generation stops with a
    truncation flag once a beta comes out non-positive or drifts from the
    asymptotic envelope by a factor beyond 1e5; Hankel stays authoritative.
    """
    params.require_integrable()
    m = params.m
    if len(seeds) < m - 1:
        raise ParameterError(
            f"need at least {m - 1} seed betas for m={m}, got {len(seeds)}"
        )
    if n_max < len(seeds):
        raise ParameterError("n_max smaller than the seed count")
    prec = params.precision_bits
    truncated = False
    with extended(prec):
        values: Dict[int, mpf] = {}
        for i, s in enumerate(seeds, start=1):
            sv = mpf(s)
            if not sv > 0:
                raise ParameterError(f"seed beta_{i} must be positive, got {sv}")
            values[i] = sv
        b = _SeedBetas(values)
        limit = freud_limit(m, prec)
        top = len(seeds) + 1
        while top <= n_max:
            n_eq = top - (m - 1)
            values[top] = mpf(0)
            v0 = v_generic(b, m, n_eq)
            values[top] = mpf(1)
            v1 = v_generic(b, m, n_eq)
            slope = 2 * m * (v1 - v0)
            target = string_rhs(params, n_eq) + 2 * params.t * b(n_eq)
            new = (target - 2 * m * v0) / slope
            envelope = limit * mpf(top) ** (mpf(1) / m)
            if not new > 0 or abs(new - envelope) > mpf(10) ** 5 * envelope:
                del values[top]
                truncated = True
                break
            values[top] = new
            top += 1
        betas = [values[i] for i in range(1, max(values) + 1)]
        h = [mu0(params)]
        for bn in betas:
            h.append(bn * h[-1])
        betas = [rounded(x, prec) for x in betas]
        h = [rounded(x, prec) for x in h]
    return RecurrenceTable(
        params=params,
        betas=tuple(betas),
        norms=tuple(h),
        method="painleve",
        precision_bits=prec,
        truncated=truncated,
    )


def volterra_residual(params: WeightParams, n: int, h) -> mpf:
    """|central difference of d(beta_n)/dt - beta_n (beta_{n+1} - beta_{n-1})|.

    The derivative is taken over Hankel tables rebuilt at t-h and t+h, so
    the residual is O(h^2) from the difference formula alone.
    """
    if n < 1:
        raise ParameterError("Volterra index must be positive")
    N = n + 1
    base = recurrence_table(params, N)
    prec = base.precision_bits
    with extended(prec):
        hv = mpf(h)
        if not hv > 0:
            raise ParameterError("step h must be positive")
        plus = recurrence_table(params.with_t(params.t + hv).with_precision(prec), N)
        minus = recurrence_table(params.with_t(params.t - hv).with_precision(prec), N)
        deriv = (plus.beta(n) - minus.beta(n)) / (2 * hv)
        rhs = base.beta(n) * (base.beta(n + 1) - base.beta_or_zero(n - 1))
        value = abs(deriv - rhs)
    return rounded(value, prec)


def freud_limit(m: int, prec: int = 256) -> mpf:
    """lim beta_n / n^(1/m) = (1/4) ((m-1)! / (1/2)_m)^(1/m)."""
    if m < 2:
        raise ParameterError("Freud limit needs m >= 2")
    with extended(prec):
        value = (mpmath.factorial(m - 1) / pochhammer(mpf(1) / 2, m, prec + 32)) ** (
            mpf(1) / m
        ) / 4
    return rounded(value, prec)


def mrs_number(m: int, n: int, prec: int = 256) -> mpf:
    """Scaling radius a_n with a_n^2 = ((m-1)! n / (1/2)_m)^(1/m)."""
    if m < 2:
        raise ParameterError("m must be >= 2")
    if n < 1:
        raise ParameterError("n must be positive")
    with extended(prec):
        sq = (mpmath.factorial(m - 1) * n / pochhammer(mpf(1) / 2, m, prec + 32)) ** (
            mpf(1) / m
        )
        value = mpmath.sqrt(sq)
    return rounded(value, prec)
