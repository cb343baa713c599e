"""Zeros of the orthogonal polynomials and the asymptotic zero density.

Zeros of P_n are the eigenvalues of the symmetric tridiagonal Jacobi
matrix with zero diagonal and off-diagonal sqrt(beta_k); they are located
by bisection on Sturm sign counts of the tridiagonal pivot recurrence,
positive zeros first and the rest by reflection.  The density law
``a_m(l)`` of the scaled zero distribution is evaluated in two equivalent
forms (a terminating 2F1 and the Euler-transformed series) and compared to
empirical zero distributions through the Kolmogorov distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, Tuple

import mpmath
from mpmath import mpf

from . import oracle, scalar
from .errors import InsufficientDataError, ParameterError
from .hankel import RecurrenceTable, recurrence_table
from .moments import WeightParams
from .polynomials import eval_with_derivative
from .scalar import extended, rounded


@dataclass(frozen=True)
class ZeroSet:
    """Sorted zeros of P_n, symmetric about the origin."""

    n: int
    zeros: Tuple[mpf, ...]
    context: WeightParams

    def __post_init__(self):
        if len(self.zeros) != self.n:
            raise ParameterError("zero count must equal the degree")

    def positive_desc(self) -> list[mpf]:
        """Positive zeros, largest first (descending indexing, x_{1,n} largest)."""
        return [z for z in reversed(self.zeros) if z > 0]

    def largest(self) -> mpf:
        return self.zeros[-1]


def _sturm_count(betas: Sequence[mpf], x: mpf, tiny: mpf) -> int:
    """Number of Jacobi-matrix eigenvalues strictly below x."""
    count = 0
    d = -x
    if d == 0:
        d = -tiny
    if d < 0:
        count += 1
    for b in betas:
        d = -x - b / d
        if d == 0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def zeros(betas: RecurrenceTable, n: int, tol) -> ZeroSet:
    """All n zeros of P_n to absolute tolerance ``tol``.

    Needs beta_1..beta_{n-1} > 0.  The j-th positive zero is the
    eigenvalue of rank n - floor(n/2) + j, found by bisection on the Sturm
    count; negative zeros are the reflection and 0 is included for odd n.
    """
    if n < 1:
        raise ParameterError("degree must be positive")
    if betas.N < n - 1:
        raise InsufficientDataError(f"zeros of P_{n} need beta_1..beta_{n - 1}")
    if not betas.definite:
        raise ParameterError("zero computation requires a positive-definite table")
    prec = betas.precision_bits
    with extended(prec):
        tolv = mpf(tol)
        if not tolv > 0:
            raise ParameterError("tolerance must be positive")
        bs = [betas.beta(k) for k in range(1, n)]
        tiny = mpf(2) ** (-(2 * prec))
        q = n // 2
        positive: list[mpf] = []
        if q:
            ub = 2 * mpmath.sqrt(max(bs)) * (1 + mpf(2) ** -10) if bs else mpf(1)
            for j in range(1, q + 1):
                rank = (n - q) + j
                lo, hi = mpf(0), ub
                while hi - lo > tolv:
                    mid = (lo + hi) / 2
                    if _sturm_count(bs, mid, tiny) >= rank:
                        hi = mid
                    else:
                        lo = mid
                positive.append((lo + hi) / 2)
        out = [-z for z in reversed(positive)]
        if n % 2 == 1:
            out.append(mpf(0))
        out.extend(positive)
    return ZeroSet(n=n, zeros=tuple(out), context=betas.params)


def zero_residuals(betas: RecurrenceTable, zset: ZeroSet) -> mpf:
    """max |P_n(z)| / |P_n'(z)| over the computed zeros (Newton residual)."""
    worst = mpf(0)
    with extended(betas.precision_bits):
        for z in zset.zeros:
            p, dp = eval_with_derivative(betas, zset.n, z)
            worst = max(worst, abs(p) / abs(dp))
    return worst


# ---------------------------------------------------------------------------
# Interlacing, monotonicity, extreme-zero bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterlacingReport:
    """Outcome of the interlacing chains around half-degree n."""

    n: int
    k: mpf
    consecutive_even: bool  # zeros of P_{2n-1} separate those of P_{2n}
    consecutive_odd: bool  # zeros of P_{2n} separate those of P_{2n+1}
    chain_even: bool  # x_{l+1,2n} < x_{l,2n-1} < x^{l+k} < x^{l+1} < x_{l,2n}
    chain_odd: bool  # x_{l+1,2n+1} < x_{l,2n} < x^{l+k} < x^{l+1} = x_{l,2n+1}
    equality_deviation: mpf  # max |x_{l,2n}^{lam+1} - x_{l,2n+1}^{lam}|

    @property
    def all_ok(self) -> bool:
        return (
            self.consecutive_even
            and self.consecutive_odd
            and self.chain_even
            and self.chain_odd
        )


def _interlaces(outer: Sequence[mpf], inner: Sequence[mpf]) -> bool:
    """Strict separation of descending positive-zero lists, len inner >= len outer - 1."""
    for i in range(len(outer) - 1):
        if not (outer[i + 1] < inner[i] < outer[i]):
            return False
    return True


def interlacing_check(
    params: WeightParams, n: int, k=0.5, tol=None
) -> InterlacingReport:
    """Check the lambda-shift interlacing chains at half-degree n.

    ``k`` must lie in (0, 1]; at k = 1 the middle inequality of each chain
    degenerates to the stated equality and is tested as such.
    """
    if n < 1:
        raise ParameterError("half-degree n must be positive")
    base = recurrence_table(params, 2 * n + 1)
    with extended(base.precision_bits):
        kv = mpf(k)
        if not (0 < kv <= 1):
            raise ParameterError("shift k must lie in (0, 1]")
        tolv = mpf(tol) if tol is not None else mpf(2) ** (-(base.precision_bits // 2))
        params_k = replace(params, lam=params.lam + kv)
        params_1 = replace(params, lam=params.lam + 1)
        table_k = recurrence_table(params_k, 2 * n + 1)
        table_1 = recurrence_table(params_1, 2 * n + 1)

        def pos(table: RecurrenceTable, deg: int) -> list[mpf]:
            return zeros(table, deg, tolv / 4).positive_desc()

        z2n = pos(base, 2 * n)
        z2n_m1 = pos(base, 2 * n - 1)
        z2n_p1 = pos(base, 2 * n + 1)
        zk_2n = pos(table_k, 2 * n)
        zk_2n_m1 = pos(table_k, 2 * n - 1)
        z1_2n = pos(table_1, 2 * n)
        z1_2n_m1 = pos(table_1, 2 * n - 1)

        sep = 4 * tolv
        consecutive_even = _interlaces(z2n, z2n_m1)
        consecutive_odd = _interlaces(z2n_p1, z2n)

        def middle_ok(lam_zero: mpf, k_zero: mpf, one_zero: mpf) -> bool:
            if kv == 1:
                return lam_zero + sep < k_zero and abs(k_zero - one_zero) <= sep
            return lam_zero + sep < k_zero < one_zero - sep

        chain_even = True
        for ell in range(n - 1):
            ok = (
                z2n[ell + 1] + sep < z2n_m1[ell]
                and middle_ok(z2n_m1[ell], zk_2n_m1[ell], z1_2n_m1[ell])
                and z1_2n_m1[ell] + sep < z2n[ell]
            )
            chain_even = chain_even and ok
        chain_odd = True
        for ell in range(n - 1):
            ok = (
                z2n_p1[ell + 1] + sep < z2n[ell]
                and middle_ok(z2n[ell], zk_2n[ell], z1_2n[ell])
            )
            chain_odd = chain_odd and ok
        equality_dev = max(
            (abs(z1_2n[ell] - z2n_p1[ell]) for ell in range(n)), default=mpf(0)
        )
    return InterlacingReport(
        n=n,
        k=kv,
        consecutive_even=consecutive_even,
        consecutive_odd=consecutive_odd,
        chain_even=chain_even,
        chain_odd=chain_odd,
        equality_deviation=equality_dev,
    )


@dataclass(frozen=True)
class MonotonicityReport:
    direction: str
    grid: Tuple[mpf, ...]
    increasing: Tuple[bool, ...]  # per zero index nu = 1..floor(n/2)

    @property
    def all_ok(self) -> bool:
        return all(self.increasing)


def monotonicity_check(
    params: WeightParams, n: int, direction: str, grid: Iterable, tol=None
) -> MonotonicityReport:
    """Strict increase of each positive zero along a lambda- or t-grid."""
    if direction not in ("lambda", "t"):
        raise ParameterError("direction must be 'lambda' or 't'")
    grid_v = [scalar.real(g, params.precision_bits) for g in grid]
    if sorted(grid_v) != grid_v:
        raise ParameterError("grid values must be ascending")
    rows = []
    prec_used = params.precision_bits
    for g in grid_v:
        p = replace(params, lam=g) if direction == "lambda" else params.with_t(g)
        table = recurrence_table(p, max(n - 1, 1))
        prec_used = max(prec_used, table.precision_bits)
        tolv = mpf(tol) if tol is not None else mpf(2) ** (-(table.precision_bits // 2))
        rows.append(zeros(table, n, tolv).positive_desc())
    q = n // 2
    increasing = []
    with extended(prec_used):
        for nu in range(q):
            ok = all(rows[i][nu] < rows[i + 1][nu] for i in range(len(rows) - 1))
            increasing.append(ok)
    return MonotonicityReport(
        direction=direction, grid=tuple(grid_v), increasing=tuple(increasing)
    )


def extreme_zero_bound(
    betas: RecurrenceTable, n: int, epsilon="1e-8", tol=None
) -> Tuple[mpf, bool]:
    """Wall-Wetzel style bound max sqrt(c_n beta_k), c_n = 4 cos^2(pi/(n+1)) + eps.

    Returns the bound and whether 0 < x_{1,n} < bound holds for the
    computed largest zero.
    """
    if n < 2:
        raise ParameterError("bound needs degree n >= 2")
    prec = betas.precision_bits
    with extended(prec):
        epsv = mpf(epsilon)
        if not epsv > 0:
            raise ParameterError("epsilon must be positive")
        cn = 4 * mpmath.cos(mpmath.pi / (n + 1)) ** 2 + epsv
        bound = max(mpmath.sqrt(cn * betas.beta(k)) for k in range(1, n))
        tolv = mpf(tol) if tol is not None else mpf(2) ** (-(prec // 2))
        largest = zeros(betas, n, tolv).largest()
        ok = bool(0 < largest < bound)
    return rounded(bound, prec), ok


# ---------------------------------------------------------------------------
# Asymptotic zero density
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityLaw:
    """Limiting scaled-zero density for exponent m at ratio ell = n/N."""

    m: int
    ell: mpf
    precision_bits: int = scalar.DEFAULT_PRECISION
    a: mpf = field(init=False)
    c: mpf = field(init=False)

    def __post_init__(self):
        if self.m < 2:
            raise ParameterError("density law needs m >= 2")
        ellv = scalar.real(self.ell, self.precision_bits)
        if not ellv > 0:
            raise ParameterError("ell must be positive")
        object.__setattr__(self, "ell", ellv)
        m = self.m
        with extended(self.precision_bits):
            half = mpf(1) / 2
            a = (mpmath.factorial(m - 1) / scalar.pochhammer(half, m, self.precision_bits)) ** (
                1 / mpf(2 * m)
            ) / 2
            c = 2 * a * ellv ** (1 / mpf(2 * m))
        object.__setattr__(self, "a", rounded(a, self.precision_bits))
        object.__setattr__(self, "c", rounded(c, self.precision_bits))


def density(law: DensityLaw, x) -> mpf:
    """Statement form: (2m / (c pi (2m-1))) sqrt(1-x^2/c^2) 2F1(1, 1-m; 3/2-m; x^2/c^2)."""
    prec = law.precision_bits
    m = law.m
    with extended(prec):
        xv = mpf(x)
        u2 = (xv / law.c) ** 2
        if not u2 < 1:
            raise ParameterError(f"density is supported on (-c, c) with c = {law.c}")
        hyp = scalar.pfq_raw([mpf(1), mpf(1 - m)], [mpf(3) / 2 - m], u2)
        value = 2 * m / (law.c * mpmath.pi * (2 * m - 1)) * mpmath.sqrt(1 - u2) * hyp
    return rounded(value, prec)


def density_proof_form(law: DensityLaw, x) -> mpf:
    """The proof's final form with 2F1(1/2, 1/2-m; 3/2-m; (x/c)^2), equal to
    the statement form by the Euler transformation."""
    prec = law.precision_bits
    m = law.m
    with extended(prec):
        xv = mpf(x)
        u2 = (xv / law.c) ** 2
        if not u2 < 1:
            raise ParameterError(f"density is supported on (-c, c) with c = {law.c}")
        hyp = scalar.pfq_raw([mpf(1) / 2, mpf(1) / 2 - m], [mpf(3) / 2 - m], u2)
        value = 2 * m / (law.c * mpmath.pi * (2 * m - 1)) * hyp
    return rounded(value, prec)


def _density_integrand(law: DensityLaw):
    # quadrature nodes can round onto the support endpoints, where the
    # density extends continuously by 0 for m >= 2
    def f(u: mpf) -> mpf:
        if abs(u) >= law.c:
            return mpf(0)
        return density(law, u)

    return f


def density_normalisation(law: DensityLaw, tol=None) -> mpf:
    """Integral of the density over its full support (should be 1)."""
    prec = law.precision_bits
    with extended(prec):
        tolv = mpf(tol) if tol is not None else mpf(2) ** (-(prec // 2))
        value = oracle.tanh_sinh_finite(_density_integrand(law), -law.c, law.c, tolv)
    return rounded(value, prec)


def density_cdf(law: DensityLaw, x, tol=None) -> mpf:
    """CDF of the density law by adaptive tanh-sinh integration."""
    prec = law.precision_bits
    with extended(prec):
        xv = mpf(x)
        if xv <= -law.c:
            return mpf(0)
        if xv >= law.c:
            return mpf(1)
        tolv = mpf(tol) if tol is not None else mpf(2) ** (-(prec // 2))
        value = oracle.tanh_sinh_finite(_density_integrand(law), -law.c, xv, tolv)
    return rounded(min(max(value, mpf(0)), mpf(1)), prec)


def scaled_zero_compare(
    params: WeightParams, n: int, N: int, tol=None, cdf_tol=None
) -> mpf:
    """Kolmogorov distance between the zeros of P_n scaled by N^(-1/(2m))
    and the density law at ell = n/N."""
    if n < 1 or N < 1:
        raise ParameterError("n and N must be positive")
    table = recurrence_table(params, max(n - 1, 1))
    prec = table.precision_bits
    with extended(prec):
        law = DensityLaw(m=params.m, ell=mpf(n) / N, precision_bits=prec)
        tolv = mpf(tol) if tol is not None else mpf(2) ** (-(prec // 4))
        zset = zeros(table, n, tolv)
        phi = mpf(N) ** (1 / mpf(2 * params.m))
        scaled = [z / phi for z in zset.zeros]
        cdf_tolv = mpf(cdf_tol) if cdf_tol is not None else mpf(10) ** -18
        dist = mpf(0)
        for i, z in enumerate(scaled, start=1):
            F = density_cdf(law, z, cdf_tolv)
            dist = max(dist, abs(F - mpf(i - 1) / n), abs(F - mpf(i) / n))
    return rounded(dist, prec)
