"""Hankel determinants, parity determinants and the determinant route to beta_n.

The recurrence coefficient comes from ratios of Hankel determinants of the
moment sequence; for a symmetric weight the full determinant factors into
two half-size determinants built from even moments only, and the betas are
computed from those (smaller, better conditioned) factors.  Determinants
are evaluated by fraction-free (Bareiss) elimination at full working
precision, with an adaptive start-precision policy of ``max(256, 24*N)``
bits and doubling retries, since Hankel matrices lose digits roughly
linearly in the index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from .errors import (
    InsufficientDataError,
    ParameterError,
    PrecisionExhaustedError,
    RangeError,
)
from .moments import MomentTable, WeightParams, _mu0_continued, moment_table
from .scalar import extended, rounded


class _EscalationNeeded(Exception):
    """Internal: retry the computation at doubled precision."""


@dataclass(frozen=True)
class RecurrenceTable:
    """beta_1..beta_N and norms h_0..h_N with a provenance tag.

    ``method`` records how the betas were produced: ``hankel`` (determinant
    ratios), ``painleve`` (string-equation forward recursion) or ``oracle``
    (quadrature Stieltjes).  ``definite=False`` marks analytically
    continued tables (lambda <= -1) where positivity is not expected.
    """

    params: WeightParams
    betas: Tuple[mpf, ...]
    norms: Tuple[mpf, ...]
    method: str
    precision_bits: int
    truncated: bool = False
    definite: bool = True
    N: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "N", len(self.betas))
        if self.method not in ("hankel", "painleve", "oracle"):
            raise ParameterError(f"unknown method tag {self.method!r}")
        if len(self.norms) != self.N + 1:
            raise ParameterError("norms must be h_0..h_N")
        if self.definite and not self.truncated:
            for n, b in enumerate(self.betas, start=1):
                if not b > 0:
                    raise RangeError(f"beta_{n} is not positive")

    def beta(self, n: int) -> mpf:
        """beta_n for 1 <= n <= N; beta_0 = 0 by the boundary convention."""
        if n == 0:
            return mpf(0)
        if not 1 <= n <= self.N:
            raise InsufficientDataError(f"beta_{n} not in table (N={self.N})")
        return self.betas[n - 1]

    def beta_or_zero(self, n: int) -> mpf:
        """beta_n with every out-of-range low index treated as zero."""
        if n <= 0:
            return mpf(0)
        return self.beta(n)

    def norm(self, n: int) -> mpf:
        """h_n for 0 <= n <= N."""
        if not 0 <= n <= self.N:
            raise InsufficientDataError(f"h_{n} not in table (N={self.N})")
        return self.norms[n]


def _bareiss_minors(rows: list[list[mpf]]) -> list[mpf]:
    """Leading principal minors D_1..D_n by pivot-free Bareiss elimination.

    Requires a positive definite matrix; a non-positive pivot signals that
    the working precision is exhausted.
    """
    n = len(rows)
    minors = []
    prev = mpf(1)
    for k in range(n):
        pivot = rows[k][k]
        if not pivot > 0:
            raise _EscalationNeeded(f"non-positive pivot at step {k}")
        minors.append(pivot)
        for i in range(k + 1, n):
            rik = rows[i][k]
            row_i = rows[i]
            row_k = rows[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - rik * row_k[j]) / prev
        prev = pivot
    return minors


def _bareiss_det(rows: list[list[mpf]]) -> mpf:
    """General determinant with partial pivoting (used off the definite path)."""
    n = len(rows)
    if n == 0:
        return mpf(1)
    sign = 1
    prev = mpf(1)
    for k in range(n - 1):
        p = max(range(k, n), key=lambda i: abs(rows[i][k]))
        if rows[p][k] == 0:
            return mpf(0)
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            for j in range(k + 1, n):
                rows[i][j] = (pivot * rows[i][j] - rik * rows[k][j]) / prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def _full_matrix(moments: MomentTable, n: int) -> list[list[mpf]]:
    zero = mpf(0)
    return [
        [moments.even((j + k) // 2) if (j + k) % 2 == 0 else zero for k in range(n)]
        for j in range(n)
    ]


def hankel_det(moments: MomentTable, n: int) -> mpf:
    """Full Hankel determinant Delta_n = det[mu_{j+k}], with Delta_0 = 1."""
    if n < 0:
        return mpf(0)
    if n == 0:
        return mpf(1)
    if moments.K < n - 1:
        raise InsufficientDataError(
            f"Delta_{n} needs moments through mu_{2 * (n - 1)}, table has K={moments.K}"
        )
    prec = moments.params.precision_bits
    with extended(prec):
        value = _bareiss_det(_full_matrix(moments, n))
    return rounded(value, prec)


def _parity_matrix(moments: MomentTable, n: int, offset: int) -> list[list[mpf]]:
    return [[moments.even(j + k + offset) for k in range(n)] for j in range(n)]


def parity_dets(moments: MomentTable, n: int) -> Tuple[mpf, mpf]:
    """(A_n, B_n): Hankel determinants of the even-moment subsequences
    starting at mu_0 and mu_2 respectively; A_0 = B_0 = 1."""
    if n < 0:
        raise ParameterError(f"parity determinant index must be nonnegative, got {n}")
    if n == 0:
        return mpf(1), mpf(1)
    if moments.K < 2 * n - 1:
        raise InsufficientDataError(
            f"(A_{n}, B_{n}) need moments through mu_{2 * (2 * n - 1)}, table has K={moments.K}"
        )
    prec = moments.params.precision_bits
    with extended(prec):
        a = _bareiss_det(_parity_matrix(moments, n, 0))
        b = _bareiss_det(_parity_matrix(moments, n, 1))
    return rounded(a, prec), rounded(b, prec)


def _parity_minor_lists(
    moments: MomentTable, size_a: int, size_b: int
) -> Tuple[list[mpf], list[mpf]]:
    """A_1..A_{size_a} and B_1..B_{size_b} from two Bareiss passes."""
    with extended(moments.params.precision_bits):
        a = _bareiss_minors(_parity_matrix(moments, size_a, 0)) if size_a else []
        b = _bareiss_minors(_parity_matrix(moments, size_b, 1)) if size_b else []
    return a, b


def _beta_parity(a: Sequence[mpf], b: Sequence[mpf], n: int) -> mpf:
    """beta_n from parity determinants; lists hold A_1.., B_1.. (index 0 = order 1)."""

    def A(k: int) -> mpf:
        return mpf(1) if k == 0 else a[k - 1]

    def B(k: int) -> mpf:
        return mpf(1) if k == 0 else b[k - 1]

    if n % 2 == 0:
        k = n // 2
        return A(k + 1) * B(k - 1) / (A(k) * B(k))
    k = (n - 1) // 2
    return A(k) * B(k + 1) / (A(k + 1) * B(k))


def beta_from_hankel(moments: MomentTable, n: int, verify: bool = False) -> mpf:
    """beta_n from the parity determinants, optionally cross-checked against
    the full-determinant formula Delta_{n+1} Delta_{n-1} / Delta_n^2."""
    if n < 1:
        raise ParameterError(f"beta index must be positive, got {n}")
    prec = moments.params.precision_bits
    size_a = n // 2 + 1
    size_b = (n - 1) // 2 + 1
    with extended(prec):
        a, b = _parity_minor_lists(moments, size_a, size_b)
        value = _beta_parity(a, b, n)
        if not value > 0:
            raise RangeError(f"beta_{n} evaluated non-positive: precision exhausted")
        if verify:
            full = (
                hankel_det(moments, n + 1)
                * hankel_det(moments, n - 1)
                / hankel_det(moments, n) ** 2
            )
            if abs(full - value) > abs(value) * mpf(2) ** (-(prec // 2)):
                raise RangeError(
                    f"parity and full determinant routes disagree at beta_{n}"
                )
    return rounded(value, prec)


def start_precision(params: WeightParams, N: int) -> int:
    """Adaptive policy start: Hankel digit loss grows about linearly in N."""
    return max(256, 24 * N, params.precision_bits)


def recurrence_table(
    params: WeightParams,
    N: int,
    verify: bool = False,
    max_retries: int = 3,
) -> RecurrenceTable:
    """beta_1..beta_N and h_0..h_N from Hankel determinants.

    Starts at ``max(256, 24N)`` bits and doubles on positivity or
    cross-check failure, at most ``max_retries`` times.
    """
    params.require_integrable()
    if N < 0:
        raise ParameterError(f"table length must be nonnegative, got {N}")
    prec = start_precision(params, N)
    for attempt in range(max_retries + 1):
        try:
            return _build_hankel_table(params.with_precision(prec), N, verify)
        except _EscalationNeeded:
            prec *= 2
    raise PrecisionExhaustedError(
        f"recurrence table for N={N} failed after {max_retries} precision doublings"
    )


def _build_hankel_table(params: WeightParams, N: int, verify: bool) -> RecurrenceTable:
    prec = params.precision_bits
    moments = moment_table(params, max(N, 1))
    size_a = N // 2 + 1
    size_b = (N - 1) // 2 + 1 if N >= 1 else 0
    with extended(prec):
        a, b = _parity_minor_lists(moments, size_a, size_b)
        betas = []
        for n in range(1, N + 1):
            val = _beta_parity(a, b, n)
            if not val > 0:
                raise _EscalationNeeded(f"beta_{n} non-positive")
            betas.append(val)
        if verify:
            check_tol = mpf(2) ** (-(prec // 2))
            for n in range(1, min(N, 12) + 1):
                full = (
                    hankel_det(moments, n + 1)
                    * hankel_det(moments, n - 1)
                    / hankel_det(moments, n) ** 2
                )
                if abs(full - betas[n - 1]) > abs(full) * check_tol:
                    raise _EscalationNeeded(f"parity/full cross-check failed at beta_{n}")
        h = [moments.even(0)]
        for bn in betas:
            h.append(bn * h[-1])
        betas = [rounded(x, prec) for x in betas]
        h = [rounded(x, prec) for x in h]
    return RecurrenceTable(
        params=params,
        betas=tuple(betas),
        norms=tuple(h),
        method="hankel",
        precision_bits=prec,
    )


def formal_recurrence_table(params: WeightParams, N: int) -> RecurrenceTable:
    """Recurrence table from analytically continued moments (lambda <= -1).

    Used by the quasi-orthogonality checks for lambda in (-2, -1): the
    determinant machinery still defines the monic family, but moments and
    betas need not be positive, so pivoted determinants are used and no
    positivity validation happens.
    """
    if not -2 < params.lam:
        raise ParameterError(f"lambda must exceed -2, got {params.lam}")
    prec = start_precision(params, N)
    wp = params.with_precision(prec)
    with extended(prec):
        mus = [_mu0_continued(wp.shifted(j)) for j in range(N + 1)]

        def A(k: int) -> mpf:
            return _bareiss_det([[mus[i + j] for j in range(k)] for i in range(k)])

        def B(k: int) -> mpf:
            return _bareiss_det([[mus[i + j + 1] for j in range(k)] for i in range(k)])

        betas = []
        for n in range(1, N + 1):
            if n % 2 == 0:
                k = n // 2
                betas.append(A(k + 1) * B(k - 1) / (A(k) * B(k)))
            else:
                k = (n - 1) // 2
                betas.append(A(k) * B(k + 1) / (A(k + 1) * B(k)))
        h = [mus[0]]
        for bn in betas:
            h.append(bn * h[-1])
        betas = [rounded(x, prec) for x in betas]
        h = [rounded(x, prec) for x in h]
    return RecurrenceTable(
        params=wp,
        betas=tuple(betas),
        norms=tuple(h),
        method="hankel",
        precision_bits=prec,
        definite=False,
    )


def beta_tderivative_check(params: WeightParams, n: int, h: mpf | float) -> mpf:
    """Residual of the Wronskian identities beta_{2n} = d/dt ln(B_n/A_n) and
    beta_{2n+1} = d/dt ln(A_{n+1}/B_n), by central differences in t.

    Returns the larger of the two residuals; both scale as O(h^2).
    """
    params.require_integrable()
    if n < 0:
        raise ParameterError(f"index must be nonnegative, got {n}")
    prec = params.precision_bits
    with extended(prec):
        hv = mpf(h)
        if not hv > 0:
            raise ParameterError("step h must be positive")
        N = 2 * n + 1
        table0 = recurrence_table(params, N)

        def log_ratios(t_shift: mpf) -> Tuple[mpf, mpf]:
            mt = moment_table(params.with_t(params.t + t_shift).with_precision(prec), 2 * n + 1)
            a_n, b_n = parity_dets(mt, n)
            a_n1, _ = parity_dets(mt, n + 1)
            return mpmath.log(b_n / a_n), mpmath.log(a_n1 / b_n)

        even_p, odd_p = log_ratios(hv)
        even_m, odd_m = log_ratios(-hv)
        even_res = abs((even_p - even_m) / (2 * hv) - table0.beta_or_zero(2 * n))
        odd_res = abs((odd_p - odd_m) / (2 * hv) - table0.beta(2 * n + 1))
        value = max(even_res, odd_res)
    return rounded(value, prec)


def stieltjes_oracle_table(params: WeightParams, N: int, spec=None) -> RecurrenceTable:
    """Independent betas by the Stieltjes procedure over quadrature norms.

    beta_n = h_n / h_{n-1} with h_n = <P_n, P_n> computed by the oracle;
    the polynomials are built incrementally from the betas already found.
    """
    from . import oracle
    from .polynomials import MonicPolynomial

    params.require_integrable()
    prec = params.precision_bits
    with extended(prec):
        coeffs_prev = (mpf(1),)
        coeffs_cur = (mpf(0), mpf(1))
        betas: list[mpf] = []
        h = [
            oracle.inner_product(
                MonicPolynomial(0, (mpf(1),), "even", params),
                MonicPolynomial(0, (mpf(1),), "even", params),
                params,
                spec,
            )
        ]
        for n in range(1, N + 1):
            pn = MonicPolynomial(n, coeffs_cur, "even" if n % 2 == 0 else "odd", params)
            h.append(oracle.inner_product(pn, pn, params, spec))
            betas.append(h[n] / h[n - 1])
            nxt = [mpf(0)] * (n + 2)
            for i, c in enumerate(coeffs_cur):
                nxt[i + 1] += c
            for i, c in enumerate(coeffs_prev):
                nxt[i] -= betas[-1] * c
            coeffs_prev, coeffs_cur = coeffs_cur, tuple(nxt)
        betas = [rounded(x, prec) for x in betas]
        h = [rounded(x, prec) for x in h]
    return RecurrenceTable(
        params=params,
        betas=tuple(betas),
        norms=tuple(h),
        method="oracle",
        precision_bits=prec,
    )
