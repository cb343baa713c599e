"""Weight evaluation and moments of the generalised higher-order Freud weight.

The weight is ``|x|^(2*lam+1) * exp(t*x^2 - x^(2*m))`` on the real line with
``m >= 2`` and ``lam > -1``.  The first moment is a finite partition sum of
generalised hypergeometric 2Fm values at argument ``(t/m)^m``; every even
moment is a lambda-shift of the first one, so no numerical differentiation
in ``t`` ever happens here.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Tuple

import mpmath
from mpmath import mpf

from . import scalar
from .errors import ParameterError, PoleError, RangeError
from .scalar import DEFAULT_PRECISION, RealLike, extended, real, rounded


@dataclass(frozen=True)
class WeightParams:
    """The triple (m, t, lam) defining the weight, plus working precision.

    ``lam > -1`` is required for the weight to have moments.  Values in
    (-2, -1) are accepted so that the analytically continued moment
    formula can drive the quasi-orthogonality checks; every operation
    that needs a genuine weight enforces ``lam > -1`` itself.
    """

    m: int
    t: mpf
    lam: mpf
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ParameterError(f"m must be an integer >= 2, got {self.m!r}")
        scalar.check_precision(self.precision_bits)
        object.__setattr__(self, "t", real(self.t, self.precision_bits))
        object.__setattr__(self, "lam", real(self.lam, self.precision_bits))
        if not self.lam > -2:
            raise ParameterError(f"lambda must exceed -2, got {self.lam}")

    def require_integrable(self) -> None:
        if not self.lam > -1:
            raise ParameterError(
                f"operation requires lambda > -1 for moment existence, got {self.lam}"
            )

    def shifted(self, dlam: int) -> "WeightParams":
        """Same weight with ``lam`` shifted by an integer."""
        # the sum must not round at the ambient (possibly lower) precision
        with extended(self.precision_bits):
            return replace(self, lam=self.lam + dlam)

    def with_t(self, t: RealLike) -> "WeightParams":
        return replace(self, t=real(t, self.precision_bits))

    def with_precision(self, bits: int) -> "WeightParams":
        return replace(self, precision_bits=bits)


@dataclass(frozen=True)
class MomentTable:
    """Even moments mu_0, mu_2, ..., mu_{2K} at fixed parameters."""

    params: WeightParams
    even_moments: Tuple[mpf, ...]
    K: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "K", len(self.even_moments) - 1)
        for i, mu in enumerate(self.even_moments):
            if not mu > 0:
                raise RangeError(
                    f"even moment mu_{2 * i} is not positive; precision exhausted?"
                )

    def even(self, i: int) -> mpf:
        """mu_{2i}."""
        if i < 0 or i > self.K:
            raise ParameterError(f"moment index 2*{i} outside table (K={self.K})")
        return self.even_moments[i]

    def moment(self, k: int) -> mpf:
        """mu_k, with odd moments exactly zero."""
        if k % 2:
            return mpf(0)
        return self.even(k // 2)


def weight_eval(params: WeightParams, x: RealLike) -> mpf:
    """Evaluate the weight at ``x``; the value at 0 is taken as a limit."""
    prec = params.precision_bits
    with extended(prec):
        xv = mpf(x)
        expo = 2 * params.lam + 1
        if xv == 0:
            if expo > 0:
                return mpf(0)
            if expo == 0:
                return mpf(1)
            return mpf("inf")
        value = abs(xv) ** expo * mpmath.exp(params.t * xv**2 - xv ** (2 * params.m))
    return rounded(value, prec)


def _mu0_continued(params: WeightParams) -> mpf:
    """Partition-sum first moment, valid wherever the Gamma factors are finite.

    Runs at the current context precision and does not check lam > -1, so
    it also serves lam in (-2, -1) where the formula is the analytic
    continuation of the integral.
    """
    m = params.m
    t = params.t
    lam = params.lam
    z = (t / m) ** m
    term_limit = mpf(2) ** params.precision_bits
    tpow = mpf(1)  # t^(k-1)
    fact = mpf(1)  # (k-1)!
    total = mpf(0)
    for k in range(1, m + 1):
        head = (lam + k) / m
        if scalar.is_nonpositive_int(head):
            raise PoleError(f"gamma pole in moment formula at (lambda+{k})/m = {head}")
        lower = [mpf(k + j) / m for j in range(m)]
        hyp = scalar.pfq_raw([head, mpf(1)], lower, z, term_limit=term_limit)
        total += tpow / fact * mpmath.gamma(head) * hyp
        tpow *= t
        fact *= k
    return total / m


def mu0(params: WeightParams) -> mpf:
    """First moment mu_0(t; lam, m) > 0 via the hypergeometric partition sum."""
    params.require_integrable()
    prec = params.precision_bits
    with extended(prec):
        value = _mu0_continued(params)
    if not value > 0:
        raise RangeError("first moment evaluated non-positive; precision exhausted?")
    return rounded(value, prec)


def moment(params: WeightParams, k: int) -> mpf:
    """k-th moment; odd k gives exact zero, even k = 2j uses the lambda shift
    mu_{2j}(t; lam) = mu_0(t; lam + j)."""
    if k < 0:
        raise ParameterError(f"moment order must be nonnegative, got {k}")
    if k % 2:
        return mpf(0)
    return mu0(params.shifted(k // 2))


def moment_table(params: WeightParams, K: int) -> MomentTable:
    """Even moments mu_0 ... mu_{2K}."""
    params.require_integrable()
    if K < 0:
        raise ParameterError(f"K must be nonnegative, got {K}")
    prec = params.precision_bits
    values = []
    with extended(prec):
        for j in range(K + 1):
            values.append(rounded(_mu0_continued(params.shifted(j)), prec))
    return MomentTable(params=params, even_moments=tuple(values))


def moment_ode_residual(params: WeightParams) -> mpf:
    """Residual of m*mu_{2m} - t*mu_2 - (lam+1)*mu_0, which vanishes because
    the first moment satisfies an m-th order ODE in t."""
    params.require_integrable()
    prec = params.precision_bits
    with extended(prec):
        mu_0 = _mu0_continued(params)
        mu_2 = _mu0_continued(params.shifted(1))
        mu_2m = _mu0_continued(params.shifted(params.m))
        residual = params.m * mu_2m - params.t * mu_2 - (params.lam + 1) * mu_0
    return rounded(residual, prec)
