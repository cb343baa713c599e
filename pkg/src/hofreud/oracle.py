"""Independent quadrature ground truth for moments and inner products.

Double-exponential (tanh-sinh) quadrature with level doubling.  Half-line
integrals against ``s^lam * exp(t*s - s^m)`` are split at ``split_point``:
the head segment keeps the ``s^lam`` endpoint singularity, which tanh-sinh
absorbs natively, and the tail is mapped with ``u = s^m`` so the integrand
decays like a plain exponential before the exp-sinh map is applied.

Nothing in this module touches the hypergeometric moment code, so values
produced here are an independent route for every identity test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import mpmath
from mpmath import mp, mpf

from .errors import ConvergenceError, ParameterError
from .moments import WeightParams
from .scalar import extended, rounded


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy contract for the oracle."""

    target_tol: Optional[mpf] = None
    max_levels: int = 12
    split_point: float = 1.0

    def __post_init__(self):
        if self.target_tol is not None and not mpf(self.target_tol) > 0:
            raise ParameterError("target_tol must be positive")
        if self.max_levels < 4:
            raise ParameterError("max_levels must be at least 4")

    def tolerance(self, prec: int) -> mpf:
        if self.target_tol is not None:
            return mpf(self.target_tol)
        return mpf(2) ** -(prec // 2 + 16)


def _doubling_quadrature(
    pair: Callable[[mpf], mpf],
    center: mpf,
    target_tol: mpf,
    max_levels: int,
    trace: Optional[list] = None,
) -> mpf:
    """Trapezoidal sum of ``center + sum_j pair(j*h)`` with step halving.

    ``pair(u)`` must return the combined contribution of the nodes at +u
    and -u including the map weight.  New levels only visit odd multiples
    of the refined step; node loops stop after three consecutive
    negligible contributions.
    """
    cutoff = mpf(2) ** (-(mp.prec + 8))

    def sweep(h: mpf, only_odd: bool) -> mpf:
        total = mpf(0)
        tiny_run = 0
        j = 1 if only_odd else 1
        step = 2 if only_odd else 1
        while True:
            c = pair(j * h)
            total += c
            if abs(c) <= cutoff * (1 + abs(total) + abs(center)):
                tiny_run += 1
                if tiny_run >= 3:
                    return total
            else:
                tiny_run = 0
            j += step
            if j > (1 << 24):
                raise ConvergenceError("double-exponential node loop failed to terminate")

    h = mpf(1)
    estimate = h * (center + sweep(h, only_odd=False))
    if trace is not None:
        trace.append(estimate)
    prev = None
    for _level in range(1, max_levels + 1):
        h = h / 2
        estimate = estimate / 2 + h * sweep(h, only_odd=True)
        if trace is not None:
            trace.append(estimate)
        if prev is not None:
            err = abs(estimate - prev)
            ok = err <= target_tol * abs(estimate) or (estimate == 0 and err <= target_tol)
            if ok:
                return estimate
        prev = estimate
    raise ConvergenceError(
        f"quadrature did not reach relative {mpmath.nstr(target_tol, 5)} "
        f"in {max_levels} levels"
    )


def tanh_sinh_finite(
    f: Callable[[mpf], mpf],
    a: mpf,
    b: mpf,
    target_tol: mpf,
    max_levels: int = 12,
    trace: Optional[list] = None,
) -> mpf:
    """Integrate f over (a, b), tolerating endpoint singularities.

    Runs at the caller's context precision.  Nodes are addressed by their
    distance to the nearer endpoint so that endpoint behaviour like
    ``(x-a)^lam`` is sampled without cancellation.
    """
    half_pi = +mpmath.pi / 2
    width = b - a
    mid = (a + b) / 2
    half_width = width / 2

    def pair(u: mpf) -> mpf:
        v = half_pi * mpmath.sinh(u)
        e2 = mpmath.exp(-2 * v)
        q = e2 / (1 + e2)  # (1 - tanh v)/2 in (0, 1/2), exact near endpoints
        w = half_pi * mpmath.cosh(u) / mpmath.cosh(v) ** 2
        d = width * q
        return w * half_width * (f(a + d) + f(b - d))

    center = half_pi * f(mid) * half_width
    return _doubling_quadrature(pair, center, target_tol, max_levels, trace)


def exp_sinh_halfline(
    g: Callable[[mpf], mpf],
    a: mpf,
    target_tol: mpf,
    max_levels: int = 12,
) -> mpf:
    """Integrate g over (a, infinity) for integrands with exponential decay."""
    half_pi = +mpmath.pi / 2

    def pair(u: mpf) -> mpf:
        out = mpf(0)
        for su in (u, -u):
            v = half_pi * mpmath.sinh(su)
            x = mpmath.exp(v)
            w = half_pi * mpmath.cosh(su) * x
            out += w * g(a + x)
        return out

    center = half_pi * g(a + 1)
    return _doubling_quadrature(pair, center, target_tol, max_levels)


def integrate_halfline(
    f: Callable[[mpf], mpf],
    params: WeightParams,
    spec: QuadratureSpec | None = None,
) -> mpf:
    """Integral of f(s) * s^lam * exp(t*s - s^m) over (0, infinity).

    This is the s-substituted form of the weight: a full-line integral of
    an even function g against the weight equals this integral with
    ``f(s) = g(sqrt(s))``.
    """
    params.require_integrable()
    spec = spec or QuadratureSpec()
    prec = params.precision_bits
    m, t, lam = params.m, params.t, params.lam
    with extended(prec, guard=64):
        tol = spec.tolerance(prec)
        split = mpf(spec.split_point)
        if not split > 0:
            raise ParameterError("split_point must be positive")

        def head(s: mpf) -> mpf:
            return f(s) * s**lam * mpmath.exp(t * s - s**m)

        head_val = tanh_sinh_finite(head, mpf(0), split, tol, spec.max_levels)

        # tail after u = s^m: s = u^(1/m), ds = u^(1/m-1)/m du
        def tail_integrand(u: mpf) -> mpf:
            s = mpmath.root(u, m)
            return f(s) * s ** (lam + 1 - m) * mpmath.exp(t * s - u) / m

        tail_val = exp_sinh_halfline(tail_integrand, split**m, tol, spec.max_levels)
        value = head_val + tail_val
    return rounded(value, prec)


def oracle_moment(params: WeightParams, k: int, spec: QuadratureSpec | None = None) -> mpf:
    """mu_k by quadrature; odd k returns exact zero by symmetry."""
    if k < 0:
        raise ParameterError(f"moment order must be nonnegative, got {k}")
    if k % 2:
        return mpf(0)
    j = k // 2
    return integrate_halfline(lambda s: s**j, params, spec)


def _horner(coeffs: Sequence[mpf], x: mpf) -> mpf:
    out = mpf(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def inner_product(p, q, params: WeightParams, spec: QuadratureSpec | None = None) -> mpf:
    """Weighted inner product of two polynomials over the real line.

    Mixed parity gives exact zero without quadrature.  Otherwise the odd
    part of the product integrates to zero by symmetry, and the even part
    folds onto the half line through s = x^2.
    """
    if p.parity is not None and q.parity is not None and p.parity != q.parity:
        return mpf(0)
    with extended(params.precision_bits, guard=64):
        prod = [mpf(0)] * (p.degree + q.degree + 1)
        for i, ci in enumerate(p.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(q.coeffs):
                if cj == 0:
                    continue
                prod[i + j] += ci * cj
        s_coeffs = [prod[i] for i in range(0, len(prod), 2)]
        return integrate_halfline(lambda s: _horner(s_coeffs, s), params, spec)
