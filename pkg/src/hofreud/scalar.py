"""Arbitrary-precision scalar kernel: gamma, Pochhammer and pFq series.

All quantities are ``mpmath.mpf`` values.  Precision is handled by binary
precision contexts: every public operation accepts a ``prec`` (bits)
argument, runs internally with guard bits on top of it, and rounds the
result back to ``prec``.  Operations are pure; nothing here mutates global
state outside the scoped precision contexts.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterable, Sequence, Union

from mpmath import mp, mpf, workprec
import mpmath

from .errors import (
    ConvergenceError,
    DivergenceError,
    ParameterError,
    PoleError,
    RangeError,
)

DEFAULT_PRECISION = 256
MIN_PRECISION = 64
GUARD_BITS = 32

RealLike = Union[int, float, str, mpf]


def check_precision(bits: int) -> int:
    if not isinstance(bits, int) or bits < MIN_PRECISION:
        raise ParameterError(f"precision must be an integer >= {MIN_PRECISION} bits, got {bits!r}")
    return bits


@contextmanager
def extended(prec: int, guard: int = GUARD_BITS):
    """Precision context at ``prec + guard`` bits."""
    with workprec(prec + guard):
        yield


def rounded(x: mpf, prec: int) -> mpf:
    """Round ``x`` to ``prec`` bits."""
    with workprec(prec):
        return +x


def real(value: RealLike, prec: int = DEFAULT_PRECISION) -> mpf:
    """Convert ``value`` to an mpf at ``prec`` bits.

    Strings are parsed as decimal literals; ints are exact; floats are
    taken at their exact binary value.
    """
    with workprec(prec):
        return mpf(value)


def is_nonpositive_int(x: mpf) -> bool:
    return mpmath.isint(x) and x <= 0


def gamma(x: RealLike, prec: int = DEFAULT_PRECISION) -> mpf:
    """Gamma function at ``prec`` bits; raises at the poles 0, -1, -2, ..."""
    check_precision(prec)
    with extended(prec):
        xv = mpf(x)
        if is_nonpositive_int(xv):
            raise PoleError(f"gamma pole at {xv}")
        value = mpmath.gamma(xv)
    return rounded(value, prec)


def pochhammer(a: RealLike, k: int, prec: int = DEFAULT_PRECISION) -> mpf:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1."""
    check_precision(prec)
    if k < 0:
        raise ParameterError(f"pochhammer order must be nonnegative, got {k}")
    with extended(prec):
        av = mpf(a)
        out = mpf(1)
        for i in range(k):
            out *= av + i
    return rounded(out, prec)


def _series_termination(a: Sequence[mpf]) -> int | None:
    """Index of the last nonzero term for a terminating series, else None."""
    stops = [int(-ai) for ai in a if is_nonpositive_int(ai)]
    return min(stops) if stops else None


def pfq_raw(
    a: Sequence[mpf],
    b: Sequence[mpf],
    z: mpf,
    tol: mpf | None = None,
    max_terms: int = 200_000,
    term_limit: mpf | None = None,
) -> mpf:
    """Sum the pFq series at the *current* context precision.

    Truncates once three consecutive terms fall below ``tol`` times the
    partial sum in magnitude; the three-in-a-row rule guards against a
    term passing through zero.  ``term_limit`` bounds the magnitude any
    single term may reach before a RangeError is raised.
    """
    k_term = _series_termination(a)
    for bj in b:
        if is_nonpositive_int(bj):
            pole_at = int(1 - bj)
            if k_term is None or pole_at <= k_term:
                raise ParameterError(
                    f"lower parameter {bj} hits a pole before the series terminates"
                )
    if k_term is None:
        if len(a) > len(b) + 1 and z != 0:
            raise DivergenceError(
                f"{len(a)}F{len(b)} diverges for nonzero argument without termination"
            )
        if len(a) == len(b) + 1 and abs(z) >= 1:
            raise DivergenceError(
                f"{len(a)}F{len(b)} requires |z| < 1, got |z| = {abs(z)}"
            )
    if tol is None:
        tol = mpf(2) ** (-mp.prec)

    term = mpf(1)
    total = mpf(1)
    small = 0
    k = 0
    while True:
        if k_term is not None and k >= k_term:
            break
        num = mpf(1)
        for ai in a:
            num *= ai + k
        den = mpf(1)
        for bj in b:
            den *= bj + k
        term = term * num / den * z / (k + 1)
        if term_limit is not None and abs(term) > term_limit:
            raise RangeError(
                "series term magnitude exceeds the working range; "
                "raise the precision or reduce |t|"
            )
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        k += 1
        if k > max_terms:
            raise ConvergenceError(f"pFq series did not settle within {max_terms} terms")
    return total


def pfq(
    a: Iterable[RealLike],
    b: Iterable[RealLike],
    z: RealLike,
    tol: RealLike | None = None,
    prec: int = DEFAULT_PRECISION,
    term_limit: RealLike | None = None,
) -> mpf:
    """Generalised hypergeometric series pFq(a; b; z) at ``prec`` bits."""
    check_precision(prec)
    with extended(prec):
        av = [mpf(x) for x in a]
        bv = [mpf(x) for x in b]
        zv = mpf(z)
        tolv = mpf(tol) if tol is not None else None
        limv = mpf(term_limit) if term_limit is not None else None
        value = pfq_raw(av, bv, zv, tol=tolv, term_limit=limv)
    return rounded(value, prec)
