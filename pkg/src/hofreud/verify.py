"""Named verification suites, one per module invariant family.

Each suite re-derives one family of the weight's structural identities and
reports the worst residual against a pinned tolerance.  The CLI ``verify``
command maps onto these one-to-one; the pytest acceptance module runs the
same identities at their full stated scales.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import mpmath
from mpmath import mpf

from . import painleve, polynomials, zeros
from .errors import ParameterError
from .hankel import hankel_det, parity_dets, recurrence_table
from .moments import WeightParams, moment_ode_residual, moment_table, mu0
from .scalar import extended, real


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    m: int
    passed: bool
    max_residual: Optional[mpf]
    detail: str


def _params(m: int, t, lam, bits: Optional[int], default_t, default_lam) -> WeightParams:
    return WeightParams(
        m=m,
        t=t if t is not None else default_t,
        lam=lam if lam is not None else default_lam,
        precision_bits=bits or 256,
    )


def suite_moments_ode(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """ODE identity m*mu_{2m} - t*mu_2 - (lam+1)*mu_0 = 0 on the desk grid."""
    ts = [t] if t is not None else ["-1", "0", "1.5"]
    lams = [lam] if lam is not None else ["-0.5", "0.5", "2"]
    worst = mpf(0)
    for tv in ts:
        for lv in lams:
            p = _params(m, tv, lv, bits, "0", "0")
            with extended(p.precision_bits):
                worst = max(worst, abs(moment_ode_residual(p)) / mu0(p))
    tol = mpf(10) ** -30
    return SuiteResult(
        "moments-ode", m, worst < tol, worst, f"relative ODE residual over grid, tol {tol}"
    )


def suite_hankel_parity(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Delta_{2n} = A_n B_n, Delta_{2n+1} = A_{n+1} B_n, and the h_n ratios."""
    p = _params(m, t, lam, bits, "0.7", "0.25")
    table = recurrence_table(p, 13)
    mt = moment_table(p.with_precision(table.precision_bits), 14)
    worst = mpf(0)
    with extended(table.precision_bits):
        tol = mpf(2) ** (-(table.precision_bits // 2))
        for n in range(1, 7):
            a_n, b_n = parity_dets(mt, n)
            a_n1, _ = parity_dets(mt, n + 1)
            d_even = hankel_det(mt, 2 * n)
            d_odd = hankel_det(mt, 2 * n + 1)
            worst = max(worst, abs(d_even - a_n * b_n) / abs(d_even))
            worst = max(worst, abs(d_odd - a_n1 * b_n) / abs(d_odd))
        for n in range(1, 13):
            ratio = hankel_det(mt, n + 1) / hankel_det(mt, n)
            worst = max(worst, abs(ratio - table.norm(n)) / table.norm(n))
    return SuiteResult(
        "hankel-parity", m, worst < tol, worst, f"parity product and norm ratios, tol 2^-{table.precision_bits // 2}"
    )


def suite_string(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """String equation residuals for Hankel betas, every available route."""
    ts = [t] if t is not None else ["0", "1.5"]
    lams = [lam] if lam is not None else ["-0.5", "0.5"]
    n_max = 12
    worst = mpf(0)
    for tv in ts:
        for lv in lams:
            p = _params(m, tv, lv, bits, "0", "0")
            table = recurrence_table(p, n_max + 2 * m)
            routes = ["generic"]
            if m <= 5:
                routes.append("closed")
            if m in (2, 3):
                routes.append("explicit")
            with extended(table.precision_bits):
                for n in range(1, n_max + 1):
                    for route in routes:
                        worst = max(worst, abs(painleve.string_residual(table, m, n, route)))
    tol = mpf(10) ** -20
    return SuiteResult("string", m, worst < tol, worst, f"n <= {n_max}, all V routes, tol {tol}")


def suite_volterra(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Volterra lattice residual is O(h^2): halving h quarters it."""
    p = _params(m, t, lam, bits or 320, "0.3", "0")
    h = mpf(10) ** -6
    ok = True
    worst = mpf(0)
    with extended(p.precision_bits):
        for n in range(1, 7):
            r1 = painleve.volterra_residual(p, n, h)
            r2 = painleve.volterra_residual(p, n, h / 2)
            worst = max(worst, r1)
            ratio = r2 / r1 if r1 > 0 else mpf(1) / 4
            ok = ok and r1 < mpf(10) ** -10 and mpf("0.2") < ratio < mpf("0.3")
    return SuiteResult("volterra", m, ok, worst, "residual < 1e-10 and halving ratio in (0.2, 0.3)")


def suite_structure(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """The four-line algebraic system for the structure coefficients rho_{n,2l}."""
    p = _params(m, t, lam, bits, "1", "0.5")
    n_max = 12
    table = recurrence_table(p, n_max + 1)
    worst = mpf(0)
    with extended(table.precision_bits):
        rho: Dict[int, tuple] = {}
        for n in range(1, n_max + 2):
            sc = polynomials.structure_coeffs(table, n)
            rho[n] = sc.rho
            worst = max(worst, sc.tail_residual)
            worst = max(worst, abs(sc.rho[0] - n))
            prod = 2 * m * mpf(1)
            for i in range(2 * m):
                prod *= table.beta_or_zero(n - i)
            worst = max(worst, abs(sc.rho[m] - prod))
        for n in range(1, n_max + 1):
            worst = max(worst, abs(rho[n + 1][1] - rho[n][1] - 2 * table.beta(n)))
            for ell in range(2, m):
                lhs = rho[n + 1][ell] - rho[n][ell]
                rhs = table.beta_or_zero(n - 2 * ell + 2) * rho[n][ell - 1] - table.beta(
                    n
                ) * (rho[n - 1][ell - 1] if n >= 2 else mpf(0))
                worst = max(worst, abs(lhs - rhs))
            lhs = table.beta_or_zero(n - 2 * m) * rho[n][m]
            rhs = table.beta(n) * (rho[n - 1][m] if n >= 2 else mpf(0))
            worst = max(worst, abs(lhs - rhs))
        tol = mpf(2) ** (-(table.precision_bits // 2))
    return SuiteResult("structure", m, worst < tol, worst, f"rho system lines for n <= {n_max}")


def suite_ladder_ode(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Second-order ODE residual after the D_0 normalisation resolution."""
    res = polynomials.resolve_ladder_variant()
    p = _params(m, t, lam, bits, "0.5", "0.5")
    table = recurrence_table(p, 8)
    worst = mpf(0)
    with extended(table.precision_bits):
        xs = [mpf(i) / 3 - 1 for i in range(7)]
        for n in range(7):
            for x in xs:
                r, scale = polynomials.ode_residual(table, n, x, res.variant)
                worst = max(worst, abs(r) / scale)
    tol = mpf(10) ** -20
    detail = f"variant={res.variant} resolved={res.resolved}, tol {tol}"
    return SuiteResult("ladder-ode", m, res.resolved and worst < tol, worst, detail)


def suite_mixed(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Mixed lambda recurrences and the lambda-shift decompositions."""
    p = _params(m, t, lam, bits, "1", "0.5")
    worst = mpf(0)
    with extended(p.precision_bits):
        for n in range(1, 7):
            a, b = polynomials.mixed_recurrence_check(p, n)
            c, d = polynomials.lambda_shift_check(p, n)
            worst = max(worst, a, b, c, d)
    tol = mpf(10) ** -25
    return SuiteResult("mixed", m, worst < tol, worst, f"n <= 6, tol {tol}")


def suite_quasi(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Quasi-orthogonality of order 2 for lambda in (-2, -1)."""
    p = _params(m, t, lam, bits, "0.5", "-1.5")
    if not (-2 < p.lam < -1):
        raise ParameterError("quasi suite needs lambda in (-2, -1)")
    n = 5
    vals = polynomials.quasi_orthogonality_check(p, n)
    with extended(p.precision_bits):
        worst = max((abs(v) for v in vals[: n - 2]), default=mpf(0))
    tol = mpf(10) ** -20
    return SuiteResult(
        "quasi", m, worst < tol, worst, f"normalised integrals k <= {n - 3} at lambda={p.lam}"
    )


def suite_quaddecomp(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Quadratic decomposition: coefficient identities and half-line orthogonality."""
    p = _params(m, t, lam, bits, "0.5", "0.5")
    table = recurrence_table(p, 12)
    b_fam, r_fam = polynomials.quadratic_decompose(table, 6)
    polys = polynomials.generate(table, 13)
    with extended(table.precision_bits):
        worst = polynomials.quadratic_identity_residual(table, polys, b_fam, r_fam)
        ortho_b = polynomials.halfline_orthogonality_residual(table, b_fam, "B", upto=3)
        ortho_r = polynomials.halfline_orthogonality_residual(table, r_fam, "R", upto=3)
        worst_all = max(worst, ortho_b, ortho_r)
    tol = mpf(10) ** -20
    return SuiteResult("quaddecomp", m, worst_all < tol, worst_all, f"n <= 6 coefficients, oracle orthogonality, tol {tol}")


def suite_zeros_interlace(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Both interlacing chains plus the zero equality across the lambda shift."""
    p = _params(m, t, lam, bits, "1", "0.5")
    ok = True
    worst = mpf(0)
    for n in (2, 3, 4):
        for k in ("0.3", "0.7", "1"):
            rep = zeros.interlacing_check(p, n, k=real(k, p.precision_bits), tol=mpf(10) ** -28)
            ok = ok and rep.all_ok
            worst = max(worst, rep.equality_deviation)
    tol = mpf(10) ** -25
    return SuiteResult(
        "zeros-interlace", m, ok and worst < tol, worst, f"chains for half-degree <= 4, equality tol {tol}"
    )


def suite_zeros_bounds(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Extreme-zero bound 0 < x_{1,n} < max sqrt(c_n beta_k) for n <= 20."""
    p = _params(m, t, lam, bits, "0", "-0.5")
    table = recurrence_table(p, 20)
    ok = True
    with extended(table.precision_bits):
        for n in range(2, 21):
            _bound, good = zeros.extreme_zero_bound(table, n)
            ok = ok and good
    return SuiteResult("zeros-bounds", m, ok, None, "Wall-Wetzel bound, eps = 1e-8, n <= 20")


def suite_density(m: int, t=None, lam=None, bits=None) -> SuiteResult:
    """Density normalisation, the two hypergeometric forms, and KS decrease in n."""
    p = _params(m, t, lam, bits, "1", "0.5")
    law = zeros.DensityLaw(m=m, ell=1, precision_bits=p.precision_bits)
    with extended(law.precision_bits):
        norm_res = abs(1 - zeros.density_normalisation(law, mpf(10) ** -20))
        forms = mpf(0)
        for i in range(1, 51):
            x = law.c * mpf(2 * i - 51) / 52
            forms = max(forms, abs(zeros.density(law, x) - zeros.density_proof_form(law, x)))
        d_small = zeros.scaled_zero_compare(p, 10, 10)
        d_large = zeros.scaled_zero_compare(p, 24, 24)
        ok = norm_res < mpf(10) ** -15 and forms < mpf(10) ** -25 and d_large < d_small
        worst = max(norm_res, forms)
    detail = (
        f"normalisation, dual 2F1 forms, KS {mpmath.nstr(d_large, 4)} < {mpmath.nstr(d_small, 4)}"
    )
    return SuiteResult("density", m, ok, worst, detail)


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "moments-ode": suite_moments_ode,
    "hankel-parity": suite_hankel_parity,
    "string": suite_string,
    "volterra": suite_volterra,
    "structure": suite_structure,
    "ladder-ode": suite_ladder_ode,
    "mixed": suite_mixed,
    "quasi": suite_quasi,
    "quaddecomp": suite_quaddecomp,
    "zeros-interlace": suite_zeros_interlace,
    "zeros-bounds": suite_zeros_bounds,
    "density": suite_density,
}


def run_suite(name: str, m: int, t=None, lam=None, bits: Optional[int] = None) -> SuiteResult:
    if name not in SUITES:
        raise ParameterError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name](m, t=t, lam=lam, bits=bits)
