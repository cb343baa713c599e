import random

import mpmath
import pytest
from mpmath import mpf, workprec

from hofreud.errors import InsufficientDataError, ParameterError
from hofreud.hankel import recurrence_table
from hofreud.moments import WeightParams
from hofreud.painleve import (
    beta_forward,
    c_column,
    freud_limit,
    mrs_number,
    string_residual,
    string_rhs,
    v_closed,
    v_generic,
    v_table,
    volterra_residual,
)
from hofreud.polynomials import x2m_expansion

from conftest import rel_err


def random_beta_fn(seed, count=40, lo=0.1, hi=2.0):
    rng = random.Random(seed)
    vals = {n: mpf(rng.uniform(lo, hi)) for n in range(1, count + 1)}

    def beta(n):
        if n <= 0:
            return mpf(0)
        return vals[n]

    return beta


class TestVRecursion:
    def test_order_one_is_beta(self):
        beta = random_beta_fn(1)
        for n in (1, 4, 9):
            assert v_generic(beta, 1, n) == beta(n)

    def test_v4_boundary_n1(self):
        beta = random_beta_fn(2)
        with workprec(256):
            expected = beta(1) * (beta(2) + beta(1))  # beta_0 = 0 drops out
            assert rel_err(v_generic(beta, 2, 1), expected) < mpf(2) ** -200

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_generic_matches_closed_forms(self, m):
        with workprec(256):
            for seed in range(10):
                beta = random_beta_fn(100 + seed)
                for n in range(1, 7):
                    g = v_generic(beta, m, n)
                    c = v_closed(beta, m, n)
                    assert rel_err(g, c) < mpf(2) ** -220, (m, n, seed)

    def test_closed_form_order_guard(self):
        with pytest.raises(ParameterError):
            v_closed(random_beta_fn(3), 6, 2)

    def test_column_recursion_symmetry(self):
        # C_{n,n+2l} * beta_{n+1}..beta_{n+2l} = C_{n+2l,n}, row vs column routes
        beta = random_beta_fn(4)

        class FakeTable:
            N = 40
            precision_bits = 256

            @staticmethod
            def beta_or_zero(n):
                return beta(n)

            @staticmethod
            def beta(n):
                return beta(n)

        with workprec(256):
            m_power = 3
            for n in (2, 5):
                row = x2m_expansion(FakeTable, n, m_power)
                for ell in range(1, m_power + 1):
                    col = c_column(beta, n, m_power)
                    lhs = row[n + 2 * ell]
                    for j in range(1, 2 * ell + 1):
                        lhs = lhs * beta(n + j)
                    rhs = c_column(beta, n, m_power).get(n + 2 * ell, mpf(0))
                    assert rel_err(lhs, rhs) < mpf(2) ** -200, (n, ell)

    def test_cnn_is_v_sum(self):
        # C_{n,n}^(2m) = V_{n+1}^(2m) + V_n^(2m)
        beta = random_beta_fn(5)

        class FakeTable:
            N = 40
            precision_bits = 256

            @staticmethod
            def beta_or_zero(n):
                return beta(n)

            @staticmethod
            def beta(n):
                return beta(n)

        with workprec(256):
            for m in (2, 3):
                for n in (2, 4):
                    row = x2m_expansion(FakeTable, n, m)
                    expect = v_generic(beta, m, n + 1) + v_generic(beta, m, n)
                    assert rel_err(row[n], expect) < mpf(2) ** -200


class TestStringEquation:
    def test_rhs_parity(self):
        p = WeightParams(m=2, t=0, lam="0.5")
        assert string_rhs(p, 2) == 2
        with workprec(256):
            assert rel_err(string_rhs(p, 3), 3 + 2 * (mpf("0.5") + mpf("0.5"))) == 0

    def test_n1_reproduces_beta1(self, quartic_table):
        # 4 beta_1 (beta_1 + beta_2) = 1 + 2(lam + 1/2) at t=0
        res = string_residual(quartic_table, 2, 1)
        assert abs(res) < mpf(10) ** -50

    @pytest.mark.parametrize(
        "m,t,lam", [(2, "0", "0.5"), (3, "1.5", "0.5"), (4, "-1", "2"), (5, "1.5", "-0.5")]
    )
    def test_residuals_small_all_orders(self, m, t, lam):
        p = WeightParams(m=m, t=t, lam=lam)
        table = recurrence_table(p, 12 + 2 * m)
        for n in range(1, 13):
            assert abs(string_residual(table, m, n)) < mpf(10) ** -20, (m, n)

    @pytest.mark.parametrize("m", [2, 3])
    def test_explicit_equals_generic(self, m):
        p = WeightParams(m=m, t="1.5", lam="0.5")
        table = recurrence_table(p, 12 + 2 * m)
        with workprec(table.precision_bits):
            for n in range(1, 13):
                rg = string_residual(table, m, n, "generic")
                rp = string_residual(table, m, n, "explicit")
                assert abs(rg - rp) < mpf(2) ** -(table.precision_bits // 2)

    def test_explicit_guard(self, quartic_table):
        with pytest.raises(ParameterError):
            string_residual(quartic_table, 4, 1, "explicit")

    def test_sextic_route_agreement(self, sextic_table):
        # dP_I^(2) display in betas vs 6 V^(6): identical residuals
        with workprec(sextic_table.precision_bits):
            for n in range(1, 10):
                rp = string_residual(sextic_table, 3, n, "explicit")
                rc = string_residual(sextic_table, 3, n, "closed")
                assert abs(rp - rc) < mpf(2) ** -(sextic_table.precision_bits // 2)

    def test_vtable(self, quartic_table):
        vt = v_table(quartic_table, 2, 10)
        assert vt.order == 4
        assert vt.n_max == 10
        with pytest.raises(InsufficientDataError):
            vt.value(11)
        with pytest.raises(InsufficientDataError):
            v_table(quartic_table, 2, 200)


class TestForwardRecursion:
    def test_m2_closed_rearrangement(self, quartic_table):
        # beta_{n+1} = (n + (lam+1/2)(1-(-1)^n) + 2 t beta_n) / (4 beta_n) - beta_n - beta_{n-1}
        p = quartic_table.params.with_precision(512)
        fw = beta_forward(p, [quartic_table.beta(1)], 12)
        with workprec(512):
            lam_term = p.lam + mpf(1) / 2
            for n in range(1, 11):
                rhs = (
                    (n + lam_term * (1 - (-1) ** n) + 2 * p.t * fw.beta(n)) / (4 * fw.beta(n))
                    - fw.beta(n)
                    - fw.beta_or_zero(n - 1)
                )
                assert rel_err(fw.beta(n + 1), rhs) < mpf(10) ** -100

    def test_reproduces_hankel_m2(self, quartic_table):
        p = quartic_table.params.with_precision(512)
        fw = beta_forward(p, [quartic_table.beta(1)], 20)
        assert fw.method == "painleve"
        assert not fw.truncated
        with workprec(512):
            for n in range(1, 21):
                assert rel_err(fw.beta(n), quartic_table.beta(n)) < mpf(10) ** -10

    def test_reproduces_hankel_m3(self, sextic_table):
        p = sextic_table.params.with_precision(512)
        seeds = [sextic_table.beta(1), sextic_table.beta(2)]
        fw = beta_forward(p, seeds, 12)
        with workprec(512):
            for n in range(1, 13):
                assert rel_err(fw.beta(n), sextic_table.beta(n)) < mpf(10) ** -10

    def test_four_seed_call_accepted(self, sextic_table):
        p = sextic_table.params.with_precision(512)
        seeds = [sextic_table.beta(i) for i in range(1, 5)]
        fw = beta_forward(p, seeds, 10)
        with workprec(512):
            assert rel_err(fw.beta(8), sextic_table.beta(8)) < mpf(10) ** -10

    def test_seed_count_error(self):
        p = WeightParams(m=3, t=0, lam=0)
        with pytest.raises(ParameterError):
            beta_forward(p, [], 10)

    def test_nonpositive_seed_error(self):
        p = WeightParams(m=2, t=0, lam=0)
        with pytest.raises(ParameterError):
            beta_forward(p, [mpf(-1)], 10)

    def test_truncation_flag_off_orbit(self):
        # a badly wrong seed drives the orbit negative; generation stops flagged
        p = WeightParams(m=2, t=0, lam="-0.5")
        fw = beta_forward(p, [mpf(10)], 40)
        assert fw.truncated
        assert fw.N < 40


class TestVolterra:
    def test_boundary_n1(self):
        p = WeightParams(m=2, t="0.3", lam=0, precision_bits=320)
        assert volterra_residual(p, 1, mpf(10) ** -6) < mpf(10) ** -10

    def test_residual_and_order(self):
        p = WeightParams(m=2, t="0.3", lam=0, precision_bits=320)
        h = mpf(10) ** -6
        r1 = volterra_residual(p, 3, h)
        r2 = volterra_residual(p, 3, h / 2)
        assert r1 < mpf(10) ** -10
        with workprec(320):
            assert mpf("0.2") < r2 / r1 < mpf("0.3")

    def test_string_and_volterra_compatible_along_t(self):
        for tv in ("-0.4", "-0.1", "0.2", "0.5", "0.8"):
            p = WeightParams(m=2, t=tv, lam="0.25", precision_bits=320)
            table = recurrence_table(p, 10)
            assert abs(string_residual(table, 2, 4)) < mpf(10) ** -20
            assert volterra_residual(p, 4, mpf(10) ** -6) < mpf(10) ** -10


class TestAsymptotics:
    def test_freud_limit_m2(self):
        with workprec(300):
            assert rel_err(freud_limit(2, 300), 1 / mpmath.sqrt(12)) < mpf(2) ** -250

    def test_freud_limit_m3(self):
        with workprec(300):
            assert rel_err(freud_limit(3, 300), mpf(60) ** (-mpf(1) / 3)) < mpf(2) ** -250

    def test_freud_limit_m4(self):
        # (1/2)_4 = 105/16, so the limit is (1/4)(32/35)^(1/4)
        with workprec(300):
            expected = (mpf(32) / 35) ** (mpf(1) / 4) / 4
            assert rel_err(freud_limit(4, 300), expected) < mpf(2) ** -250

    def test_mrs_values(self):
        with workprec(300):
            assert rel_err(mrs_number(2, 1, 300) ** 2, (mpf(4) / 3) ** mpf("0.5")) < mpf(2) ** -240
            assert rel_err(mrs_number(3, 1, 300) ** 2, (mpf(16) / 15) ** (mpf(1) / 3)) < mpf(2) ** -240

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_mrs_consistent_with_limit(self, m):
        # (1/4) a_n^2 / n^(1/m) equals the Freud limit for every n
        with workprec(300):
            for n in (1, 7, 30):
                lhs = mrs_number(m, n, 300) ** 2 / (4 * mpf(n) ** (mpf(1) / m))
                assert rel_err(lhs, freud_limit(m, 300)) < mpf(2) ** -240

    def test_validation(self):
        with pytest.raises(ParameterError):
            freud_limit(1)
        with pytest.raises(ParameterError):
            mrs_number(2, 0)

    def test_beta_approaches_limit(self, quartic_table):
        with workprec(quartic_table.precision_bits):
            lim = freud_limit(2, quartic_table.precision_bits)
            r5 = abs(quartic_table.beta(5) / mpmath.sqrt(5) - lim)
            r25 = abs(quartic_table.beta(25) / mpmath.sqrt(25) - lim)
            assert r25 < r5
