import mpmath
import pytest
from mpmath import mpf, workprec

from hofreud.errors import ParameterError, RangeError
from hofreud.moments import (
    MomentTable,
    WeightParams,
    moment,
    moment_ode_residual,
    moment_table,
    mu0,
    weight_eval,
)
from hofreud.oracle import QuadratureSpec, oracle_moment
from hofreud.scalar import gamma

from conftest import rel_err


class TestWeightParams:
    def test_m_validation(self):
        with pytest.raises(ParameterError):
            WeightParams(m=1, t=0, lam=0)

    def test_lambda_validation(self):
        with pytest.raises(ParameterError):
            WeightParams(m=2, t=0, lam=-2)

    def test_integrability_gate(self):
        p = WeightParams(m=2, t=0, lam="-1.5")
        with pytest.raises(ParameterError):
            mu0(p)

    def test_precision_floor(self):
        with pytest.raises(ParameterError):
            WeightParams(m=2, t=0, lam=0, precision_bits=32)


class TestWeightEval:
    def test_simple_value(self):
        p = WeightParams(m=2, t=0, lam="-0.5")
        with workprec(300):
            assert rel_err(weight_eval(p, 1), mpmath.exp(mpf(-1))) < mpf(2) ** -240

    def test_evenness(self):
        p = WeightParams(m=3, t="0.7", lam="0.3")
        for x in ["0.37", "1.9", "2.5"]:
            assert weight_eval(p, x) == weight_eval(p, "-" + x)

    def test_direct_arithmetic(self):
        p = WeightParams(m=3, t=1, lam="0.5")
        with workprec(300):
            x = mpf("1.2")
            expected = x**2 * mpmath.exp(x**2 - x**6)
            assert rel_err(weight_eval(p, x), expected) < mpf(2) ** -240

    def test_origin_limits(self):
        assert weight_eval(WeightParams(m=2, t=0, lam=0), 0) == 0
        assert weight_eval(WeightParams(m=2, t=0, lam="-0.5"), 0) == 1
        assert weight_eval(WeightParams(m=2, t=0, lam="-0.75"), 0) == mpf("inf")


class TestMu0:
    def test_quartic_t0_reduction(self):
        p = WeightParams(m=2, t=0, lam="-0.5")
        with workprec(300):
            assert rel_err(mu0(p), gamma("0.25", 300) / 2) < mpf(2) ** -245

    def test_sextic_t0_reduction(self):
        p = WeightParams(m=3, t=0, lam=0)
        with workprec(300):
            assert rel_err(mu0(p), gamma(mpf(1) / 3, 300) / 3) < mpf(2) ** -245

    def test_against_quadrature(self):
        p = WeightParams(m=2, t=1, lam="0.5")
        spec = QuadratureSpec(target_tol=mpf(10) ** -45)
        assert rel_err(mu0(p), oracle_moment(p, 0, spec)) < mpf(10) ** -40

    def test_large_t_range_error(self):
        p = WeightParams(m=2, t=60, lam=0, precision_bits=64)
        with pytest.raises(RangeError):
            mu0(p)


class TestMoments:
    def test_odd_exact_zero(self):
        p = WeightParams(m=4, t="1.5", lam="0.3")
        assert moment(p, 3) == 0
        assert moment(p, 11) == 0

    def test_mu2_reduction(self):
        p = WeightParams(m=2, t=0, lam="-0.5")
        with workprec(300):
            assert rel_err(moment(p, 2), gamma("0.75", 300) / 2) < mpf(2) ** -245

    def test_k4_against_quadrature(self):
        p = WeightParams(m=3, t="0.7", lam="0.3")
        assert moment(p, 4) == mu0(p.shifted(2))  # bit-identical by construction
        spec = QuadratureSpec(target_tol=mpf(10) ** -45)
        assert rel_err(moment(p, 4), oracle_moment(p, 4, spec)) < mpf(10) ** -40

    def test_lambda_shift_structural(self):
        p = WeightParams(m=3, t="0.4", lam="0.6")
        for k in range(4):
            assert moment(p, 2 * k + 2) == moment(p.shifted(1), 2 * k)

    def test_table_positivity_and_ratios(self):
        p = WeightParams(m=2, t="-1", lam="1.5")
        table = moment_table(p, 10)
        for i in range(table.K + 1):
            assert table.even(i) > 0
        for i in range(table.K):
            ratio = table.even(i + 1) / table.even(i)
            assert mpmath.isfinite(ratio) and ratio > 0

    def test_table_bounds(self):
        table = moment_table(WeightParams(m=2, t=0, lam=0), 3)
        with pytest.raises(ParameterError):
            table.even(4)
        assert table.moment(5) == 0


class TestMomentOde:
    GRID_M = (2, 3, 4)
    GRID_T = ("-1", "0", "1")
    GRID_L = ("-0.5", "0", "1")

    def test_residual_vanishes_on_grid(self):
        for m in self.GRID_M:
            for t in self.GRID_T:
                for lam in self.GRID_L:
                    p = WeightParams(m=m, t=t, lam=lam)
                    with workprec(300):
                        res = abs(moment_ode_residual(p)) / mu0(p)
                    assert res < mpf(2) ** -(256 - 16), (m, t, lam)

    def test_near_lambda_boundary(self):
        p = WeightParams(m=2, t=-1, lam="-0.9")
        with workprec(300):
            assert abs(moment_ode_residual(p)) / mu0(p) < mpf(2) ** -240
