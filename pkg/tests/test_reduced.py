"""Tests for the reduced three-level model and its analytic limits"""

from dataclasses import replace

import numpy as np
import pytest

from src.qar.collective_spin import build_sector
from src.qar.config import ModelConfig
from src.qar.dynamics import loglog_slope
from src.qar.errors import DomainError
from src.qar.fcs import cumulants_from_cgf, energy_current, full_counting, steady_state
from src.qar.liouvillian import build_rate_matrix, counting_moment_matrices
from src.qar.reduced import (
    ReducedModelParams,
    analytic_current,
    analytic_noise,
    coarse_grained_rate_matrix,
    effective_rates,
    laser_rate_matrix,
    reduced_rate_matrix,
    two_level_current,
)
from src.qar.reservoir import ReservoirSpec, bose, spectral_density
from src.qar.thermo import noise_to_signal

ODD_N = list(range(11, 52, 2))


def fig2_params(N: int) -> ReducedModelParams:
    return ReducedModelParams.from_temperatures(N, beta_c=2.0, beta_h=1.0, beta_w=1e-3)


def unit_params(n_c: float, n_h: float) -> ReducedModelParams:
    return ReducedModelParams(omega=1.0, gamma_c=1.0, gamma_h=1.0, gamma_w=1.0, n_c=n_c, n_h=n_h, n_w=0.0)


def full_current(N: int) -> float:
    config = ModelConfig(N=N)
    R = build_rate_matrix(build_sector(N), config.reservoirs())
    return energy_current(R, "cold")


class TestEffectiveRates:
    """Squared sector matrix elements of the three resonant transitions"""

    def test_reference_values(self):
        """测试：有效速率参考值"""
        gamma_c, gamma_h, gamma_w = effective_rates(31, 1.0, 1.0, 1.0)
        assert gamma_c == pytest.approx(63.75)
        assert gamma_w == pytest.approx(63.0)
        assert gamma_h == pytest.approx(255 * 252 / (16 * 961))

    @pytest.mark.parametrize("N", [5, 11, 31, 51])
    def test_ladder_convention_matches_sector(self, N):
        """测试：约化阶梯与自旋扇区约定一致"""
        sector = build_sector(N)
        gamma_c, gamma_h, gamma_w = effective_rates(N, 1.0, 1.0, 1.0)
        assert gamma_c == pytest.approx(sector.jx[0, 1] ** 2, rel=1e-12)
        assert gamma_w == pytest.approx(sector.jx[1, 2] ** 2, rel=1e-12)
        assert gamma_h == pytest.approx((sector.jx2[0, 2] / N) ** 2, rel=1e-12)

    def test_peak_heights_scale_rates(self):
        """测试：峰高按比例缩放速率"""
        base = np.array(effective_rates(21, 1.0, 1.0, 1.0))
        scaled = np.array(effective_rates(21, 2.0, 3.0, 0.5))
        np.testing.assert_allclose(scaled / base, [2.0, 3.0, 0.5])

    @pytest.mark.parametrize("N", [3, 4, 10])
    def test_rejects_small_or_even(self, N):
        """测试：过小或偶数 N 被拒绝"""
        with pytest.raises(DomainError):
            effective_rates(N, 1.0, 1.0, 1.0)


class TestReducedRateMatrix:
    """Three-level rate matrix"""

    def test_columns_and_detailed_balance(self, reduced_rates):
        """测试：列和为零且满足细致平衡"""
        report = reduced_rates.invariant_report()
        assert report["column_sum"] < 1e-13
        assert report["detailed_balance"] < 1e-10

    def test_block_structure(self, reduced_rates, reduced_params):
        """测试：块结构"""
        cold = reduced_rates.block("cold")
        assert cold[1, 0] == pytest.approx(reduced_params.gamma_c * reduced_params.n_c)
        assert cold[0, 1] == pytest.approx(reduced_params.gamma_c * (1 + reduced_params.n_c))
        assert np.count_nonzero(cold) == 2
        assert np.count_nonzero(reduced_rates.block("hot")[[0, 2]][:, [0, 2]]) == 2

    def test_cold_counting_weights(self, reduced_rates, reduced_params):
        """测试：冷热库计数权重"""
        moments = counting_moment_matrices(reduced_rates, "cold")
        assert moments.w1[1, 0] == pytest.approx(2.0 * reduced_params.gamma_c * reduced_params.n_c)
        assert moments.w1[0, 1] == pytest.approx(-2.0 * reduced_params.gamma_c * (1 + reduced_params.n_c))
        np.testing.assert_allclose(moments.w2, 4.0 * reduced_rates.block("cold"))

    def test_recovered_betas(self, reduced_rates):
        """测试：恢复各热库 beta"""
        assert reduced_rates.betas["cold"] == pytest.approx(2.0, rel=1e-12)
        assert reduced_rates.betas["hot"] == pytest.approx(1.0, rel=1e-12)
        assert reduced_rates.betas["work"] == pytest.approx(1e-3, rel=1e-9)

    def test_no_work_equal_temperatures_is_gibbs(self):
        """测试：无驱动且同温时为 Gibbs 态"""
        params = ReducedModelParams.from_temperatures(11, beta_c=0.8, beta_h=0.8, beta_w=1.0, gbar_w=1.0)
        params = replace(params, gamma_w=0.0)
        rho = steady_state(reduced_rate_matrix(params))
        gibbs = np.exp(-0.8 * np.array([0.25, 2.25, 6.25]))
        np.testing.assert_allclose(rho, gibbs / gibbs.sum(), rtol=1e-10)

    def test_invalid_params(self):
        """测试：非法参数被拒绝"""
        with pytest.raises(DomainError, match="n_c"):
            ReducedModelParams(omega=1.0, gamma_c=1.0, gamma_h=1.0, gamma_w=1.0, n_c=-0.1, n_h=0.0, n_w=0.0)


class TestAnalyticFormulas:
    """Closed-form current and noise"""

    def test_unit_current(self):
        """测试：单位电流公式"""
        assert analytic_current(unit_params(1.0, 0.0)) == pytest.approx(0.4)

    def test_equal_occupations(self):
        """测试：占据数相等时无电流"""
        assert analytic_current(unit_params(0.3, 0.3)) == 0.0

    def test_zero_temperature_noise(self):
        """测试：零温噪声"""
        assert analytic_noise(unit_params(0.0, 0.0)) == 0.0

    def test_reference_point(self):
        """测试：参考点的解析值"""
        params = fig2_params(31)
        assert analytic_current(params) == pytest.approx(0.120477, rel=1e-4)
        assert analytic_noise(params) == pytest.approx(0.315569, rel=1e-4)

    def test_window_edge_is_exact(self):
        """测试：制冷窗口边界精确"""
        params = ReducedModelParams.from_temperatures(21, beta_c=3.0, beta_h=1.0, beta_w=1e-3)
        assert params.n_c == params.n_h
        assert analytic_current(params) == 0.0

    @pytest.mark.parametrize("beta_c,cooling", [(1.5, True), (2.9, True), (3.1, False), (5.0, False)])
    def test_cooling_window(self, beta_c, cooling):
        """测试：制冷窗口内外的符号"""
        params = ReducedModelParams.from_temperatures(21, beta_c=beta_c, beta_h=1.0, beta_w=1e-3)
        assert (analytic_current(params) > 0) == cooling

    def test_two_level_values(self):
        """测试：两能级公式的数值"""
        assert two_level_current(1.0, 1.0, 0.0, 1.0) == pytest.approx(-0.5)
        assert two_level_current(1.0, 2.0, 0.4, 0.4) == 0.0
        assert two_level_current(1.0, 1.0, 1.0, 0.0) == pytest.approx(0.5)

    def test_two_level_rejects_negative_rates(self):
        """测试：两能级公式拒绝负速率"""
        with pytest.raises(DomainError):
            two_level_current(-1.0, 1.0, 0.1, 0.2)


class TestCoarseGraining:
    """Two-state limit reproduces the analytic formulas"""

    def test_matches_analytic(self, reduced_params):
        """测试：粗粒化与解析式一致"""
        R = coarse_grained_rate_matrix(reduced_params)
        result = full_counting(R)
        assert result.current == pytest.approx(analytic_current(reduced_params), rel=1e-10)
        assert result.noise == pytest.approx(analytic_noise(reduced_params), rel=1e-8)

    def test_cgf_oracle(self, reduced_params):
        """测试：粗粒化通过特征值差分校验"""
        R = coarse_grained_rate_matrix(reduced_params)
        current, noise = cumulants_from_cgf(R, "cold")
        assert current == pytest.approx(analytic_current(reduced_params), rel=1e-6)
        assert noise == pytest.approx(analytic_noise(reduced_params), rel=1e-6)


class TestReducedVersusAnalytic:
    """Numeric three-level statistics against the closed forms"""

    @pytest.mark.parametrize("N", list(range(5, 52, 2)))
    def test_thermal_work_within_one_percent(self, N):
        """测试：热驱动下约化模型与解析式相差不超过 1%"""
        params = fig2_params(N)
        result = full_counting(reduced_rate_matrix(params))
        assert result.current == pytest.approx(analytic_current(params), rel=1e-2)
        assert result.noise == pytest.approx(analytic_noise(params), rel=1e-2)

    def test_reference_point(self, reduced_rates):
        """测试：参考点的解析值"""
        assert energy_current(reduced_rates, "cold") == pytest.approx(0.119927, rel=1e-4)

    @pytest.mark.parametrize("N", [5, 31, 51])
    def test_laser_limit(self, N):
        """测试：激光极限与解析式一致"""
        params = fig2_params(N)
        params = params.with_laser(1e6 * max(params.gamma_c, params.gamma_h))
        result = full_counting(reduced_rate_matrix(params))
        assert result.current == pytest.approx(analytic_current(params), rel=1e-5)
        assert result.noise == pytest.approx(analytic_noise(params), rel=1e-5)

    def test_laser_block(self):
        """测试：激光驱动块"""
        block = laser_rate_matrix(2.5)
        assert block[2, 1] == block[1, 2] == 2.5
        assert np.count_nonzero(block) == 2
        with pytest.raises(DomainError):
            laser_rate_matrix(-1.0)

    def test_no_laser_drive_stops_cooling(self):
        """测试：无激光驱动时不再制冷"""
        params = fig2_params(31).with_laser(0.0)
        R = reduced_rate_matrix(params)
        assert R.betas["work"] == 0.0
        assert abs(energy_current(R, "cold")) < 1e-12

    def test_full_model_is_worse(self):
        """测试：完整模型电流低于约化模型"""
        for N in (31, 51):
            assert full_current(N) <= energy_current(reduced_rate_matrix(fig2_params(N)), "cold")


class TestScaling:
    """Superradiant N^2 enhancement"""

    def test_analytic_slope(self):
        """测试：解析式的标度斜率"""
        currents = [analytic_current(fig2_params(N)) for N in ODD_N]
        assert 1.9 <= loglog_slope(ODD_N, currents) <= 2.05

    def test_reduced_slope(self):
        """测试：约化模型的标度斜率"""
        currents = [energy_current(reduced_rate_matrix(fig2_params(N)), "cold") for N in ODD_N]
        assert 1.9 <= loglog_slope(ODD_N, currents) <= 2.05

    def test_full_model_slope(self):
        """测试：完整模型的标度斜率"""
        currents = [full_current(N) for N in ODD_N]
        assert 1.9 <= loglog_slope(ODD_N, currents) <= 2.05

    def test_noise_to_signal_falls_as_one_over_n(self):
        """测试：噪声信号比按 1/N 下降"""
        scaled = []
        for N in ODD_N:
            result = full_counting(reduced_rate_matrix(fig2_params(N)))
            scaled.append(N * noise_to_signal(result.noise, result.current, 1.0))
        scaled = np.array(scaled)
        assert np.all(np.abs(scaled / scaled.mean() - 1) <= 0.05)


class TestTwoLowestStates:
    """Full model without the hot reservoir, dominated by the lowest pair"""

    @staticmethod
    def _full_and_formula(beta_c: float, beta_w: float):
        N = 31
        cold = ReservoirSpec("cold", gbar=1.0, eps=2.0, delta=1.0, beta=beta_c)
        work = ReservoirSpec("work", gbar=1.0, eps=2.0, delta=1.0, beta=beta_w)
        R = build_rate_matrix(build_sector(N), [cold, work])
        jj = (N / 2) * (N / 2 + 1)
        rate = spectral_density(cold, 2.0) * (jj - 0.75) / 4
        formula = two_level_current(rate, rate, bose(beta_c, 2.0), bose(beta_w, 2.0))
        return energy_current(R, "cold"), formula

    def test_matches_two_level_formula(self):
        """测试：两最低态与两能级公式一致"""
        full, formula = self._full_and_formula(2.0, 1.0)
        assert spectral_density(ReservoirSpec("cold", 1.0, 2.0, 1.0, 1.0), 2.0) == pytest.approx(16 / 17)
        assert full == pytest.approx(formula, rel=0.05)
        assert formula < 0

    def test_sign_flips_with_swapped_temperatures(self):
        """测试：交换温度后电流反号"""
        full, formula = self._full_and_formula(1.0, 2.0)
        assert formula > 0
        assert full > 0
        assert full == pytest.approx(formula, rel=0.05)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
