"""Tests for entropy production, efficiency bounds and the TUR"""

import math

import pytest

from src.qar.errors import ConsistencyError, DomainError
from src.qar.fcs import full_counting
from src.qar.thermo import cop_report, entropy_production, noise_to_signal, tur_ratio


@pytest.fixture
def reduced_point(reduced_rates):
    result = full_counting(reduced_rates)
    return result, reduced_rates.betas


class TestEntropyProduction:
    """sigma_i = -sum beta I"""

    def test_equal_betas(self):
        """测试：同温时熵产生为零"""
        currents = {"cold": 0.3, "hot": -0.1, "work": -0.2}
        betas = {"cold": 1.5, "hot": 1.5, "work": 1.5}
        assert entropy_production(currents, betas) == pytest.approx(0.0, abs=1e-15)

    def test_two_reservoirs(self):
        """测试：两热库的熵产生"""
        current = 0.25
        sigma = entropy_production({"cold": -current, "work": current}, {"cold": 2.0, "work": 0.5})
        assert sigma == pytest.approx((2.0 - 0.5) * current)

    def test_infinite_temperature_drive_is_skipped(self):
        """测试：无穷温度驱动不计入熵产生"""
        sigma = entropy_production({"cold": 0.1, "work": -0.1}, {"cold": 1.0, "work": 0.0})
        assert sigma == pytest.approx(-0.1)

    def test_first_law_violation(self):
        """测试：违反能量守恒抛出 ConsistencyError"""
        with pytest.raises(ConsistencyError, match="sum to zero") as info:
            entropy_production({"cold": 1.0, "hot": 0.5}, {"cold": 1.0, "hot": 2.0})
        assert info.value.diagnostics["sum"] == pytest.approx(1.5)

    def test_role_mismatch(self):
        """测试：角色不一致被拒绝"""
        with pytest.raises(DomainError, match="Roles differ"):
            entropy_production({"cold": 0.0}, {"hot": 1.0})

    def test_reduced_point_positive(self, reduced_point):
        """测试：约化参考点熵产生为正"""
        result, betas = reduced_point
        assert entropy_production(result.currents, betas) > 0


class TestCopReport:
    """Coefficient of performance and its bounds"""

    def test_carnot_value(self):
        """测试：Carnot 效率数值"""
        report = cop_report({"cold": 0.1, "hot": 0.3, "work": -0.4}, {"cold": 2.0, "hot": 1.0, "work": 0.5}, 1.0)
        assert report.carnot == pytest.approx(1.0)
        assert not report.driven
        assert not report.bounds_valid

    def test_equal_cold_and_hot_betas(self):
        """测试：冷热同温时的效率"""
        report = cop_report({"cold": 0.0, "hot": 0.0, "work": 0.0}, {"cold": 1.0, "hot": 1.0, "work": 0.1}, 0.5)
        assert math.isinf(report.carnot)
        assert not report.carnot_defined

    def test_tight_coupling_cop(self, reduced_point):
        """测试：紧耦合的制冷系数"""
        result, betas = reduced_point
        report = cop_report(result.currents, betas, result.noise)
        assert report.cop == pytest.approx(0.5, rel=1e-10)

    def test_bound_ordering(self, reduced_point):
        """测试：各个界的大小顺序"""
        result, betas = reduced_point
        report = cop_report(result.currents, betas, result.noise)
        assert report.bounds_valid
        assert report.cop <= report.tur_bound * (1 + 1e-10)
        assert report.tur_bound <= report.carnot * (1 + 1e-10)
        assert report.carnot == pytest.approx(1.0)

    def test_tur_bound_formula(self, reduced_point):
        """测试：TUR 界公式"""
        result, betas = reduced_point
        report = cop_report(result.currents, betas, result.noise)
        carnot = betas["hot"] / (betas["cold"] - betas["hot"])
        expected = carnot / (1 + 2 * result.current / (result.noise * (betas["cold"] - betas["hot"])))
        assert report.tur_bound == pytest.approx(expected, rel=1e-12)

    def test_to_dict(self, reduced_point):
        """测试：to_dict 输出"""
        result, betas = reduced_point
        data = cop_report(result.currents, betas, result.noise).to_dict()
        assert set(data) >= {"entropy_production", "cop", "carnot", "tur_bound", "tur_ratio"}


class TestTurRatio:
    """S sigma / I^2 >= 2"""

    def test_zero_current(self):
        """测试：零电流时返回 nan"""
        assert math.isinf(tur_ratio(1.0, 0.5, 0.0))

    def test_reduced_point(self, reduced_point):
        """测试：约化参考点的 TUR 比"""
        result, betas = reduced_point
        sigma = entropy_production(result.currents, betas)
        assert tur_ratio(result.noise, sigma, result.current) >= 2


class TestNoiseToSignal:
    """sqrt(S dt) / (I dt)"""

    def test_value(self):
        """测试：噪声信号比数值"""
        assert noise_to_signal(4.0, 2.0, 1.0) == pytest.approx(1.0)

    def test_quadrupled_window_halves(self):
        """测试：时间窗口四倍时比值减半"""
        assert noise_to_signal(0.3, 0.1, 4.0) == pytest.approx(noise_to_signal(0.3, 0.1, 1.0) / 2)

    @pytest.mark.parametrize("noise,current,dt", [(1.0, 0.0, 1.0), (1.0, -0.1, 1.0), (1.0, 0.1, 0.0), (-1.0, 0.1, 1.0)])
    def test_invalid(self, noise, current, dt):
        """测试：非法输入被拒绝"""
        with pytest.raises(DomainError):
            noise_to_signal(noise, current, dt)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
