"""Tests for the even-parity collective-spin sector"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.qar.collective_spin import (
    build_sector,
    closed_form_couplings,
    dicke_jx,
    ladder_coefficient,
)
from src.qar.errors import DomainError

odd_n = st.integers(min_value=1, max_value=30).map(lambda k: 2 * k + 1)


class TestLadderCoefficient:
    """Clebsch-Gordan ladder amplitudes"""

    def test_top_state_cannot_be_raised(self):
        """测试：最高态不能再升"""
        assert ladder_coefficient(3, 1.5, "+") == 0.0

    def test_bottom_state_cannot_be_lowered(self):
        """测试：a=-N/2 态不能再降"""
        assert ladder_coefficient(3, -1.5, "-") == 0.0

    def test_raising_from_half(self):
        """测试：a=1/2 的升算符系数"""
        assert ladder_coefficient(3, 0.5, "+") == pytest.approx(np.sqrt(3), rel=1e-14)

    def test_lowering_from_half(self):
        """测试：a=1/2 的降算符系数"""
        assert ladder_coefficient(5, 0.5, "-") == pytest.approx(3.0, rel=1e-14)

    def test_numeric_sign_accepted(self):
        """测试：符号参数接受 +1/-1"""
        assert ladder_coefficient(5, 0.5, -1) == ladder_coefficient(5, 0.5, "-")

    def test_out_of_range_label(self):
        """测试：超出范围的标签抛出 DomainError"""
        with pytest.raises(DomainError, match="outside"):
            ladder_coefficient(3, 2.5, "+")

    def test_integer_label_rejected(self):
        """测试：整数标签被拒绝"""
        with pytest.raises(DomainError, match="half-integer"):
            ladder_coefficient(3, 1.0, "+")

    def test_unknown_sign(self):
        """测试：未知符号抛出 DomainError"""
        with pytest.raises(DomainError, match="sign"):
            ladder_coefficient(3, 0.5, "up")


class TestBuildSector:
    """Sector energies and coupling matrices"""

    def test_energies_n3(self):
        """测试：N=3 的扇区能量"""
        sector = build_sector(3)
        np.testing.assert_allclose(sector.energies, [0.25, 2.25])
        assert sector.energies[1] - sector.energies[0] == pytest.approx(2.0)

    def test_energy_scale(self):
        """测试：能量按 Ω 缩放"""
        sector = build_sector(5, omega=2.5)
        np.testing.assert_allclose(sector.energies, 2.5 * np.array([0.25, 2.25, 6.25]))

    def test_jx_element_n3(self):
        """测试：N=3 的 Jx 矩阵元"""
        assert build_sector(3).jx[0, 1] == pytest.approx(np.sqrt(3) / 2, abs=1e-12)

    def test_jx2_elements_n5(self):
        """测试：N=5 的 Jx² 矩阵元"""
        sector = build_sector(5)
        assert sector.jx2[0, 2] == pytest.approx(0.25 * np.sqrt(8) * np.sqrt(5), abs=1e-12)
        # fold pair between 1/2 and 3/2
        assert sector.jx2[0, 1] == pytest.approx(0.25 * 3 * np.sqrt(8), abs=1e-12)

    def test_jx_diagonal_at_half(self):
        """测试：a=1/2 处 Jx 对角元不为零"""
        for N in (3, 11, 31):
            assert build_sector(N).jx[0, 0] == pytest.approx((N + 1) / 4, abs=1e-12)

    @pytest.mark.parametrize("N", [2, 10, 0, -3])
    def test_rejects_bad_n(self, N):
        """测试：偶数或非正 N 被拒绝"""
        with pytest.raises(DomainError):
            build_sector(N)

    def test_rejects_single_spin(self):
        """测试：N=1 被拒绝"""
        with pytest.raises(DomainError, match=">= 3"):
            build_sector(1)

    def test_rejects_nonpositive_omega(self):
        """测试：非正 Ω 被拒绝"""
        with pytest.raises(DomainError, match="omega"):
            build_sector(5, omega=0.0)

    def test_sector_is_read_only(self):
        """测试：扇区数组只读"""
        sector = build_sector(5)
        with pytest.raises(ValueError):
            sector.energies[0] = 1.0
        with pytest.raises(AttributeError):
            sector.N = 7

    def test_labels_and_index(self):
        """测试：标签与索引互相对应"""
        sector = build_sector(7)
        np.testing.assert_allclose(sector.labels, [0.5, 1.5, 2.5, 3.5])
        assert sector.index(2.5) == 2
        with pytest.raises(DomainError):
            sector.index(4.5)

    def test_coupling_kinds(self):
        """测试：两种耦合算符按名称取得"""
        sector = build_sector(7)
        np.testing.assert_allclose(sector.coupling("jx2_over_n"), sector.jx2 / 7)
        with pytest.raises(DomainError, match="coupling kind"):
            sector.coupling("jz")


class TestOracleEquivalence:
    """Dicke-basis projection against the closed-form ladder expressions"""

    def test_all_odd_n_up_to_101(self):
        """测试：N≤101 的投影结果与闭式一致"""
        for N in range(3, 102, 2):
            sector = build_sector(N)
            jx, jx2 = closed_form_couplings(N)
            off = ~np.eye(sector.dim, dtype=bool)
            np.testing.assert_allclose(sector.jx[off], jx[off], rtol=1e-12, atol=1e-12)
            np.testing.assert_allclose(sector.jx2[off], jx2[off], rtol=1e-12, atol=1e-12)

    def test_full_jx_is_hermitian(self):
        """测试：Dicke 基 Jx 对称"""
        full = dicke_jx(9)
        np.testing.assert_allclose(full, full.T)
        assert full.shape == (10, 10)


class TestSelectionRules:
    """Support of the coupling matrices"""

    @given(odd_n)
    def test_jx_support(self, N):
        """测试：Jx 只连接相邻态"""
        sector = build_sector(N)
        k = np.arange(sector.dim)
        dist = np.abs(k[:, None] - k[None, :])
        off = dist > 0
        assert np.all(np.abs(sector.jx[off & (dist != 1)]) < 1e-12)
        assert np.all(np.abs(sector.jx[dist == 1]) > 0)

    @given(odd_n)
    def test_jx2_support(self, N):
        """测试：Jx² 只连接间隔为 2 的态（及 1/2↔3/2）"""
        sector = build_sector(N)
        k = np.arange(sector.dim)
        dist = np.abs(k[:, None] - k[None, :])
        fold = np.zeros_like(dist, dtype=bool)
        fold[0, 1] = fold[1, 0] = True
        allowed = (dist == 2) | fold
        off = dist > 0
        assert np.all(np.abs(sector.jx2[off & ~allowed]) < 1e-9)
        assert np.all(np.abs(sector.jx2[allowed]) > 0)

    @given(odd_n)
    def test_symmetric_and_increasing(self, N):
        """测试：耦合矩阵对称，能量递增"""
        sector = build_sector(N)
        np.testing.assert_allclose(sector.jx, sector.jx.T, atol=1e-12)
        np.testing.assert_allclose(sector.jx2, sector.jx2.T, atol=1e-9)
        assert np.all(np.diff(sector.energies) > 0)


class TestSuperradiantScaling:
    """|<v_a|Jx|v_a+1>|^2 / N^2 tends to 1/16"""

    def test_convergence_to_one_sixteenth(self):
        """测试：基态矩阵元平方/N² 单调趋近 1/16"""
        deviations = []
        for N in (11, 51, 201):
            element = build_sector(N).jx[0, 1]
            deviations.append(abs(element**2 / N**2 - 1 / 16))
        assert deviations == sorted(deviations, reverse=True)

    def test_large_n_limit(self):
        """测试：N=100001 时接近 1/16"""
        N = 100001
        element = 0.5 * ladder_coefficient(N, 0.5, "+")
        assert element**2 / N**2 == pytest.approx(1 / 16, abs=1e-4)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
