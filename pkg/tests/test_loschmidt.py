"""
Loschmidt 回波与时间反演妖测试
"""

import math

import numpy as np
import pytest

from src.core.errors import InvariantViolation, NonPositiveInputs, NotBracketed, ZeroWidth
from src.core.ensembles import build_gue
from src.core.loschmidt import (
    DemonLedger, EchoCurve, demon_experiment, echo_curvature, echo_curve, echo_fidelity, half_width,
    timing_offsets,
)
from src.core.quantum import QuantumState, diagonalize, evolve, fidelity
from src.core.quench import QuenchSetup, entropy_at


class TestEcho:
    """回波保真度 F(δ)"""

    def test_perfect_reversal(self, small_setup):
        assert echo_fidelity(small_setup, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_matches_forward_and_backward_evolution(self, small_setup):
        """F(δ) 等于先演化 t 再逆演化 t − δ 后与初态的保真度"""
        psi0 = small_setup.initial_state()
        for t, delta in ((3.7, 0.4), (50.0, -1.3), (0.2, 0.2)):
            forward = evolve(small_setup.spec, psi0, t)
            reversed_state = evolve(small_setup.spec, forward, -(t - delta))
            assert echo_fidelity(small_setup, delta) == pytest.approx(fidelity(psi0, reversed_state), abs=1e-10)

    def test_symmetric_in_delta(self, small_setup):
        for delta in (0.1, 0.9, 4.0):
            assert echo_fidelity(small_setup, delta) == pytest.approx(echo_fidelity(small_setup, -delta), abs=1e-12)

    def test_curvature_matches_finite_difference(self, setup_factory):
        setup = setup_factory(32, seed=3)
        h = 1e-3 * setup.stats.boltzmann_time
        numerical = (2.0 - echo_fidelity(setup, h) - echo_fidelity(setup, -h)) / h ** 2
        assert numerical == pytest.approx(echo_curvature(setup), rel=1e-4)
        assert echo_curvature(setup) == pytest.approx(2.0 * setup.stats.width ** 2)

    def test_curvature_of_eigenstate(self, small_setup):
        with pytest.raises(ZeroWidth):
            echo_curvature(QuenchSetup.from_eigenstate(small_setup.spec, 0))

    def test_half_width_of_cosine_echo(self, two_level_setup):
        """F(δ) = cos²δ 的半高半宽为 π/4"""
        curve = echo_curve(two_level_setup, np.linspace(-2.0, 2.0, 4001))
        assert half_width(curve) == pytest.approx(math.pi / 4, abs=1e-5)

    def test_half_width_ignores_sample_order(self, two_level_setup):
        deltas = np.linspace(-2.0, 2.0, 401)[::-1]
        assert half_width(echo_curve(two_level_setup, deltas)) == pytest.approx(math.pi / 4, abs=1e-3)

    def test_half_width_needs_both_sides(self, two_level_setup):
        with pytest.raises(NotBracketed):
            half_width(echo_curve(two_level_setup, np.linspace(-0.5, 0.5, 11)))
        with pytest.raises(NotBracketed):
            half_width(echo_curve(two_level_setup, np.linspace(0.0, 2.0, 21)))

    def test_half_width_scales_with_boltzmann_time(self, gue_256_setup):
        tau_B = gue_256_setup.stats.boltzmann_time
        curve = echo_curve(gue_256_setup, np.linspace(-3.0, 3.0, 601) * tau_B)
        assert 0.5 < half_width(curve) / tau_B < 1.2


class TestDemon:
    """时间反演妖账本"""

    def test_timing_offsets_are_reproducible(self):
        offsets = timing_offsets(2.0, 64, seed=11)
        np.testing.assert_array_equal(offsets, timing_offsets(2.0, 64, seed=11))
        assert np.all(np.abs(offsets) <= 1.0)
        # 前缀与样本数无关
        np.testing.assert_array_equal(offsets[:10], timing_offsets(2.0, 10, seed=11))

    def test_half_resolution_fidelity(self, gue_256_setup):
        """τ = τ_B/2：⟨F⟩ ≈ 1 − ⟨δ²⟩/τ_B² = 1 − 1/48"""
        tau_B = gue_256_setup.stats.boltzmann_time
        ledger = demon_experiment(gue_256_setup, tau_clock=0.5 * tau_B, t_run=50 * tau_B)
        assert ledger.mean_recovered_fidelity == pytest.approx(1 - 1 / 48, abs=0.01)

    def test_coarse_clock_fails(self, gue_256_setup):
        tau_B = gue_256_setup.stats.boltzmann_time
        ledger = demon_experiment(gue_256_setup, tau_clock=20 * tau_B, t_run=50 * tau_B)
        assert ledger.mean_recovered_fidelity < 0.2
        assert ledger.residual_entropy > 0.5

    def test_perfect_clock(self, small_setup):
        t_run = 30.0
        ledger = demon_experiment(small_setup, tau_clock=0.0, t_run=t_run, perfect_clock=True)
        assert ledger.mean_recovered_fidelity == 1.0
        assert ledger.residual_entropy == 0.0
        assert ledger.clock_record_entropy == math.inf
        assert ledger.system_entropy_at_reversal == pytest.approx(entropy_at(small_setup, t_run))

    def test_ledger_entries(self, small_setup):
        tau_B = small_setup.stats.boltzmann_time
        ledger = demon_experiment(small_setup, tau_clock=0.1 * tau_B, t_run=40 * tau_B,
                                  n_samples=32, seed=5)
        assert ledger.clock_record_entropy == pytest.approx(math.log(400))
        assert ledger.asymptotic_system_entropy == pytest.approx(math.log(40))
        assert 0.0 <= ledger.residual_entropy <= math.log(32) + 1e-9
        assert ledger.fidelity_stderr >= 0.0
        assert ledger.n_samples == 32
        assert ledger.to_dict()["n_samples"] == 32

    def test_same_seed_same_ledger(self, small_setup):
        first = demon_experiment(small_setup, 0.7, 20.0, n_samples=16, seed=2)
        second = demon_experiment(small_setup, 0.7, 20.0, n_samples=16, seed=2)
        assert first == second

    def test_invalid_inputs(self, small_setup):
        with pytest.raises(NonPositiveInputs):
            demon_experiment(small_setup, tau_clock=1.0, t_run=0.0)
        with pytest.raises(NonPositiveInputs):
            demon_experiment(small_setup, tau_clock=0.0, t_run=1.0)
        with pytest.raises(NonPositiveInputs):
            demon_experiment(small_setup, tau_clock=1.0, t_run=1.0, n_samples=0)

    def test_negative_entropy_violates_ledger(self):
        with pytest.raises(InvariantViolation):
            DemonLedger(t_run=1.0, tau_clock=0.1, system_entropy_at_reversal=-0.1,
                        clock_record_entropy=0.0, mean_recovered_fidelity=0.5, residual_entropy=0.0)


class TestEchoWidth:
    """回波峰宽与 τ_B"""

    def test_curvature_on_gue_128(self, setup_factory):
        setup = setup_factory(128, seed=6)
        h = 1e-4 * setup.stats.boltzmann_time
        numerical = (2.0 - echo_fidelity(setup, h) - echo_fidelity(setup, -h)) / h ** 2
        assert numerical == pytest.approx(echo_curvature(setup), rel=1e-3)

    def test_doubling_hamiltonian_quadruples_curvature(self):
        hamiltonian = build_gue(16, seed=2)
        psi0 = QuantumState.basis(16, 0)
        setup = QuenchSetup.from_state(diagonalize(hamiltonian), psi0)
        doubled = QuenchSetup.from_state(diagonalize(hamiltonian.scaled(2.0)), psi0)
        assert doubled.stats.boltzmann_time == pytest.approx(0.5 * setup.stats.boltzmann_time, rel=1e-9)
        assert echo_curvature(doubled) == pytest.approx(4.0 * echo_curvature(setup), rel=1e-9)

    def test_half_width_of_quadratic_peak(self):
        """F(δ) = 1 − (δ/τ_B)² 的半高半宽为 τ_B/√2"""
        tau_B = 1.7
        deltas = np.linspace(-1.5, 1.5, 3001) * tau_B
        curve = EchoCurve(deltas=deltas, fidelities=1.0 - (deltas / tau_B) ** 2)
        assert half_width(curve) == pytest.approx(tau_B / math.sqrt(2.0), rel=0.01)

    def test_half_width_takes_nearest_crossing(self):
        """两侧交点不对称时取距峰较近的一侧"""
        deltas = np.linspace(-3.0, 3.0, 61)
        fidelities = np.where(deltas >= 0, 1.0 - 0.5 * deltas, 1.0 + 0.25 * deltas)
        assert half_width(EchoCurve(deltas=deltas, fidelities=fidelities)) == pytest.approx(1.0, abs=1e-12)

    def test_half_width_on_gue_256(self, setup_factory):
        setup = setup_factory(256, seed=8)
        tau_B = setup.stats.boltzmann_time
        curve = echo_curve(setup, np.linspace(-3.0, 3.0, 601) * tau_B)
        assert 0.3 <= half_width(curve) / tau_B <= 3.0


class TestDemonLedger:
    """账本的单调性与熵的比较"""

    def test_finer_clock_never_recovers_less(self, gue_256_setup):
        tau_B = gue_256_setup.stats.boltzmann_time
        ledgers = [demon_experiment(gue_256_setup, tau_clock=m * tau_B, t_run=50 * tau_B, n_samples=256, seed=0)
                   for m in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)]
        for finer, coarser in zip(ledgers, ledgers[1:]):
            tolerance = 2.0 * math.hypot(finer.fidelity_stderr, coarser.fidelity_stderr)
            assert finer.mean_recovered_fidelity >= coarser.mean_recovered_fidelity - tolerance

    def test_record_entropy_covers_system_entropy(self, small_setup):
        """τ_clock ≤ τ_B 时 ln(t_run/τ_clock) ≥ ln(t_run/τ_B)"""
        tau_B = small_setup.stats.boltzmann_time
        for m in (0.1, 0.5, 1.0):
            ledger = demon_experiment(small_setup, tau_clock=m * tau_B, t_run=30 * tau_B, n_samples=16, seed=1)
            assert ledger.clock_record_entropy >= ledger.asymptotic_system_entropy
            assert ledger.asymptotic_system_entropy == pytest.approx(math.log(30))
