"""
数值性质测试
在桌面规模上验证闭式解、熵上界、饱和、对数增长、回波与时钟的整体性质
"""

import math

import numpy as np
import pytest

from src.core.bounds import black_hole_clock, bound_consistency
from src.core.clock import ClockSpec, clock_state, pointer_basis, readout_distribution, record_entropy
from src.core.ensembles import build_gue
from src.core.loschmidt import echo_fidelity
from src.core.quantum import QuantumState, diagonalize, evolve, fidelity
from src.core.quench import (
    QuenchSetup, default_fit_times, diagonal_entropy, entropy_at, entropy_curve, log_growth_fit,
    time_averaged_density_matrix,
)


def _trapezoid_average(setup: QuenchSetup, t: float, steps: int, chunk: int = 1000) -> np.ndarray:
    """本征基下 (1/t)∫₀ᵗ ρ(t′)dt′ 的梯形积分"""
    omega = (setup.energies[:, None] - setup.energies[None, :]).ravel()
    times = np.linspace(0.0, t, steps + 1)
    weights = np.full(times.size, t / steps)
    weights[0] = weights[-1] = 0.5 * t / steps
    kernel = np.zeros(omega.size, dtype=np.complex128)
    for start in range(0, times.size, chunk):
        block = slice(start, start + chunk)
        kernel += np.exp(-1j * np.multiply.outer(omega, times[block])) @ weights[block]
    kernel /= t
    return np.outer(setup.c, setup.c.conj()) * kernel.reshape(setup.dim, setup.dim)


class TestQuenchProperties:
    """淬火熵的整体性质"""

    def test_closed_form_matches_trapezoid_rule(self, setup_factory):
        setup = setup_factory(64, seed=0)
        tau_B = setup.stats.boltzmann_time
        for multiple in (0.5, 3.0, 20.0):
            t = multiple * tau_B
            closed_form = time_averaged_density_matrix(setup, t).entries
            numerical = _trapezoid_average(setup, t, steps=20000)
            assert np.max(np.abs(closed_form - numerical)) < 1e-6

    def test_entropy_never_exceeds_diagonal_entropy(self):
        rng = np.random.default_rng(2024)
        specs = {(dim, seed): diagonalize(build_gue(dim, seed)) for dim in (16, 64, 256) for seed in range(3)}
        for i in range(100):
            dim = (16, 64, 256)[i % 3]
            spec = specs[(dim, i % 4 % 3)]
            psi0 = QuantumState.normalized(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
            setup = QuenchSetup.from_state(spec, psi0)
            t = 10.0 ** rng.uniform(-2.0, 4.0) * setup.stats.boltzmann_time
            assert entropy_at(setup, t) <= diagonal_entropy(setup.p) + 1e-9

    def test_entropy_saturates(self, setup_factory):
        setup = setup_factory(256, seed=2)
        s_diag = diagonal_entropy(setup.p)
        assert entropy_at(setup, 1e4 * setup.stats.boltzmann_time) == pytest.approx(s_diag, rel=0.05)

    @pytest.mark.parametrize("seed", range(5))
    def test_initial_growth_is_logarithmic(self, setup_factory, seed):
        setup = setup_factory(512, seed=seed)
        tau_B = setup.stats.boltzmann_time
        curve = entropy_curve(setup, default_fit_times(tau_B, window=(5.0, 50.0), count=32))
        fit = log_growth_fit(curve, tau_B, (5.0 * tau_B, 50.0 * tau_B))
        assert 0.5 <= fit.slope <= 1.5
        assert fit.r_squared > 0.9


class TestEchoProperties:

    def test_spectral_sum_matches_explicit_reversal(self, setup_factory):
        setup = setup_factory(128, seed=1)
        psi0 = setup.initial_state()
        rng = np.random.default_rng(7)
        tau_B = setup.stats.boltzmann_time
        for delta in rng.uniform(-5.0, 5.0, 50) * tau_B:
            t = 10.0 * tau_B
            reversed_state = evolve(setup.spec, evolve(setup.spec, psi0, t), -(t - delta))
            assert echo_fidelity(setup, delta) == pytest.approx(fidelity(psi0, reversed_state), abs=1e-10)


class TestClockProperties:

    @pytest.mark.parametrize("n", [2, 3, 8, 64, 1024])
    def test_pointer_basis_and_tick_traversal(self, n):
        spec = ClockSpec(n=n, tau=0.3)
        basis = pointer_basis(spec)
        assert np.max(np.abs(basis.conj().T @ basis - np.eye(n))) < 1e-12
        for m in range(n):
            q = readout_distribution(spec, clock_state(spec, m * spec.tau))
            expected = np.zeros(n)
            expected[m] = 1.0
            assert np.max(np.abs(q - expected)) < 1e-12

    def test_record_entropy_is_exact(self):
        spec = ClockSpec(n=64, tau=0.1)
        for k in (1, 2, 16, 64):
            assert record_entropy(spec, k * spec.tau) == math.log(k)


class TestBoundsProperties:

    def test_bridge_over_mass_range(self):
        for mass in np.geomspace(1e-10, 1e40, 51):
            assert bound_consistency(float(mass)).ratio == pytest.approx(2.0, rel=1e-12)

    def test_solar_mass_entropy(self):
        assert black_hole_clock(1.989e30).entropy_exact == pytest.approx(1.05e77, rel=0.01)


class TestReproducibility:
    """每个子命令在相同配置下输出逐字节一致，与线程数无关"""

    @pytest.mark.parametrize("argv", [
        ["quench", "--dim", "32", "--times", "0.1:100:16:log"],
        ["quench", "--ensemble", "spin-chain", "--L", "5", "--times", "0.1:100:16:log"],
        ["echo", "--ensemble", "goe", "--dim", "32"],
        ["clock", "--n", "16"],
        ["demon", "--dim", "32", "--taus", "0:4:5:linear", "--samples", "32"],
        ["bounds"],
    ])
    def test_byte_identical_output(self, argv, invoke):
        serial = invoke(argv + ["--threads", "1"])
        repeat = invoke(argv + ["--threads", "1"])
        threaded = invoke(argv + ["--threads", "4"])
        assert serial[0] == 0
        assert serial[1] == repeat[1] == threaded[1]
