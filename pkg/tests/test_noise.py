import numpy as np
import pytest
from hypothesis import given, strategies as st

from photonic_vqe.noise import (
    NoiseSpec,
    minimized_energy,
    miscalibrated_minimum,
    noise_sweep,
    perturb_angles,
    perturb_settings,
    realized_minimum,
)
from photonic_vqe.optics import BELL_ANGLES
from photonic_vqe.pauli import Hamiltonian, heisenberg
from photonic_vqe.vqe import EXACT, Mode, OptimizerConfig, settings_for


def test_spec_validation():
    for bad in (-1.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            NoiseSpec(bad)
    with pytest.raises(ValueError):
        NoiseSpec(1.0, resample_policy="PER_SHOT")


def test_zero_epsilon_is_identity():
    np.testing.assert_array_equal(perturb_angles(BELL_ANGLES, NoiseSpec(0.0), 1), BELL_ANGLES)


def test_offset_distribution():
    rng = np.random.default_rng(5)
    d = np.concatenate([perturb_angles(np.zeros(8), NoiseSpec(5.0), rng) for _ in range(12500)])
    assert d.size == 100000
    assert abs(d.mean()) < 0.1
    assert d.std() == pytest.approx(5.0, abs=0.1)


def test_offsets_depend_on_seed():
    a = perturb_angles(np.zeros(8), NoiseSpec(2.0), 1)
    b = perturb_angles(np.zeros(8), NoiseSpec(2.0), 2)
    assert not np.allclose(a, b)


def test_perturbation_keeps_eigenvalue_tables():
    s = settings_for(heisenberg(), Mode.VQE_P)
    p = perturb_settings(s, NoiseSpec(3.0), np.random.default_rng(0))
    assert [x.eig_table for x in p] == [x.eig_table for x in s]
    assert all(x.angles != y.angles for x, y in zip(p, s))


@given(st.integers(0, 2**32 - 1), st.floats(0, 15))
def test_single_setting_minimum_is_invariant(seed, eps):
    e = miscalibrated_minimum(heisenberg(), Mode.VQE_E, NoiseSpec(eps), np.random.default_rng(seed))
    assert e == pytest.approx(-3.0, abs=1e-9)


@given(st.integers(0, 2**32 - 1), st.floats(0, 15))
def test_multi_setting_minimum_obeys_weyl_bound(seed, eps):
    # each term is a unitary conjugate of a +-1 observable, so the sum is >= -3
    e = miscalibrated_minimum(heisenberg(), Mode.VQE_P, NoiseSpec(eps), np.random.default_rng(seed))
    assert e >= -3.0 - 1e-9


@pytest.mark.parametrize("mode", list(Mode))
def test_realized_minimum_matches_eigenvalue(mode):
    h = Hamiltonian.from_terms([("XX", 1.0), ("YY", 0.5), ("ZZ", -0.3)])
    rng = np.random.default_rng(9)
    for _ in range(5):
        s = perturb_settings(settings_for(h, mode), NoiseSpec(6.0), rng)
        assert realized_minimum(h, s) == pytest.approx(minimized_energy(h, s), abs=1e-9)


def test_sweep_shape_and_determinism():
    opt = OptimizerConfig(max_iterations=20)
    a = noise_sweep(heisenberg(), (0.0, 4.0), 2, EXACT, opt, seed=1)
    b = noise_sweep(heisenberg(), (0.0, 4.0), 2, EXACT, opt, seed=1)
    assert a.records == b.records
    assert len(a.records) == 2 * 2 * 2
    for eps, mode, mean, sd, n in a.summary():
        assert n == 2
        assert mean == pytest.approx(a.energies(eps, mode).mean())
    with pytest.raises(ValueError):
        noise_sweep(heisenberg(), (), 1)
    with pytest.raises(ValueError):
        noise_sweep(heisenberg(), (1.0,), 0)


def test_zero_noise_sweep_matches_plain_runs():
    from photonic_vqe.vqe import run_vqe, trial_seeds

    opt = OptimizerConfig(max_iterations=40)
    res = noise_sweep(heisenberg(), (0.0,), 3, 900, opt, seed=4)
    for mode in Mode:
        plain = [run_vqe(heisenberg(), mode, 900, opt, s).final_energy for s in trial_seeds(4, 3)]
        assert res.energies(0.0, mode).tolist() == plain
