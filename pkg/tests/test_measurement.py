import numpy as np
import pytest
from hypothesis import given, strategies as st

from photonic_vqe.grouping import CommutativityMode, GroupKind, MeasurementGroup, group_strings
from photonic_vqe.measurement import (
    BELL_EIGENVALUES,
    compile_setting,
    compile_settings,
    effective_observable,
    estimate_energy,
    estimator_std,
    outcome_probabilities,
    sample_shots,
    split_shots,
)
from photonic_vqe.optics import BELL_DETECTOR_ORDER
from photonic_vqe.pauli import (
    BASIS,
    HEH_STRINGS,
    SINGLET,
    Hamiltonian,
    PauliString,
    hamiltonian_expectation_exact,
    heisenberg,
    matrix_of,
    random_state,
)


def bell_group(*labels):
    return MeasurementGroup(labels, CommutativityMode.GC_BELL, GroupKind.BELL)


def test_bell_table_matches_independent_oracle(oracle):
    for lab, row in BELL_EIGENVALUES.items():
        assert row == oracle["bell_eigenvalues"][lab]


def test_bell_reconstruction():
    st_ = compile_setting(bell_group("XX", "YY", "ZZ"))
    for s, r in st_.residuals().items():
        assert r < 1e-12


def test_separable_xz_setting(oracle):
    g = MeasurementGroup(("XI", "XZ", "IZ"), CommutativityMode.QWC, GroupKind.SEPARABLE)
    st_ = compile_setting(g)
    rows = {tuple(int(st_.eig_table[PauliString(s)][k]) for s in ("XI", "IZ", "XZ")) for k in range(4)}
    assert rows == {(d["XI"], d["IZ"], d["XZ"]) for d in oracle["xz_basis_signs"]}
    assert max(st_.residuals().values()) < 1e-10


def test_compile_rejects_non_bell_member():
    g = MeasurementGroup(("XX",), CommutativityMode.GC_BELL, GroupKind.BELL)
    assert compile_setting(g).covers("XX")
    with pytest.raises(ValueError):
        compile_setting(MeasurementGroup(("XXX",), CommutativityMode.QWC, GroupKind.SEPARABLE))


def test_outcome_probabilities_examples(oracle):
    bell = compile_setting(bell_group("XX", "YY", "ZZ"))
    assert np.allclose(outcome_probabilities(BASIS["aH"], bell), oracle["bell_probs_aH"])
    comp = compile_setting(MeasurementGroup(("ZZ",), CommutativityMode.QWC, GroupKind.SEPARABLE))
    p = outcome_probabilities(SINGLET, comp)
    # detector order of the all-zero setting is (aH, bV, bH, aV)
    want = np.array(oracle["computational_probs_singlet"])[[0, 3, 2, 1]]
    assert np.allclose(p, want)


@given(st.integers(0, 2**32 - 1))
def test_outcome_probabilities_sum_to_one(seed):
    r = np.random.default_rng(seed)
    for s in compile_settings(group_strings(HEH_STRINGS, "GC_BELL")):
        p = outcome_probabilities(random_state(r), s)
        assert p.min() >= 0 and p.sum() == pytest.approx(1, abs=1e-12)


def test_sample_shots_reproducible_and_valid():
    p = [0.1, 0.2, 0.3, 0.4]
    a = sample_shots(p, 1000, np.random.default_rng(7))
    b = sample_shots(p, 1000, np.random.default_rng(7))
    assert a == b and a.total == 1000 and sum(a.counts) == 1000
    assert sample_shots(p, 0, 1).counts == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        sample_shots([0.5, 0.6, 0, 0], 10, 0)
    with pytest.raises(ValueError):
        sample_shots(p, -1, 0)


def test_law_of_large_numbers():
    n = 10**6
    f = sample_shots([0.25] * 4, n, np.random.default_rng(1)).frequencies()
    sigma = np.sqrt(0.25 * 0.75 / n)
    assert np.all(np.abs(f - 0.25) < 3 * sigma)


def test_split_shots():
    assert split_shots(9000, 1) == [9000]
    assert split_shots(9000, 3) == [3000] * 3
    assert split_shots(10, 3) == [4, 3, 3]


def test_shot_allocation_examples():
    h = heisenberg()
    bell = compile_settings(group_strings(h.strings, "GC_BELL"))
    pauli = compile_settings(group_strings(h.strings, "QWC"))
    assert estimate_energy(SINGLET, h, bell, 9000, 0).shots_used == {0: 9000}
    assert estimate_energy(SINGLET, h, pauli, 9000, 0).shots_used == {0: 3000, 1: 3000, 2: 3000}


def test_exact_singlet_energy():
    h = heisenberg()
    bell = compile_settings(group_strings(h.strings, "GC_BELL"))
    assert estimate_energy(SINGLET, h, bell, exact=True).value == -3.0


def test_identity_is_exactly_one():
    h = Hamiltonian.from_terms([("II", 2.0), ("ZZ", 1.0)])
    s = compile_settings(group_strings(h.strings, "QWC"))
    est = estimate_energy(random_state(np.random.default_rng(0)), h, s, 100, 0)
    assert est.per_string[h.strings[0]] == 1.0


def test_exact_matches_dense(rng):
    for strings in (HEH_STRINGS, ("XX", "YY", "ZZ")):
        h = Hamiltonian.from_terms([(p, rng.normal()) for p in strings])
        for mode in ("QWC", "GC_BELL"):
            s = compile_settings(group_strings(h.strings, mode))
            assert np.allclose(effective_observable(h, s), h.matrix(), atol=1e-12)
            for _ in range(20):
                psi = random_state(rng)
                est = estimate_energy(psi, h, s, exact=True).value
                assert est == pytest.approx(hamiltonian_expectation_exact(psi, h), abs=1e-10)


def test_sampled_estimator_unbiased_and_stderr(rng):
    h = heisenberg()
    s = compile_settings(group_strings(h.strings, "QWC"))
    psi = random_state(rng)
    vals = [estimate_energy(psi, h, s, 900, rng) for _ in range(2000)]
    v = np.array([e.value for e in vals])
    sd = estimator_std(psi, h, s, 900)
    assert abs(v.mean() - hamiltonian_expectation_exact(psi, h)) < 4 * sd / np.sqrt(len(v))
    assert v.std() == pytest.approx(sd, rel=0.1)
    assert np.mean([e.stderr for e in vals]) == pytest.approx(sd, rel=0.05)


def test_uncovered_string_is_an_error():
    h = heisenberg()
    s = compile_settings(group_strings(["XX"], "QWC"))
    with pytest.raises(ValueError):
        estimate_energy(SINGLET, h, s, exact=True)
