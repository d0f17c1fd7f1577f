from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qitk import discrimination as dsc
from qitk import qubits as qb
from qitk.sampling import random_density, random_pure
from qitk.tensor import DenseOperator, DimensionError, PureState

seeds = st.integers(0, 2**32 - 1)


def _pair(theta):
    return PureState([math.cos(theta), math.sin(theta)]), PureState([math.cos(theta), -math.sin(theta)])


def test_ensemble_and_povm_validation():
    with pytest.raises(ValueError):
        dsc.Ensemble([])
    with pytest.raises(ValueError):
        dsc.Ensemble([qb.ZERO, qb.ONE], [0.7, 0.7])
    with pytest.raises(DimensionError):
        dsc.Ensemble([qb.ZERO, qb.bell_state("phi+")])
    with pytest.raises(ValueError):
        dsc.Povm([np.eye(2), np.eye(2)])
    with pytest.raises(ValueError):
        dsc.Povm([np.diag([1.5, 1]), np.diag([-0.5, 0])])
    with pytest.raises(ValueError):
        dsc.Povm([np.eye(2)], labels=(0, 1))


def test_trace_distance_matches_bloch_distance():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = random_density(2, rng), random_density(2, rng)
        gap = np.linalg.norm(qb.state_to_bloch(a) - qb.state_to_bloch(b))
        assert abs(dsc.trace_distance(a, b) - gap / 2) < 1e-12


@pytest.mark.parametrize("theta", [0.05, 0.3, 0.6, math.pi / 4 - 0.01])
def test_helstrom_pure_pair(theta):
    a, b = _pair(theta)
    res = dsc.helstrom(dsc.Ensemble([a, b]))
    overlap2 = abs(a.overlap(b)) ** 2
    assert abs(res.p_error - 0.5 * (1 - math.sqrt(1 - overlap2))) < 1e-12
    assert abs(res.p_error - 0.5 * (1 - math.sin(2 * theta))) < 1e-12
    assert abs(dsc.error_probability(dsc.Ensemble([a, b]), res.povm) - res.p_error) < 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, st.floats(0.05, 0.95))
def test_helstrom_beats_random_measurements(seed, p):
    rng = np.random.default_rng(seed)
    e = dsc.Ensemble([random_density(2, rng), random_density(2, rng)], [p, 1 - p])
    best = dsc.helstrom(e)
    assert abs(best.p_error - 0.5 * (1 - dsc.trace_distance(
        DenseOperator(p * e.states[0].data), DenseOperator((1 - p) * e.states[1].data)) * 2)) < 1e-10
    for _ in range(5):
        proj = random_pure(2, rng).proj().data
        povm = dsc.Povm([proj, np.eye(2) - proj])
        assert dsc.error_probability(e, povm) >= best.p_error - 1e-12


def test_helstrom_identical_states_guess_first():
    rho = random_density(2, 3)
    res = dsc.helstrom(dsc.Ensemble([rho, rho], [0.5, 0.5]))
    assert abs(res.p_error - 0.5) < 1e-12
    assert res.povm.effects[0].allclose(np.eye(2))


def test_helstrom_needs_two_states():
    with pytest.raises(ValueError):
        dsc.helstrom(dsc.Ensemble([qb.ZERO, qb.ONE, qb.PLUS]))


@pytest.mark.parametrize("alpha", [0.1, 0.4, 0.7])
def test_usd_two_pure(alpha):
    res = dsc.usd_two_pure(alpha)
    plus, minus = res.states
    assert abs(res.p_success - (1 - math.cos(2 * alpha))) < 1e-12
    assert abs(res.p_success - (1 - abs(plus.overlap(minus)))) < 1e-12
    e_p, e_m, _ = res.povm.effects
    assert abs(e_p.expect(minus)) < 1e-14 and abs(e_m.expect(plus)) < 1e-14
    assert abs(np.linalg.eigvalsh(e_p.data + e_m.data)[-1] - 1) < 1e-12
    for a, e in zip(res.kraus, (e_p, e_m)):
        assert np.allclose(a.conj().T @ a, e.data)


def test_usd_two_pure_range():
    for bad in (0.0, math.pi / 4, 1.0):
        with pytest.raises(ValueError):
            dsc.usd_two_pure(bad)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 4))
def test_usd_linear_independent_never_errs(seed, n):
    rng = np.random.default_rng(seed)
    states = [random_pure(4, rng) for _ in range(n)]
    res = dsc.usd_linear_independent(states)
    fire = dsc.cross_firing(res.povm, states)
    assert np.max(np.abs(fire - np.diag(np.diag(fire)))) < 1e-9
    assert np.all(res.success > 0)
    assert dsc.completeness_defect(res.povm.effects) < 1e-9
    if n == 2:
        assert res.optimal


def test_usd_linear_independent_errors():
    with pytest.raises(ValueError):
        dsc.usd_linear_independent([qb.ZERO, qb.ONE, qb.PLUS])
    with pytest.raises(ValueError):
        dsc.usd_linear_independent([qb.ZERO, qb.ZERO])


def test_usd_linear_independent_orthogonal_is_perfect():
    res = dsc.usd_linear_independent([qb.ZERO, qb.ONE])
    assert np.allclose(res.success, 1)
    assert res.optimal is True


def _time_bin_monte_carlo(alpha, eta, dark, n=400_000, seed=5):
    rng = np.random.default_rng(seed)
    photons = rng.poisson(abs(alpha) ** 2, n)
    detected = rng.binomial(photons, eta) > 0
    signal_click = detected | (rng.random(n) < dark)
    empty_click = rng.random(n) < dark
    wrong = (empty_click & ~signal_click) + 0.5 * (empty_click & signal_click)
    conclusive = signal_click | empty_click
    return conclusive.mean(), wrong.mean()


@pytest.mark.parametrize("alpha,eta", [(1.0, 1.0), (1.0, 0.5), (2.0, 0.3), (0.3, 0.9)])
def test_time_bin_ideal_detector(alpha, eta):
    rep = dsc.usd_time_bin(alpha, eta)
    assert rep.unambiguous and rep.p_error == 0
    assert abs(rep.p_conclusive - (1 - math.exp(-eta * alpha**2))) < 1e-10
    assert rep.truncated_norm > 1 - 1e-10


@pytest.mark.parametrize("alpha,eta,dark", [(1.0, 0.8, 0.05), (1.5, 0.4, 0.1)])
def test_time_bin_dark_counts_against_simulation(alpha, eta, dark):
    rep = dsc.usd_time_bin(alpha, eta, dark)
    assert not rep.unambiguous
    conclusive, wrong = _time_bin_monte_carlo(alpha, eta, dark)
    assert abs(rep.p_conclusive - conclusive) < 0.005
    assert abs(rep.p_error - wrong) < 0.005


def test_time_bin_rejects_short_cutoff():
    with pytest.raises(ValueError):
        dsc.usd_time_bin(3.0, cutoff=3)
    with pytest.raises(ValueError):
        dsc.usd_time_bin(1.0, detector_eta=1.5)


def test_coherent_amplitudes_are_poisson():
    c = dsc.coherent_amplitudes(1.3, 40)
    lam = 1.3**2
    pois = [math.exp(-lam) * lam**k / math.factorial(k) for k in range(41)]
    assert np.allclose(np.abs(c) ** 2, pois, atol=1e-15)


@pytest.mark.parametrize("theta", [0.2, 0.5])
def test_pgm_equals_helstrom_for_symmetric_pair(theta):
    e = dsc.Ensemble(list(_pair(theta)))
    povm = dsc.pgm(e)
    assert abs(dsc.error_probability(e, povm) - dsc.helstrom(e).p_error) < 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 5))
def test_pgm_is_a_povm(seed, n):
    rng = np.random.default_rng(seed)
    w = rng.random(n)
    e = dsc.Ensemble([random_density(3, rng) for _ in range(n)], w / w.sum())
    povm = dsc.pgm(e)
    assert dsc.completeness_defect(povm.effects) < 1e-9
    assert len(povm) == n
    assert abs(povm.probabilities(e.states[0]).sum() - 1) < 1e-9


def test_pgm_adds_complement_for_rank_deficient_average():
    e = dsc.Ensemble([PureState([1, 0, 0]), PureState([0, 1, 0])])
    povm = dsc.pgm(e)
    assert povm.labels == (0, 1, None)
    assert np.allclose(povm.effects[2].data, np.diag([0, 0, 1]))


def test_chernoff_pure_states():
    for theta in (0.1, 0.4, 0.7):
        a, b = _pair(theta)
        xi = dsc.chernoff_exponent(a.proj(), b.proj())
        assert abs(xi + math.log(abs(a.overlap(b)) ** 2)) < 1e-9


def test_chernoff_commuting_against_grid():
    p, q = np.array([0.8, 0.15, 0.05]), np.array([0.2, 0.3, 0.5])
    s = np.linspace(0, 1, 200_001)
    oracle = -math.log(np.min((p[:, None] ** s * q[:, None] ** (1 - s)).sum(axis=0)))
    assert abs(dsc.chernoff_exponent(np.diag(p), np.diag(q)) - oracle) < 1e-9


def test_chernoff_special_cases():
    assert dsc.chernoff_exponent(qb.ZERO.proj(), qb.ONE.proj()) == math.inf
    rho = random_density(2, 8)
    assert dsc.chernoff_exponent(rho, rho) < 1e-9
    with pytest.raises(DimensionError):
        dsc.chernoff_exponent(np.eye(2) / 2, np.eye(3) / 3)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_chernoff_bounds_helstrom(seed):
    rng = np.random.default_rng(seed)
    a, b = random_density(2, rng), random_density(2, rng)
    xi = dsc.chernoff_exponent(a, b)
    # single-copy error never beats the quantum Chernoff bound (1/2) Q_min
    assert dsc.tensor_power_error(a, b, 1) <= 0.5 * math.exp(-xi) + 1e-9


def test_chernoff_rate_matches_error_decay():
    a = PureState([1, 0])
    b = PureState.normalized([1, 1])
    xi = dsc.chernoff_exponent(a.proj(), b.proj())
    ns = np.arange(1, 7)
    errs = [dsc.tensor_power_error(a.proj(), b.proj(), int(n)) for n in ns]
    slope = -np.polyfit(ns, np.log(errs), 1)[0]
    assert abs(slope - xi) / xi < 0.2
