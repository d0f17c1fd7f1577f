from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qitk import qubits as qb
from qitk.bell import quantum as bq
from qitk.bell import tables as bt
from qitk.sampling import random_directions, random_pure
from qitk.tensor import DimensionError, kron

seeds = st.integers(0, 2**32 - 1)
SQ2 = math.sqrt(2)


def _settings(rng):
    return tuple(random_directions(4, rng))


def test_singlet_optimal_chsh():
    s = bq.chsh_value(qb.bell_state("psi-"), *bq.optimal_singlet_settings())
    assert abs(s + 2 * SQ2) < 1e-10


def test_singlet_with_shared_settings_has_no_violation():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, a2 = random_directions(2, rng)
        assert abs(bq.chsh_value(qb.bell_state("psi-"), a, a2, a, a2)) <= 2 + 1e-12


def test_product_state_never_violates():
    rng = np.random.default_rng(1)
    psi = kron(qb.ZERO, qb.ZERO)
    worst = max(abs(bq.chsh_value(psi, *_settings(rng))) for _ in range(10_000))
    assert worst <= 2 + 1e-12


def test_chsh_operator_matches_correlators():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a, a2, b, b2 = _settings(rng)
        psi = random_pure((2, 2), rng)
        beh = bq.behavior_from_state(psi, (a, a2), (b, b2))
        assert abs(beh.chsh() - bq.chsh_value(psi, a, a2, b, b2)) < 1e-12


def test_chsh_dims():
    with pytest.raises(DimensionError):
        bq.chsh_value(qb.ghz_state(), *bq.optimal_singlet_settings())


def test_tsirelson_optimal_settings():
    rep = bq.tsirelson_check(*bq.optimal_singlet_settings())
    assert abs(rep.max_eig_s2 - 8) < 1e-9
    assert abs(rep.max_eig_s - 2 * SQ2) < 1e-9
    assert rep.identity_residual < 1e-10


def test_square_identity_against_direct_product():
    # for S = AB + A'B + AB' - A'B', S^2 = 4 - [A,A'](x)[B,B']
    rng = np.random.default_rng(3)
    for _ in range(20):
        dirs = _settings(rng)
        A, A2, B, B2 = (qb.sigma_n(n).data for n in dirs)
        s = bq.chsh_operator(*dirs)
        comm = np.kron(A @ A2 - A2 @ A, B @ B2 - B2 @ B)
        assert np.max(np.abs(s @ s - (4 * np.eye(4) - comm))) < 1e-10
        assert bq.tsirelson_check(*dirs).identity_residual < 1e-10


def test_commuting_settings_give_four():
    z, x = np.array([0, 0, 1.0]), np.array([1.0, 0, 0])
    rep = bq.tsirelson_check(z, z, x, z)
    s = bq.chsh_operator(z, z, x, z)
    assert np.allclose(s @ s, 4 * np.eye(4))
    assert abs(rep.max_eig_s - 2) < 1e-12


def test_tsirelson_random_settings():
    rng = np.random.default_rng(4)
    worst = max(bq.tsirelson_check(*_settings(rng)).max_eig_s2 for _ in range(1000))
    assert worst <= 8 + 1e-9


@pytest.mark.parametrize("theta", np.linspace(0, math.pi / 4, 9))
def test_optimal_chsh_pure(theta):
    s, beta = bq.optimal_chsh_pure(theta)
    assert abs(s - 2 * math.sqrt(1 + math.sin(2 * theta) ** 2)) < 1e-9
    assert abs(math.cos(beta) - 1 / math.sqrt(1 + math.sin(2 * theta) ** 2)) < 1e-12


def test_optimal_chsh_special_angles():
    assert abs(bq.optimal_chsh_pure(0)[0] - 2) < 1e-12
    assert abs(bq.optimal_chsh_pure(math.pi / 4)[0] - 2 * SQ2) < 1e-12
    assert abs(bq.optimal_chsh_pure(math.pi / 8)[0] - math.sqrt(6)) < 1e-9
    with pytest.raises(ValueError):
        bq.optimal_chsh_pure(1.0)


def test_optimal_chsh_beats_random_settings():
    rng = np.random.default_rng(5)
    theta = 0.3
    best, _ = bq.optimal_chsh_pure(theta)
    psi = bq.partially_entangled(theta)
    worst = max(abs(bq.chsh_value(psi, *_settings(rng))) for _ in range(3000))
    assert worst <= best + 1e-9


def test_werner_threshold():
    assert abs(bq.werner_chsh_threshold() - 1 / SQ2) < 1e-6
    settings_ = bq.optimal_singlet_settings()
    assert abs(abs(bq.chsh_value(qb.werner_state(0.8), *settings_)) - 0.8 * 2 * SQ2) < 1e-12
    rng = np.random.default_rng(6)
    w = qb.werner_state(1 / 3)
    assert max(abs(bq.chsh_value(w, *_settings(rng))) for _ in range(2000)) <= 2


def test_me_behavior_table():
    x = bt.behavior_to_table(bq.me_behavior())
    q = (1 + 1 / SQ2) / 4
    assert np.allclose(x.j, [[q, q], [q, 0.5 - q]], atol=1e-14)
    assert np.allclose(x.mA, 0.5) and np.allclose(x.mB, 0.5)


def test_singlet_behavior_matches_table_up_to_relabeling():
    a, a2, b, b2 = bq.optimal_singlet_settings()
    x = bt.behavior_to_table(bq.behavior_from_state(qb.bell_state("psi-"), (a, a2), (b, b2)))
    me = bt.behavior_to_table(bq.me_behavior())
    assert bt.relabel(x, flip_a_out=1).allclose(me, atol=1e-14)


def test_product_state_behavior_is_deterministic():
    z = np.array([0, 0, 1.0])
    x = bt.behavior_to_table(bq.behavior_from_state(kron(qb.ZERO, qb.ZERO), (z, z), (z, z)))
    assert x.allclose(bt.deterministic_behavior(1, 1))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_quantum_behaviors_are_no_signaling(seed):
    rng = np.random.default_rng(seed)
    a, a2, b, b2 = _settings(rng)
    beh = bq.behavior_from_state(random_pure((2, 2), rng), (a, a2), (b, b2))
    assert bt.is_no_signaling(beh, 1e-10)[0]


def test_quantum_ch_violation_is_bounded():
    rng = np.random.default_rng(7)
    bound = 1 / SQ2 - 0.5
    worst = -math.inf
    for _ in range(10_000):
        a, a2, b, b2 = _settings(rng)
        x = bt.behavior_to_table(bq.behavior_from_state(random_pure((2, 2), rng), (a, a2), (b, b2)))
        fv = bt.facet_values(x)
        worst = max(worst, fv.max())
    assert worst <= bound + 1e-9


def test_tlm_examples():
    r = 1 / SQ2
    edge = bq.tlm_criterion(r, r, r, -r)
    assert edge.passes and abs(edge.slack) < 1e-12
    pr = bq.tlm_criterion(1, 1, 1, -1)
    assert not pr.passes and abs(pr.slack + math.pi) < 1e-12
    assert bq.tlm_criterion(0, 0, 0, 0).passes
    with pytest.raises(ValueError):
        bq.tlm_criterion(1.1, 0, 0, 0)


def test_tlm_checks_every_sign_position():
    # the minus sign on the first slot is the violated placement
    assert not bq.tlm_criterion(-1, 1, 1, 1).passes


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_tlm_holds_for_quantum_correlators(seed):
    rng = np.random.default_rng(seed)
    a, a2, b, b2 = _settings(rng)
    e = bq.behavior_from_state(random_pure((2, 2), rng), (a, a2), (b, b2)).correlators()
    assert bq.tlm_criterion(e[0, 0], e[0, 1], e[1, 0], e[1, 1]).passes
