"""Tests for the reference engines: golden traces, invariants, equivalences."""

import numpy as np
import pytest

from ssqa.ising import IsingModel, WeightedGraph, maxcut_to_ising
from ssqa.rng import RngStreams
from ssqa.schedules import AnnealParams, LinearSchedule, QSchedule, i0_at, n_rnd_at, q_value_at
from ssqa.solver import (
    ReplicaSet,
    initial_state,
    run_psa,
    run_ssa,
    run_ssqa,
    select_best_replica,
    ssqa_step,
)


def two_spin_model():
    return IsingModel(2, np.array([2, -1]), ((0, 1, 3),))


def noiseless_params(**kw):
    base = dict(steps=3, replicas=2, q=QSchedule(2, 2, 1, 0),
                i0=LinearSchedule.constant(4), n_rnd=LinearSchedule.constant(0),
                seed=1)
    base.update(kw)
    return AnnealParams(**base)


def random_model(rng, n, p=0.4):
    couplings = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                couplings.append((i, j, int(rng.integers(-8, 8))))
    h = rng.integers(-8, 8, size=n)
    return IsingModel(n, h, tuple(couplings))


# ------------------------------------------------------- hand-computed trace

def test_three_step_golden_trace():
    """Hand evaluation of the update rule for N=2, R=2, q=2, I0=4, no noise.

    Expected states were computed by hand from
    I = h + J*sigma(t) + q*sigma_{k+1}(t-1), then the three-branch
    saturation with bounds [-4, 3] and sign extraction.
    """
    model = two_spin_model()
    params = noiseless_params()
    rng = RngStreams(1, 2)
    state = ReplicaSet(
        sigma=np.array([[1, -1], [-1, 1]], dtype=np.int64),
        sigma_prev=np.array([[1, -1], [-1, 1]], dtype=np.int64),
        is_acc=np.zeros((2, 2), dtype=np.int64),
    )
    state = ssqa_step(model, params, state, rng)
    assert state.sigma.tolist() == [[-1, 1], [1, -1]]
    assert state.is_acc.tolist() == [[-3, 3], [3, -4]]  # both saturation branches

    state = ssqa_step(model, params, state, rng)
    assert state.sigma.tolist() == [[1, 1], [1, -1]]
    # raw = -4 is NOT below -I0 = -4, so the middle branch keeps it.
    assert state.is_acc.tolist() == [[0, 1], [3, -4]]

    state = ssqa_step(model, params, state, rng)
    assert state.sigma.tolist() == [[1, 1], [1, 1]]
    assert state.is_acc.tolist() == [[3, 1], [0, 0]]
    assert state.t == 3


def test_single_pbit_accumulation_and_saturation():
    """N=1, R=1, h=+2, no couplings, no noise, q=0, I0=4: the accumulator
    integrates h until it saturates at I0 - alpha."""
    model = IsingModel(1, np.array([2]), ())
    params = noiseless_params(replicas=1, q=QSchedule(0, 0, 1, 0))
    rng = RngStreams(1, 1)
    state = ReplicaSet(sigma=np.array([[1]]), sigma_prev=np.array([[1]]),
                       is_acc=np.zeros((1, 1), dtype=np.int64))
    state = ssqa_step(model, params, state, rng)
    assert state.is_acc.tolist() == [[2]] and state.sigma.tolist() == [[1]]
    # From Is=3, raw = 3 + 2 = 5 >= I0=4 -> saturate at I0 - alpha = 3.
    state = ReplicaSet(sigma=np.array([[1]]), sigma_prev=np.array([[1]]),
                       is_acc=np.array([[3]]))
    state = ssqa_step(model, params, state, rng)
    assert state.is_acc.tolist() == [[3]] and state.sigma.tolist() == [[1]]


def test_zero_steps_run_is_well_defined():
    graph = WeightedGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)))
    model = maxcut_to_ising(graph)
    result = run_ssqa(model, AnnealParams(steps=0, replicas=3, seed=1), graph)
    assert result.steps_executed == 0
    assert 0 <= result.best_value <= 4
    assert result.best_value == max(result.per_replica_final)


# ------------------------------------------------- independent naive oracle

def naive_trace(model, params):
    """Straight-loop re-implementation of the update rule (test oracle).

    Reads every sigma from the previous-step plane, mirrors the engines'
    RNG consumption (one word per spin per replica per step, spin-major).
    """
    rng = RngStreams(params.seed, params.replicas)
    sigma = rng.next_bipolar(model.n).T.astype(np.int64).copy()
    prev = sigma.copy()
    is_acc = np.zeros((params.replicas, model.n), dtype=np.int64)
    jmat = np.asarray(model.coupling_matrix().todense())
    trace = []
    for t in range(params.steps):
        q, i0, nr = q_value_at(params, t), i0_at(params, t), n_rnd_at(params, t)
        noise = rng.next_bipolar(model.n).T
        new_sigma = np.empty_like(sigma)
        new_is = np.empty_like(is_acc)
        for k in range(params.replicas):
            up = (k + 1) % params.replicas
            for i in range(model.n):
                field = sum(int(jmat[i, j]) * int(sigma[k, j]) for j in range(model.n))
                coup = q * int(prev[up, i])
                if not params.periodic_replicas and k == params.replicas - 1:
                    coup = 0
                raw = int(is_acc[k, i]) + int(model.h[i]) + field + nr * int(noise[k, i]) + coup
                if raw >= i0:
                    raw = i0 - params.alpha
                elif raw < -i0:
                    raw = -i0
                new_is[k, i] = raw
                new_sigma[k, i] = 1 if raw >= 0 else -1
        prev, sigma, is_acc = sigma, new_sigma, new_is
        trace.append((sigma.copy(), is_acc.copy()))
    return trace


@pytest.mark.parametrize("seed,periodic", [(3, True), (4, True), (5, False)])
def test_engine_matches_naive_oracle(seed, periodic):
    rng = np.random.default_rng(seed)
    model = random_model(rng, 6)
    params = AnnealParams(steps=50, replicas=3, seed=seed,
                          q=QSchedule(0, 4, 5, 1.0),
                          i0=LinearSchedule(4, 12), n_rnd=LinearSchedule.constant(2),
                          periodic_replicas=periodic)
    result = run_ssqa(model, params, record_trace=True)
    expected = naive_trace(model, params)
    assert len(result.trace) == len(expected) == 50
    for (sig_a, is_a), (sig_b, is_b) in zip(result.trace, expected):
        assert np.array_equal(sig_a, sig_b)
        assert np.array_equal(is_a, is_b)


# --------------------------------------------------------------- invariants

def test_saturation_and_sign_invariants():
    rng = np.random.default_rng(7)
    model = random_model(rng, 10)
    params = AnnealParams(steps=80, replicas=4, seed=9, i0=LinearSchedule(4, 24),
                          n_rnd=LinearSchedule.constant(2))
    result = run_ssqa(model, params, record_trace=True)
    for t, (sigma, is_acc) in enumerate(result.trace):
        i0 = i0_at(params, t)
        assert (is_acc >= -i0).all() and (is_acc <= i0 - params.alpha).all()
        assert np.array_equal(sigma, np.where(is_acc >= 0, 1, -1))
        assert set(np.unique(sigma)) <= {-1, 1}


def test_initial_state_properties():
    model = random_model(np.random.default_rng(0), 8)
    params = AnnealParams(replicas=5, seed=2)
    state = initial_state(model, params, RngStreams(2, 5))
    assert state.sigma.shape == (5, 8)
    assert set(np.unique(state.sigma)) <= {-1, 1}
    assert np.array_equal(state.sigma, state.sigma_prev)
    assert not state.is_acc.any()


# ------------------------------------------------------------- equivalences

def test_ssa_is_single_replica_zero_q():
    model = random_model(np.random.default_rng(1), 8)
    params = AnnealParams(steps=60, replicas=20, seed=5)
    a = run_ssa(model, params, record_trace=True)
    b = run_ssqa(model, params.with_(replicas=1, q=QSchedule(0, 0, 1, 0)),
                 record_trace=True)
    assert a.best_value == b.best_value
    for (sa, ia), (sb, ib) in zip(a.trace, b.trace):
        assert np.array_equal(sa, sb) and np.array_equal(ia, ib)


def test_zero_q_replicas_decouple():
    """With q = 0, replica k's trajectory is independent of the replica count."""
    model = random_model(np.random.default_rng(2), 8)
    zero_q = QSchedule(0, 0, 1, 0)
    small = run_ssqa(model, AnnealParams(steps=40, replicas=2, q=zero_q, seed=3),
                     record_trace=True)
    large = run_ssqa(model, AnnealParams(steps=40, replicas=6, q=zero_q, seed=3),
                     record_trace=True)
    for (sa, _), (sb, _) in zip(small.trace, large.trace):
        assert np.array_equal(sa, sb[:2])


def test_identically_seeded_streams_give_identical_replicas():
    """With q = 0 and every replica stream forced to the same state, all
    replica trajectories coincide exactly."""
    model = random_model(np.random.default_rng(6), 8)
    params = AnnealParams(steps=30, replicas=4, q=QSchedule(0, 0, 1, 0), seed=1)
    rng = RngStreams(1, 4)
    rng.states[:] = rng.states[0]  # collapse to one shared stream state
    state = initial_state(model, params, rng)
    for _ in range(30):
        state = ssqa_step(model, params, state, rng)
        assert all(np.array_equal(state.sigma[0], state.sigma[k]) for k in range(4))
        assert all(np.array_equal(state.is_acc[0], state.is_acc[k]) for k in range(4))


def test_ssa_finds_small_optimum_majority_of_seeds():
    """10-node graph with a known exhaustive optimum: the single-network
    engine at a long step budget solves it on most seeds."""
    import itertools

    rng = np.random.default_rng(12)
    graph_edges = []
    for i, j in itertools.combinations(range(10), 2):
        if rng.random() < 0.4:
            graph_edges.append((i, j, int(rng.choice([-1, 1]))))
    graph = WeightedGraph(10, tuple(graph_edges))
    model = maxcut_to_ising(graph)
    optimum = max(
        __import__("ssqa.ising", fromlist=["cut_value"]).cut_value(graph, np.array(bits))
        for bits in itertools.product((-1, 1), repeat=10)
    )
    hits = sum(
        run_ssa(model, AnnealParams(steps=3000, seed=s), graph).best_value == optimum
        for s in range(1, 8)
    )
    assert hits >= 4  # majority of 7 seeds


def test_determinism_and_seed_sensitivity():
    graph = WeightedGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)))
    model = maxcut_to_ising(graph)
    params = AnnealParams(steps=50, replicas=4, seed=11)
    a = run_ssqa(model, params, graph, record_trace=True)
    b = run_ssqa(model, params, graph, record_trace=True)
    assert a.best_value == b.best_value
    assert np.array_equal(a.best_state, b.best_state)
    assert all(np.array_equal(x[0], y[0]) for x, y in zip(a.trace, b.trace))
    c = run_ssqa(model, params.with_(seed=12), graph, record_trace=True)
    assert any(not np.array_equal(x[0], y[0]) for x, y in zip(a.trace, c.trace))


# ------------------------------------------------------------ result plumbing

def test_select_best_replica_tie_breaks_low_index():
    assert select_best_replica([3, 7, 7, 1]) == (1, 7)
    assert select_best_replica([5]) == (0, 5)
    with pytest.raises(ValueError):
        select_best_replica([])


def test_cut_objective_selects_best_replica():
    graph = WeightedGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)))
    model = maxcut_to_ising(graph)
    result = run_ssqa(model, AnnealParams(steps=100, replicas=8, seed=1), graph)
    assert result.objective == "cut"
    assert result.best_value == max(result.per_replica_final)
    assert result.best_value == 4  # trivial square instance is solved
    from ssqa.ising import cut_value
    assert cut_value(graph, result.best_state) == result.best_value


def test_energy_objective_without_graph():
    model = random_model(np.random.default_rng(4), 6)
    result = run_ssqa(model, AnnealParams(steps=100, replicas=4, seed=1))
    assert result.objective == "energy"
    from ssqa.ising import energy
    assert energy(model, result.best_state) == result.best_value
    assert result.best_value == min(result.per_replica_final)


def test_trajectory_recording():
    model = random_model(np.random.default_rng(5), 6)
    result = run_ssqa(model, AnnealParams(steps=30, replicas=2, seed=1),
                      record_trajectory=True)
    assert len(result.trajectory) == 30
    assert all(isinstance(v, int) for v in result.trajectory)


def test_psa_saturation_and_symmetry():
    # Huge bias: tanh saturates, spin pinned to +1 on every step.
    model = IsingModel(1, np.array([7]), (), weight_bits=4)
    params = AnnealParams(steps=200, replicas=1, seed=3,
                          i0=LinearSchedule.constant(10.0), integer_mode=False)
    result = run_psa(model, params, collect_spin_mean=True)
    assert result.spin_mean[0, 0] == 1.0
    # No bias, no couplings: +1 with empirical probability 0.5 +- 0.02.
    model0 = IsingModel(1, np.zeros(1, dtype=np.int64), ())
    params0 = params.with_(steps=10_000)
    result0 = run_psa(model0, params0, collect_spin_mean=True)
    assert abs(result0.spin_mean[0, 0]) < 0.04  # mean in [-1,1]; p(+1) in 0.5 +- 0.02


def test_psa_solves_square():
    graph = WeightedGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)))
    model = maxcut_to_ising(graph)
    params = AnnealParams(steps=200, replicas=8, seed=2,
                          i0=LinearSchedule(0.2, 4.0), integer_mode=False)
    result = run_psa(model, params, graph)
    assert result.best_value == 4
