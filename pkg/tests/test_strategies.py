from fractions import Fraction

import numpy as np
import pytest

from projsum.errors import (
    InvalidLevelError,
    InvalidStrategyError,
    UnsupportedScalarError,
)
from projsum.families import four_family, simplex_family
from projsum.linalg import maximally_entangled, random_state, random_unitary
from projsum.selftest import dilation_epsilon
from projsum.strategies import (
    NOISE_MODELS,
    Strategy,
    canonical_strategy,
    chsh_fixture,
    chsh_win_probability,
    correlation_distance,
    ideal_correlation,
    induced_correlation,
    marginals,
    perturb,
    schmidt_reduce,
    synchronicity_defect,
)


def planted_strategy(fam, ka, kb, seed):
    """Canonical strategy hidden behind local unitaries and ancilla junk."""
    rng = np.random.default_rng(seed)
    base = canonical_strategy(fam)
    d = fam.d
    ua = random_unitary(d * ka, rng)
    ub = random_unitary(d * kb, rng)
    junk = random_state(ka * kb, rng)
    big = np.kron(base.state, junk).reshape(d, d, ka, kb)
    state = np.kron(ua, ub) @ big.transpose(0, 2, 1, 3).reshape(-1)
    alice = tuple(
        tuple(ua @ np.kron(e, np.eye(ka)) @ ua.conj().T for e in povm)
        for povm in base.alice
    )
    bob = tuple(
        tuple(ub @ np.kron(f, np.eye(kb)) @ ub.conj().T for f in povm)
        for povm in base.bob
    )
    strat = Strategy(
        state=state, dim_a=d * ka, dim_b=d * kb, alice=alice, bob=bob
    )
    return strat, junk


def test_ideal_correlation_tetrahedron_values():
    corr = ideal_correlation(4, Fraction(4, 3))
    table = corr.table
    for v in range(4):
        assert abs(table[v, v, 0, 0] - 1.0 / 3) < 1e-15
        assert table[v, v, 0, 1] == 0.0
        assert table[v, v, 1, 0] == 0.0
        assert abs(table[v, v, 1, 1] - 2.0 / 3) < 1e-15
        for w in range(4):
            if v == w:
                continue
            assert abs(table[v, w, 0, 0] - 1.0 / 27) < 1e-15
            assert abs(table[v, w, 0, 1] - 8.0 / 27) < 1e-15
            assert abs(table[v, w, 1, 0] - 8.0 / 27) < 1e-15
            assert abs(table[v, w, 1, 1] - 10.0 / 27) < 1e-15


def test_ideal_correlation_triangle_values():
    corr = ideal_correlation(3, Fraction(3, 2))
    assert abs(corr.table[0, 0, 0, 0] - 0.5) < 1e-15
    assert abs(corr.table[0, 1, 0, 0] - 0.125) < 1e-15
    # rows sum to one
    assert np.allclose(corr.table.sum(axis=(2, 3)), 1.0, atol=1e-12)


def test_ideal_correlation_rejects_inadmissible_scalar():
    with pytest.raises(UnsupportedScalarError):
        ideal_correlation(4, Fraction(3, 2))


def test_canonical_strategy_induces_ideal_correlation():
    for fam in (simplex_family(3), simplex_family(5), four_family(2)):
        strat = canonical_strategy(fam)
        strat.validate()
        corr = induced_correlation(strat)
        ideal = ideal_correlation(fam.n, fam.x)
        assert correlation_distance(corr, ideal) < 1e-12
        assert synchronicity_defect(corr) < 1e-13


def test_canonical_strategy_state_and_transpose_structure():
    fam = four_family(1)
    strat = canonical_strategy(fam)
    assert np.allclose(strat.state, maximally_entangled(3), atol=1e-15)
    for (e1, _), (f1, _) in zip(strat.alice, strat.bob):
        assert np.allclose(f1, e1.T, atol=1e-15)


def test_correlation_invariant_under_local_rotation():
    # conjugating both sides by U kron conj(U) fixes the maximally
    # entangled state, so the induced correlation cannot move
    fam = simplex_family(4)
    strat = canonical_strategy(fam)
    rng = np.random.default_rng(11)
    u = random_unitary(fam.d, rng)
    alice = tuple(
        tuple(u @ e @ u.conj().T for e in povm) for povm in strat.alice
    )
    bob = tuple(
        tuple(u.conj() @ f @ u.T for f in povm) for povm in strat.bob
    )
    rotated = Strategy(
        state=strat.state, dim_a=fam.d, dim_b=fam.d, alice=alice, bob=bob
    )
    rotated.validate()
    dist = correlation_distance(
        induced_correlation(rotated), induced_correlation(strat)
    )
    assert dist < 1e-12


def test_marginals_non_signaling():
    strat, _ = planted_strategy(four_family(1), 2, 2, seed=5)
    corr = induced_correlation(strat)
    pa, pb, residual = marginals(corr)
    assert residual < 1e-12
    assert np.allclose(pa.sum(axis=1), 1.0, atol=1e-12)
    assert np.allclose(pb.sum(axis=1), 1.0, atol=1e-12)


def test_chsh_values():
    strat = chsh_fixture()
    strat.validate()
    corr = induced_correlation(strat)
    win = chsh_win_probability(corr)
    assert abs(win - (2 + np.sqrt(2)) / 4) < 1e-12
    assert abs(corr.table[0, 0, 0, 0] - (2 + np.sqrt(2)) / 8) < 1e-12


def test_strategy_validate_rejects_bad_inputs():
    fam = simplex_family(3)
    strat = canonical_strategy(fam)
    with pytest.raises(InvalidStrategyError):
        Strategy(
            state=strat.state * 2.0,
            dim_a=2,
            dim_b=2,
            alice=strat.alice,
            bob=strat.bob,
        ).validate()
    broken = tuple(
        (e1 * 0.9, e2) for e1, e2 in strat.alice
    )
    with pytest.raises(InvalidStrategyError):
        Strategy(
            state=strat.state, dim_a=2, dim_b=2, alice=broken, bob=strat.bob
        ).validate()


def test_schmidt_reduce_planted_instance():
    fam = four_family(1)
    strat, junk = planted_strategy(fam, 2, 2, seed=3)
    red = schmidt_reduce(strat)
    red.strategy.validate()
    # compression preserves the induced correlation exactly
    dist = correlation_distance(
        induced_correlation(red.strategy), induced_correlation(strat)
    )
    assert dist < 1e-12
    # the recorded isometries exhibit the original as an exact dilation
    eps = dilation_epsilon(strat, red.strategy, red.v_a, red.v_b, red.junk)
    assert eps < 1e-10


def test_schmidt_reduce_full_rank_is_faithful():
    fam = simplex_family(3)
    strat = canonical_strategy(fam)
    red = schmidt_reduce(strat)
    assert red.strategy.dim_a == strat.dim_a
    eps = dilation_epsilon(strat, red.strategy, red.v_a, red.v_b, red.junk)
    assert eps < 1e-10


def test_perturb_is_deterministic():
    strat = canonical_strategy(four_family(1))
    for model in NOISE_MODELS:
        a = perturb(strat, model, 0.01, seed=42)
        b = perturb(strat, model, 0.01, seed=42)
        assert np.array_equal(a.state, b.state)
        for pa, pb in zip(a.alice, b.alice):
            for ma, mb in zip(pa, pb):
                assert np.array_equal(ma, mb)
        if model == "outcome-noise":
            continue  # mixing with the uniform POVM draws no randomness
        c = perturb(strat, model, 0.01, seed=43)
        moved = (
            not np.array_equal(a.state, c.state)
            or not np.array_equal(a.alice[0][0], c.alice[0][0])
        )
        assert moved


def test_perturb_zero_level_identity():
    strat = canonical_strategy(simplex_family(3))
    for model in NOISE_MODELS:
        out = perturb(strat, model, 0.0, seed=1)
        assert np.array_equal(out.state, strat.state)
        assert np.array_equal(out.alice[0][0], strat.alice[0][0])


def test_perturb_outputs_validate():
    strat = canonical_strategy(four_family(1))
    for model in NOISE_MODELS:
        for level in (1e-4, 1e-2, 0.3):
            noisy = perturb(strat, model, level, seed=7)
            noisy.validate()


def test_perturb_moves_correlation_monotonically():
    strat = canonical_strategy(four_family(1))
    ideal = induced_correlation(strat)
    for model in NOISE_MODELS:
        dists = []
        for level in (1e-3, 1e-2, 1e-1):
            noisy = perturb(strat, model, level, seed=9)
            dists.append(correlation_distance(induced_correlation(noisy), ideal))
        assert dists[0] < dists[1] < dists[2]
        assert dists[0] > 0


def test_perturb_rejects_bad_arguments():
    strat = canonical_strategy(simplex_family(3))
    with pytest.raises(InvalidLevelError):
        perturb(strat, "no-such-model", 0.1, seed=0)
    with pytest.raises(InvalidLevelError):
        perturb(strat, "state-mixing", 1.5, seed=0)
    with pytest.raises(InvalidLevelError):
        perturb(strat, "state-mixing", -0.1, seed=0)
