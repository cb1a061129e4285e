import numpy as np
import pytest

from bislab.errors import ContractViolation
from bislab.probability import FiniteDistribution, JointDistribution
from bislab.typicality import (
    SymbolSequence,
    TypicalityParams,
    default_delta,
    empirical_counts,
    is_jointly_typical,
    is_strongly_typical,
)

from conftest import random_distribution
from oracles import jointly_typical_bruteforce, strongly_typical_bruteforce


def test_empirical_counts():
    assert empirical_counts(SymbolSequence(2, [0, 0, 1, 1])).tolist() == [2, 2]
    assert empirical_counts(SymbolSequence(4, [2] * 5)).tolist() == [0, 0, 5, 0]
    assert empirical_counts(SymbolSequence(3, [0, 1, 2, 1, 0, 1])).tolist() == [2, 3, 1]
    with pytest.raises(ContractViolation):
        empirical_counts(SymbolSequence(2, []))


def test_sequence_validation():
    with pytest.raises(ContractViolation):
        SymbolSequence(2, [0, 2])


def test_exact_empirical_match_always_typical():
    seq = SymbolSequence(2, [0, 1, 0, 1])
    dist = FiniteDistribution(2, [0.5, 0.5])
    for delta in (1e-9, 0.1, 0.5):
        assert is_strongly_typical(seq, dist, TypicalityParams(delta))


def test_zero_probability_clause():
    dist = FiniteDistribution(2, [1.0, 0.0])
    seq = SymbolSequence(2, [0, 0, 1, 0])
    for delta in (0.1, 0.5, 10.0):
        assert not is_strongly_typical(seq, dist, TypicalityParams(delta))


def test_boundary_delta():
    # deviation is exactly 0.25, so typicality flips at delta = 0.25
    dist = FiniteDistribution(2, [0.5, 0.5])
    seq = SymbolSequence(2, [0, 0, 0, 1])
    assert is_strongly_typical(seq, dist, TypicalityParams(0.25))
    assert not is_strongly_typical(seq, dist, TypicalityParams(0.2499))


def test_alphabet_mismatch():
    with pytest.raises(ContractViolation):
        is_strongly_typical(
            SymbolSequence(3, [0, 1]), FiniteDistribution(2, [0.5, 0.5]), TypicalityParams(0.1)
        )


def test_joint_exact_match():
    mass = np.array([[0.25, 0.25], [0.25, 0.25]])
    joint = JointDistribution((2, 2), mass)
    a = SymbolSequence(2, [0, 0, 1, 1])
    b = SymbolSequence(2, [0, 1, 0, 1])
    assert is_jointly_typical([a, b], joint, TypicalityParams(1e-12))


def test_joint_equal_sequences_fail_product_joint():
    # equal sequences pile mass on the diagonal cells: 1/2 observed vs 1/4 expected
    joint = JointDistribution((2, 2), np.full((2, 2), 0.25))
    seq = SymbolSequence(2, [0, 1] * 4)
    assert not is_jointly_typical([seq, seq], joint, TypicalityParams(0.1))
    assert is_jointly_typical([seq, seq], joint, TypicalityParams(0.25))


def test_joint_zero_cell_clause():
    joint = JointDistribution((2, 2), np.diag([0.5, 0.5]))
    a = SymbolSequence(2, [0, 1, 0, 1])
    b = SymbolSequence(2, [0, 1, 1, 1])  # (0,1) cell has zero mass
    assert not is_jointly_typical([a, b], joint, TypicalityParams(5.0))


def test_joint_length_mismatch():
    joint = JointDistribution((2, 2), np.full((2, 2), 0.25))
    with pytest.raises(ContractViolation):
        is_jointly_typical(
            [SymbolSequence(2, [0, 1]), SymbolSequence(2, [0, 1, 0])],
            joint,
            TypicalityParams(0.1),
        )


def test_monotone_in_delta():
    rng = np.random.default_rng(7)
    dist = FiniteDistribution(3, [0.5, 0.3, 0.2])
    for _ in range(50):
        seq = SymbolSequence(3, rng.integers(0, 3, size=12))
        d1, d2 = sorted(rng.uniform(0.01, 0.6, size=2))
        p1 = is_strongly_typical(seq, dist, TypicalityParams(d1))
        p2 = is_strongly_typical(seq, dist, TypicalityParams(d2))
        assert p2 or not p1  # typical at d1 implies typical at d2 >= d1


def test_joint_implies_marginal_with_scaled_slack():
    rng = np.random.default_rng(8)
    for _ in range(40):
        mass = rng.dirichlet(np.ones(6)).reshape(2, 3)
        joint = JointDistribution((2, 3), mass)
        a = SymbolSequence(2, rng.integers(0, 2, size=10))
        b = SymbolSequence(3, rng.integers(0, 3, size=10))
        delta = float(rng.uniform(0.02, 0.3))
        if is_jointly_typical([a, b], joint, TypicalityParams(delta)):
            pa = FiniteDistribution(2, mass.sum(axis=1))
            pb = FiniteDistribution(3, mass.sum(axis=0))
            assert is_strongly_typical(a, pa, TypicalityParams(delta * 3))
            assert is_strongly_typical(b, pb, TypicalityParams(delta * 2))


def test_acceptance_frequency_grows_with_n():
    rng = np.random.default_rng(9)
    dist = FiniteDistribution(2, [0.7, 0.3])
    params = TypicalityParams(0.08)
    rates = []
    for n in (10, 60, 360):
        hits = 0
        for _ in range(300):
            seq = SymbolSequence(2, (rng.random(n) < 0.3).astype(int))
            hits += is_strongly_typical(seq, dist, params)
        rates.append(hits / 300)
    assert rates[-1] > 0.95
    assert rates[0] <= rates[1] + 0.05 and rates[1] <= rates[2] + 0.05


def test_matches_bruteforce_oracle():
    rng = np.random.default_rng(10)
    for _ in range(60):
        dist = random_distribution(rng, 3)
        seq = SymbolSequence(3, rng.integers(0, 3, size=8))
        delta = float(rng.uniform(0.01, 0.5))
        got = is_strongly_typical(seq, dist, TypicalityParams(delta))
        want = strongly_typical_bruteforce(seq.symbols.tolist(), dist.probs.tolist(), delta)
        assert got == want

        mass = rng.dirichlet(np.ones(4)).reshape(2, 2)
        joint = JointDistribution((2, 2), mass)
        a = rng.integers(0, 2, size=8)
        b = rng.integers(0, 2, size=8)
        got_j = is_jointly_typical(
            [SymbolSequence(2, a), SymbolSequence(2, b)], joint, TypicalityParams(delta)
        )
        want_j = jointly_typical_bruteforce([a.tolist(), b.tolist()], mass, delta)
        assert got_j == want_j


def test_default_delta_rule():
    joint = JointDistribution((2, 2), np.array([[0.5, 0.25], [0.2, 0.05]]))
    assert default_delta(joint) == pytest.approx(0.005, abs=1e-15)
