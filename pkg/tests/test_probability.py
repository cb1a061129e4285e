import math

import numpy as np
import pytest

from bislab.errors import ContractViolation
from bislab.probability import (
    AXIS_U,
    AXIS_V,
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    AuxiliaryPair,
    Channel,
    FiniteDistribution,
    JointDistribution,
    SystemModel,
    compose_joint,
    conditional_mutual_information,
    entropy,
    marginalize,
    mutual_information,
)

from conftest import random_aux, random_distribution, random_model
from oracles import (
    binary_convolve,
    binary_entropy,
    conditional_mutual_information_bruteforce,
    entropy_bruteforce,
    mutual_information_bruteforce,
)


def test_distribution_validation():
    FiniteDistribution(2, [0.5, 0.5])
    with pytest.raises(ContractViolation):
        FiniteDistribution(2, [0.6, 0.5])
    with pytest.raises(ContractViolation):
        FiniteDistribution(2, [1.1, -0.1])
    with pytest.raises(ContractViolation):
        FiniteDistribution(3, [0.5, 0.5])


def test_channel_validation_reports_row():
    with pytest.raises(ContractViolation, match="row 1"):
        Channel.from_rows([[0.5, 0.5], [0.6, 0.5]])


def test_entropy_basics():
    assert entropy(FiniteDistribution.point_mass(3, 1)) == 0.0
    assert entropy(FiniteDistribution.uniform(4)) == pytest.approx(2.0, abs=1e-12)
    assert entropy(FiniteDistribution(2, [0.9, 0.1])) == pytest.approx(
        0.4689955935892812, abs=1e-12
    )


def test_compose_identity_chain(identity_model, identity_aux):
    joint = compose_joint(identity_model, identity_aux)
    # mass only where z = x = y = u = v
    for idx in np.ndindex(*joint.axis_sizes):
        expect = 0.5 if len(set(idx)) == 1 else 0.0
        assert joint.mass[idx] == pytest.approx(expect, abs=1e-15)


def test_compose_bsc_uniform_output(bsc_model):
    aux = AuxiliaryPair(Channel.identity(2), Channel.identity(2))
    model = SystemModel(bsc_model.source, Channel.bsc(0.1), Channel.bsc(0.1))
    joint = compose_joint(model, aux)
    p_z = marginalize(joint, (AXIS_Z,)).mass
    assert p_z == pytest.approx([0.5, 0.5], abs=1e-12)


def test_compose_bsc_cascade_closed_form(bsc_model, bsc_aux):
    joint = compose_joint(bsc_model, bsc_aux)
    eff = binary_convolve(binary_convolve(0.1, 0.05), 0.2)
    want = 1.0 - binary_entropy(eff)
    got = mutual_information(joint, (AXIS_Z,), (AXIS_U,))
    assert got == pytest.approx(want, abs=1e-12)
    # cross-check against the direct summation over all 32 joint entries
    brute = mutual_information_bruteforce(joint.mass, (AXIS_Z,), (AXIS_U,))
    assert got == pytest.approx(brute, abs=1e-12)


def test_compose_dimension_mismatch(bsc_model):
    bad = AuxiliaryPair(Channel.identity(3), Channel.identity(3))
    with pytest.raises(ContractViolation):
        compose_joint(bsc_model, bad)


def test_marginalize_identity_and_product():
    rng = np.random.default_rng(0)
    p = random_distribution(rng, 3)
    q = random_distribution(rng, 2)
    joint = JointDistribution((3, 2), np.outer(p.probs, q.probs))
    kept = marginalize(joint, (0, 1))
    assert np.allclose(kept.mass, joint.mass)
    first = marginalize(joint, (0,))
    assert first.mass == pytest.approx(p.probs, abs=1e-15)


def test_marginalize_bsc_xu_matrix_product(bsc_model, bsc_aux):
    joint = compose_joint(bsc_model, bsc_aux)
    got = marginalize(joint, (AXIS_X, AXIS_U)).mass
    cascade = Channel.bsc(0.1).compose(Channel.bsc(0.05))
    want = bsc_model.source.probs[:, None] * cascade.rows
    assert got == pytest.approx(want, abs=1e-12)


def test_marginalize_invalid_axis(bsc_model, bsc_aux):
    joint = compose_joint(bsc_model, bsc_aux)
    with pytest.raises(ContractViolation):
        marginalize(joint, (7,))
    with pytest.raises(ContractViolation):
        marginalize(joint, ())


def test_mutual_information_basics():
    rng = np.random.default_rng(1)
    p = random_distribution(rng, 3)
    q = random_distribution(rng, 4)
    indep = JointDistribution((3, 4), np.outer(p.probs, q.probs))
    assert abs(mutual_information(indep, (0,), (1,))) < 1e-12

    copy = JointDistribution((2, 2), np.diag([0.5, 0.5]))
    assert mutual_information(copy, (0,), (1,)) == pytest.approx(1.0, abs=1e-12)

    with pytest.raises(ContractViolation):
        mutual_information(indep, (0,), (0,))


def test_mutual_information_bsc_closed_form():
    model = SystemModel(FiniteDistribution.uniform(2), Channel.bsc(0.1), Channel.bsc(0.1))
    aux = AuxiliaryPair(Channel.identity(2), Channel.identity(2))
    joint = compose_joint(model, aux)
    got = mutual_information(joint, (AXIS_X,), (AXIS_Y,))
    assert got == pytest.approx(1.0 - binary_entropy(0.1), abs=1e-12)


def test_cmi_independent_conditioner():
    rng = np.random.default_rng(2)
    pab = rng.dirichlet(np.ones(4)).reshape(2, 2)
    pc = random_distribution(rng, 3).probs
    mass = pab[:, :, None] * pc[None, None, :]
    joint = JointDistribution((2, 2, 3), mass)
    lhs = conditional_mutual_information(joint, (0,), (1,), (2,))
    rhs = mutual_information(joint, (0,), (1,))
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_cmi_point_masses_zero():
    joint = JointDistribution((1, 1, 1), np.ones((1, 1, 1)))
    assert conditional_mutual_information(joint, (0,), (1,), (2,)) == 0.0


def test_cmi_markov_chain_rule(bsc_model, bsc_aux):
    joint = compose_joint(bsc_model, bsc_aux)
    i_zu_v = conditional_mutual_information(joint, (AXIS_Z,), (AXIS_U,), (AXIS_V,))
    i_zu = mutual_information(joint, (AXIS_Z,), (AXIS_U,))
    i_zv = mutual_information(joint, (AXIS_Z,), (AXIS_V,))
    assert i_zu_v == pytest.approx(i_zu - i_zv, abs=1e-9)


def test_markov_certification_random_instances():
    rng = np.random.default_rng(3)
    for _ in range(25):
        model = random_model(rng, x=2, y=3, z=2)
        aux = random_aux(rng, y=3, u=3, v=2)
        joint = compose_joint(model, aux)
        assert abs(conditional_mutual_information(joint, (AXIS_Z,), (AXIS_Y,), (AXIS_X,))) < 1e-9
        assert abs(conditional_mutual_information(joint, (AXIS_U,), (AXIS_X,), (AXIS_Y,))) < 1e-9
        assert abs(conditional_mutual_information(joint, (AXIS_V,), (AXIS_Y,), (AXIS_U,))) < 1e-9


def test_data_processing_random_instances():
    rng = np.random.default_rng(4)
    for _ in range(25):
        model = random_model(rng, x=3, y=2, z=3)
        aux = random_aux(rng, y=2, u=4, v=2)
        joint = compose_joint(model, aux)
        i_zu = mutual_information(joint, (AXIS_Z,), (AXIS_U,))
        i_zv = mutual_information(joint, (AXIS_Z,), (AXIS_V,))
        i_yu = mutual_information(joint, (AXIS_Y,), (AXIS_U,))
        i_xu = mutual_information(joint, (AXIS_X,), (AXIS_U,))
        assert i_zu >= i_zv - 1e-9
        assert i_yu >= i_xu - 1e-9
        assert i_xu >= i_zu - 1e-9


def test_against_bruteforce_small_alphabets():
    rng = np.random.default_rng(5)
    for _ in range(30):
        sizes = tuple(rng.integers(2, 5, size=3))
        mass = rng.dirichlet(np.ones(int(np.prod(sizes)))).reshape(sizes)
        joint = JointDistribution(sizes, mass)
        got = mutual_information(joint, (0,), (2,))
        want = mutual_information_bruteforce(mass, (0,), (2,))
        assert got == pytest.approx(want, abs=1e-9)
        got_c = conditional_mutual_information(joint, (0,), (1,), (2,))
        want_c = conditional_mutual_information_bruteforce(mass, (0,), (1,), (2,))
        assert got_c == pytest.approx(want_c, abs=1e-9)
        dist = random_distribution(rng, 4)
        assert entropy(dist) == pytest.approx(entropy_bruteforce(dist.probs), abs=1e-12)


def test_entropy_range():
    rng = np.random.default_rng(6)
    for _ in range(20):
        d = random_distribution(rng, 5)
        h = entropy(d)
        assert 0.0 <= h <= math.log2(5) + 1e-12
