import json
import random

import pytest

from colorweyl import (
    CommutationFactor,
    FactorError,
    FactorPreset,
    GradeVector,
    PhaseScalar,
    eval_factor,
    factor_from_descriptor,
    factor_to_descriptor,
    factorize,
    make_factor,
    quotient_grade,
    reduce_group,
)

from conftest import preset, random_grade, random_root_factor, random_sign_factor

ONE = PhaseScalar.one()
MINUS = PhaseScalar.minus_one()


def brute_eval(factor, a, b):
    """Brute-force oracle: the double product over all index pairs."""
    out = PhaseScalar.one()
    for i in range(1, factor.dim + 1):
        for j in range(1, factor.dim + 1):
            e = a.coords[i - 1] * b.coords[j - 1]
            if e:
                out = out * (factor.entry(i, j) ** e)
    return out


def test_make_factor_paper_patterns():
    ae = preset("appendix_even", 2)
    assert ae.q_sign(1) == -1 and ae.q_sign(2) == -1
    assert ae.entry(1, 2) == ONE

    ao = preset("appendix_odd", 3)
    assert all(ao.q_sign(i) == 1 for i in (1, 2, 3))
    assert all(ao.entry(i, j) == MINUS for i in (1, 2, 3) for j in (1, 2, 3) if i != j)

    cf = preset("example3_cf", 2)
    assert cf.q_sign(1) == 1 and cf.entry(1, 2) == MINUS

    cb = preset("example4_cb", 2)
    assert cb.q_sign(1) == -1 and cb.entry(1, 2) == ONE

    cl = preset("clifford", 3)
    assert cl.q_sign(1) == 1 and cl.entry(1, 2) == MINUS


def test_appendix_parity_enforced():
    with pytest.raises(FactorError):
        preset("appendix_even", 3)
    with pytest.raises(FactorError):
        preset("appendix_odd", 2)


def test_electron_pattern_across_sizes():
    # even flux count: modes square to zero and distinct modes commute;
    # odd flux count: the opposite pattern
    for n in (2, 4):
        f = preset("appendix_even", n)
        assert all(f.q_sign(i) == -1 for i in range(1, n + 1))
        assert all(
            f.entry(i, j) == ONE for i in range(1, n + 1) for j in range(1, n + 1) if i != j
        )
    for n in (1, 3):
        f = preset("appendix_odd", n)
        assert all(f.q_sign(i) == 1 for i in range(1, n + 1))
        assert all(
            f.entry(i, j) == MINUS
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if i != j
        )


def test_omega_general_construction():
    f = make_factor(
        FactorPreset(
            kind="omega_general",
            dim=3,
            parities=(1, 1, 1),
            omega_matrix=((0, 1, 1), (-1, 0, 1), (-1, -1, 0)),
            omega_order=2,
            omega_exp=1,
        )
    )
    # q_i = -1 with parity products: c' off-diagonal -1, so c_ij = -omega
    assert f.q_sign(1) == -1
    assert f.entry(1, 2) == ONE  # (-1) * (-1)^1
    assert f.entry(2, 1) == ONE


def test_omega_general_rejects_bad_matrix():
    with pytest.raises(FactorError):
        make_factor(
            FactorPreset(
                kind="omega_general",
                dim=2,
                parities=(0, 0),
                omega_matrix=((1, 1), (-1, 0)),
                omega_order=4,
                omega_exp=1,
            )
        )
    with pytest.raises(FactorError):
        make_factor(FactorPreset(kind="no_such_preset", dim=2))


def test_validation_catches_broken_factor():
    with pytest.raises(FactorError):
        CommutationFactor((0, 2), [[ONE, ONE], [ONE, ONE]])
    with pytest.raises(FactorError):
        # diagonal inconsistent with parity
        CommutationFactor((1, 0), [[ONE, ONE], [ONE, ONE]])
    z8 = PhaseScalar.root_of_unity(8)
    with pytest.raises(FactorError):
        # c_12 * c_21 != 1
        CommutationFactor((0, 0), [[ONE, z8], [z8, ONE]])


def test_eval_factor_examples():
    ae = preset("appendix_even", 2)
    s1 = ae.grade_generator(1)
    s2 = ae.grade_generator(2)
    assert eval_factor(ae, s1, s2) == ONE
    assert eval_factor(ae, ae.grade_zero(), s2) == ONE
    # oracle first: brute-force double product gives q_1 * c_21 = -1
    expected = brute_eval(ae, s1 + s2, s1)
    assert expected == MINUS
    assert eval_factor(ae, s1 + s2, s1) == expected


def test_eval_factor_matches_brute_force():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(1, 4)
        factor = random_root_factor(rng, n)
        a, b = random_grade(rng, n), random_grade(rng, n)
        assert eval_factor(factor, a, b) == brute_eval(factor, a, b)


def test_bicharacter_laws():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(1, 4)
        factor = random_root_factor(rng, n)
        a, b, c = (random_grade(rng, n) for _ in range(3))
        assert eval_factor(factor, a + b, c) == eval_factor(factor, a, c) * eval_factor(
            factor, b, c
        )
        assert eval_factor(factor, a, b + c) == eval_factor(factor, a, b) * eval_factor(
            factor, a, c
        )
        assert eval_factor(factor, a, b) * eval_factor(factor, b, a) == ONE


def test_factorize_examples():
    cb = preset("example4_cb", 2)
    cprime, b = factorize(cb)
    assert cprime.entry(1, 2) == MINUS
    assert b.entry(1, 2) == MINUS

    cf = preset("example3_cf", 2)
    cprime, b = factorize(cf)
    assert cprime.entry(1, 2) == ONE
    assert b.entry(1, 2) == MINUS

    trivial = CommutationFactor((0, 0), [[ONE, ONE], [ONE, ONE]])
    cprime, b = factorize(trivial)
    assert cprime == trivial and b == trivial


def test_factorize_round_trip_random():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(1, 4)
        factor = random_root_factor(rng, n)
        cprime, b = factorize(factor)
        assert all(b.parities[i] == 0 for i in range(n))
        assert all(abs(cprime.entry(i, j).as_fraction()) == 1
                   for i in range(1, n + 1) for j in range(1, n + 1))
        a, g = random_grade(rng, n), random_grade(rng, n)
        assert eval_factor(factor, a, g) == eval_factor(cprime, a, g) * eval_factor(
            b, a, g
        )


def test_parity_quotient_matches_sign_factor():
    rng = random.Random(29)
    for _ in range(100):
        n = rng.randint(1, 4)
        factor = random_root_factor(rng, n)
        cprime, _ = factorize(factor)
        a, b = random_grade(rng, n), random_grade(rng, n)
        sign = (-1) ** (quotient_grade(factor, a) * quotient_grade(factor, b))
        assert eval_factor(cprime, a, b) == PhaseScalar.from_rational(sign)
        # diagonal consistency: c(a, a) = (-1)^(pi(a))
        assert eval_factor(factor, a, a) == PhaseScalar.from_rational(
            (-1) ** quotient_grade(factor, a)
        )


def test_quotient_grade_examples():
    trivial = CommutationFactor((0, 0), [[ONE, ONE], [ONE, ONE]])
    assert quotient_grade(trivial, GradeVector((5, -3))) == 0
    cb = preset("example4_cb", 3)
    s1 = cb.grade_generator(1)
    s2 = cb.grade_generator(2)
    assert quotient_grade(cb, s1 + s2) == 0
    assert eval_factor(cb, s1 + s2, s1 + s2) == ONE
    assert quotient_grade(cb, s1) == 1


def test_reduce_group():
    rng = random.Random(31)
    sign = random_sign_factor(rng, 3)
    reduced = reduce_group(sign, 2)
    assert reduced.reduced_modulus == 2
    # evaluation agrees on coordinate representatives
    for _ in range(30):
        a = random_grade(rng, 3, modulus=2)
        b = random_grade(rng, 3, modulus=2)
        lifted_a = GradeVector(a.coords)
        lifted_b = GradeVector(b.coords)
        assert eval_factor(reduced, a, b) == eval_factor(sign, lifted_a, lifted_b)

    z3 = PhaseScalar.root_of_unity(3)
    f = make_factor(
        FactorPreset(
            kind="omega_general",
            dim=2,
            parities=(0, 0),
            omega_matrix=((0, 1), (-1, 0)),
            omega_order=3,
            omega_exp=1,
        )
    )
    assert f.entry(1, 2) == z3
    assert reduce_group(f, 3).reduced_modulus == 3
    with pytest.raises(FactorError):
        reduce_group(f, 2)


def test_descriptor_round_trips():
    cases = [
        {"N": 3, "preset": "example4_cb"},
        {"N": 2, "preset": "appendix_even"},
        {
            "N": 3,
            "S": [1, 1, 1],
            "Omega": [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]],
            "omega": {"order": 2, "exp": 1},
            "modulus": 2,
        },
    ]
    for desc in cases:
        factor = factor_from_descriptor(desc)
        desc2 = factor_to_descriptor(factor)
        again = factor_from_descriptor(desc2)
        assert again == factor
        # descriptors survive a JSON round trip as well
        assert factor_from_descriptor(json.loads(json.dumps(desc2))) == factor

    rng = random.Random(37)
    for _ in range(20):
        factor = random_root_factor(rng, rng.randint(1, 4))
        assert factor_from_descriptor(factor_to_descriptor(factor)) == factor


def test_descriptor_errors():
    with pytest.raises(FactorError):
        factor_from_descriptor({"preset": "example3_cf"})
    with pytest.raises(FactorError):
        factor_from_descriptor({"N": 2})
