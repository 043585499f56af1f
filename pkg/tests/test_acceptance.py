"""Acceptance suite: one test per criterion, exact tolerances, seeded.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the one-line
verdict per criterion.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import permutations, product

from colorweyl import (
    DenseOperator,
    FockVector,
    PhaseScalar,
    WeylElement,
    basis_monomials,
    build_matrices,
    check_jacobi,
    check_positive,
    clifford_check,
    compare_symbolic,
    crossed_embed,
    crossed_word,
    element_matrix,
    enumerate_states,
    eval_factor,
    factorize,
    grade_of,
    gram_matrix,
    inner,
    normal_form,
    permutation_sum,
    superize_factor,
    verify_relations,
)
from colorweyl.superize import CrossedElement

from conftest import (
    preset,
    random_grade,
    random_homogeneous,
    random_root_factor,
    random_word,
    word_vector,
)

ONE = PhaseScalar.one()
MINUS = PhaseScalar.minus_one()

# preset instances exercised by the acceptance gate
RELATION_PRESETS = [
    ("appendix_even", 2),
    ("appendix_even", 4),
    ("appendix_odd", 3),
    ("example3_cf", 2),
    ("example3_cf", 3),
    ("example3_cf", 4),
    ("example4_cb", 2),
    ("example4_cb", 3),
    ("example4_cb", 4),
]

SMALL_PRESETS = [  # largest valid size <= 3 per preset kind
    ("appendix_even", 2),
    ("appendix_odd", 3),
    ("example3_cf", 3),
    ("example4_cb", 3),
]


@contextmanager
def criterion(number, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number}: {description}")
        raise
    elapsed = time.perf_counter() - start
    print(f"[PASS] criterion {number}: {description} ({elapsed:.2f}s)")


def test_criterion_1_relation_lemma():
    with criterion(1, "representation bracket identities, exact matrices"):
        for kind, n in RELATION_PRESETS:
            factor = preset(kind, n)
            nilpotent_only = all(factor.is_nilpotent(i) for i in range(1, n + 1))
            cap = 1 if nilpotent_only else (3 if n <= 3 else 2)
            report = verify_relations(factor, cap=cap)
            bad = [c for c in report.checks if not c["ok"]]
            assert report.ok, (kind, n, bad)
            if nilpotent_only:
                assert all(c["excluded_columns"] == 0 for c in report.checks)


def test_criterion_2_color_jacobi():
    with criterion(2, "twisted Jacobi identity, generator and random triples"):
        rng = random.Random(0)
        for kind, n in SMALL_PRESETS:
            factor = preset(kind, n)
            gens = [WeylElement.creator(factor, i) for i in range(1, n + 1)]
            gens += [WeylElement.annihilator(factor, i) for i in range(1, n + 1)]
            for x, y, z in product(gens, repeat=3):
                holds, defect = check_jacobi(x, y, z)
                assert holds, (kind, n, defect)
            triples = []
            for _ in range(100):
                triple = tuple(random_homogeneous(rng, factor) for _ in range(3))
                holds, defect = check_jacobi(*triple)
                assert holds, (kind, n, defect)
                triples.append(triple)
            # oracle cross-check: the bracket combination of sampled triples
            # vanishes as a plain matrix identity as well
            cap = 4
            creators, annihilators = build_matrices(factor, cap=cap)
            basis = basis_monomials(factor, cap)
            zero = DenseOperator.zero(creators[0].dim)
            for xs in triples[:20]:
                mats = [element_matrix(x, creators, annihilators) for x in xs]
                grades = [grade_of(x) for x in xs]

                def mb(a, b, ga, gb):
                    return a * b - (b * a).scale(eval_factor(factor, ga, gb))

                defect = mb(
                    mats[0], mb(mats[1], mats[2], grades[1], grades[2]),
                    grades[0], grades[1] + grades[2],
                ) - mb(
                    mb(mats[0], mats[1], grades[0], grades[1]), mats[2],
                    grades[0] + grades[1], grades[2],
                ) - mb(
                    mats[1], mb(mats[0], mats[2], grades[0], grades[2]),
                    grades[1], grades[0] + grades[2],
                ).scale(eval_factor(factor, grades[0], grades[1]))

                headroom = {}
                for x in xs:
                    for mono in x.terms:
                        for m in range(1, n + 1):
                            if not factor.is_nilpotent(m):
                                headroom[m] = headroom.get(m, 0) + mono.creators[m - 1]
                safe = [
                    k
                    for k, occ in enumerate(basis)
                    if all(
                        factor.is_nilpotent(m + 1)
                        or occ[m] + headroom.get(m + 1, 0) <= cap
                        for m in range(n)
                    )
                ]
                assert defect.equals_on_columns(zero, safe), (kind, n, xs)


def test_criterion_3_confluence_soundness():
    with criterion(3, "500 random words per preset agree with the matrix oracle"):
        rng = random.Random(1)
        cap = 7
        for kind, n in SMALL_PRESETS:
            factor = preset(kind, n)
            matrices = build_matrices(factor, cap=cap)
            for _ in range(500):
                word = random_word(rng, n, max_len=6)
                assert compare_symbolic(word, factor, cap=cap, matrices=matrices), (
                    kind,
                    n,
                    word,
                )


def test_criterion_4_half_anomaly():
    with criterion(4, "half-anomaly catalog: unique zero-quasihole state"):
        factor = preset("example3_cf", 2)
        rows = enumerate_states(factor, Fraction(2), cap=1)
        no_hole = [r for r in rows if r.info.quasiholes == 0]
        assert len(no_hole) == 1
        state = no_hole[0]
        assert state.occupation == (1, 1)
        assert state.info.b_eff == 0
        assert state.info.quasiparticles == 2
        assert not state.column_rep_zero


def test_criterion_5_fqhe_obstruction():
    with criterion(5, "one-third filling: multi-mode products vanish in columns"):
        factor = preset("example4_cb", 3)
        rows = enumerate_states(factor, Fraction(3), cap=1)
        two_mode = [r for r in rows if sum(r.occupation) == 2]
        three_mode = [r for r in rows if sum(r.occupation) == 3]
        assert len(two_mode) == 3 and all(r.column_rep_zero for r in two_mode)
        assert len(three_mode) == 1 and three_mode[0].column_rep_zero
        survivors = [
            r for r in rows if sum(r.occupation) >= 1 and not r.column_rep_zero
        ]
        assert len(survivors) == 3
        assert all(
            r.info.quasiparticles == 1 and r.info.quasiholes == 2 for r in survivors
        )


def test_criterion_6_positivity():
    with criterion(6, "gram matrices degree <= 4 are exactly non-negative"):
        checked = 0
        for kind, dims in (
            ("appendix_even", (2, 4)),
            ("appendix_odd", (1, 3)),
            ("example3_cf", (1, 2, 3, 4)),
            ("example4_cb", (1, 2, 3, 4)),
        ):
            for n in dims:
                factor = preset(kind, n)
                for degree in range(0, 5):
                    for cap in {1, max(1, degree)}:
                        gm = gram_matrix(degree, factor, cap=cap)
                        assert gm.is_hermitian()
                        cert = check_positive(gm)
                        assert not cert.numeric  # exact rational path only
                        assert cert.verdict in (
                            "positive_definite",
                            "positive_semidefinite",
                        ), (kind, n, degree, cap)
                        assert all(p >= 0 for p in cert.pivots)
                        checked += 1
        assert checked > 0


def test_criterion_7_inner_product_oracle():
    with criterion(7, "recursive inner product equals the permutation sum"):
        for kind, dims in (
            ("appendix_even", (2, 4)),
            ("appendix_odd", (1, 3, 5)),
            ("example3_cf", (1, 2, 3, 4, 5)),
            ("example4_cb", (1, 2, 3, 4, 5)),
        ):
            for n in dims:
                factor = preset(kind, n)
                for length in range(1, min(n, 5) + 1):
                    words = list(permutations(range(1, n + 1), length))
                    vectors = {w: word_vector(factor, w) for w in words}
                    for sigma in words:
                        for tau in words:
                            lhs = inner(vectors[sigma], vectors[tau])
                            rhs = permutation_sum(sigma, tau, factor)
                            assert lhs == rhs, (kind, n, sigma, tau)


def test_criterion_8_superization():
    with criterion(8, "superization splits and the crossed product rebuilds"):
        cf = preset("example3_cf", 3)
        s = superize_factor(cf)
        assert all(s.q_sign(i) == 1 for i in (1, 2, 3))
        assert all(s.entry(i, j) == ONE for i in (1, 2, 3) for j in (1, 2, 3))
        cb = preset("example4_cb", 3)
        s = superize_factor(cb)
        assert all(s.q_sign(i) == -1 for i in (1, 2, 3))
        assert all(
            s.entry(i, j) == MINUS for i in (1, 2, 3) for j in (1, 2, 3) if i != j
        )
        for kind, n in SMALL_PRESETS:
            if n > 3:
                continue
            factor = preset(kind, n)
            unit = CrossedElement.unit(*factorize(factor))
            for i in range(1, n + 1):
                ci = crossed_embed(factor, i, "creator")
                ai = crossed_embed(factor, i, "annihilator")
                for j in range(1, n + 1):
                    cj = crossed_embed(factor, j, "creator")
                    aj = crossed_embed(factor, j, "annihilator")
                    lhs = ai * cj
                    rhs = (cj * ai).scale(factor.entry(j, i))
                    if i == j:
                        rhs = rhs + unit
                    assert lhs == rhs, (kind, n, i, j)
                    assert ci * cj == (cj * ci).scale(factor.entry(i, j))
                    assert aj * ai == (ai * aj).scale(factor.entry(i, j))
                if factor.is_nilpotent(i):
                    assert (ci * ci).is_zero() and (ai * ai).is_zero()
        for n in (1, 2, 3, 4):
            report = clifford_check(n)
            assert report["ok"], report


def test_criterion_9_factorization():
    with criterion(9, "random factors split exactly: eval(c) = eval(c')*eval(b)"):
        rng = random.Random(2)
        for _ in range(50):
            n = rng.randint(1, 4)
            factor = random_root_factor(rng, n, max_order=8)
            cprime, bfac = factorize(factor)
            for _ in range(100):
                a = random_grade(rng, n)
                b = random_grade(rng, n)
                assert eval_factor(factor, a, b) == eval_factor(
                    cprime, a, b
                ) * eval_factor(bfac, a, b)
