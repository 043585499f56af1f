"""Shared helpers for the test suite."""

import math
import random

from colorweyl import (
    CommutationFactor,
    FactorPreset,
    FockVector,
    GradeVector,
    PhaseScalar,
    act,
    make_factor,
    normal_form,
)

# mode counts at which each named preset is defined
PRESET_DIMS = {
    "appendix_even": (2, 4),
    "appendix_odd": (1, 3, 5),
    "example3_cf": (1, 2, 3, 4, 5),
    "example4_cb": (1, 2, 3, 4, 5),
}


def preset(kind: str, n: int) -> CommutationFactor:
    return make_factor(FactorPreset(kind=kind, dim=n))


def preset_factors(max_n: int):
    """(kind, n, factor) for every preset at each of its valid sizes <= max_n."""
    for kind, dims in PRESET_DIMS.items():
        for n in dims:
            if n <= max_n:
                yield kind, n, preset(kind, n)


def random_word(rng: random.Random, n_modes: int, max_len: int = 6):
    length = rng.randint(1, max_len)
    return tuple(
        rng.choice((1, -1)) * rng.randint(1, n_modes) for _ in range(length)
    )


def random_homogeneous(rng: random.Random, factor, max_degree: int = 3):
    """A nonzero homogeneous element, as the normal form of a random word."""
    while True:
        word = random_word(rng, factor.dim, max_degree)
        element = normal_form(word, factor)
        if not element.is_zero():
            return element


def random_sign_factor(rng: random.Random, n: int) -> CommutationFactor:
    one, minus = PhaseScalar.one(), PhaseScalar.minus_one()
    parities = tuple(rng.randint(0, 1) for _ in range(n))
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = minus if parities[i] else one
        for j in range(i + 1, n):
            e = rng.choice((one, minus))
            entries[i][j] = e
            entries[j][i] = e
    return CommutationFactor(parities, entries)


def random_root_factor(rng: random.Random, n: int, max_order: int = 8) -> CommutationFactor:
    """Random factor from the one-root parametrization: parities plus
    integer exponents of a single root of unity of order <= max_order."""
    order = rng.randint(1, max_order)
    omega = make_factor(
        FactorPreset(
            kind="omega_general",
            dim=n,
            parities=tuple(rng.randint(0, 1) for _ in range(n)),
            omega_matrix=tuple(
                tuple(
                    rng.randint(-2, 2) if i < j else 0
                    for j in range(n)
                )
                for i in range(n)
            ),
            omega_order=order,
            omega_exp=rng.randrange(order),
        )
    )
    return omega


def random_grade(rng: random.Random, n: int, modulus=None) -> GradeVector:
    if modulus is None:
        coords = tuple(rng.randint(-3, 3) for _ in range(n))
    else:
        coords = tuple(rng.randrange(modulus) for _ in range(n))
    return GradeVector(coords, modulus)


def word_vector(factor, labels) -> FockVector:
    """The Fock vector of a creator word."""
    return act(tuple(labels), FockVector.vacuum(factor))


def taylor_root_of_unity(k: int, n: int, terms: int = 60) -> complex:
    """exp(2 pi i k / n) by a plain Taylor series; independent of mpmath."""
    x = 2.0 * math.pi * (k % n) / n
    re = 0.0
    im = 0.0
    term = 1.0  # x^m / m!
    for m in range(terms):
        if m % 4 == 0:
            re += term
        elif m % 4 == 1:
            im += term
        elif m % 4 == 2:
            re -= term
        else:
            im -= term
        term = term * x / (m + 1)
    return complex(re, im)


def taylor_value(scalar: PhaseScalar) -> complex:
    """Independent numeric value of a scalar via the Taylor evaluation."""
    total = 0j
    for k, v in scalar.terms.items():
        total += float(v) * taylor_root_of_unity(k, scalar.order)
    return total
