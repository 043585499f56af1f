"""Normal ordering in the deformed Weyl algebra of creators and annihilators.

Words over the generators T1..TN (creators) and T*1..T*N (annihilators)
are rewritten into the normal-ordered basis: creators first in ascending
mode order, then annihilators in descending mode order.  A generator is
encoded as a signed mode index: +i for the creator Ti, -i for the
annihilator T*i.

The oriented rules, each strictly decreasing the triple (annihilator
before creator inversions, creator inversions, annihilator inversions):

    T*i Ti   -> 1 + q_i Ti T*i
    T*i Tj   -> c_ji Tj T*i          (i != j)
    Tj Ti    -> c_ji Ti Tj           (j > i)
    T*i T*j  -> c_ji T*j T*i         (i < j)
    Ti Ti    -> 0,  T*i T*i -> 0     (q_i = -1)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .coefficients import PhaseScalar
from .statistics import CommutationFactor, GradeVector, eval_factor

__all__ = [
    "WeylMonomial",
    "WeylElement",
    "GradeError",
    "ConfluenceError",
    "normal_form",
    "multiply",
    "star",
    "grade_of",
    "bracket",
    "check_jacobi",
    "word_redexes",
    "apply_rule",
    "exhaustive_normal_form",
]

Word = tuple[int, ...]


class GradeError(ValueError):
    """Raised when a grade is requested of a zero or inhomogeneous element."""


class ConfluenceError(AssertionError):
    """Two admissible rewrite orders produced different normal forms."""


class WeylMonomial(NamedTuple):
    """Normal-ordered monomial: creator and annihilator exponent vectors."""

    creators: tuple[int, ...]
    annihilators: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.creators) + sum(self.annihilators)

    def is_unit(self) -> bool:
        return self.degree == 0

    def word(self) -> Word:
        """Letter sequence: creators ascending, annihilators descending."""
        letters: list[int] = []
        for i, e in enumerate(self.creators, start=1):
            letters.extend([i] * e)
        for i in range(len(self.annihilators), 0, -1):
            letters.extend([-i] * self.annihilators[i - 1])
        return tuple(letters)

    def grade(self, modulus: int | None = None) -> GradeVector:
        coords = tuple(a - b for a, b in zip(self.creators, self.annihilators))
        return GradeVector(coords, modulus)


def _unit_monomial(n: int) -> WeylMonomial:
    return WeylMonomial((0,) * n, (0,) * n)


def _q_integer(q_sign: int, m: int) -> Fraction:
    # 1 + q + ... + q^(m-1) for q = +/-1
    return Fraction(m) if q_sign == 1 else Fraction(m % 2)


def _mul_letter(factor: CommutationFactor, terms: dict, letter: int) -> dict:
    """Multiply a normal-ordered term map on the right by one generator."""
    n = factor.dim
    out: dict[WeylMonomial, PhaseScalar] = {}

    def put(mono, coeff):
        if mono in out:
            s = out[mono] + coeff
            if s.is_zero():
                del out[mono]
            else:
                out[mono] = s
        elif not coeff.is_zero():
            out[mono] = coeff

    if letter > 0:
        j = letter
        for mono, coeff in terms.items():
            a, b = mono.creators, mono.annihilators
            # contraction with the mode-j annihilator block
            if b[j - 1] > 0:
                phase = coeff
                for k in range(1, j):
                    if b[k - 1]:
                        phase = phase * (factor.entry(j, k) ** b[k - 1])
                qint = _q_integer(factor.q_sign(j), b[j - 1])
                if qint:
                    nb = list(b)
                    nb[j - 1] -= 1
                    put(WeylMonomial(a, tuple(nb)), phase * qint)
            # pass through all annihilators and join the creator block
            if not (factor.is_nilpotent(j) and a[j - 1] >= 1):
                phase = coeff * (factor.q(j) ** b[j - 1])
                for k in range(1, n + 1):
                    if k != j and b[k - 1]:
                        phase = phase * (factor.entry(j, k) ** b[k - 1])
                for k in range(j + 1, n + 1):
                    if a[k - 1]:
                        phase = phase * (factor.entry(k, j) ** a[k - 1])
                na = list(a)
                na[j - 1] += 1
                put(WeylMonomial(tuple(na), b), phase)
    else:
        j = -letter
        for mono, coeff in terms.items():
            a, b = mono.creators, mono.annihilators
            if factor.is_nilpotent(j) and b[j - 1] >= 1:
                continue
            phase = coeff
            for k in range(1, j):
                if b[k - 1]:
                    phase = phase * (factor.entry(j, k) ** b[k - 1])
            nb = list(b)
            nb[j - 1] += 1
            put(WeylMonomial(a, tuple(nb)), phase)
    return out


class WeylElement:
    """Finite phase-weighted sum of normal-ordered monomials."""

    __slots__ = ("factor", "terms")

    def __init__(self, factor: CommutationFactor, terms=None):
        clean: dict[WeylMonomial, PhaseScalar] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(coeff, PhaseScalar):
                coeff = PhaseScalar._coerce(coeff)
            if coeff.is_zero():
                continue
            for i in range(factor.dim):
                if factor.parities[i] == 1 and (
                    mono.creators[i] > 1 or mono.annihilators[i] > 1
                ):
                    raise ValueError(
                        f"monomial violates nilpotency of mode {i + 1}"
                    )
            clean[mono] = coeff
        object.__setattr__(self, "factor", factor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, factor: CommutationFactor) -> "WeylElement":
        return cls(factor, {})

    @classmethod
    def one(cls, factor: CommutationFactor) -> "WeylElement":
        return cls(factor, {_unit_monomial(factor.dim): PhaseScalar.one()})

    @classmethod
    def creator(cls, factor: CommutationFactor, mode: int) -> "WeylElement":
        return cls.from_word(factor, (mode,))

    @classmethod
    def annihilator(cls, factor: CommutationFactor, mode: int) -> "WeylElement":
        return cls.from_word(factor, (-mode,))

    @classmethod
    def from_word(cls, factor: CommutationFactor, word: Iterable[int]) -> "WeylElement":
        return normal_form(word, factor)

    # -- linear structure ------------------------------------------------

    def _check_factor(self, other: "WeylElement"):
        if self.factor != other.factor:
            raise ValueError("elements live over different commutation factors")

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check_factor(other)
        merged = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = merged.get(mono, PhaseScalar.zero()) + coeff
            if s.is_zero():
                merged.pop(mono, None)
            else:
                merged[mono] = s
        return WeylElement(self.factor, merged)

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.factor, {m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "WeylElement":
        s = PhaseScalar._coerce(scalar)
        return WeylElement(self.factor, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        grades = {m.grade(self.factor.reduced_modulus) for m in self.terms}
        return len(grades) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.factor == other.factor and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "WeylElement(0)"
        body = " + ".join(
            f"({coeff})*{mono}" for mono, coeff in sorted(self.terms.items())
        )
        return f"WeylElement({body})"


def normal_form(word: Iterable[int], factor: CommutationFactor) -> WeylElement:
    """Normal-order a generator word into a WeylElement."""
    word = tuple(word)
    for letter in word:
        if letter == 0 or abs(letter) > factor.dim:
            raise ValueError(f"unknown generator index {letter}")
    terms = {_unit_monomial(factor.dim): PhaseScalar.one()}
    for letter in word:
        terms = _mul_letter(factor, terms, letter)
        if not terms:
            break
    return WeylElement(factor, terms)


def multiply(x: WeylElement, y: WeylElement) -> WeylElement:
    """Product in the algebra; the result is normal-ordered."""
    x._check_factor(y)
    factor = x.factor
    acc: dict[WeylMonomial, PhaseScalar] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            terms = {mx: cx * cy}
            for letter in my.word():
                terms = _mul_letter(factor, terms, letter)
                if not terms:
                    break
            for mono, coeff in terms.items():
                s = acc.get(mono, PhaseScalar.zero()) + coeff
                if s.is_zero():
                    acc.pop(mono, None)
                else:
                    acc[mono] = s
    return WeylElement(factor, acc)


def star(x: WeylElement) -> WeylElement:
    """The *-operation: antilinear anti-homomorphism swapping Ti and T*i.

    With creators ascending and annihilators descending, reversing and
    starring a canonical word lands exactly on the canonical word with
    creator and annihilator exponents swapped, so no reordering phase
    appears.
    """
    return WeylElement(
        x.factor,
        {
            WeylMonomial(m.annihilators, m.creators): c.conj()
            for m, c in x.terms.items()
        },
    )


def grade_of(x: WeylElement) -> GradeVector:
    """Common grade of a nonzero homogeneous element."""
    if x.is_zero():
        raise GradeError("the zero element has no grade")
    grades = {m.grade(x.factor.reduced_modulus) for m in x.terms}
    if len(grades) > 1:
        raise GradeError("element is inhomogeneous; decompose it first")
    return next(iter(grades))


def bracket(x: WeylElement, y: WeylElement) -> WeylElement:
    """Generalized bracket  x y - c(|x|, |y|) y x  on homogeneous elements."""
    x._check_factor(y)
    if x.is_zero() or y.is_zero():
        return WeylElement.zero(x.factor)
    phase = eval_factor(x.factor, grade_of(x), grade_of(y))
    return multiply(x, y) - multiply(y, x).scale(phase)


def check_jacobi(x: WeylElement, y: WeylElement, z: WeylElement):
    """Check the twisted Jacobi identity; returns (holds, defect)."""
    x._check_factor(y)
    x._check_factor(z)
    lhs = bracket(x, bracket(y, z))
    rhs = bracket(bracket(x, y), z)
    if not x.is_zero() and not y.is_zero():
        phase = eval_factor(x.factor, grade_of(x), grade_of(y))
        rhs = rhs + bracket(y, bracket(x, z)).scale(phase)
    defect = lhs - rhs
    return defect.is_zero(), defect


# -- single-step rewriting, used by the confluence checker ----------------


def word_redexes(word: Word, factor: CommutationFactor) -> list[int]:
    """Positions where an oriented rule applies to an adjacent pair."""
    redexes = []
    for t in range(len(word) - 1):
        u, v = word[t], word[t + 1]
        if u < 0 and v > 0:
            redexes.append(t)
        elif u > 0 and v > 0:
            if u > v:
                redexes.append(t)
            elif u == v and factor.is_nilpotent(u):
                redexes.append(t)
        elif u < 0 and v < 0:
            if -u < -v:
                redexes.append(t)
            elif u == v and factor.is_nilpotent(-u):
                redexes.append(t)
    return redexes


def apply_rule(word: Word, factor: CommutationFactor, pos: int):
    """Apply the rule matching the pair at pos; returns [(phase, word), ...]."""
    u, v = word[pos], word[pos + 1]
    head, tail = word[:pos], word[pos + 2:]
    swapped = head + (v, u) + tail
    if u < 0 and v > 0:
        i, j = -u, v
        if i == j:
            return [
                (PhaseScalar.one(), head + tail),
                (factor.q(i), swapped),
            ]
        return [(factor.entry(j, i), swapped)]
    if u > 0 and v > 0:
        if u == v:
            return []  # nilpotent square
        return [(factor.entry(u, v), swapped)]
    if u < 0 and v < 0:
        i, j = -u, -v
        if i == j:
            return []
        return [(factor.entry(j, i), swapped)]
    raise ValueError("no rule applies at this position")


def exhaustive_normal_form(
    word: Iterable[int], factor: CommutationFactor, _memo=None
) -> WeylElement:
    """Reduce a word along every admissible rule order.

    Raises ConfluenceError if two orders disagree; otherwise returns the
    unique normal form.  Exponential in principle, fine at word lengths
    used by the verification suites.
    """
    word = tuple(word)
    if _memo is None:
        _memo = {}
    if word in _memo:
        return _memo[word]
    redexes = word_redexes(word, factor)
    if not redexes:
        counts_c = [0] * factor.dim
        counts_a = [0] * factor.dim
        for letter in word:
            if letter > 0:
                counts_c[letter - 1] += 1
            else:
                counts_a[-letter - 1] += 1
        mono = WeylMonomial(tuple(counts_c), tuple(counts_a))
        result = WeylElement(factor, {mono: PhaseScalar.one()})
        _memo[word] = result
        return result
    outcomes = []
    for pos in redexes:
        acc = WeylElement.zero(factor)
        for phase, reduced in apply_rule(word, factor, pos):
            acc = acc + exhaustive_normal_form(reduced, factor, _memo).scale(phase)
        outcomes.append(acc)
    for other in outcomes[1:]:
        if other != outcomes[0]:
            raise ConfluenceError(
                f"rewrite orders disagree on word {word}"
            )
    _memo[word] = outcomes[0]
    return outcomes[0]
