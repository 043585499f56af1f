"""Superization: split a factor into parity and twist parts, realize the
twist as a twisted group algebra, and rebuild the original relations in
the crossed product.

The twisted group algebra has one basis element per grade with
E_a E_b = phi(a, b) E_(a+b), phi(a, b) = prod_(i<j) b_ij^(a_i b_j).
Crossed-product terms pair a parity-side monomial with the group element
of its own grade; products cross the legs with the twist phase of the
tensor rule.  The crossing rule closes on the original relations only
for sign twists, so embedding requires b entries in {+1, -1}.
"""

from __future__ import annotations

from .coefficients import PhaseScalar
from .statistics import CommutationFactor, GradeVector, eval_factor, factorize
from .weyl import WeylElement, WeylMonomial, _mul_letter, _unit_monomial

__all__ = [
    "superize_factor",
    "cochain",
    "TwistedGroupElement",
    "twisted_multiply",
    "CrossedElement",
    "crossed_embed",
    "crossed_word",
    "clifford_factor",
    "clifford_check",
    "TwistedTensorElement",
    "comultiplication_check",
]


def superize_factor(c: CommutationFactor) -> CommutationFactor:
    """The parity-side factor: same parities, off-diagonal signs only."""
    return factorize(c)[0]


def cochain(b: CommutationFactor, alpha: GradeVector, beta: GradeVector) -> PhaseScalar:
    """Multiplication 2-cochain of the twisted group algebra."""
    if alpha.dim != b.dim or beta.dim != b.dim:
        raise ValueError("grade dimension does not match the factor")
    phi = PhaseScalar.one()
    for i in range(b.dim):
        for j in range(i + 1, b.dim):
            e = alpha.coords[i] * beta.coords[j]
            if e:
                phi = phi * (b.entries[i][j] ** e)
    return phi


class TwistedGroupElement:
    """Finite phase-weighted sum of group-like basis elements E_grade."""

    __slots__ = ("factor", "terms")

    def __init__(self, factor: CommutationFactor, terms=None):
        clean: dict[GradeVector, PhaseScalar] = {}
        for grade, coeff in (terms or {}).items():
            if grade.dim != factor.dim or grade.modulus != factor.reduced_modulus:
                raise ValueError("grade does not match the factor's grading group")
            if not isinstance(coeff, PhaseScalar):
                coeff = PhaseScalar._coerce(coeff)
            if not coeff.is_zero():
                clean[grade] = coeff
        object.__setattr__(self, "factor", factor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TwistedGroupElement is immutable")

    @classmethod
    def unit(cls, factor: CommutationFactor) -> "TwistedGroupElement":
        return cls.basis(factor, factor.grade_zero())

    @classmethod
    def basis(cls, factor: CommutationFactor, grade: GradeVector) -> "TwistedGroupElement":
        return cls(factor, {grade: PhaseScalar.one()})

    @classmethod
    def generator(cls, factor: CommutationFactor, mode: int) -> "TwistedGroupElement":
        """e^mode = E at the mode's generator grade."""
        return cls.basis(factor, factor.grade_generator(mode))

    @classmethod
    def generator_star(cls, factor: CommutationFactor, mode: int) -> "TwistedGroupElement":
        """e*_mode = E at the negated generator grade (the inverse)."""
        return cls.basis(factor, -factor.grade_generator(mode))

    def _check_factor(self, other: "TwistedGroupElement"):
        if self.factor != other.factor:
            raise ValueError("elements live over different twist factors")

    def __add__(self, other: "TwistedGroupElement") -> "TwistedGroupElement":
        self._check_factor(other)
        merged = dict(self.terms)
        for grade, coeff in other.terms.items():
            s = merged.get(grade, PhaseScalar.zero()) + coeff
            if s.is_zero():
                merged.pop(grade, None)
            else:
                merged[grade] = s
        return TwistedGroupElement(self.factor, merged)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TwistedGroupElement(self.factor, {g: -c for g, c in self.terms.items()})

    def scale(self, scalar) -> "TwistedGroupElement":
        s = PhaseScalar._coerce(scalar)
        return TwistedGroupElement(self.factor, {g: c * s for g, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TwistedGroupElement):
            return twisted_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedGroupElement):
            return NotImplemented
        return self.factor == other.factor and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "TwistedGroupElement(0)"
        body = " + ".join(
            f"({c})*E{tuple(g.coords)}" for g, c in sorted(self.terms.items(), key=lambda kv: kv[0].coords)
        )
        return f"TwistedGroupElement({body})"


def twisted_multiply(
    g: TwistedGroupElement, h: TwistedGroupElement
) -> TwistedGroupElement:
    """Bilinear extension of E_a E_b = phi(a,b) E_(a+b)."""
    g._check_factor(h)
    factor = g.factor
    acc: dict[GradeVector, PhaseScalar] = {}
    for ga, ca in g.terms.items():
        for gb, cb in h.terms.items():
            coeff = ca * cb * cochain(factor, ga, gb)
            key = ga + gb
            s = acc.get(key, PhaseScalar.zero()) + coeff
            if s.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = s
    return TwistedGroupElement(factor, acc)


class CrossedElement:
    """Sum of matched-grade tensor terms (parity monomial, grade element).

    The group leg of each term is determined by the grade of the left
    leg, so terms are stored as parity-side monomials with coefficients;
    the twist phases of both legs are applied during multiplication.
    """

    __slots__ = ("cprime", "bfactor", "terms")

    def __init__(self, cprime: CommutationFactor, bfactor: CommutationFactor, terms=None):
        if not bfactor.is_sign_factor():
            raise ValueError(
                "crossed products require a sign twist: the tensor crossing "
                "rule does not close on the relations for complex twists"
            )
        clean: dict[WeylMonomial, PhaseScalar] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(coeff, PhaseScalar):
                coeff = PhaseScalar._coerce(coeff)
            if not coeff.is_zero():
                clean[mono] = coeff
        object.__setattr__(self, "cprime", cprime)
        object.__setattr__(self, "bfactor", bfactor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CrossedElement is immutable")

    @classmethod
    def zero(cls, cprime, bfactor) -> "CrossedElement":
        return cls(cprime, bfactor, {})

    @classmethod
    def unit(cls, cprime, bfactor) -> "CrossedElement":
        return cls(cprime, bfactor, {_unit_monomial(cprime.dim): PhaseScalar.one()})

    def _check_compatible(self, other: "CrossedElement"):
        if self.cprime != other.cprime or self.bfactor != other.bfactor:
            raise ValueError("crossed elements use different factor splittings")

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        self._check_compatible(other)
        merged = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = merged.get(mono, PhaseScalar.zero()) + coeff
            if s.is_zero():
                merged.pop(mono, None)
            else:
                merged[mono] = s
        return CrossedElement(self.cprime, self.bfactor, merged)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CrossedElement(
            self.cprime, self.bfactor, {m: -c for m, c in self.terms.items()}
        )

    def scale(self, scalar) -> "CrossedElement":
        s = PhaseScalar._coerce(scalar)
        return CrossedElement(
            self.cprime, self.bfactor, {m: c * s for m, c in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, CrossedElement):
            return self.scale(other)
        self._check_compatible(other)
        modulus = self.cprime.reduced_modulus
        acc: dict[WeylMonomial, PhaseScalar] = {}
        for m1, c1 in self.terms.items():
            alpha = m1.grade(modulus)
            for m2, c2 in other.terms.items():
                beta = m2.grade(modulus)
                # crossing of the group leg past the incoming parity leg,
                # then the twisted product of the group legs themselves
                twist = eval_factor(self.bfactor, alpha, beta) * cochain(
                    self.bfactor, alpha, beta
                )
                terms = {m1: c1 * c2 * twist}
                for letter in m2.word():
                    terms = _mul_letter(self.cprime, terms, letter)
                    if not terms:
                        break
                for mono, coeff in terms.items():
                    s = acc.get(mono, PhaseScalar.zero()) + coeff
                    if s.is_zero():
                        acc.pop(mono, None)
                    else:
                        acc[mono] = s
        return CrossedElement(self.cprime, self.bfactor, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return (
            self.cprime == other.cprime
            and self.bfactor == other.bfactor
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "CrossedElement(0)"
        body = " + ".join(f"({c})*{m}" for m, c in sorted(self.terms.items()))
        return f"CrossedElement({body})"


def crossed_embed(c: CommutationFactor, mode: int, kind: str) -> CrossedElement:
    """Embedded generator of the crossed product: parity generator paired
    with the group element of the same grade."""
    if not 1 <= mode <= c.dim:
        raise ValueError(f"mode {mode} out of range 1..{c.dim}")
    cprime, bfactor = factorize(c)
    if kind == "creator":
        creators = tuple(1 if i == mode - 1 else 0 for i in range(c.dim))
        mono = WeylMonomial(creators, (0,) * c.dim)
    elif kind == "annihilator":
        annihilators = tuple(1 if i == mode - 1 else 0 for i in range(c.dim))
        mono = WeylMonomial((0,) * c.dim, annihilators)
    else:
        raise ValueError("kind must be 'creator' or 'annihilator'")
    return CrossedElement(cprime, bfactor, {mono: PhaseScalar.one()})


def crossed_word(c: CommutationFactor, word) -> CrossedElement:
    """Product of embedded generators for a signed-index word."""
    cprime, bfactor = factorize(c)
    out = CrossedElement.unit(cprime, bfactor)
    for letter in word:
        if letter > 0:
            out = out * crossed_embed(c, letter, "creator")
        elif letter < 0:
            out = out * crossed_embed(c, -letter, "annihilator")
        else:
            raise ValueError("unknown generator index 0")
    return out


# -- Clifford reduction ---------------------------------------------------


def clifford_factor(n: int) -> CommutationFactor:
    """The mod-2 twist with all off-diagonal entries -1."""
    one = PhaseScalar.one()
    minus = PhaseScalar.minus_one()
    entries = [[one if i == j else minus for j in range(n)] for i in range(n)]
    return CommutationFactor((0,) * n, entries, reduced_modulus=2)


def clifford_check(n: int) -> dict:
    """Verify the mod-2 twisted algebra satisfies the Clifford identities."""
    if n < 1:
        raise ValueError("need at least one generator")
    b = clifford_factor(n)
    unit = TwistedGroupElement.unit(b)
    failures = []
    for i in range(1, n + 1):
        e_i = TwistedGroupElement.generator(b, i)
        if TwistedGroupElement.generator_star(b, i) != e_i:
            failures.append(f"e*_{i} != e_{i}")
        if e_i * e_i != unit:
            failures.append(f"e_{i}^2 != 1")
        for j in range(1, n + 1):
            e_j = TwistedGroupElement.generator(b, j)
            anti = e_i * e_j + e_j * e_i
            expected = unit.scale(2) if i == j else TwistedGroupElement(b, {})
            if anti != expected:
                failures.append(f"e_{i} e_{j} + e_{j} e_{i} != 2 delta_{i}{j}")
    return {"n": n, "ok": not failures, "failures": failures}


# -- comultiplication on the twisted tensor square ------------------------


class TwistedTensorElement:
    """Element of the twisted tensor square of the group algebra."""

    __slots__ = ("factor", "terms")

    def __init__(self, factor: CommutationFactor, terms=None):
        clean: dict[tuple[GradeVector, GradeVector], PhaseScalar] = {}
        for key, coeff in (terms or {}).items():
            if not isinstance(coeff, PhaseScalar):
                coeff = PhaseScalar._coerce(coeff)
            if not coeff.is_zero():
                clean[key] = coeff
        object.__setattr__(self, "factor", factor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TwistedTensorElement is immutable")

    @classmethod
    def delta_generator(cls, factor: CommutationFactor, mode: int, star: bool = False):
        """Comultiplication of a generator: e tensor 1 plus 1 tensor e."""
        grade = factor.grade_generator(mode)
        if star:
            grade = -grade
        zero = factor.grade_zero()
        one = PhaseScalar.one()
        return cls(factor, {(grade, zero): one, (zero, grade): one})

    def __add__(self, other: "TwistedTensorElement") -> "TwistedTensorElement":
        merged = dict(self.terms)
        for key, coeff in other.terms.items():
            s = merged.get(key, PhaseScalar.zero()) + coeff
            if s.is_zero():
                merged.pop(key, None)
            else:
                merged[key] = s
        return TwistedTensorElement(self.factor, merged)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, scalar) -> "TwistedTensorElement":
        s = PhaseScalar._coerce(scalar)
        return TwistedTensorElement(self.factor, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other: "TwistedTensorElement") -> "TwistedTensorElement":
        # (g (x) h)(k (x) l) = b(|h|, |k|) gk (x) hl on basis tensors
        factor = self.factor
        acc: dict[tuple[GradeVector, GradeVector], PhaseScalar] = {}
        for (g1, h1), c1 in self.terms.items():
            for (g2, h2), c2 in other.terms.items():
                coeff = (
                    c1
                    * c2
                    * eval_factor(factor, h1, g2)
                    * cochain(factor, g1, g2)
                    * cochain(factor, h1, h2)
                )
                key = (g1 + g2, h1 + h2)
                s = acc.get(key, PhaseScalar.zero()) + coeff
                if s.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return TwistedTensorElement(factor, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedTensorElement):
            return NotImplemented
        return self.factor == other.factor and self.terms == other.terms

    __hash__ = None


def comultiplication_check(b: CommutationFactor) -> dict:
    """Check that the generator comultiplication respects the twist relations
    under the twisted tensor product rule."""
    failures = []
    for i in range(1, b.dim + 1):
        for j in range(1, b.dim + 1):
            if i == j:
                continue
            bij = b.entry(i, j)
            for starred in (False, True):
                di = TwistedTensorElement.delta_generator(b, i, star=starred)
                dj = TwistedTensorElement.delta_generator(b, j, star=starred)
                lhs = di * dj
                rhs = (dj * di).scale(bij)
                if lhs != rhs:
                    kind = "e*" if starred else "e"
                    failures.append(
                        f"Delta({kind}_{i}) Delta({kind}_{j}) != "
                        f"b_{i}{j} Delta({kind}_{j}) Delta({kind}_{i})"
                    )
    return {"ok": not failures, "failures": failures}
