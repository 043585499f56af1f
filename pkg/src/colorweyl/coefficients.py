"""Exact scalar arithmetic: rational combinations of roots of unity.

Every coefficient in the engine is an element of some cyclotomic field
Q(zeta_n).  A scalar is stored as its representative polynomial in
zeta_n reduced modulo the n-th cyclotomic polynomial, so the zero
scalar has an empty term map and equality of values reduces to term-map
comparison at a common order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import mpmath

__all__ = [
    "MAX_ORDER",
    "OrderLimitError",
    "PhaseScalar",
    "phase_add",
    "phase_mul",
    "phase_conj",
    "phase_to_complex",
    "format_phase",
    "parse_phase",
]

# Bounds the degree of the cyclotomic reduction polynomial.
MAX_ORDER = 360


class OrderLimitError(ValueError):
    """Mixed-order arithmetic would exceed the root-of-unity order cap."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    if n == 1:
        return (-1, 1)
    poly: list[int] = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _poly_div_exact(num, den) -> list[int]:
    # long division by a monic divisor; the remainder must vanish
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dd]
        quot[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    if any(num[:dd]):
        raise ArithmeticError("polynomial division was not exact")
    return quot


def _phi_reduce(order: int, terms: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce a term map modulo Phi_order; drops zero coefficients."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    if all(k < deg for k in terms):
        return {k: v for k, v in terms.items() if v}
    dense = [Fraction(0)] * order
    for k, v in terms.items():
        dense[k] += v
    for i in range(order - 1, deg - 1, -1):
        c = dense[i]
        if c:
            dense[i] = Fraction(0)
            for j in range(deg):
                dense[i - deg + j] -= c * phi[j]
    return {k: v for k, v in enumerate(dense[:deg]) if v}


class PhaseScalar:
    """An exact scalar ``sum_k r_k * zeta_order^k`` with rational ``r_k``.

    Instances are immutable and always canonical: exponents are taken
    modulo the order, the polynomial is reduced modulo the cyclotomic
    polynomial of the order, purely rational values collapse to order 1,
    and a common divisor of order and all exponents is divided out.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int = 1, terms=None):
        if order < 1:
            raise ValueError("order must be a positive integer")
        if order > MAX_ORDER:
            raise OrderLimitError(f"root-of-unity order {order} exceeds cap {MAX_ORDER}")
        folded: dict[int, Fraction] = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                k %= order
                folded[k] = folded.get(k, Fraction(0)) + v
        folded = _phi_reduce(order, folded)
        if not folded:
            order = 1
        elif set(folded) == {0}:
            order = 1
        else:
            g = gcd(order, *folded)
            if g > 1:
                order //= g
                folded = _phi_reduce(order, {k // g: v for k, v in folded.items()})
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", folded)

    def __setattr__(self, name, value):
        raise AttributeError("PhaseScalar is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def _raw(cls, order: int, terms: dict) -> "PhaseScalar":
        # internal: terms must already be canonical for the order
        self = object.__new__(cls)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls) -> "PhaseScalar":
        return _ZERO

    @classmethod
    def one(cls) -> "PhaseScalar":
        return _ONE

    @classmethod
    def minus_one(cls) -> "PhaseScalar":
        return _MINUS_ONE

    @classmethod
    def from_rational(cls, value) -> "PhaseScalar":
        value = Fraction(value)
        if not value:
            return _ZERO
        return cls._raw(1, {0: value})

    @classmethod
    def root_of_unity(cls, order: int, exponent: int = 1) -> "PhaseScalar":
        """The primitive root zeta_order raised to ``exponent``."""
        return cls(order, {exponent % order: Fraction(1)})

    @staticmethod
    def _coerce(value) -> "PhaseScalar":
        if isinstance(value, PhaseScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return PhaseScalar.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to PhaseScalar")

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return self.order == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms.get(0, Fraction(0))

    def is_real(self) -> bool:
        return self == self.conj()

    def is_unit_phase(self) -> bool:
        """True when the scalar has modulus exactly one."""
        return self * self.conj() == PhaseScalar.one()

    # -- ring operations ---------------------------------------------

    def _promoted(self, order: int) -> dict[int, Fraction]:
        step = order // self.order
        return {k * step: v for k, v in self.terms.items()}

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            s = self.terms.get(0, _F0) + other.terms.get(0, _F0)
            return PhaseScalar._raw(1, {0: s}) if s else _ZERO
        n = lcm(self.order, other.order)
        merged = self._promoted(n)
        for k, v in other._promoted(n).items():
            merged[k] = merged.get(k, _F0) + v
        return PhaseScalar(n, merged)

    __radd__ = __add__

    def __neg__(self):
        return PhaseScalar._raw(self.order, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        if self.order == 1 and other.order == 1:
            return PhaseScalar._raw(1, {0: self.terms[0] * other.terms[0]})
        if self.order == 1:
            c = self.terms[0]
            return PhaseScalar._raw(
                other.order, {k: c * v for k, v in other.terms.items()}
            )
        if other.order == 1:
            c = other.terms[0]
            return PhaseScalar._raw(
                self.order, {k: c * v for k, v in self.terms.items()}
            )
        n = lcm(self.order, other.order)
        a = self._promoted(n)
        b = other._promoted(n)
        prod: dict[int, Fraction] = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = (ka + kb) % n
                prod[k] = prod.get(k, _F0) + va * vb
        return PhaseScalar(n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if other.is_rational():
            inv = 1 / other.as_fraction()
            return self * PhaseScalar.from_rational(inv)
        if other.is_unit_phase():
            return self * other.conj()
        raise ValueError("division is only defined by rationals and unit phases")

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if self.order == 1:
            base = self.terms.get(0, _F0)
            if exponent < 0 and not base:
                raise ZeroDivisionError("zero scalar has no negative powers")
            return PhaseScalar.from_rational(base ** exponent)
        if exponent < 0:
            if not self.is_unit_phase():
                raise ValueError("negative powers require a rational or a unit phase")
            return self.conj() ** (-exponent)
        result = PhaseScalar.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "PhaseScalar":
        """Complex conjugate: zeta^k maps to zeta^(n-k)."""
        if self.order == 1:
            return self
        n = self.order
        return PhaseScalar(n, {(n - k) % n: v for k, v in self.terms.items()})

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.order == other.order:
            return self.terms == other.terms
        if lcm(self.order, other.order) > MAX_ORDER:
            # canonical orders that cannot be combined under the cap
            return False
        return (self - other).is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    __hash__ = None

    # -- numeric view --------------------------------------------------

    def to_complex(self, precision: int = 128):
        """Evaluate numerically as an mpmath complex at ``precision`` bits."""
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        with mpmath.workprec(precision + 16):
            total = mpmath.mpc(0)
            for k, v in self.terms.items():
                coeff = mpmath.mpf(v.numerator) / v.denominator
                total += coeff * mpmath.expjpi(mpmath.mpf(2 * k) / self.order)
            return mpmath.mpc(total)

    def __repr__(self):
        return f"PhaseScalar({format_phase(self)!r})"

    def __str__(self):
        return format_phase(self)


_F0 = Fraction(0)
_ZERO = PhaseScalar._raw(1, {})
_ONE = PhaseScalar._raw(1, {0: Fraction(1)})
_MINUS_ONE = PhaseScalar._raw(1, {0: Fraction(-1)})


# -- spec-level operation aliases -------------------------------------


def phase_add(a: PhaseScalar, b: PhaseScalar) -> PhaseScalar:
    return a + b


def phase_mul(a: PhaseScalar, b: PhaseScalar) -> PhaseScalar:
    return a * b


def phase_conj(a: PhaseScalar) -> PhaseScalar:
    return a.conj()


def phase_to_complex(a: PhaseScalar, precision: int = 128):
    return a.to_complex(precision)


# -- textual form ------------------------------------------------------


def format_phase(a: PhaseScalar) -> str:
    """Render ``a`` as e.g. ``1/2+3*w8^3-w4^1``; round-trips bit-exactly."""
    if a.is_zero():
        return "0"
    parts: list[str] = []
    for k in sorted(a.terms):
        v = a.terms[k]
        mag = abs(v)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = f"w{a.order}^{k}"
        else:
            body = f"{mag}*w{a.order}^{k}"
        if not parts:
            parts.append(body if v > 0 else "-" + body)
        else:
            parts.append(("+" if v > 0 else "-") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"(?:(?P<rat>\d+(?:/\d+)?)(?:\*(?=w))?)?(?:w(?P<ord>\d+)\^(?P<exp>\d+))?"
)


def parse_phase(text: str) -> PhaseScalar:
    """Parse the textual scalar form produced by :func:`format_phase`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if s == "0":
        return PhaseScalar.zero()
    result = PhaseScalar.zero()
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group("rat") is None and m.group("ord") is None):
            raise ValueError(f"malformed scalar term at position {pos} in {text!r}")
        rat = Fraction(m.group("rat")) if m.group("rat") else Fraction(1)
        if m.group("ord"):
            term = PhaseScalar(int(m.group("ord")), {int(m.group("exp")): sign * rat})
        else:
            term = PhaseScalar.from_rational(sign * rat)
        result = result + term
        pos = m.end()
        first = False
    return result
