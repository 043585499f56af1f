"""Fock space over the c-symmetric algebra: occupation vectors and the
creation / evaluation operators, plus composite-particle bookkeeping.

The basis consists of occupation monomials; creators act by reordered
left multiplication and annihilators by the recursive right evaluation.
Consistency of the evaluation with the c-commutation of the underlying
algebra requires every exchange phase to be a sign, so the operators
reject factors with non-real off-diagonal entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable

from .coefficients import PhaseScalar
from .statistics import CommutationFactor
from .weyl import WeylElement

__all__ = [
    "FockVector",
    "CompositeStateInfo",
    "StateRow",
    "ColumnState",
    "basis_monomials",
    "create",
    "evaluate",
    "act",
    "enumerate_states",
    "represent_column",
    "effective_field",
]

Occupation = tuple[int, ...]


def _require_sign_factor(factor: CommutationFactor):
    if not factor.is_sign_factor():
        raise ValueError(
            "Fock evaluation needs exchange phases +/-1; the occupation "
            "module does not carry the action for complex deformation phases"
        )


class FockVector:
    """Finite phase-weighted sum of occupation monomials."""

    __slots__ = ("factor", "terms")

    def __init__(self, factor: CommutationFactor, terms=None):
        clean: dict[Occupation, PhaseScalar] = {}
        for occ, coeff in (terms or {}).items():
            occ = tuple(int(x) for x in occ)
            if len(occ) != factor.dim or any(x < 0 for x in occ):
                raise ValueError(f"bad occupation vector {occ}")
            for i in range(factor.dim):
                if factor.parities[i] == 1 and occ[i] > 1:
                    raise ValueError(f"occupation violates nilpotency of mode {i + 1}")
            if not isinstance(coeff, PhaseScalar):
                coeff = PhaseScalar._coerce(coeff)
            if occ in clean:
                coeff = clean[occ] + coeff
            if coeff.is_zero():
                clean.pop(occ, None)
            else:
                clean[occ] = coeff
        object.__setattr__(self, "factor", factor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FockVector is immutable")

    @classmethod
    def zero(cls, factor: CommutationFactor) -> "FockVector":
        return cls(factor, {})

    @classmethod
    def vacuum(cls, factor: CommutationFactor) -> "FockVector":
        return cls(factor, {(0,) * factor.dim: PhaseScalar.one()})

    @classmethod
    def monomial(cls, factor: CommutationFactor, occupation: Iterable[int]) -> "FockVector":
        return cls(factor, {tuple(occupation): PhaseScalar.one()})

    def _check_factor(self, other: "FockVector"):
        if self.factor != other.factor:
            raise ValueError("vectors live over different commutation factors")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_factor(other)
        merged = dict(self.terms)
        for occ, coeff in other.terms.items():
            s = merged.get(occ, PhaseScalar.zero()) + coeff
            if s.is_zero():
                merged.pop(occ, None)
            else:
                merged[occ] = s
        return FockVector(self.factor, merged)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __neg__(self) -> "FockVector":
        return FockVector(self.factor, {o: -c for o, c in self.terms.items()})

    def scale(self, scalar) -> "FockVector":
        s = PhaseScalar._coerce(scalar)
        return FockVector(self.factor, {o: c * s for o, c in self.terms.items()})

    def __mul__(self, other):
        return self.scale(other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(o) for o in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.factor == other.factor and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "FockVector(0)"
        body = " + ".join(f"({c})*{o}" for o, c in sorted(self.terms.items()))
        return f"FockVector({body})"


def basis_monomials(
    factor: CommutationFactor, cap: int, degree: int | None = None
) -> list[Occupation]:
    """All occupation vectors with per-mode occupation at most cap
    (at most 1 on nilpotent modes), in lexicographic order."""
    if cap < 1:
        raise ValueError("occupation cap must be at least 1")
    ranges = [
        range(2) if factor.is_nilpotent(i + 1) else range(cap + 1)
        for i in range(factor.dim)
    ]
    out = [occ for occ in product(*ranges)]
    if degree is not None:
        out = [occ for occ in out if sum(occ) == degree]
    return sorted(out)


def create(mode: int, f: FockVector) -> FockVector:
    """Left multiplication by the mode-th creator, reordered to canonical form."""
    factor = f.factor
    if not 1 <= mode <= factor.dim:
        raise ValueError(f"mode {mode} out of range 1..{factor.dim}")
    _require_sign_factor(factor)
    nilpotent = factor.is_nilpotent(mode)
    out: dict[Occupation, PhaseScalar] = {}
    for occ, coeff in f.terms.items():
        if nilpotent and occ[mode - 1] >= 1:
            continue
        phase = coeff
        for k in range(1, mode):
            if occ[k - 1]:
                phase = phase * (factor.entry(mode, k) ** occ[k - 1])
        target = list(occ)
        target[mode - 1] += 1
        target = tuple(target)
        s = out.get(target, PhaseScalar.zero()) + phase
        if s.is_zero():
            out.pop(target, None)
        else:
            out[target] = s
    return FockVector(factor, out)


def evaluate(mode: int, f: FockVector) -> FockVector:
    """Right evaluation by the mode-th annihilator.

    On a monomial it peels the lowest occupied mode j and recurses:
    a delta term when j equals the mode, plus the crossing phase c_(mode j)
    times the creator j applied to the evaluated remainder.
    """
    factor = f.factor
    if not 1 <= mode <= factor.dim:
        raise ValueError(f"mode {mode} out of range 1..{factor.dim}")
    _require_sign_factor(factor)
    out = FockVector.zero(factor)
    for occ, coeff in f.terms.items():
        out = out + _evaluate_monomial(factor, mode, occ).scale(coeff)
    return out


def _evaluate_monomial(factor: CommutationFactor, mode: int, occ: Occupation) -> FockVector:
    if all(x == 0 for x in occ):
        return FockVector.zero(factor)
    j = next(i for i, x in enumerate(occ, start=1) if x > 0)
    rest = list(occ)
    rest[j - 1] -= 1
    rest = tuple(rest)
    result = FockVector.zero(factor)
    if j == mode:
        result = result + FockVector.monomial(factor, rest)
    tail = _evaluate_monomial(factor, mode, rest)
    if not tail.is_zero():
        result = result + create(j, tail).scale(factor.entry(mode, j))
    return result


def act(x, f: FockVector) -> FockVector:
    """Action of a WeylElement (or a raw generator word) on a vector.

    Letters apply right-to-left; creators multiply on the left and
    annihilators evaluate.
    """
    if isinstance(x, WeylElement):
        if x.factor != f.factor:
            raise ValueError("element and vector use different factors")
        out = FockVector.zero(f.factor)
        for mono, coeff in x.terms.items():
            out = out + act(mono.word(), f).scale(coeff)
        return out
    word = tuple(x)
    v = f
    for letter in reversed(word):
        if v.is_zero():
            break
        if letter > 0:
            v = create(letter, v)
        elif letter < 0:
            v = evaluate(-letter, v)
        else:
            raise ValueError("unknown generator index 0")
    return v


# -- composite-particle bookkeeping -------------------------------------


@dataclass(frozen=True)
class CompositeStateInfo:
    """Quasiparticle/quasihole counts and the effective field of a state."""

    quasiparticles: int
    quasiholes: int
    filling_prime: Fraction
    b_eff: Fraction


@dataclass(frozen=True)
class StateRow:
    occupation: Occupation
    info: CompositeStateInfo
    column_rep_zero: bool

    def to_json(self) -> dict:
        return {
            "occupation": list(self.occupation),
            "m": self.info.quasiparticles,
            "n": self.info.quasiholes,
            "nu_prime": str(self.info.filling_prime),
            "b_eff": f"{self.info.b_eff}*Phi0",
            "column_rep_zero": self.column_rep_zero,
        }


class ColumnState(tuple):
    """Single-Grassmann column picture: one 0/1 slot per row."""

    def __repr__(self):
        body = ", ".join("Theta" if x else "0" for x in self)
        return f"ColumnState({body})"


def represent_column(
    n_modes: int, indices: Iterable[int], even: bool
) -> ColumnState | None:
    """Build the column-picture product state; None encodes the zero state.

    Even mode count: distinct rows commute, a repeated row squares to
    zero.  Odd mode count: products of two distinct rows vanish outright
    and repeated rows are taken to vanish as well.
    """
    rows = [0] * n_modes
    for i in indices:
        if not 1 <= i <= n_modes:
            raise ValueError(f"mode {i} out of range 1..{n_modes}")
        if rows[i - 1]:
            return None  # the single Grassmann slot squares to zero
        rows[i - 1] = 1
    occupied = sum(rows)
    if not even and occupied > 1:
        return None
    return ColumnState(rows)


def effective_field(b_flux, quasiparticles: int):
    """Effective field in flux-quantum units: B minus one quantum per quasiparticle."""
    if quasiparticles < 0:
        raise ValueError("quasiparticle count must be nonnegative")
    return Fraction(b_flux) - quasiparticles


def enumerate_states(
    factor: CommutationFactor, b_flux, cap: int = 1
) -> list[StateRow]:
    """Catalog the occupation basis with composite-particle annotations.

    Each row gets m (distinct occupied modes), n = N - m quasiholes, the
    transformed filling (m+n)/N and the effective field at b_flux; states
    that vanish in the column picture are flagged.
    """
    n_modes = factor.dim
    even = n_modes % 2 == 0
    rows = []
    for occ in basis_monomials(factor, cap):
        m = sum(1 for x in occ if x > 0)
        info = CompositeStateInfo(
            quasiparticles=m,
            quasiholes=n_modes - m,
            filling_prime=Fraction(m + (n_modes - m), n_modes),
            b_eff=effective_field(b_flux, m),
        )
        indices: list[int] = []
        for i, x in enumerate(occ, start=1):
            indices.extend([i] * x)
        col = represent_column(n_modes, indices, even)
        rows.append(StateRow(occupation=occ, info=info, column_rep_zero=col is None))
    return rows
