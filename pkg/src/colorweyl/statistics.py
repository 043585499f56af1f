"""Grading vectors and commutation factors on Z^N and its Z_n^N quotients.

A commutation factor assigns an exchange phase to every pair of grades.
It is stored extensionally: a parity bit per mode (the diagonal sign)
plus the full matrix of pairwise phases, validated against the
bicharacter constraints.  Named presets construct the factor patterns
used throughout the composite-particle scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coefficients import PhaseScalar, format_phase, parse_phase

__all__ = [
    "FactorError",
    "GradeVector",
    "CommutationFactor",
    "FactorPreset",
    "PRESET_KINDS",
    "make_factor",
    "eval_factor",
    "factorize",
    "quotient_grade",
    "reduce_group",
    "factor_from_descriptor",
    "factor_to_descriptor",
]

PRESET_KINDS = (
    "appendix_even",
    "appendix_odd",
    "example3_cf",
    "example4_cb",
    "clifford",
    "omega_general",
)


class FactorError(ValueError):
    """A commutation-factor invariant is violated."""


@dataclass(frozen=True)
class GradeVector:
    """Element of the grading group: integer coordinates, optionally mod n."""

    coords: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if self.modulus is not None:
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
            coords = tuple(c % self.modulus for c in coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, dim: int, modulus: int | None = None) -> "GradeVector":
        return cls((0,) * dim, modulus)

    @classmethod
    def generator(cls, dim: int, mode: int, modulus: int | None = None) -> "GradeVector":
        """Grade of the mode-th creator (1-based)."""
        if not 1 <= mode <= dim:
            raise ValueError(f"mode {mode} out of range 1..{dim}")
        coords = [0] * dim
        coords[mode - 1] = 1
        return cls(tuple(coords), modulus)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check_compatible(self, other: "GradeVector"):
        if self.dim != other.dim or self.modulus != other.modulus:
            raise ValueError("grade vectors live in different grading groups")

    def __add__(self, other: "GradeVector") -> "GradeVector":
        self._check_compatible(other)
        return GradeVector(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.modulus
        )

    def __sub__(self, other: "GradeVector") -> "GradeVector":
        self._check_compatible(other)
        return GradeVector(
            tuple(a - b for a, b in zip(self.coords, other.coords)), self.modulus
        )

    def __neg__(self) -> "GradeVector":
        return GradeVector(tuple(-a for a in self.coords), self.modulus)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


class CommutationFactor:
    """Exchange statistics data: parities S_i and the phase matrix c_ij.

    The diagonal entries are the signs q_i = (-1)^S_i; every entry is a
    unit phase and c_ij * c_ji = 1.  When ``reduced_modulus`` is set the
    factor descends to Z_n^N, which additionally requires every entry's
    n-th power to be one.
    """

    __slots__ = ("dim", "parities", "entries", "reduced_modulus", "preset")

    def __init__(self, parities, entries, reduced_modulus=None, preset=None):
        parities = tuple(int(s) for s in parities)
        dim = len(parities)
        if dim < 1:
            raise FactorError("factor needs at least one mode")
        if any(s not in (0, 1) for s in parities):
            raise FactorError("parity out of range: every S_i must be 0 or 1")
        matrix = tuple(tuple(row) for row in entries)
        if len(matrix) != dim or any(len(row) != dim for row in matrix):
            raise FactorError(f"entry matrix must be {dim}x{dim}")
        one = PhaseScalar.one()
        for i in range(dim):
            q = PhaseScalar.from_rational((-1) ** parities[i])
            if matrix[i][i] != q:
                raise FactorError(
                    f"diagonal entry c_{i + 1}{i + 1} must equal (-1)^S_{i + 1}"
                )
            for j in range(dim):
                e = matrix[i][j]
                if not isinstance(e, PhaseScalar):
                    raise FactorError("factor entries must be PhaseScalar values")
                if not e.is_unit_phase():
                    raise FactorError(
                        f"entry c_{i + 1}{j + 1} is not a unit phase"
                    )
                if matrix[i][j] * matrix[j][i] != one:
                    raise FactorError(
                        f"c_{i + 1}{j + 1} * c_{j + 1}{i + 1} != 1"
                    )
        if reduced_modulus is not None:
            n = int(reduced_modulus)
            if n < 1:
                raise FactorError("reduced modulus must be positive")
            for i in range(dim):
                for j in range(dim):
                    if matrix[i][j] ** n != one:
                        raise FactorError(
                            f"(c_{i + 1}{j + 1})^{n} != 1: factor does not "
                            f"descend to Z_{n}^{dim}"
                        )
            reduced_modulus = n
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "parities", parities)
        object.__setattr__(self, "entries", matrix)
        object.__setattr__(self, "reduced_modulus", reduced_modulus)
        object.__setattr__(self, "preset", preset)

    def __setattr__(self, name, value):
        raise AttributeError("CommutationFactor is immutable")

    def entry(self, i: int, j: int) -> PhaseScalar:
        """Phase c_ij for 1-based mode indices."""
        return self.entries[i - 1][j - 1]

    def q(self, i: int) -> PhaseScalar:
        return self.entries[i - 1][i - 1]

    def q_sign(self, i: int) -> int:
        return -1 if self.parities[i - 1] else 1

    def is_nilpotent(self, i: int) -> bool:
        """True when mode i has parity sign -1, forcing squares to zero."""
        return self.parities[i - 1] == 1

    def is_sign_factor(self) -> bool:
        """True when every entry is +1 or -1."""
        one, minus = PhaseScalar.one(), PhaseScalar.minus_one()
        return all(e == one or e == minus for row in self.entries for e in row)

    def grade_zero(self) -> GradeVector:
        return GradeVector.zero(self.dim, self.reduced_modulus)

    def grade_generator(self, mode: int) -> GradeVector:
        return GradeVector.generator(self.dim, mode, self.reduced_modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommutationFactor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.parities == other.parities
            and self.reduced_modulus == other.reduced_modulus
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.dim)
                for j in range(self.dim)
            )
        )

    __hash__ = None

    def __repr__(self):
        label = self.preset or "custom"
        mod = f", mod {self.reduced_modulus}" if self.reduced_modulus else ""
        return f"CommutationFactor({label}, N={self.dim}{mod})"


@dataclass(frozen=True)
class FactorPreset:
    """Constructor data for a named factor pattern."""

    kind: str
    dim: int
    parities: tuple[int, ...] | None = None
    omega_matrix: tuple[tuple[int, ...], ...] | None = None
    omega_order: int = 1
    omega_exp: int = 0


def _sign_prime_offdiag(parities, i, j) -> int:
    # -1 exactly when both modes carry parity sign -1
    return -1 if (parities[i] == 1 and parities[j] == 1) else 1


def make_factor(preset: FactorPreset) -> CommutationFactor:
    """Instantiate a validated commutation factor from a preset."""
    n = preset.dim
    if n < 1:
        raise FactorError("factor needs at least one mode")
    kind = preset.kind
    one = PhaseScalar.one()
    minus = PhaseScalar.minus_one()
    if kind in ("appendix_even", "appendix_odd", "example3_cf", "example4_cb", "clifford"):
        if kind == "appendix_even":
            if n % 2 != 0:
                raise FactorError("appendix_even preset requires an even mode count")
            diag_sign, off = -1, one
        elif kind == "appendix_odd":
            if n % 2 != 1:
                raise FactorError("appendix_odd preset requires an odd mode count")
            diag_sign, off = 1, minus
        elif kind == "example3_cf":
            diag_sign, off = 1, minus
        elif kind == "example4_cb":
            diag_sign, off = -1, one
        else:  # clifford
            diag_sign, off = 1, minus
        parities = tuple(0 if diag_sign == 1 else 1 for _ in range(n))
        diag = one if diag_sign == 1 else minus
        entries = [
            [diag if i == j else off for j in range(n)] for i in range(n)
        ]
        return CommutationFactor(parities, entries, preset=kind)
    if kind == "omega_general":
        if preset.parities is None or preset.omega_matrix is None:
            raise FactorError("omega_general preset needs parities and an exponent matrix")
        parities = tuple(int(s) for s in preset.parities)
        if len(parities) != n:
            raise FactorError("parity vector length must match the mode count")
        omega_matrix = tuple(tuple(int(x) for x in row) for row in preset.omega_matrix)
        if len(omega_matrix) != n or any(len(row) != n for row in omega_matrix):
            raise FactorError("exponent matrix must be NxN")
        if any(omega_matrix[i][i] != 0 for i in range(n)):
            raise FactorError("invalid exponent matrix: diagonal must vanish")
        omega = PhaseScalar.root_of_unity(preset.omega_order, preset.omega_exp)
        entries = [[None] * n for _ in range(n)]
        for i in range(n):
            entries[i][i] = one if parities[i] == 0 else minus
        # only the upper triangle of the exponent matrix is read; the lower
        # triangle is forced by c_ji = c_ij^(-1)
        for i in range(n):
            for j in range(i + 1, n):
                cp = _sign_prime_offdiag(parities, i, j)
                cij = omega ** omega_matrix[i][j]
                if cp == -1:
                    cij = -cij
                entries[i][j] = cij
                entries[j][i] = cij.conj()
        return CommutationFactor(parities, entries)
    raise FactorError(f"unknown preset kind {kind!r}")


def eval_factor(c: CommutationFactor, a: GradeVector, b: GradeVector) -> PhaseScalar:
    """Exchange phase between grades a and b.

    Computed as the product of q_i^(a_i b_i) over modes and
    c_ij^(a_i b_j - a_j b_i) over mode pairs i < j.
    """
    if a.dim != c.dim or b.dim != c.dim:
        raise ValueError("grade dimension does not match the factor")
    if a.modulus != c.reduced_modulus or b.modulus != c.reduced_modulus:
        raise ValueError("grade modulus does not match the factor")
    result = PhaseScalar.one()
    for i in range(c.dim):
        e = a.coords[i] * b.coords[i]
        if e:
            result = result * (c.entries[i][i] ** e)
        for j in range(i + 1, c.dim):
            e = a.coords[i] * b.coords[j] - a.coords[j] * b.coords[i]
            if e:
                result = result * (c.entries[i][j] ** e)
    return result


def factorize(c: CommutationFactor) -> tuple[CommutationFactor, CommutationFactor]:
    """Split c into a sign factor c' (parity part) and a twist factor b.

    c' keeps the parities, with off-diagonal -1 exactly on pairs of
    odd-parity modes; b has trivial diagonal and carries the remaining
    phase, so c_ij = c'_ij * b_ij entrywise.
    """
    n = c.dim
    one = PhaseScalar.one()
    minus = PhaseScalar.minus_one()
    prime_entries = [[None] * n for _ in range(n)]
    b_entries = [[None] * n for _ in range(n)]
    for i in range(n):
        prime_entries[i][i] = c.entries[i][i]
        b_entries[i][i] = one
        for j in range(n):
            if i == j:
                continue
            sign = _sign_prime_offdiag(c.parities, i, j)
            prime_entries[i][j] = minus if sign == -1 else one
            bij = c.entries[i][j]
            if sign == -1:
                bij = -bij
            b_entries[i][j] = bij
    cprime = CommutationFactor(c.parities, prime_entries, c.reduced_modulus)
    bfac = CommutationFactor((0,) * n, b_entries, c.reduced_modulus)
    return cprime, bfac


def quotient_grade(c: CommutationFactor, a: GradeVector) -> int:
    """Image of a grade under the parity quotient map: sum S_i a_i mod 2."""
    if a.dim != c.dim:
        raise ValueError("grade dimension does not match the factor")
    return sum(s * x for s, x in zip(c.parities, a.coords)) % 2


def reduce_group(c: CommutationFactor, n: int) -> CommutationFactor:
    """Reduce the grading group to Z_n^N; valid only when all phases have order dividing n."""
    if n < 1:
        raise FactorError("modulus must be positive")
    reduced = CommutationFactor(c.parities, c.entries, reduced_modulus=n, preset=c.preset)
    return reduced


# -- JSON descriptor interface -----------------------------------------


def factor_from_descriptor(desc: dict) -> CommutationFactor:
    """Build a factor from its JSON descriptor form."""
    if "N" not in desc:
        raise FactorError("descriptor missing mode count 'N'")
    n = int(desc["N"])
    modulus = desc.get("modulus")
    if "preset" in desc:
        factor = make_factor(FactorPreset(kind=desc["preset"], dim=n))
    elif "Omega" in desc:
        omega = desc.get("omega", {"order": 1, "exp": 0})
        factor = make_factor(
            FactorPreset(
                kind="omega_general",
                dim=n,
                parities=tuple(desc["S"]),
                omega_matrix=tuple(tuple(row) for row in desc["Omega"]),
                omega_order=int(omega["order"]),
                omega_exp=int(omega["exp"]),
            )
        )
    elif "c" in desc:
        entries = [[parse_phase(cell) for cell in row] for row in desc["c"]]
        factor = CommutationFactor(tuple(desc["S"]), entries)
    else:
        raise FactorError("descriptor needs one of 'preset', 'Omega' or 'c'")
    if modulus is not None:
        factor = reduce_group(factor, int(modulus))
    return factor


def factor_to_descriptor(factor: CommutationFactor) -> dict:
    """Emit a JSON descriptor that round-trips through factor_from_descriptor."""
    desc: dict = {"N": factor.dim}
    if factor.preset is not None:
        desc["preset"] = factor.preset
    else:
        desc["S"] = list(factor.parities)
        desc["c"] = [
            [format_phase(e) for e in row] for row in factor.entries
        ]
    if factor.reduced_modulus is not None:
        desc["modulus"] = factor.reduced_modulus
    return desc
