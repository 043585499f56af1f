"""Independent matrix model of the Fock module for brute-force checks.

Generator matrices are materialized on the truncated occupation basis;
every verification multiplies those matrices directly and never routes
through the rewrite engine, so agreement between the two paths is a real
cross-check.  Modes without nilpotency live on a finite ladder, so the
matrices truncate at the occupation cap; identities touching the top of
a ladder are checked away from the boundary and the exclusion is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coefficients import PhaseScalar
from .statistics import CommutationFactor, eval_factor
from .fock import FockVector, basis_monomials, create, evaluate
from .weyl import WeylElement, normal_form

__all__ = [
    "DenseOperator",
    "DimensionBoundError",
    "build_matrices",
    "word_matrix",
    "element_matrix",
    "verify_relations",
    "compare_symbolic",
    "RelationReport",
]

DEFAULT_DIMENSION_BOUND = 4096


class DimensionBoundError(ValueError):
    """The requested truncated basis is larger than the configured bound."""


class DenseOperator:
    """Exact operator matrix on the truncated occupation basis.

    Entries are kept sparsely keyed by (row, column); generator matrices
    and their products stay monomial-sparse, which keeps word products
    linear in the dimension.
    """

    __slots__ = ("dim", "entries", "_rows")

    def __init__(self, dim: int, entries=None):
        clean: dict[tuple[int, int], PhaseScalar] = {}
        for (r, c), v in (entries or {}).items():
            if not isinstance(v, PhaseScalar):
                v = PhaseScalar._coerce(v)
            if not v.is_zero():
                if not (0 <= r < dim and 0 <= c < dim):
                    raise ValueError("entry index out of range")
                clean[(r, c)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "_rows", None)

    def __setattr__(self, name, value):
        raise AttributeError("DenseOperator is immutable")

    def _by_row(self):
        rows = self._rows
        if rows is None:
            rows = {}
            for (r, c), v in self.entries.items():
                rows.setdefault(r, []).append((c, v))
            object.__setattr__(self, "_rows", rows)
        return rows

    @classmethod
    def zero(cls, dim: int) -> "DenseOperator":
        return cls(dim, {})

    @classmethod
    def identity(cls, dim: int) -> "DenseOperator":
        one = PhaseScalar.one()
        return cls(dim, {(i, i): one for i in range(dim)})

    def entry(self, r: int, c: int) -> PhaseScalar:
        return self.entries.get((r, c), PhaseScalar.zero())

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        merged = dict(self.entries)
        for key, v in other.entries.items():
            s = merged.get(key, PhaseScalar.zero()) + v
            if s.is_zero():
                merged.pop(key, None)
            else:
                merged[key] = s
        return DenseOperator(self.dim, merged)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar) -> "DenseOperator":
        s = PhaseScalar._coerce(scalar)
        return DenseOperator(self.dim, {k: v * s for k, v in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, DenseOperator):
            return self.scale(other)
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        by_row = other._by_row()
        acc: dict[tuple[int, int], PhaseScalar] = {}
        for (r, k), v in self.entries.items():
            row = by_row.get(k)
            if not row:
                continue
            for c, w in row:
                key = (r, c)
                prev = acc.get(key)
                acc[key] = v * w if prev is None else prev + v * w
        return DenseOperator(self.dim, {k: v for k, v in acc.items() if v.terms})

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(
            self.dim, {(c, r): v.conj() for (r, c), v in self.entries.items()}
        )

    def is_zero(self) -> bool:
        return not self.entries

    def equals_on_columns(self, other: "DenseOperator", columns) -> bool:
        cols = set(columns)
        mine = {k: v for k, v in self.entries.items() if k[1] in cols}
        theirs = {k: v for k, v in other.entries.items() if k[1] in cols}
        return mine == theirs

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseOperator):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"DenseOperator(dim={self.dim}, nnz={len(self.entries)})"


def build_matrices(
    factor: CommutationFactor,
    cap: int,
    dimension_bound: int = DEFAULT_DIMENSION_BOUND,
):
    """Creator and annihilator matrices on the capped occupation basis.

    Column k of the mode-i creator is the i-th creation applied to the
    k-th basis monomial; targets above the cap are truncated away.
    """
    basis = basis_monomials(factor, cap)
    dim = len(basis)
    if dim > dimension_bound:
        raise DimensionBoundError(
            f"basis dimension {dim} exceeds bound {dimension_bound}"
        )
    index = {occ: k for k, occ in enumerate(basis)}
    creators, annihilators = [], []
    for i in range(1, factor.dim + 1):
        c_entries, a_entries = {}, {}
        for k, occ in enumerate(basis):
            vec = FockVector.monomial(factor, occ)
            for target, coeff in create(i, vec).terms.items():
                row = index.get(target)
                if row is not None:
                    c_entries[(row, k)] = coeff
            for target, coeff in evaluate(i, vec).terms.items():
                a_entries[(index[target], k)] = coeff
        creators.append(DenseOperator(dim, c_entries))
        annihilators.append(DenseOperator(dim, a_entries))
    return creators, annihilators


def word_matrix(word, creators, annihilators) -> DenseOperator:
    """Product of generator matrices in word order (no rewriting involved)."""
    out = None
    for letter in word:
        mat = creators[letter - 1] if letter > 0 else annihilators[-letter - 1]
        out = mat if out is None else out * mat
    if out is None:
        out = DenseOperator.identity(creators[0].dim)
    return out


def element_matrix(x: WeylElement, creators, annihilators) -> DenseOperator:
    """Matrix of a normal-ordered element by substituting generator matrices."""
    dim = creators[0].dim
    out = DenseOperator.zero(dim)
    for mono, coeff in x.terms.items():
        out = out + word_matrix(mono.word(), creators, annihilators).scale(coeff)
    return out


@dataclass
class RelationReport:
    factor: str
    cap: int
    dimension: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "factor": self.factor,
            "cap": self.cap,
            "dimension": self.dimension,
            "ok": self.ok,
            "checks": self.checks,
        }


def _safe_columns(factor, basis, cap, headroom):
    """Columns whose ladder occupation cannot reach the truncation cap."""
    cols = []
    for k, occ in enumerate(basis):
        if all(
            factor.is_nilpotent(i + 1) or occ[i] + headroom.get(i + 1, 0) <= cap
            for i in range(factor.dim)
        ):
            cols.append(k)
    return cols


def verify_relations(
    factor: CommutationFactor,
    cap: int,
    dimension_bound: int = DEFAULT_DIMENSION_BOUND,
) -> RelationReport:
    """Check the representation bracket identities as exact matrix equations.

    The i = j instance of the annihilator/creator bracket raises the
    ladder before lowering it, so on non-nilpotent modes it is checked
    only on columns below the truncation boundary; all other families
    hold on the full truncated space and are checked there.
    """
    basis = basis_monomials(factor, cap)
    creators, annihilators = build_matrices(factor, cap, dimension_bound)
    dim = len(basis)
    identity = DenseOperator.identity(dim)
    zero_grade = factor.grade_zero()
    report = RelationReport(factor=repr(factor), cap=cap, dimension=dim)
    n = factor.dim
    for i in range(1, n + 1):
        gi = factor.grade_generator(i)
        for j in range(1, n + 1):
            gj = factor.grade_generator(j)
            # annihilator-creator bracket equals the identity on the diagonal
            phase = eval_factor(factor, zero_grade - gi, gj)
            lhs = annihilators[i - 1] * creators[j - 1] - (
                creators[j - 1] * annihilators[i - 1]
            ).scale(phase)
            expected = identity if i == j else DenseOperator.zero(dim)
            if i == j and not factor.is_nilpotent(i):
                columns = _safe_columns(factor, basis, cap, {i: 1})
                ok = lhs.equals_on_columns(expected, columns)
                excluded = dim - len(columns)
                note = (
                    f"{excluded} basis columns at the mode-{i} ladder top "
                    f"(occupation {cap}) excluded"
                )
            else:
                columns = range(dim)
                ok = lhs == expected
                excluded = 0
                note = "full space"
            report.checks.append(
                {
                    "relation": f"[a*_{i}, a_{j}]_c = delta",
                    "ok": ok,
                    "excluded_columns": excluded,
                    "excluded_subspace": note,
                }
            )
            # creator-creator bracket vanishes
            phase = eval_factor(factor, gi, gj)
            lhs = creators[i - 1] * creators[j - 1] - (
                creators[j - 1] * creators[i - 1]
            ).scale(phase)
            report.checks.append(
                {
                    "relation": f"[a_{i}, a_{j}]_c = 0",
                    "ok": lhs.is_zero(),
                    "excluded_columns": 0,
                    "excluded_subspace": "full space",
                }
            )
            # annihilator-annihilator bracket vanishes
            phase = eval_factor(factor, zero_grade - gi, zero_grade - gj)
            lhs = annihilators[i - 1] * annihilators[j - 1] - (
                annihilators[j - 1] * annihilators[i - 1]
            ).scale(phase)
            report.checks.append(
                {
                    "relation": f"[a*_{i}, a*_{j}]_c = 0",
                    "ok": lhs.is_zero(),
                    "excluded_columns": 0,
                }
            )
    return report


def compare_symbolic(
    word,
    factor: CommutationFactor,
    cap: int | None = None,
    dimension_bound: int = DEFAULT_DIMENSION_BOUND,
    matrices=None,
) -> bool:
    """Compare the rewrite engine against direct matrix multiplication.

    The word is evaluated two ways: normal form followed by matrix
    substitution of the canonical monomials, and the plain product of the
    generator matrices of the original letters.  Non-nilpotent modes are
    compared on columns that cannot overflow the ladder cap.  Pass
    ``matrices`` (the build_matrices pair) to reuse them across words; the
    cap must then be the one they were built with.
    """
    word = tuple(word)
    counts = {}
    for letter in word:
        if letter > 0:
            counts[letter] = counts.get(letter, 0) + 1
    if cap is None:
        cap = max([1] + [c + 1 for m, c in counts.items() if not factor.is_nilpotent(m)])
    basis = basis_monomials(factor, cap)
    if matrices is None:
        creators, annihilators = build_matrices(factor, cap, dimension_bound)
    else:
        creators, annihilators = matrices
        if creators[0].dim != len(basis):
            raise ValueError("prebuilt matrices do not match the cap")
    direct = word_matrix(word, creators, annihilators)
    substituted = element_matrix(normal_form(word, factor), creators, annihilators)
    headroom = {m: c for m, c in counts.items() if not factor.is_nilpotent(m)}
    columns = _safe_columns(factor, basis, cap, headroom)
    return direct.equals_on_columns(substituted, columns)
