"""Scalar product on the Fock space, Gram matrices and positivity.

The normative inner product is the evaluation-map recursion, antilinear
in its first argument.  The permutation-sum formula is kept as an
independent brute-force oracle; agreement of the two on words of
distinct labels pins the index conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import mpmath

from .coefficients import PhaseScalar
from .statistics import CommutationFactor
from .fock import FockVector, basis_monomials, evaluate

__all__ = [
    "GramMatrix",
    "PositivityCertificate",
    "inner",
    "permutation_sum",
    "gram_matrix",
    "check_positive",
]


def inner(f: FockVector, g: FockVector) -> PhaseScalar:
    """Sesquilinear scalar product, antilinear in ``f``.

    Defined by <1,1> = 1 and <Ti f', g> = <f', evaluate(i, g)>, peeling
    the lowest occupied mode of each monomial of f.
    """
    f._check_factor(g)
    total = PhaseScalar.zero()
    for occ, coeff in f.terms.items():
        total = total + coeff.conj() * _inner_monomial(occ, g)
    return total


def _inner_monomial(occ, g: FockVector) -> PhaseScalar:
    if g.is_zero():
        return PhaseScalar.zero()
    if sum(occ) != g.degree():
        # evaluation drops degree by one per peel, so mixed degrees die
        g = FockVector(
            g.factor,
            {o: c for o, c in g.terms.items() if sum(o) == sum(occ)},
        )
        if g.is_zero():
            return PhaseScalar.zero()
    j = next((i for i, x in enumerate(occ, start=1) if x > 0), None)
    if j is None:
        return g.terms.get((0,) * g.factor.dim, PhaseScalar.zero())
    rest = list(occ)
    rest[j - 1] -= 1
    return _inner_monomial(tuple(rest), evaluate(j, g))


def permutation_sum(
    labels_sigma, labels_tau, factor: CommutationFactor
) -> PhaseScalar:
    """Brute-force permutation-sum form of the scalar product of two words.

    Sums over all permutations the product of label deltas times the
    inversion character: for every inversion pair (s, t) of the
    permutation the factor entry at the first word's labels at those
    positions.
    """
    sigma = tuple(int(x) for x in labels_sigma)
    tau = tuple(int(x) for x in labels_tau)
    if len(sigma) != len(tau):
        raise ValueError("label lists must have equal length")
    n = len(sigma)
    if n > 9:
        raise ValueError("permutation sum is factorial; length capped at 9")
    for lab in sigma + tau:
        if not 1 <= lab <= factor.dim:
            raise ValueError(f"label {lab} out of range 1..{factor.dim}")
    rng_n = range(n)
    if factor.is_sign_factor():
        # same brute force, with the +/-1 characters folded in machine ints
        signs = [
            [1 if factor.entries[i][j] == PhaseScalar.one() else -1 for j in range(factor.dim)]
            for i in range(factor.dim)
        ]
        total = 0
        for pi in permutations(rng_n):
            matched = True
            for t in rng_n:
                if sigma[t] != tau[pi[t]]:
                    matched = False
                    break
            if not matched:
                continue
            chi = 1
            for s in rng_n:
                pis = pi[s]
                row = signs[sigma[s] - 1]
                for t in range(s + 1, n):
                    if pis > pi[t]:
                        chi *= row[sigma[t] - 1]
            total += chi
        return PhaseScalar.from_rational(total)
    total = PhaseScalar.zero()
    for pi in permutations(rng_n):
        matched = True
        for t in rng_n:
            if sigma[t] != tau[pi[t]]:
                matched = False
                break
        if not matched:
            continue
        chi = PhaseScalar.one()
        for s in rng_n:
            for t in range(s + 1, n):
                if pi[s] > pi[t]:
                    chi = chi * factor.entry(sigma[s], sigma[t])
        total = total + chi
    return total


@dataclass(frozen=True)
class GramMatrix:
    """Scalar products of all degree-n occupation monomials."""

    degree: int
    basis: tuple
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_hermitian(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i].conj()
            for i in range(self.size)
            for j in range(self.size)
        )

    def is_rational(self) -> bool:
        return all(e.is_rational() for row in self.entries for e in row)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": [list(occ) for occ in self.basis],
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def gram_matrix(degree: int, factor: CommutationFactor, cap: int = 1) -> GramMatrix:
    """Gram matrix of the degree-n occupation basis under ``inner``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    basis = basis_monomials(factor, cap, degree=degree)
    vectors = [FockVector.monomial(factor, occ) for occ in basis]
    entries = [
        [inner(u, v) for v in vectors]
        for u in vectors
    ]
    gm = GramMatrix(degree=degree, basis=tuple(basis), entries=tuple(map(tuple, entries)))
    if not gm.is_hermitian():
        raise AssertionError("gram matrix construction lost hermiticity")
    return gm


@dataclass(frozen=True)
class PositivityCertificate:
    verdict: str  # positive_definite | positive_semidefinite | indefinite
    numeric: bool
    pivots: tuple | None = None
    eigenvalues: tuple | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "numeric": self.numeric}
        if self.pivots is not None:
            out["pivots"] = [str(p) for p in self.pivots]
        if self.eigenvalues is not None:
            out["eigenvalues"] = [str(e) for e in self.eigenvalues]
        return out


def check_positive(gm: GramMatrix, precision: int = 128) -> PositivityCertificate:
    """Decide definiteness: exact pivoted elimination on rational matrices,
    otherwise a numeric hermitian eigenvalue bound at the given precision."""
    if not gm.is_hermitian():
        raise ValueError("matrix is not hermitian")
    if gm.size == 0:
        return PositivityCertificate("positive_definite", numeric=False, pivots=())
    if gm.is_rational():
        a = [[gm.entries[i][j].as_fraction() for j in range(gm.size)] for i in range(gm.size)]
        return _ldl_verdict(a)
    tol = mpmath.mpf(10) ** -20
    with mpmath.workprec(precision):
        mat = mpmath.matrix(gm.size)
        for i in range(gm.size):
            for j in range(gm.size):
                mat[i, j] = gm.entries[i][j].to_complex(precision)
        eigs = mpmath.eighe(mat, eigvals_only=True)
        eig_list = tuple(mpmath.nstr(e, 30) for e in eigs)
        if all(e > tol for e in eigs):
            verdict = "positive_definite"
        elif all(e > -tol for e in eigs):
            verdict = "positive_semidefinite"
        else:
            verdict = "indefinite"
    return PositivityCertificate(verdict, numeric=True, eigenvalues=eig_list)


def _ldl_verdict(a: list[list[Fraction]]) -> PositivityCertificate:
    # symmetric elimination without row exchanges; a zero pivot is legal
    # only when its whole row and column already vanished
    n = len(a)
    pivots: list[Fraction] = []
    semidefinite = False
    for k in range(n):
        d = a[k][k]
        pivots.append(d)
        if d < 0:
            return PositivityCertificate("indefinite", numeric=False, pivots=tuple(pivots))
        if d == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return PositivityCertificate(
                    "indefinite", numeric=False, pivots=tuple(pivots)
                )
            semidefinite = True
            continue
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            ratio = a[i][k] / d
            for j in range(k + 1, n):
                a[i][j] -= ratio * a[k][j]
            a[i][k] = Fraction(0)
    verdict = "positive_semidefinite" if semidefinite else "positive_definite"
    return PositivityCertificate(verdict, numeric=False, pivots=tuple(pivots))
