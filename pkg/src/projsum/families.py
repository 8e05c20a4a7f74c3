"""Finite families of projections summing to a scalar multiple of identity.

A family is n Hermitian idempotents P_1..P_n in M_d with
sum_v P_v = x * I_d.  For n = 3 the only admissible scalar is 3/2; for
n >= 4 the admissible scalars form the increasing rational sequence

    x_0 = 0,     x_{l+1} = 1 + 1 / (n - 1 - x_l),

kept exact here with Fraction arithmetic.  Two concrete constructions are
provided: rank-one families built from the vertices of a regular simplex
(one per n >= 3), and for n = 4 an inductive ladder that climbs the scalar
sequence, raising the rank by one per step.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateInputError,
    InvalidFamilyError,
    UnsupportedQuestionCountError,
    UnsupportedScalarError,
)
from .linalg import as_matrix, fix_phases, null_space

Rational = Fraction

PROJECTION_TOL = 1e-9


@dataclass(frozen=True)
class ProjectionFamily:
    """n projections in M_d summing to x * I_d.

    d is the ambient matrix dimension; for the canonical constructions it
    equals the denominator of x in lowest terms.
    """

    n: int
    x: Fraction
    d: int
    projections: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.projections) != self.n:
            raise InvalidFamilyError(
                f"expected {self.n} projections, got {len(self.projections)}"
            )
        for p in self.projections:
            if p.shape != (self.d, self.d):
                raise InvalidFamilyError(
                    f"projection of shape {p.shape} does not match d={self.d}"
                )

    @property
    def x_float(self) -> float:
        return float(self.x)


@dataclass(frozen=True)
class FamilyReport:
    """Residuals and derived data from validate_family."""

    n: int
    d: int
    x: Fraction
    hermiticity: np.ndarray      # per projection, Frobenius
    idempotency: np.ndarray      # per projection, Frobenius
    sum_residual: float          # ||sum P_v - x I||_F
    ranks: tuple[int, ...]       # eigenvalue counts above 1/2
    expected_rank: int | None    # x*d/n when integral, else None
    trace_table: np.ndarray      # normalized tr(P_v P_w) / d
    trace_deviation: float       # max deviation from the two predicted values
    tol: float

    @property
    def passed(self) -> bool:
        ranks_ok = self.expected_rank is None or all(
            r == self.expected_rank for r in self.ranks
        )
        return bool(
            self.hermiticity.max(initial=0.0) <= self.tol
            and self.idempotency.max(initial=0.0) <= self.tol
            and self.sum_residual <= self.tol
            and self.trace_deviation <= self.tol
            and ranks_ok
        )


def lambda_sequence(n: int, count: int = 1) -> list[Fraction]:
    """First ``count`` admissible scalars for n questions, exactly.

    For n = 3 the single admissible value 3/2 is returned regardless of
    count.  For n >= 4 the sequence starts at 0 and increases strictly.
    """
    if n < 3:
        raise UnsupportedQuestionCountError(f"need n >= 3, got {n}")
    if count < 1:
        raise UnsupportedScalarError(f"count must be positive, got {count}")
    if n == 3:
        return [Fraction(3, 2)]
    seq = [Fraction(0)]
    while len(seq) < count:
        seq.append(1 + Fraction(1, n - 1 - seq[-1]))
    return seq


def scalar_is_admissible(n: int, x: Fraction) -> bool:
    """Exact membership test for x in the admissible scalar set of n."""
    if n < 3:
        raise UnsupportedQuestionCountError(f"need n >= 3, got {n}")
    x = Fraction(x)
    if n == 3:
        return x == Fraction(3, 2)
    if x < 0:
        return False
    # the sequence increases toward the smaller root of t^2 - n t + n,
    # so anything at or beyond that root is out of reach
    if x * x - n * x + n <= 0 or 2 * x >= n:
        return False
    current = Fraction(0)
    while current < x:
        current = 1 + Fraction(1, n - 1 - current)
    return current == x


def simplex_vertices(n: int) -> np.ndarray:
    """Unit vertices of a regular simplex in R^(n-1), one per row.

    Built recursively: the first vertex is e_1 and the remaining ones share
    first coordinate -1/(n-1), scaled copies of an (n-1)-vertex simplex in
    the orthogonal complement.  Pairwise inner products are +-1/(n-1).
    """
    if n < 2:
        raise UnsupportedQuestionCountError(f"need n >= 2, got {n}")
    if n == 2:
        return np.array([[1.0], [-1.0]])
    sub = simplex_vertices(n - 1)
    c = np.sqrt(1.0 - 1.0 / (n - 1) ** 2)
    out = np.zeros((n, n - 1))
    out[0, 0] = 1.0
    out[1:, 0] = -1.0 / (n - 1)
    out[1:, 1:] = c * sub
    return out


def simplex_family(n: int) -> ProjectionFamily:
    """n rank-one projections in M_(n-1) summing to (n/(n-1)) * I."""
    if n < 3:
        raise UnsupportedQuestionCountError(f"need n >= 3, got {n}")
    verts = simplex_vertices(n)
    projs = tuple(
        np.outer(verts[v], verts[v]).astype(np.complex128) for v in range(n)
    )
    return ProjectionFamily(n=n, x=Fraction(n, n - 1), d=n - 1, projections=projs)


def four_family_step(fam: ProjectionFamily) -> ProjectionFamily:
    """One rung of the n = 4 ladder: scalar 4k/(2k+1) -> 4(k+1)/(2k+3).

    Given rank-k projections in M_(2k+1), stack orthonormal range bases of
    the complements Q_v = I - P_v into a wide matrix, take an orthonormal
    basis of its null space, slice it back into four blocks R_v, and rescale
    R_v R_v^* to the new projections in M_(2k+3).
    """
    if fam.n != 4:
        raise InvalidFamilyError(f"the ladder is defined for n = 4, got n = {fam.n}")
    k2 = fam.d - 1
    if k2 <= 0 or k2 % 2 != 0:
        raise InvalidFamilyError(f"expected odd ambient dimension > 1, got d = {fam.d}")
    k = k2 // 2
    if fam.x != Fraction(4 * k, 2 * k + 1):
        raise InvalidFamilyError(
            f"scalar {fam.x} does not sit on the ladder for d = {fam.d}"
        )
    report = validate_family(fam, tol=1e-8)
    if not report.passed:
        raise InvalidFamilyError("input family fails validation at 1e-8")

    d_in = fam.d
    eye = np.eye(d_in, dtype=np.complex128)
    blocks = []
    for p in fam.projections:
        q = eye - p
        u, s, _ = np.linalg.svd(q)
        cols = int(np.count_nonzero(s > 0.5))
        if cols != k + 1:
            raise DegenerateInputError(
                f"complement rank {cols}, expected {k + 1}"
            )
        blocks.append(fix_phases(u[:, :cols]))
    gamma1 = np.hstack(blocks)                      # (2k+1) x 4(k+1)
    kernel = null_space(gamma1, tol=1e-9)           # columns
    d_out = 2 * k + 3
    if kernel.shape[1] != d_out:
        raise DegenerateInputError(
            f"null space dimension {kernel.shape[1]}, expected {d_out}"
        )
    gamma2 = kernel.T                               # rows are the basis, transposed
    x_new = Fraction(4 * (k + 1), 2 * k + 3)
    # each block satisfies R^* R = ((2k+3)/(4k+4)) I, so this rescale makes
    # R R^* idempotent and the four blocks sum to x_new * I
    scale = 4 * (k + 1) / (2 * k + 3)
    projs = []
    for v in range(4):
        r = gamma2[:, v * (k + 1) : (v + 1) * (k + 1)]
        projs.append(scale * (r @ r.conj().T))
    out = ProjectionFamily(n=4, x=x_new, d=d_out, projections=tuple(projs))
    check = validate_family(out, tol=1e-8)
    if not check.passed:
        raise DegenerateInputError("constructed family fails validation at 1e-8")
    return out


def four_family(k: int) -> ProjectionFamily:
    """Rank-k family of four projections in M_(2k+1) with scalar 4k/(2k+1).

    The base case k = 1 is the tetrahedron family: rank-one projections onto
    the four unit vectors

        (1, 0, 0), (-1/3, 2*sqrt(2)/3, 0),
        (-1/3, -sqrt(2)/3, +-sqrt(2/3)),

    which the generic simplex construction reproduces verbatim.  Higher k
    iterates four_family_step.
    """
    if k < 1:
        raise UnsupportedScalarError(f"need k >= 1, got {k}")
    fam = simplex_family(4)
    for _ in range(k - 1):
        fam = four_family_step(fam)
    return fam


def transpose_family(fam: ProjectionFamily) -> ProjectionFamily:
    """Entrywise transpose of every projection; same n, x, d."""
    return ProjectionFamily(
        n=fam.n,
        x=fam.x,
        d=fam.d,
        projections=tuple(p.T.copy() for p in fam.projections),
    )


def validate_family(fam: ProjectionFamily, tol: float = PROJECTION_TOL) -> FamilyReport:
    """Measure every structural invariant; never raises, the report decides.

    Checks hermiticity and idempotency per projection, the scalar sum
    identity, ranks against x*d/n, and the pairwise normalized trace table
    against its two predicted values x/n and x(x-1)/(n(n-1)).
    """
    n, d, x = fam.n, fam.d, fam.x
    projs = [as_matrix(p) for p in fam.projections]
    herm = np.array([float(np.linalg.norm(p - p.conj().T)) for p in projs])
    idem = np.array([float(np.linalg.norm(p @ p - p)) for p in projs])
    total = sum(projs)
    sum_residual = float(np.linalg.norm(total - float(x) * np.eye(d)))
    ranks = tuple(
        int(np.count_nonzero(np.linalg.eigvalsh((p + p.conj().T) / 2) > 0.5))
        for p in projs
    )
    xd = x * d
    expected_rank = None
    if xd.denominator == 1 and xd.numerator % n == 0:
        expected_rank = int(xd.numerator // n)
    table = np.empty((n, n))
    for v in range(n):
        for w in range(n):
            table[v, w] = np.trace(projs[v] @ projs[w]).real / d
    diag_target = float(x) / n
    off_target = float(x * (x - 1)) / (n * (n - 1))
    dev = 0.0
    for v in range(n):
        for w in range(n):
            target = diag_target if v == w else off_target
            dev = max(dev, abs(table[v, w] - target))
    return FamilyReport(
        n=n,
        d=d,
        x=x,
        hermiticity=herm,
        idempotency=idem,
        sum_residual=sum_residual,
        ranks=ranks,
        expected_rank=expected_rank,
        trace_table=table,
        trace_deviation=float(dev),
        tol=tol,
    )
