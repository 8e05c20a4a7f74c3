"""Dense complex linear algebra and bipartite-state primitives.

Conventions used across the package:

* everything is complex128; exactness statements become tolerance checks
* bipartite basis order is row-major, index = a * dim_b + b, which makes
  ``vec`` and ``kron`` mutually consistent:  vec(X D Y^T) = (X kron Y) vec(D)
* eigen- and singular vectors are sorted by descending value and phase-fixed
  (largest-magnitude component made real positive) so repeated runs produce
  identical output
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDimensionError,
    InvalidShapeError,
    InvalidStateError,
    NonHermitianError,
)

HERMITIAN_TOL = 1e-10
STATE_TOL = 1e-9
SCHMIDT_RANK_TOL = 1e-9
NULL_SPACE_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise InvalidShapeError(f"expected a matrix, got ndim={m.ndim}")
    return m


def as_vector(a) -> np.ndarray:
    """Coerce to a 1-d complex128 array."""
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim != 1:
        raise InvalidShapeError(f"expected a vector, got ndim={v.ndim}")
    return v


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    """Max-entry check against the conjugate transpose."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        return False
    return float(np.abs(m - m.conj().T).max(initial=0.0)) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product in row-major bipartite order."""
    return np.kron(as_matrix(a), as_matrix(b))


def vec(d) -> np.ndarray:
    """Row-major vectorization: vec(E_ab) = e_a kron e_b.

    Satisfies (X kron Y) vec(D) = vec(X D Y^T) and
    <(X kron Y) vec(I/sqrt(d)), vec(I/sqrt(d))> = tr(X Y^T) / d.
    """
    return as_matrix(d).reshape(-1)


def unvec(psi, dims: tuple[int, int]) -> np.ndarray:
    """Inverse of vec for a bipartite vector with the given factor dims."""
    v = as_vector(psi)
    da, db = dims
    if da <= 0 or db <= 0 or v.size != da * db:
        raise InvalidShapeError(f"cannot reshape length {v.size} to {dims}")
    return v.reshape(da, db)


def maximally_entangled(d: int) -> np.ndarray:
    """Unit vector (1/sqrt(d)) * sum_i e_i kron e_i in C^d tensor C^d."""
    if d < 1:
        raise InvalidDimensionError(f"dimension must be positive, got {d}")
    return vec(np.eye(d, dtype=np.complex128)) / np.sqrt(d)


def fix_phases(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive.

    Ties go to the earliest index; zero columns are left alone.  This is the
    package-wide determinism convention for eigen/singular vectors.
    """
    out = np.array(v, dtype=np.complex128, copy=True)
    if out.ndim == 1:
        out = out[:, None]
        squeeze = True
    else:
        squeeze = False
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = int(np.argmax(np.abs(col)))
        mag = abs(col[idx])
        if mag > 0:
            out[:, j] = col * (col[idx].conjugate() / mag)
    return out[:, 0] if squeeze else out


@dataclass(frozen=True)
class SchmidtDecomposition:
    """psi = sum_l coefficients[l] * left[:, l] kron right[:, l].

    Coefficients are real, nonincreasing and strictly positive; left and
    right columns are orthonormal.  ``right`` holds the conjugated right
    singular vectors so the reconstruction identity is exact.
    """

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray
    dims: tuple[int, int]

    @property
    def rank(self) -> int:
        return int(self.coefficients.size)

    def reconstruct(self) -> np.ndarray:
        return np.einsum(
            "l,al,bl->ab", self.coefficients, self.left, self.right
        ).reshape(-1)


def schmidt(psi, dims: tuple[int, int], rank_tol: float = SCHMIDT_RANK_TOL) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite vector.

    rank_tol is relative: singular values <= rank_tol * sigma_max are
    discarded.  Raises InvalidStateError on a (near-)zero vector.
    """
    m = unvec(psi, dims)
    nrm = float(np.linalg.norm(m))
    if nrm <= 1e-300:
        raise InvalidStateError("cannot decompose the zero vector")
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    r = int(np.count_nonzero(s > rank_tol * s[0]))
    u, s, vh = u[:, :r], s[:r], vh[:r, :]
    # joint phase freedom: fix the left vector, push the phase to the right
    for l in range(r):
        idx = int(np.argmax(np.abs(u[:, l])))
        mag = abs(u[idx, l])
        if mag > 0:
            ph = u[idx, l] / mag
            u[:, l] *= ph.conjugate()
            vh[l, :] *= ph
    return SchmidtDecomposition(coefficients=s, left=u, right=vh.T.copy(), dims=(dims[0], dims[1]))


def partial_trace(rho, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Trace out one factor of a density-like matrix on C^da tensor C^db."""
    m = as_matrix(rho)
    da, db = dims
    if da <= 0 or db <= 0 or m.shape != (da * db, da * db):
        raise InvalidShapeError(f"matrix of shape {m.shape} does not match dims {dims}")
    r = m.reshape(da, db, da, db)
    side = keep.upper()
    if side == "A":
        return np.einsum("abcb->ac", r)
    if side == "B":
        return np.einsum("abad->bd", r)
    raise InvalidShapeError(f"keep must be 'A' or 'B', got {keep!r}")


def density_of(psi) -> np.ndarray:
    """Rank-one density matrix psi psi^*."""
    v = as_vector(psi)
    return np.outer(v, v.conj())


def reduced_densities(psi, dims: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Both reduced density matrices of a bipartite vector, without forming psi psi^*."""
    m = unvec(psi, dims)
    rho_a = m @ m.conj().T
    rho_b = m.T @ m.conj()
    return rho_a, rho_b


def seminorm(x, rho) -> float:
    """State-weighted seminorm  sqrt(tr(X^* X rho))  for rho PSD with unit trace.

    Vanishes exactly on the kernel of rho; tiny negative traces from roundoff
    are clipped to zero.
    """
    xm = as_matrix(x)
    rm = as_matrix(rho)
    if xm.shape != rm.shape or xm.shape[0] != xm.shape[1]:
        raise InvalidShapeError(f"operator {xm.shape} and weight {rm.shape} must be square and equal")
    val = np.trace(xm.conj().T @ xm @ rm).real
    return float(np.sqrt(max(val, 0.0)))


def state_seminorm(x, psi, dims: tuple[int, int], side: str = "A") -> float:
    """Seminorm of a one-sided operator against a bipartite state.

    side='A' gives ||(X kron I) psi||, side='B' gives ||(I kron X) psi||;
    both equal the seminorm weighted by the matching reduced density.
    """
    m = unvec(psi, dims)
    xm = as_matrix(x)
    if side.upper() == "A":
        return float(np.linalg.norm(xm @ m))
    return float(np.linalg.norm(m @ xm.T))


def null_space(a, tol: float = NULL_SPACE_TOL) -> np.ndarray:
    """Orthonormal basis of the null space, as columns.

    The rank cut is relative: singular values > tol * sigma_max count toward
    the rank.  The returned columns are phase-fixed; the basis may be empty
    (shape (n, 0)).
    """
    m = as_matrix(a)
    if m.size == 0:
        raise InvalidShapeError("cannot take the null space of an empty matrix")
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > tol * smax)) if smax > 0 else 0
    basis = vh[rank:, :].conj().T
    return fix_phases(basis) if basis.shape[1] else basis


def hermitian_eig(a, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and phase-fixed eigenvectors of a Hermitian matrix.

    Raises NonHermitianError when the max-entry deviation from the conjugate
    transpose exceeds tol.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise InvalidShapeError(f"expected a square matrix, got {m.shape}")
    if float(np.abs(m - m.conj().T).max(initial=0.0)) > tol:
        raise NonHermitianError("matrix is not Hermitian at tolerance")
    w, v = np.linalg.eigh((m + m.conj().T) / 2.0)
    order = np.arange(w.size - 1, -1, -1)
    return w[order].real.copy(), fix_phases(v[:, order])


def nearest_isometry(t) -> np.ndarray:
    """Polar projection of a tall (or square) matrix onto the isometries.

    Returns U @ Vh from the thin SVD; for square full-rank input this is the
    closest unitary in Frobenius norm.
    """
    m = as_matrix(t)
    if m.shape[0] < m.shape[1]:
        raise InvalidShapeError(f"no isometry with shape {m.shape}: more columns than rows")
    u, _, vh = np.linalg.svd(m, full_matrices=False)
    return u @ vh


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """GUE-style random Hermitian matrix with O(1) entries."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2.0


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a complex Gaussian matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector drawn from the complex Gaussian measure."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
