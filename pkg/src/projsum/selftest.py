"""Certifying how close a strategy is to the canonical model of a family.

The pipeline: residual diagnostics quantify how nearly the measured
operators satisfy the defining relations of a projection family in the
state-weighted seminorm; an isometry is fitted that compresses each party
onto the reference family; the compressed state is projected onto the top
eigenspace of the family's correlation operator N = sum_v P_v kron P_v^T to
read off the junk state; and the final certificate reports the worst
residual of the local-dilation conditions, evaluated directly.

All certified quantities are measured, never assumed: every bound stored in
a certificate is recomputed from the returned isometries and junk state.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    BudgetExceededError,
    FitDegenerateError,
    IntertwinerError,
    InvalidShapeError,
    InvalidStateError,
    InvalidStrategyError,
    InvalidReferenceError,
    JunkExtractionError,
    NotARepresentationError,
    SpectralDegeneracyError,
    UnsupportedOutcomeCountError,
)
from .families import ProjectionFamily, transpose_family
from .linalg import (
    as_matrix,
    as_vector,
    hermitian_eig,
    maximally_entangled,
    nearest_isometry,
    null_space,
    reduced_densities,
    seminorm,
    unvec,
)
from .strategies import (
    Correlation,
    Strategy,
    canonical_strategy,
    correlation_distance,
    ideal_correlation,
    induced_correlation,
    synchronicity_defect,
)

ALPHA_MIN = 0.1
PAIR_BUDGET = 1_000_000


# ---------------------------------------------------------------------------
# residual diagnostics


@dataclass(frozen=True)
class SyncReport:
    """Five agreement residuals per (question, outcome) with their budgets.

    values[v, i] holds, in order:
      0  ||(E kron I)psi - (I kron F)psi||
      1  ||(E kron I)psi - (E kron F)psi||
      2  ||(I kron F)psi - (E kron F)psi||
      3  ||(E - E^2) kron I psi||
      4  ||I kron (F - F^2) psi||
    budgets are (sqrt(delta),)*3 + (2 sqrt(delta),)*2 where delta is the
    1-norm distance to the synchronous reference.
    """

    values: np.ndarray
    budgets: np.ndarray
    delta: float

    @property
    def max_value(self) -> float:
        return float(self.values.max(initial=0.0))

    @property
    def within_budget(self) -> bool:
        return bool(np.all(self.values <= self.budgets[None, None, :]))


def sync_residuals(strategy: Strategy, reference: Correlation) -> SyncReport:
    """Agreement residuals of a strategy against a synchronous reference."""
    strategy.validate()
    if synchronicity_defect(reference) > 1e-10:
        raise InvalidReferenceError("reference correlation is not synchronous")
    n, k = strategy.n_questions, strategy.n_outcomes
    if reference.table.shape != (n, n, k, k):
        raise InvalidReferenceError(
            f"reference shape {reference.table.shape} does not match the strategy"
        )
    delta = correlation_distance(induced_correlation(strategy), reference)
    m = unvec(strategy.state, (strategy.dim_a, strategy.dim_b))
    values = np.zeros((n, k, 5))
    for v in range(n):
        for i in range(k):
            e = as_matrix(strategy.alice[v][i])
            f = as_matrix(strategy.bob[v][i])
            em = e @ m
            mft = m @ f.T
            emft = e @ mft
            values[v, i, 0] = np.linalg.norm(em - mft)
            values[v, i, 1] = np.linalg.norm(em - emft)
            values[v, i, 2] = np.linalg.norm(mft - emft)
            values[v, i, 3] = np.linalg.norm((e @ e - e) @ m)
            values[v, i, 4] = np.linalg.norm(m @ (f @ f - f).T)
    root = np.sqrt(delta)
    budgets = np.array([root, root, root, 2 * root, 2 * root])
    return SyncReport(values=values, budgets=budgets, delta=delta)


def tracial_residual(strategy: Strategy, degree: int = 2, party: str = "alice") -> float:
    """Worst commutator defect |tr((W1 W2 - W2 W1) rho)| over short words.

    Words are products of the party's first-outcome operators with length
    1..degree; rho is that party's reduced state.  Raises
    BudgetExceededError when the pair count would exceed one million.
    """
    strategy.validate()
    n = strategy.n_questions
    count = sum(n**l for l in range(1, degree + 1))
    if count * count > PAIR_BUDGET:
        raise BudgetExceededError(
            f"{count * count} word pairs exceed the {PAIR_BUDGET} budget"
        )
    rho_a, rho_b = reduced_densities(strategy.state, (strategy.dim_a, strategy.dim_b))
    if party == "alice":
        ops = [as_matrix(povm[0]) for povm in strategy.alice]
        rho = rho_a
    elif party == "bob":
        ops = [as_matrix(povm[0]) for povm in strategy.bob]
        rho = rho_b
    else:
        raise InvalidStrategyError(f"party must be 'alice' or 'bob', got {party!r}")
    words = list(ops)
    frontier = list(ops)
    for _ in range(degree - 1):
        frontier = [w @ op for w in frontier for op in ops]
        words.extend(frontier)
    stacked = np.stack(words)
    weighted = np.stack([w @ rho for w in words])
    gram = np.einsum("iab,jba->ij", stacked, weighted)
    return float(np.abs(gram - gram.T).max())


@dataclass(frozen=True)
class ResidualReport:
    """How nearly a strategy's operators satisfy the family relations.

    rep_residual_a/b aggregate the seminorm defects of idempotency and of
    the scalar sum rule; they are guaranteed to stay below c_bound
    (= sqrt(n^2 + (1+2x) sqrt(delta)) * delta^(1/4)) whenever the induced
    correlation is delta-close to the synchronous target.
    """

    n: int
    x: Fraction
    delta: float
    c_bound: float
    idempotency_a: np.ndarray
    sum_residual_a: float
    idempotency_b: np.ndarray
    sum_residual_b: float
    sync: SyncReport
    tracial_a: float
    tracial_b: float
    monomial_degree: int

    @property
    def rep_residual_a(self) -> float:
        return max(float(self.idempotency_a.max(initial=0.0)), self.sum_residual_a)

    @property
    def rep_residual_b(self) -> float:
        return max(float(self.idempotency_b.max(initial=0.0)), self.sum_residual_b)

    @property
    def sync_max(self) -> float:
        return self.sync.max_value

    @property
    def tracial_residual(self) -> float:
        return max(self.tracial_a, self.tracial_b)

    @property
    def tracial_budget(self) -> float:
        # commutator words have combined length at most 2 * monomial_degree
        return 2.0 * (2 * self.monomial_degree) * np.sqrt(self.delta)

    @property
    def lemma35_pass(self) -> bool:
        return self.sync.within_budget

    @property
    def lemma63_pass(self) -> bool:
        return max(self.rep_residual_a, self.rep_residual_b) <= self.c_bound

    @property
    def tracial_pass(self) -> bool:
        return self.tracial_residual <= self.tracial_budget


def approx_rep_residuals(
    strategy: Strategy, x: Fraction | float, monomial_degree: int = 2
) -> ResidualReport:
    """Full residual diagnostics of a two-outcome strategy against (n, x)."""
    strategy.validate()
    if strategy.n_outcomes != 2:
        raise UnsupportedOutcomeCountError("residual diagnostics need two outcomes")
    x = Fraction(x)
    n = strategy.n_questions
    reference = ideal_correlation(n, x)
    delta = correlation_distance(induced_correlation(strategy), reference)
    c_bound = float(np.sqrt(n**2 + (1 + 2 * float(x)) * np.sqrt(delta)) * delta**0.25)
    rho_a, rho_b = reduced_densities(strategy.state, (strategy.dim_a, strategy.dim_b))
    xf = float(x)

    def side_residuals(povms, rho, dim):
        ops = [as_matrix(povm[0]) for povm in povms]
        idem = np.array([seminorm(op @ op - op, rho) for op in ops])
        total = sum(ops) - xf * np.eye(dim)
        return idem, seminorm(total, rho)

    idem_a, sum_a = side_residuals(strategy.alice, rho_a, strategy.dim_a)
    idem_b, sum_b = side_residuals(strategy.bob, rho_b, strategy.dim_b)
    sync = sync_residuals(strategy, reference)
    tr_a = tracial_residual(strategy, degree=monomial_degree, party="alice")
    tr_b = tracial_residual(strategy, degree=monomial_degree, party="bob")
    return ResidualReport(
        n=n,
        x=x,
        delta=delta,
        c_bound=c_bound,
        idempotency_a=idem_a,
        sum_residual_a=sum_a,
        idempotency_b=idem_b,
        sum_residual_b=sum_b,
        sync=sync,
        tracial_a=tr_a,
        tracial_b=tr_b,
        monomial_degree=monomial_degree,
    )


# ---------------------------------------------------------------------------
# the correlation operator and spectral helpers


@dataclass(frozen=True)
class CorrelationOperator:
    """N = sum_v P_v kron P_v^T with its spectral data.

    For a valid family the top eigenvalue is x with a one-dimensional
    eigenspace spanned by the maximally entangled state; ``gap`` is the
    distance from the top eigenvalue to the rest of the spectrum.
    """

    matrix: np.ndarray
    spectrum: np.ndarray
    lambda_max: float
    gap: float
    top_vector: np.ndarray
    entangled_overlap: float


def n_operator(fam: ProjectionFamily, degeneracy_tol: float = 1e-8) -> CorrelationOperator:
    """Assemble and diagonalize the family's correlation operator."""
    mat = sum(np.kron(p, p.T) for p in fam.projections)
    w, v = hermitian_eig(mat)
    scale = max(1.0, abs(float(w[0])))
    if w.size < 2 or w[1] > w[0] - degeneracy_tol * scale:
        raise SpectralDegeneracyError(
            "top eigenspace is degenerate at tolerance"
        )
    top = v[:, 0]
    overlap = abs(np.vdot(maximally_entangled(fam.d), top))
    return CorrelationOperator(
        matrix=mat,
        spectrum=w,
        lambda_max=float(w[0]),
        gap=float(w[0] - w[1]),
        top_vector=top,
        entangled_overlap=float(overlap),
    )


def eigvec_overlap_bound(a, xi, cluster_tol: float = 1e-8) -> tuple[float, float]:
    """Measured top-eigenspace weight of xi and its spectral lower bound.

    Returns (||Q1 xi||^2, 1 - (l1 - <A xi, xi>) / (l1 - l2)) where Q1
    projects onto the top eigenvalue cluster and l2 is the next distinct
    eigenvalue.  Requires unit xi and at least two distinct eigenvalues.
    """
    w, v = hermitian_eig(a)
    xi = as_vector(xi)
    if abs(np.linalg.norm(xi) - 1.0) > 1e-9:
        raise InvalidStateError("xi must be a unit vector")
    if xi.size != w.size:
        raise InvalidShapeError("xi length does not match the matrix")
    scale = max(1.0, float(np.abs(w).max()))
    top = w >= w[0] - cluster_tol * scale
    if bool(top.all()):
        raise SpectralDegeneracyError("all eigenvalues coincide at tolerance")
    l1 = float(w[0])
    l2 = float(w[~top][0])
    q1 = v[:, top]
    lhs = float(np.linalg.norm(q1.conj().T @ xi) ** 2)
    expectation = float(np.real(np.vdot(xi, as_matrix(a) @ xi)))
    rhs = 1.0 - (l1 - expectation) / (l1 - l2)
    return lhs, rhs


# ---------------------------------------------------------------------------
# intertwiners and isometry fitting


def find_intertwiner(fam: ProjectionFamily, candidate, tol: float = 1e-8) -> np.ndarray:
    """Unitary U with U R_v U^* = P_v kron I_s for an exact representation.

    ``candidate`` is a sequence of n projections R_v in M_r where d | r and
    s = r/d.  The linear system T P_v = R_v T is solved for all v at once;
    its solution space must have dimension exactly s, and the normalized
    basis elements are stacked into U.  Verification failures raise
    IntertwinerError, a wrong solution-space dimension raises
    NotARepresentationError.
    """
    d, n = fam.d, fam.n
    mats = [as_matrix(c) for c in candidate]
    if len(mats) != n:
        raise NotARepresentationError(f"expected {n} candidate operators, got {len(mats)}")
    r = mats[0].shape[0]
    for m in mats:
        if m.shape != (r, r):
            raise InvalidShapeError("candidate operators must share a square shape")
    if r % d != 0:
        raise NotARepresentationError(f"family dimension {d} does not divide {r}")
    s = r // d
    eye_d = np.eye(d)
    eye_r = np.eye(r)
    rows = [
        np.kron(eye_d, rv) - np.kron(pv.T, eye_r)
        for pv, rv in zip(fam.projections, mats)
    ]
    system = np.vstack(rows)
    # loose solve, strict verify: near-solutions of a perturbed candidate are
    # admitted here and rejected by the residual check below
    kernel = null_space(system, tol=1e-6)
    if kernel.shape[1] != s:
        raise NotARepresentationError(
            f"intertwiner space has dimension {kernel.shape[1]}, expected {s}"
        )
    blocks = [kernel[:, i].reshape((r, d), order="F") * np.sqrt(d) for i in range(s)]
    for i, ti in enumerate(blocks):
        for j, tj in enumerate(blocks):
            target = np.eye(d) if i == j else np.zeros((d, d))
            if np.linalg.norm(ti.conj().T @ tj - target) > 1e-6:
                raise IntertwinerError(
                    "solution basis is not orthogonal in the representation sense"
                )
    w = np.zeros((r, d * s), dtype=np.complex128)
    for i, ti in enumerate(blocks):
        w[:, i::s] = ti
    u = nearest_isometry(w).conj().T
    worst = max(
        float(np.linalg.norm(u @ rv @ u.conj().T - np.kron(pv, np.eye(s))))
        for pv, rv in zip(fam.projections, mats)
    )
    if worst > tol:
        raise IntertwinerError(f"conjugation residual {worst:.3e} exceeds {tol:.1e}")
    return u


@dataclass(frozen=True)
class IsometryFit:
    """A fitted compression isometry with its measured residuals.

    ``isometry`` maps C^r into C^d kron C^s; residuals[v] is the weighted
    seminorm of E_v - V^* (P_v kron I_s) V.
    """

    isometry: np.ndarray
    s: int
    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max(initial=0.0))


def fit_isometry(ops, fam: ProjectionFamily, rho) -> IsometryFit:
    """Least-squares isometry aligning measured operators with a family.

    Minimizes sum_v ||(P_v kron I_s) T - T E_v||^2 weighted by rho over
    matrices T (the quadratic form's lowest eigenvectors), then projects the
    best-conditioned solution onto the isometries by polar decomposition.
    The ancilla dimension s is r/d rounded, raised if needed so that an
    isometry into C^(d s) exists.
    """
    mats = [as_matrix(op) for op in ops]
    if len(mats) != fam.n:
        raise InvalidShapeError(f"expected {fam.n} operators, got {len(mats)}")
    r = mats[0].shape[0]
    for m in mats:
        if m.shape != (r, r):
            raise InvalidShapeError("operators must share a square shape")
    rho = as_matrix(rho)
    if rho.shape != (r, r):
        raise InvalidShapeError(f"weight shape {rho.shape} does not match operators")
    d = fam.d
    s = max(1, round(r / d))
    while d * s < r:
        s += 1
    ds = d * s
    # The form is linear in rho, so adding a uniform ridge means: minimize
    # the rho-weighted residual, breaking ties in its null directions by the
    # unweighted residual.  Without it, a rank-deficient rho leaves the
    # eigensolver free to mix kernel junk into the solution block (the
    # mixing error scales like machine epsilon over the eigengap).
    lam = 1e-6
    trace = float(np.trace(rho).real)
    rho_reg = (rho + lam * (trace / r) * np.eye(r)) / (1.0 + lam)

    eye_s = np.eye(s)
    eye_ds = np.eye(ds)
    quad = np.zeros((r * ds, r * ds), dtype=np.complex128)
    for pv, ev in zip(fam.projections, mats):
        av = np.kron(pv, eye_s)
        er = ev @ rho_reg
        quad += np.kron(rho_reg.T, av)
        quad -= np.kron(er.T, av)
        quad -= np.kron(er.conj(), av)          # (rho E)^T = conj(E rho)
        quad += np.kron((er @ ev).T, eye_ds)    # (E rho E)^T kron I
    quad = (quad + quad.conj().T) / 2.0
    w, vecs = np.linalg.eigh(quad)
    span = [vecs[:, i].reshape((ds, r), order="F") for i in range(s * s)]

    if len(span) == 1:
        t = span[0]
    else:
        # any full-rank combination of near-solutions works; draw fixed,
        # reproducible weights until the polar factor is well conditioned
        rng = np.random.default_rng(7)
        t = None
        best, best_cond = None, -1.0
        for _ in range(32):
            coeff = rng.normal(size=len(span)) + 1j * rng.normal(size=len(span))
            cand = sum(c * m for c, m in zip(coeff, span))
            sv = np.linalg.svd(cand, compute_uv=False)
            cond = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0
            if cond > best_cond:
                best, best_cond = cand, cond
            if cond > 1e-6:
                t = cand
                break
        if t is None:
            if best_cond <= 1e-12:
                raise FitDegenerateError("no well-conditioned solution combination found")
            t = best
    sv = np.linalg.svd(t, compute_uv=False)
    if sv[0] <= 0 or sv[-1] <= 1e-8 * sv[0]:
        raise FitDegenerateError("fitted map has a rank-deficient polar factor")
    v_iso = nearest_isometry(t)
    residuals = np.array(
        [
            seminorm(ev - v_iso.conj().T @ np.kron(pv, eye_s) @ v_iso, rho)
            for pv, ev in zip(fam.projections, mats)
        ]
    )
    return IsometryFit(isometry=v_iso, s=s, residuals=residuals)


# ---------------------------------------------------------------------------
# dilation certificates


@dataclass(frozen=True)
class DilationCertificate:
    """Measured witness that a reference strategy locally dilates a source.

    v_a maps the source's Alice space into (reference Alice space) kron
    (ancilla); likewise v_b.  ``epsilon`` is the worst of the 1 + 4 n^2
    dilation-condition residuals, evaluated with exactly these isometries
    and this junk state.
    """

    v_a: np.ndarray
    v_b: np.ndarray
    junk: np.ndarray
    ref_dim_a: int
    ref_dim_b: int
    anc_dim_a: int
    anc_dim_b: int
    epsilon: float
    alpha: float | None = None
    beta: float | None = None
    gap: float | None = None
    state_residual: float | None = None
    fit_residuals_a: np.ndarray | None = None
    fit_residuals_b: np.ndarray | None = None
    delta: float | None = None

    @property
    def source_dim_a(self) -> int:
        return int(self.v_a.shape[1])

    @property
    def source_dim_b(self) -> int:
        return int(self.v_b.shape[1])


def _interleave(vec4: np.ndarray, da: int, db: int, ka: int, kb: int) -> np.ndarray:
    """Reorder (ref_a, ref_b, anc_a, anc_b) into (ref_a, anc_a, ref_b, anc_b)."""
    return vec4.reshape(da, db, ka, kb).transpose(0, 2, 1, 3).reshape(-1)


def _dilation_residuals(
    strategy: Strategy,
    reference: Strategy,
    v_a: np.ndarray,
    v_b: np.ndarray,
    junk: np.ndarray,
) -> np.ndarray:
    da, db = reference.dim_a, reference.dim_b
    if v_a.shape[0] % da != 0 or v_b.shape[0] % db != 0:
        raise InvalidShapeError("isometry ranges are not multiples of the reference dims")
    ka = v_a.shape[0] // da
    kb = v_b.shape[0] // db
    if v_a.shape[1] != strategy.dim_a or v_b.shape[1] != strategy.dim_b:
        raise InvalidShapeError("isometry domains do not match the source strategy")
    junk = as_vector(junk)
    if junk.size != ka * kb:
        raise InvalidShapeError(
            f"junk length {junk.size} != ancilla product {ka * kb}"
        )
    psi = as_vector(strategy.state)
    psi_ref = as_vector(reference.state)
    big = np.kron(v_a, v_b)
    lifted = big @ psi
    out = [np.linalg.norm(lifted - _interleave(np.kron(psi_ref, junk), da, db, ka, kb))]
    n, k = strategy.n_questions, strategy.n_outcomes
    for v in range(n):
        for i in range(k):
            for w in range(n):
                for j in range(k):
                    op = np.kron(
                        as_matrix(strategy.alice[v][i]), as_matrix(strategy.bob[w][j])
                    )
                    ref_vec = np.kron(
                        as_matrix(reference.alice[v][i]), as_matrix(reference.bob[w][j])
                    ) @ psi_ref
                    target = _interleave(np.kron(ref_vec, junk), da, db, ka, kb)
                    out.append(np.linalg.norm(big @ (op @ psi) - target))
    return np.array(out)


def dilation_epsilon(
    strategy: Strategy,
    reference: Strategy,
    v_a: np.ndarray,
    v_b: np.ndarray,
    junk: np.ndarray,
) -> float:
    """Worst dilation-condition residual for the given isometries and junk."""
    if strategy.n_questions != reference.n_questions:
        raise InvalidStrategyError("question counts differ")
    if strategy.n_outcomes != reference.n_outcomes:
        raise InvalidStrategyError("outcome counts differ")
    return float(
        _dilation_residuals(strategy, reference, as_matrix(v_a), as_matrix(v_b), junk).max()
    )


def extract_dilation(
    strategy: Strategy,
    fam: ProjectionFamily,
    alpha_min: float = ALPHA_MIN,
) -> DilationCertificate:
    """Fit isometries, read off the junk state, and certify the dilation.

    Each party's first-outcome operators are compressed onto the family
    (Bob against the transposed family); the compressed state is projected
    onto the top eigenspace of the correlation operator, and the remainder
    is normalized into the junk state.  The ancilla bases are rotated so the
    junk state comes out in Schmidt-diagonal form, which fixes the gauge
    freedom of the certificate.  Raises JunkExtractionError when the
    projected weight alpha falls below alpha_min.
    """
    strategy.validate()
    if strategy.n_outcomes != 2:
        raise UnsupportedOutcomeCountError("dilation extraction needs two outcomes")
    if strategy.n_questions != fam.n:
        raise InvalidStrategyError(
            f"strategy has {strategy.n_questions} questions, family has {fam.n}"
        )
    psi = as_vector(strategy.state)
    rho_a, rho_b = reduced_densities(psi, (strategy.dim_a, strategy.dim_b))
    fit_a = fit_isometry([povm[0] for povm in strategy.alice], fam, rho_a)
    fit_b = fit_isometry(
        [povm[0] for povm in strategy.bob], transpose_family(fam), rho_b
    )
    spectral = n_operator(fam)
    d = fam.d
    sa, sb = fit_a.s, fit_b.s

    lifted = np.kron(fit_a.isometry, fit_b.isometry) @ psi
    junk_block = np.einsum("iaib->ab", lifted.reshape(d, sa, d, sb)) / np.sqrt(d)
    alpha = float(np.linalg.norm(junk_block))
    if alpha <= alpha_min:
        raise JunkExtractionError(
            f"projected weight alpha = {alpha:.3e} is at or below {alpha_min}"
        )
    u, sv, vh = np.linalg.svd(junk_block / alpha, full_matrices=True)
    # rotate ancillas so the junk state is Schmidt-diagonal; the dilation
    # residuals are invariant under this change of gauge
    g_a = u.conj().T
    g_b = vh.conj()
    v_a = np.kron(np.eye(d), g_a) @ fit_a.isometry
    v_b = np.kron(np.eye(d), g_b) @ fit_b.isometry
    junk = np.zeros(sa * sb, dtype=np.complex128)
    m = min(sa, sb)
    junk[np.arange(m) * sb + np.arange(m)] = sv[:m]

    reference = canonical_strategy(fam)
    residuals = _dilation_residuals(strategy, reference, v_a, v_b, junk)
    delta = correlation_distance(
        induced_correlation(strategy), ideal_correlation(fam.n, fam.x)
    )
    eps_prime = max(fit_a.max_residual, fit_b.max_residual)
    # the spectral argument needs the correlation defect as well; folding it
    # into eps_prime makes the beta bound hold unconditionally
    eps_eff = max(eps_prime, delta)
    n = fam.n
    beta = float(np.sqrt(2.0 * (2 * n + 1) * eps_eff / spectral.gap))
    return DilationCertificate(
        v_a=v_a,
        v_b=v_b,
        junk=junk,
        ref_dim_a=d,
        ref_dim_b=d,
        anc_dim_a=sa,
        anc_dim_b=sb,
        epsilon=float(residuals.max()),
        alpha=alpha,
        beta=beta,
        gap=spectral.gap,
        state_residual=float(residuals[0]),
        fit_residuals_a=fit_a.residuals,
        fit_residuals_b=fit_b.residuals,
        delta=delta,
    )


def compose_dilations(
    inner: DilationCertificate, outer: DilationCertificate
) -> DilationCertificate:
    """Chain two dilation certificates into one.

    ``inner`` exhibits the middle strategy as a dilation of the source,
    ``outer`` exhibits the final reference as a dilation of the middle one.
    The composed isometries are (V kron I) W, the junk states tensor, and
    the certified epsilon is the sum of the parts.
    """
    if inner.ref_dim_a != outer.source_dim_a or inner.ref_dim_b != outer.source_dim_b:
        raise InvalidShapeError(
            "middle strategy dimensions of the two certificates do not match"
        )
    ka1, kb1 = outer.anc_dim_a, outer.anc_dim_b
    ka2, kb2 = inner.anc_dim_a, inner.anc_dim_b
    v_a = np.kron(outer.v_a, np.eye(ka2)) @ inner.v_a
    v_b = np.kron(outer.v_b, np.eye(kb2)) @ inner.v_b
    junk = (
        np.kron(outer.junk, inner.junk)
        .reshape(ka1, kb1, ka2, kb2)
        .transpose(0, 2, 1, 3)
        .reshape(-1)
    )
    return DilationCertificate(
        v_a=v_a,
        v_b=v_b,
        junk=junk,
        ref_dim_a=outer.ref_dim_a,
        ref_dim_b=outer.ref_dim_b,
        anc_dim_a=ka1 * ka2,
        anc_dim_b=kb1 * kb2,
        epsilon=inner.epsilon + outer.epsilon,
    )


def aligned_junk_fidelity(
    junk_1, dims_1: tuple[int, int], junk_2, dims_2: tuple[int, int]
) -> float:
    """Fidelity of two ancilla states, maximized over local basis changes.

    Certificates fix their ancilla bases only up to local unitaries, so the
    meaningful comparison is max over G_A, G_B of |<(G_A kron G_B) u, v>|,
    which equals the inner product of the Schmidt coefficient vectors.
    """
    s1 = np.linalg.svd(unvec(junk_1, dims_1), compute_uv=False)
    s2 = np.linalg.svd(unvec(junk_2, dims_2), compute_uv=False)
    m = min(s1.size, s2.size)
    return float(np.dot(s1[:m], s2[:m]))
