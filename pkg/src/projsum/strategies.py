"""Bipartite measurement strategies and the correlations they induce.

A strategy is a shared unit vector plus one POVM per question and party.
The canonical strategy of a projection family measures {P_v, I - P_v} and
the transposed family on a maximally entangled state; it reproduces the
closed-form synchronous correlation

    p(1,1|v,w) = x/n               if v = w,
    p(1,1|v,w) = x(x-1)/(n(n-1))   otherwise,

with the remaining outcomes filled in by the fixed marginals x/n.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import (
    InvalidLevelError,
    InvalidStrategyError,
    UnsupportedScalarError,
)
from .families import ProjectionFamily, scalar_is_admissible
from .linalg import (
    as_matrix,
    as_vector,
    maximally_entangled,
    random_hermitian,
    random_state,
    schmidt,
    unvec,
)

POVM_TOL = 1e-8
CORRELATION_TOL = 1e-10

NOISE_MODELS = ("state-mixing", "povm-jitter", "outcome-noise")


@dataclass(frozen=True)
class Strategy:
    """Shared state with per-question POVMs for both parties.

    ``alice[v][i]`` is the operator for outcome i of question v; all
    questions carry the same number of outcomes and both parties answer the
    same question set.
    """

    state: np.ndarray
    dim_a: int
    dim_b: int
    alice: tuple[tuple[np.ndarray, ...], ...]
    bob: tuple[tuple[np.ndarray, ...], ...]

    @property
    def n_questions(self) -> int:
        return len(self.alice)

    @property
    def n_outcomes(self) -> int:
        return len(self.alice[0])

    def validate(self, povm_tol: float = POVM_TOL, state_tol: float = 1e-9) -> None:
        """Raise InvalidStrategyError on any structural violation."""
        psi = as_vector(self.state)
        if psi.size != self.dim_a * self.dim_b:
            raise InvalidStrategyError(
                f"state length {psi.size} != dim_a*dim_b = {self.dim_a * self.dim_b}"
            )
        if abs(np.linalg.norm(psi) - 1.0) > state_tol:
            raise InvalidStrategyError("state vector is not normalized")
        if len(self.alice) != len(self.bob):
            raise InvalidStrategyError("parties disagree on the question count")
        k = len(self.alice[0])
        for side, povms, dim in (("alice", self.alice, self.dim_a), ("bob", self.bob, self.dim_b)):
            for v, povm in enumerate(povms):
                if len(povm) != k:
                    raise InvalidStrategyError(
                        f"{side} question {v}: outcome count {len(povm)} != {k}"
                    )
                total = np.zeros((dim, dim), dtype=np.complex128)
                for i, e in enumerate(povm):
                    m = as_matrix(e)
                    if m.shape != (dim, dim):
                        raise InvalidStrategyError(
                            f"{side} question {v} outcome {i}: shape {m.shape}, expected {(dim, dim)}"
                        )
                    if np.abs(m - m.conj().T).max(initial=0.0) > povm_tol:
                        raise InvalidStrategyError(
                            f"{side} question {v} outcome {i}: not Hermitian at tolerance"
                        )
                    low = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
                    if low < -povm_tol:
                        raise InvalidStrategyError(
                            f"{side} question {v} outcome {i}: negative eigenvalue {low:.3e}"
                        )
                    total += m
                if np.abs(total - np.eye(dim)).max() > povm_tol:
                    raise InvalidStrategyError(
                        f"{side} question {v}: POVM does not sum to identity"
                    )


@dataclass(frozen=True)
class Correlation:
    """Conditional outcome table, table[v, w, i, j] = p(i, j | v, w)."""

    n: int
    k: int
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (self.n, self.n, self.k, self.k):
            raise InvalidStrategyError(
                f"table shape {t.shape} does not match (n, n, k, k) = "
                f"{(self.n, self.n, self.k, self.k)}"
            )


def canonical_strategy(fam: ProjectionFamily) -> Strategy:
    """Projective two-outcome strategy of a family on the maximally entangled state.

    Alice measures {P_v, I - P_v}, Bob the transposes.  The induced
    correlation is synchronous and matches ideal_correlation(n, x).
    """
    d = fam.d
    eye = np.eye(d, dtype=np.complex128)
    alice = tuple((p.copy(), eye - p) for p in fam.projections)
    bob = tuple((p.T.copy(), eye - p.T) for p in fam.projections)
    return Strategy(
        state=maximally_entangled(d),
        dim_a=d,
        dim_b=d,
        alice=alice,
        bob=bob,
    )


def ideal_correlation(n: int, x: Fraction | float) -> Correlation:
    """Closed-form synchronous two-outcome target correlation for (n, x).

    Exact in Fraction arithmetic before the final float conversion. Raises
    UnsupportedScalarError when x is not an admissible scalar for n.
    """
    x = Fraction(x)
    if not scalar_is_admissible(n, x):
        raise UnsupportedScalarError(f"x = {x} is not admissible for n = {n}")
    same = Fraction(x, n)
    cross = Fraction(x * (x - 1), n * (n - 1))
    table = np.zeros((n, n, 2, 2))
    for v in range(n):
        for w in range(n):
            p11 = same if v == w else cross
            p12 = same - p11          # zero on the diagonal
            p22 = 1 - 2 * same + p11
            table[v, w, 0, 0] = float(p11)
            table[v, w, 0, 1] = float(p12)
            table[v, w, 1, 0] = float(p12)
            table[v, w, 1, 1] = float(p22)
    return Correlation(n=n, k=2, table=table)


def induced_correlation(strategy: Strategy, povm_tol: float = POVM_TOL) -> Correlation:
    """Correlation table of a strategy, p = <(E kron F) psi, psi>.

    Computed through the reshaped state: with M the dim_a x dim_b matrix of
    psi, p(i,j|v,w) = sum over entries of (M^* E M) .* F.
    """
    strategy.validate(povm_tol=povm_tol)
    n = strategy.n_questions
    k = strategy.n_outcomes
    m = unvec(strategy.state, (strategy.dim_a, strategy.dim_b))
    table = np.zeros((n, n, k, k))
    for v in range(n):
        for i in range(k):
            kernel = m.conj().T @ as_matrix(strategy.alice[v][i]) @ m
            for w in range(n):
                for j in range(k):
                    val = np.sum(kernel * as_matrix(strategy.bob[w][j]))
                    table[v, w, i, j] = val.real
    return Correlation(n=n, k=k, table=table)


def chsh_fixture() -> Strategy:
    """The two-qubit CHSH strategy: Z/X for Alice, rotated bases for Bob.

    Outcome 0 collects the +1 eigenspace.  Under uniformly random questions
    the game 'i xor j = v and w' is won with probability (2 + sqrt(2))/4.
    """
    z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    eye = np.eye(2, dtype=np.complex128)

    def pvm(obs):
        return ((eye + obs) / 2, (eye - obs) / 2)

    alice = (pvm(z), pvm(x))
    bob = (pvm((z + x) / np.sqrt(2)), pvm((z - x) / np.sqrt(2)))
    return Strategy(
        state=maximally_entangled(2), dim_a=2, dim_b=2, alice=alice, bob=bob
    )


def chsh_win_probability(corr: Correlation) -> float:
    """Winning probability of the xor game under uniform question pairs."""
    if corr.n != 2 or corr.k != 2:
        raise InvalidStrategyError("the xor game needs a 2-question 2-outcome table")
    total = 0.0
    for v in range(2):
        for w in range(2):
            for i in range(2):
                for j in range(2):
                    if (i + j) % 2 == (v * w) % 2:
                        total += corr.table[v, w, i, j]
    return total / 4.0


def correlation_distance(p: Correlation, q: Correlation) -> float:
    """Entrywise 1-norm distance between two tables of equal shape."""
    if p.table.shape != q.table.shape:
        raise InvalidStrategyError(
            f"table shapes differ: {p.table.shape} vs {q.table.shape}"
        )
    return float(np.abs(p.table - q.table).sum())


def synchronicity_defect(p: Correlation) -> float:
    """Largest off-diagonal outcome weight on matching questions.

    Zero iff both parties always agree when asked the same question.
    """
    worst = 0.0
    for v in range(p.n):
        for i in range(p.k):
            for j in range(p.k):
                if i != j:
                    worst = max(worst, abs(float(p.table[v, v, i, j])))
    return worst


def marginals(p: Correlation) -> tuple[np.ndarray, np.ndarray, float]:
    """Per-party marginals and the worst non-signaling deviation.

    Returns (p_a, p_b, residual) where p_a[v, i] averages sum_j p(i,j|v,w)
    over w, and the residual is the largest deviation of any single-w
    (or single-v) marginal from that average.
    """
    row = p.table.sum(axis=3)          # [v, w, i] = sum_j p(i,j|v,w)
    col = p.table.sum(axis=2)          # [v, w, j] = sum_i p(i,j|v,w)
    p_a = row.mean(axis=1)             # [v, i]
    p_b = col.mean(axis=0)             # [w, j]
    res_a = float(np.abs(row - p_a[:, None, :]).max())
    res_b = float(np.abs(col - p_b[None, :, :]).max())
    return p_a, p_b, max(res_a, res_b)


@dataclass(frozen=True)
class SchmidtReduction:
    """Output of schmidt_reduce: the compressed strategy plus dilation data.

    iota_a, iota_b embed the Schmidt supports back into the original spaces;
    v_a, v_b are the isometries exhibiting the original strategy as an exact
    dilation of the compressed one, with the first Schmidt pair as junk.
    """

    strategy: Strategy
    iota_a: np.ndarray
    iota_b: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray
    junk: np.ndarray


def schmidt_reduce(strategy: Strategy) -> SchmidtReduction:
    """Compress a strategy onto the Schmidt supports of its state.

    The compressed state is diagonal with full Schmidt rank; measurement
    operators are conjugated by the support embeddings.  When the input
    induces a synchronous correlation the compressed strategy induces the
    same one.
    """
    strategy.validate()
    dec = schmidt(strategy.state, (strategy.dim_a, strategy.dim_b))
    r = dec.rank
    iota_a = dec.left                  # (dim_a, r), isometric columns
    iota_b = dec.right
    state = np.zeros(r * r, dtype=np.complex128)
    state[(np.arange(r)) * r + np.arange(r)] = dec.coefficients
    alice = tuple(
        tuple(iota_a.conj().T @ as_matrix(e) @ iota_a for e in povm)
        for povm in strategy.alice
    )
    bob = tuple(
        tuple(iota_b.conj().T @ as_matrix(f) @ iota_b for f in povm)
        for povm in strategy.bob
    )
    reduced = Strategy(state=state, dim_a=r, dim_b=r, alice=alice, bob=bob)

    def dilation_isometry(iota, dim):
        # xi |-> (iota^* xi) kron xi_1 + e_1 kron (I - iota iota^*) xi
        xi1 = iota[:, 0].reshape(-1, 1)
        e1 = np.zeros((r, 1), dtype=np.complex128)
        e1[0, 0] = 1.0
        proj = iota @ iota.conj().T
        return np.kron(iota.conj().T, xi1) + np.kron(e1, np.eye(dim) - proj)

    v_a = dilation_isometry(iota_a, strategy.dim_a)
    v_b = dilation_isometry(iota_b, strategy.dim_b)
    # on the Schmidt supports V maps xi_l to e_l kron xi_1, so the junk
    # state of the exact dilation is the first Schmidt pair
    junk = np.kron(iota_a[:, 0], iota_b[:, 0])
    return SchmidtReduction(
        strategy=reduced, iota_a=iota_a, iota_b=iota_b, v_a=v_a, v_b=v_b, junk=junk
    )


def _unitary_from_hermitian(h: np.ndarray, angle: float) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * angle * w)) @ v.conj().T


def _renormalize_povm(povm: list[np.ndarray]) -> tuple[np.ndarray, ...]:
    total = sum(povm)
    w, v = np.linalg.eigh((total + total.conj().T) / 2)
    inv_sqrt = (v * (1.0 / np.sqrt(np.maximum(w, 1e-300)))) @ v.conj().T
    out = []
    for e in povm:
        m = inv_sqrt @ e @ inv_sqrt
        out.append((m + m.conj().T) / 2)
    return tuple(out)


def perturb(strategy: Strategy, model: str, level: float, seed: int) -> Strategy:
    """Deterministic noise injection, reproducible from (model, level, seed).

    state-mixing   rotates the state by ``level`` radians toward a seeded
                   random direction orthogonal to it
    povm-jitter    conjugates each question's POVM by exp(i * level * H) for
                   a seeded random Hermitian H, then renormalizes
    outcome-noise  mixes each POVM with the uniform one at weight ``level``

    level = 0 returns the strategy unchanged.
    """
    if model not in NOISE_MODELS:
        raise InvalidLevelError(f"unknown noise model {model!r}; pick from {NOISE_MODELS}")
    if not (0.0 <= level <= 1.0):
        raise InvalidLevelError(f"level must lie in [0, 1], got {level}")
    if level == 0.0:
        return strategy
    rng = np.random.default_rng(seed)

    if model == "state-mixing":
        psi = as_vector(strategy.state)
        dim = psi.size
        for _ in range(64):
            chi = random_state(dim, rng)
            chi = chi - (psi.conj() @ chi) * psi
            nrm = np.linalg.norm(chi)
            if nrm > 1e-8:
                chi = chi / nrm
                break
        else:  # pragma: no cover - astronomically unlikely
            raise InvalidStrategyError("could not draw a direction orthogonal to the state")
        new_state = np.cos(level) * psi + np.sin(level) * chi
        return replace(strategy, state=new_state)

    if model == "povm-jitter":
        new_alice = []
        for povm in strategy.alice:
            u = _unitary_from_hermitian(random_hermitian(strategy.dim_a, rng), level)
            new_alice.append(_renormalize_povm([u @ e @ u.conj().T for e in povm]))
        new_bob = []
        for povm in strategy.bob:
            u = _unitary_from_hermitian(random_hermitian(strategy.dim_b, rng), level)
            new_bob.append(_renormalize_povm([u @ f @ u.conj().T for f in povm]))
        return replace(strategy, alice=tuple(new_alice), bob=tuple(new_bob))

    # outcome-noise
    k = strategy.n_outcomes

    def mix(povm, dim):
        uniform = np.eye(dim, dtype=np.complex128) / k
        return tuple((1.0 - level) * as_matrix(e) + level * uniform for e in povm)

    new_alice = tuple(mix(povm, strategy.dim_a) for povm in strategy.alice)
    new_bob = tuple(mix(povm, strategy.dim_b) for povm in strategy.bob)
    return replace(strategy, alice=new_alice, bob=new_bob)
