"""hhb.optimizer — Best weights for the generalized Hoffman bound on a fixed support.

Given allowed faces and a target vertex marginal ν, the search runs over
weight functions μ ≥ 0 on those faces with Σμ = 1 and μ_1 = ν, minimizing
(1 − λ_0)···(1 − λ_{k−2}). Every feasible μ gives a sound bound for the
independent sets of the support hypergraph, so the result is a certified upper
bound; the program is non-convex for k > 2 and no global optimality is
claimed.

The equality constraints are solved once: a feasible point x_0 plus a
null-space basis N, so the free coordinates z give μ = x_0 + N z. Every point
the Nelder-Mead search visits is clipped to μ ≥ 0 and re-projected onto the
constraint set before it is scored. Restarts keep the best objective.

Usage:
    result = optimize_weights(support, nu, OptimizerConfig(restarts=8, seed=0))
    result.bound, result.mu_star
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg
import scipy.optimize

from hhb.bound import bound_from_lambdas
from hhb.hypergraph import HypergraphError, WeightedHypergraph
from hhb.multiset import Multiset
from hhb.spectral import SpectralError, all_level_minima

logger = logging.getLogger(__name__)

NEGATIVITY_TOLERANCE = 1e-12
REPAIR_ROUNDS = 10_000
START_HALVINGS = 30


class InfeasibleError(Exception):
    """Raised when no non-negative weights meet the marginal constraints."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings; the seed fixes every random start."""

    restarts: int = 32
    iterations: int = 2000
    seed: int = 0
    step_scale: float = 0.1
    tolerance: float = 1e-7
    marginal_tolerance: float = 1e-8

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("restarts and iterations must be positive")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if min(self.step_scale, self.tolerance, self.marginal_tolerance) <= 0:
            raise ValueError("step_scale and tolerances must be positive")


class OptimizerResult(NamedTuple):
    """Best weights found, their λ-vector and the bound they certify."""

    support: tuple[Multiset, ...]
    mu_star: tuple[float, ...]
    lambdas: tuple[float, ...]
    objective: float
    bound: float
    marginal_residual: float
    normalization_residual: float
    iterations: int
    best_restart: int
    hypergraph: WeightedHypergraph


# ---------------------------------------------------------------------------
# Constraints
# ---------------------------------------------------------------------------


def constraint_system(
    support: Sequence[Multiset], nu: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """Rows μ_1(j) = Σ_f mult_j(f)/k · μ(f) = ν(j), then Σ_f μ(f) = 1.

    Raises:
        HypergraphError: If faces have mixed sizes or index outside ν.
    """
    if not support:
        raise HypergraphError("Support must contain at least one face")
    k = support[0].size
    n = len(nu)
    A = np.zeros((n + 1, len(support)))
    for f, face in enumerate(support):
        if face.size != k:
            raise HypergraphError(f"Face {face} has size {face.size}, expected {k}")
        for v, m in face.entries:
            if v >= n:
                raise HypergraphError(f"Face {face} uses vertex {v}; ν has {n} entries")
            A[v, f] = m / k
    A[n, :] = 1.0
    b = np.append(np.asarray(nu, dtype=float), 1.0)
    return A, b


def _residuals(A: np.ndarray, b: np.ndarray, x: np.ndarray) -> tuple[float, float]:
    gap = np.abs(A @ x - b)
    return float(gap[:-1].max(initial=0.0)), float(gap[-1])


def _repair(
    x: np.ndarray, A: np.ndarray, b: np.ndarray, pinv: np.ndarray
) -> tuple[np.ndarray, int]:
    """Alternate clipping to μ ≥ 0 with projection onto A μ = b.

    Returns the clipped result and the number of rounds used.
    """
    for rounds in range(REPAIR_ROUNDS):
        if x.min() >= -NEGATIVITY_TOLERANCE:
            break
        clipped = np.clip(x, 0.0, None)
        projected = clipped - pinv @ (A @ clipped - b)
        if np.max(np.abs(projected - x)) < 1e-15:
            break
        x = projected
    return np.clip(x, 0.0, None), rounds


def feasible_point(
    support: Sequence[Multiset], nu: Sequence[float], tolerance: float = 1e-8
) -> np.ndarray:
    """A weight vector with μ ≥ 0, Σμ = 1 and μ_1 = ν within tolerance.

    Least squares lands on the affine constraint set; alternating clipping and
    re-projection then repairs negative entries. Non-negative least squares
    is the fallback when the alternation stalls.

    Raises:
        InfeasibleError: With the final residual if neither method succeeds.
    """
    A, b = constraint_system(support, nu)
    pinv = np.linalg.pinv(A)
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    x, rounds = _repair(x, A, b, pinv)
    residual = max(_residuals(A, b, x))
    if residual <= tolerance:
        logger.debug(
            "feasible_point: projection rounds=%d residual=%.3e", rounds, residual
        )
        return x

    x, _ = scipy.optimize.nnls(A, b)
    residual = max(_residuals(A, b, x))
    if residual <= tolerance:
        logger.debug("feasible_point: nnls residual=%.3e", residual)
        return x
    raise InfeasibleError(
        f"No non-negative weights meet the marginal (residual {residual:.3e})", residual
    )


# ---------------------------------------------------------------------------
# Objective
# ---------------------------------------------------------------------------


def weights_to_hypergraph(
    support: Sequence[Multiset], mu: Sequence[float], vertices: Sequence[str]
) -> WeightedHypergraph:
    """Hypergraph carrying μ on the support; tiny negatives are clipped."""
    clipped = np.clip(np.asarray(mu, dtype=float), 0.0, None)
    return WeightedHypergraph.build(
        support[0].size, vertices, zip(support, clipped.tolist()), normalize=True
    )


def objective(
    support: Sequence[Multiset], mu: Sequence[float], vertices: Sequence[str]
) -> tuple[tuple[float, ...], float]:
    """(λ_0..λ_{k−2}, Π(1 − λ_i)) for the weights μ, using exact level minima."""
    X = weights_to_hypergraph(support, mu, vertices)
    lambdas = tuple(m.value for m in all_level_minima(X))
    product, _, _ = bound_from_lambdas(lambdas)
    return lambdas, product


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _start_points(
    x0: np.ndarray, basis: np.ndarray, config: OptimizerConfig
) -> list[np.ndarray]:
    """Restart 0 starts at x_0; later restarts draw from one seeded stream."""
    rng = np.random.default_rng(config.seed)
    dim = basis.shape[1]
    starts = [np.zeros(dim)]
    for _ in range(1, config.restarts):
        z = rng.normal(size=dim) * config.step_scale
        for _ in range(START_HALVINGS):
            if (x0 + basis @ z).min() >= -NEGATIVITY_TOLERANCE:
                break
            z = z / 2.0
        else:
            z = np.zeros(dim)
        starts.append(z)
    return starts


def optimize_weights(
    support: Sequence[Multiset],
    nu: Sequence[float],
    config: OptimizerConfig | None = None,
    vertices: Sequence[str] | None = None,
) -> OptimizerResult:
    """Best-of-restarts direct search for the weights minimizing the bound.

    Each candidate x_0 + N z is clipped to μ ≥ 0 and re-projected onto the
    marginal constraints by the same repair feasible_point uses; the repaired
    weights are what gets scored and returned. Candidates whose repair misses
    the marginal tolerance score +inf. The result is never worse than the
    bound at the feasible point, since that point is a vertex of the first
    restart's simplex and is left unchanged by the repair.

    Raises:
        InfeasibleError: If the support cannot carry the marginal ν.
    """
    config = config or OptimizerConfig()
    support = tuple(sorted(set(support), key=Multiset.sort_key))
    if vertices is None:
        vertices = [str(v) for v in range(len(nu))]
    labels = tuple(vertices)

    A, b = constraint_system(support, nu)
    x0 = feasible_point(support, nu, config.marginal_tolerance)
    basis = scipy.linalg.null_space(A)
    pinv = np.linalg.pinv(A)

    def repaired(z: np.ndarray) -> np.ndarray | None:
        x, _ = _repair(x0 + basis @ z, A, b, pinv)
        if max(_residuals(A, b, x)) > config.marginal_tolerance:
            return None
        return x

    def score(z: np.ndarray) -> float:
        x = repaired(z)
        if x is None:
            return math.inf
        try:
            lambdas, _ = objective(support, x, labels)
        except (HypergraphError, SpectralError):
            return math.inf
        return bound_from_lambdas(lambdas)[1]

    best_z = np.zeros(basis.shape[1])
    best_value, best_restart, iterations = score(best_z), 0, 0

    if basis.shape[1] > 0:
        for restart, z0 in enumerate(_start_points(x0, basis, config)):
            simplex = np.vstack([z0, z0 + config.step_scale * np.eye(len(z0))])
            found = scipy.optimize.minimize(
                score,
                z0,
                method="Nelder-Mead",
                options={
                    "maxiter": config.iterations,
                    "initial_simplex": simplex,
                    "xatol": config.tolerance,
                    "fatol": config.tolerance,
                },
            )
            iterations += int(found.nit)
            logger.debug(
                "optimize_weights: restart=%d value=%.12g nit=%d",
                restart,
                found.fun,
                found.nit,
            )
            if found.fun < best_value:
                best_z, best_value, best_restart = found.x, float(found.fun), restart

    mu = repaired(best_z)
    if mu is None:
        mu = x0
    mu = mu / mu.sum()
    X = weights_to_hypergraph(support, mu, labels)
    lambdas = tuple(m.value for m in all_level_minima(X))
    product, bound, _ = bound_from_lambdas(lambdas)
    marginal_residual, normalization_residual = _residuals(A, b, mu)

    logger.debug(
        "optimize_weights: free=%d bound=%.12g restart=%d",
        basis.shape[1],
        bound,
        best_restart,
    )
    return OptimizerResult(
        support=support,
        mu_star=tuple(float(w) for w in mu),
        lambdas=lambdas,
        objective=product,
        bound=bound,
        marginal_residual=marginal_residual,
        normalization_residual=normalization_residual,
        iterations=iterations,
        best_restart=best_restart,
        hypergraph=X,
    )


def result_to_dict(result: OptimizerResult) -> dict:
    return {
        "support": [list(face.elements()) for face in result.support],
        "mu_star": list(result.mu_star),
        "lambdas": list(result.lambdas),
        "objective": result.objective,
        "bound": result.bound,
        "marginal_residual": result.marginal_residual,
        "normalization_residual": result.normalization_residual,
        "iterations": result.iterations,
        "best_restart": result.best_restart,
    }
