"""hhb.bound — The generalized Hoffman bound and its variants.

For a k-uniform hypergraph X,

    α(X) ≤ 1 − 1 / ((1 − λ_0)(1 − λ_1)···(1 − λ_{k−2})),

which for k = 2 is the classical Hoffman bound −λ_0/(1 − λ_0). Positive λ_i
are folded in level by level with a clamp at 0 (see bound_from_lambdas). When every
λ_i ≤ 0 the same value bounds every tensor power X^{⊗n}.

Usage:
    report = hoffman_bound(X)
    tensor_bound(X, 50).bound
    symmetric_hoffman_bound(X, sym)      # conditional on sym-invariant sets
    certify_lambda(X, [-0.25, -1.0]).valid
"""

import logging
from math import prod
from typing import NamedTuple, Sequence

from hhb.hypergraph import HypergraphError, WeightedHypergraph, skeleton
from hhb.multiset import Multiset
from hhb.spectral import (
    LevelMinimum,
    SpectralError,
    SymmetrySpec,
    all_level_minima,
    invariant_lambda_min,
    lambda_level,
    skeleton_operator,
)

logger = logging.getLogger(__name__)

STABLE_TOLERANCE = 1e-12
DEGENERATE_FACTOR = 1e-12
CERTIFY_TOLERANCE = 1e-9


class BoundReport(NamedTuple):
    """λ_0..λ_{k−2} with witnesses, the product ∏(1 − λ_i) and the bound."""

    lambdas: tuple[float, ...]
    witnesses: tuple[Multiset, ...]
    product: float
    bound: float
    tensor_stable: bool
    conditional_symmetry: bool = False
    degenerate: bool = False


class Certificate(NamedTuple):
    """Outcome of checking T_{X_s} ⪰ λ_{|s|}·Id for every face s."""

    valid: bool
    margins: tuple[float, ...]
    worst_margin: float
    worst_level: int
    witness: Multiset


# ---------------------------------------------------------------------------
# Formula
# ---------------------------------------------------------------------------


def bound_from_lambdas(lambdas: Sequence[float]) -> tuple[float, float, bool]:
    """Return (product, bound, degenerate) for a λ-vector.

    The bound is folded from the top level down as b ← max(0, (b − λ_i)/(1 − λ_i)),
    starting from b = 0. Without clamping this is 1 − 1/∏(1 − λ_i), and
    −λ/(1 − λ) for a single level; a clamp only happens when some λ_i > 0
    leaves no independent set of positive measure in the links below. Any
    factor 1 − λ_i at or below 1e-12 trivializes the bound to 1.
    """
    factors = [1.0 - lam for lam in lambdas]
    product = prod(factors)
    if any(f <= DEGENERATE_FACTOR for f in factors):
        return product, 1.0, True
    bound = 0.0
    for lam, factor in zip(reversed(lambdas), reversed(factors)):
        bound = max(0.0, (bound - lam) / factor)
    return product, bound, False


def _report(
    lambdas: Sequence[float],
    witnesses: Sequence[Multiset],
    conditional_symmetry: bool = False,
) -> BoundReport:
    product, bound, degenerate = bound_from_lambdas(lambdas)
    return BoundReport(
        lambdas=tuple(float(lam) for lam in lambdas),
        witnesses=tuple(witnesses),
        product=product,
        bound=bound,
        tensor_stable=all(lam <= STABLE_TOLERANCE for lam in lambdas),
        conditional_symmetry=conditional_symmetry,
        degenerate=degenerate,
    )


def report_from_minima(minima: Sequence[LevelMinimum]) -> BoundReport:
    return _report([m.value for m in minima], [m.witness for m in minima])


def combine_lambda(a: float, b: float) -> float:
    """Smallest eigenvalue of the Kronecker product of two Markov operators.

    Equals a·b when both are non-negative and min(a, b) otherwise.
    """
    if a >= 0 and b >= 0:
        return a * b
    return min(a, b)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def hoffman_bound(X: WeightedHypergraph) -> BoundReport:
    """The generalized Hoffman bound of X from λ_0..λ_{k−2}."""
    if X.k < 2:
        raise HypergraphError(f"The bound needs k >= 2, got k={X.k}")
    report = report_from_minima(all_level_minima(X))
    logger.debug("hoffman_bound: lambdas=%s bound=%.12g", report.lambdas, report.bound)
    return report


def tensor_bound(X: WeightedHypergraph, n: int) -> BoundReport:
    """Bound for X^{⊗n} without building the power.

    λ_i(X^{⊗n}) = λ_i(X) if λ_i(X) ≤ 0, else λ_i(X)^n. Witnesses are faces of X.
    """
    if n < 1:
        raise HypergraphError(f"Tensor power needs n >= 1, got {n}")
    base = hoffman_bound(X)
    lambdas = [lam if lam <= 0 else lam**n for lam in base.lambdas]
    return _report(lambdas, base.witnesses)


def tensor_product_bound(X: WeightedHypergraph, Xp: WeightedHypergraph) -> BoundReport:
    """Bound for X ⊗ X' from the factors' λ-vectors via combine_lambda."""
    if X.k != Xp.k:
        raise HypergraphError(f"Uniformity mismatch: {X.k} vs {Xp.k}")
    left, right = hoffman_bound(X), hoffman_bound(Xp)
    lambdas = [combine_lambda(a, b) for a, b in zip(left.lambdas, right.lambdas)]
    pairs = zip(lambdas, left.lambdas, left.witnesses, right.witnesses)
    witnesses = [wl if lam == a else wr for lam, a, wl, wr in pairs]
    return _report(lambdas, witnesses)


def symmetric_hoffman_bound(X: WeightedHypergraph, sym: SymmetrySpec) -> BoundReport:
    """Bound valid only for independent sets invariant under the group of sym.

    λ_0 is replaced by the smallest eigenvalue of the skeleton operator on
    orbit-constant functions; λ_1..λ_{k−2} come from the full links.

    Raises:
        SymmetryError: If a generator fails the μ_1/μ_2 preservation check.
    """
    op = skeleton_operator(skeleton(X))
    restricted = invariant_lambda_min(op, sym)
    rest = [lambda_level(X, i) for i in range(1, X.k - 1)]
    lambdas = [restricted.value] + [m.value for m in rest]
    witnesses = [Multiset.empty()] + [m.witness for m in rest]
    logger.debug(
        "symmetric_hoffman_bound: orbits=%d lambda_0=%.12g",
        restricted.orbit_count,
        restricted.value,
    )
    return _report(lambdas, witnesses, conditional_symmetry=True)


def certify_lambda(X: WeightedHypergraph, lambdas: Sequence[float]) -> Certificate:
    """Check that every link at level i has minimum skeleton eigenvalue ≥ λ_i − 1e-9.

    The semidefinite form of the same constraint is the Schur complement
    [[(1−λ)Id, Id−T], [Id−Tᵀ, (1−λ)Id]] ⪰ 0; here it is checked by eigensolve.
    """
    if len(lambdas) != X.k - 1:
        raise SpectralError(f"Expected {X.k - 1} lambda values, got {len(lambdas)}")

    margins, witnesses = [], []
    for i, claimed in enumerate(lambdas):
        actual = lambda_level(X, i)
        margins.append(actual.value - claimed)
        witnesses.append(actual.witness)

    worst_level = min(range(len(margins)), key=lambda i: (margins[i], i))
    return Certificate(
        valid=all(m >= -CERTIFY_TOLERANCE for m in margins),
        margins=tuple(margins),
        worst_margin=margins[worst_level],
        worst_level=worst_level,
        witness=witnesses[worst_level],
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def report_to_dict(report: BoundReport) -> dict:
    return {
        "lambdas": list(report.lambdas),
        "witnesses": [list(w.elements()) for w in report.witnesses],
        "product": report.product,
        "bound": report.bound,
        "tensor_stable": report.tensor_stable,
        "conditional_symmetry": report.conditional_symmetry,
        "degenerate": report.degenerate,
    }
