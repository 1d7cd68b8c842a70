"""hhb.oracle — Exact independence numbers by branch and bound.

A vertex set I is independent in X when no face of X has its support inside
I, so a loop face [v, v, w] forbids {v, w}. α(X) is the largest μ_1-measure
of an independent set. The search here is exact and capped; it is the ground
truth every bound in the toolkit is checked against.

Usage:
    result = brute_force_alpha(X)          # IndependenceResult(alpha, witness)
    is_independent(X, result.witness)      # True
    brute_force_symmetric_cross(mantel_spec, involution)
"""

import logging
import math
from typing import Callable, Iterable, NamedTuple, Sequence

from hhb.config import HHB_ALPHA_CAP, HHB_SYMMETRIC_PART_CAP
from hhb.hypergraph import (
    HypergraphError,
    KPartiteSpec,
    WeightedHypergraph,
    induced_measure,
)

logger = logging.getLogger(__name__)

SUPPORT_EPSILON = 1e-12
TIE_TOLERANCE = 1e-12


class CapExceededError(Exception):
    """Raised when an exhaustive search would run over its size cap."""


class IndependenceResult(NamedTuple):
    """Maximal measure of an independent set and the set attaining it."""

    alpha: float
    witness: tuple[int, ...]


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def is_independent(X: WeightedHypergraph, I: Iterable[int]) -> bool:
    """True iff no stored face has its support inside I."""
    chosen = frozenset(I)
    return not any(face.support <= chosen for face in X.faces)


def set_measure(X: WeightedHypergraph, I: Iterable[int]) -> float:
    """μ_1(I)."""
    masses = induced_measure(X, 1).vertex_masses(X.num_vertices)
    return math.fsum(masses[v] for v in set(I))


def cross_independent(spec: KPartiteSpec, sets: Sequence[Iterable[int]]) -> bool:
    """True iff no positive-weight tuple lies in A_1 × ... × A_k.

    Raises:
        HypergraphError: If the number of sets differs from the number of parts
            or a set indexes outside its part.
    """
    if len(sets) != spec.k:
        raise HypergraphError(f"Expected {spec.k} sets, one per part, got {len(sets)}")
    chosen = [frozenset(A) for A in sets]
    for a, (part, A) in enumerate(zip(spec.parts, chosen)):
        if any(not 0 <= v < len(part) for v in A):
            raise HypergraphError(
                f"Set {a} indexes outside part {a} (size {len(part)})"
            )
    return not any(
        weight > 0 and all(v in A for v, A in zip(tup, chosen))
        for tup, weight in spec.faces.items()
    )


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------


def _search(
    weights: Sequence[float],
    constraints: Sequence[int],
    members: Callable[[int], tuple[int, ...]],
) -> tuple[float, int]:
    """Maximum-weight item set containing no constraint mask.

    Items are visited in descending weight order (ties by index), including
    before excluding, starting from the greedy solution. Among maxima within
    TIE_TOLERANCE the set whose members() tuple is least wins.
    """
    order = sorted(range(len(weights)), key=lambda v: (-weights[v], v))
    by_item: list[list[int]] = [[] for _ in weights]
    for mask in constraints:
        for v in range(len(weights)):
            if mask >> v & 1:
                by_item[v].append(mask)

    suffix = [0.0] * (len(order) + 1)
    for p in range(len(order) - 1, -1, -1):
        suffix[p] = suffix[p + 1] + weights[order[p]]

    def can_add(mask: int, v: int) -> bool:
        grown = mask | (1 << v)
        return all(c & ~grown for c in by_item[v])

    greedy = 0
    for v in order:
        if can_add(greedy, v):
            greedy |= 1 << v
    best = [math.fsum(weights[v] for v in order if greedy >> v & 1), greedy]

    def consider(value: float, mask: int) -> None:
        if value > best[0] + TIE_TOLERANCE:
            best[0], best[1] = value, mask
        elif value >= best[0] - TIE_TOLERANCE and members(mask) < members(best[1]):
            best[0], best[1] = max(value, best[0]), mask

    def descend(p: int, mask: int, value: float) -> None:
        if value + suffix[p] < best[0] - TIE_TOLERANCE:
            return
        if p == len(order):
            consider(value, mask)
            return
        v = order[p]
        if can_add(mask, v):
            descend(p + 1, mask | (1 << v), value + weights[v])
        descend(p + 1, mask, value)

    descend(0, 0, 0.0)
    return best[0], best[1]


def brute_force_alpha(
    X: WeightedHypergraph, cap: int | None = None
) -> IndependenceResult:
    """Exact α(X) with the lexicographically least maximizing vertex set.

    Only vertices of positive μ_1 mass take part in the search; the witness
    never contains a vertex of zero mass.

    Raises:
        CapExceededError: If the μ_1-support has more vertices than the cap.
    """
    limit = HHB_ALPHA_CAP if cap is None else cap
    masses = induced_measure(X, 1).vertex_masses(X.num_vertices)
    support = [v for v, m in enumerate(masses) if m > SUPPORT_EPSILON]
    if len(support) > limit:
        raise CapExceededError(
            f"Brute force needs |support(μ_1)| <= {limit}, got {len(support)}"
        )

    position = {v: p for p, v in enumerate(support)}
    constraints = sorted(
        {sum(1 << position[v] for v in face.support) for face in X.faces}
    )

    def members(mask: int) -> tuple[int, ...]:
        return tuple(v for p, v in enumerate(support) if mask >> p & 1)

    _, mask = _search([masses[v] for v in support], constraints, members)
    witness = members(mask)
    alpha = math.fsum(masses[v] for v in witness)
    logger.debug("brute_force_alpha: support=%d alpha=%.12g", len(support), alpha)
    return IndependenceResult(alpha, witness)


def brute_force_symmetric_cross(
    spec: KPartiteSpec,
    involution: Sequence[int] | None = None,
    cap: int | None = None,
) -> IndependenceResult:
    """Largest symmetric cross-independent family A = A_1 = ... = A_k.

    Parts must carry identical label lists so a single index set A can be used
    in every part. When an involution of the part is given, A must be closed
    under it. The measure of A is (1/k) Σ_a μ_1^{(a)}(A), the μ_1-measure of
    A placed in every part of the realized hypergraph.

    Raises:
        HypergraphError: If the parts differ or the involution is not one.
        CapExceededError: If the part is larger than the cap.
    """
    limit = HHB_SYMMETRIC_PART_CAP if cap is None else cap
    labels = spec.parts[0]
    if any(part != labels for part in spec.parts[1:]):
        raise HypergraphError("Symmetric search needs identically labelled parts")
    m = len(labels)
    if m > limit:
        raise CapExceededError(
            f"Symmetric search needs parts of size <= {limit}, got {m}"
        )

    flip = tuple(range(m)) if involution is None else tuple(involution)
    if sorted(flip) != list(range(m)) or any(flip[flip[v]] != v for v in range(m)):
        raise HypergraphError(f"Not an involution of 0..{m - 1}: {flip}")

    orbits = sorted({tuple(sorted({v, flip[v]})) for v in range(m)})
    orbit_of = {v: o for o, orbit in enumerate(orbits) for v in orbit}

    marginal = [0.0] * m
    for tup, weight in spec.faces.items():
        for v in tup:
            marginal[v] += weight / spec.k
    weights = [math.fsum(marginal[v] for v in orbit) for orbit in orbits]
    constraints = sorted(
        {
            sum(1 << o for o in {orbit_of[v] for v in tup})
            for tup, w in spec.faces.items()
            if w > 0
        }
    )

    def members(mask: int) -> tuple[int, ...]:
        chosen = (orbit for o, orbit in enumerate(orbits) if mask >> o & 1)
        return tuple(sorted(v for orbit in chosen for v in orbit))

    _, mask = _search(weights, constraints, members)
    witness = members(mask)
    value = math.fsum(marginal[v] for v in witness)
    logger.debug(
        "brute_force_symmetric_cross: part=%d orbits=%d value=%.12g",
        m,
        len(orbits),
        value,
    )
    return IndependenceResult(value, witness)


# ---------------------------------------------------------------------------
# Dictatorships
# ---------------------------------------------------------------------------


def dictatorship(
    X: WeightedHypergraph, base_set: Iterable[int], n: int, coordinate: int
) -> tuple[int, ...]:
    """Vertices of tensor_power(X, n) whose given coordinate lies in base_set.

    Vertex (x_0, ..., x_{n-1}) of the power has index Σ x_j·|V|^{n-1-j}.

    Raises:
        HypergraphError: If the coordinate or a base vertex is out of range.
    """
    if n < 1 or not 0 <= coordinate < n:
        raise HypergraphError(f"Coordinate {coordinate} outside 0..{n - 1}")
    size = X.num_vertices
    base = frozenset(base_set)
    if any(not 0 <= v < size for v in base):
        raise HypergraphError(f"Base set indexes outside 0..{size - 1}")
    stride = size ** (n - 1 - coordinate)
    return tuple(x for x in range(size**n) if (x // stride) % size in base)
