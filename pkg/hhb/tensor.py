"""hhb.tensor — Tensor products and powers of hypergraphs.

The tensor product X ⊗ X' lives on V × V' with the product measure on
ordered faces: a random face of the product is obtained by writing a
μ-random face and a μ'-random face in uniformly random orders and zipping
them slot by slot. Explicit powers are guarded by a face cap.

Usage:
    square = tensor_product(X, X)
    cube = tensor_power(X, 3)
    mantel_4 = kpartite_tensor_power(mantel_spec, 2)
"""

import logging
from collections import Counter, defaultdict
from itertools import product
from math import factorial, prod

from hhb.config import HHB_TENSOR_FACE_CAP
from hhb.hypergraph import HypergraphError, KPartiteSpec, WeightedHypergraph
from hhb.multiset import Multiset

logger = logging.getLogger(__name__)

LABEL_SEPARATOR = "|"


class SizeCapError(Exception):
    """Raised when an explicit tensor power would exceed the face cap."""


def _distinct_orderings(face: Multiset) -> int:
    return factorial(face.size) // prod(factorial(m) for _, m in face.entries)


def _check_cap(estimate: int, cap: int | None) -> None:
    limit = HHB_TENSOR_FACE_CAP if cap is None else cap
    if estimate > limit:
        raise SizeCapError(
            f"Tensor product would hold up to {estimate} faces (cap {limit})"
        )


# ---------------------------------------------------------------------------
# Unpartitioned product
# ---------------------------------------------------------------------------


def tensor_product(
    X: WeightedHypergraph, Xp: WeightedHypergraph, cap: int | None = None
) -> WeightedHypergraph:
    """The tensor product X ⊗ X' on V × V' (vertex (u, u') has index u·|V'| + u').

    Raises:
        HypergraphError: If the uniformities differ.
        SizeCapError: If the product could hold more faces than the cap.
    """
    if X.k != Xp.k:
        raise HypergraphError(f"Uniformity mismatch: {X.k} vs {Xp.k}")

    estimate = len(X.faces) * sum(_distinct_orderings(f) for f in Xp.faces)
    _check_cap(estimate, cap)

    width = Xp.num_vertices
    vertices = [
        f"{a}{LABEL_SEPARATOR}{b}" for a, b in product(X.vertices, Xp.vertices)
    ]
    share = 1.0 / factorial(X.k)

    weights: dict[Multiset, float] = defaultdict(float)
    for tau, weight in X.faces.items():
        slots = tau.elements()
        for tau_p, weight_p in Xp.faces.items():
            # fixing one ordering of tau and running over all k! orderings of
            # tau' realizes the product of the ordered-face distributions
            alignments = Counter(tau_p.orderings())
            mass = weight * weight_p * share
            for ordering, count in alignments.items():
                face = Multiset.of(u * width + v for u, v in zip(slots, ordering))
                weights[face] += mass * count

    logger.debug(
        "tensor_product: |V|=%d x %d, faces=%d", X.num_vertices, width, len(weights)
    )
    return WeightedHypergraph.build(X.k, vertices, weights)


def tensor_power(
    X: WeightedHypergraph, n: int, cap: int | None = None
) -> WeightedHypergraph:
    """The n-th tensor power X^{⊗n} built by iterated products."""
    if n < 1:
        raise HypergraphError(f"Tensor power needs n >= 1, got {n}")
    result = X
    for _ in range(n - 1):
        result = tensor_product(result, X, cap=cap)
    return result


# ---------------------------------------------------------------------------
# k-partite product (parts stay aligned)
# ---------------------------------------------------------------------------


def kpartite_tensor_product(
    spec: KPartiteSpec, other: KPartiteSpec, cap: int | None = None
) -> KPartiteSpec:
    """Part-aligned product: parts V_a × V'_a and the product tuple measure."""
    if spec.k != other.k:
        raise HypergraphError(f"Part count mismatch: {spec.k} vs {other.k}")
    _check_cap(len(spec.faces) * len(other.faces), cap)

    parts = tuple(
        tuple(f"{a}{LABEL_SEPARATOR}{b}" for a, b in product(p, q))
        for p, q in zip(spec.parts, other.parts)
    )
    widths = [len(q) for q in other.parts]
    faces: dict[tuple[int, ...], float] = {}
    for tup, weight in spec.faces.items():
        for tup_p, weight_p in other.faces.items():
            key = tuple(u * w + v for u, v, w in zip(tup, tup_p, widths))
            faces[key] = faces.get(key, 0.0) + weight * weight_p
    return KPartiteSpec(parts, faces)


def kpartite_tensor_power(
    spec: KPartiteSpec, n: int, cap: int | None = None
) -> KPartiteSpec:
    """The k-partite tensor power (V_1^n, ..., V_k^n, μ^{⊗n})."""
    if n < 1:
        raise HypergraphError(f"Tensor power needs n >= 1, got {n}")
    result = spec
    for _ in range(n - 1):
        result = kpartite_tensor_product(result, spec, cap=cap)
    return result
