"""hhb.hypergraph — Weighted uniform hypergraphs and their induced structure.

A weighted k-uniform hypergraph X = (V, μ) is a vertex table plus a
probability distribution μ on k-multisets of vertices. From μ this module
derives the induced measures μ_i (uniform i-sub-multiset of a μ-random face),
the links X_σ, the skeleton S(X) and the k-partite realization.

Usage:
    X = WeightedHypergraph.build(3, ["0", "1"], {Multiset.of([1, 1, 0]): 0.9,
                                                 Multiset.of([0, 0, 0]): 0.1})
    mu_1 = induced_measure(X, 1)
    X_0 = link(X, Multiset.of([0]))
    graph = skeleton(X)
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from hhb.multiset import Multiset, submultiset_count

logger = logging.getLogger(__name__)

MEASURE_TOLERANCE = 1e-9


class HypergraphError(Exception):
    """Raised when a hypergraph, measure or link cannot be built."""


class Vertex(NamedTuple):
    """A vertex: dense index into the vertex table plus its display label."""

    index: int
    label: str


# ---------------------------------------------------------------------------
# Weighted hypergraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedHypergraph:
    """Vertex table plus a probability measure on k-multisets.

    Zero-weight faces are never stored. Hypergraphs with k >= 2 are the
    objects the toolkit reads and bounds; 1-uniform instances only appear as
    links of (k-1)-faces, where they are vertex measures. The constructor
    therefore accepts k >= 1 so that link() can return them, and the k >= 2
    requirement is enforced where hypergraphs enter: parse_hypergraph,
    parse_support and hoffman_bound.
    """

    k: int
    vertices: tuple[str, ...]
    faces: Mapping[Multiset, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "faces", MappingProxyType(dict(self.faces)))

        if self.k < 1:
            raise HypergraphError(f"Uniformity must be positive, got k={self.k}")
        if len(set(self.vertices)) != len(self.vertices):
            raise HypergraphError("Vertex labels must be unique.")

        n = len(self.vertices)
        total = 0.0
        for face, weight in self.faces.items():
            if face.size != self.k:
                raise HypergraphError(f"Face {face} has size {face.size}, k={self.k}")
            if weight <= 0:
                raise HypergraphError(f"Face {face} has non-positive weight {weight}")
            if face.entries and face.entries[-1][0] >= n:
                raise HypergraphError(f"Face {face} uses a vertex outside 0..{n - 1}")
            total += weight
        if abs(total - 1.0) > MEASURE_TOLERANCE:
            raise HypergraphError(f"Face weights sum to {total!r}, expected 1")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        k: int,
        vertices: Iterable[str],
        weights: Mapping[Multiset, float] | Iterable[tuple[Multiset, float]],
        normalize: bool = False,
    ) -> "WeightedHypergraph":
        """Merge duplicate faces, drop zero weights and optionally normalize.

        Raises:
            HypergraphError: On negative weights or an all-zero measure.
        """
        items = weights.items() if isinstance(weights, Mapping) else weights
        merged: dict[Multiset, float] = defaultdict(float)
        for face, weight in items:
            if weight < 0:
                raise HypergraphError(f"Negative weight {weight} on face {face}")
            merged[face] += float(weight)

        kept = {face: w for face, w in merged.items() if w > 0}
        if normalize:
            total = sum(kept.values())
            if total <= 0:
                raise HypergraphError("Cannot normalize a measure with zero mass.")
            kept = {face: w / total for face, w in kept.items()}
        return cls(k, tuple(vertices), kept)

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex(self, index: int) -> Vertex:
        return Vertex(index, self.vertices[index])

    def sorted_faces(self) -> list[tuple[Multiset, float]]:
        """Faces in lexicographic order of their expanded vertex lists."""
        return sorted(self.faces.items(), key=lambda item: item[0].sort_key())

    def index_of(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError as exc:
            raise HypergraphError(f"Unknown vertex label '{label}'") from exc


class FaceMeasure(NamedTuple):
    """The induced measure μ_i on i-multisets; its support is X^(i)."""

    level: int
    masses: Mapping[Multiset, float]

    @property
    def support(self) -> list[Multiset]:
        positive = (s for s, m in self.masses.items() if m > 0)
        return sorted(positive, key=Multiset.sort_key)

    def mass(self, sigma: Multiset) -> float:
        return self.masses.get(sigma, 0.0)

    def vertex_masses(self, num_vertices: int) -> list[float]:
        """Level-1 masses as a dense per-vertex list."""
        if self.level != 1:
            raise HypergraphError(f"Vertex masses need level 1, got {self.level}")
        dense = [0.0] * num_vertices
        for sigma, mass in self.masses.items():
            dense[sigma.entries[0][0]] += mass
        return dense


# ---------------------------------------------------------------------------
# Induced measures, links, skeleton
# ---------------------------------------------------------------------------


def induced_measure(X: WeightedHypergraph, i: int) -> FaceMeasure:
    """μ_i(σ) = Σ_τ μ(τ)·N(σ,τ)/C(k,i).

    Raises:
        HypergraphError: If i is outside 0..k.
    """
    if not 0 <= i <= X.k:
        raise HypergraphError(f"Level {i} outside 0..{X.k}")
    if i == 0:
        return FaceMeasure(0, {Multiset.empty(): 1.0})
    if i == X.k:
        return FaceMeasure(i, dict(X.faces))

    scale = comb(X.k, i)
    masses: dict[Multiset, float] = defaultdict(float)
    for tau, weight in X.faces.items():
        for sigma, count in tau.submultisets(i):
            masses[sigma] += weight * count / scale
    return FaceMeasure(i, dict(masses))


def link(X: WeightedHypergraph, sigma: Multiset) -> WeightedHypergraph:
    """The link X_σ: μ_σ(ρ) ∝ μ(σ⊎ρ)·N(σ, σ⊎ρ), on the same vertex table.

    Raises:
        HypergraphError: If σ has zero induced mass or |σ| >= k.
    """
    if sigma.size == 0:
        return X
    if sigma.size >= X.k:
        raise HypergraphError(f"Link of {sigma} would have uniformity < 1 (k={X.k})")

    weights: dict[Multiset, float] = defaultdict(float)
    for tau, weight in X.faces.items():
        count = submultiset_count(sigma, tau)
        if count:
            weights[tau - sigma] += weight * count
    if not weights:
        raise HypergraphError(f"Face {sigma} has zero induced mass; link undefined")
    return WeightedHypergraph.build(
        X.k - sigma.size, X.vertices, weights, normalize=True
    )


def links_at_level(X: WeightedHypergraph, i: int) -> dict[Multiset, WeightedHypergraph]:
    """Links of every i-face, built in one pass over the faces of X."""
    if not 0 <= i < X.k:
        raise HypergraphError(f"Links need a level in 0..{X.k - 1}, got {i}")
    if i == 0:
        return {Multiset.empty(): X}

    grouped: dict[Multiset, dict[Multiset, float]] = defaultdict(
        lambda: defaultdict(float)
    )
    for tau, weight in X.faces.items():
        for sigma, count in tau.submultisets(i):
            grouped[sigma][tau - sigma] += weight * count

    logger.debug("links_at_level: k=%d level=%d faces=%d", X.k, i, len(grouped))
    return {
        sigma: WeightedHypergraph.build(X.k - i, X.vertices, weights, normalize=True)
        for sigma, weights in grouped.items()
    }


def skeleton(X: WeightedHypergraph) -> WeightedHypergraph:
    """The weighted graph (X^(1), μ_2), kept on the full vertex table."""
    if X.k < 2:
        raise HypergraphError(f"Skeleton needs k >= 2, got k={X.k}")
    if X.k == 2:
        return X
    return WeightedHypergraph.build(2, X.vertices, induced_measure(X, 2).masses)


def relabel(
    X: WeightedHypergraph, mapping: Mapping[int, int], vertices: Iterable[str]
) -> WeightedHypergraph:
    """Push X forward along an injective vertex map into a new vertex table."""
    weights = {
        Multiset.of(mapping[v] for v in face.elements()): w
        for face, w in X.faces.items()
    }
    return WeightedHypergraph.build(X.k, vertices, weights)


def same_measure(
    X: WeightedHypergraph, Y: WeightedHypergraph, tolerance: float = MEASURE_TOLERANCE
) -> bool:
    """True when X and Y have equal uniformity, face sets and weights."""
    if X.k != Y.k or set(X.faces) != set(Y.faces):
        return False
    return all(abs(w - Y.faces[face]) <= tolerance for face, w in X.faces.items())


# ---------------------------------------------------------------------------
# k-partite hypergraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KPartiteSpec:
    """Parts V_1..V_k and a probability measure on V_1 × ... × V_k."""

    parts: tuple[tuple[str, ...], ...]
    faces: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))
        object.__setattr__(self, "faces", MappingProxyType(dict(self.faces)))

        if len(self.parts) < 2:
            raise HypergraphError(
                f"A k-partite hypergraph needs k >= 2 parts, got {len(self.parts)}"
            )
        total = 0.0
        for tup, weight in self.faces.items():
            if len(tup) != self.k:
                raise HypergraphError(f"Tuple {tup} does not have one entry per part")
            for part, index in zip(self.parts, tup):
                if not 0 <= index < len(part):
                    raise HypergraphError(f"Tuple {tup} indexes outside its part")
            if weight < 0:
                raise HypergraphError(f"Negative weight {weight} on tuple {tup}")
            total += weight
        if abs(total - 1.0) > MEASURE_TOLERANCE:
            raise HypergraphError(f"Tuple weights sum to {total!r}, expected 1")

    @property
    def k(self) -> int:
        return len(self.parts)

    def offsets(self) -> list[int]:
        """Index of the first vertex of each part in the disjoint union."""
        result, running = [], 0
        for part in self.parts:
            result.append(running)
            running += len(part)
        return result


def part_label(label: str, part: int) -> str:
    """Label of a part vertex inside the disjoint union (parts numbered from 1)."""
    return f"{label}@V{part + 1}"


def from_kpartite(spec: KPartiteSpec) -> WeightedHypergraph:
    """Realize a k-partite spec as a k-uniform hypergraph on the disjoint union."""
    offsets = spec.offsets()
    vertices = [
        part_label(label, a) for a, part in enumerate(spec.parts) for label in part
    ]
    weights = (
        (Multiset.of(offsets[a] + v for a, v in enumerate(tup)), w)
        for tup, w in spec.faces.items()
    )
    return WeightedHypergraph.build(spec.k, vertices, weights)
