"""hhb.spectral — Normalized adjacency operators and their smallest eigenvalues.

The skeleton operator T_X is the Markov operator of the weighted graph
(X^(1), μ_2). It is self-adjoint in L²(μ_1), so its spectrum is computed from
the symmetric matrix D^{1/2} T D^{-1/2} with a dense symmetric eigensolver.

Per-level minima λ_i(X) = min over i-faces σ of λ(S(X_σ)) are evaluated link
by link in a thread pool; the reduction is deterministic (lexicographically
least witness among ties).

Usage:
    op = skeleton_operator(skeleton(X))
    spectrum(op).lambda_min
    lambda_level(X, 1)            # LevelMinimum(value, witness)
    invariant_lambda_min(op, SymmetrySpec(((1, 0, 2),)))
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import networkx as nx
import numpy as np
import scipy.linalg

from hhb.config import max_workers
from hhb.hypergraph import WeightedHypergraph, induced_measure, links_at_level, skeleton
from hhb.multiset import Multiset

logger = logging.getLogger(__name__)

SUPPORT_EPSILON = 1e-12  # μ_1 entries below this are outside the support
RESIDUAL_TOLERANCE = 1e-8
TIE_TOLERANCE = 1e-12
PRESERVATION_TOLERANCE = 1e-9


class SpectralError(Exception):
    """Raised when an operator or a level minimum cannot be computed."""


class SymmetryError(SpectralError):
    """Raised when a generator does not preserve μ_1 and μ_2."""

    def __init__(self, message: str, generator: int, pair: tuple[int, int]) -> None:
        super().__init__(message)
        self.generator = generator
        self.pair = pair


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonOperator:
    """Matrix of T_X restricted to the vertices of positive μ_1 mass."""

    support: tuple[int, ...]
    mu1: np.ndarray
    matrix: np.ndarray
    num_vertices: int

    @property
    def dimension(self) -> int:
        return len(self.support)

    def symmetrized(self) -> np.ndarray:
        """D^{1/2} T D^{-1/2}, symmetric because T is μ_1-self-adjoint."""
        root = np.sqrt(self.mu1)
        sym = (root[:, None] * self.matrix) / root[None, :]
        return (sym + sym.T) / 2.0


class Spectrum(NamedTuple):
    """Full real spectrum, eigenvalues sorted in descending order."""

    eigenvalues: np.ndarray
    lambda_max: float
    lambda_min: float
    residual: float


class LevelMinimum(NamedTuple):
    """λ_i(X) together with the i-face whose link attains it."""

    level: int
    value: float
    witness: Multiset


class InvariantMinimum(NamedTuple):
    """Smallest eigenvalue of T on functions constant on vertex orbits."""

    value: float
    orbit_count: int
    eigenvalues: np.ndarray
    residual: float


@dataclass(frozen=True)
class SymmetrySpec:
    """Vertex permutations generating the group an independent set respects."""

    generators: tuple[tuple[int, ...], ...] = ()


# ---------------------------------------------------------------------------
# Operator and spectrum
# ---------------------------------------------------------------------------


def skeleton_operator(G: WeightedHypergraph) -> SkeletonOperator:
    """T(u,u) = μ_2([u,u])/μ_1(u), T(u,v) = μ_2([u,v])/(2μ_1(u)) for u ≠ v.

    Raises:
        SpectralError: If G is not 2-uniform or has no vertex of positive mass.
    """
    if G.k != 2:
        raise SpectralError(
            f"Skeleton operator needs a 2-uniform hypergraph, got k={G.k}"
        )

    mu1_full = induced_measure(G, 1).vertex_masses(G.num_vertices)
    support = tuple(v for v, m in enumerate(mu1_full) if m > SUPPORT_EPSILON)
    if not support:
        raise SpectralError("Skeleton has empty support.")

    position = {v: p for p, v in enumerate(support)}
    mu1 = np.array([mu1_full[v] for v in support])
    matrix = np.zeros((len(support), len(support)))
    for face, weight in G.faces.items():
        elements = face.elements()
        u, v = elements
        if u not in position or v not in position:
            continue
        pu, pv = position[u], position[v]
        if pu == pv:
            matrix[pu, pu] += weight / mu1[pu]
        else:
            matrix[pu, pv] += weight / (2.0 * mu1[pu])
            matrix[pv, pu] += weight / (2.0 * mu1[pv])
    return SkeletonOperator(support, mu1, matrix, G.num_vertices)


def spectrum(op: SkeletonOperator) -> Spectrum:
    """All eigenvalues of T via a dense symmetric eigensolve of the similar matrix."""
    sym = op.symmetrized()
    values, vectors = scipy.linalg.eigh(sym)
    residual = float(np.max(np.linalg.norm(sym @ vectors - vectors * values, axis=0)))
    if residual > RESIDUAL_TOLERANCE:
        logger.warning("spectrum: eigenpair residual %.3e above tolerance", residual)
    descending = values[::-1].copy()
    return Spectrum(descending, float(descending[0]), float(descending[-1]), residual)


def smallest_eigenvalue(G: WeightedHypergraph) -> float:
    """λ(S(G)): smallest eigenvalue of the skeleton operator of G."""
    return spectrum(skeleton_operator(skeleton(G))).lambda_min


# ---------------------------------------------------------------------------
# Level minima
# ---------------------------------------------------------------------------


def _reduce_minimum(level: int, results: list[tuple[Multiset, float]]) -> LevelMinimum:
    """Minimum value; ties within TIE_TOLERANCE go to the least face."""
    best = min(value for _, value in results)
    for face, value in results:
        if value <= best + TIE_TOLERANCE:
            return LevelMinimum(level, best, face)
    raise AssertionError("unreachable")


def lambda_level(X: WeightedHypergraph, i: int) -> LevelMinimum:
    """λ_i(X) = min over σ ∈ X^(i) of λ(S(X_σ)), with a witness face.

    Raises:
        SpectralError: If i is outside 0..k-2.
    """
    if not 0 <= i <= X.k - 2:
        raise SpectralError(f"Level {i} outside 0..{X.k - 2} for k={X.k}")

    links = links_at_level(X, i)
    faces = sorted(links, key=Multiset.sort_key)

    if len(faces) == 1:
        values = [smallest_eigenvalue(links[faces[0]])]
    else:
        with ThreadPoolExecutor(max_workers=max_workers()) as pool:
            values = list(pool.map(lambda s: smallest_eigenvalue(links[s]), faces))

    result = _reduce_minimum(i, list(zip(faces, values)))
    logger.debug(
        "lambda_level: level=%d faces=%d value=%.12g witness=%s",
        i,
        len(faces),
        result.value,
        result.witness,
    )
    return result


def all_level_minima(X: WeightedHypergraph) -> list[LevelMinimum]:
    """λ_0 .. λ_{k-2}."""
    return [lambda_level(X, i) for i in range(X.k - 1)]


# ---------------------------------------------------------------------------
# Symmetry-restricted minimum
# ---------------------------------------------------------------------------


def check_symmetry(op: SkeletonOperator, sym: SymmetrySpec) -> None:
    """Verify each generator preserves μ_1 pointwise and μ_2 on every pair.

    Raises:
        SymmetryError: With the first violating vertex pair.
    """
    num_vertices = op.num_vertices
    position = {v: p for p, v in enumerate(op.support)}
    ordered = op.mu1[:, None] * op.matrix  # ordered pair masses μ̃_2(u, v)

    for g, perm in enumerate(sym.generators):
        if sorted(perm) != list(range(num_vertices)):
            raise SymmetryError(
                f"Generator {g} is not a permutation of 0..{num_vertices - 1}",
                g,
                (-1, -1),
            )
        images = []
        for v in op.support:
            if perm[v] not in position:
                raise SymmetryError(
                    f"Generator {g} maps vertex {v} outside the support", g, (v, v)
                )
            images.append(position[perm[v]])
        images = np.array(images)

        mass_gap = np.abs(op.mu1[images] - op.mu1)
        if mass_gap.max() > PRESERVATION_TOLERANCE:
            p = int(mass_gap.argmax())
            v = op.support[p]
            raise SymmetryError(
                f"Generator {g} changes μ_1 at vertex {v} by {mass_gap[p]:.3e}",
                g,
                (v, v),
            )

        pair_gap = np.abs(ordered[np.ix_(images, images)] - ordered)
        if pair_gap.max() > PRESERVATION_TOLERANCE:
            pu, pv = np.unravel_index(int(pair_gap.argmax()), pair_gap.shape)
            u, v = op.support[pu], op.support[pv]
            raise SymmetryError(
                f"Generator {g} changes μ_2 on [{u},{v}] by {pair_gap[pu, pv]:.3e}",
                g,
                (u, v),
            )


def vertex_orbits(op: SkeletonOperator, sym: SymmetrySpec) -> list[list[int]]:
    """Orbits (as operator positions) of the group generated by sym."""
    position = {v: p for p, v in enumerate(op.support)}
    graph = nx.Graph()
    graph.add_nodes_from(range(op.dimension))
    for perm in sym.generators:
        graph.add_edges_from((position[v], position[perm[v]]) for v in op.support)
    components = (sorted(c) for c in nx.connected_components(graph))
    return sorted(components, key=lambda c: c[0])


def invariant_lambda_min(op: SkeletonOperator, sym: SymmetrySpec) -> InvariantMinimum:
    """Smallest eigenvalue of T restricted to orbit-constant functions.

    The quotient is T_orb(O, O') = Σ_{v∈O'} T(u, v) for any u ∈ O.

    Raises:
        SymmetryError: If a generator fails the preservation check.
        SpectralError: If quotient rows disagree within an orbit.
    """
    check_symmetry(op, sym)

    orbits = vertex_orbits(op, sym)
    member = np.zeros((op.dimension, len(orbits)))
    for o, orbit in enumerate(orbits):
        member[orbit, o] = 1.0
    row_sums = op.matrix @ member  # row u, column O': Σ_{v∈O'} T(u, v)

    quotient = np.zeros((len(orbits), len(orbits)))
    for o, orbit in enumerate(orbits):
        rows = row_sums[orbit]
        spread = float(np.max(np.abs(rows - rows[0])))
        if spread > RESIDUAL_TOLERANCE:
            raise SpectralError(
                f"Quotient rows disagree within orbit {o} by {spread:.3e}"
            )
        quotient[o] = rows[0]

    residual = float(np.max(np.abs(quotient.sum(axis=1) - 1.0)))
    masses = member.T @ op.mu1
    root = np.sqrt(masses)
    sym_quotient = (root[:, None] * quotient) / root[None, :]
    values = scipy.linalg.eigvalsh((sym_quotient + sym_quotient.T) / 2.0)[::-1]

    logger.debug("invariant_lambda_min: orbits=%d min=%.12g", len(orbits), values[-1])
    return InvariantMinimum(float(values[-1]), len(orbits), values.copy(), residual)
