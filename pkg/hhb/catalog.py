"""hhb.catalog — Named hypergraph families with known λ-vectors and bounds.

Every constructor returns a CatalogEntry: the hypergraph (and its k-partite
spec when there is one), the reference values a correct pipeline must
reproduce, and, for Mantel, the symmetry under which the sharper bound holds.

Families:
  - ekr            : p-biased intersecting families as a two-vertex graph
  - matching       : s-wise matchings, s-uniform on {0, 1}
  - frankl-biased  : p-biased Frankl triangles, 3-uniform on {0, 1}
  - frankl-uniform : Frankl triangles of 2k-subsets of [n]
  - kwise          : k-wise intersecting families, k-uniform on {0, 1}
  - mantel         : triangles of K_{m,m,m} as a 3-partite hypergraph
  - linear         : solutions of a linear system over F_q
  - two-vertex     : the general two-vertex graph with loops
  - complete       : uniform measure on the k-subsets of [n]
  - kneser         : the uniform Kneser graph KG(n, r)

Usage:
    entry = build_entry("frankl-biased", {"p": 0.6})
    all(check.passed for check in verify_entry(entry))
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from hhb.bound import (
    bound_from_lambdas,
    hoffman_bound,
    symmetric_hoffman_bound,
    tensor_bound,
)
from hhb.hypergraph import (
    KPartiteSpec,
    WeightedHypergraph,
    from_kpartite,
    relabel,
    same_measure,
    skeleton,
)
from hhb.multiset import Multiset
from hhb.spectral import SymmetrySpec, invariant_lambda_min, skeleton_operator

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
LARGE_TOLERANCE = 1e-6
SUBSET_CAP = 5000
MANTEL_SIZES = (2, 4, 8)
FRANKL_TENSOR_POWER = 400
LINEAR_PRIME_CAP = 13
LINEAR_POINT_CAP = 1_000_000


class CatalogError(Exception):
    """Raised for unknown families or parameters outside their range."""


class Reference(NamedTuple):
    """Known values; None marks a λ entry with no closed form."""

    lambdas: tuple[float | None, ...]
    bound: float | None
    bound_kind: str = "hoffman"
    tensor_n: int = 1
    unrestricted_bound: float | None = None
    quotient_spectrum: tuple[float, ...] = ()
    notes: str = ""


class Check(NamedTuple):
    name: str
    expected: float
    actual: float
    passed: bool


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict[str, Any]
    hypergraph: WeightedHypergraph
    reference: Reference
    kpartite: KPartiteSpec | None = None
    symmetry: SymmetrySpec | None = None
    involution: tuple[int, ...] | None = None
    tolerance: float = DEFAULT_TOLERANCE


def _hoffman_reference(lambdas: Sequence[float], **extra: Any) -> Reference:
    return Reference(tuple(lambdas), bound_from_lambdas(lambdas)[1], **extra)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CatalogError(message)


def _binary_hypergraph(
    k: int, weights: dict[tuple[int, ...], float]
) -> WeightedHypergraph:
    return WeightedHypergraph.build(
        k, ("0", "1"), {Multiset.of(face): w for face, w in weights.items()}
    )


def _subset_label(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(v) for v in subset) + "}"


# ---------------------------------------------------------------------------
# Two-vertex families
# ---------------------------------------------------------------------------


def ekr_biased(p: float) -> CatalogEntry:
    """Edge [1,0] of weight 2p and loop [0,0] of weight 1 − 2p; α = p."""
    _require(0 < p <= 0.5, f"ekr needs 0 < p <= 1/2, got p={p}")
    X = _binary_hypergraph(2, {(1, 0): 2 * p, (0, 0): max(0.0, 1 - 2 * p)})
    reference = Reference((-p / (1 - p),), p, notes="α = p, attained by {1}")
    return CatalogEntry("ekr", {"p": p}, X, reference)


def matching_hypergraph(s: int, p: float) -> CatalogEntry:
    """μ([1, 0^(s−1)]) = sp and μ([0^s]) = 1 − sp, so μ_1(1) = p.

    The minimum at level ℓ sits on the face [0^ℓ], whose link is again of
    this form with a smaller uniformity.
    """
    _require(s >= 2, f"matching needs s >= 2, got s={s}")
    _require(0 < p <= 1 / s, f"matching needs 0 < p <= 1/s, got p={p}")
    X = _binary_hypergraph(
        s, {(1,) + (0,) * (s - 1): s * p, (0,) * s: max(0.0, 1 - s * p)}
    )

    lambdas = []
    for level in range(s - 1):
        hit = s * p * math.comb(s - 1, level)
        q = hit / (hit + max(0.0, 1 - s * p) * math.comb(s, level))
        biased = q / (s - level)
        lambdas.append(-biased / (1 - biased))
    return CatalogEntry("matching", {"s": s, "p": p}, X, _hoffman_reference(lambdas))


def frankl_triangle_biased(p: float) -> CatalogEntry:
    """μ([1,1,0]) = 3p/2 and μ([0,0,0]) = 1 − 3p/2; tensor bound max(p, 1/2).

    For p < 1/2 the level-0 minimum is positive, so the reference is taken at
    a high tensor power where λ_0^n has vanished.
    """
    _require(0 < p <= 2 / 3, f"frankl-biased needs 0 < p <= 2/3, got p={p}")
    X = _binary_hypergraph(3, {(1, 1, 0): 1.5 * p, (0, 0, 0): max(0.0, 1 - 1.5 * p)})
    lambdas = ((1 - 2 * p) / (2 * (1 - p)), -1.0)
    power = 1 if p >= 0.5 else FRANKL_TENSOR_POWER
    reference = Reference(
        lambdas,
        max(p, 0.5),
        bound_kind="tensor",
        tensor_n=power,
        notes="faces with repeated vertices forbid slightly more than distinct triples",
    )
    return CatalogEntry("frankl-biased", {"p": p}, X, reference)


def kwise_intersecting(k: int, p: float) -> CatalogEntry:
    """μ([0^k]) = 1 − kp/(k−1) and μ([0, 1^(k−1)]) = kp/(k−1).

    Levels ℓ >= 1 attain −1/(k−1−ℓ) on the faces [1^ℓ]; the dictatorship {1}
    is independent of measure p.
    """
    _require(k >= 2, f"kwise needs k >= 2, got k={k}")
    _require(0 < p <= (k - 1) / k, f"kwise needs 0 < p <= (k-1)/k, got p={p}")
    share = k * p / (k - 1)
    X = _binary_hypergraph(
        k, {(0,) * k: max(0.0, 1 - share), (0,) + (1,) * (k - 1): share}
    )
    lambdas = [((k - 2) / (k - 1) - p) / (1 - p)]
    lambdas += [-1 / (k - 1 - level) for level in range(1, k - 1)]
    return CatalogEntry("kwise", {"k": k, "p": p}, X, _hoffman_reference(lambdas))


def two_vertex_graph(p1: float, p2: float, p3: float) -> CatalogEntry:
    """μ([1,1]) = p1, μ([1,2]) = p2, μ([2,2]) = p3 on the vertices 1 and 2."""
    weights = (p1, p2, p3)
    _require(min(weights) >= 0, f"two-vertex needs non-negative weights, got {weights}")
    _require(
        abs(math.fsum(weights) - 1) <= DEFAULT_TOLERANCE,
        f"two-vertex weights must sum to 1, got {math.fsum(weights)!r}",
    )
    _require(
        p1 + p2 / 2 > 0 and p3 + p2 / 2 > 0, "two-vertex needs both vertices in a face"
    )
    X = WeightedHypergraph.build(
        2,
        ("1", "2"),
        {Multiset.of([0, 0]): p1, Multiset.of([0, 1]): p2, Multiset.of([1, 1]): p3},
    )
    lambdas = (1 - 2 * p2 / (1 - (p1 - p3) ** 2),)
    return CatalogEntry(
        "two-vertex", {"p1": p1, "p2": p2, "p3": p3}, X, _hoffman_reference(lambdas)
    )


# ---------------------------------------------------------------------------
# Set systems
# ---------------------------------------------------------------------------


def frankl_triangle_uniform(n: int, k: int) -> CatalogEntry:
    """Triangles {D∪E, D∪F, E∪F} of 2k-subsets of [n] with D, E, F disjoint.

    Every vertex link is a perfect matching, so λ_1 = −1; the bound 2k/n
    equals C(n−1, 2k−1)/C(n, 2k).
    """
    _require(k >= 1, f"frankl-uniform needs k >= 1, got k={k}")
    _require(
        2 * k <= n <= 4 * k - 1, f"frankl-uniform needs 2k <= n <= 4k-1, got n={n}"
    )
    _require(3 * k <= n, f"frankl-uniform has no triangles when n < 3k (n={n}, k={k})")
    size = math.comb(n, 2 * k)
    _require(
        size <= SUBSET_CAP, f"frankl-uniform has {size} vertices (cap {SUBSET_CAP})"
    )

    subsets = list(combinations(range(n), 2 * k))
    index = {s: i for i, s in enumerate(subsets)}
    triangles = set()
    for D in combinations(range(n), k):
        rest = [v for v in range(n) if v not in D]
        for E in combinations(rest, k):
            others = [v for v in rest if v not in E]
            for F in combinations(others, k):
                triangles.add(
                    Multiset.of(
                        index[tuple(sorted(a + b))] for a, b in ((D, E), (D, F), (E, F))
                    )
                )
    weight = 1.0 / len(triangles)
    X = WeightedHypergraph.build(
        3, [_subset_label(s) for s in subsets], {t: weight for t in triangles}
    )
    lambdas = ((n - 4 * k) / (2 * (n - 2 * k)), -1.0)
    logger.debug("frankl_triangle_uniform: vertices=%d faces=%d", size, len(triangles))
    return CatalogEntry(
        "frankl-uniform",
        {"n": n, "k": k},
        X,
        _hoffman_reference(lambdas),
        tolerance=LARGE_TOLERANCE if size > 100 else DEFAULT_TOLERANCE,
    )


def complete_hypergraph(n: int, k: int) -> CatalogEntry:
    """Uniform measure on the k-subsets of [n]; λ_i = −1/(n−1−i), bound (k−1)/n."""
    _require(k >= 2, f"complete needs k >= 2, got k={k}")
    _require(n > k, f"complete needs n > k, got n={n}, k={k}")
    count = math.comb(n, k)
    _require(count <= SUBSET_CAP, f"complete has {count} faces (cap {SUBSET_CAP})")
    X = WeightedHypergraph.build(
        k,
        [str(v) for v in range(n)],
        {Multiset.of(face): 1.0 / count for face in combinations(range(n), k)},
    )
    lambdas = [-1 / (n - 1 - i) for i in range(k - 1)]
    return CatalogEntry("complete", {"n": n, "k": k}, X, _hoffman_reference(lambdas))


def kneser(n: int, r: int) -> CatalogEntry:
    """Disjoint pairs of r-subsets of [n], uniformly; λ_0 = −r/(n−r), bound r/n."""
    _require(r >= 1 and n >= 2 * r, f"kneser needs n >= 2r >= 2, got n={n}, r={r}")
    size = math.comb(n, r)
    _require(size <= SUBSET_CAP, f"kneser has {size} vertices (cap {SUBSET_CAP})")
    subsets = list(combinations(range(n), r))
    edges = [
        Multiset.of([i, j])
        for i, j in combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    X = WeightedHypergraph.build(
        2, [_subset_label(s) for s in subsets], {e: 1.0 / len(edges) for e in edges}
    )
    return CatalogEntry(
        "kneser",
        {"n": n, "r": r},
        X,
        Reference((-r / (n - r),), r / n, notes="EKR: C(n-1, r-1)/C(n, r)"),
        tolerance=LARGE_TOLERANCE if size > 100 else DEFAULT_TOLERANCE,
    )


# ---------------------------------------------------------------------------
# Mantel
# ---------------------------------------------------------------------------


def mantel_spec(m: int) -> KPartiteSpec:
    """Parts [m]×[m] labelled "i-j"; tuples ((i,j), (j,k), (k,i)) uniformly."""
    labels = tuple(f"{i}-{j}" for i in range(1, m + 1) for j in range(1, m + 1))
    weight = 1.0 / m**3
    faces = {
        (i * m + j, j * m + k, k * m + i): weight
        for i in range(m)
        for j in range(m)
        for k in range(m)
    }
    return KPartiteSpec((labels, labels, labels), faces)


def mantel_generators(m: int) -> SymmetrySpec:
    """Part rotation and the transposition V_1 ↔ V_2 (V_3 transposed in place)."""
    cell = m * m

    def transpose(v: int) -> int:
        return (v % m) * m + v // m

    rotation = tuple(((a + 1) % 3) * cell + v for a in range(3) for v in range(cell))
    swap_part = (1, 0, 2)
    swap = tuple(
        swap_part[a] * cell + transpose(v) for a in range(3) for v in range(cell)
    )
    return SymmetrySpec((rotation, swap))


def mantel(m: int) -> CatalogEntry:
    """Triangle-free graphs on m vertices as symmetric cross-independent sets.

    Unrestricted λ = (−1/2, −1) gives 2/3; on functions invariant under the
    two generators the skeleton quotient has spectrum {1, 1/2, 0}, which
    gives 1/2 for symmetric independent sets.

    Raises:
        CatalogError: If m is not 2, 4 or 8, or a generator fails to map
            faces to faces.
    """
    _require(m in MANTEL_SIZES, f"mantel supports m in {MANTEL_SIZES}, got m={m}")
    spec = mantel_spec(m)
    X = from_kpartite(spec)
    symmetry = mantel_generators(m)
    for g, perm in enumerate(symmetry.generators):
        image = relabel(X, dict(enumerate(perm)), X.vertices)
        _require(
            same_measure(X, image), f"mantel generator {g} does not preserve faces"
        )

    involution = tuple((v % m) * m + v // m for v in range(m * m))
    reference = Reference(
        (-0.5, -1.0),
        0.5,
        bound_kind="symmetric",
        unrestricted_bound=2 / 3,
        quotient_spectrum=(1.0, 0.5, 0.0),
        notes="conditional on graphs, i.e. sets closed under (i,j) -> (j,i)",
    )
    return CatalogEntry(
        "mantel",
        {"m": m},
        X,
        reference,
        kpartite=spec,
        symmetry=symmetry,
        involution=involution,
    )


# ---------------------------------------------------------------------------
# Linear systems
# ---------------------------------------------------------------------------


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def parse_equation(text: str) -> tuple[tuple[int, ...], int]:
    """'1,1,-2=0' -> ((1, 1, -2), 0).

    Raises:
        CatalogError: If the text is not coefficients '=' constant.
    """
    try:
        left, right = text.split("=")
        return tuple(int(c) for c in left.split(",")), int(right)
    except ValueError as exc:
        raise CatalogError(f"Equation must look like '1,1,1=0', got '{text}'") from exc


def linear_system_hypergraph(
    q: int,
    coefficients: Sequence[Sequence[int]],
    constants: Sequence[int],
    exclude_degenerate: bool = False,
) -> CatalogEntry:
    """Multisets of solutions x ∈ F_q^m of A x = b, weighted by ordered count.

    With exclude_degenerate, solutions supported on one vertex are dropped and
    the rest renormalized.
    """
    _require(
        _is_prime(q) and q <= LINEAR_PRIME_CAP,
        f"linear needs a prime q <= {LINEAR_PRIME_CAP}, got {q}",
    )
    _require(len(coefficients) >= 1, "linear needs at least one equation")
    _require(len(coefficients) == len(constants), "one constant per equation")
    m = len(coefficients[0])
    _require(m >= 2, f"linear needs at least 2 variables, got {m}")
    _require(all(len(row) == m for row in coefficients), "equations differ in length")
    _require(q**m <= LINEAR_POINT_CAP, f"q^m = {q**m} exceeds {LINEAR_POINT_CAP}")

    A = np.asarray(coefficients, dtype=np.int64)
    b = np.asarray(constants, dtype=np.int64)
    points = np.indices((q,) * m).reshape(m, -1).T
    solutions = points[((points @ A.T - b) % q == 0).all(axis=1)]

    counts = Counter(Multiset.of(row.tolist()) for row in solutions)
    if exclude_degenerate:
        counts = Counter(
            {face: c for face, c in counts.items() if len(face.entries) > 1}
        )
    _require(bool(counts), "linear system has no admissible solutions")

    total = sum(counts.values())
    X = WeightedHypergraph.build(
        m, [str(v) for v in range(q)], {face: c / total for face, c in counts.items()}
    )
    reference = Reference(
        (None,) * (m - 1),
        None,
        notes="degenerate solutions excluded" if exclude_degenerate else "",
    )
    parameters = {
        "q": q,
        "equations": [list(row) + [c] for row, c in zip(coefficients, constants)],
        "exclude_degenerate": exclude_degenerate,
    }
    return CatalogEntry("linear", parameters, X, reference)


# ---------------------------------------------------------------------------
# Registry and verification
# ---------------------------------------------------------------------------


class Recipe(NamedTuple):
    builder: Callable[..., CatalogEntry]
    parameters: tuple[str, ...]


CATALOG: dict[str, Recipe] = {
    "ekr": Recipe(ekr_biased, ("p",)),
    "matching": Recipe(matching_hypergraph, ("s", "p")),
    "frankl-biased": Recipe(frankl_triangle_biased, ("p",)),
    "frankl-uniform": Recipe(frankl_triangle_uniform, ("n", "k")),
    "kwise": Recipe(kwise_intersecting, ("k", "p")),
    "mantel": Recipe(mantel, ("m",)),
    "linear": Recipe(linear_system_hypergraph, ("q", "coefficients", "constants")),
    "two-vertex": Recipe(two_vertex_graph, ("p1", "p2", "p3")),
    "complete": Recipe(complete_hypergraph, ("n", "k")),
    "kneser": Recipe(kneser, ("n", "r")),
}


def build_entry(name: str, parameters: dict[str, Any]) -> CatalogEntry:
    """Build a named family; extra keys are passed through when accepted.

    Raises:
        CatalogError: On an unknown name or a missing parameter.
    """
    if name not in CATALOG:
        raise CatalogError(f"Unknown family '{name}'. Known: {', '.join(CATALOG)}")
    recipe = CATALOG[name]
    missing = [p for p in recipe.parameters if parameters.get(p) is None]
    if missing:
        raise CatalogError(f"'{name}' needs parameter(s): {', '.join(missing)}")
    arguments = [parameters[p] for p in recipe.parameters]
    if name == "linear":
        return recipe.builder(
            *arguments, exclude_degenerate=bool(parameters.get("exclude_degenerate"))
        )
    return recipe.builder(*arguments)


def _check(name: str, expected: float, actual: float, tolerance: float) -> Check:
    return Check(name, expected, actual, abs(expected - actual) <= tolerance)


def verify_entry(entry: CatalogEntry) -> list[Check]:
    """Recompute the entry through the spectral pipeline and compare."""
    reference, tol = entry.reference, entry.tolerance
    X = entry.hypergraph
    unrestricted = hoffman_bound(X)

    checks = [
        _check(f"lambda_{i}", expected, actual, tol)
        for i, (expected, actual) in enumerate(
            zip(reference.lambdas, unrestricted.lambdas)
        )
        if expected is not None
    ]

    if reference.bound_kind == "tensor":
        report = tensor_bound(X, reference.tensor_n)
    elif reference.bound_kind == "symmetric":
        report = symmetric_hoffman_bound(X, entry.symmetry)
    else:
        report = unrestricted
    if reference.bound is not None:
        name = f"{reference.bound_kind}_bound"
        checks.append(_check(name, reference.bound, report.bound, tol))
    if reference.unrestricted_bound is not None:
        checks.append(
            _check(
                "unrestricted_bound",
                reference.unrestricted_bound,
                unrestricted.bound,
                tol,
            )
        )

    if reference.quotient_spectrum:
        quotient = invariant_lambda_min(skeleton_operator(skeleton(X)), entry.symmetry)
        rounded = {round(float(v), 9) for v in quotient.eigenvalues}
        distinct = sorted(rounded, reverse=True)
        for expected, actual in zip(reference.quotient_spectrum, distinct):
            checks.append(_check("quotient_eigenvalue", expected, actual, tol))
        checks.append(
            _check(
                "quotient_distinct_count",
                len(reference.quotient_spectrum),
                len(distinct),
                0,
            )
        )

    logger.debug(
        "verify_entry: %s checks=%d failed=%d",
        entry.name,
        len(checks),
        sum(not c.passed for c in checks),
    )
    return checks
