"""hhb.fileformat — JSON documents for hypergraphs, k-partite specs and symmetries.

Handles parsing, validation and canonical serialization of every document the
toolkit reads or writes:
  - hypergraph : {"k", "vertices", "faces": [{"m": [...], "w": x}]}
  - k-partite  : {"parts": [[...], ...], "faces": [{"t": [...], "w": x}]}
  - symmetry   : {"generators": [[image of 0, image of 1, ...], ...]}
  - support    : hypergraph document whose "w" fields are optional, plus "nu"

Canonical hypergraph documents sort faces by "m" and print weights with 17
significant digits, so parse -> serialize -> parse is the identity.
"""

import json
import math
from pathlib import Path
from typing import Any, NamedTuple

from hhb.hypergraph import (
    MEASURE_TOLERANCE,
    HypergraphError,
    KPartiteSpec,
    WeightedHypergraph,
)
from hhb.multiset import Multiset
from hhb.spectral import SymmetrySpec


class FormatError(HypergraphError):
    """Raised when a document is malformed or fails validation."""


class SupportDocument(NamedTuple):
    """Allowed faces and target vertex marginal for the weight optimizer."""

    k: int
    vertices: tuple[str, ...]
    support: list[Multiset]
    nu: list[float]


# ---------------------------------------------------------------------------
# JSON text with fixed float precision
# ---------------------------------------------------------------------------


def format_float(value: float) -> str:
    """17 significant digits; non-finite values become JSON null."""
    if not math.isfinite(value):
        return "null"
    text = f"{value:.17g}"
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def to_json_text(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """json.dumps-like rendering that prints floats with 17 significant digits.

    Lists of scalars stay on one line.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(
            f"{pad}{json.dumps(str(key), ensure_ascii=False)}: "
            f"{to_json_text(value, indent, _level + 1)}"
            for key, value in obj.items()
        )
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(item, (dict, list, tuple)) for item in obj):
            return "[" + ", ".join(to_json_text(item) for item in obj) + "]"
        body = ",\n".join(pad + to_json_text(item, indent, _level + 1) for item in obj)
        return "[\n" + body + "\n" + end + "]"
    raise TypeError(f"Cannot render {type(obj).__name__} as JSON")


# ---------------------------------------------------------------------------
# Field helpers
# ---------------------------------------------------------------------------


def _load(text: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"Invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise FormatError("Top-level JSON value must be an object.")
    return document


def _require(document: dict, key: str) -> Any:
    if key not in document:
        raise FormatError(f"Missing field '{key}'")
    return document[key]


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def _as_weight(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{what} must be a number, got {value!r}")
    weight = float(value)
    if not math.isfinite(weight):
        raise FormatError(f"{what} must be finite, got {value!r}")
    if weight < 0:
        raise FormatError(f"{what} is negative: {weight!r}")
    return weight


def _as_labels(value: Any, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError(f"{what} must be an array of strings")
    if len(set(value)) != len(value):
        raise FormatError(f"{what} contains duplicate labels")
    return tuple(value)


def _check_sum(total: float) -> None:
    if abs(total - 1.0) > MEASURE_TOLERANCE:
        raise FormatError(f"Weights sum to {total!r}, expected 1 within 1e-9")


def _parse_faces(document: dict, k: int, n: int, weighted: bool) -> list:
    faces = _require(document, "faces")
    if not isinstance(faces, list):
        raise FormatError("'faces' must be an array")
    parsed = []
    for position, entry in enumerate(faces):
        if not isinstance(entry, dict):
            raise FormatError(f"faces[{position}] must be an object")
        members = _require(entry, "m")
        if not isinstance(members, list) or len(members) != k:
            raise FormatError(f"faces[{position}].m must list exactly k={k} indices")
        indices = [_as_int(v, f"faces[{position}].m entry") for v in members]
        if any(not 0 <= v < n for v in indices):
            raise FormatError(f"faces[{position}].m indexes outside 0..{n - 1}")
        weight = 0.0
        if weighted:
            weight = _as_weight(_require(entry, "w"), f"faces[{position}].w")
        parsed.append((Multiset.of(indices), weight))
    return parsed


# ---------------------------------------------------------------------------
# Hypergraph documents
# ---------------------------------------------------------------------------


def parse_hypergraph(text: str) -> WeightedHypergraph:
    """Parse and canonicalize a hypergraph document.

    Duplicate faces are merged by summing weights; zero-weight faces dropped.

    Raises:
        FormatError: On malformed syntax, k < 2, negative weights or a weight
            sum deviating from 1 by more than 1e-9.
    """
    document = _load(text)
    k = _as_int(_require(document, "k"), "'k'")
    if k < 2:
        raise FormatError(f"Uniformity must be at least 2, got k={k}")
    vertices = _as_labels(_require(document, "vertices"), "'vertices'")
    faces = _parse_faces(document, k, len(vertices), weighted=True)
    _check_sum(math.fsum(w for _, w in faces))
    try:
        return WeightedHypergraph.build(k, vertices, faces)
    except HypergraphError as exc:
        raise FormatError(str(exc)) from exc


def serialize_hypergraph(X: WeightedHypergraph) -> str:
    """Canonical document: faces sorted by "m", weights at 17 digits."""
    document = {
        "k": X.k,
        "vertices": list(X.vertices),
        "faces": [{"m": list(face.elements()), "w": w} for face, w in X.sorted_faces()],
    }
    return to_json_text(document) + "\n"


def load_hypergraph(path: Path) -> WeightedHypergraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"Cannot read {path}: {exc}") from exc
    return parse_hypergraph(text)


def dump_hypergraph(X: WeightedHypergraph, path: Path) -> None:
    Path(path).write_text(serialize_hypergraph(X), encoding="utf-8")


# ---------------------------------------------------------------------------
# k-partite documents
# ---------------------------------------------------------------------------


def parse_kpartite(text: str) -> KPartiteSpec:
    """Parse a k-partite document; duplicate tuples are merged."""
    document = _load(text)
    raw_parts = _require(document, "parts")
    if not isinstance(raw_parts, list):
        raise FormatError("'parts' must be an array of arrays")
    parts = tuple(_as_labels(p, f"parts[{a}]") for a, p in enumerate(raw_parts))

    raw_faces = _require(document, "faces")
    if not isinstance(raw_faces, list):
        raise FormatError("'faces' must be an array")
    faces: dict[tuple[int, ...], float] = {}
    for position, entry in enumerate(raw_faces):
        if not isinstance(entry, dict):
            raise FormatError(f"faces[{position}] must be an object")
        tup = _require(entry, "t")
        if not isinstance(tup, list) or len(tup) != len(parts):
            raise FormatError(f"faces[{position}].t needs one index per part")
        key = tuple(_as_int(v, f"faces[{position}].t entry") for v in tup)
        weight = _as_weight(_require(entry, "w"), f"faces[{position}].w")
        if weight > 0:
            faces[key] = faces.get(key, 0.0) + weight
    _check_sum(math.fsum(faces.values()))
    try:
        return KPartiteSpec(parts, faces)
    except HypergraphError as exc:
        raise FormatError(str(exc)) from exc


def serialize_kpartite(spec: KPartiteSpec) -> str:
    document = {
        "parts": [list(p) for p in spec.parts],
        "faces": [{"t": list(t), "w": w} for t, w in sorted(spec.faces.items())],
    }
    return to_json_text(document) + "\n"


# ---------------------------------------------------------------------------
# Symmetry documents
# ---------------------------------------------------------------------------


def parse_symmetry(text: str, num_vertices: int | None = None) -> SymmetrySpec:
    """Parse generator images; each must be a permutation of 0..n-1."""
    document = _load(text)
    raw = _require(document, "generators")
    if not isinstance(raw, list):
        raise FormatError("'generators' must be an array")
    generators = []
    for position, images in enumerate(raw):
        if not isinstance(images, list):
            raise FormatError(f"generators[{position}] must be an array")
        perm = tuple(_as_int(v, f"generators[{position}] entry") for v in images)
        size = len(perm) if num_vertices is None else num_vertices
        if sorted(perm) != list(range(size)):
            raise FormatError(
                f"generators[{position}] is not a permutation of 0..{size - 1}"
            )
        generators.append(perm)
    return SymmetrySpec(tuple(generators))


def serialize_symmetry(sym: SymmetrySpec) -> str:
    return to_json_text({"generators": [list(g) for g in sym.generators]}) + "\n"


# ---------------------------------------------------------------------------
# Optimizer support documents
# ---------------------------------------------------------------------------


def parse_support(text: str) -> SupportDocument:
    """Parse a support document; "w" fields are ignored, "nu" is required."""
    document = _load(text)
    k = _as_int(_require(document, "k"), "'k'")
    if k < 2:
        raise FormatError(f"Uniformity must be at least 2, got k={k}")
    vertices = _as_labels(_require(document, "vertices"), "'vertices'")
    faces = _parse_faces(document, k, len(vertices), weighted=False)
    support = sorted({face for face, _ in faces}, key=Multiset.sort_key)
    if not support:
        raise FormatError("Support must contain at least one face")

    raw_nu = _require(document, "nu")
    if not isinstance(raw_nu, list) or len(raw_nu) != len(vertices):
        raise FormatError("'nu' must give one mass per vertex")
    nu = [_as_weight(v, "'nu' entry") for v in raw_nu]
    _check_sum(math.fsum(nu))
    return SupportDocument(k, vertices, support, nu)


def serialize_support(
    vertices: tuple[str, ...], support: list[Multiset], nu: list[float]
) -> str:
    k = support[0].size if support else 0
    document = {
        "k": k,
        "vertices": list(vertices),
        "faces": [
            {"m": list(f.elements())} for f in sorted(support, key=Multiset.sort_key)
        ],
        "nu": list(nu),
    }
    return to_json_text(document) + "\n"
