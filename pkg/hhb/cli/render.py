"""hhb.cli.render — Human-readable reports, 9 decimals, strings from locales/."""

from typing import Iterable, Sequence

import i18n

from hhb.bound import BoundReport
from hhb.catalog import CatalogEntry, Check
from hhb.hypergraph import KPartiteSpec, WeightedHypergraph, induced_measure
from hhb.multiset import Multiset
from hhb.optimizer import OptimizerResult
from hhb.oracle import IndependenceResult
from hhb.spectral import LevelMinimum


def number(value: float) -> str:
    return f"{value:.9f}"


def face_labels(X: WeightedHypergraph, face: Multiset) -> str:
    return "[" + ",".join(X.vertices[v] for v in face.elements()) + "]"


def set_labels(X: WeightedHypergraph, vertices: Iterable[int]) -> str:
    return "{" + ",".join(X.vertices[v] for v in sorted(vertices)) + "}"


def _flag(value: bool) -> str:
    return i18n.t("cli.yes") if value else i18n.t("cli.no")


def render_info(X: WeightedHypergraph, residual: float) -> str:
    levels = ", ".join(
        f"|X^({i})|={len(induced_measure(X, i).support)}" for i in range(X.k - 1, 0, -1)
    )
    return "\n".join(
        [
            i18n.t("cli.info.summary", k=X.k, vertices=X.num_vertices, levels=levels),
            i18n.t("cli.info.faces", total=len(X.faces)),
            i18n.t("cli.info.residual", residual=f"{residual:.3e}"),
        ]
    )


def render_kpartite(spec: KPartiteSpec) -> str:
    return "\n".join(
        [
            i18n.t("cli.info.parts", sizes=", ".join(str(len(p)) for p in spec.parts)),
            i18n.t("cli.info.tuples", total=len(spec.faces)),
        ]
    )


def render_levels(X: WeightedHypergraph, minima: Sequence[LevelMinimum]) -> str:
    return "\n".join(
        i18n.t(
            "cli.bound.lambda",
            level=m.level,
            value=number(m.value),
            witness=face_labels(X, m.witness),
        )
        for m in minima
    )


def render_bound(
    X: WeightedHypergraph, report: BoundReport, tensor_n: int | None
) -> str:
    lines = []
    if tensor_n is not None:
        lines.append(i18n.t("cli.bound.tensor", n=tensor_n))
    for level, (value, witness) in enumerate(zip(report.lambdas, report.witnesses)):
        lines.append(
            i18n.t(
                "cli.bound.lambda",
                level=level,
                value=number(value),
                witness=face_labels(X, witness),
            )
        )
    lines.append(i18n.t("cli.bound.product", value=number(report.product)))
    lines.append(i18n.t("cli.bound.bound", value=number(report.bound)))
    lines.append(i18n.t("cli.bound.stable", flag=_flag(report.tensor_stable)))
    if report.conditional_symmetry:
        lines.append(i18n.t("cli.bound.conditional"))
    if report.degenerate:
        lines.append(i18n.t("cli.bound.degenerate"))
    return "\n".join(lines)


def render_alpha(X: WeightedHypergraph, result: IndependenceResult) -> str:
    return "\n".join(
        [
            i18n.t("cli.alpha.value", value=number(result.alpha)),
            i18n.t("cli.alpha.witness", witness=set_labels(X, result.witness)),
        ]
    )


def render_tensor(X: WeightedHypergraph, path: str) -> str:
    return i18n.t(
        "cli.tensor.wrote", path=path, vertices=X.num_vertices, faces=len(X.faces)
    )


def render_optimize(result: OptimizerResult) -> str:
    X = result.hypergraph
    lines = [
        i18n.t("cli.optimize.lambda", level=i, value=number(lam))
        for i, lam in enumerate(result.lambdas)
    ]
    lines.append(i18n.t("cli.optimize.objective", value=number(result.objective)))
    lines.append(i18n.t("cli.bound.bound", value=number(result.bound)))
    lines.append(
        i18n.t(
            "cli.optimize.residuals",
            marginal=f"{result.marginal_residual:.3e}",
            normalization=f"{result.normalization_residual:.3e}",
        )
    )
    lines.append(
        i18n.t(
            "cli.optimize.search",
            iterations=result.iterations,
            restart=result.best_restart,
        )
    )
    for face, weight in zip(result.support, result.mu_star):
        lines.append(
            i18n.t(
                "cli.optimize.weight",
                face=face_labels(X, face),
                value=number(weight),
            )
        )
    return "\n".join(lines)


def render_catalog(
    entry: CatalogEntry, checks: Sequence[Check], written: Sequence[str]
) -> str:
    parameters = ", ".join(f"{key}={value}" for key, value in entry.parameters.items())
    lines = [
        i18n.t(
            "cli.catalog.header",
            name=entry.name,
            parameters=parameters,
            vertices=entry.hypergraph.num_vertices,
            faces=len(entry.hypergraph.faces),
        )
    ]
    if entry.reference.notes:
        lines.append(i18n.t("cli.catalog.notes", notes=entry.reference.notes))
    if not checks:
        lines.append(i18n.t("cli.catalog.none"))
    for check in checks:
        lines.append(
            i18n.t(
                "cli.catalog.check",
                status=_status(check.passed),
                name=check.name,
                expected=number(check.expected),
                actual=number(check.actual),
            )
        )
    verdict = _status(all(c.passed for c in checks))
    lines.append(i18n.t("cli.catalog.verdict", status=verdict))
    lines.extend(i18n.t("cli.catalog.wrote", path=path) for path in written)
    return "\n".join(lines)


def _status(passed: bool) -> str:
    return i18n.t("cli.catalog.pass") if passed else i18n.t("cli.catalog.fail")
