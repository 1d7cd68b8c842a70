"""hhb.cli.commands — One function per subcommand.

Each command reads its inputs, runs the pipeline and returns a
CommandOutcome. Errors propagate as the module exceptions; run() turns them
into exit codes.
"""

import math
from argparse import Namespace
from pathlib import Path
from typing import Any, NamedTuple

from hhb.bound import (
    hoffman_bound,
    report_to_dict,
    symmetric_hoffman_bound,
    tensor_bound,
)
from hhb.catalog import build_entry, parse_equation, verify_entry
from hhb.cli import render
from hhb.cli.parser import UsageError
from hhb.fileformat import (
    FormatError,
    dump_hypergraph,
    load_hypergraph,
    parse_kpartite,
    parse_support,
    parse_symmetry,
    serialize_kpartite,
    serialize_symmetry,
)
from hhb.hypergraph import WeightedHypergraph, from_kpartite
from hhb.optimizer import OptimizerConfig, optimize_weights, result_to_dict
from hhb.oracle import brute_force_alpha
from hhb.spectral import all_level_minima, lambda_level
from hhb.tensor import tensor_power


class CommandOutcome(NamedTuple):
    """Exit code, human report and the JSON document (for --json)."""

    exit_code: int
    report: str
    document: dict[str, Any] | None = None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"Cannot read {path}: {exc}") from exc


def _summary(X: WeightedHypergraph) -> dict[str, Any]:
    residual = abs(math.fsum(X.faces.values()) - 1.0)
    return {
        "k": X.k,
        "vertices": X.num_vertices,
        "faces": len(X.faces),
        "residual": residual,
    }


def _sibling(path: Path, tag: str) -> Path:
    return path.with_name(f"{path.stem}.{tag}.json")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_info(args: Namespace) -> CommandOutcome:
    if args.kpartite:
        spec = parse_kpartite(_read_text(args.file))
        X = from_kpartite(spec)
        document = _summary(X) | {"parts": [len(p) for p in spec.parts]}
        report = "\n".join(
            [render.render_kpartite(spec), render.render_info(X, document["residual"])]
        )
        return CommandOutcome(0, report, document)

    X = load_hypergraph(args.file)
    document = _summary(X)
    return CommandOutcome(0, render.render_info(X, document["residual"]), document)


def cmd_bound(args: Namespace) -> CommandOutcome:
    if args.symmetry and args.tensor:
        raise UsageError("--symmetry and --tensor cannot be combined")
    X = load_hypergraph(args.file)
    if args.symmetry:
        sym = parse_symmetry(_read_text(args.symmetry), X.num_vertices)
        report = symmetric_hoffman_bound(X, sym)
    elif args.tensor:
        report = tensor_bound(X, args.tensor)
    else:
        report = hoffman_bound(X)
    return CommandOutcome(
        0, render.render_bound(X, report, args.tensor), report_to_dict(report)
    )


def cmd_eigs(args: Namespace) -> CommandOutcome:
    X = load_hypergraph(args.file)
    if args.level is None:
        minima = all_level_minima(X)
    else:
        minima = [lambda_level(X, args.level)]
    document = {
        "levels": [
            {"level": m.level, "value": m.value, "witness": list(m.witness.elements())}
            for m in minima
        ]
    }
    return CommandOutcome(0, render.render_levels(X, minima), document)


def cmd_alpha(args: Namespace) -> CommandOutcome:
    X = load_hypergraph(args.file)
    result = brute_force_alpha(X, cap=args.cap)
    document = {
        "alpha": result.alpha,
        "witness": list(result.witness),
        "labels": [X.vertices[v] for v in result.witness],
    }
    return CommandOutcome(0, render.render_alpha(X, result), document)


def cmd_tensor(args: Namespace) -> CommandOutcome:
    X = load_hypergraph(args.file)
    power = tensor_power(X, args.n, cap=args.cap)
    dump_hypergraph(power, Path(args.output))
    document = _summary(power) | {"output": args.output}
    return CommandOutcome(0, render.render_tensor(power, args.output), document)


def cmd_optimize(args: Namespace) -> CommandOutcome:
    try:
        config = OptimizerConfig(
            restarts=args.restarts,
            iterations=args.iters,
            seed=args.seed,
            step_scale=args.step_scale,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    support = parse_support(_read_text(args.file))
    result = optimize_weights(support.support, support.nu, config, support.vertices)
    if args.output:
        dump_hypergraph(result.hypergraph, Path(args.output))
    document = result_to_dict(result) | {"vertices": list(support.vertices)}
    return CommandOutcome(0, render.render_optimize(result), document)


def cmd_catalog(args: Namespace) -> CommandOutcome:
    """Build a family, verify it and optionally write its documents.

    Reference mismatches are reported as FAIL lines; the exit code stays 0
    because the command itself succeeded.
    """
    parameters: dict[str, Any] = {
        key: getattr(args, key)
        for key in ("p", "p1", "p2", "p3", "s", "n", "k", "m", "q", "r")
    }
    if args.equation:
        equations = [parse_equation(text) for text in args.equation]
        parameters["coefficients"] = [row for row, _ in equations]
        parameters["constants"] = [c for _, c in equations]
    parameters["exclude_degenerate"] = args.exclude_degenerate

    entry = build_entry(args.name, parameters)
    checks = verify_entry(entry)

    written: list[str] = []
    if args.output:
        path = Path(args.output)
        dump_hypergraph(entry.hypergraph, path)
        written.append(str(path))
        if entry.symmetry is not None:
            target = _sibling(path, "symmetry")
            target.write_text(serialize_symmetry(entry.symmetry), encoding="utf-8")
            written.append(str(target))
        if entry.kpartite is not None:
            target = _sibling(path, "kpartite")
            target.write_text(serialize_kpartite(entry.kpartite), encoding="utf-8")
            written.append(str(target))

    document = {
        "name": entry.name,
        "parameters": entry.parameters,
        "checks": [check._asdict() for check in checks],
        "passed": all(check.passed for check in checks),
        "written": written,
    }
    return CommandOutcome(0, render.render_catalog(entry, checks, written), document)


COMMANDS = {
    "info": cmd_info,
    "bound": cmd_bound,
    "eigs": cmd_eigs,
    "alpha": cmd_alpha,
    "tensor": cmd_tensor,
    "optimize": cmd_optimize,
    "catalog": cmd_catalog,
}
