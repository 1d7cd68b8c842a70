"""hhb.cli.parser — Argument parsing for the hhb command.

Parse failures raise UsageError instead of exiting, so run() can map them
to exit code 1 like every other error.
"""

import argparse


class UsageError(Exception):
    """Raised for malformed command lines and incompatible flags."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hhb",
        description="Generalized Hoffman bounds for weighted uniform hypergraphs.",
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )

    info = commands.add_parser("info", help="uniformity, vertex and face counts")
    info.add_argument("file")
    info.add_argument(
        "--kpartite", action="store_true", help="read a k-partite document"
    )
    info.add_argument("--json", action="store_true")

    bound = commands.add_parser("bound", help="generalized Hoffman bound")
    bound.add_argument("file")
    bound.add_argument(
        "--symmetry", metavar="GENFILE", help="restrict to invariant sets"
    )
    bound.add_argument("--tensor", type=_positive_int, metavar="N", help="bound X^(⊗N)")
    bound.add_argument("--json", action="store_true")

    eigs = commands.add_parser("eigs", help="per-level minimum eigenvalues")
    eigs.add_argument("file")
    eigs.add_argument("--level", type=_non_negative_int)
    eigs.add_argument("--json", action="store_true")

    alpha = commands.add_parser("alpha", help="exact independence number")
    alpha.add_argument("file")
    alpha.add_argument("--cap", type=_positive_int, help="largest support searched")
    alpha.add_argument("--json", action="store_true")

    tensor = commands.add_parser("tensor", help="write an explicit tensor power")
    tensor.add_argument("file")
    tensor.add_argument("-n", type=_positive_int, required=True)
    tensor.add_argument("-o", "--output", required=True)
    tensor.add_argument("--cap", type=_positive_int, help="largest face count allowed")

    optimize = commands.add_parser("optimize", help="best weights on a fixed support")
    optimize.add_argument("file", metavar="supportfile")
    optimize.add_argument("--restarts", type=_positive_int, default=32)
    optimize.add_argument("--iters", type=_positive_int, default=2000)
    optimize.add_argument("--seed", type=_non_negative_int, default=0)
    optimize.add_argument("--step-scale", type=float, default=0.1)
    optimize.add_argument("-o", "--output", help="write the optimized hypergraph")
    optimize.add_argument("--json", action="store_true")

    catalog = commands.add_parser("catalog", help="build and check a named family")
    catalog.add_argument("name")
    for flag in ("--p", "--p1", "--p2", "--p3"):
        catalog.add_argument(flag, type=float)
    for flag in ("--s", "--n", "--k", "--m", "--q", "--r"):
        catalog.add_argument(flag, type=int)
    catalog.add_argument(
        "--equation",
        action="append",
        default=[],
        metavar="A1,...,Am=B",
        help="linear equation over F_q (repeatable)",
    )
    catalog.add_argument("--exclude-degenerate", action="store_true")
    catalog.add_argument("-o", "--output", help="write the hypergraph document")
    catalog.add_argument("--json", action="store_true")

    return parser
