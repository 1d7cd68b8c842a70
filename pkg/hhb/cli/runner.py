"""hhb.cli.runner — Entry point: parse, dispatch, print and map errors to exit codes.

Exit codes:
    0  success
    1  usage error
    2  invalid input (documents, parameters, levels)
    3  resource cap exceeded or infeasible optimizer input
    4  symmetry generator fails the preservation check
"""

import logging
import sys
from typing import Sequence

import i18n

from hhb.catalog import CatalogError
from hhb.cli.commands import COMMANDS
from hhb.cli.parser import UsageError, build_parser
from hhb.config import HHB_LOG_LEVEL
from hhb.fileformat import to_json_text
from hhb.hypergraph import HypergraphError
from hhb.optimizer import InfeasibleError
from hhb.oracle import CapExceededError
from hhb.spectral import SpectralError, SymmetryError
from hhb.tensor import SizeCapError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_SYMMETRY = 4

# checked in order: SymmetryError is a SpectralError
_EXIT_CODES: list[tuple[type[Exception], int]] = [
    (UsageError, EXIT_USAGE),
    (SymmetryError, EXIT_SYMMETRY),
    (SizeCapError, EXIT_RESOURCE),
    (CapExceededError, EXIT_RESOURCE),
    (InfeasibleError, EXIT_RESOURCE),
    (HypergraphError, EXIT_INPUT),
    (SpectralError, EXIT_INPUT),
    (CatalogError, EXIT_INPUT),
    (OSError, EXIT_INPUT),
]


def _configure_logging(verbose: bool) -> None:
    level = getattr(logging, HHB_LOG_LEVEL, logging.WARNING)
    if verbose:
        level = logging.DEBUG
    logging.basicConfig(format="[%(levelname)s] %(name)s: %(message)s")
    logging.getLogger("hhb").setLevel(level)


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(i18n.t("cli.usage_error", message=str(exc)), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    _configure_logging(args.verbose)
    logger.debug("run: command=%s", args.command)

    try:
        outcome = COMMANDS[args.command](args)
    except Exception as exc:
        for kind, code in _EXIT_CODES:
            if isinstance(exc, kind):
                key = "cli.usage_error" if code == EXIT_USAGE else "cli.error"
                print(i18n.t(key, message=str(exc)), file=sys.stderr)
                return code
        raise

    if getattr(args, "json", False) and outcome.document is not None:
        print(to_json_text(outcome.document))
    else:
        print(outcome.report)
    return outcome.exit_code


def main() -> None:
    sys.exit(run())
