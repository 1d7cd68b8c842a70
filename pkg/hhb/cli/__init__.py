"""hhb.cli package — Command-line interface over the bound pipeline."""

from hhb.cli.runner import main, run

__all__ = ["main", "run"]
