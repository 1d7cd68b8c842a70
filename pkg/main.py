"""hhb — entry point.

Usage:
    uv run main.py bound hypergraph.json
    python main.py catalog frankl-biased --p 0.6
"""

import sys

# Validate environment before importing the pipeline
try:
    import hhb.config  # noqa: F401 — triggers .env load + validation
except RuntimeError as exc:
    print(f"[CONFIG ERROR] {exc}", file=sys.stderr)
    sys.exit(1)

from hhb.cli import main

if __name__ == "__main__":
    main()
