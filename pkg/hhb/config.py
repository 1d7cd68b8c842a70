"""hhb.config — Loads and exposes all environment variables.

All runtime configuration is read from the .env file via python-dotenv.
Use this module as the single source of truth for runtime settings.
"""

import os
from pathlib import Path

import i18n
from dotenv import load_dotenv

# Load .env from the project root (one level above this file's parent dir)
_ROOT = Path(__file__).parent.parent
load_dotenv(dotenv_path=_ROOT / ".env")

# ---------------------------------------------------------------------------
# i18n Initialization
# ---------------------------------------------------------------------------
i18n.load_path.append(str(_ROOT / "locales"))
i18n.set("file_format", "json")
i18n.set("filename_format", "{locale}.{format}")
i18n.set("fallback", "en")
i18n.set("error_on_missing_translation", False)


def _optional(key: str, default: str) -> str:
    """Return the value of an optional environment variable or a default."""
    value = os.getenv(key, "").strip()
    return value if value else default


def _optional_int(key: str, default: int, minimum: int = 0) -> int:
    """Return an integer environment variable, validated against a minimum.

    Raises:
        RuntimeError: If the variable is set but is not an integer >= minimum.
    """
    raw = _optional(key, str(default))
    try:
        value = int(raw)
    except ValueError as exc:
        raise RuntimeError(
            f"Environment variable '{key}' must be an integer, got '{raw}'.\n"
            f"Check the .env file at the project root."
        ) from exc
    if value < minimum:
        raise RuntimeError(f"Environment variable '{key}' must be >= {minimum}.")
    return value


# ---------------------------------------------------------------------------
# Language / logging
# ---------------------------------------------------------------------------
HHB_LANGUAGE: str = _optional("HHB_LANGUAGE", "en")
i18n.set("locale", HHB_LANGUAGE)

HHB_LOG_LEVEL: str = _optional("HHB_LOG_LEVEL", "WARNING").upper()

# ---------------------------------------------------------------------------
# Parallelism (0 = let the executor decide)
# ---------------------------------------------------------------------------
HHB_THREADS: int = _optional_int("HHB_THREADS", 0)

# ---------------------------------------------------------------------------
# Resource caps
# ---------------------------------------------------------------------------
HHB_TENSOR_FACE_CAP: int = _optional_int("HHB_TENSOR_FACE_CAP", 1_000_000, 1)
HHB_ALPHA_CAP: int = _optional_int("HHB_ALPHA_CAP", 30, 1)
HHB_SYMMETRIC_PART_CAP: int = _optional_int("HHB_SYMMETRIC_PART_CAP", 20, 1)


def max_workers() -> int | None:
    """Worker count for thread pools; None lets the executor choose."""
    return HHB_THREADS or None
