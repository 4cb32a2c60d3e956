"""Entry point for the workbench."""

import logging

from .config import DEBUG
from .core import run

if __name__ == "__main__":
    # Configure logging
    logging.basicConfig(
        level=logging.DEBUG if DEBUG else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    raise SystemExit(run())
