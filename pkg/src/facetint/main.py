from __future__ import annotations

import logging
import sys

from facetint.infrastructure.config import get_settings
from facetint.interface.cli import run


def main() -> None:
    """Configure logging from the environment and run the command line."""
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s  %(levelname)-8s  %(name)s  %(message)s",
    )
    sys.exit(run(sys.argv[1:], settings))


if __name__ == "__main__":
    main()
