"""
Logging Initialization
Configures root logging once for the CLI and the batch harness
"""

import logging
import sys
from typing import List

from annulus_cover.config import AnnulusSettings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def init_logging(settings: AnnulusSettings) -> logging.Logger:
    """Attach stderr (and optional file) handlers; stdout is reserved for JSON output"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))

    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
    return logging.getLogger('annulus_cover')
