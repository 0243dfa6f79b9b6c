"""Configuration management for dp3geo."""

import logging
import os
import sys
from typing import Optional

from aws_lambda_powertools import Logger

from dp3geo.shared.constants import DEFAULT_LOG_LEVEL, ENV_OUTPUT_DIR, SERVICE_NAME

# Parent logger of the package. Children created with
# Logger(service=SERVICE_NAME, child=True) propagate here; stdout is reserved
# for documents.
logger = Logger(
    service=SERVICE_NAME,
    level=DEFAULT_LOG_LEVEL,
    logger_handler=logging.StreamHandler(sys.stderr),
)


class Config:
    """Runtime configuration for the CLI and library entry points."""

    def __init__(self, output_dir: Optional[str] = None, log_level: Optional[str] = None):
        """Initialize configuration from explicit overrides, then the environment."""
        if output_dir is None:
            output_dir = self._get_env(ENV_OUTPUT_DIR, "")
        self.output_dir = output_dir
        self.log_level = (log_level or DEFAULT_LOG_LEVEL).upper()

        if self.log_level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level {self.log_level}")

        logger.setLevel(self.log_level)
        logger.debug(
            "Configuration loaded",
            extra={"output_dir": self.output_dir, "log_level": self.log_level},
        )

    def _get_env(self, key: str, default: Optional[str] = None) -> str:
        """Get environment variable with optional default."""
        value = os.environ.get(key, default)
        if value is None:
            raise ValueError(f"Required environment variable {key} is not set")
        return value

    @property
    def writes_files(self) -> bool:
        """Check if documents go to an output directory instead of stdout."""
        return bool(self.output_dir)
