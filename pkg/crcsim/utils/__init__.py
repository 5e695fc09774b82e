"""Shared utilities for crcsim."""

from crcsim.utils.logging import get_logger, setup_logging

__all__ = ["get_logger", "setup_logging"]
