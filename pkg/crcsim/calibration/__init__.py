"""Risk-based calibration, local calibration and statistics projection."""

from crcsim.calibration.family import (
    NAIVE_BAYES,
    ClassifierFamily,
    available_families,
    get_family,
    register_family,
)
from crcsim.calibration.projection import project
from crcsim.calibration.rc import RCRecord, RCTrace, lrc, rc, rc_update, update_direction

__all__ = [
    "NAIVE_BAYES",
    "ClassifierFamily",
    "RCRecord",
    "RCTrace",
    "available_families",
    "get_family",
    "lrc",
    "project",
    "rc",
    "rc_update",
    "register_family",
    "update_direction",
]
