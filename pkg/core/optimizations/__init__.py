#!/usr/bin/env python3
"""
Performance helpers for semibrick-lab.

Provides the Hom/Ext dimension cache and the deterministic trial runner.
"""

from .hom_cache import HOM_CACHE, DimKey, HomCache
from .trial_runner import TrialOutcome, TrialRunner

__all__ = [
    'DimKey',
    'HOM_CACHE',
    'HomCache',
    'TrialOutcome',
    'TrialRunner',
]
