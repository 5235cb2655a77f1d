"""Meter database, scansion and identification."""

from .db import GANAS, MeterDB, MeterPattern, expand_ganas, load_meter_db, parse_meter_db, to_ganas
from .distance import Edit, hamming, levenshtein
from .identify import (
    DEFAULT_BUDGET,
    MeterMatch,
    Mismatch,
    ScanResult,
    Suggestion,
    identify,
    match_meter,
    scan,
    suggest_corrections,
)

__all__ = [
    "DEFAULT_BUDGET", "Edit", "GANAS", "MeterDB", "MeterMatch", "MeterPattern", "Mismatch",
    "ScanResult", "Suggestion", "expand_ganas", "hamming", "identify", "levenshtein",
    "load_meter_db", "match_meter", "parse_meter_db", "scan", "suggest_corrections", "to_ganas",
]
