"""Singular points of Delta(x,y) y'' = M(x,y,y') with M cubic in y'."""

import json

from ._singode import (
    AnalysisOptions,
    Equation,
    SingodeError,
    Trajectory,
    best_rational,
    corpus_ids,
    detect_log_term,
    estimate_exponent,
    oscillation_detect,
    resonance_find,
    samovol_order,
    spectrum,
    trace,
    verify,
)
from ._singode import analyze_json as _analyze_json


def analyze(equation, x, y, options=None):
    """Classification report for the point (x, y) as a dict."""
    return json.loads(_analyze_json(equation, x, y, options or AnalysisOptions()))


__all__ = [
    "AnalysisOptions",
    "Equation",
    "SingodeError",
    "Trajectory",
    "analyze",
    "best_rational",
    "corpus_ids",
    "detect_log_term",
    "estimate_exponent",
    "oscillation_detect",
    "resonance_find",
    "samovol_order",
    "spectrum",
    "trace",
    "verify",
]
