"""Parity-constrained clustering solvers.

Thin convenience layer over the compiled module: every core operation speaks
JSON text; the helpers here accept and return Python dicts.
"""

import json

from ._parclust import (
    InfeasibleError,
    ParseError,
    SizeGuardError,
    generate,
    oracle_fl,
    oracle_kcenter,
    solve_fl,
    solve_kcenter,
    verify,
)

__all__ = [
    "InfeasibleError",
    "ParseError",
    "SizeGuardError",
    "generate",
    "oracle_fl",
    "oracle_kcenter",
    "solve_fl",
    "solve_kcenter",
    "verify",
    "solve_fl_dict",
    "solve_kcenter_dict",
    "generate_dict",
]


def solve_fl_dict(instance, **kwargs):
    """Solve a facility-location instance given as a dict; returns a dict."""
    return json.loads(solve_fl(json.dumps(instance), **kwargs))


def solve_kcenter_dict(instance, **kwargs):
    """Solve a k-center instance given as a dict; returns a dict."""
    return json.loads(solve_kcenter(json.dumps(instance), **kwargs))


def generate_dict(**kwargs):
    """Generate a random instance; returns a dict."""
    return json.loads(generate(**kwargs))
