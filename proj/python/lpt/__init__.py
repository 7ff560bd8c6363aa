"""Incremental three-valued progress tracking for finite-trace LTL.

The heavy lifting lives in the compiled extension; this package re-exports
it and adds a couple of conveniences.
"""

import json as _json

from ._lpt import (  # noqa: F401
    Engine,
    Error,
    Formula,
    RMState,
    Trace,
    arguments,
    atom_names,
    format_formula,
    holds,
    load_formula_file,
    load_trace_file,
    merge_runs,
    oracle_tracking_vector,
    parse,
    reward_goal,
    reward_novelty,
    signature_distance,
    status_under_continuations,
)

__all__ = [
    "Engine",
    "Error",
    "Formula",
    "RMState",
    "Trace",
    "arguments",
    "atom_names",
    "dump",
    "format_formula",
    "holds",
    "load_formula_file",
    "load_trace_file",
    "merge_runs",
    "oracle_tracking_vector",
    "parse",
    "reward_goal",
    "reward_novelty",
    "signature_distance",
    "status_under_continuations",
    "track",
]


def dump(engine):
    """Engine state dump as a plain dict."""
    return _json.loads(engine.dump_json())


def track(formula, steps, finalize=False):
    """Runs the label-set sequence through a fresh engine and returns it."""
    if isinstance(formula, str):
        formula = parse(formula)
    engine = Engine(formula)
    for labels in steps:
        engine.step(list(labels))
    if finalize:
        engine.finalize()
    return engine
