"""Containment analysis and control placement for signed networks."""

import json as _json

from ._core import (
    Graph,
    SigconError,
    export_lp,
    export_lp_sizes,
    generate,
    guaranteed_set,
    initial_state,
    solve_sizes,
)
from . import _core

__all__ = [
    "Graph",
    "SigconError",
    "analyze",
    "export_lp",
    "export_lp_sizes",
    "generate",
    "guaranteed_set",
    "initial_state",
    "pipeline",
    "place",
    "simulate",
    "solve_sizes",
    "steady_state",
]


def analyze(g):
    return _json.loads(_core._analyze(g))


def steady_state(g, x0, tol=1e-9):
    return _json.loads(_core._steady_state(g, list(x0), tol))


def place(g, budget):
    return _json.loads(_core._place(g, budget))


def simulate(g, x0, max_iters=100000, conv_tol=1e-12, stride=0, contain_tol=1e-6):
    return _core._simulate(g, list(x0), max_iters, conv_tol, stride, contain_tol)


def pipeline(g, budget, trials=1, seed=0, leader_states=()):
    return _json.loads(_core._pipeline(g, budget, trials, seed, list(leader_states)))
