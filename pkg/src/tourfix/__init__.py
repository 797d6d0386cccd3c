"""Exact solvers for fixing single-elimination tournaments.

Covers the deterministic problem (TF), the multi-scenario variant (STF) and
the probabilistic variant (PTF), plus brute-force oracles for small brackets.
"""
__version__ = "0.1.0"

from .bracket import BracketTree, evaluate_bracket, win_probability
from .errors import CapExceeded, InstanceError, InternalError
from .fas import OrderedFas, min_fas
from .instance import (
    Digraph,
    ProbabilityInstance,
    StfInstance,
    TournamentDigraph,
    load_instance,
    parse_instance,
    serialize_instance,
)
from .oracle import oracle_ptf, oracle_stf, oracle_tf
from .ptf import PtfVerdict, solve_ptf
from .stf import StfVerdict, solve_stf, verify_seeding

__all__ = [
    "BracketTree",
    "CapExceeded",
    "Digraph",
    "InstanceError",
    "InternalError",
    "OrderedFas",
    "ProbabilityInstance",
    "PtfVerdict",
    "StfInstance",
    "StfVerdict",
    "TournamentDigraph",
    "evaluate_bracket",
    "load_instance",
    "min_fas",
    "oracle_ptf",
    "oracle_stf",
    "oracle_tf",
    "parse_instance",
    "serialize_instance",
    "solve_ptf",
    "solve_stf",
    "verify_seeding",
    "win_probability",
]
