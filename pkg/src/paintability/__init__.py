"""Exact solvers and verification tools for online list-colouring (paintability) games."""

from .game import COST, UNBOUNDED, CostGame, ExactRounds, Unbounded, Verdict
from .graph import Graph, from_graph6, to_graph6
from .solver import Solver, compute_M, compute_m, compute_q, solve

__all__ = [
    "COST",
    "UNBOUNDED",
    "CostGame",
    "ExactRounds",
    "Graph",
    "Solver",
    "Unbounded",
    "Verdict",
    "compute_M",
    "compute_m",
    "compute_q",
    "from_graph6",
    "solve",
    "to_graph6",
]
