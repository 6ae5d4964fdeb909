"""Graph stability through canonical double covers and two-fold automorphisms."""
from __future__ import annotations

from .errors import CapExceeded, Falsified, InputError, PreconditionError
from .graph import Graph, Permutation, from_edge_list, parse_permutation
from .tf import TFMap, stability_verdict

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Falsified",
    "Graph",
    "InputError",
    "Permutation",
    "PreconditionError",
    "TFMap",
    "from_edge_list",
    "parse_permutation",
    "stability_verdict",
]
