"""p-primary counts of stably trivial complex vector bundles on CP^n.

The package is layered: :mod:`arith` and :mod:`fp` hold exact integer and
F_p helpers, :mod:`comodule` is the brute-force P^1-module oracle,
:mod:`eo` evaluates splittings and degree -1 EO-homology, :mod:`counts`
holds the closed forms and the bundle-count dispatcher, :mod:`detection`
enumerates guaranteed-nontrivial families and :mod:`cli` is the command
line front end.
"""

from .errors import InternalContradiction, InvalidInput, OutOfWindow
from .groups import FinitePGroup
from .comodule import Decomposition, GradedComodule, Summand
from .counts import CountResult, count_bundles

__all__ = [
    "CountResult",
    "Decomposition",
    "FinitePGroup",
    "GradedComodule",
    "InternalContradiction",
    "InvalidInput",
    "OutOfWindow",
    "Summand",
    "count_bundles",
]

__version__ = "0.1.0"
