"""Exact generalized model counting over tuple-independent databases.

The modules build on each other in order: :mod:`~gfomc.formula` (monotone
CNFs, weighted counting, polynomials), :mod:`~gfomc.query` (queries and
their classification), :mod:`~gfomc.tid` (databases and block gadgets),
:mod:`~gfomc.lineage` (grounding and probabilities), :mod:`~gfomc.exactla`
(exact linear algebra), :mod:`~gfomc.blocks` (block matrices and searches)
and :mod:`~gfomc.reduction` (counting oracles and the type I pipeline).
"""

from ._config import CapExceeded
from .formula import CnfFormula, weighted_count
from .lineage import pr_exact
from .query import classify, parse_query
from .tid import Tid, read_tid

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CnfFormula",
    "Tid",
    "classify",
    "parse_query",
    "pr_exact",
    "read_tid",
    "weighted_count",
]
