"""Approximate reasoning with fuzzy sets.

Submodules: ``core`` (sets, operations, hedges), ``relations`` (implication
relations and composition), ``inference`` (modus ponens/tollens, if-then-else,
rule bases), ``defuzz``, ``logic`` (fuzzy logic functions), ``linguistics``
and ``grammar``, ``fstds`` (the script interpreter) and ``cli``.
"""
from .core import FuzzySet, Universe

__all__ = ["FuzzySet", "Universe"]
__version__ = "0.1.0"
