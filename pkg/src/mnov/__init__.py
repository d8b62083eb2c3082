"""Exact computer algebra for multi-Novikov algebras, multi-indices and decorated trees."""

from .exactalg import MultiIdx, Poly, SingularSystem
from .magnov import Alphabet, Leaf, Node, classify, rewrite_normal_form, solve_normal_form
from .syntax import ParseError, parse

__all__ = [
    "Alphabet",
    "Leaf",
    "MultiIdx",
    "Node",
    "ParseError",
    "Poly",
    "SingularSystem",
    "classify",
    "parse",
    "rewrite_normal_form",
    "solve_normal_form",
]
