"""Kleene-Cartesian tape diagrams with a finite-relation semantics."""

from kctapes.evaluator import check_equality, check_inclusion, check_theory, evaluate
from kctapes.exceptions import KCTapesException, KCTapesTypeError, ParseError
from kctapes.interpretation import Interpretation
from kctapes.polynomial import Monomial, Polynomial, Signature
from kctapes.relations import Carrier, FinRel
from kctapes.search import refute, search_countermodel

__version__ = "0.1.0"
__all__ = [
    "Carrier",
    "FinRel",
    "Interpretation",
    "KCTapesException",
    "KCTapesTypeError",
    "Monomial",
    "ParseError",
    "Polynomial",
    "Signature",
    "check_equality",
    "check_inclusion",
    "check_theory",
    "evaluate",
    "refute",
    "search_countermodel",
]
