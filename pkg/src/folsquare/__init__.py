"""folsquare: first-order-logic semiotic squares and reflective reasoning.

A symbolic core (parser, negation transforms, finite-model oracle, square
construction) plus an LLM-backed pipeline that adjudicates three-valued
verdicts through direct resolution, quick reflection, and deep reflection.
"""

__version__ = "0.1.0"
