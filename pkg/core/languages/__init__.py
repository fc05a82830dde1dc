"""
Quiver Language Module
======================

This package contains the plain-text quiver language: the pygments lexer,
the parser producing :class:`core.algebra.Quiver` values and the
"did you mean" helper shared with the command line.
"""

from .quiverlang import QuiverLexer, parse_quiver, suggest, tokenize_lines

__all__ = [
    "QuiverLexer",
    "parse_quiver",
    "suggest",
    "tokenize_lines",
]
