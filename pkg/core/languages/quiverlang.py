#!/usr/bin/env python3
"""
Quiver File Language
====================

Line-oriented description of a finite quiver with optional relations::

    # 2-Kronecker quiver
    vertices: 1 2
    arrow a: 1 -> 2
    arrow b: 1 -> 2

    # loop with a square-zero relation
    vertices: 1
    arrow x: 1 -> 1
    relation: x x

Relation terms are ``[<int-coeff>*] <arrow> <arrow> ...`` joined by ``+`` or
``-``; a path ``a b`` means "a then b".  ``#`` starts a comment.  Ids are
whitespace-free tokens without ``# : * + - < >``.

Tokenising is done by a pygments ``RegexLexer``; the parser walks the token
stream line by line so every error carries its line number.

File Extension: .q
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from pygments.lexer import RegexLexer, bygroups
from pygments.token import (
    Comment, Error, Keyword, Name, Number, Operator, Punctuation, Whitespace,
)

from core.errors import QuiverSyntaxError

STATEMENTS = ["vertices", "arrow", "relation"]

_ID = r"[^\s#:*+\-<>]+"


def _levenshtein(a: str, b: str) -> int:
    """Compute Levenshtein edit distance between two strings."""
    if len(a) < len(b):
        return _levenshtein(b, a)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a):
        curr = [i + 1]
        for j, cb in enumerate(b):
            curr.append(min(prev[j + 1] + 1, curr[j] + 1,
                            prev[j] + (0 if ca == cb else 1)))
        prev = curr
    return prev[-1]


def suggest(word: str, candidates: Sequence[str]) -> Optional[str]:
    """Return the closest candidate within edit distance 2, else None."""
    best, best_dist = None, 3  # threshold
    for cand in candidates:
        d = _levenshtein(word, cand)
        if d < best_dist:
            best, best_dist = cand, d
    return best


def _hint(word: str, candidates: Sequence[str]) -> str:
    near = suggest(word, candidates)
    return f" (did you mean {near!r}?)" if near is not None else ""


# ---------------------------------------------------------------------------
#  Pygments lexer
# ---------------------------------------------------------------------------

class QuiverLexer(RegexLexer):
    """Pygments lexer for quiver description files."""
    name = 'Quiver'
    aliases = ['quiver', 'q']
    filenames = ['*.q']

    tokens = {
        'root': [
            (r'[ \t]+', Whitespace),
            (r'#[^\n]*', Comment.Single),
            (r'\n', Whitespace),
            (r'(vertices)([ \t]*)(:)',
             bygroups(Keyword, Whitespace, Punctuation), 'idlist'),
            (r'(arrow)([ \t]+)(' + _ID + r')([ \t]*)(:)',
             bygroups(Keyword, Whitespace, Name.Function, Whitespace, Punctuation),
             'arrowdef'),
            (r'(relation)([ \t]*)(:)',
             bygroups(Keyword, Whitespace, Punctuation), 'relation'),
            (r'[^\n]+', Error),
        ],
        'idlist': [
            (r'[ \t]+', Whitespace),
            (r'#[^\n]*', Comment.Single),
            (r'\n', Whitespace, '#pop'),
            (_ID, Name.Variable),
        ],
        'arrowdef': [
            (r'[ \t]+', Whitespace),
            (r'#[^\n]*', Comment.Single),
            (r'\n', Whitespace, '#pop'),
            (r'->', Operator),
            (_ID, Name.Variable),
        ],
        'relation': [
            (r'[ \t]+', Whitespace),
            (r'#[^\n]*', Comment.Single),
            (r'\n', Whitespace, '#pop'),
            (r'(\d+)([ \t]*)(\*)', bygroups(Number.Integer, Whitespace, Operator)),
            (r'[+-]', Operator),
            (_ID, Name.Function),
        ],
    }


def tokenize_lines(text: str) -> List[Tuple[int, List[Tuple[object, str]]]]:
    """Split *text* into ``(line_no, significant tokens)`` per non-empty line."""
    lexer = QuiverLexer(stripnl=False, ensurenl=True)
    lines: List[Tuple[int, List[Tuple[object, str]]]] = []
    current: List[Tuple[object, str]] = []
    line_no = 1
    for _, ttype, value in lexer.get_tokens_unprocessed(text):
        if ttype in Whitespace or ttype in Comment:
            if "\n" in value:
                if current:
                    lines.append((line_no, current))
                    current = []
                line_no += value.count("\n")
            continue
        current.append((ttype, value))
    if current:
        lines.append((line_no, current))
    return lines


# ---------------------------------------------------------------------------
#  Parser
# ---------------------------------------------------------------------------

def _parse_relation(tokens, line_no: int) -> List[Tuple[int, Tuple[str, ...]]]:
    terms: List[Tuple[int, Tuple[str, ...]]] = []
    sign, coeff, path = 1, None, []

    def close_term():
        if not path:
            raise QuiverSyntaxError("empty relation term", line_no)
        terms.append((sign * (1 if coeff is None else coeff), tuple(path)))

    for ttype, value in tokens:
        if ttype in Operator and value in "+-":
            if path:
                close_term()
            elif coeff is not None or terms:
                raise QuiverSyntaxError(f"unexpected {value!r} in relation", line_no)
            sign, coeff, path = (1 if value == "+" else -1), None, []
        elif ttype in Number:
            if path or coeff is not None:
                raise QuiverSyntaxError("coefficient must start a term", line_no)
            coeff = int(value)
        elif ttype in Operator and value == "*":
            continue
        elif ttype in Name.Function:
            path.append(value)
        else:
            raise QuiverSyntaxError(f"unexpected token {value!r} in relation", line_no)
    close_term()
    return terms


def parse_quiver(text: str, name: str = ""):
    """Parse a quiver document into a :class:`core.algebra.Quiver`."""
    from core.algebra import Arrow, Quiver, Relation, relation_problem  # noqa: C0415

    vertices: List[str] = []
    arrows: List[Arrow] = []
    arrow_lines: Dict[str, int] = {}
    relations: List[Tuple[int, Relation]] = []

    for line_no, tokens in tokenize_lines(text):
        ttype, head = tokens[0]
        if ttype in Error or any(t in Error for t, _ in tokens):
            word = head.split(":")[0].split()[0] if head.split() else head
            raise QuiverSyntaxError(
                f"unrecognised statement {head.strip()!r}{_hint(word, STATEMENTS)}",
                line_no)
        body = [(t, v) for t, v in tokens[1:] if t not in Punctuation]
        if head == "vertices":
            for _, vid in body:
                if vid in vertices:
                    raise QuiverSyntaxError(f"duplicate vertex {vid!r}", line_no)
                vertices.append(vid)
        elif head == "arrow":
            ids = [v for t, v in body if t in Name]
            if len(body) != 4 or len(ids) != 3 or body[2][1] != "->":
                raise QuiverSyntaxError("expected 'arrow <id>: <src> -> <dst>'", line_no)
            aid, src, dst = ids
            if aid in arrow_lines:
                raise QuiverSyntaxError(f"duplicate arrow id {aid!r}", line_no)
            for v in (src, dst):
                if v not in vertices:
                    raise QuiverSyntaxError(
                        f"undeclared vertex {v!r} in arrow {aid!r}{_hint(v, vertices)}",
                        line_no)
            arrow_lines[aid] = line_no
            arrows.append(Arrow(aid, src, dst))
        else:
            relations.append((line_no, Relation(tuple(_parse_relation(body, line_no)))))

    by_name = {a.name: a for a in arrows}
    for line_no, rel in relations:
        for _, path in rel.terms:
            for aid in path:
                if aid not in by_name:
                    raise QuiverSyntaxError(
                        f"unknown arrow {aid!r} in relation{_hint(aid, list(by_name))}",
                        line_no)
        problem = relation_problem(by_name, rel)
        if problem:
            raise QuiverSyntaxError(problem, line_no)

    if not vertices:
        raise QuiverSyntaxError("no vertices declared", 1)
    return Quiver(tuple(vertices), tuple(arrows), tuple(r for _, r in relations), name=name)
