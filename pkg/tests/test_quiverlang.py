#!/usr/bin/env python3
"""Tests for the quiver file language (core.languages.quiverlang)."""

import pytest
from pygments.token import Error, Keyword

from tests.helpers import quiver
from core.errors import QuiverSyntaxError
from core.languages.quiverlang import QuiverLexer, parse_quiver, suggest, tokenize_lines

K2_TEXT = "vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n"


# =====================================================================
#  Lexer
# =====================================================================

class TestLexer:
    def test_keywords_tokenised(self):
        tokens = list(QuiverLexer().get_tokens("vertices: 1 2\n"))
        assert (Keyword, "vertices") in tokens

    def test_unknown_statement_is_error_token(self):
        tokens = list(QuiverLexer().get_tokens("vertex: 1\n"))
        assert any(t in Error for t, _ in tokens)

    def test_lines_numbered_past_comments(self):
        lines = tokenize_lines("# header\n\nvertices: 1\n# trailing\narrow x: 1 -> 1\n")
        assert [n for n, _ in lines] == [3, 5]

    def test_inline_comment_dropped(self):
        lines = tokenize_lines("vertices: 1 2  # two of them\n")
        values = [v for _, v in lines[0][1]]
        assert "#" not in "".join(values)


# =====================================================================
#  Parser
# =====================================================================

class TestParseQuiver:
    def test_kronecker(self):
        q = parse_quiver(K2_TEXT, "k2")
        assert q.vertices == ("1", "2")
        assert [a.name for a in q.arrows] == ["a", "b"]
        assert q.acyclic
        assert q.relations == ()

    def test_loop_with_relation(self):
        q = parse_quiver("vertices: 1\narrow a: 1 -> 1\nrelation: a a\n")
        assert not q.acyclic
        assert len(q.relations) == 1
        assert q.relations[0].terms == ((1, ("a", "a")),)

    def test_relation_with_coefficients(self):
        text = ("vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n"
                "arrow c: 1 -> 2\narrow d: 2 -> 3\nrelation: a b - 2*c d\n")
        rel = parse_quiver(text).relations[0]
        assert rel.terms == ((1, ("a", "b")), (-2, ("c", "d")))
        assert str(rel) == "a b - 2*c d"

    def test_bundled_file_matches_text(self):
        assert quiver("k2") == parse_quiver(K2_TEXT, "k2")

    def test_missing_trailing_newline(self):
        q = parse_quiver("vertices: 1 2\narrow a: 1 -> 2")
        assert len(q.arrows) == 1


class TestParseErrors:
    def test_undeclared_vertex_with_hint(self):
        with pytest.raises(QuiverSyntaxError) as info:
            parse_quiver("vertices: v1 v2\narrow a: v1 -> v3\n")
        assert info.value.line == 2
        assert "undeclared vertex 'v3'" in str(info.value)
        assert "did you mean" in str(info.value)

    def test_duplicate_arrow(self):
        with pytest.raises(QuiverSyntaxError, match="duplicate arrow id 'a'"):
            parse_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n")

    def test_duplicate_vertex(self):
        with pytest.raises(QuiverSyntaxError, match="duplicate vertex"):
            parse_quiver("vertices: 1 1\n")

    def test_unknown_statement_suggests_keyword(self):
        with pytest.raises(QuiverSyntaxError) as info:
            parse_quiver("vertices: 1\narow a: 1 -> 1\n")
        assert info.value.line == 2
        assert "'arrow'" in str(info.value)

    def test_unknown_arrow_in_relation(self):
        with pytest.raises(QuiverSyntaxError, match="unknown arrow 'z'"):
            parse_quiver("vertices: 1\narrow a: 1 -> 1\nrelation: a z\n")

    def test_non_composable_relation(self):
        text = "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation: b a\n"
        with pytest.raises(QuiverSyntaxError) as info:
            parse_quiver(text)
        assert info.value.line == 4

    def test_short_relation(self):
        with pytest.raises(QuiverSyntaxError, match="shorter than 2"):
            parse_quiver("vertices: 1\narrow a: 1 -> 1\nrelation: a\n")

    def test_empty_document(self):
        with pytest.raises(QuiverSyntaxError, match="no vertices"):
            parse_quiver("# nothing here\n")

    def test_str_carries_line(self):
        err = QuiverSyntaxError("bad", 7)
        assert str(err) == "line 7: bad"


class TestSuggest:
    def test_close_match(self):
        assert suggest("vertics", ["vertices", "arrow", "relation"]) == "vertices"

    def test_nothing_close(self):
        assert suggest("zzzzzz", ["vertices", "arrow"]) is None
