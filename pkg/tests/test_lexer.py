import pytest
from hypothesis import given
from hypothesis import strategies as st

from minicog import LexError, tokenize

from conftest import corpus_names, fixture_source


def kinds(text):
    return [t.kind for t in tokenize(text)]


def texts(text):
    return [t.text for t in tokenize(text)]


def test_minimal_statement():
    toks = tokenize("a=1;")
    assert [(t.kind, t.text) for t in toks] == [
        ("identifier", "a"), ("operator", "="), ("int-literal", "1"), ("punctuation", ";"),
    ]


def test_squaring_line_has_six_tokens_one_star():
    toks = tokenize("square=userInput*userInput;")
    assert len(toks) == 6
    assert [t.text for t in toks if t.kind == "operator"] == ["=", "*"]


def test_comment_elision():
    assert texts("/*x*/ y") == ["y"]
    assert texts("a // trailing\nb") == ["a", "b"]


def test_compound_tokens_are_single():
    assert texts("a<=b ++ -- :: != &&") == ["a", "<=", "b", "++", "--", "::", "!=", "&&"]


def test_keywords_vs_identifiers():
    toks = tokenize("while whilex int intx true")
    assert [t.kind for t in toks] == ["keyword", "identifier", "keyword", "identifier", "keyword"]


def test_numeric_literals():
    assert kinds("12 3.5") == ["int-literal", "float-literal"]
    # `12.` without digits is an int followed by punctuation
    assert kinds("12.") == ["int-literal", "punctuation"]


def test_string_literal_with_escape():
    toks = tokenize(r'print("a\"b");')
    assert toks[2].kind == "string-literal"
    assert toks[2].text == r'"a\"b"'


def test_spans_are_one_based():
    tok = tokenize("  ab\n cd")[1]
    assert (tok.span.line_start, tok.span.col_start) == (2, 2)


@pytest.mark.parametrize("bad", ["@", "int $x;", '"unterminated', "/* open", '"line\nbreak"'])
def test_lex_errors_carry_spans(bad):
    with pytest.raises(LexError) as err:
        tokenize(bad)
    assert err.value.span is not None


def _significant(source: str) -> str:
    """Independent comment/whitespace stripper used as the concatenation oracle."""
    out = []
    i, n = 0, len(source)
    while i < n:
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if source.startswith("/*", i):
            i = source.index("*/", i) + 2
            continue
        ch = source[i]
        if ch == '"':
            j = i + 1
            while source[j] != '"':
                j += 2 if source[j] == "\\" else 1
            out.append(source[i:j + 1])
            i = j + 1
            continue
        if not ch.isspace():
            out.append(ch)
        i += 1
    return "".join(out)


@pytest.mark.parametrize("name", corpus_names())
def test_concatenation_reproduces_significant_content(name):
    source = fixture_source(name)
    assert "".join(t.text for t in tokenize(source)) == _significant(source)


@given(st.lists(st.from_regex(r"[a-z][a-z0-9]{0,5}", fullmatch=True), min_size=1, max_size=20))
def test_identifier_soup_roundtrip(words):
    toks = tokenize(" ".join(words))
    assert [t.text for t in toks] == words
