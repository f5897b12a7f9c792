import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minicog import ErmSyntaxError, analyze_source, parse_erm, render_erm, serialize_erm
from minicog.erm import Fact

from conftest import analyzed, corpus_names


def test_example4_fact_list():
    gt = analyzed("example4.mc").granules[0]
    assert [str(f) for f in serialize_erm(gt).facts] == [
        "G1 -> G2",
        "G1 > G(1,1)",
        "G(1,1) -> G(1,2)",
        "G(1,2) -> G(1,3)",
        "G(1,2) > G(1,2,1)",
        "G2 > G(2,1)",
    ]


def test_example6_fact_list():
    gt = analyzed("example6.mc").granules[0]
    assert [str(f) for f in serialize_erm(gt).facts] == [
        "G1 -> G2",
        "G2 > G(2,1)",
        "G(2,1) -> G(2,2)",
        "G(2,2) -> G(2,3)",
        "G(2,2) > G(2,2,1)",
    ]


def test_single_granule_has_empty_fact_list():
    gt = analyzed("unit.mc").granules[0]
    expr = serialize_erm(gt)
    assert expr.facts == []
    assert render_erm(expr) == ""
    assert parse_erm("").facts == []


def test_parse_single_sequence_fact():
    assert parse_erm("G1 -> G2").facts == [Fact("G1", "->", "G2")]


def test_parse_include_and_parenthesized_labels():
    expr = parse_erm("G1 > G(1,2)\nG(2) -> G3\n")
    assert expr.facts == [Fact("G1", ">", "G(1,2)"), Fact("G2", "->", "G3")]


@pytest.mark.parametrize("bad", ["G1 <> G2", "G1 ->", "H1 -> G2", "G1 > G(1,)", "G1 G2"])
def test_malformed_facts_rejected(bad):
    with pytest.raises(ErmSyntaxError):
        parse_erm(bad)


@pytest.mark.parametrize("name", corpus_names())
def test_roundtrip_is_identity_on_corpus(name):
    for gt in analyzed(name).granules:
        expr = serialize_erm(gt)
        assert parse_erm(render_erm(expr)).facts == expr.facts


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_roundtrip_is_identity_on_generated(seed):
    from minicog.generator import generate

    for gt in analyze_source(generate(seed)).granules:
        expr = serialize_erm(gt)
        assert parse_erm(render_erm(expr)).facts == expr.facts


def test_if_with_else_emits_one_include_per_arm():
    gts = analyze_source(
        "int main() { int a = 1; if (a > 0) a = 2; else a = 3; }"
    ).granules
    if_granule = gts[0].roots[1]
    facts = [str(f) for f in serialize_erm(gts[0]).facts]
    assert facts == ["G1 -> G2", "G2 > G(2,1)", "G2 > G(2,2)"]
    assert if_granule.arm_starts == [0, 1]
