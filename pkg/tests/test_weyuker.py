import pytest

from minicog import ComposeError, InvalidPermutation, RenameCollision, analyze_source, parse_source
from minicog.ast import fingerprint
from minicog.ledger import SiMode
from minicog.weyuker import (
    ValidatorPool, check_property, compose, permutable_slots, permute,
    rename, run_matrix,
)

from conftest import corpus_pairs, fixture_source


# ------------------------------------------------------------------ compose

def test_compose_disjoint_variables_adds():
    p = "int main() { int a; a = 1; }"
    q = "int main() { int b; b = 2; }"
    combined = compose(p, q)
    assert analyze_source(combined).escim_value() == 2
    assert "int a;" in combined and "int b;" in combined


def test_compose_unifies_duplicate_declaration():
    p = "int main() { int v; v = 1; v = 2; }"
    q = "int main() { int v = 5; }"
    combined = compose(p, q)
    assert combined.count("int v;") == 1
    assert "int v = 5;" not in combined
    assert "v = 5;" in combined


def test_compose_with_empty_program_is_identity():
    p = fixture_source("sum_loop.mc")
    combined = compose(p, "int main() { }")
    assert fingerprint(parse_source(combined)) == fingerprint(parse_source(p))
    combined = compose("int main() { }", p)
    assert fingerprint(parse_source(combined)) == fingerprint(parse_source(p))


def test_compose_conflicts():
    with pytest.raises(ComposeError):
        compose("int main() { int v; v = 1; }", "int main() { float v = 2; }")
    with pytest.raises(ComposeError):
        compose("int f() { return 1; }\nint main() { }",
                "int f() { return 2; }\nint main() { }")
    with pytest.raises(ComposeError):
        compose("int main() { }", "int helper() { return 1; }")  # q lacks an entry function


def test_compose_is_associative_on_corpus():
    sources = [fixture_source(n) for n in
               ("unit.mc", "p6_p.mc", "p6_r.mc", "sum_loop.mc", "example6.mc")]
    def attempt(build):
        try:
            return build(), None
        except ComposeError as exc:
            return None, exc

    for a in sources:
        for b in sources:
            for c in sources:
                left, lerr = attempt(lambda: compose(compose(a, b), c))
                right, rerr = attempt(lambda: compose(a, compose(b, c)))
                assert (lerr is None) == (rerr is None)
                if lerr is None:
                    assert fingerprint(parse_source(left)) == fingerprint(parse_source(right))


def test_compose_duplicate_global_keeps_first_definition():
    p = "int g = 1;\nint main() { g = g + 1; }"
    q = "int g = 9;\nint main() { print(g); }"
    combined = compose(p, q)
    assert combined.count("int g") == 1
    assert analyze_source(combined).escim_value() == \
        analyze_source(p).escim_value() + analyze_source(q).escim_value()


# ------------------------------------------------------------------ rename

def test_rename_preserves_all_metrics():
    p = fixture_source("example1.mc")
    renamed = rename(p, {"userInput": "x", "square": "y"})
    a, b = analyze_source(p), analyze_source(renamed)
    assert b.icn_by_name() == {"x": 1, "y": 2}
    for mode in SiMode:
        assert a.escim_value(mode) == b.escim_value(mode)
        assert a.si_program(mode) == b.si_program(mode)
    assert a.report().loc == b.report().loc
    assert a.report().i_l == b.report().i_l


def test_rename_identity_returns_input_unchanged():
    p = fixture_source("example1.mc")
    assert rename(p, {}) == p
    assert rename(p, {"userInput": "userInput"}) == p


@pytest.mark.parametrize(
    "mapping",
    [
        {"userInput": "square"},           # two names collapse
        {"userInput": "while"},            # keyword target
        {"userInput": "print"},            # builtin target
        {"print": "show"},                 # builtin source
        {"userInput": "not an ident"},
    ],
)
def test_rename_collisions(mapping):
    with pytest.raises(RenameCollision):
        rename(fixture_source("example1.mc"), mapping)


# ------------------------------------------------------------------ permute

def test_swapping_independent_assignments_keeps_delta_si():
    src = "int main() { int a = 1; int b = 2; a = a + 1; b = b + 2; print(a); }"
    infos = permutable_slots(src)
    order = list(range(len(infos)))
    order[2], order[3] = order[3], order[2]
    swapped = permute(src, order)
    a, b = analyze_source(src), analyze_source(swapped)
    assert a.escim_value(SiMode.DELTA) == b.escim_value(SiMode.DELTA)
    assert a.si_program(SiMode.DELTA) == b.si_program(SiMode.DELTA)


def test_moving_assignment_between_nesting_levels_changes_value():
    src = fixture_source("sum_loop.mc")
    infos = permutable_slots(src)
    loop_slot = next(s.index for s in infos if s.in_loop and s.has_delta)
    top_slot = max(s.index for s in infos if s.top_level and not s.is_decl)
    order = list(range(len(infos)))
    order[loop_slot], order[top_slot] = order[top_slot], order[loop_slot]
    moved = permute(src, order)
    assert analyze_source(moved).escim_value() != analyze_source(src).escim_value()


def test_use_before_declaration_is_invalid():
    with pytest.raises(InvalidPermutation):
        permute("int main() { int a; a = 1; }", [1, 0])


def test_order_must_be_a_permutation():
    with pytest.raises(InvalidPermutation):
        permute("int main() { int a; a = 1; }", [0, 0])


def test_permute_preserves_statement_multiset():
    src = fixture_source("sum_loop.mc")
    infos = permutable_slots(src)
    order = list(range(len(infos)))
    order[0], order[1] = order[1], order[0]
    try:
        swapped = permute(src, order)
    except InvalidPermutation:
        return
    assert sorted(swapped.split()) == sorted(pretty_printed(src).split())


def pretty_printed(src):
    from minicog import pretty_print

    return pretty_print(parse_source(src))


# ------------------------------------------------------------------ checks

@pytest.fixture(scope="module")
def small_pool():
    return ValidatorPool(corpus_pairs(), seed=0, n_generated=40)


def test_p1_witnessed_by_unit_vs_nested_fixture(small_pool):
    verdict = check_property("1", SiMode.DELTA, small_pool)
    assert verdict.status == "witnessed"
    assert verdict.witness["values"][0] != verdict.witness["values"][1]


def test_p4_witnessed_by_equivalent_pair(small_pool):
    for mode in SiMode:
        verdict = check_property("4", mode, small_pool)
        assert verdict.status == "witnessed"
        names = {verdict.witness["p"]["name"], verdict.witness["q"]["name"]}
        assert names == {"sum_loop.mc", "sum_formula.mc"}


def test_p6a_witnessed_in_absolute_mode(small_pool):
    verdict = check_property("6a", SiMode.ABSOLUTE, small_pool)
    assert verdict.status == "witnessed"


def test_p6_baseline_modes_carry_note(small_pool):
    for prop in ("6a", "6b"):
        for mode in (SiMode.DELTA, SiMode.MINMAX):
            verdict = check_property(prop, mode, small_pool)
            assert verdict.note  # documented deviation, never a silent verdict


def test_p5_p8_hold_on_small_sample(small_pool):
    for mode in SiMode:
        assert check_property("5", mode, small_pool).status == "holds-on-sample"
        assert check_property("8", mode, small_pool).status == "holds-on-sample"
        assert check_property("2", mode, small_pool).status == "holds-on-sample"


def test_p9_witnessed(small_pool):
    for mode in SiMode:
        assert check_property("9", mode, small_pool).status == "witnessed"


def test_p9_absolute_inequality_and_disjoint_equality():
    p = fixture_source("p6_p.mc")   # assigns v
    r = fixture_source("p6_r.mc")   # reads and reassigns v
    q = fixture_source("p6_q.mc")   # disjoint from p
    val = lambda src: analyze_source(src).escim_value(SiMode.ABSOLUTE)
    assert val(compose(p, r)) >= val(p) + val(r)
    assert val(compose(p, q)) == val(p) + val(q)


def test_empty_pool_yields_no_witnesses():
    pool = ValidatorPool([], seed=0, n_generated=0)
    for prop in ("1", "3", "4", "6a", "6b", "7", "9"):
        assert check_property(prop, SiMode.DELTA, pool).status == "no-witness-found"
    assert check_property("2", SiMode.DELTA, pool).status == "holds-on-sample"


def test_matrix_is_deterministic():
    corpus = corpus_pairs()[:4]
    first = run_matrix(corpus, seed=3, n_generated=15)
    second = run_matrix(corpus, seed=3, n_generated=15)
    assert [(v.prop, v.mode, v.status, v.witness, v.note) for v in first.verdicts] == \
        [(v.prop, v.mode, v.status, v.witness, v.note) for v in second.verdicts]
