import pytest

from minicog import analyze_source
from minicog import ast
from minicog.generator import GeneratorConfig, generate


def count_statements(tree) -> int:
    blocks = (ast.Block,)
    return sum(1 for node in tree.nodes.values()
               if isinstance(node, ast.Stmt) and not isinstance(node, blocks))


def structure_depth(node, depth=0) -> int:
    structured = (ast.IfStmt, ast.SwitchStmt, ast.WhileStmt, ast.DoWhileStmt, ast.ForStmt)
    bump = 1 if isinstance(node, structured) else 0
    children = ast.child_nodes(node)
    if not children:
        return depth + bump
    return max(structure_depth(c, depth + bump) for c in children)


def test_same_seed_same_bytes():
    assert generate(1) == generate(1)
    assert generate(123456) == generate(123456)


def test_different_seeds_differ_somewhere():
    assert len({generate(s) for s in range(10)}) > 1


@pytest.mark.parametrize("seed", range(0, 200))
def test_soundness_sample(seed):
    analysis = analyze_source(generate(seed), f"gen-{seed}")
    assert analysis.report().escim >= 0


@pytest.mark.parametrize("seed", range(0, 60))
def test_bounds(seed):
    config = GeneratorConfig()
    tree = analyze_source(generate(seed, config)).tree
    assert count_statements(tree) <= config.max_statements
    assert max((structure_depth(item) for item in tree.items), default=0) <= config.max_depth


def test_declarations_carry_operator_free_initializers():
    # policy: every declaration is initialized by a literal, read() or a name
    for seed in range(0, 80):
        tree = analyze_source(generate(seed)).tree
        for node in tree.nodes.values():
            if isinstance(node, ast.DeclStmt):
                assert node.init is not None
                assert ast.operator_count(node.init) == 0
