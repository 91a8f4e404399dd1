import pytest
from hypothesis import given, settings, strategies as st

from ssgroupoid.graph import (
    Graph,
    GraphError,
    Path,
    circuits_with_entry_check,
    common_refinement,
    complement_code,
    is_prefix_code,
    paths_of_length,
    strongly_connected,
)


def test_forest_adjacency(forest):
    assert forest.graph.adjacency_matrix() == [[1, 1, 0], [1, 0, 1], [0, 2, 0]]


def test_path_parsing_and_str(forest):
    g = forest.graph
    p = g.parse_path("e3.e2")
    assert (p.root, p.end, len(p)) == ("u", "u", 2)
    assert str(p) == "e3.e2"
    assert str(g.parse_path("w")) == "w"
    with pytest.raises(GraphError):
        g.parse_path("e2.e3.e1")


def test_prefix_and_suffix(forest):
    g = forest.graph
    p, q = g.parse_path("e3"), g.parse_path("e3.e6.e4")
    assert p.is_prefix_of(q) and not q.is_prefix_of(p)
    assert str(q.suffix_after(p)) == "e6.e4"
    assert p + q.suffix_after(p) == q
    assert Path.vertex("u").is_prefix_of(q)
    assert not Path.vertex("v").comparable(q)


def test_bad_graphs():
    with pytest.raises(GraphError):
        Graph(["u", "v"], [("e", "u", "u")])  # v is a source
    with pytest.raises(GraphError):
        Graph(["u"], [("e", "u", "u"), ("e", "u", "u")])
    with pytest.raises(GraphError):
        Graph(["u"], [("u", "u", "u")])


def test_level_sizes(forest):
    # every vertex receives two edges
    assert [len(paths_of_length(forest.graph, k)) for k in range(5)] == [3, 6, 12, 24, 48]


def test_prefix_codes(forest):
    g = forest.graph
    code = [g.parse_path(x) for x in ["u", "v", "e4", "e5"]]
    assert is_prefix_code(g, code)
    bad = is_prefix_code(g, [g.parse_path(x) for x in ["u", "v", "e4"]])
    assert not bad and str(bad.uncovered) == "e5"
    overlap = is_prefix_code(g, [g.parse_path(x) for x in ["u", "e1", "v", "w"]])
    assert not overlap and overlap.comparable is not None


def test_complement_of_two_cylinders(forest):
    g = forest.graph
    rest = complement_code(g, [g.parse_path("e4"), Path.vertex("v")])
    assert sorted(str(p) for p in rest) == ["e5", "u"]
    assert is_prefix_code(g, rest + [g.parse_path("e4"), Path.vertex("v")])


def test_condition_l():
    g = Graph(["u", "v"], [("e", "v", "u"), ("f", "u", "v")])
    check = circuits_with_entry_check(g)
    assert not check and len(check.circuit) == 2
    g2 = Graph(["u"], [("e", "u", "u"), ("f", "u", "u")])
    assert circuits_with_entry_check(g2)


def test_strongly_connected():
    assert strongly_connected(["a", "b"], [("a", "b"), ("b", "a")]) == (True, None)
    ok, w = strongly_connected(["a", "b"], [("a", "b")])
    assert not ok and w == ("b", "a")


def _random_code(g, seed, splits):
    import random

    rng = random.Random(seed)
    code = [Path.vertex(v) for v in g.vertices]
    for _ in range(splits):
        p = code.pop(rng.randrange(len(code)))
        code.extend(g.children(p))
    return code


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 6), st.integers(0, 6))
def test_common_refinement_is_code_refining_both(forest, seed, s1, s2):
    g = forest.graph
    a, b = _random_code(g, seed, s1), _random_code(g, seed + 1, s2)
    assert is_prefix_code(g, a) and is_prefix_code(g, b)
    c = common_refinement(a, b)
    assert is_prefix_code(g, c)
    for p in c:
        assert any(x.is_prefix_of(p) for x in a)
        assert any(x.is_prefix_of(p) for x in b)
