import random

import pytest
from hypothesis import given, settings, strategies as st

from ssgroupoid.action import (
    ActionError,
    Budget,
    contraction_check,
    effectiveness_report,
    level_transitive,
    minimality_report,
    moore_diagram,
    moore_dot,
    pseudo_free_check,
    vertex_orbits,
)
from ssgroupoid.io import CORPUS_ACTIONS, InputError, action_from_dict, load_action
from ssgroupoid.sampling import random_path, random_word
from ssgroupoid.selftest import FOREST_DERIVED

from oracles import NaiveAction, corpus_doc

NAIVE = {n: NaiveAction(corpus_doc(n)) for n in CORPUS_ACTIONS}


def test_derived_forest_rules_match_oracle(forest):
    naive = NAIVE["forest"]
    for (w, e), (img, res) in FOREST_DERIVED.items():
        got_img, got_res = naive.act_word_edge([w], e)
        assert got_img == img
        assert got_res == [res]
        assert forest.act_restrict_edge(forest.word(w), e)[0] == img


def test_act_and_restrict_examples(forest):
    p = forest.graph.parse_path("e3.e2")
    assert str(forest.act_path(forest.word("a"), p)) == "e6.e5"
    assert str(forest.restrict_path(forest.word("a"), p)) == "a"
    with pytest.raises(ActionError):
        forest.act_path(forest.word("a"), forest.graph.parse_path("e2"))


@pytest.mark.parametrize("name", CORPUS_ACTIONS)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_action_matches_letterwise_oracle(name, seed):
    a = load_action(name)
    naive = NAIVE[name]
    rng = random.Random(seed)
    w = random_word(a, rng, rng.randint(0, 6), rng.choice(a.graph.vertices))
    mu = random_path(a, rng, rng.randint(1, 5), w.d)
    img, res = a.act_restrict_path(w, mu)
    nimg, nres = naive.act(w.tokens, list(mu.edges))
    assert list(img.edges) == nimg
    # the residual words agree as elements, checked on every path of length 3
    for p in naive.paths(res.d, 3):
        assert [str(x) for x in a.act_path(res, a.graph.path(p)).edges] == naive.act(nres, p)[0]


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_cocycle_identities(seed):
    a = load_action("forest")
    rng = random.Random(seed)
    h = random_word(a, rng, 4, rng.choice(a.graph.vertices))
    g = random_word(a, rng, 4, h.t)
    mu = random_path(a, rng, 3, h.d)
    assert a.act_path(g * h, mu) == a.act_path(g, a.act_path(h, mu))
    assert a.restrict_path(g * h, mu) == a.restrict_path(g, a.act_path(h, mu)) * a.restrict_path(h, mu)


def test_element_equal(forest):
    w = forest.word("a^-1 c b a a^-1 c b a")
    assert forest.element_equal(w, forest.unit("u")).not_equal
    assert forest.element_equal(forest.word("a^-1 a"), forest.unit(forest.word("a").d)).equal
    v = forest.element_equal(w, forest.unit("u"), Budget(depth=0, max_states=1, max_word_len=1))
    assert v.outcome.value in ("not_equal", "unknown")


def test_nucleus_example():
    a = load_action("nucleus")
    rep = contraction_check(a)
    assert rep.status == "contracting"
    assert sorted(str(s) for s in rep.nucleus) == ["a", "a^-1", "b", "b^-1", "u", "v"]
    diag = moore_diagram(a, rep.nucleus)
    assert len(diag.edges) == 12
    dot = moore_dot(diag, "nuc")
    assert dot.startswith("digraph") and dot.count("->") == 12


def test_forest_nucleus_size(forest):
    rep = contraction_check(forest)
    assert rep.status == "contracting"
    assert len(rep.nucleus) == 15


def test_lamplighter_budget_is_reported():
    rep = contraction_check(load_action("lamplighter"), max_nucleus=20)
    assert rep.status == "unknown"


def test_dynamics_forest(forest):
    assert minimality_report(forest).minimal
    assert effectiveness_report(forest).status == "effective"
    assert pseudo_free_check(forest).status == "holds"
    assert all(level_transitive(forest, 4))
    assert vertex_orbits(forest) == [["u", "v", "w"]]


def test_katsura_pseudo_free_witness():
    k = load_action("katsura")
    rep = pseudo_free_check(k)
    assert rep.status == "fails"
    assert minimality_report(k).minimal


def _one_vertex(restriction):
    return {
        "graph": {"vertices": ["u"], "edges": [{"name": "e", "range": "u", "source": "u"}, {"name": "f", "range": "u", "source": "u"}]},
        "generators": [{"name": "a", "d": "u", "t": "u"}],
        "rules": [
            {"generator": "a", "edge": "e", "image": "f", "restriction": ["u"]},
            {"generator": "a", "edge": "f", "image": "e", "restriction": restriction},
        ],
    }


def test_odometer_style_action():
    a = action_from_dict(_one_vertex(["a"]))
    assert str(a.act_path(a.word("a"), a.graph.parse_path("f.e"))) == "e.f"
    with pytest.raises(InputError):
        action_from_dict(_one_vertex(["zz"]))
