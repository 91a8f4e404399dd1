import random

import pytest
from hypothesis import given, settings, strategies as st

from ssgroupoid.graph import Path
from ssgroupoid.io import CORPUS_ACTIONS, load_action, load_table, table_to_data
from ssgroupoid.sampling import random_path, random_table, random_triple
from ssgroupoid.semigroup import Triple
from ssgroupoid.tables import (
    GTable,
    NeedMoreInput,
    TableError,
    apply,
    compose,
    compose_all,
    equal,
    from_plain_table,
    identity_table,
    inverse,
    is_identity,
    is_transposition,
    pointwise_agree,
    split_column,
    transposition_hat,
    unitary_string,
    validate,
)

from oracles import NaiveAction, corpus_doc, naive_table_eval

ACTIONS = {n: load_action(n) for n in CORPUS_ACTIONS}
NAIVE = {n: NaiveAction(corpus_doc(n)) for n in CORPUS_ACTIONS}
names = st.sampled_from(CORPUS_ACTIONS)
seeds = st.integers(0, 10**6)


def test_corpus_tables_validate(forest):
    for n in ["forest-tau", "forest-tau-split", "forest-tau1", "forest-tau2", "forest-tau3", "forest-tau-product"]:
        assert validate(forest, load_table(forest, n))


def test_split_reproduces_corpus(forest):
    tau = load_table(forest, "forest-tau")
    assert equal(forest, tau, load_table(forest, "forest-tau-split")).equal
    assert split_column(forest, tau, 0) == load_table(forest, "forest-tau-split").sorted()


def test_product_example(forest):
    names_ = ["forest-tau3", "forest-tau2", "forest-tau1", "forest-tau"]
    p = compose_all(forest, [load_table(forest, n) for n in names_])
    assert [str(x) for x in p.columns] == ["(e4, v, e4)", "(e5, v, e5)", "(u, a^-1 c b c b a, u)", "(v, v, v)"]
    assert equal(forest, p, load_table(forest, "forest-tau-product")).equal


def test_plain_table_and_transposition(forest):
    g = forest.graph
    x = Triple(g.parse_path("e4"), forest.word("c b"), Path.vertex("v"))
    t = transposition_hat(forest, x)
    assert sorted(str(c.bottom) for c in t.columns) == ["e4", "e5", "u", "v"]
    assert is_transposition(forest, t) is True
    assert is_identity(forest, compose(forest, t, t)).equal
    assert "S_{e4}" in unitary_string(t)
    with pytest.raises(TableError):
        transposition_hat(forest, Triple.identity_on(g.parse_path("e4")))
    plain = from_plain_table(forest, [(Path.vertex(v), Path.vertex(v)) for v in g.vertices])
    assert is_identity(forest, plain).equal


def test_need_more_input(forest):
    tau = load_table(forest, "forest-tau-split")
    deep = max(tau.columns, key=lambda c: len(c.bottom))
    with pytest.raises(NeedMoreInput):
        apply(forest, tau, Path.vertex(deep.bottom.root))


def test_invalid_table(forest):
    g = forest.graph
    t = GTable((Triple.identity_on(Path.vertex("u")),))
    assert not validate(forest, t)
    dup = GTable(tuple(Triple.identity_on(Path.vertex(v)) for v in g.vertices) + (Triple.identity_on(g.parse_path("e1")),))
    assert not validate(forest, dup)


@pytest.mark.parametrize("name", CORPUS_ACTIONS)
@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_apply_matches_naive_evaluation(name, seed):
    a = ACTIONS[name]
    rng = random.Random(seed)
    t = random_table(a, rng)
    cols = table_to_data(t)
    deepest = max(len(c.bottom) for c in t.columns)
    for _ in range(5):
        mu = random_path(a, rng, deepest + 2)
        img, res = apply(a, t, mu)
        want = naive_table_eval(NAIVE[name], cols, mu.root, [str(e) for e in mu.edges])
        assert want is not None
        assert img.root == want[0] and [str(e) for e in img.edges] == want[1]


@settings(max_examples=40, deadline=None)
@given(names, seeds)
def test_equality_is_presentation_independent(name, seed):
    a = ACTIONS[name]
    rng = random.Random(seed)
    t = random_table(a, rng)
    s = split_column(a, t, rng.randrange(len(t)))
    order = list(range(len(t)))
    rng.shuffle(order)
    for other in (s, t.permuted(order)):
        assert equal(a, t, other).equal
        assert pointwise_agree(a, t, other, 5)[0]


@settings(max_examples=30, deadline=None)
@given(names, seeds)
def test_group_axioms(name, seed):
    a = ACTIONS[name]
    rng = random.Random(seed)
    t1, t2, t3 = (random_table(a, rng) for _ in range(3))
    assert validate(a, compose(a, t1, t2))
    assert is_identity(a, compose(a, t1, inverse(t1))).equal
    assert is_identity(a, compose(a, inverse(t1), t1)).equal
    assert equal(a, compose(a, identity_table(a), t1), t1).equal
    left = compose(a, compose(a, t1, t2), t3)
    right = compose(a, t1, compose(a, t2, t3))
    assert equal(a, left, right).equal


@settings(max_examples=30, deadline=None)
@given(names, seeds)
def test_inequality_has_real_witness(name, seed):
    a = ACTIONS[name]
    rng = random.Random(seed)
    t1, t2 = random_table(a, rng), random_table(a, rng)
    v = equal(a, t1, t2)
    if v.not_equal and v.witness is not None:
        deep = max(len(c.bottom) for c in t1.columns + t2.columns)
        xi = v.witness + random_path(a, rng, max(0, deep - len(v.witness)), v.witness.end)
        assert apply(a, t1, xi)[0] != apply(a, t2, xi)[0]
    if v.equal:
        assert pointwise_agree(a, t1, t2, 5)[0]


def test_transpositions_are_involutions():
    a = ACTIONS["forest"]
    rng = random.Random(3)
    done = 0
    while done < 20:
        x = random_triple(a, rng, 2)
        if x.top.comparable(x.bottom):
            continue
        t = transposition_hat(a, x)
        assert validate(a, t) and is_identity(a, compose(a, t, t)).equal
        done += 1
