"""Built-in regression suite over the bundled corpus.

Every check is seeded and the report carries no timings, so two runs with the
same seed serialize to identical bytes.
"""

from __future__ import annotations

import random

from .action import (
    contraction_check,
    effectiveness_report,
    level_transitive,
    minimality_report,
    moore_diagram,
    pseudo_free_check,
)
from .homology import chain2, delta1, delta2, h0_truncated, h1_identity_witnesses, stabilization
from .io import CORPUS_ACTIONS, load_action, load_table
from .sampling import random_composable_pair, random_table, random_triple
from .semigroup import ZERO, cocycle_rho, invert, multiply
from .tables import compose, compose_all, equal, identity_table, inverse, pointwise_agree, split_column

FOREST_DERIVED = {
    ("a^-1", "e2"): ("e1", "u"),
    ("a^-1", "e6"): ("e3", "b^-1"),
    ("b^-1", "e5"): ("e2", "a^-1"),
    ("b^-1", "e4"): ("e6", "c^-1"),
    ("c^-1", "e2"): ("e4", "a"),
    ("c^-1", "e6"): ("e5", "b^-1"),
    ("u", "e1"): ("e1", "u"),
    ("u", "e3"): ("e3", "v"),
    ("v", "e2"): ("e2", "u"),
    ("v", "e6"): ("e6", "w"),
    ("w", "e4"): ("e4", "v"),
    ("w", "e5"): ("e5", "v"),
}

NUCLEUS_EDGES = {
    ("a", "e2", "e3", "b"), ("a", "e1", "e4", "u"),
    ("b", "e4", "e2", "a"), ("b", "e3", "e1", "u"),
    ("a^-1", "e4", "e1", "u"), ("a^-1", "e3", "e2", "b^-1"),
    ("b^-1", "e1", "e3", "u"), ("b^-1", "e2", "e4", "a^-1"),
    ("u", "e1", "e1", "u"), ("u", "e2", "e2", "v"),
    ("v", "e3", "e3", "u"), ("v", "e4", "e4", "u"),
}


def _forest_rules() -> dict:
    f = load_action("forest")
    table = f.rule_table()
    bad = []
    for (w, e), (img, res) in sorted(FOREST_DERIVED.items()):
        got = table[f.word(w)][e]
        if got[0] != img or str(got[1]) != res:
            bad.append(f"{w}.{e}")
    return {"checked": len(FOREST_DERIVED), "mismatches": bad, "passed": not bad}


def _product() -> dict:
    f = load_action("forest")
    names = ["forest-tau3", "forest-tau2", "forest-tau1", "forest-tau"]
    p = compose_all(f, [load_table(f, n) for n in names])
    v = equal(f, p, load_table(f, "forest-tau-product"))
    w = f.word("a^-1 c b a a^-1 c b a")
    u = f.element_equal(w, f.unit("u"))
    return {
        "product": [str(x) for x in p.columns],
        "equal_to_expected": v.outcome.value,
        "square_vs_unit": u.outcome.value,
        "passed": v.equal and u.not_equal,
    }


def _nucleus() -> dict:
    a = load_action("nucleus")
    rep = contraction_check(a)
    diag = moore_diagram(a, rep.nucleus)
    edges = {(str(m.source), m.edge, m.image, str(m.target)) for m in diag.edges}
    states = sorted(str(w) for w in rep.nucleus)
    return {
        "states": states,
        "edges": len(edges),
        "passed": rep.status == "contracting" and set(states) == {"u", "v", "a", "a^-1", "b", "b^-1"} and edges == NUCLEUS_EDGES,
    }


def _agree(action, t1, t2, depth: int) -> bool:
    return pointwise_agree(action, t1, t2, depth)[0]


def _tables(rng: random.Random, per_action: int, depth: int) -> dict:
    out = {}
    for name in CORPUS_ACTIONS:
        a = load_action(name)
        fails = 0
        for _ in range(per_action):
            t = random_table(a, rng)
            s = split_column(a, t, rng.randrange(len(t)))
            order = list(range(len(t)))
            rng.shuffle(order)
            p = t.permuted(order)
            if not (_agree(a, t, s, depth) and _agree(a, t, p, depth) and equal(a, t, s).equal):
                fails += 1
        out[name] = fails
    return {"per_action": per_action, "depth": depth, "failures": out, "passed": not any(out.values())}


def _group_axioms(rng: random.Random, count: int, depth: int) -> dict:
    fails = 0
    names = list(CORPUS_ACTIONS)
    for i in range(count):
        a = load_action(names[i % len(names)])
        t1, t2, t3 = (random_table(a, rng) for _ in range(3))
        ident = identity_table(a)
        ok = equal(a, compose(a, t1, inverse(t1)), ident).equal
        left = compose(a, compose(a, t1, t2), t3)
        right = compose(a, t1, compose(a, t2, t3))
        ok = ok and equal(a, left, right).equal and _agree(a, left, right, depth)
        fails += not ok
    return {"triples": count, "failures": fails, "passed": fails == 0}


def _semigroup(rng: random.Random, count: int) -> dict:
    fails = 0
    nonzero = 0
    names = list(CORPUS_ACTIONS)
    for i in range(count):
        a = load_action(names[i % len(names)])
        x, y, z = (random_triple(a, rng) for _ in range(3))
        xy = multiply(a, x, y)
        ok = multiply(a, xy, z) == multiply(a, x, multiply(a, y, z))
        ok = ok and invert(xy) == multiply(a, invert(y), invert(x))
        ok = ok and multiply(a, multiply(a, x, invert(x)), x) == x
        if xy is not ZERO:
            nonzero += 1
            ok = ok and cocycle_rho(xy) == cocycle_rho(x) + cocycle_rho(y)
        fails += not ok
    return {"products": count, "nonzero": nonzero, "failures": fails, "passed": fails == 0}


def _chains(rng: random.Random, count: int) -> dict:
    out = {}
    for name in CORPUS_ACTIONS:
        a = load_action(name)
        fails = 0
        for _ in range(count):
            x, y = random_composable_pair(a, rng)
            if not delta1(a, delta2(a, chain2({(x, y): 1}))).is_zero():
                fails += 1
        out[name] = fails
    ident = {n: h1_identity_witnesses(load_action(n), 10, rng.randrange(1 << 30))["all_verified"] for n in CORPUS_ACTIONS}
    return {"failures": out, "identities": ident, "passed": not any(out.values()) and all(ident.values())}


def _homology() -> dict:
    u = load_action("units-example")
    st = stabilization(u, 1)
    f = load_action("forest")
    kernel = [h0_truncated(f, n, True) for n in range(4)]
    ok_kernel = all(p.free_rank == 1 and not p.invariant_factors and p.colimit == ((2,),) for p in kernel)
    return {
        "units_level1": str(st.lower),
        "units_stabilized": st.stabilized,
        "forest_kernel_ranks": [p.free_rank for p in kernel],
        "forest_kernel_colimit": [[list(r) for r in p.colimit] for p in kernel],
        "passed": st.stabilized and st.lower.is_trivial() and ok_kernel,
    }


def _dynamics() -> dict:
    f, k = load_action("forest"), load_action("katsura")
    res = {
        "forest_minimal": minimality_report(f).minimal,
        "forest_effective": effectiveness_report(f).status,
        "forest_pseudo_free": pseudo_free_check(f).status,
        "forest_level_transitive": level_transitive(f, 5),
        "katsura_minimal": minimality_report(k).minimal,
        "katsura_pseudo_free": pseudo_free_check(k).status,
    }
    res["passed"] = (
        res["forest_minimal"] and res["forest_effective"] == "effective"
        and res["forest_pseudo_free"] == "holds" and all(res["forest_level_transitive"])
        and res["katsura_minimal"]
    )
    return res


def run(seed: int = 0, scale: int = 1) -> dict:
    """Run every check; ``scale`` multiplies the sample sizes."""
    rng = random.Random(seed)
    sections = {
        "forest_rules": _forest_rules(),
        "table_product": _product(),
        "nucleus_example": _nucleus(),
        "tables": _tables(rng, 10 * scale, 5),
        "group_axioms": _group_axioms(rng, 10 * scale, 5),
        "semigroup": _semigroup(rng, 200 * scale),
        "chain_complex": _chains(rng, 100 * scale),
        "homology": _homology(),
        "dynamics": _dynamics(),
    }
    return {"seed": seed, "scale": scale, "sections": sections, "all_passed": all(s["passed"] for s in sections.values())}
