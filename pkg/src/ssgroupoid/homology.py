"""Chains of basic bisections, the boundary maps and truncated H0/H1 computations.

Degree-0 chains are supported on paths (``χ_{Z(α)}``), degree-1 chains on
triples (``χ_{Z(α,g,β)}``) and degree-2 chains on composable pairs of
triples.  Everything is exact integer arithmetic on formal sums.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .action import SelfSimilarAction, _orbits
from .graph import Path, paths_of_length, paths_up_to
from .intmatrix import AbelianGroup, cokernel, is_surjective
from .sampling import random_path, random_word
from .semigroup import Triple, extend
from .tables import GTable, TableError, validate
from .words import Word


class ChainError(ValueError):
    pass


def _sort_key(key):
    if isinstance(key, Path):
        return (key.key,)
    if isinstance(key, Triple):
        return (key.bottom.key, key.top.key, key.word)
    return tuple(_sort_key(k) for k in key)


class Chain:
    """A finitely supported integer combination of basic bisections of one degree."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping | Iterable = ()):
        self.degree = degree
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coef in items:
            self._check(key)
            acc[key] = acc.get(key, 0) + int(coef)
        self._terms = {k: v for k, v in acc.items() if v}

    def _check(self, key) -> None:
        ok = {
            0: isinstance(key, Path),
            1: isinstance(key, Triple),
            2: isinstance(key, tuple) and len(key) == 2 and all(isinstance(k, Triple) for k in key),
        }.get(self.degree, False)
        if not ok:
            raise ChainError(f"{key!r} is not a degree-{self.degree} support")
        if self.degree == 2 and key[0].bottom != key[1].top:
            raise ChainError(f"pair ({key[0]}, {key[1]}) is not composable")

    @classmethod
    def basis(cls, degree: int, key) -> "Chain":
        return cls(degree, {key: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def _same(self, other: "Chain") -> None:
        if not isinstance(other, Chain) or other.degree != self.degree:
            raise ChainError("chains of different degree")

    def __add__(self, other: "Chain") -> "Chain":
        self._same(other)
        return Chain(self.degree, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, n: int) -> "Chain":
        return Chain(self.degree, {k: n * v for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Chain) and other.degree == self.degree and other._terms == self._terms

    def __hash__(self):
        return hash((self.degree, frozenset(self._terms.items())))

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"Chain{self.degree}(0)"
        body = " + ".join(f"{c}*{_fmt(k)}" for k, c in self.sorted_items())
        return f"Chain{self.degree}({body})"


def _fmt(key) -> str:
    if isinstance(key, tuple):
        return f"{key[0]}x{key[1]}"
    return str(key)


def chain0(terms) -> Chain:
    return Chain(0, terms)


def chain1(terms) -> Chain:
    return Chain(1, terms)


def chain2(terms) -> Chain:
    return Chain(2, terms)


def delta1(action: SelfSimilarAction, c: Chain) -> Chain:
    if c.degree != 1:
        raise ChainError("delta1 takes a degree-1 chain")
    out: dict[Path, int] = {}
    for x, n in c.terms.items():
        out[x.bottom] = out.get(x.bottom, 0) + n
        out[x.top] = out.get(x.top, 0) - n
    return Chain(0, out)


def delta2(action: SelfSimilarAction, c: Chain) -> Chain:
    """``χ(α,g,β)×χ(β,h,γ) ↦ χ(β,h,γ) − χ(α,gh,γ) + χ(α,g,β)``."""
    if c.degree != 2:
        raise ChainError("delta2 takes a degree-2 chain")
    out: list[tuple[Triple, int]] = []
    for (x, y), n in c.terms.items():
        out.append((y, n))
        out.append((Triple(x.top, x.word * y.word, y.bottom), -n))
        out.append((x, n))
    return Chain(1, out)


def normalize_to_level(action: SelfSimilarAction, c: Chain, n: int) -> Chain:
    """Rewrite every support by its children until all bottoms have length ``n``."""
    graph = action.graph
    out: list = []
    for key, coef in c.terms.items():
        stack = [key]
        while stack:
            k = stack.pop()
            depth = len(k) if c.degree == 0 else len(k.bottom)
            if depth > n:
                raise ChainError(f"support {k} is deeper than level {n}")
            if depth == n:
                out.append((k, coef))
            elif c.degree == 0:
                stack.extend(graph.children(k))
            elif c.degree == 1:
                for e in graph.edges_at(k.bottom.end):
                    stack.append(extend(action, k, graph.path([e], k.bottom.end)))
            else:
                raise ChainError("only degree 0 and 1 chains can be normalized")
    return Chain(c.degree, out)


def table_chain(table: GTable) -> Chain:
    return Chain(1, [(x, 1) for x in table.columns])


# ---- H0 ----------------------------------------------------------------

@dataclass(frozen=True)
class H0Presentation:
    level: int
    kernel_only: bool
    generators: tuple[Path, ...]
    relations: tuple[tuple[tuple[int, int], ...], ...]
    group: AbelianGroup
    orbit_classes: tuple[tuple[str, ...], ...]
    colimit: tuple[tuple[int, ...], ...] | None = None

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.torsion

    @property
    def free_rank(self) -> int:
        return self.group.free_rank

    def relation_matrix(self) -> list[list[int]]:
        rows = []
        for r in self.relations:
            row = [0] * len(self.generators)
            for c, v in r:
                row[c] = v
            rows.append(row)
        return rows


def _class_of(action: SelfSimilarAction) -> tuple[dict[str, int], list[list[str]]]:
    classes = _orbits(list(action.graph.vertices), [(g.d, g.t) for g in action.generators])
    return {v: i for i, cls in enumerate(classes) for v in cls}, classes


def h0_truncated(action: SelfSimilarAction, n: int, kernel_only: bool = False) -> H0Presentation:
    """Truncated presentation of H0 at level ``n``.

    Full variant: generators ``x_α`` for ``|α| ≤ n`` with the child relations
    ``x_α = Σ_e x_{αe}`` below level ``n`` and star-shaped orbit relations.
    Kernel variant: generators ``x_α`` for ``|α| = n`` with orbit relations
    only; it also carries the colimit map to level ``n + 1`` on orbit classes.
    """
    if n < 0:
        raise ValueError("level must be non-negative")
    graph = action.graph
    cls_of, classes = _class_of(action)
    gens = paths_of_length(graph, n) if kernel_only else paths_up_to(graph, n)
    index = {p: i for i, p in enumerate(gens)}
    rows: list[dict[int, int]] = []
    if not kernel_only:
        for p in gens:
            if len(p) < n:
                r = {index[p]: 1}
                for c in graph.children(p):
                    r[index[c]] = r.get(index[c], 0) - 1
                rows.append(r)
    rep: dict[int, int] = {}
    for p in gens:
        k = cls_of[p.end]
        if k not in rep:
            rep[k] = index[p]
        elif rep[k] != index[p]:
            rows.append({index[p]: 1, rep[k]: -1})
    colimit = None
    if kernel_only:
        colimit = []
        for k in sorted(rep):
            p = gens[rep[k]]
            counts = {}
            for e in graph.edges_at(p.end):
                j = cls_of[graph.source(e)]
                counts[j] = counts.get(j, 0) + 1
            colimit.append(tuple(counts.get(j, 0) for j in range(len(classes))))
        colimit = tuple(colimit)
    return H0Presentation(
        level=n,
        kernel_only=kernel_only,
        generators=tuple(gens),
        relations=tuple(tuple(sorted(r.items())) for r in rows),
        group=cokernel(rows, len(gens)),
        orbit_classes=tuple(tuple(c) for c in classes),
        colimit=colimit,
    )


def colimit_images(action: SelfSimilarAction, lower: H0Presentation, upper: H0Presentation) -> list[dict[int, int]]:
    """Images of the level-n generators in the level-(n+1) presentation."""
    graph = action.graph
    index = {p: i for i, p in enumerate(upper.generators)}
    out = []
    for p in lower.generators:
        if lower.kernel_only:
            r: dict[int, int] = {}
            for c in graph.children(p):
                r[index[c]] = r.get(index[c], 0) + 1
            out.append(r)
        else:
            out.append({index[p]: 1})
    return out


@dataclass(frozen=True)
class Stabilization:
    level: int
    lower: AbelianGroup
    upper: AbelianGroup
    same_invariants: bool
    surjective: bool

    @property
    def stabilized(self) -> bool:
        return self.same_invariants and self.surjective


def stabilization(action: SelfSimilarAction, n: int, kernel_only: bool = False) -> Stabilization:
    """Compare levels ``n`` and ``n + 1`` through the colimit map.

    A surjection between finitely generated abelian groups with the same
    invariants is an isomorphism, so both checks together certify it.
    """
    lo = h0_truncated(action, n, kernel_only)
    hi = h0_truncated(action, n + 1, kernel_only)
    images = colimit_images(action, lo, hi)
    target = [dict(r) for r in hi.relations]
    surj = is_surjective(images, target, len(hi.generators))
    return Stabilization(n, lo.group, hi.group, lo.group == hi.group, surj)


def h0_report(action: SelfSimilarAction, n: int, kernel_only: bool = False) -> dict:
    p = h0_truncated(action, n, kernel_only)
    st = stabilization(action, n, kernel_only)
    doc = {
        "level": n,
        "kernel_only": kernel_only,
        "generators": len(p.generators),
        "relations": len(p.relations),
        "invariant_factors": list(p.invariant_factors),
        "free_rank": p.free_rank,
        "group": str(p.group),
        "next_level_group": str(st.upper),
        "stabilized": st.stabilized,
        "colimit_surjective": st.surjective,
    }
    if p.colimit is not None:
        doc["orbit_classes"] = [list(c) for c in p.orbit_classes]
        doc["colimit_matrix"] = [list(r) for r in p.colimit]
    return doc


# ---- H1 identities -------------------------------------------------------

@dataclass(frozen=True)
class IdentityWitness:
    name: str
    claim: Chain
    preimage: Chain
    verified: bool


def unit_identity(beta: Path) -> IdentityWitness:
    """``χ(β,s(β),β)`` is a boundary."""
    x = Triple.identity_on(beta)
    claim = chain1({x: 1})
    pre = chain2({(x, x): 1})
    return IdentityWitness("unit", claim, pre, False)


def antisymmetry_identity(x: Triple) -> IdentityWitness:
    """``χ(α,g,β) + χ(β,g⁻¹,α)`` is a boundary."""
    y = Triple(x.bottom, x.word.inverse(), x.top)
    q = Triple.identity_on(x.top)
    claim = chain1([(x, 1), (y, 1)])
    pre = chain2([((x, y), 1), ((q, q), 1)])
    return IdentityWitness("antisymmetry", claim, pre, False)


def transport_identity(alpha: Path, beta: Path, g: Word) -> IdentityWitness:
    """``χ(α,g,α) − χ(β,g,β)`` is a boundary when ``s(α) = s(β)`` and ``g`` is a loop there."""
    if alpha.end != beta.end or g.d != alpha.end or g.t != alpha.end:
        raise ChainError("transport needs s(alpha) = s(beta) = d(g) = t(g)")
    a = Triple(alpha, g, alpha)
    xx = Triple(alpha, Word.unit(alpha.end), beta)
    b = Triple(beta, g, beta)
    claim = chain1([(a, 1), (b, -1)])
    pre = chain2([((a, xx), 1), ((xx, b), -1)])
    return IdentityWitness("transport", claim, pre, False)


def additivity_identity(alpha: Path, g: Word, h: Word) -> IdentityWitness:
    """``χ(α,g,α) + χ(α,h,α) − χ(α,gh,α)`` is a boundary."""
    a, b = Triple(alpha, g, alpha), Triple(alpha, h, alpha)
    c = Triple(alpha, g * h, alpha)
    claim = chain1([(a, 1), (b, 1), (c, -1)])
    pre = chain2({(a, b): 1})
    return IdentityWitness("additivity", claim, pre, False)


def verify(action: SelfSimilarAction, w: IdentityWitness) -> IdentityWitness:
    ok = delta2(action, w.preimage) == w.claim
    return IdentityWitness(w.name, w.claim, w.preimage, ok)


def random_kernel_triple(action: SelfSimilarAction, rng: random.Random, level: int, word_len: int = 4) -> Triple:
    """A triple with ``|α| = |β| = level`` and a random word between the sources."""
    cls_of, _ = _class_of(action)
    beta = random_path(action, rng, level)
    same = [p for p in paths_of_length(action.graph, level) if cls_of[p.end] == cls_of[beta.end]]
    alpha = rng.choice(same)
    return Triple(alpha, random_word(action, rng, word_len, beta.end, alpha.end), beta)


def h1_identity_witnesses(action: SelfSimilarAction, samples: int = 25, seed: int = 0, level: int = 2) -> dict:
    """Check the four H1 identities on sampled data with explicit δ2-preimages."""
    rng = random.Random(seed)
    graph = action.graph
    results: dict[str, dict] = {}
    counter: list[str] = []

    def record(w: IdentityWitness) -> None:
        w = verify(action, w)
        r = results.setdefault(w.name, {"checked": 0, "verified": 0})
        r["checked"] += 1
        r["verified"] += int(w.verified)
        if not w.verified:
            counter.append(f"{w.name}: {w.claim!r}")

    for _ in range(samples):
        k = rng.randint(0, level)
        record(unit_identity(random_path(action, rng, k)))
        record(antisymmetry_identity(random_kernel_triple(action, rng, k)))
        alpha = random_path(action, rng, k)
        same = [p for p in paths_of_length(graph, k) if p.end == alpha.end]
        beta = rng.choice(same)
        v = alpha.end
        g = random_word(action, rng, rng.randint(0, 4), v, v)
        h = random_word(action, rng, rng.randint(0, 4), v, v)
        record(transport_identity(alpha, beta, g))
        record(additivity_identity(alpha, g, h))
    return {
        "samples": samples,
        "seed": seed,
        "identities": results,
        "counterexamples": counter,
        "all_verified": not counter,
    }


# ---- index classes -------------------------------------------------------

@dataclass(frozen=True)
class IndexClass:
    chain: Chain
    level: int
    boundary: Chain

    @property
    def is_cycle(self) -> bool:
        return self.boundary.is_zero()


def index_class(action: SelfSimilarAction, table: GTable, n: int | None = None) -> IndexClass:
    """Indicator chain of the full bisection of a table, normalized to a uniform bottom level.

    The certificate is ``δ1`` of the chain after both rows are normalized to
    a common level, which must vanish.
    """
    check = validate(action, table)
    if not check:
        raise TableError(check.message)
    deepest = max(len(x.bottom) for x in table.columns)
    level = deepest if n is None else n
    c = normalize_to_level(action, table_chain(table), level)
    b = delta1(action, c)
    depth = max([len(p) for p in b.terms] + [0])
    return IndexClass(c, level, normalize_to_level(action, b, depth))
