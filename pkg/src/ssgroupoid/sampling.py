"""Seeded random words, paths, triples and tables for property checks and the selftest."""

from __future__ import annotations

import random
from collections import deque

from .action import ActionError, SelfSimilarAction, vertex_orbits
from .graph import Path
from .semigroup import Triple
from .tables import GTable, compose_all, transposition_hat
from .words import Word


def _moves(action: SelfSimilarAction) -> dict[str, list]:
    by_domain: dict[str, list] = {}
    for letter in action.letters():
        d, t = action.letter_ends(letter)
        by_domain.setdefault(d, []).append((letter, t))
    return by_domain


def connecting_word(action: SelfSimilarAction, a: str, b: str) -> Word | None:
    """A shortest word from ``a`` to ``b`` (``d = a``, ``t = b``), or ``None``."""
    if a == b:
        return Word.unit(a)
    by_domain = _moves(action)
    prev: dict[str, tuple | None] = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for letter, t in by_domain.get(v, []):
            if t in prev:
                continue
            prev[t] = (v, letter)
            if t == b:
                letters = []
                x = b
                while prev[x] is not None:
                    x, l = prev[x][0], prev[x][1]
                    letters.append(l)
                return Word(tuple(letters), a, b)
            queue.append(t)
    return None


def random_word(action: SelfSimilarAction, rng: random.Random, length: int, start: str, end: str | None = None) -> Word:
    """A random reduced word with ``d = start``, closed up to end at ``end`` if given."""
    by_domain = _moves(action)
    w = Word.unit(start)
    for _ in range(length):
        moves = by_domain.get(w.t, [])
        if not moves:
            break
        letter, t = rng.choice(moves)
        w = Word((letter,), w.t, t) * w
    if end is not None and w.t != end:
        back = connecting_word(action, w.t, end)
        if back is None:
            back = connecting_word(action, start, end)
            if back is None:
                raise ActionError(f"no groupoid element from {start} to {end}")
            return back
        w = back * w
    return w


def random_path(action: SelfSimilarAction, rng: random.Random, length: int, at: str | None = None) -> Path:
    graph = action.graph
    p = Path.vertex(at if at is not None else rng.choice(graph.vertices))
    for _ in range(length):
        p = graph.extend(p, rng.choice(graph.edges_at(p.end)))
    return p


def random_path_ending_at(action: SelfSimilarAction, rng: random.Random, length: int, end: str) -> Path:
    """A random path ``α`` with ``s(α) = end``."""
    graph = action.graph
    into = {v: [e for e in graph.edge_names if graph.source(e) == v] for v in graph.vertices}
    edges: list[str] = []
    v = end
    for _ in range(length):
        if not into[v]:
            break
        e = rng.choice(into[v])
        edges.append(e)
        v = graph.range(e)
    if not edges:
        return Path.vertex(end)
    return graph.path(list(reversed(edges)))


def random_triple(action: SelfSimilarAction, rng: random.Random, max_len: int = 3, word_len: int = 4) -> Triple:
    beta = random_path(action, rng, rng.randint(0, max_len))
    w = random_word(action, rng, rng.randint(0, word_len), beta.end)
    alpha = random_path_ending_at(action, rng, rng.randint(0, max_len), w.t)
    return Triple(alpha, w, beta)


def random_code(action: SelfSimilarAction, rng: random.Random, splits: int) -> list[Path]:
    graph = action.graph
    code = [Path.vertex(v) for v in graph.vertices]
    for _ in range(splits):
        i = rng.randrange(len(code))
        p = code.pop(i)
        code.extend(graph.children(p))
    return code


def random_local_table(action: SelfSimilarAction, rng: random.Random, splits: int = 3, word_len: int = 3) -> GTable:
    """Permute the cells of a random prefix code inside orbit classes of their sources."""
    cls = {v: i for i, orb in enumerate(vertex_orbits(action)) for v in orb}
    code = random_code(action, rng, splits)
    groups: dict[int, list[Path]] = {}
    for p in code:
        groups.setdefault(cls[p.end], []).append(p)
    cols = []
    for members in groups.values():
        tops = list(members)
        rng.shuffle(tops)
        for beta, alpha in zip(members, tops):
            cols.append(Triple(alpha, random_word(action, rng, rng.randint(0, word_len), beta.end, alpha.end), beta))
    return GTable(tuple(cols)).sorted()


def random_transposition(action: SelfSimilarAction, rng: random.Random, max_len: int = 3, tries: int = 50) -> GTable | None:
    for _ in range(tries):
        x = random_triple(action, rng, max_len)
        if not x.top.comparable(x.bottom):
            return transposition_hat(action, x)
    return None


def random_table(action: SelfSimilarAction, rng: random.Random, factors: int = 2, extra: list[GTable] | None = None) -> GTable:
    """A product of random local tables, transpositions and (optionally) given tables."""
    pool = list(extra or [])
    parts = []
    for _ in range(factors):
        kind = rng.random()
        t = None
        if kind < 0.3:
            t = random_transposition(action, rng, max_len=2)
        elif kind < 0.45 and pool:
            t = rng.choice(pool)
        if t is None:
            t = random_local_table(action, rng, splits=rng.randint(0, 4))
        parts.append(t)
    return compose_all(action, parts)


def random_composable_pair(action: SelfSimilarAction, rng: random.Random, max_len: int = 3, word_len: int = 4) -> tuple[Triple, Triple]:
    """``(x, y)`` with ``x.bottom == y.top``, a basic degree-2 support."""
    x = random_triple(action, rng, max_len, word_len)
    h = random_word(action, rng, rng.randint(0, word_len), x.bottom.end).inverse()
    zeta = random_path_ending_at(action, rng, rng.randint(0, max_len), h.d)
    return x, Triple(x.bottom, h, zeta)
