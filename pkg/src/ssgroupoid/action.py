"""Self-similar groupoid actions: the action/restriction recursion and its consequences.

The rule table gives, for each generator ``g`` and each edge ``e`` with
``r(e) == d(g)``, the image edge ``g·e`` and the restriction word ``g|_e``.
Everything else (inverses, units, words, paths) is derived from it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence

from .graph import Graph, Path, circuits_with_entry_check, paths_of_length, strongly_connected
from .words import Letter, Word, WordError, free_reduce, parse_token


class ActionError(ValueError):
    pass


class DomainError(ActionError):
    """A word was applied to a path that does not start at its domain."""


class ClosureExceeded(RuntimeError):
    def __init__(self, message: str, states: int = 0, word_len: int = 0):
        super().__init__(message)
        self.states = states
        self.word_len = word_len


@dataclass(frozen=True)
class Budget:
    depth: int = 12
    max_states: int = 20000
    max_word_len: int = 64


DEFAULT_BUDGET = Budget()


class Outcome(str, Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Path | None = None
    depth: int | None = None

    @property
    def equal(self) -> bool:
        return self.outcome is Outcome.EQUAL

    @property
    def not_equal(self) -> bool:
        return self.outcome is Outcome.NOT_EQUAL

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN


EQUAL = Verdict(Outcome.EQUAL)


@dataclass(frozen=True)
class Generator:
    name: str
    d: str
    t: str


class SelfSimilarAction:
    """A groupoid generated by ``generators`` acting self-similarly on the path forest of ``graph``.

    ``rules`` maps ``(generator, edge)`` to ``(image edge, restriction)``; the
    restriction may be a :class:`Word` or a list of tokens.  Unit and inverse
    rules are derived and must not be listed.
    """

    def __init__(self, graph: Graph, generators: Sequence[Generator], rules: Mapping[tuple[str, str], tuple[str, object]]):
        self.graph = graph
        self.generators: tuple[Generator, ...] = tuple(generators)
        self._gen = {g.name: g for g in self.generators}
        if len(self._gen) != len(self.generators):
            raise ActionError("duplicate generator name")
        for g in self.generators:
            if graph.is_vertex(g.name) or graph.is_edge(g.name):
                raise ActionError(f"generator name {g.name!r} clashes with a vertex or edge")
            for end in (g.d, g.t):
                if not graph.is_vertex(end):
                    raise ActionError(f"generator {g.name!r}: unknown vertex {end!r}")

        self.rules: dict[tuple[str, str], tuple[str, Word]] = {}
        for (name, e), (img, res) in rules.items():
            where = f"rule ({name}, {e})"
            if name not in self._gen:
                raise ActionError(f"{where}: unknown generator {name!r}")
            g = self._gen[name]
            if not graph.is_edge(e) or not graph.is_edge(img):
                raise ActionError(f"{where}: unknown edge")
            if graph.range(e) != g.d:
                raise ActionError(f"{where}: r({e}) = {graph.range(e)} but d({name}) = {g.d}")
            if graph.range(img) != g.t:
                raise ActionError(f"{where}: image {img} has range {graph.range(img)}, expected t({name}) = {g.t}")
            w = res if isinstance(res, Word) else self.word(res)
            if w.d != graph.source(e) or w.t != graph.source(img):
                raise ActionError(
                    f"{where}: restriction {w} must go from s({e}) = {graph.source(e)} "
                    f"to s({img}) = {graph.source(img)}"
                )
            self.rules[(name, e)] = (img, w)

        self._letter_rules: dict[tuple[Letter, str], tuple[str, Word]] = {}
        for g in self.generators:
            images = []
            for e in graph.edges_at(g.d):
                if (g.name, e) not in self.rules:
                    raise ActionError(f"generator {g.name!r} has no rule for edge {e!r}")
                img, w = self.rules[(g.name, e)]
                images.append(img)
                self._letter_rules[((g.name, 1), e)] = (img, w)
                self._letter_rules[((g.name, -1), img)] = (e, w.inverse())
            if sorted(images) != sorted(graph.edges_at(g.t)):
                raise ActionError(f"generator {g.name!r} does not map {g.d}E^1 bijectively onto {g.t}E^1")
        self._edge_cache: dict[tuple[Word, str], tuple[str, Word]] = {}
        self._eq_cache: dict[tuple[Word, Budget], Verdict] = {}

    def __repr__(self) -> str:
        return f"SelfSimilarAction({self.graph!r}, generators={[g.name for g in self.generators]})"

    # -- words -------------------------------------------------------------

    def letter_ends(self, letter: Letter) -> tuple[str, str]:
        g = self._gen[letter[0]]
        return (g.d, g.t) if letter[1] == 1 else (g.t, g.d)

    def letters(self) -> list[Letter]:
        return [(g.name, s) for g in self.generators for s in (1, -1)]

    def generator(self, name: str) -> Word:
        g = self._gen[name]
        return Word(((name, 1),), g.d, g.t)

    def unit(self, v: str) -> Word:
        if not self.graph.is_vertex(v):
            raise ActionError(f"unknown vertex {v!r}")
        return Word.unit(v)

    def word(self, tokens: str | Iterable[str]) -> Word:
        """Parse tokens listed outermost-first; a vertex name stands for its unit."""
        if isinstance(tokens, str):
            tokens = tokens.replace(",", " ").split()
        tokens = list(tokens)
        if not tokens:
            raise ActionError("empty word: use a vertex name for a unit")
        pieces: list[Word] = []
        for tok in tokens:
            if self.graph.is_vertex(tok):
                pieces.append(Word.unit(tok))
                continue
            letter = parse_token(tok)
            if letter[0] not in self._gen:
                raise ActionError(f"unknown generator token {tok!r}")
            d, t = self.letter_ends(letter)
            pieces.append(Word((letter,), d, t))
        out = pieces[-1]
        for w in reversed(pieces[:-1]):
            try:
                out = w * out
            except WordError:
                raise ActionError(f"word {' '.join(tokens)} is not composable at {w}") from None
        return out

    def rule_table(self) -> dict[Word, dict[str, tuple[str, Word]]]:
        """The enriched rule table: generators, their inverses and the units."""
        table: dict[Word, dict[str, tuple[str, Word]]] = {}
        for v in self.graph.vertices:
            table[Word.unit(v)] = {e: (e, Word.unit(self.graph.source(e))) for e in self.graph.edges_at(v)}
        for g in self.generators:
            for sign in (1, -1):
                letter = (g.name, sign)
                d, t = self.letter_ends(letter)
                table[Word((letter,), d, t)] = {e: self._letter_rules[(letter, e)] for e in self.graph.edges_at(d)}
        return table

    # -- the recursion ------------------------------------------------------

    def act_restrict_edge(self, w: Word, e: str) -> tuple[str, Word]:
        key = (w, e)
        hit = self._edge_cache.get(key)
        if hit is not None:
            return hit
        if self.graph.range(e) != w.d:
            raise DomainError(f"cannot apply {w} to {e}: r({e}) = {self.graph.range(e)} but d = {w.d}")
        cur = e
        pieces: list[Word] = []
        for letter in reversed(w.letters):
            cur, res = self._letter_rules[(letter, cur)]
            pieces.append(res)
        if pieces:
            letters: list[Letter] = []
            for p in reversed(pieces):
                letters.extend(p.letters)
            res = Word(free_reduce(letters), self.graph.source(e), self.graph.source(cur))
        else:
            res = Word.unit(self.graph.source(e))
        self._edge_cache[key] = (cur, res)
        return cur, res

    def act_edge(self, w: Word, e: str) -> str:
        return self.act_restrict_edge(w, e)[0]

    def restrict_edge(self, w: Word, e: str) -> Word:
        return self.act_restrict_edge(w, e)[1]

    def act_restrict_path(self, w: Word, mu: Path) -> tuple[Path, Word]:
        if mu.root != w.d:
            raise DomainError(f"cannot apply {w} to {mu}: path starts at {mu.root} but d = {w.d}")
        if mu.is_vertex():
            return Path.vertex(w.t), w
        out: list[str] = []
        cur = w
        for e in mu.edges:
            img, cur = self.act_restrict_edge(cur, e)
            out.append(img)
        return Path(w.t, tuple(out), cur.t), cur

    def act_path(self, w: Word, mu: Path) -> Path:
        return self.act_restrict_path(w, mu)[0]

    def restrict_path(self, w: Word, mu: Path) -> Word:
        return self.act_restrict_path(w, mu)[1]

    # -- equality -----------------------------------------------------------

    def element_equal(self, w1: Word, w2: Word, budget: Budget = DEFAULT_BUDGET) -> Verdict:
        """Decide whether two words act identically on the path forest.

        Explores the restrictions of ``w2^-1 w1`` breadth-first; a moved edge
        gives a witness path, an exhausted closure proves equality, and an
        exhausted budget gives ``UNKNOWN``.
        """
        if w1.d != w2.d:
            return Verdict(Outcome.NOT_EQUAL, None, 0)
        if w1.t != w2.t:
            return Verdict(Outcome.NOT_EQUAL, Path.vertex(w1.d), 0)
        if w1 == w2:
            return EQUAL
        h = w2.inverse() * w1
        return self._trivial(h, budget)

    def _trivial(self, h: Word, budget: Budget) -> Verdict:
        key = (h, budget)
        hit = self._eq_cache.get(key)
        if hit is not None:
            return hit
        graph = self.graph
        seen = {h}
        frontier = deque([(h, Path.vertex(h.d), 0)])
        exhausted = None
        verdict = None
        while frontier and verdict is None:
            g, mu, depth = frontier.popleft()
            if g.is_unit():
                continue
            if depth >= budget.depth:
                exhausted = depth
                continue
            for e in graph.edges_at(g.d):
                img, res = self.act_restrict_edge(g, e)
                if img != e:
                    verdict = Verdict(Outcome.NOT_EQUAL, graph.extend(mu, e), depth + 1)
                    break
                if res in seen or res.is_unit():
                    continue
                if len(res) > budget.max_word_len or len(seen) >= budget.max_states:
                    exhausted = depth + 1
                    continue
                seen.add(res)
                frontier.append((res, graph.extend(mu, e), depth + 1))
        if verdict is None:
            verdict = EQUAL if exhausted is None else Verdict(Outcome.UNKNOWN, None, exhausted)
        self._eq_cache[key] = verdict
        return verdict

    def is_unit_element(self, w: Word, budget: Budget = DEFAULT_BUDGET) -> Verdict:
        return self.element_equal(w, Word.unit(w.d), budget)

    def composable_words(self, max_len: int) -> list[Word]:
        """All freely reduced composable words of length at most ``max_len``, units included."""
        out = [Word.unit(v) for v in self.graph.vertices]
        level = [Word((x,), *self.letter_ends(x)) for x in self.letters()]
        for _ in range(max_len):
            out.extend(level)
            nxt = []
            for w in level:
                for x in self.letters():
                    d, t = self.letter_ends(x)
                    if t == w.d and not (x[0] == w.letters[-1][0] and x[1] == -w.letters[-1][1]):
                        nxt.append(Word(w.letters + (x,), d, w.t))
            level = nxt
        return out


def derive_inverses_and_units(action: SelfSimilarAction) -> dict[Word, dict[str, tuple[str, Word]]]:
    return action.rule_table()


def act_edge(action: SelfSimilarAction, w: Word, e: str) -> str:
    return action.act_edge(w, e)


def restrict_edge(action: SelfSimilarAction, w: Word, e: str) -> Word:
    return action.restrict_edge(w, e)


def act_path(action: SelfSimilarAction, w: Word, mu: Path) -> Path:
    return action.act_path(w, mu)


def restrict_path(action: SelfSimilarAction, w: Word, mu: Path) -> Word:
    return action.restrict_path(w, mu)


def element_equal(action: SelfSimilarAction, w1: Word, w2: Word, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return action.element_equal(w1, w2, budget)


# -- pseudo-freeness ------------------------------------------------------------


@dataclass(frozen=True)
class PseudoFreeReport:
    status: str  # "holds" | "fails" | "unknown"
    witness: tuple[Word, str] | None = None
    words_checked: int = 0
    max_len: int = 0


def pseudo_free_check(action: SelfSimilarAction, max_len: int = 4, budget: Budget = DEFAULT_BUDGET) -> PseudoFreeReport:
    """Look for ``g != unit`` with ``g·e = e`` and ``g|_e`` a unit.

    Candidates are the reduced words of length ``<= max_len`` together with
    everything they restrict to.  Words are compared as elements of the
    groupoid freely generated by the rule table, so a generator with trivial
    rules is a violation even though it acts like a unit.
    """
    candidates = action.composable_words(max_len)
    seen = set(candidates)
    queue = deque(candidates)
    checked = 0
    while queue:
        g = queue.popleft()
        checked += 1
        for e in action.graph.edges_at(g.d):
            img, res = action.act_restrict_edge(g, e)
            if img == e and res.is_unit() and not g.is_unit():
                return PseudoFreeReport("fails", (g, e), checked, max_len)
            if res not in seen:
                if len(res) > budget.max_word_len or len(seen) >= budget.max_states:
                    return PseudoFreeReport("unknown", None, checked, max_len)
                seen.add(res)
                queue.append(res)
    return PseudoFreeReport("holds", None, checked, max_len)


# -- closure automaton and nucleus ---------------------------------------------------


@dataclass
class ClosureAutomaton:
    states: list[Word]
    transitions: dict[tuple[int, str], tuple[str, int]] = field(default_factory=dict)

    def successors(self, i: int) -> set[int]:
        return {j for (k, _), (_, j) in self.transitions.items() if k == i}

    def index(self, w: Word) -> int:
        return self.states.index(w)


def _initial_states(action: SelfSimilarAction) -> list[Word]:
    states = [Word.unit(v) for v in action.graph.vertices]
    for g in action.generators:
        states.append(action.generator(g.name))
        states.append(action.generator(g.name).inverse())
    return states


def _find_equal(action: SelfSimilarAction, w: Word, states: Sequence[Word], budget: Budget) -> int | None:
    for i, s in enumerate(states):
        if s.d == w.d and s.t == w.t and action.element_equal(w, s, budget).equal:
            return i
    return None


def contracting_closure(action: SelfSimilarAction, budget: Budget = DEFAULT_BUDGET) -> ClosureAutomaton:
    """Close generators, inverses and units under edge restriction.

    States are deduplicated with :meth:`SelfSimilarAction.element_equal`;
    pairs whose comparison is inconclusive are kept apart.  Raises
    :class:`ClosureExceeded` past the budget.
    """
    states: list[Word] = []
    index: dict[Word, int] = {}
    for w in _initial_states(action):
        j = _find_equal(action, w, states, budget)
        if j is None:
            index[w] = len(states)
            states.append(w)
        else:
            index[w] = j
    aut = ClosureAutomaton(states)
    i = 0
    while i < len(states):
        g = states[i]
        for e in action.graph.edges_at(g.d):
            img, res = action.act_restrict_edge(g, e)
            j = index.get(res)
            if j is None:
                j = _find_equal(action, res, states, budget)
                if j is None:
                    if len(res) > budget.max_word_len:
                        raise ClosureExceeded(f"restriction {res} longer than {budget.max_word_len}", len(states), len(res))
                    if len(states) >= budget.max_states:
                        raise ClosureExceeded(f"more than {budget.max_states} states", len(states), len(res))
                    j = len(states)
                    states.append(res)
                index[res] = j
            aut.transitions[(i, e)] = (img, j)
        i += 1
    return aut


def _reach(succ: Mapping[int, set[int]], starts: Iterable[int]) -> set[int]:
    seen = set(starts)
    stack = list(seen)
    while stack:
        for j in succ[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


@dataclass(frozen=True)
class MooreEdge:
    source: Word
    edge: str
    image: str
    target: Word


@dataclass
class Nucleus:
    states: list[Word]
    edges: list[MooreEdge]


def nucleus(automaton: ClosureAutomaton) -> Nucleus:
    """Recurrent part of a closure automaton with its Moore diagram."""
    n = len(automaton.states)
    succ = {i: automaton.successors(i) for i in range(n)}
    cyclic = [i for i in range(n) if i in _reach(succ, succ[i])]
    keep = sorted(_reach(succ, cyclic))
    edges = [
        MooreEdge(automaton.states[i], e, img, automaton.states[j])
        for (i, e), (img, j) in sorted(automaton.transitions.items())
        if i in keep
    ]
    return Nucleus([automaton.states[i] for i in keep], edges)


def moore_diagram(action: SelfSimilarAction, states: Sequence[Word], budget: Budget = DEFAULT_BUDGET) -> Nucleus:
    """Moore diagram on a restriction-closed set of states."""
    edges = []
    for g in states:
        for e in action.graph.edges_at(g.d):
            img, res = action.act_restrict_edge(g, e)
            j = _find_equal(action, res, states, budget)
            if j is None:
                raise ActionError(f"{g}|_{e} = {res} is not among the states")
            edges.append(MooreEdge(g, e, img, states[j]))
    return Nucleus(list(states), edges)


def moore_dot(nuc: Nucleus, name: str = "moore") -> str:
    def q(s: object) -> str:
        return '"' + str(s).replace('"', r"\"") + '"'

    lines = [f"digraph {name} {{"]
    for w in nuc.states:
        lines.append(f"  {q(w)};")
    for m in nuc.edges:
        lines.append(f"  {q(m.source)} -> {q(m.target)} [label={q(f'({m.edge}, {m.image})')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class ContractionReport:
    status: str  # "contracting" | "unknown"
    nucleus: list[Word]
    note: str = ""


def contraction_check(action: SelfSimilarAction, budget: Budget = DEFAULT_BUDGET, max_nucleus: int = 256) -> ContractionReport:
    """Certify contraction by showing every product of two nucleus elements restricts into the nucleus.

    Starts from the recurrent part of the generator closure.  Restriction
    cycles found outside the current candidate are recurrent elements and get
    added, after which the check restarts.
    """
    try:
        core = nucleus(contracting_closure(action, budget)).states
    except ClosureExceeded as exc:
        return ContractionReport("unknown", [], f"generator closure: {exc}")
    while True:
        grown = False
        for g, h in cartesian(list(core), repeat=2):
            if g.d != h.t:
                continue
            cyc = _restriction_cycle(action, g * h, core, budget)
            if cyc is None:
                return ContractionReport("unknown", core, f"exploring {g} * {h} exceeded the budget")
            if cyc:
                for w in _closure_words(action, cyc, budget):
                    if _find_equal(action, w, core, budget) is None:
                        core.append(w)
                grown = True
                if len(core) > max_nucleus:
                    return ContractionReport("unknown", core, f"nucleus candidate exceeds {max_nucleus} elements")
                break
        if not grown:
            return ContractionReport("contracting", core)


def _closure_words(action: SelfSimilarAction, starts: Iterable[Word], budget: Budget) -> list[Word]:
    out = list(dict.fromkeys(starts))
    seen = set(out)
    i = 0
    while i < len(out) and len(out) <= budget.max_states:
        for e in action.graph.edges_at(out[i].d):
            res = action.restrict_edge(out[i], e)
            if res not in seen:
                seen.add(res)
                out.append(res)
        i += 1
    return out


def _restriction_cycle(action: SelfSimilarAction, start: Word, core: Sequence[Word], budget: Budget) -> list[Word] | None:
    """Words outside ``core`` lying on a restriction cycle reachable from ``start``.

    Returns ``[]`` when every restriction path ends in ``core`` and ``None``
    when the exploration exceeds the budget.
    """
    inside: dict[Word, bool] = {}

    def in_core(w: Word) -> bool:
        if w not in inside:
            inside[w] = _find_equal(action, w, core, budget) is not None
        return inside[w]

    if in_core(start):
        return []
    succ: dict[Word, list[Word]] = {}
    stack = [start]
    while stack:
        w = stack.pop()
        if w in succ:
            continue
        nxt = []
        for e in action.graph.edges_at(w.d):
            res = action.restrict_edge(w, e)
            if not in_core(res):
                nxt.append(res)
                if res not in succ:
                    if len(res) > budget.max_word_len or len(succ) >= budget.max_states:
                        return None
                    stack.append(res)
        succ[w] = nxt
    nodes = list(succ)
    pos = {w: i for i, w in enumerate(nodes)}
    isucc = {pos[w]: {pos[x] for x in succ[w]} for w in nodes}
    return [nodes[i] for i in range(len(nodes)) if i in _reach(isucc, isucc[i])]


# -- dynamics --------------------------------------------------------------------------


def _orbits(items: Sequence, pairs: Iterable[tuple]) -> list[list]:
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    classes: dict = {}
    for x in items:
        classes.setdefault(find(x), []).append(x)
    return list(classes.values())


def vertex_orbits(action: SelfSimilarAction) -> list[list[str]]:
    """Orbits of the unit space under the generators, in vertex order."""
    return _orbits(action.graph.vertices, [(g.d, g.t) for g in action.generators])


def level_orbits(action: SelfSimilarAction, k: int) -> list[list[Path]]:
    level = paths_of_length(action.graph, k)
    pairs = []
    for g in action.generators:
        w = action.generator(g.name)
        for mu in level:
            if mu.root == g.d:
                pairs.append((mu, action.act_path(w, mu)))
    return _orbits(level, pairs)


def level_transitive(action: SelfSimilarAction, n: int) -> list[bool]:
    """Entry ``k`` tells whether the action is transitive on paths of length ``k``."""
    return [len(level_orbits(action, k)) == 1 for k in range(n + 1)]


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    witness: tuple[str, str] | None = None


def minimality_report(action: SelfSimilarAction) -> MinimalityReport:
    """G-transitivity of the graph, equivalently minimality of the groupoid of germs.

    Vertices are linked by graph paths (directed) and by generators (both
    ways); minimality holds iff the resulting digraph is strongly connected.
    """
    graph = action.graph
    arcs = [(graph.source(e), graph.range(e)) for e in graph.edge_names]
    for g in action.generators:
        arcs += [(g.d, g.t), (g.t, g.d)]
    ok, witness = strongly_connected(graph.vertices, arcs)
    return MinimalityReport(ok, witness)


def g_transitive(action: SelfSimilarAction) -> bool:
    return minimality_report(action).minimal


@dataclass
class EffectivenessReport:
    status: str  # "effective" | "not_effective" | "unknown"
    circuit: Path | None = None
    element: Word | None = None
    moved: dict[str, str] = field(default_factory=dict)
    pseudo_free: str = ""


def effectiveness_report(action: SelfSimilarAction, budget: Budget = DEFAULT_BUDGET) -> EffectivenessReport:
    """Entry condition on circuits, plus every non-unit closure state moving some path."""
    pf = pseudo_free_check(action, budget=budget).status
    entry = circuits_with_entry_check(action.graph)
    if not entry:
        return EffectivenessReport("not_effective", circuit=entry.circuit, pseudo_free=pf)
    try:
        aut = contracting_closure(action, budget)
    except ClosureExceeded:
        return EffectivenessReport("unknown", pseudo_free=pf)
    moved: dict[str, str] = {}
    status = "effective"
    for g in aut.states:
        if g.is_unit():
            continue
        v = action.is_unit_element(g, budget)
        if v.not_equal:
            moved[str(g)] = str(v.witness)
        elif v.equal:
            return EffectivenessReport("not_effective", element=g, moved=moved, pseudo_free=pf)
        else:
            status = "unknown"
    return EffectivenessReport(status, moved=moved, pseudo_free=pf)


# -- G-circuits ----------------------------------------------------------------------


@dataclass(frozen=True)
class GCircuit:
    g: Word
    alpha: Path


def g_circuit_fixed_prefix(action: SelfSimilarAction, circuit: GCircuit, n: int) -> tuple[Path, list[tuple[Path, Word]]]:
    """Prefix ``α¹α²…αⁿ`` of the infinite path built from a G-circuit, with the sequence ``(αᵏ, gₖ)``."""
    g, alpha = circuit.g, circuit.alpha
    if len(alpha) < 1 or alpha.root != g.d or alpha.end != g.t:
        raise ActionError(f"({g}, {alpha}) is not a G-circuit")
    if n < 1:
        raise ActionError("n must be at least 1")
    seq = [(alpha, g)]
    out = alpha
    for _ in range(n - 1):
        a, h = seq[-1]
        img, res = action.act_restrict_path(h, a)
        if img.root != a.end:
            raise ActionError(f"G-circuit recursion broke at {a}")
        seq.append((img, res))
        out = out + img
    return out, seq

