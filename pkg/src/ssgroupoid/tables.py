"""G-tables: the Higman–Thompson group of a self-similar action.

A table is a list of columns ``(α_i, g_i, β_i)`` whose top and bottom rows are
prefix codes; it acts on infinite paths by ``β_i μ ↦ α_i (g_i·μ)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .action import DEFAULT_BUDGET, EQUAL, Budget, Outcome, SelfSimilarAction, Verdict
from .graph import Path, common_refinement, complement_code, is_prefix_code
from .semigroup import Triple, invert
from .words import Word


class TableError(ValueError):
    pass


class NeedMoreInput(ValueError):
    """The path is a proper prefix of a bottom path, so its image is not determined yet."""


def _bottom_key(x: Triple):
    return (x.bottom.key, x.top.key, x.word)


@dataclass(frozen=True)
class GTable:
    columns: tuple[Triple, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))

    @property
    def tops(self) -> list[Path]:
        return [x.top for x in self.columns]

    @property
    def bottoms(self) -> list[Path]:
        return [x.bottom for x in self.columns]

    def __len__(self) -> int:
        return len(self.columns)

    def sorted(self) -> "GTable":
        return GTable(tuple(sorted(self.columns, key=_bottom_key)))

    def permuted(self, order: Sequence[int]) -> "GTable":
        return GTable(tuple(self.columns[i] for i in order))

    def degrees(self) -> list[int]:
        return [len(x.top) - len(x.bottom) for x in self.columns]

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.columns) + "]"


@dataclass(frozen=True)
class TableCheck:
    ok: bool
    column: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(action: SelfSimilarAction, table: GTable) -> TableCheck:
    graph = action.graph
    for i, x in enumerate(table.columns):
        for p in (x.top, x.bottom):
            try:
                graph.path(p.edges, p.root)
            except Exception as exc:
                return TableCheck(False, i, f"invalid path {p}: {exc}")
        if x.word.d != x.bottom.end or x.word.t != x.top.end:
            return TableCheck(False, i, f"word {x.word} does not go from s({x.bottom}) to s({x.top})")
    for row, paths in (("top", table.tops), ("bottom", table.bottoms)):
        if len(set(paths)) != len(paths):
            dup = next(p for p in paths if paths.count(p) > 1)
            return TableCheck(False, paths.index(dup), f"{row} row repeats {dup}")
        check = is_prefix_code(graph, paths)
        if not check:
            if check.comparable:
                p, q = check.comparable
                return TableCheck(False, paths.index(p), f"{row} row has comparable paths {p} and {q}")
            return TableCheck(False, None, f"{row} row not complete: {check.uncovered} is not covered")
    return TableCheck(True)


def identity_table(action: SelfSimilarAction) -> GTable:
    return GTable(tuple(Triple.identity_on(Path.vertex(v)) for v in action.graph.vertices))


def split_triple(action: SelfSimilarAction, x: Triple) -> list[Triple]:
    graph = action.graph
    out = []
    for e in graph.edges_at(x.bottom.end):
        img, res = action.act_restrict_edge(x.word, e)
        out.append(Triple(graph.extend(x.top, img), res, graph.extend(x.bottom, e)))
    return out


def split_column(action: SelfSimilarAction, table: GTable, i: int) -> GTable:
    if not 0 <= i < len(table):
        raise TableError(f"column index {i} out of range")
    cols = list(table.columns)
    cols[i:i + 1] = split_triple(action, cols[i])
    return GTable(tuple(cols)).sorted()


def apply(action: SelfSimilarAction, table: GTable, mu: Path) -> tuple[Path, Word]:
    """Image of the cylinder ``Z(μ)``: ``(α(g·ν), g|_ν)`` for the column with ``μ = βν``."""
    for x in table.columns:
        if x.bottom.is_prefix_of(mu):
            img, res = action.act_restrict_path(x.word, mu.suffix_after(x.bottom))
            return x.top + img, res
    if any(mu.is_prefix_of(b) for b in table.bottoms):
        raise NeedMoreInput(f"{mu} is shorter than the bottom path covering it")
    raise TableError(f"{mu} lies in no bottom cylinder")


def evaluate_all(action: SelfSimilarAction, table: GTable, depth: int) -> dict[Path, tuple[Path, Word] | None]:
    """``apply`` on every path of length ``depth``; ``None`` marks paths that need more input."""
    graph = action.graph
    out: dict[Path, tuple[Path, Word] | None] = {}
    for x in table.columns:
        if len(x.bottom) > depth:
            out[x.bottom.truncate(depth, graph)] = None
            continue
        stack = [(x.bottom, x.top, x.word)]
        while stack:
            mu, img, w = stack.pop()
            if len(mu) == depth:
                out[mu] = (img, w)
                continue
            for e in graph.edges_at(mu.end):
                f, res = action.act_restrict_edge(w, e)
                stack.append((graph.extend(mu, e), graph.extend(img, f), res))
    return out


def pointwise_agree(action: SelfSimilarAction, t1: GTable, t2: GTable, depth: int, budget: Budget = DEFAULT_BUDGET) -> tuple[bool, Path | None]:
    """Compare two tables on every path of length ``depth``.

    Cylinders where either table needs more input are compared one level
    deeper, down to the longest bottom path, so nothing is skipped.  Residual
    words are compared with :meth:`SelfSimilarAction.element_equal`.
    """
    deepest = max([len(b) for b in t1.bottoms + t2.bottoms] + [depth])
    d = depth
    e1, e2 = evaluate_all(action, t1, d), evaluate_all(action, t2, d)
    while True:
        if e1.keys() != e2.keys():
            return False, min(e1.keys() ^ e2.keys(), key=lambda p: p.key)
        pending = []
        for mu in sorted(e1, key=lambda p: p.key):
            x, y = e1[mu], e2[mu]
            if x is None or y is None:
                pending.append(mu)
            elif x[0] != y[0] or not action.element_equal(x[1], y[1], budget).equal:
                return False, mu
        if not pending:
            return True, None
        if d >= deepest:
            return False, pending[0]
        d += 1
        e1 = {k: v for k, v in evaluate_all(action, t1, d).items() if any(p.is_prefix_of(k) for p in pending)}
        e2 = {k: v for k, v in evaluate_all(action, t2, d).items() if any(p.is_prefix_of(k) for p in pending)}


def _refine(action: SelfSimilarAction, columns: Iterable[Triple], code: Sequence[Path], side: str) -> dict[Path, Triple]:
    target = set(code)
    out: dict[Path, Triple] = {}
    stack = list(columns)
    while stack:
        x = stack.pop()
        p = x.top if side == "top" else x.bottom
        if p in target:
            out[p] = x
        elif any(p.is_prefix_of(c) for c in target):
            stack.extend(split_triple(action, x))
        else:
            raise TableError(f"{side} path {p} is not refined by the target code")
    return out


def compose(action: SelfSimilarAction, t1: GTable, t2: GTable) -> GTable:
    """The table of ``ξ ↦ t1(t2(ξ))``."""
    code = common_refinement(t2.tops, t1.bottoms)
    lower = _refine(action, t2.columns, code, "top")
    upper = _refine(action, t1.columns, code, "bottom")
    cols = []
    for c in code:
        x, y = upper[c], lower[c]
        cols.append(Triple(x.top, x.word * y.word, y.bottom))
    return GTable(tuple(cols)).sorted()


def compose_all(action: SelfSimilarAction, tables: Sequence[GTable]) -> GTable:
    """``tables[0] ∘ tables[1] ∘ ...``; the last table acts first."""
    out = tables[-1]
    for t in reversed(tables[:-1]):
        out = compose(action, t, out)
    return out


def inverse(table: GTable) -> GTable:
    return GTable(tuple(invert(x) for x in table.columns)).sorted()


def _pull_back(action: SelfSimilarAction, table: GTable, mu: Path) -> Path:
    """A path whose image under ``table`` has ``mu`` as a prefix."""
    graph = action.graph
    while True:
        try:
            return apply(action, table, mu)[0]
        except NeedMoreInput:
            mu = graph.children(mu)[0]


def _moved_point(action: SelfSimilarAction, x: Triple, budget: Budget) -> tuple[Outcome, Path | None]:
    """Is the map of column ``x`` the identity on ``Z(bottom)``?  Returns a moved path if not."""
    if x.top == x.bottom:
        v = action.is_unit_element(x.word, budget)
        if v.not_equal:
            return Outcome.NOT_EQUAL, x.bottom + v.witness
        return v.outcome, None
    graph = action.graph
    level = [Path.vertex(x.bottom.end)]
    for _ in range(budget.depth + 1):
        for mu in level:
            img = x.top + action.act_path(x.word, mu)
            orig = x.bottom + mu
            k = min(len(img), len(orig))
            if img.truncate(k, graph) != orig.truncate(k, graph):
                return Outcome.NOT_EQUAL, orig
        level = [c for p in level for c in graph.children(p)]
        if len(level) > budget.max_states:
            break
    return Outcome.UNKNOWN, None


def equal(action: SelfSimilarAction, t1: GTable, t2: GTable, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Do two tables induce the same homeomorphism?

    Tests ``t1 ∘ t2⁻¹`` for the identity column by column; a ``NOT_EQUAL``
    witness is a path on which ``t1`` and ``t2`` disagree.
    """
    inv2 = inverse(t2)
    p = compose(action, t1, inv2)
    unknown = False
    for x in p.columns:
        outcome, moved = _moved_point(action, x, budget)
        if outcome is Outcome.NOT_EQUAL:
            return Verdict(Outcome.NOT_EQUAL, _pull_back(action, inv2, moved), len(moved))
        if outcome is Outcome.UNKNOWN:
            unknown = True
    return Verdict(Outcome.UNKNOWN, None, budget.depth) if unknown else EQUAL


def is_identity(action: SelfSimilarAction, table: GTable, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    return equal(action, table, identity_table(action), budget)


def is_transposition(action: SelfSimilarAction, table: GTable, budget: Budget = DEFAULT_BUDGET) -> bool | None:
    """Whether the table squares to the identity; ``None`` if undecided within budget."""
    v = is_identity(action, compose(action, table, table), budget)
    return None if v.unknown else v.equal


def from_plain_table(action: SelfSimilarAction, rows: Iterable[tuple[Path, Path]]) -> GTable:
    """Embed a table of the underlying graph by putting units in the middle row."""
    cols = []
    for alpha, beta in rows:
        if alpha.end != beta.end:
            raise TableError(f"column ({alpha}, {beta}): s({alpha}) != s({beta})")
        cols.append(Triple(alpha, Word.unit(alpha.end), beta))
    table = GTable(tuple(cols))
    check = validate(action, table)
    if not check:
        raise TableError(check.message)
    return table


def transposition_hat(action: SelfSimilarAction, x: Triple) -> GTable:
    """The transposition swapping ``Z(β)`` and ``Z(α)`` via ``x`` and fixing the rest."""
    if x.top.comparable(x.bottom):
        raise TableError(f"cylinders of {x.top} and {x.bottom} overlap")
    rest = complement_code(action.graph, [x.top, x.bottom])
    cols = [x, invert(x)] + [Triple.identity_on(p) for p in rest]
    return GTable(tuple(cols)).sorted()


def _sub(text: str) -> str:
    return text if len(text) == 1 else "{" + text + "}"


def unitary_string(table: GTable) -> str:
    parts = []
    for x in table.sorted().columns:
        parts.append(f"S_{_sub(str(x.top))} U_{_sub(str(x.word))} S_{_sub(str(x.bottom))}*")
    return " + ".join(parts)
