"""JSON documents for actions, tables and chains, plus the bundled example corpus."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path as FilePath
from typing import Any

from .action import ActionError, Generator, SelfSimilarAction
from .graph import Graph, GraphError, Path
from .semigroup import Triple
from .tables import GTable
from .words import Word


class InputError(ValueError):
    pass


CORPUS_ACTIONS = ("forest", "lamplighter", "katsura", "nucleus", "units-example")
CORPUS_TABLES = (
    "forest-tau",
    "forest-tau-split",
    "forest-tau1",
    "forest-tau2",
    "forest-tau3",
    "forest-tau-product",
    "forest-plain",
)


def _read_json(text: str, origin: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(doc: dict, key: str, where: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    return doc[key]


def action_from_dict(doc: dict, origin: str = "<action>") -> SelfSimilarAction:
    gdoc = _field(doc, "graph", origin)
    vertices = _field(gdoc, "vertices", f"{origin}: graph")
    edges = []
    for i, e in enumerate(_field(gdoc, "edges", f"{origin}: graph")):
        where = f"{origin}: graph.edges[{i}]"
        edges.append((_field(e, "name", where), _field(e, "range", where), _field(e, "source", where)))
    try:
        graph = Graph(vertices, edges)
    except GraphError as exc:
        raise InputError(f"{origin}: graph: {exc}") from None

    gens = []
    for i, g in enumerate(_field(doc, "generators", origin)):
        where = f"{origin}: generators[{i}]"
        gens.append(Generator(_field(g, "name", where), _field(g, "d", where), _field(g, "t", where)))

    rules: dict[tuple[str, str], tuple[str, list[str]]] = {}
    for i, r in enumerate(_field(doc, "rules", origin)):
        where = f"{origin}: rules[{i}]"
        key = (_field(r, "generator", where), _field(r, "edge", where))
        if key in rules:
            raise InputError(f"{where}: duplicate rule for {key}")
        if graph.is_vertex(key[0]):
            raise InputError(f"{where}: unit rules are derived and must not be listed")
        restriction = _field(r, "restriction", where)
        if isinstance(restriction, str):
            restriction = restriction.split()
        rules[key] = (_field(r, "image", where), restriction)
    try:
        return SelfSimilarAction(graph, gens, rules)
    except ActionError as exc:
        raise InputError(f"{origin}: {exc}") from None


def action_to_dict(action: SelfSimilarAction) -> dict:
    graph = action.graph
    return {
        "graph": {
            "vertices": list(graph.vertices),
            "edges": [{"name": e, "range": graph.range(e), "source": graph.source(e)} for e in graph.edge_names],
        },
        "generators": [{"name": g.name, "d": g.d, "t": g.t} for g in action.generators],
        "rules": [
            {"generator": name, "edge": e, "image": img, "restriction": w.tokens}
            for (name, e), (img, w) in action.rules.items()
        ],
    }


def _corpus_text(name: str) -> str:
    return resources.files("ssgroupoid").joinpath("corpus", f"{name}.json").read_text(encoding="utf-8")


def load_action(ref: str) -> SelfSimilarAction:
    """Load an action from a JSON file, or from the corpus by name."""
    fp = FilePath(ref)
    if fp.is_file():
        text, origin = fp.read_text(encoding="utf-8"), ref
    elif ref in CORPUS_ACTIONS:
        text, origin = _corpus_text(ref), f"corpus:{ref}"
    else:
        raise InputError(f"{ref}: no such file or corpus action")
    return action_from_dict(_read_json(text, origin), origin)


def parse_word(action: SelfSimilarAction, tokens: Any, where: str = "word") -> Word:
    if isinstance(tokens, str):
        tokens = tokens.replace(",", " ").split()
    try:
        return action.word(tokens)
    except ActionError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_path(action: SelfSimilarAction, text: str, where: str = "path") -> Path:
    try:
        return action.graph.parse_path(text)
    except (GraphError, KeyError) as exc:
        raise InputError(f"{where}: {exc}") from None


def triple_to_dict(x: Triple) -> dict:
    return {"top": str(x.top), "word": x.word.tokens, "bottom": str(x.bottom)}


def triple_from_dict(action: SelfSimilarAction, doc: dict, where: str = "triple") -> Triple:
    top = parse_path(action, _field(doc, "top", where), f"{where}.top")
    bottom = parse_path(action, _field(doc, "bottom", where), f"{where}.bottom")
    word = parse_word(action, _field(doc, "word", where), f"{where}.word")
    if word.d != bottom.end or word.t != top.end:
        raise InputError(f"{where}: word {word} must go from s({bottom}) = {bottom.end} to s({top}) = {top.end}")
    return Triple(top, word, bottom)


def table_from_data(action: SelfSimilarAction, data: Any, origin: str = "<table>") -> GTable:
    cols = data["columns"] if isinstance(data, dict) and "columns" in data else data
    if not isinstance(cols, list):
        raise InputError(f"{origin}: a table is a list of columns")
    return GTable(tuple(triple_from_dict(action, c, f"{origin}: columns[{i}]") for i, c in enumerate(cols)))


def table_to_data(table: GTable) -> list[dict]:
    return [triple_to_dict(x) for x in table.columns]


def load_table(action: SelfSimilarAction, ref: str) -> GTable:
    fp = FilePath(ref)
    if fp.is_file():
        text, origin = fp.read_text(encoding="utf-8"), ref
    elif ref in CORPUS_TABLES:
        text, origin = _corpus_text(ref), f"corpus:{ref}"
    else:
        raise InputError(f"{ref}: no such file or corpus table")
    return table_from_data(action, _read_json(text, origin), origin)


def chain_to_data(chain) -> list[dict]:
    out = []
    for key, coef in chain.sorted_items():
        if isinstance(key, Path):
            support: Any = str(key)
        elif isinstance(key, Triple):
            support = triple_to_dict(key)
        else:
            support = [triple_to_dict(k) for k in key]
        out.append({"coef": coef, "support": support})
    return out


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
