"""Command-line front end.

Exit codes: 0 when a verdict was computed (including negative ones), 1 for
invalid input, 2 when a budget ran out and the answer is unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath

from . import selftest
from .action import (
    ActionError,
    Budget,
    ClosureExceeded,
    contracting_closure,
    contraction_check,
    effectiveness_report,
    level_transitive,
    minimality_report,
    moore_diagram,
    moore_dot,
    nucleus,
    pseudo_free_check,
)
from .graph import GraphError, circuits_with_entry_check
from .homology import ChainError, h0_report, h1_identity_witnesses, index_class
from .io import (
    InputError,
    chain_to_data,
    dumps,
    load_action,
    load_table,
    parse_path,
    parse_word,
    table_to_data,
)
from .semigroup import Triple
from .tables import (
    NeedMoreInput,
    TableError,
    apply,
    compose_all,
    equal,
    inverse,
    is_transposition,
    split_column,
    transposition_hat,
    unitary_string,
    validate,
)
from .words import WordError

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class Unknown(Exception):
    """Raised with a partial report when a budget was exhausted."""

    def __init__(self, report: dict):
        super().__init__("budget exceeded")
        self.report = report


def _budget(args) -> Budget:
    return Budget(depth=args.depth, max_states=args.max_states, max_word_len=args.max_word_len)


def _budget_doc(b: Budget) -> dict:
    return {"depth": b.depth, "max_states": b.max_states, "max_word_len": b.max_word_len}


def _warnings(action) -> list[str]:
    entry = circuits_with_entry_check(action.graph)
    if entry:
        return []
    return [f"condition (L) fails: circuit {entry.circuit} has no entry, so the path space is not a Cantor set"]


def _table_doc(table) -> dict:
    t = table.sorted()
    return {"columns": table_to_data(t), "unitary": unitary_string(t)}


# -- commands -------------------------------------------------------------


def cmd_validate(args) -> dict:
    action = load_action(args.file)
    budget = _budget(args)
    entry = circuits_with_entry_check(action.graph)
    pf = pseudo_free_check(action, budget=budget)
    try:
        closure = len(nucleus(contracting_closure(action, budget)).states)
    except ClosureExceeded:
        closure = None
    con = contraction_check(action, budget)
    return {
        "valid": True,
        "vertices": len(action.graph.vertices),
        "edges": len(action.graph.edge_names),
        "generators": [g.name for g in action.generators],
        "group_bundle": all(g.d == g.t for g in action.generators),
        "condition_L": {"holds": bool(entry), "circuit": None if entry else str(entry.circuit)},
        "pseudo_free": {
            "status": pf.status,
            "witness": None if pf.witness is None else {"element": str(pf.witness[0]), "edge": pf.witness[1]},
            "words_checked": pf.words_checked,
            "max_len": pf.max_len,
        },
        "contracting": {
            "status": con.status,
            "nucleus_size": len(con.nucleus) if con.status == "contracting" else None,
            "generator_closure_recurrent": closure,
            "note": con.note,
        },
        "budget": _budget_doc(budget),
        "warnings": _warnings(action),
    }


def cmd_act(args) -> dict:
    action = load_action(args.file)
    w = parse_word(action, args.word)
    mu = parse_path(action, args.path)
    return {"word": str(w), "path": str(mu), "image": str(action.act_path(w, mu))}


def cmd_restrict(args) -> dict:
    action = load_action(args.file)
    w = parse_word(action, args.word)
    mu = parse_path(action, args.path)
    return {"word": str(w), "path": str(mu), "restriction": str(action.restrict_path(w, mu))}


def _load_valid_table(action, ref):
    t = load_table(action, ref)
    check = validate(action, t)
    if not check:
        where = "" if check.column is None else f" (column {check.column})"
        raise InputError(f"{ref}: {check.message}{where}")
    return t


def cmd_table(args) -> dict:
    action = load_action(args.file)
    budget = _budget(args)
    doc: dict = {"op": args.op, "warnings": _warnings(action)}
    if args.op == "mul":
        tables = [_load_valid_table(action, r) for r in args.tables]
        doc["result"] = _table_doc(compose_all(action, tables))
    elif args.op == "inv":
        doc["result"] = _table_doc(inverse(_load_valid_table(action, args.table)))
    elif args.op == "eq":
        t1, t2 = _load_valid_table(action, args.left), _load_valid_table(action, args.right)
        v = equal(action, t1, t2, budget)
        doc.update(verdict=v.outcome.value, witness=None if v.witness is None else str(v.witness), budget=_budget_doc(budget))
        if v.unknown:
            raise Unknown(doc)
    elif args.op == "apply":
        t = _load_valid_table(action, args.table)
        mu = parse_path(action, args.path)
        try:
            img, res = apply(action, t, mu)
        except NeedMoreInput as exc:
            raise InputError(str(exc)) from None
        doc.update(path=str(mu), image=str(img), residual=str(res))
    elif args.op == "split":
        t = _load_valid_table(action, args.table)
        doc["result"] = _table_doc(split_column(action, t, args.column))
    elif args.op == "transposition":
        top, bottom = parse_path(action, args.top), parse_path(action, args.bottom)
        w = parse_word(action, args.word)
        if w.d != bottom.end or w.t != top.end:
            raise InputError(f"word {w} must go from s({bottom}) to s({top})")
        t = transposition_hat(action, Triple(top, w, bottom))
        sq = is_transposition(action, t, budget)
        doc["result"] = _table_doc(t)
        doc["squares_to_identity"] = "unknown" if sq is None else sq
        if sq is None:
            raise Unknown(doc)
    return doc


def _nucleus_doc(args) -> tuple[dict, str | None]:
    action = load_action(args.file)
    budget = _budget(args)
    rep = contraction_check(action, budget)
    doc: dict = {"status": rep.status, "budget": _budget_doc(budget)}
    if rep.status != "contracting":
        doc["note"] = rep.note
        raise Unknown(doc)
    diag = moore_diagram(action, rep.nucleus, budget)
    doc["states"] = [str(w) for w in diag.states]
    doc["edges"] = [
        {"from": str(m.source), "to": str(m.target), "label": f"({m.edge}, {m.image})"} for m in diag.edges
    ]
    name = FilePath(args.file).stem.replace("-", "_") or "moore"
    return doc, moore_dot(diag, name if name.isidentifier() else "moore")


def cmd_nucleus(args) -> dict:
    doc, dot = _nucleus_doc(args)
    if args.dot:
        FilePath(args.dot).write_text(dot, encoding="utf-8")
        doc["dot"] = args.dot
    return doc


def cmd_moore_dot(args) -> str:
    return _nucleus_doc(args)[1]


def cmd_homology(args) -> dict:
    action = load_action(args.file)
    if args.op == "h0":
        doc = h0_report(action, args.level, args.kernel)
    elif args.op == "identities":
        doc = h1_identity_witnesses(action, args.samples, args.seed)
    else:
        t = _load_valid_table(action, args.table)
        ic = index_class(action, t, args.level)
        doc = {
            "level": ic.level,
            "chain": chain_to_data(ic.chain),
            "delta1": chain_to_data(ic.boundary),
            "cycle": ic.is_cycle,
        }
    doc["warnings"] = _warnings(action)
    return doc


def cmd_dynamics(args) -> dict:
    action = load_action(args.file)
    budget = _budget(args)
    mini = minimality_report(action)
    eff = effectiveness_report(action, budget)
    doc = {
        "level_transitive": level_transitive(action, args.level),
        "g_transitive": mini.minimal,
        "minimal": mini.minimal,
        "minimality_witness": None if mini.witness is None else list(mini.witness),
        "effective": eff.status,
        "effectiveness": {
            "circuit_without_entry": None if eff.circuit is None else str(eff.circuit),
            "trivially_acting_element": None if eff.element is None else str(eff.element),
            "moved": eff.moved,
        },
        "pseudo_free": eff.pseudo_free,
        "budget": _budget_doc(budget),
        "warnings": _warnings(action),
    }
    if eff.status == "unknown":
        raise Unknown(doc)
    return doc


def cmd_selftest(args) -> dict:
    return selftest.run(args.seed, args.scale)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=12, help="search depth for equality checks")
    common.add_argument("--max-states", type=int, default=20000)
    common.add_argument("--max-word-len", type=int, default=64)
    common.add_argument("--json", action="store_true", help="print the full JSON report")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="ssgroupoid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an action file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    for name, func in (("act", cmd_act), ("restrict", cmd_restrict)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
        s.add_argument("word", help='e.g. "c b" or "a^-1"')
        s.add_argument("path", help='e.g. "e3.e2" or a vertex')
        s.set_defaults(func=func)

    t = sub.add_parser("table", help="G-table calculator")
    tsub = t.add_subparsers(dest="op", required=True)
    s = tsub.add_parser("mul", parents=[common], help="product; the last table acts first")
    s.add_argument("file")
    s.add_argument("tables", nargs="+")
    s = tsub.add_parser("inv", parents=[common])
    s.add_argument("file")
    s.add_argument("table")
    s = tsub.add_parser("eq", parents=[common])
    s.add_argument("file")
    s.add_argument("left")
    s.add_argument("right")
    s = tsub.add_parser("apply", parents=[common])
    s.add_argument("file")
    s.add_argument("table")
    s.add_argument("path")
    s = tsub.add_parser("split", parents=[common])
    s.add_argument("file")
    s.add_argument("table")
    s.add_argument("column", type=int)
    s = tsub.add_parser("transposition", parents=[common])
    s.add_argument("file")
    s.add_argument("top")
    s.add_argument("word")
    s.add_argument("bottom")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("nucleus", parents=[common])
    s.add_argument("file")
    s.add_argument("--dot", help="write the Moore diagram to this file")
    s.set_defaults(func=cmd_nucleus)

    s = sub.add_parser("moore-dot", parents=[common], help="print the Moore diagram in DOT")
    s.add_argument("file")
    s.set_defaults(func=cmd_moore_dot)

    h = sub.add_parser("homology")
    hsub = h.add_subparsers(dest="op", required=True)
    s = hsub.add_parser("h0", parents=[common])
    s.add_argument("file")
    s.add_argument("--level", type=int, default=3)
    s.add_argument("--kernel", action="store_true", help="kernel groupoid (|alpha| = |beta|)")
    s = hsub.add_parser("identities", parents=[common])
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=25)
    s = hsub.add_parser("index", parents=[common])
    s.add_argument("file")
    s.add_argument("table")
    s.add_argument("--level", type=int, default=None)
    h.set_defaults(func=cmd_homology)

    s = sub.add_parser("dynamics", parents=[common])
    s.add_argument("file")
    s.add_argument("--level", type=int, default=5, help="check level transitivity up to this length")
    s.set_defaults(func=cmd_dynamics)

    s = sub.add_parser("selftest", parents=[common])
    s.add_argument("--scale", type=int, default=1)
    s.set_defaults(func=cmd_selftest)
    return p


def _text(doc, indent: str = "") -> str:
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                lines.append(f"{indent}  - " + json.dumps(item, sort_keys=True, ensure_ascii=False))
        else:
            lines.append(f"{indent}{k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines)


def _echo(argv: list[str]) -> list[str]:
    return [a for a in argv if a != "--json"]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        out = args.func(args)
    except Unknown as exc:
        out, code = exc.report, EXIT_UNKNOWN
    except ClosureExceeded as exc:
        out, code = {"status": "exceeded", "note": str(exc)}, EXIT_UNKNOWN
    except (InputError, ActionError, TableError, GraphError, WordError, ChainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(out, str):
        sys.stdout.write(out)
        return code
    if args.command == "selftest" and not out.get("all_passed", False):
        code = EXIT_INPUT
    if args.json:
        report = {"command": _echo(argv), "result": out}
        sys.stdout.write(dumps(report))
    else:
        print(_text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
