"""Finite directed graphs, finite paths and prefix codes of the boundary path space.

Conventions: an edge ``e`` goes from its source ``s(e)`` to its range ``r(e)``;
paths are written range-first, so ``e1 e2 ... ek`` is composable when
``r(e_{i+1}) == s(e_i)``.  The children of a path ``p`` in the path forest are
the paths ``p e`` with ``r(e) == s(p)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Path:
    """A finite path; a vertex path has no edges and ``root == end``."""

    root: str
    edges: tuple[str, ...] = ()
    end: str = ""

    def __post_init__(self):
        if not self.end:
            if self.edges:
                raise GraphError("edge path needs its source vertex; build it with Graph.path")
            object.__setattr__(self, "end", self.root)

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls(v, (), v)

    @property
    def r(self) -> str:
        return self.root

    @property
    def s(self) -> str:
        return self.end

    def __len__(self) -> int:
        return len(self.edges)

    def is_vertex(self) -> bool:
        return not self.edges

    def __add__(self, other: "Path") -> "Path":
        if self.end != other.root:
            raise GraphError(f"cannot concatenate {self} and {other}")
        return Path(self.root, self.edges + other.edges, other.end)

    def is_prefix_of(self, other: "Path") -> bool:
        return (
            self.root == other.root
            and len(self.edges) <= len(other.edges)
            and other.edges[: len(self.edges)] == self.edges
        )

    def comparable(self, other: "Path") -> bool:
        return self.is_prefix_of(other) or other.is_prefix_of(self)

    def suffix_after(self, prefix: "Path") -> "Path":
        """The path ``nu`` with ``prefix + nu == self``."""
        if not prefix.is_prefix_of(self):
            raise GraphError(f"{prefix} is not a prefix of {self}")
        return Path(prefix.end, self.edges[len(prefix.edges):], self.end)

    def truncate(self, k: int, graph: "Graph") -> "Path":
        if k >= len(self.edges):
            return self
        if k == 0:
            return Path.vertex(self.root)
        return Path(self.root, self.edges[:k], graph.source(self.edges[k - 1]))

    @property
    def key(self) -> tuple[str, ...]:
        return self.edges if self.edges else (self.root,)

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.root


class Graph:
    """A finite directed graph with no sources.

    ``edges`` maps each edge name to ``(range, source)``; the order in which
    edges are given is kept and fixes the order of ``vE^1`` everywhere.
    """

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str, str]]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self._range: dict[str, str] = {}
        self._source: dict[str, str] = {}
        order: list[str] = []
        for name, rng, src in edges:
            if name in self._range:
                raise GraphError(f"duplicate edge name {name!r}")
            self._range[name] = rng
            self._source[name] = src
            order.append(name)
        self.edge_names: tuple[str, ...] = tuple(order)

        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex name")
        clash = set(self.vertices) & set(self.edge_names)
        if clash:
            raise GraphError(f"names used both as vertex and edge: {sorted(clash)}")
        vset = set(self.vertices)
        for e in self.edge_names:
            for end in (self._range[e], self._source[e]):
                if end not in vset:
                    raise GraphError(f"edge {e!r} touches unknown vertex {end!r}")
        self._at: dict[str, tuple[str, ...]] = {
            v: tuple(e for e in self.edge_names if self._range[e] == v) for v in self.vertices
        }
        sources = [v for v in self.vertices if not self._at[v]]
        if sources:
            raise GraphError(f"graph has sources (no edge with range {sources[0]!r})")

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={len(self.edge_names)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edge_names == other.edge_names
            and self._range == other._range
            and self._source == other._source
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edge_names))

    def range(self, e: str) -> str:
        return self._range[e]

    def source(self, e: str) -> str:
        return self._source[e]

    def is_vertex(self, name: str) -> bool:
        return name in self._at

    def is_edge(self, name: str) -> bool:
        return name in self._range

    def edges_at(self, v: str) -> tuple[str, ...]:
        """``vE^1``: the edges whose range is ``v``."""
        return self._at[v]

    def path(self, edges: Sequence[str], root: str | None = None) -> Path:
        edges = tuple(edges)
        if not edges:
            if root is None or root not in self._at:
                raise GraphError(f"unknown vertex {root!r}")
            return Path.vertex(root)
        for e in edges:
            if e not in self._range:
                raise GraphError(f"unknown edge {e!r}")
        for prev, nxt in zip(edges, edges[1:]):
            if self._range[nxt] != self._source[prev]:
                raise GraphError(f"edges {prev!r}, {nxt!r} are not composable")
        if root is not None and root != self._range[edges[0]]:
            raise GraphError(f"path {'.'.join(edges)} does not start at {root!r}")
        return Path(self._range[edges[0]], edges, self._source[edges[-1]])

    def parse_path(self, text: str) -> Path:
        text = text.strip()
        if text in self._at:
            return Path.vertex(text)
        return self.path(text.split("."))

    def extend(self, p: Path, e: str) -> Path:
        if self._range[e] != p.end:
            raise GraphError(f"edge {e!r} cannot extend {p}")
        return Path(p.root, p.edges + (e,), self._source[e])

    def children(self, p: Path) -> list[Path]:
        return [self.extend(p, e) for e in self._at[p.end]]

    def adjacency_matrix(self) -> list[list[int]]:
        """``A[v][w]`` counts the edges with range ``v`` and source ``w``."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        a = [[0] * n for _ in range(n)]
        for e in self.edge_names:
            a[idx[self._range[e]]][idx[self._source[e]]] += 1
        return a


def adjacency_matrix(graph: Graph) -> list[list[int]]:
    return graph.adjacency_matrix()


def paths_of_length(graph: Graph, k: int, at: str | None = None) -> list[Path]:
    if k < 0:
        raise GraphError("path length must be nonnegative")
    roots = [at] if at is not None else list(graph.vertices)
    level = [Path.vertex(v) for v in roots]
    for _ in range(k):
        level = [c for p in level for c in graph.children(p)]
    return level


def paths_up_to(graph: Graph, k: int, at: str | None = None) -> list[Path]:
    out: list[Path] = []
    for j in range(k + 1):
        out.extend(paths_of_length(graph, j, at))
    return out


@dataclass(frozen=True)
class CodeCheck:
    ok: bool
    comparable: tuple[Path, Path] | None = None
    uncovered: Path | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_prefix_code(graph: Graph, paths: Iterable[Path]) -> CodeCheck:
    """Check that the cylinders of ``paths`` partition the infinite path space.

    Completeness is decided by enumerating every path of the maximal length.
    """
    paths = sorted(set(paths))
    for p, q in itertools.combinations(paths, 2):
        if p.comparable(q):
            return CodeCheck(False, comparable=(p, q))
    depth = max((len(p) for p in paths), default=0)
    by_root: dict[str, list[Path]] = {}
    for p in paths:
        by_root.setdefault(p.root, []).append(p)
    for mu in paths_of_length(graph, depth):
        hits = sum(1 for p in by_root.get(mu.root, ()) if p.is_prefix_of(mu))
        if hits != 1:
            return CodeCheck(False, uncovered=mu)
    return CodeCheck(True)


def common_refinement(a: Iterable[Path], b: Iterable[Path]) -> list[Path]:
    """Minimal paths having a prefix in ``a`` and a prefix in ``b``."""
    out = set()
    for p in a:
        for q in b:
            if p.is_prefix_of(q):
                out.add(q)
            elif q.is_prefix_of(p):
                out.add(p)
    return sorted(out, key=lambda p: p.key)


def complement_code(graph: Graph, removed: Sequence[Path]) -> list[Path]:
    """A prefix code for the complement of the union of pairwise disjoint cylinders."""
    out: list[Path] = []
    stack = [Path.vertex(v) for v in reversed(graph.vertices)]
    while stack:
        p = stack.pop()
        if any(p == q or q.is_prefix_of(p) for q in removed):
            continue
        if any(p.is_prefix_of(q) for q in removed):
            stack.extend(reversed(graph.children(p)))
        else:
            out.append(p)
    return sorted(out, key=lambda p: p.key)


@dataclass(frozen=True)
class EntryCheck:
    ok: bool
    circuit: Path | None = None

    def __bool__(self) -> bool:
        return self.ok


def circuits_with_entry_check(graph: Graph) -> EntryCheck:
    """Condition (L): every circuit has an entry.

    A circuit lacks an entry exactly when every vertex on it receives a single
    edge, so it suffices to look for a cycle in the functional graph formed by
    those vertices and their unique incoming edges.
    """
    single = {v: graph.edges_at(v)[0] for v in graph.vertices if len(graph.edges_at(v)) == 1}
    for start in graph.vertices:
        seen: list[str] = []
        v = start
        while v in single and v not in seen:
            seen.append(v)
            v = graph.source(single[v])
        if v in seen:
            cyc = seen[seen.index(v):]
            return EntryCheck(False, graph.path([single[x] for x in cyc]))
    return EntryCheck(True)


def strongly_connected(nodes: Sequence[str], arcs: Iterable[tuple[str, str]]) -> tuple[bool, tuple[str, str] | None]:
    """Return (True, None) or (False, (x, y)) with ``y`` unreachable from ``x``."""
    succ: dict[str, set[str]] = {v: set() for v in nodes}
    for x, y in arcs:
        succ[x].add(y)
    for x in nodes:
        seen = {x}
        stack = [x]
        while stack:
            for y in succ[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        for y in nodes:
            if y not in seen:
                return False, (x, y)
    return True, None
