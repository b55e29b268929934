"""Undirected simple graphs: parsing, neighbourhoods and graph powers."""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ParseError

__all__ = [
    "Graph",
    "parse_edge_list",
    "parse_dimacs",
    "read_graph",
    "closed_neighborhood",
    "open_neighborhood",
    "bfs_distances",
    "graph_power",
]


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    Vertices are the integers ``0..n-1``; ``labels[i]`` is the original
    name of vertex ``i``. Edges are stored as sorted ``(u, v)`` pairs with
    ``u < v``.
    """

    n: int
    edges: frozenset
    labels: tuple
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        labels = tuple(str(s) for s in self.labels)
        if len(labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(labels)}")
        if len(set(labels)) != self.n:
            raise ValueError("vertex labels must be distinct")
        edges = set()
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            edges.add(_norm(u, v))
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(n, frozenset(_norm(u, v) for u, v in edges), tuple(labels))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return all(d is not None for d in bfs_distances(self, 0))

    def _check_vertex(self, v):
        if not (0 <= v < self.n):
            raise IndexError(f"vertex {v} out of range [0, {self.n})")

    def to_edge_list(self) -> str:
        """Serialise to edge-list text that parses back to an identical graph.

        Every vertex is declared up front so first-appearance indexing
        reproduces the current order.
        """
        lines = [f"v {lab}" for lab in self.labels]
        for u, v in self.sorted_edges():
            a, b = self.labels[u], self.labels[v]
            if a == "v":
                a, b = b, a
            lines.append(f"{a} {b}")
        return "\n".join(lines) + "\n"

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.n} {self.num_edges}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> str:
        """Stable SHA-256 digest of labels and edges."""
        h = hashlib.sha256()
        h.update("\x1f".join(self.labels).encode("utf-8"))
        h.update(b"\x1e")
        h.update(";".join(f"{u},{v}" for u, v in self.sorted_edges()).encode("ascii"))
        return "sha256:" + h.hexdigest()


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated ``labelA labelB`` lines.

    ``#`` comments and blank lines are skipped, and ``v label`` declares a
    vertex without edges. Indices follow first appearance.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: set = set()

    def vertex(lab):
        if lab not in index:
            index[lab] = len(labels)
            labels.append(lab)
        return index[lab]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 tokens, got {len(tokens)}: {raw!r}", lineno)
        a, b = tokens
        if a == "v":
            vertex(b)
            continue
        if a == b:
            raise ParseError(f"self-loop on vertex {a!r}", lineno)
        e = _norm(vertex(a), vertex(b))
        if e in edges:
            raise ParseError(f"duplicate edge {a} {b}", lineno)
        edges.add(e)
    return Graph(len(labels), frozenset(edges), tuple(labels))


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``p edge n m`` / ``e u v`` text (1-based endpoints)."""
    n = m = None
    edges: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise ParseError(f"malformed problem line: {raw!r}", lineno)
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError(f"non-integer size in {raw!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative size in problem line", lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(tokens) != 3:
                raise ParseError(f"expected 'e u v', got {raw!r}", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError(f"non-integer endpoint in {raw!r}", lineno) from None
            for w in (u, v):
                if not 1 <= w <= n:
                    raise ParseError(f"endpoint {w} outside [1, {n}]", lineno)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", lineno)
            e = _norm(u - 1, v - 1)
            if e in edges:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            edges.add(e)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge n m' line")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} were given")
    return Graph(n, frozenset(edges), tuple(str(i) for i in range(1, n + 1)))


def read_graph(path) -> Graph:
    """Read a graph file in either supported format.

    ``.col``/``.dimacs``/``.dim`` files are DIMACS; otherwise DIMACS is
    chosen when the first significant line is a ``p edge`` header.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith((".col", ".dimacs", ".dim")):
        return parse_dimacs(text)
    for line in text.splitlines():
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        if tokens[0] == "c" and len(tokens) != 2:
            continue
        if tokens[0] == "p" and len(tokens) == 4 and tokens[1] in ("edge", "col"):
            return parse_dimacs(text)
        break
    return parse_edge_list(text)


def closed_neighborhood(g: Graph, v: int) -> list:
    return sorted((v, *g.neighbors(v)))


def open_neighborhood(g: Graph, v: int) -> list:
    return list(g.neighbors(v))


def bfs_distances(g: Graph, source: int) -> list:
    """Hop distances from ``source``; ``None`` marks unreachable vertices."""
    g._check_vertex(source)
    dist: list = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g._adj[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def graph_power(g: Graph, k: int) -> Graph:
    """Graph on the same vertices joining every pair at distance at most ``k``."""
    if k < 1:
        raise ValueError(f"graph power needs k >= 1, got {k}")
    if k == 1:
        return g
    edges = set()
    for s in range(g.n):
        for t, d in enumerate(bfs_distances(g, s)):
            if t > s and d is not None and d <= k:
                edges.add((s, t))
    return Graph(g.n, frozenset(edges), g.labels)
