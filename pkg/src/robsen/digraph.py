"""State digraphs: ingestion, SCC decomposition, and single-link removal.

Vertices are the state variables x_1..x_n, numbered 1..n.  An edge (u, v)
means "u influences v", i.e. entry (v, u) of the structural matrix is
nonzero.  All other modules work on edges only; matrices are converted at
this boundary and never touched again.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DigraphError(ValueError):
    """Malformed digraph input (bad index, duplicate edge, syntax error)."""


@dataclass(frozen=True)
class StateDigraph:
    """Immutable sparse directed graph over state vertices 1..n.

    ``undirected_pairs`` records which unordered pairs stand for a
    bidirectional link; both directed edges of such a pair are present in
    ``edges``.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    undirected_pairs: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for (u, v) in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise DigraphError(f"edge ({u}, {v}) out of range 1..{self.n}")
        for pair in self.undirected_pairs:
            a, b = sorted(pair)
            if (a, b) not in self.edges or (b, a) not in self.edges:
                raise DigraphError(f"undirected pair {{{a}, {b}}} lacks a directed edge")

    @staticmethod
    def build(n: int, edges: Iterable[tuple[int, int]], undirected: Iterable[tuple[int, int]] = ()) -> "StateDigraph":
        """Checked constructor; rejects duplicates and out-of-range endpoints."""
        if n < 0:
            raise DigraphError("vertex count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        for e in edges:
            if e in seen:
                raise DigraphError(f"duplicate edge {e}")
            seen.add(e)
        pairs = set()
        for (a, b) in undirected:
            key = frozenset((a, b))
            if key in pairs:
                raise DigraphError(f"duplicate undirected pair {{{a}, {b}}}")
            pairs.add(key)
        return StateDigraph(n, frozenset(seen), frozenset(pairs))

    def successors(self, u: int) -> list[int]:
        return sorted(v for (a, v) in self.edges if a == u)

    def predecessors(self, v: int) -> list[int]:
        return sorted(u for (u, b) in self.edges if b == v)

    def adjacency(self) -> dict[int, list[int]]:
        """Successor lists for all vertices, sorted for determinism."""
        adj: dict[int, list[int]] = {u: [] for u in range(1, self.n + 1)}
        for (u, v) in self.edges:
            adj[u].append(v)
        for u in adj:
            adj[u].sort()
        return adj

    def vertices(self) -> range:
        return range(1, self.n + 1)


def from_structural_matrix(pattern: Sequence[Sequence[object]]) -> StateDigraph:
    """Digraph of a structural matrix: edge (i, j) iff entry (j, i) is nonzero.

    ``pattern`` is an n x n nested sequence; any truthy entry counts as "star".
    """
    n = len(pattern)
    for row in pattern:
        if len(row) != n:
            raise DigraphError("structural matrix must be square")
    edges = set()
    for j in range(n):
        for i in range(n):
            if pattern[j][i]:
                edges.add((i + 1, j + 1))
    return StateDigraph.build(n, edges)


def parse_edge_list(text: str) -> StateDigraph:
    """Parse the .sdg format.

    Lines: ``#`` comments, ``n <count>`` header (required, first non-comment
    line), ``e <u> <v>`` directed edge, ``u <a> <b>`` undirected link.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    undirected: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "n":
            if n is not None:
                raise DigraphError(f"line {lineno}: duplicate header")
            if len(parts) != 2 or not parts[1].isdigit():
                raise DigraphError(f"line {lineno}: malformed header {line!r}")
            n = int(parts[1])
            continue
        if n is None:
            raise DigraphError(f"line {lineno}: edge before 'n' header")
        if kind not in ("e", "u") or len(parts) != 3:
            raise DigraphError(f"line {lineno}: malformed line {line!r}")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise DigraphError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        if not (1 <= a <= n and 1 <= b <= n):
            raise DigraphError(f"line {lineno}: vertex index out of range in {line!r}")
        if kind == "e":
            edges.append((a, b))
        else:
            edges.append((a, b))
            edges.append((b, a))
            undirected.append((a, b))
    if n is None:
        raise DigraphError("missing 'n' header")
    return StateDigraph.build(n, edges, undirected)


def serialize(g: StateDigraph) -> str:
    """Inverse of parse_edge_list: header then sorted 'e'/'u' lines."""
    out = [f"n {g.n}"]
    covered = set()
    for pair in sorted(tuple(sorted(p)) for p in g.undirected_pairs):
        a, b = pair
        covered.add((a, b))
        covered.add((b, a))
    for (u, v) in sorted(g.edges):
        if (u, v) not in covered:
            out.append(f"e {u} {v}")
    for (a, b) in sorted(tuple(sorted(p)) for p in g.undirected_pairs):
        out.append(f"u {a} {b}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition with its condensation DAG and sink components."""

    component_of: dict[int, int]
    components: tuple[frozenset[int], ...]
    dag_edges: frozenset[tuple[int, int]]
    sinks: frozenset[int]

    def sink_vertex_sets(self) -> list[frozenset[int]]:
        return [self.components[c] for c in sorted(self.sinks)]

    def component_vertices(self, v: int) -> frozenset[int]:
        return self.components[self.component_of[v]]


def scc_decompose(g: StateDigraph) -> SccDecomposition:
    """Tarjan SCCs (iterative), condensation DAG, and sink flags.

    A self-loop does not enlarge a component; an isolated vertex is its own
    component.  Sinks are components with no outgoing DAG edge.
    """
    adj = g.adjacency()
    index_of: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[frozenset[int]] = []
    component_of: dict[int, int] = {}
    counter = 0

    for root in g.vertices():
        if root in index_of:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index_of[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if w not in index_of:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                cid = len(components)
                components.append(frozenset(comp))
                for w in comp:
                    component_of[w] = cid
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])

    dag_edges = set()
    for (u, v) in g.edges:
        cu, cv = component_of[u], component_of[v]
        if cu != cv:
            dag_edges.add((cu, cv))
    has_out = {cu for (cu, _) in dag_edges}
    sinks = frozenset(c for c in range(len(components)) if c not in has_out)
    return SccDecomposition(component_of, tuple(components), frozenset(dag_edges), sinks)


def remove_link(g: StateDigraph, link: tuple[int, int], undirected: bool = False) -> StateDigraph:
    """Copy of ``g`` without ``link``; with ``undirected`` both directions go.

    Raises DigraphError when the edge (or its pair record) is absent.
    """
    u, v = link
    if undirected:
        key = frozenset((u, v))
        if key not in g.undirected_pairs:
            raise DigraphError(f"no undirected pair {{{u}, {v}}}")
        edges = g.edges - {(u, v), (v, u)}
        pairs = g.undirected_pairs - {key}
        return StateDigraph(g.n, edges, pairs)
    if (u, v) not in g.edges:
        raise DigraphError(f"no edge ({u}, {v})")
    pairs = set(g.undirected_pairs)
    pairs.discard(frozenset((u, v)))
    return StateDigraph(g.n, g.edges - {(u, v)}, frozenset(pairs))
