"""Path-and-cycle machinery: matching, decomposition, feasibility.

A spanning path-and-cycle (P&C) decomposition of the state digraph
corresponds to a matching in the bipartite split graph (left copy = out
role, right copy = in role).  A vertex left unmatched on the out side ends
a path; everything else chains into paths and cycles.  The minimum number
of paths equals n minus the maximum matching size.

Feasibility of a sensor set F (structural observability with dedicated
sensors on F) is Theorem-1 style: some spanning P&C decomposition has all
its path tips inside F, and every sink-SCC holds a member of F.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from robsen.counters import Counters, coalesce
from robsen.digraph import StateDigraph, scc_decompose

_INF = -1


@dataclass(frozen=True)
class Matching:
    """Bipartite matching between out roles and in roles of the vertices."""

    mate_out: dict[int, int]
    mate_in: dict[int, int]

    @property
    def size(self) -> int:
        return len(self.mate_out)


@dataclass(frozen=True)
class PncDecomposition:
    """Spanning disjoint union of paths and cycles; tips end the paths."""

    paths: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def tips(self) -> frozenset[int]:
        return frozenset(p[-1] for p in self.paths)


@dataclass(frozen=True)
class FeasibleSolution:
    """A feasible sensor set split into path tips T and sink-SCC picks S°."""

    tips_part: frozenset[int]
    sink_part: frozenset[int]

    @property
    def all(self) -> frozenset[int]:
        return self.tips_part | self.sink_part


def _hopcroft_karp(n: int, adj: dict[int, list[int]], banned_left: frozenset[int] = frozenset(),
                   counters: Counters | None = None) -> Matching:
    """Maximum matching with left copies in ``banned_left`` deleted.

    Deterministic: left vertices are processed in increasing index order and
    adjacency lists are index-sorted, so ties always break the same way.
    """
    coalesce(counters).bump("matchings_run")
    lefts = [u for u in range(1, n + 1) if u not in banned_left]
    mate_out: dict[int, int] = {}
    mate_in: dict[int, int] = {}
    dist: dict[int, int] = {}
    # warm start on self-loops: a deterministic tie-break among maximum
    # matchings that keeps trivial cycles in the canonical decomposition
    for u in lefts:
        if u in adj[u]:
            mate_out[u] = u
            mate_in[u] = u

    def bfs() -> bool:
        q: deque[int] = deque()
        for u in lefts:
            if u not in mate_out:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = _INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = mate_in.get(v)
                if w is None:
                    found = True
                elif dist.get(w, _INF) == _INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = mate_in.get(v)
            if w is None or (dist.get(w, _INF) == dist[u] + 1 and dfs(w)):
                mate_out[u] = v
                mate_in[v] = u
                return True
        dist[u] = _INF
        return False

    while bfs():
        for u in lefts:
            if u not in mate_out:
                dfs(u)
    return Matching(mate_out, mate_in)


def max_matching(g: StateDigraph, counters: Counters | None = None) -> Matching:
    """Maximum-cardinality matching of the bipartite split graph."""
    return _hopcroft_karp(g.n, g.adjacency(), counters=counters)


def _saturates_rest(g: StateDigraph, banned_left: frozenset[int], counters: Counters | None = None) -> bool:
    """True iff a matching covers every out role except those in banned_left."""
    m = _hopcroft_karp(g.n, g.adjacency(), banned_left, counters)
    return m.size == g.n - len(banned_left)


def decomposition_from_matching(g: StateDigraph, m: Matching, counters: Counters | None = None) -> PncDecomposition:
    """Chain matched successors into paths and cycles spanning the digraph."""
    coalesce(counters).bump("decompositions_run")
    paths = []
    cycles = []
    seen: set[int] = set()
    for start in g.vertices():
        if start in seen or start in m.mate_in:
            continue
        # start is a path root: no matched predecessor
        chain = [start]
        seen.add(start)
        v = start
        while v in m.mate_out:
            v = m.mate_out[v]
            chain.append(v)
            seen.add(v)
        paths.append(tuple(chain))
    for start in g.vertices():
        if start in seen:
            continue
        # remaining vertices lie on matched cycles
        chain = [start]
        seen.add(start)
        v = m.mate_out[start]
        while v != start:
            chain.append(v)
            seen.add(v)
            v = m.mate_out[v]
        cycles.append(tuple(chain))
    return PncDecomposition(tuple(paths), tuple(cycles))


def min_pnc(g: StateDigraph, counters: Counters | None = None) -> PncDecomposition:
    """A minimum P&C decomposition (fewest paths over all spanning ones)."""
    return decomposition_from_matching(g, max_matching(g, counters), counters)


def can_force_tips(g: StateDigraph, forced: frozenset[int] | set[int],
                   counters: Counters | None = None) -> bool:
    """Does some spanning P&C decomposition have tip set exactly ``forced``?

    Equivalent test: delete the out roles of ``forced`` and ask for a
    matching saturating every remaining out role.
    """
    banned = frozenset(forced)
    if any(not (1 <= v <= g.n) for v in banned):
        return False
    return _saturates_rest(g, banned, counters)


def is_feasible(g: StateDigraph, f: frozenset[int] | set[int],
                counters: Counters | None = None) -> bool:
    """Structural-observability test for a dedicated sensor set ``f``.

    (a) every sink-SCC intersects f, and (b) a matching saturates every out
    role outside f, i.e. some spanning P&C decomposition has tips inside f.
    Condition (b) over subsets of f is equivalent to exact-tip forcing by
    the exchange property of transversal matroids.
    """
    fs = frozenset(f)
    if g.n == 0:
        return True
    if any(not (1 <= v <= g.n) for v in fs):
        return False
    scc = scc_decompose(g)
    for sink in scc.sink_vertex_sets():
        if not (sink & fs):
            return False
    m = _hopcroft_karp(g.n, g.adjacency(), fs, counters)
    return m.size == g.n - len(fs)


def _tip_set_of(g: StateDigraph, counters: Counters | None = None) -> tuple[frozenset[int], Matching]:
    m = max_matching(g, counters)
    tips = frozenset(u for u in g.vertices() if u not in m.mate_out)
    return tips, m


def minimal_feasible(g: StateDigraph, counters: Counters | None = None) -> FeasibleSolution:
    """A minimum-cardinality feasible solution F = T ∪ S°.

    T is the tip set of a canonical minimum P&C decomposition, improved by a
    slot-by-slot exchange search so that as many distinct tip-free sink-SCCs
    as possible receive a tip ("double role" vertices); S° then picks the
    lowest-index vertex from each sink-SCC still without a tip.  The
    exchange search realizes the tip-to-sink maximization as repeated
    single-slot matching tests, which is optimal because exchangeable tip
    sets form the cobases of a transversal matroid (validated against the
    exhaustive oracle in the tests).
    """
    cnt = coalesce(counters)
    if g.n == 0:
        return FeasibleSolution(frozenset(), frozenset())
    tips, _ = _tip_set_of(g, cnt)
    scc = scc_decompose(g)
    sinks = scc.sink_vertex_sets()

    def covered(tset: frozenset[int]) -> set[int]:
        return {i for i, sink in enumerate(sinks) if sink & tset}

    # Exchange tips one at a time into sink-SCCs that still lack one.
    improved = True
    while improved:
        improved = False
        missing = [i for i in range(len(sinks)) if i not in covered(tips)]
        if not missing:
            break
        for t in sorted(tips):
            if improved:
                break
            # moving a tip that is the sole cover of its sink loses as much
            # as it gains, so only slide tips that are not load-bearing
            t_sinks = {i for i, sink in enumerate(sinks) if t in sink}
            if t_sinks and not any(sink & (tips - {t}) for i, sink in enumerate(sinks) if i in t_sinks):
                continue
            for i in missing:
                for cand in sorted(sinks[i]):
                    cnt.bump("candidates_tested")
                    alt = (tips - {t}) | {cand}
                    if len(alt) == len(tips) and can_force_tips(g, alt, cnt):
                        tips = alt
                        improved = True
                        break
                if improved:
                    break
    sink_part = set()
    cov = covered(tips)
    for i, sink in enumerate(sinks):
        if i not in cov:
            sink_part.add(min(sink))
    return FeasibleSolution(tips, frozenset(sink_part))


def split_solution(g: StateDigraph, f: frozenset[int] | set[int],
                   counters: Counters | None = None) -> FeasibleSolution:
    """Split an arbitrary feasible set into a tips part and a sink part.

    The tips part is the lexicographically smallest subset of f (preferring
    small size) that can be forced as an exact tip set; remaining sink-SCCs
    are covered by the other members.  Raises ValueError when infeasible.
    """
    cnt = coalesce(counters)
    fs = frozenset(f)
    if not is_feasible(g, fs, cnt):
        raise ValueError(f"{sorted(fs)} is not a feasible solution")
    m = _hopcroft_karp(g.n, g.adjacency(), fs, cnt)
    # Greedily re-match members of f back in while a saturating matching
    # survives; what cannot be re-matched is the tips part.
    tips = set(fs)
    for v in sorted(fs):
        trial = frozenset(tips - {v})
        mm = _hopcroft_karp(g.n, g.adjacency(), trial, cnt)
        if mm.size == g.n - len(trial):
            tips.discard(v)
    scc = scc_decompose(g)
    sink_part = set()
    for sink in scc.sink_vertex_sets():
        if sink & frozenset(tips):
            continue
        picks = sorted(sink & fs)
        sink_part.add(picks[0])
    return FeasibleSolution(frozenset(tips), frozenset(sink_part))
