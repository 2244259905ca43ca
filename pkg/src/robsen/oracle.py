"""Ground-truth machinery kept independent of the fast algorithms.

Includes a numeric structural-observability test (exact rank of the
observability stack over a large prime field, random entries), exhaustive
robust-placement searches, brute-force reference algorithms used by the
property tests, and the two NP-hardness reduction gadgets that embed set
covering into robust placement.
"""

from __future__ import annotations

from itertools import combinations

from robsen.digraph import StateDigraph, remove_link, scc_decompose
from robsen.netgen import splitmix64
from robsen.pnc import is_feasible

# Mersenne prime 2^61 - 1: large enough that a random realization witnesses
# the generic rank with failure probability about n^2 / q per seed.
FIELD_PRIME = (1 << 61) - 1


def _random_realization(g: StateDigraph, seed: int) -> list[list[int]]:
    """Matrix A with a uniform nonzero field entry per edge (column -> row)."""
    rng = splitmix64(seed)
    a = [[0] * g.n for _ in range(g.n)]
    for (u, v) in sorted(g.edges):
        val = 0
        while val == 0:
            val = next(rng) % FIELD_PRIME
        a[v - 1][u - 1] = val
    return a


class _RowSpace:
    """Incremental row-space basis over F_p in reduced echelon form."""

    def __init__(self, ncols: int, p: int = FIELD_PRIME):
        self.p = p
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}

    def add(self, row: list[int]) -> bool:
        p = self.p
        row = [x % p for x in row]
        for col, basis in self.pivots.items():
            if row[col]:
                factor = row[col]
                row = [(a - factor * b) % p for a, b in zip(row, basis)]
        for col in range(self.ncols):
            if row[col]:
                inv = pow(row[col], p - 2, p)
                self.pivots[col] = [(x * inv) % p for x in row]
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _rank_mod_p(rows: list[list[int]], p: int = FIELD_PRIME) -> int:
    """Exact rank over F_p."""
    if not rows:
        return 0
    space = _RowSpace(len(rows[0]), p)
    for row in rows:
        space.add(row)
    return space.rank


def _observability_rank(g: StateDigraph, f: frozenset[int], seed: int) -> int:
    # rank of the stack [C; CA; ...; CA^(n-1)], built row block by row block
    # with an early exit once the space is full
    n = g.n
    a = _random_realization(g, seed)
    space = _RowSpace(n)
    current = [[1 if i == j - 1 else 0 for i in range(n)] for j in sorted(f)]
    for _ in range(n):
        for row in current:
            space.add(row)
        if space.rank == n:
            return n
        current = [[sum(row[k] * a[k][i] for k in range(n) if row[k]) % FIELD_PRIME
                    for i in range(n)]
                   for row in current]
    return space.rank


def numeric_observable(g: StateDigraph, f: frozenset[int] | set[int], seed: int = 0) -> bool:
    """Numeric observability of a random realization, majority of 3 seeds.

    One-sided: a structurally unobservable pair is rank deficient for every
    realization, so True is never reported for one.  A structurally
    observable pair fails only when all sampled realizations are degenerate
    (probability about 3 n^2 / q).
    """
    fs = frozenset(f)
    if g.n == 0:
        return True
    if not fs:
        return False
    votes = sum(1 for k in range(3) if _observability_rank(g, fs, seed * 1000003 + k) == g.n)
    return votes >= 2


# ---------------------------------------------------------------------------
# Brute-force references (independent of the production code paths).


def brute_scc(g: StateDigraph) -> list[frozenset[int]]:
    """SCCs via transitive closure; quadratic-ish, for cross-checking only."""
    reach = {v: {v} for v in g.vertices()}
    changed = True
    adj = g.adjacency()
    while changed:
        changed = False
        for u in g.vertices():
            u_reach = reach[u]
            add = set()
            for v in adj[u]:
                add |= reach[v] - u_reach
            add.add(u)
            if not add <= u_reach:
                u_reach |= add
                changed = True
    comps = []
    seen: set[int] = set()
    for v in g.vertices():
        if v in seen:
            continue
        comp = {w for w in reach[v] if v in reach[w]}
        comps.append(frozenset(comp))
        seen |= comp
    return comps


def enumerate_min_path_count(g: StateDigraph) -> int:
    """Minimum path count over all spanning P&C decompositions, by search.

    Recursively assigns each vertex a successor (or none); exponential, only
    for tiny graphs.
    """
    adj = g.adjacency()
    n = g.n
    best = n + 1

    def rec(v: int, used_in: frozenset[int], paths: int) -> None:
        nonlocal best
        if paths >= best:
            return
        if v > n:
            best = min(best, paths)
            return
        rec(v + 1, used_in, paths + 1)  # v ends a path
        for w in adj[v]:
            if w not in used_in:
                rec(v + 1, used_in | {w}, paths)

    rec(1, frozenset(), 0)
    return best


def enumerate_tip_sets(g: StateDigraph, size: int) -> set[frozenset[int]]:
    """All exact tip sets of spanning P&C decompositions with `size` paths."""
    adj = g.adjacency()
    n = g.n
    out: set[frozenset[int]] = set()

    def rec(v: int, used_in: frozenset[int], tips: frozenset[int]) -> None:
        if len(tips) > size:
            return
        if v > n:
            if len(tips) == size:
                out.add(tips)
            return
        rec(v + 1, used_in, tips | {v})
        for w in adj[v]:
            if w not in used_in:
                rec(v + 1, used_in | {w}, tips)

    rec(1, frozenset(), frozenset())
    return out


def exhaustive_minimal_feasible(g: StateDigraph, limit: int = 8) -> frozenset[int] | None:
    """Smallest feasible set, lexicographically least among minima."""
    if g.n > limit:
        raise ValueError(f"n={g.n} exceeds limit {limit}")
    if g.n == 0:
        return frozenset()
    verts = list(g.vertices())
    for size in range(0, g.n + 1):
        for combo in combinations(verts, size):
            if is_feasible(g, frozenset(combo)):
                return frozenset(combo)
    return None


def _srobust_pred(g: StateDigraph, f: frozenset[int]) -> bool:
    if not is_feasible(g, f):
        return False
    return all(is_feasible(g, f - {x}) for x in f)


def _lrobust_pred(g: StateDigraph, f: frozenset[int], undirected: bool = False) -> bool:
    if not is_feasible(g, f):
        return False
    if undirected:
        pairs = [tuple(sorted(p)) for p in g.undirected_pairs]
        covered = {e for p in g.undirected_pairs for e in ((min(p), max(p)), (max(p), min(p)))}
        singles = [e for e in g.edges if e not in covered]
        for p in sorted(pairs):
            if not is_feasible(remove_link(g, p, undirected=True), f):
                return False
        for e in sorted(singles):
            if not is_feasible(remove_link(g, e), f):
                return False
        return True
    return all(is_feasible(remove_link(g, e), f) for e in sorted(g.edges))


def _exhaustive_search(g: StateDigraph, pred, limit: int) -> frozenset[int] | None:
    if g.n > limit:
        raise ValueError(f"n={g.n} exceeds limit {limit}")
    verts = list(g.vertices())
    for size in range(0, g.n + 1):
        for combo in combinations(verts, size):
            f = frozenset(combo)
            if pred(g, f):
                return f
    return None


def exhaustive_srobust(g: StateDigraph, limit: int = 8) -> frozenset[int] | None:
    """Global minimum s-robust set by subset search; None when none exists."""
    return _exhaustive_search(g, _srobust_pred, limit)


def exhaustive_lrobust(g: StateDigraph, limit: int = 8, undirected: bool = False) -> frozenset[int] | None:
    """Global minimum l-robust set by subset search; None when none exists."""
    return _exhaustive_search(g, lambda gg, f: _lrobust_pred(gg, f, undirected), limit)


def exhaustive_srobust_over(g: StateDigraph, seed: frozenset[int], limit: int = 10) -> frozenset[int] | None:
    """Smallest s-robust superset of ``seed`` (Theorem-4 conditional minimum)."""
    if g.n > limit:
        raise ValueError(f"n={g.n} exceeds limit {limit}")
    others = [v for v in g.vertices() if v not in seed]
    for extra in range(0, len(others) + 1):
        for combo in combinations(others, extra):
            f = seed | frozenset(combo)
            if _srobust_pred(g, f):
                return f
    return None


def exhaustive_lrobust_over(g: StateDigraph, seed: frozenset[int], limit: int = 10,
                            undirected: bool = False) -> frozenset[int] | None:
    """Smallest l-robust superset of ``seed`` (Theorem-7 conditional minimum)."""
    if g.n > limit:
        raise ValueError(f"n={g.n} exceeds limit {limit}")
    others = [v for v in g.vertices() if v not in seed]
    for extra in range(0, len(others) + 1):
        for combo in combinations(others, extra):
            f = seed | frozenset(combo)
            if _lrobust_pred(g, f, undirected):
                return f
    return None


# ---------------------------------------------------------------------------
# NP-hardness reduction gadgets.


def _check_cover_input(sets: list[frozenset[int]] | list[set[int]], p: int) -> list[frozenset[int]]:
    if p < 1:
        raise ValueError("universe must be nonempty")
    norm = [frozenset(c) for c in sets]
    for c in norm:
        if not c <= set(range(1, p + 1)):
            raise ValueError("cover sets must be subsets of 1..p")
    covered = set().union(*norm) if norm else set()
    if covered != set(range(1, p + 1)):
        raise ValueError("every universe element must appear in some set")
    return norm


def sensor_gadget(sets: list[frozenset[int]] | list[set[int]], p: int) -> StateDigraph:
    """Digraph embedding a set-cover instance into sensor-robust placement.

    Vertices: elements 1..p, one vertex per set (p+1..p+k), then a
    four-vertex tail.  Elements feed the sets containing them; sets carry
    self-loops and drain into the tail hub p+k+2, which forms a 2-cycle
    with p+k+1 and feeds p+k+3; p+k+4 feeds the hub from outside.  The edge
    p+k+3 -> p+k+2 closes the three-vertex sink component {p+k+1, p+k+2,
    p+k+3} that the reduction argument relies on (the construction rules
    leave p+k+3 dangling, which would add a second sink and make robust
    placement impossible; see the repository notes).
    """
    norm = _check_cover_input(sets, p)
    k = len(norm)
    n = p + k + 4
    hub = p + k + 2
    edges: set[tuple[int, int]] = set()
    for j, c in enumerate(norm, start=1):
        for i in sorted(c):
            edges.add((i, p + j))
        edges.add((p + j, p + j))
        edges.add((p + j, hub))
    edges.add((p + k + 1, hub))
    edges.add((hub, p + k + 1))
    edges.add((hub, p + k + 3))
    edges.add((p + k + 3, hub))
    edges.add((p + k + 4, hub))
    return StateDigraph.build(n, edges)


def link_gadget(sets: list[frozenset[int]] | list[set[int]], p: int) -> StateDigraph:
    """Digraph embedding a set-cover instance into link-robust placement.

    Elements carry self-loops and feed both copies of each set branch
    (p+j and p+k+j, also with self-loops); branches drain into the hub
    p+2k+2; the tail vertices p+2k+3 and p+2k+4 feed both p+2k+1 and
    p+2k+2, which are the two (singleton) sink components.
    """
    norm = _check_cover_input(sets, p)
    k = len(norm)
    n = p + 2 * k + 4
    a, b = p + 2 * k + 1, p + 2 * k + 2
    c, d = p + 2 * k + 3, p + 2 * k + 4
    edges: set[tuple[int, int]] = set()
    for i in range(1, p + 1):
        edges.add((i, i))
    for j, cset in enumerate(norm, start=1):
        for i in sorted(cset):
            edges.add((i, p + j))
            edges.add((i, p + k + j))
        edges.add((p + j, p + j))
        edges.add((p + k + j, p + k + j))
        edges.add((p + j, b))
        edges.add((p + k + j, b))
    edges.add((c, a))
    edges.add((c, b))
    edges.add((d, a))
    edges.add((d, b))
    return StateDigraph.build(n, edges)


def exact_min_cover_size(sets: list[frozenset[int]] | list[set[int]], p: int) -> int:
    """Minimum number of sets covering 1..p, by exhaustive search."""
    norm = _check_cover_input(sets, p)
    universe = set(range(1, p + 1))
    for size in range(0, len(norm) + 1):
        for combo in combinations(range(len(norm)), size):
            if set().union(*(norm[i] for i in combo)) >= universe if combo else not universe:
                return size
    return len(norm)
