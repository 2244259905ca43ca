"""Seeded random-network generators for the scaling experiments.

All generators run on a splitmix64 stream so that a (model, parameters,
seed) triple reproduces the same digraph on any platform or port.  The
small-world and scale-free families are built undirected and symmetrized;
a fraction of the undirected pairs is then switched to a single direction.
Erdos-Renyi draws each ordered pair independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from robsen.digraph import StateDigraph

MASK64 = (1 << 64) - 1


def splitmix64(seed: int):
    """The splitmix64 stream; tiny, well known, easy to reimplement."""
    state = seed & MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


class _Rng:
    def __init__(self, seed: int):
        self._it = splitmix64(seed)

    def below(self, bound: int) -> int:
        # rejection sampling keeps the draw unbiased
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (MASK64 + 1) - (MASK64 + 1) % bound
        while True:
            x = next(self._it)
            if x < limit:
                return x % bound

    def unit(self) -> float:
        return next(self._it) / (MASK64 + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random network draw."""

    model: str  # "er" | "small-world" | "scale-free"
    n: int
    p: float = 0.0  # ER edge probability / small-world rewiring probability
    ring_degree: int = 4  # small world only (even)
    d: int = 1  # scale free: edges per new node (minimum degree)
    direct_fraction: float = 0.10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.model not in ("er", "small-world", "scale-free"):
            raise ValueError(f"unknown model {self.model!r}")
        if not 0.0 <= self.direct_fraction <= 1.0:
            raise ValueError("direct_fraction must lie in [0, 1]")
        if self.model == "er" and not 0.0 <= self.p <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")
        if self.model == "small-world" and (self.ring_degree < 2 or self.ring_degree % 2):
            raise ValueError("ring degree must be even and >= 2")
        if self.model == "scale-free" and self.d < 1:
            raise ValueError("minimum degree d must be >= 1")

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "n": self.n,
            "p": self.p,
            "ring_degree": self.ring_degree,
            "d": self.d,
            "direct_fraction": self.direct_fraction,
            "seed": self.seed,
        }


def _er_digraph(spec: GenSpec, rng: _Rng) -> StateDigraph:
    edges = set()
    for u in range(1, spec.n + 1):
        for v in range(1, spec.n + 1):
            if u != v and rng.unit() < spec.p:
                edges.add((u, v))
    return StateDigraph.build(spec.n, edges)


def _small_world_pairs(spec: GenSpec, rng: _Rng) -> set[tuple[int, int]]:
    # Watts-Strogatz ring with rewiring probability spec.p
    n, half = spec.n, spec.ring_degree // 2
    pairs: set[tuple[int, int]] = set()
    for u in range(1, n + 1):
        for step in range(1, half + 1):
            v = (u - 1 + step) % n + 1
            if u != v:
                pairs.add((min(u, v), max(u, v)))
    for (u, v) in sorted(pairs):
        if rng.unit() < spec.p:
            others = [w for w in range(1, n + 1)
                      if w != u and (min(u, w), max(u, w)) not in pairs]
            if others:
                pairs.discard((u, v))
                w = rng.choice(others)
                pairs.add((min(u, w), max(u, w)))
    return pairs


def _scale_free_pairs(spec: GenSpec, rng: _Rng) -> set[tuple[int, int]]:
    # Preferential attachment in the repeated-endpoint style of
    # Batagelj-Brandes: each new node draws d targets from the endpoint
    # list, so attachment is proportional to current degree.
    pairs: set[tuple[int, int]] = set()
    endpoints: list[int] = [1]
    for u in range(2, spec.n + 1):
        targets: set[int] = set()
        want = min(spec.d, u - 1)
        while len(targets) < want:
            t = rng.choice(endpoints)
            if t != u:
                targets.add(t)
        for t in sorted(targets):
            pairs.add((min(u, t), max(u, t)))
            endpoints.extend((u, t))
        if not targets:
            endpoints.append(u)
    return pairs


def generate(spec: GenSpec) -> StateDigraph:
    """Deterministic digraph for the spec; see the module docstring."""
    rng = _Rng(spec.seed)
    if spec.model == "er":
        return _er_digraph(spec, rng)
    if spec.model == "small-world":
        pairs = _small_world_pairs(spec, rng)
    else:
        pairs = _scale_free_pairs(spec, rng)
    ordered = sorted(pairs)
    n_switch = int(spec.direct_fraction * len(ordered))
    switched: set[tuple[int, int]] = set()
    pool = list(ordered)
    for _ in range(n_switch):
        idx = rng.below(len(pool))
        switched.add(pool.pop(idx))
    edges: set[tuple[int, int]] = set()
    undirected: list[tuple[int, int]] = []
    for (a, b) in ordered:
        if (a, b) in switched:
            if rng.below(2):
                edges.add((a, b))
            else:
                edges.add((b, a))
        else:
            edges.add((a, b))
            edges.add((b, a))
            undirected.append((a, b))
    return StateDigraph.build(spec.n, edges, undirected)
