"""Sensor-failure robustness: back-up families and the weighted cover.

Given a feasible seed F = T ∪ S°, a back-up for a member x is a set of one
or two vertices whose addition keeps the network observable after x's
sensor is lost.  Tips draw back-ups from tip-alternatives (exchangeable
path ends), sink picks from the other vertices of their sink-SCC.  Shared
back-ups across members become a weighted set-covering instance whose
solution, unioned with F, is robust to any single sensor loss.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from robsen.counters import Counters, coalesce
from robsen.digraph import StateDigraph, scc_decompose
from robsen.pnc import FeasibleSolution, can_force_tips, is_feasible, minimal_feasible, split_solution
from robsen.setcover import CoverInstance, CoverSolution, UncoverableElementError, exact_cover, greedy_cover


class UncoverableError(RuntimeError):
    """No single-failure-robust solution extends the seed."""

    def __init__(self, index: object, detail: str):
        super().__init__(f"no back-up exists for {detail}")
        self.index = index


@dataclass(frozen=True)
class BackupFamily:
    """Per seed member (1-indexed), the collection of back-up vertex sets."""

    members: tuple[int, ...]
    tip_count: int
    per_index: dict[int, tuple[frozenset[int], ...]]


def sink_alternatives(g: StateDigraph, x: int) -> frozenset[int]:
    """All other vertices of x's sink-SCC; errors when x is not in one."""
    scc = scc_decompose(g)
    cid = scc.component_of[x]
    if cid not in scc.sinks:
        raise ValueError(f"vertex {x} does not lie in a sink-SCC")
    return frozenset(scc.components[cid]) - {x}


def tip_alternatives(g: StateDigraph, tips, t: int,
                     counters: Counters | None = None) -> frozenset[int]:
    """Vertices x such that (tips \\ {t}) ∪ {x} is again a forceable tip set.

    ``tips`` may be a PncDecomposition or a plain vertex set.
    """
    tip_set = frozenset(tips.tips if hasattr(tips, "tips") else tips)
    if t not in tip_set:
        raise ValueError(f"vertex {t} is not a tip of the decomposition")
    cnt = coalesce(counters)
    out = set()
    rest = tip_set - {t}
    for x in g.vertices():
        if x == t or x in rest:
            continue
        cnt.bump("candidates_tested")
        if can_force_tips(g, rest | {x}, cnt):
            out.add(x)
    return frozenset(out)


def backup_family(g: StateDigraph, f: FeasibleSolution,
                  counters: Counters | None = None) -> BackupFamily:
    """Back-up sets for every member of the seed solution.

    Tip members emit, per tip-alternative d: the singleton {d} when the
    interchanged solution stays feasible, otherwise the pairs {d, y} over
    same-sink-SCC vertices y that restore feasibility.  Sink members emit
    their sink-alternatives as singletons.  Every emitted set is checked
    directly against is_feasible, which is the authoritative definition.
    """
    cnt = coalesce(counters)
    tips = tuple(sorted(f.tips_part))
    sinks = tuple(sorted(f.sink_part))
    members = tips + sinks
    scc = scc_decompose(g)
    per: dict[int, tuple[frozenset[int], ...]] = {}
    for i, x in enumerate(members, start=1):
        rest = f.all - {x}
        out: list[frozenset[int]] = []
        if x in f.tips_part:
            for d in sorted(tip_alternatives(g, f.tips_part, x, cnt)):
                cnt.bump("candidates_tested")
                if is_feasible(g, rest | {d}, cnt):
                    out.append(frozenset({d}))
                    continue
                cid = scc.component_of[x]
                for y in sorted(scc.components[cid] - {x}):
                    cnt.bump("candidates_tested")
                    if y != d and is_feasible(g, rest | {d, y}, cnt):
                        out.append(frozenset({d, y}))
        else:
            for d in sorted(sink_alternatives(g, x)):
                cnt.bump("candidates_tested")
                if is_feasible(g, rest | {d}, cnt):
                    out.append(frozenset({d}))
        seen = set()
        uniq = []
        for s in out:
            if s not in seen:
                seen.add(s)
                uniq.append(s)
        per[i] = tuple(uniq)
    return BackupFamily(members, len(tips), per)


def z_index(n: int, a: int, b: int | None = None) -> int:
    """Index of {x_a} (a itself) or {x_a, x_b} (Cantor pairing shifted by n)."""
    if not 1 <= a <= n:
        raise ValueError(f"vertex {a} out of range 1..{n}")
    if b is None:
        return a
    if not (a < b <= n):
        raise ValueError(f"pair needs a < b <= n, got ({a}, {b})")
    return (a + b - 2) * (a + b - 1) // 2 + b - 1 + n


def z_decode(n: int, idx: int) -> frozenset[int]:
    """Inverse of z_index over singletons and ordered pairs."""
    if 1 <= idx <= n:
        return frozenset({idx})
    target = idx - n + 1
    # invert the Cantor pairing z = T(s) + b with s = a + b - 2
    s = 0
    while (s + 1) * (s + 2) // 2 < target:
        s += 1
    b = target - s * (s + 1) // 2
    a = s + 2 - b
    if not (1 <= a < b <= n) or z_index(n, a, b) != idx:
        raise ValueError(f"index {idx} does not encode a pair for n={n}")
    return frozenset({a, b})


def build_sensor_cover(g: StateDigraph, f: FeasibleSolution, backups: BackupFamily) -> CoverInstance:
    """Weighted cover: elements are seed members, sets are shared back-ups.

    Singleton set j <= n gathers the members backed by {x_j}; pair sets
    additionally inherit the members of their two singletons.  Costs equal
    the number of vertices added.  Empty sets are dropped.
    """
    n = g.n
    universe = frozenset(range(1, len(backups.members) + 1))
    singles: dict[int, set[int]] = {}
    pairs: dict[int, set[int]] = {}
    for i, sets in backups.per_index.items():
        for s in sets:
            if len(s) == 1:
                (a,) = sorted(s)
                singles.setdefault(z_index(n, a), set()).add(i)
            else:
                a, b = sorted(s)
                pairs.setdefault(z_index(n, a, b), set()).add(i)
    cover_sets: dict[int, frozenset[int]] = {}
    costs: dict[int, Fraction] = {}
    for j, covered in singles.items():
        cover_sets[j] = frozenset(covered)
        costs[j] = Fraction(1)
    for j, covered in pairs.items():
        members = z_decode(n, j)
        inherited = set(covered)
        for a in members:
            inherited |= singles.get(z_index(n, a), set())
        cover_sets[j] = frozenset(inherited)
        costs[j] = Fraction(2)
    return CoverInstance.build(universe, cover_sets, costs)


@dataclass(frozen=True)
class SensorCertificate:
    """Everything needed to audit an s-robust solution."""

    seed: FeasibleSolution
    family: BackupFamily
    instance: CoverInstance
    chosen: tuple[int, ...]
    added: frozenset[int]
    solution: frozenset[int]
    mode: str

    @property
    def added_cost(self) -> int:
        return len(self.added)


def srobust_solution(g: StateDigraph, mode: str = "greedy",
                     seed: FeasibleSolution | None = None,
                     counters: Counters | None = None,
                     exact_limit: int = 20) -> SensorCertificate:
    """Sensor set surviving any single sensor loss, built over a seed.

    The seed defaults to the canonical minimal feasible solution; pass
    ``seed`` to explore the seed-sensitivity of the final size.  Raises
    UncoverableError when some member admits no back-up at all.
    """
    if mode not in ("greedy", "exact"):
        raise ValueError("mode must be 'greedy' or 'exact'")
    cnt = coalesce(counters)
    f = seed if seed is not None else minimal_feasible(g, cnt)
    family = backup_family(g, f, cnt)
    for i in sorted(family.per_index):
        if not family.per_index[i]:
            raise UncoverableError(i, f"seed member x{family.members[i - 1]}")
    inst = build_sensor_cover(g, f, family)
    try:
        sol: CoverSolution = greedy_cover(inst) if mode == "greedy" else exact_cover(inst, exact_limit)
    except UncoverableElementError as exc:  # pragma: no cover - guarded above
        raise UncoverableError(exc.element, f"seed member index {exc.element}") from exc
    added: set[int] = set()
    for j in sol.chosen:
        added |= z_decode(g.n, j)
    return SensorCertificate(f, family, inst, tuple(sol.chosen), frozenset(added), f.all | added, mode)


def seed_from_vertices(g: StateDigraph, vertices: frozenset[int] | set[int],
                       counters: Counters | None = None) -> FeasibleSolution:
    """Split a raw vertex set into the T/S° form used by the back-up logic."""
    return split_solution(g, frozenset(vertices), counters)
