"""Link-failure robustness: sensitive links, completions, and the cover.

A link is sensitive for a seed solution F when deleting it leaves F
infeasible.  The failure is a tip deficit (no saturating matching keeps
the tips inside F) or, if matching survives, a sink deficit (a sink-SCC of
the corrupted digraph misses F).  Each sensitive link gets a set of
single-vertex completions; covering all links with few shared completions
is a plain set-cover problem whose solution extends F to an l-robust set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from robsen.counters import Counters, coalesce
from robsen.digraph import StateDigraph, remove_link, scc_decompose
from robsen.pnc import FeasibleSolution, _hopcroft_karp, is_feasible, minimal_feasible
from robsen.setcover import CoverInstance, CoverSolution, UncoverableElementError, exact_cover, greedy_cover
from robsen.srobust import UncoverableError


class FailureCase(Enum):
    TIP_DEFICIT = "tip"
    SINK_DEFICIT = "sink"


@dataclass(frozen=True)
class SensitiveLink:
    link: tuple[int, int]
    case: FailureCase
    index: int
    undirected: bool = False


@dataclass(frozen=True)
class CompletionFamily:
    """Per sensitive link (1-indexed), the single-vertex completions."""

    links: tuple[SensitiveLink, ...]
    per_link: dict[int, tuple[frozenset[int], ...]]


def _matching_holds(g: StateDigraph, f: frozenset[int], counters: Counters | None) -> bool:
    m = _hopcroft_karp(g.n, g.adjacency(), f, counters)
    return m.size == g.n - len(f)


def _classify(corrupted: StateDigraph, f: frozenset[int], counters: Counters | None) -> FailureCase | None:
    """None when f stays feasible; otherwise which Lemma-2 condition broke.

    The two cases cannot both be reported: the matching test runs first and
    takes precedence, which keeps the classification total even on inputs
    where a removal hurts both conditions at once.
    """
    if not _matching_holds(corrupted, f, counters):
        return FailureCase.TIP_DEFICIT
    scc = scc_decompose(corrupted)
    for sink in scc.sink_vertex_sets():
        if not (sink & f):
            return FailureCase.SINK_DEFICIT
    return None


def _link_iter(g: StateDigraph, undirected: bool):
    if not undirected:
        for e in sorted(g.edges):
            yield e, False
        return
    paired = set()
    for p in g.undirected_pairs:
        a, b = sorted(p)
        paired.add((a, b))
        paired.add((b, a))
    for (a, b) in sorted(tuple(sorted(p)) for p in g.undirected_pairs):
        yield (a, b), True
    for e in sorted(g.edges):
        if e not in paired:
            yield e, False


def sensitive_links(g: StateDigraph, f: FeasibleSolution, undirected: bool = False,
                    counters: Counters | None = None) -> tuple[SensitiveLink, ...]:
    """Links whose removal breaks f, in lexicographic order with 1-based ids.

    With ``undirected``, pairs recorded in the digraph fail jointly (both
    directions at once) while unpaired edges keep failing one at a time.
    """
    cnt = coalesce(counters)
    fs = f.all
    if not is_feasible(g, fs, cnt):
        raise ValueError(f"{sorted(fs)} is not feasible on the intact digraph")
    out: list[SensitiveLink] = []
    for link, as_pair in _link_iter(g, undirected):
        cnt.bump("links_tested")
        corrupted = remove_link(g, link, undirected=as_pair)
        case = _classify(corrupted, fs, cnt)
        if case is not None:
            out.append(SensitiveLink(link, case, len(out) + 1, as_pair))
    return tuple(out)


def sink_completions(g: StateDigraph, f: FeasibleSolution, link: SensitiveLink,
                     counters: Counters | None = None) -> frozenset[int]:
    """Vertices of the SCC holding the link's tail in the corrupted digraph.

    That SCC is the newly uncovered sink; any one of its vertices restores
    feasibility.  Only valid for SINK_DEFICIT links.
    """
    if link.case is not FailureCase.SINK_DEFICIT:
        raise ValueError(f"link {link.link} is not a sink-deficit failure")
    corrupted = remove_link(g, link.link, undirected=link.undirected)
    scc = scc_decompose(corrupted)
    return frozenset(scc.component_vertices(link.link[0]))


def tip_completions(g: StateDigraph, f: FeasibleSolution, link: SensitiveLink,
                    counters: Counters | None = None) -> frozenset[int]:
    """Vertices x for which T ∪ {x} absorbs the tips of the corrupted digraph.

    Tested as: delete the out roles of f ∪ {x} in the corrupted digraph and
    ask for a saturating matching (the sink condition is re-checked by the
    caller through the unified feasibility test).  Only valid for
    TIP_DEFICIT links.
    """
    if link.case is not FailureCase.TIP_DEFICIT:
        raise ValueError(f"link {link.link} is not a tip-deficit failure")
    cnt = coalesce(counters)
    corrupted = remove_link(g, link.link, undirected=link.undirected)
    out = set()
    for x in corrupted.vertices():
        if x in f.all:
            continue
        cnt.bump("candidates_tested")
        if _matching_holds(corrupted, f.all | {x}, cnt):
            out.add(x)
    return frozenset(out)


def completion_family(g: StateDigraph, f: FeasibleSolution, links: tuple[SensitiveLink, ...],
                      counters: Counters | None = None) -> CompletionFamily:
    """Per-link singleton completions, filtered by direct feasibility.

    The constructions above are the paper's case split; the authoritative
    membership test is is_feasible on the corrupted digraph, so every
    emitted completion is re-checked and every rejected candidate stays out.
    """
    cnt = coalesce(counters)
    per: dict[int, tuple[frozenset[int], ...]] = {}
    for link in links:
        corrupted = remove_link(g, link.link, undirected=link.undirected)
        if link.case is FailureCase.TIP_DEFICIT:
            cands = tip_completions(g, f, link, cnt)
        else:
            cands = sink_completions(g, f, link, cnt)
        kept = []
        for x in sorted(cands):
            cnt.bump("candidates_tested")
            if x not in f.all and is_feasible(corrupted, f.all | {x}, cnt):
                kept.append(frozenset({x}))
        per[link.index] = tuple(kept)
    return CompletionFamily(links, per)


def build_link_cover(family: CompletionFamily, rho: int | None = None) -> CoverInstance:
    """Unweighted cover: universe = link ids, set j = links completed by x_j."""
    if rho is None:
        rho = len(family.links)
    universe = frozenset(range(1, rho + 1))
    sets: dict[int, set[int]] = {}
    for i, comps in family.per_link.items():
        for s in comps:
            (x,) = s
            sets.setdefault(x, set()).add(i)
    return CoverInstance.build(universe, {j: frozenset(v) for j, v in sets.items()},
                               {j: Fraction(1) for j in sets})


@dataclass(frozen=True)
class LinkCertificate:
    seed: FeasibleSolution
    links: tuple[SensitiveLink, ...]
    family: CompletionFamily
    instance: CoverInstance
    chosen: tuple[int, ...]
    added: frozenset[int]
    solution: frozenset[int]
    mode: str
    undirected: bool


def lrobust_solution(g: StateDigraph, mode: str = "greedy", undirected: bool = False,
                     seed: FeasibleSolution | None = None,
                     counters: Counters | None = None,
                     exact_limit: int = 20) -> LinkCertificate:
    """Sensor set surviving any single link loss, built over a seed.

    Raises UncoverableError when some sensitive link admits no single-vertex
    completion.
    """
    if mode not in ("greedy", "exact"):
        raise ValueError("mode must be 'greedy' or 'exact'")
    cnt = coalesce(counters)
    f = seed if seed is not None else minimal_feasible(g, cnt)
    links = sensitive_links(g, f, undirected, cnt)
    family = completion_family(g, f, links, cnt)
    for link in links:
        if not family.per_link[link.index]:
            raise UncoverableError(link.index, f"sensitive link {link.link}")
    inst = build_link_cover(family)
    if not links:
        return LinkCertificate(f, links, family, inst, (), frozenset(), f.all, mode, undirected)
    try:
        sol: CoverSolution = greedy_cover(inst) if mode == "greedy" else exact_cover(inst, exact_limit)
    except UncoverableElementError as exc:  # pragma: no cover - guarded above
        raise UncoverableError(exc.element, f"sensitive link index {exc.element}") from exc
    added = frozenset(sol.chosen)
    return LinkCertificate(f, links, family, inst, tuple(sol.chosen), added, f.all | added, mode, undirected)
