import pytest

from robsen.digraph import StateDigraph, parse_edge_list, remove_link, scc_decompose
from robsen.lrobust import (
    FailureCase,
    SensitiveLink,
    CompletionFamily,
    build_link_cover,
    completion_family,
    lrobust_solution,
    sensitive_links,
    sink_completions,
    tip_completions,
)
from robsen.pnc import is_feasible, minimal_feasible, split_solution
from robsen.srobust import UncoverableError
from robsen.oracle import exhaustive_lrobust_over, numeric_observable

FIG5_PUBLISHED = [(1, 5), (3, 1), (5, 7), (6, 2), (7, 10)]


class TestSensitiveLinks:
    def test_fig5_contains_published_five(self, fig5):
        links = sensitive_links(fig5, minimal_feasible(fig5))
        got = {l.link for l in links}
        assert set(FIG5_PUBLISHED) <= got
        # reconstruction cost: the interior out-edges of x2 and x4 are also
        # critical in any graph realizing the published back-up family
        assert got == set(FIG5_PUBLISHED) | {(2, 4), (4, 8)}

    def test_fig2_first_seed(self, fig2):
        f = split_solution(fig2, frozenset({1, 3}))
        assert sorted(l.link for l in sensitive_links(fig2, f)) == [(4, 2), (5, 1)]

    def test_fig2_second_seed(self, fig2):
        f = split_solution(fig2, frozenset({4, 5}))
        assert sorted(l.link for l in sensitive_links(fig2, f)) == [(1, 5), (3, 2)]

    def test_fig4_robust_seed_has_none(self, fig4):
        f = split_solution(fig4, frozenset({1, 6}))
        assert sensitive_links(fig4, f) == ()

    def test_infeasible_seed_rejected(self, fig5):
        with pytest.raises(ValueError):
            split_solution(fig5, frozenset({9, 3}))

    def test_indices_are_lexicographic(self, fig5):
        links = sensitive_links(fig5, minimal_feasible(fig5))
        assert [l.link for l in links] == sorted(l.link for l in links)
        assert [l.index for l in links] == list(range(1, len(links) + 1))

    def test_classification_matches_definitions(self, graphs):
        for _ in range(50):
            g = graphs.digraph(2, 9)
            f = minimal_feasible(g)
            links = {l.link: l for l in sensitive_links(g, f)}
            for e in sorted(g.edges):
                corrupted = remove_link(g, e)
                broken = not is_feasible(corrupted, f.all)
                assert broken == (e in links)
                if not broken:
                    continue
                link = links[e]
                from robsen.lrobust import _matching_holds
                if link.case is FailureCase.TIP_DEFICIT:
                    assert not _matching_holds(corrupted, f.all, None)
                else:
                    assert _matching_holds(corrupted, f.all, None)
                    assert any(not (s & f.all)
                               for s in scc_decompose(corrupted).sink_vertex_sets())


class TestCompletions:
    def test_fig3_sink_case(self, fig3):
        f = minimal_feasible(fig3)
        links = {l.link: l for l in sensitive_links(fig3, f)}
        assert sink_completions(fig3, f, links[(3, 2)]) == frozenset({3, 4})

    def test_fig3_tip_case(self, fig3):
        f = minimal_feasible(fig3)
        links = {l.link: l for l in sensitive_links(fig3, f)}
        assert 2 in tip_completions(fig3, f, links[(2, 1)])

    def test_chain_needs_head_as_extra_tip(self):
        g = StateDigraph.build(3, [(1, 2), (2, 3)])
        f = split_solution(g, frozenset({3}))
        links = {l.link: l for l in sensitive_links(g, f)}
        link = links[(1, 2)]
        assert link.case is FailureCase.TIP_DEFICIT
        assert tip_completions(g, f, link) == frozenset({1})

    def test_two_cycle_feeding_chain_sink_completions(self):
        # cutting the only edge out of the 2-cycle {1,2} leaves it as an
        # uncovered sink; brute force over single additions gives {1,2}
        g = StateDigraph.build(4, [(1, 2), (2, 1), (2, 3), (3, 4)])
        f = split_solution(g, frozenset({4}))
        links = {l.link: l for l in sensitive_links(g, f)}
        link = links[(2, 3)]
        assert link.case is FailureCase.SINK_DEFICIT
        got = sink_completions(g, f, link)
        corrupted = remove_link(g, (2, 3))
        brute = frozenset(x for x in g.vertices()
                          if x not in f.all and is_feasible(corrupted, f.all | {x}))
        assert got == brute == frozenset({1, 2})

    def test_isolating_removal_gives_singleton(self):
        g = StateDigraph.build(3, [(1, 2), (2, 3)])
        f = split_solution(g, frozenset({3}))
        links = {l.link: l for l in sensitive_links(g, f)}
        # removing (1,2) isolates vertex 1 entirely
        fam = completion_family(g, f, tuple(links.values()))
        by_link = {links[k].index: v for k, v in
                   ((kk, fam.per_link[links[kk].index]) for kk in links)}
        assert by_link[links[(1, 2)].index] == (frozenset({1}),)

    def test_case_type_enforced(self, fig3):
        f = minimal_feasible(fig3)
        links = {l.link: l for l in sensitive_links(fig3, f)}
        with pytest.raises(ValueError):
            sink_completions(fig3, f, links[(2, 1)])
        with pytest.raises(ValueError):
            tip_completions(fig3, f, links[(3, 2)])


class TestCompletionFamily:
    def test_fig5_published_links(self, fig5):
        f = minimal_feasible(fig5)
        links = sensitive_links(fig5, f)
        fam = completion_family(fig5, f, links)
        by_link = {l.link: {min(s) for s in fam.per_link[l.index]} for l in links}
        assert by_link[(1, 5)] == {1}
        assert by_link[(5, 7)] == {5}
        assert by_link[(6, 2)] == {6}
        assert by_link[(7, 10)] == {6, 7}
        assert by_link[(3, 1)] == {3}

    def test_fig4_second_seed(self, fig4):
        f = split_solution(fig4, frozenset({3, 4}))
        links = sensitive_links(fig4, f)
        fam = completion_family(fig4, f, links)
        by_link = {l.link: [sorted(s) for s in fam.per_link[l.index]] for l in links}
        assert by_link == {(1, 2): [[1]], (6, 5): [[6]]}

    def test_no_links_empty_family(self, fig4):
        f = split_solution(fig4, frozenset({1, 6}))
        fam = completion_family(fig4, f, ())
        assert fam.per_link == {}

    def test_unified_check(self, graphs):
        # gamma is emitted iff adding it fixes the corrupted digraph
        for _ in range(40):
            g = graphs.digraph(2, 9)
            f = minimal_feasible(g)
            links = sensitive_links(g, f)
            fam = completion_family(g, f, links)
            for l in links:
                corrupted = remove_link(g, l.link)
                emitted = {min(s) for s in fam.per_link[l.index]}
                direct = {x for x in g.vertices()
                          if x not in f.all and is_feasible(corrupted, f.all | {x})}
                assert emitted == direct

    def test_remark1_completions_inside_new_sink(self, graphs):
        checked = 0
        for _ in range(60):
            g = graphs.digraph(2, 9)
            f = minimal_feasible(g)
            base_sinks = {frozenset(s) for s in scc_decompose(g).sink_vertex_sets()}
            links = sensitive_links(g, f)
            fam = completion_family(g, f, links)
            for l in links:
                if l.case is not FailureCase.TIP_DEFICIT:
                    continue
                corrupted = remove_link(g, l.link)
                new_sinks = ({frozenset(s) for s in scc_decompose(corrupted).sink_vertex_sets()}
                             - base_sinks)
                fresh = set().union(*new_sinks) if new_sinks else None
                if fresh is None:
                    continue
                truly_new = fresh - set().union(*base_sinks)
                if not truly_new:
                    continue
                for s in fam.per_link[l.index]:
                    assert s <= frozenset(fresh)
                checked += 1
        assert checked >= 3


class TestBuildLinkCover:
    def test_fig5_published_indexing(self, fig5):
        # restrict to the five published sensitive links, numbered in the
        # published order, and rebuild the cover sets
        f = minimal_feasible(fig5)
        order = [(1, 5), (5, 7), (6, 2), (7, 10), (3, 1)]
        all_links = {l.link: l for l in sensitive_links(fig5, f)}
        renumbered = tuple(
            SensitiveLink(all_links[e].link, all_links[e].case, i + 1)
            for i, e in enumerate(order))
        fam_full = completion_family(fig5, f, tuple(all_links.values()))
        per = {i + 1: fam_full.per_link[all_links[e].index] for i, e in enumerate(order)}
        fam = CompletionFamily(renumbered, per)
        inst = build_link_cover(fam, rho=5)
        assert inst.sets[1] == frozenset({1})
        assert inst.sets[3] == frozenset({5})
        assert inst.sets[5] == frozenset({2})
        assert inst.sets[6] == frozenset({3, 4})
        assert inst.sets[7] == frozenset({4})
        assert all(c == 1 for c in inst.costs.values())

    def test_empty_family(self):
        inst = build_link_cover(CompletionFamily((), {}), rho=0)
        assert not inst.universe and not inst.sets

    def test_shared_completion(self):
        links = (SensitiveLink((1, 2), FailureCase.TIP_DEFICIT, 1),
                 SensitiveLink((3, 4), FailureCase.TIP_DEFICIT, 2))
        fam = CompletionFamily(links, {1: (frozenset({9}),), 2: (frozenset({9}),)})
        inst = build_link_cover(fam, rho=2)
        assert inst.sets == {9: frozenset({1, 2})}


class TestLrobustSolution:
    def test_fig5(self, fig5):
        cert = lrobust_solution(fig5, mode="exact")
        # published solution {1,3,5,6,8,10} plus the forced back-up x4 for
        # the reconstruction's extra critical links
        assert cert.solution == frozenset({1, 3, 4, 5, 6, 8, 10})
        assert lrobust_solution(fig5, mode="greedy").solution == cert.solution

    def test_fig4_seed_is_already_robust(self, fig4):
        f = split_solution(fig4, frozenset({1, 6}))
        cert = lrobust_solution(fig4, seed=f)
        assert cert.solution == frozenset({1, 6})
        assert cert.chosen == ()

    def test_edgeless_graph(self):
        g = StateDigraph.build(3, [])
        cert = lrobust_solution(g)
        assert cert.solution == frozenset({1, 2, 3})
        assert cert.links == ()

    def test_robustness_property(self, graphs):
        solved = 0
        for trial in range(80):
            g = graphs.digraph(2, 9, permille=400)
            try:
                cert = lrobust_solution(g, mode="greedy")
            except UncoverableError:
                continue
            solved += 1
            assert is_feasible(g, cert.solution)  # nominal system stays observable
            for e in sorted(g.edges):
                corrupted = remove_link(g, e)
                assert is_feasible(corrupted, cert.solution)
            if trial % 7 == 0 and g.edges:
                e = sorted(g.edges)[0]
                assert numeric_observable(remove_link(g, e), cert.solution, seed=trial)
        assert solved >= 30

    def test_undirected_mode_survives_joint_removal(self):
        g = parse_edge_list("n 4\nu 1 2\nu 2 3\nu 3 4\ne 4 1\n")
        cert = lrobust_solution(g, mode="exact", undirected=True)
        for pair in g.undirected_pairs:
            corrupted = remove_link(g, tuple(sorted(pair)), undirected=True)
            assert is_feasible(corrupted, cert.solution)

    def test_exact_cover_minimality_on_instances_without_pair_effects(self, fig5):
        # conditional minimality holds whenever single completions suffice
        cert = lrobust_solution(fig5, mode="exact")
        best = exhaustive_lrobust_over(fig5, cert.seed.all, limit=10)
        assert best is not None and len(best) == len(cert.solution)
