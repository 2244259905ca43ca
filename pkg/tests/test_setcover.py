from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from robsen.setcover import (
    CoverInstance,
    UncoverableElementError,
    exact_cover,
    greedy_cover,
    harmonic,
)


def inst(universe, sets, costs=None):
    return CoverInstance.build(frozenset(universe), {k: frozenset(v) for k, v in sets.items()}, costs)


class TestGreedy:
    def test_prefers_full_cover_set(self):
        # the fig5 sensor instance shape: one set covers everything at cost 1
        i = inst({1, 2}, {1: {1, 2}, 4: {1}})
        sol = greedy_cover(i)
        assert sol.chosen == (1,) and sol.total_cost == 1

    def test_empty_universe(self):
        sol = greedy_cover(inst(set(), {}))
        assert sol.chosen == () and sol.total_cost == 0

    def test_ratio_trace_on_three_element_instance(self):
        # LP-style trap: greedy takes the two cheap ratio-1/2 sets (total 2)
        # while the optimum is the single 1.9 set; verified by enumeration
        i = inst({1, 2, 3}, {1: {1, 2}, 2: {2, 3}, 3: {1, 2, 3}},
                 {1: 1, 2: 1, 3: Fraction(19, 10)})
        sol = greedy_cover(i)
        assert sol.chosen == (1, 2) and sol.total_cost == 2
        assert exact_cover(i).total_cost == Fraction(19, 10)

    def test_uncoverable_reports_element(self):
        with pytest.raises(UncoverableElementError) as exc:
            greedy_cover(inst({1, 2}, {1: {1}}))
        assert exc.value.element == 2

    def test_deterministic(self):
        i = inst({1, 2, 3, 4}, {1: {1, 2}, 2: {3, 4}, 3: {2, 3}, 4: {1, 4}})
        runs = {greedy_cover(i).chosen for _ in range(5)}
        assert len(runs) == 1

    def test_tie_breaks_to_lowest_id(self):
        i = inst({1, 2}, {5: {1, 2}, 9: {1, 2}})
        assert greedy_cover(i).chosen == (5,)


class TestExact:
    def test_single_element_picks_cheaper(self):
        i = inst({1}, {1: {1}, 2: {1}}, {1: 3, 2: 2})
        sol = exact_cover(i)
        assert sol.chosen == (2,) and sol.total_cost == 2

    def test_no_sets_uncoverable(self):
        with pytest.raises(UncoverableElementError):
            exact_cover(inst({1}, {}))

    def test_limit_enforced(self):
        i = inst(set(range(1, 25)), {1: set(range(1, 25))})
        with pytest.raises(ValueError):
            exact_cover(i, limit=20)

    def test_matches_full_enumeration(self, graphs):
        for _ in range(60):
            nu = graphs.integer(1, 7)
            universe = frozenset(range(1, nu + 1))
            nsets = graphs.integer(1, 6)
            sets = {}
            costs = {}
            for sid in range(1, nsets + 1):
                sets[sid] = frozenset(v for v in universe if graphs.chance(450))
                costs[sid] = Fraction(graphs.integer(1, 5))
            if not frozenset().union(*sets.values()) >= universe:
                continue
            i = inst(universe, sets, costs)
            sol = exact_cover(i)
            best = None
            for r in range(0, nsets + 1):
                for combo in combinations(sorted(sets), r):
                    if frozenset().union(*(sets[c] for c in combo), frozenset()) >= universe:
                        cost = sum((costs[c] for c in combo), Fraction(0))
                        if best is None or cost < best:
                            best = cost
            assert sol.total_cost == best


class TestHarmonic:
    def test_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(3) == Fraction(11, 6)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            harmonic(-1)


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_greedy_within_harmonic_bound(data):
    nu = data.draw(st.integers(1, 12))
    universe = frozenset(range(1, nu + 1))
    nsets = data.draw(st.integers(1, 8))
    sets = {}
    costs = {}
    for sid in range(1, nsets + 1):
        sets[sid] = frozenset(data.draw(st.sets(st.integers(1, nu), max_size=nu)))
        costs[sid] = Fraction(data.draw(st.integers(1, 6)))
    covered = frozenset().union(*sets.values()) if sets else frozenset()
    if not covered >= universe:
        return
    i = inst(universe, sets, costs)
    g = greedy_cover(i)
    e = exact_cover(i)
    d = max((len(s) for s in sets.values()), default=0)
    assert g.total_cost <= harmonic(d) * e.total_cost
