"""Weighted set covering: greedy approximation and exact branch-and-bound.

Costs are exact rationals; the covers built elsewhere in the package use
set cardinalities as weights, and exact arithmetic keeps the minimality
arguments airtight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping


class UncoverableElementError(ValueError):
    """Some universe element lies in no cover set."""

    def __init__(self, element: object):
        super().__init__(f"element {element!r} is uncoverable")
        self.element = element


@dataclass(frozen=True)
class CoverInstance:
    """Universe, indexed subsets, and positive per-set costs."""

    universe: frozenset[int]
    sets: dict[int, frozenset[int]]
    costs: dict[int, Fraction]

    def __post_init__(self) -> None:
        for sid, s in self.sets.items():
            if not s <= self.universe:
                raise ValueError(f"set {sid} is not a subset of the universe")
            if s and self.costs[sid] <= 0:
                raise ValueError(f"nonempty set {sid} must have positive cost")

    @staticmethod
    def build(universe: frozenset[int] | set[int], sets: Mapping[int, frozenset[int] | set[int]],
              costs: Mapping[int, Fraction | int] | None = None) -> "CoverInstance":
        sets_f = {k: frozenset(v) for k, v in sets.items()}
        if costs is None:
            costs_f = {k: Fraction(1) for k in sets_f}
        else:
            costs_f = {k: Fraction(costs[k]) for k in sets_f}
        return CoverInstance(frozenset(universe), sets_f, costs_f)


@dataclass(frozen=True)
class CoverSolution:
    chosen: tuple[int, ...]
    total_cost: Fraction
    covered: bool = True


def greedy_cover(inst: CoverInstance) -> CoverSolution:
    """Chvatal greedy: repeatedly take the set with best cost per new element.

    Ties break toward the lowest set id.  Runs in O(|universe| * |sets|)
    with incremental coverage counts.  Raises UncoverableElementError when
    stuck.
    """
    uncovered = set(inst.universe)
    remaining = {sid: set(s) for sid, s in inst.sets.items() if s}
    chosen: list[int] = []
    total = Fraction(0)
    while uncovered:
        best_sid = None
        best_ratio: Fraction | None = None
        for sid in sorted(remaining):
            gain = len(remaining[sid])
            if gain == 0:
                continue
            ratio = inst.costs[sid] / gain
            if best_ratio is None or ratio < best_ratio:
                best_ratio = ratio
                best_sid = sid
        if best_sid is None:
            raise UncoverableElementError(min(uncovered))
        chosen.append(best_sid)
        total += inst.costs[best_sid]
        newly = inst.sets[best_sid] & uncovered
        uncovered -= newly
        for sid in remaining:
            remaining[sid] -= newly
        del remaining[best_sid]
    return CoverSolution(tuple(chosen), total)


def exact_cover(inst: CoverInstance, limit: int = 20) -> CoverSolution:
    """Minimum-cost cover by branch and bound over uncovered elements.

    Branches on the uncovered element with the fewest covering sets; bounds
    with the greedy solution and a per-element cheapest-cover lower bound.
    Instances beyond ``limit`` universe elements are refused.
    """
    if len(inst.universe) > limit:
        raise ValueError(f"universe of {len(inst.universe)} exceeds exact-cover limit {limit}")
    covers_of: dict[int, list[int]] = {e: [] for e in inst.universe}
    for sid in sorted(inst.sets):
        for e in inst.sets[sid]:
            covers_of[e].append(sid)
    for e, sids in covers_of.items():
        if not sids:
            raise UncoverableElementError(e)

    try:
        seed = greedy_cover(inst)
        best_cost: Fraction | None = seed.total_cost
        best_choice: tuple[int, ...] | None = tuple(sorted(seed.chosen))
    except UncoverableElementError:
        raise

    cheapest = {e: min(inst.costs[s] for s in covers_of[e]) for e in inst.universe}

    def bound(uncovered: frozenset[int]) -> Fraction:
        # each uncovered element costs at least its cheapest set divided by
        # that set's size; sum of per-element shares is a valid lower bound
        total = Fraction(0)
        for e in uncovered:
            total += min(inst.costs[s] / len(inst.sets[s]) for s in covers_of[e])
        return total

    def search(uncovered: frozenset[int], cost: Fraction, picked: tuple[int, ...]) -> None:
        nonlocal best_cost, best_choice
        if not uncovered:
            key = tuple(sorted(picked))
            if best_cost is None or cost < best_cost or (cost == best_cost and key < best_choice):
                best_cost, best_choice = cost, key
            return
        if best_cost is not None and cost + bound(uncovered) >= best_cost + 0:
            # allow equal-cost exploration only when it could improve the tie
            if cost + bound(uncovered) > best_cost:
                return
        e = min(uncovered, key=lambda x: (len(covers_of[x]), x))
        for sid in covers_of[e]:
            search(uncovered - inst.sets[sid], cost + inst.costs[sid], picked + (sid,))

    search(inst.universe, Fraction(0), ())
    assert best_cost is not None and best_choice is not None
    return CoverSolution(best_choice, best_cost)


def harmonic(d: int) -> Fraction:
    """H(d) = sum of 1/k for k = 1..d, with H(0) = 0."""
    if d < 0:
        raise ValueError("harmonic number needs d >= 0")
    return sum((Fraction(1, k) for k in range(1, d + 1)), Fraction(0))
