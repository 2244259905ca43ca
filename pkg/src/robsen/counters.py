"""Operation counters shared across concurrent analyses."""

from __future__ import annotations

import threading


class Counters:
    """Monotone counters for matchings/decompositions run during an analysis.

    Safe to update from several threads; a run report snapshots the values.
    """

    __slots__ = ("_lock", "matchings_run", "decompositions_run", "links_tested", "candidates_tested")

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.matchings_run = 0
        self.decompositions_run = 0
        self.links_tested = 0
        self.candidates_tested = 0

    def bump(self, name: str, amount: int = 1) -> None:
        with self._lock:
            setattr(self, name, getattr(self, name) + amount)

    def snapshot(self) -> dict[str, int]:
        with self._lock:
            return {
                "matchings_run": self.matchings_run,
                "decompositions_run": self.decompositions_run,
                "links_tested": self.links_tested,
                "candidates_tested": self.candidates_tested,
            }


_NULL = Counters()


def coalesce(counters: Counters | None) -> Counters:
    """A usable counter object; a shared throwaway when none was supplied."""
    return counters if counters is not None else _NULL
