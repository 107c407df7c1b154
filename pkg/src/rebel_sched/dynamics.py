"""Sequential decision process on rebel networks.

A schedule asks consumers one by one; each buys the product held by the
minority of her already-decided neighbors, preferring Y on ties.  The full
decision vector (the outcome) is determined by the schedule alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import cuts
from .errors import GraphFormatError
from .graph import Graph


class Decision(enum.Enum):
    Y = "Y"
    N = "N"


def decide(y_scheduled_neighbors: int, n_scheduled_neighbors: int) -> Decision:
    """Rebel rule over already-decided neighbors; ties (including 0-0) go to Y."""
    if y_scheduled_neighbors < 0 or n_scheduled_neighbors < 0:
        raise ValueError("neighbor counts must be non-negative")
    return Decision.N if y_scheduled_neighbors > n_scheduled_neighbors else Decision.Y


class Schedule:
    """A total order over nodes 0..n-1, held as mutually inverse arrays."""

    __slots__ = ("order", "position")

    def __init__(self, order: Iterable[int]):
        self.order: tuple[int, ...] = tuple(order)
        n = len(self.order)
        position = [-1] * n
        for pos, v in enumerate(self.order):
            if not 0 <= v < n or position[v] != -1:
                raise ValueError("schedule is not a permutation of 0..n-1")
            position[v] = pos
        self.position: tuple[int, ...] = tuple(position)

    @classmethod
    def identity(cls, n: int) -> "Schedule":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Schedule) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"Schedule{self.order!r}"


class PartialSchedule:
    """A prefix of a schedule together with the decisions made along it."""

    __slots__ = ("nodes", "decisions", "_decision_of")

    def __init__(self) -> None:
        self.nodes: list[int] = []
        self.decisions: list[Decision] = []
        self._decision_of: dict[int, Decision] = {}

    def append(self, node: int, decision: Decision) -> None:
        if node in self._decision_of:
            raise ValueError(f"node {node} already scheduled")
        self.nodes.append(node)
        self.decisions.append(decision)
        self._decision_of[node] = decision

    def __contains__(self, node: int) -> bool:
        return node in self._decision_of

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(self.nodes)

    def decision_of(self, node: int) -> Decision | None:
        return self._decision_of.get(node)

    def count(self, decision: Decision) -> int:
        return self.decisions.count(decision)

    def replay_matches(self, graph: Graph) -> bool:
        """Replay the prefix under the rebel rule and compare decisions."""
        return replay_prefix(graph, self.nodes) == self.decisions


@dataclass(frozen=True)
class Outcome:
    """Per-node decisions induced by a schedule, with eager counts."""

    decisions: tuple[Decision, ...]
    count_y: int
    count_n: int

    @classmethod
    def from_decisions(cls, decisions: Sequence[Decision]) -> "Outcome":
        y = sum(1 for d in decisions if d is Decision.Y)
        return cls(decisions=tuple(decisions), count_y=y, count_n=len(decisions) - y)


def replay_prefix(graph: Graph, nodes: Sequence[int]) -> list[Decision]:
    """Decisions for an arbitrary (possibly partial) scheduling order."""
    decided: dict[int, Decision] = {}
    out: list[Decision] = []
    for v in nodes:
        y = n = 0
        for u in graph.adj[v]:
            d = decided.get(u)
            if d is Decision.Y:
                y += 1
            elif d is Decision.N:
                n += 1
        d = decide(y, n)
        decided[v] = d
        out.append(d)
    return out


def simulate(graph: Graph, schedule: Schedule) -> Outcome:
    """Run the full decision process; deterministic for a fixed schedule."""
    if schedule.n != graph.n:
        raise ValueError(f"schedule covers {schedule.n} nodes, graph has {graph.n}")
    per_node: list[Decision | None] = [None] * graph.n
    for v, d in zip(schedule.order, replay_prefix(graph, schedule.order)):
        per_node[v] = d
    return Outcome.from_decisions(per_node)  # type: ignore[arg-type]


def associated_cut(graph: Graph, outcome: Outcome) -> cuts.Cut:
    """The cut whose leading set is the Y-deciders and whose other side is the N-deciders."""
    leading = {v for v, d in enumerate(outcome.decisions) if d is Decision.Y}
    return cuts.Cut.from_leading_set(graph, leading)


def is_regret_proof(graph: Graph, schedule: Schedule) -> tuple[bool, frozenset[int]]:
    """A schedule is regret-proof exactly when its associated cut is stable.

    Returns the verdict plus the violating nodes (consumers who would switch
    given everyone's final choice).
    """
    outcome = simulate(graph, schedule)
    return cuts.is_stable(graph, associated_cut(graph, outcome))


# ---------------------------------------------------------------------------
# Files: a schedule is one node label per line, in schedule order.

def format_schedule(schedule: Schedule, labels: Sequence[str] | None = None) -> str:
    if labels is None:
        labels = [str(i) for i in range(schedule.n)]
    return "\n".join(labels[v] for v in schedule.order) + "\n"


def write_schedule(path: str | Path, schedule: Schedule, labels: Sequence[str] | None = None) -> None:
    Path(path).write_text(format_schedule(schedule, labels))


def load_schedule(path: str | Path, n: int, label_to_id: dict[str, int] | None = None) -> Schedule:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    ids: list[int] = []
    for lineno, lab in enumerate(lines, start=1):
        if label_to_id is not None:
            if lab not in label_to_id:
                raise GraphFormatError(f"line {lineno}: unknown node label {lab!r}")
            ids.append(label_to_id[lab])
        else:
            try:
                ids.append(int(lab))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: unknown node label {lab!r}") from None
    if len(ids) != n or sorted(ids) != list(range(n)):
        raise GraphFormatError(f"schedule must be a permutation of all {n} nodes")
    return Schedule(ids)


def outcome_csv(schedule: Schedule, outcome: Outcome, labels: Sequence[str] | None = None) -> str:
    """CSV rows node,position,decision in ascending node order."""
    if labels is None:
        labels = [str(i) for i in range(schedule.n)]
    lines = ["node,position,decision"]
    for v in range(schedule.n):
        lines.append(f"{labels[v]},{schedule.position[v]},{outcome.decisions[v].value}")
    return "\n".join(lines) + "\n"
