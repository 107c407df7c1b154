"""Link cuts, the stability condition, and violating-node move dynamics.

A cut is an ordered bipartition [S1, S2]; S1 is the leading set.  Stability is
asymmetric: every S1 node needs at least as many neighbors across as on its
own side, every S2 node needs strictly more neighbors across.  Moving a
violating node never shrinks the cut, and moves out of S1 strictly grow it,
which bounds every move loop.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import IterationLimitError
from .graph import Graph


class Cut:
    """Ordered bipartition stored as a side array; side 1 is the leading set."""

    __slots__ = ("side", "size", "s1_count", "s2_count")

    def __init__(self, side: Sequence[int], size: int, s1_count: int, s2_count: int):
        self.side = list(side)
        self.size = size
        self.s1_count = s1_count
        self.s2_count = s2_count

    @classmethod
    def from_leading_set(cls, graph: Graph, leading: Iterable[int]) -> "Cut":
        lead = set(leading)
        side = [1 if v in lead else 2 for v in range(graph.n)]
        size = sum(1 for u, v in graph.edges() if side[u] != side[v])
        return cls(side, size, len(lead), graph.n - len(lead))

    def leading_set(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.side) if s == 1)

    def second_set(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.side) if s == 2)

    def swap(self) -> None:
        """Exchange the roles of the two sides in place; the size is unchanged."""
        self.side = [3 - s for s in self.side]
        self.s1_count, self.s2_count = self.s2_count, self.s1_count

    def copy(self) -> "Cut":
        return Cut(list(self.side), self.size, self.s1_count, self.s2_count)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cut) and self.side == other.side

    def __repr__(self) -> str:
        return f"Cut(size={self.size}, s1={self.s1_count}, s2={self.s2_count})"


class ViolationIndex:
    """Per-node (side, delta) pairs enabling O(n) move detection.

    delta(v) is the number of v's neighbors on the other side minus the
    number on its own side.  v violates stability iff delta < 0 on side 1 or
    delta <= 0 on side 2.  The index reads sides through the cut it was built
    for, so side swaps need no rebuild.
    """

    __slots__ = ("cut", "delta")

    def __init__(self, cut: Cut, delta: list[int]):
        self.cut = cut
        self.delta = delta

    def is_violating(self, v: int) -> bool:
        d = self.delta[v]
        return d < 0 if self.cut.side[v] == 1 else d <= 0

    def first_violator(self) -> int | None:
        for v in range(len(self.delta)):
            if self.is_violating(v):
                return v
        return None

    def violators(self) -> frozenset[int]:
        return frozenset(v for v in range(len(self.delta)) if self.is_violating(v))


def build_index(graph: Graph, cut: Cut) -> ViolationIndex:
    """Compute the violation index from scratch in O(m)."""
    side = cut.side
    delta = [0] * graph.n
    for v in range(graph.n):
        own = other = 0
        s = side[v]
        for u in graph.adj[v]:
            if side[u] == s:
                own += 1
            else:
                other += 1
        delta[v] = other - own
    return ViolationIndex(cut, delta)


def is_stable(graph: Graph, cut: Cut) -> tuple[bool, frozenset[int]]:
    """Verdict plus the set of violating nodes."""
    violators = build_index(graph, cut).violators()
    return not violators, violators


@dataclass(frozen=True)
class MoveRecord:
    node: int
    move_type: int  # side the node left: 1 or 2
    cut_size_after: int


class MoveLog:
    """Sequence of applied moves; the cut size is nondecreasing along it."""

    __slots__ = ("records",)

    def __init__(self) -> None:
        self.records: list[MoveRecord] = []

    def append(self, record: MoveRecord) -> None:
        self.records.append(record)

    @property
    def type1_count(self) -> int:
        return sum(1 for r in self.records if r.move_type == 1)

    @property
    def type2_count(self) -> int:
        return sum(1 for r in self.records if r.move_type == 2)

    def moved_nodes(self) -> list[int]:
        return [r.node for r in self.records]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[MoveRecord]:
        return iter(self.records)


def apply_move(graph: Graph, cut: Cut, index: ViolationIndex, v: int) -> MoveRecord:
    """Flip a violating node to the other side, updating cut and index in O(deg)."""
    assert index.is_violating(v), f"node {v} is not violating"
    old_side = cut.side[v]
    gain = -index.delta[v]  # own-side minus other-side degree, before the flip
    for u in graph.adj[v]:
        index.delta[u] += 2 if cut.side[u] == old_side else -2
    index.delta[v] = -index.delta[v]
    cut.side[v] = 3 - old_side
    cut.size += gain
    if old_side == 1:
        cut.s1_count -= 1
        cut.s2_count += 1
    else:
        cut.s2_count -= 1
        cut.s1_count += 1
    record = MoveRecord(node=v, move_type=old_side, cut_size_after=cut.size)
    return record


def move_cap(graph: Graph) -> int:
    # Generous bound: at most m strict-growth moves, at most n growth-free
    # moves between them.  Exceeding it means the move loop is broken.
    return 4 * (graph.m + 1) * (graph.n + 1)


def stabilize(graph: Graph, cut: Cut) -> tuple[Cut, MoveLog]:
    """Move the lowest-id violating node until none remains.

    The input cut is not modified.  The result is stable and its size is at
    least the input size plus the number of type-1 moves performed.
    """
    work = cut.copy()
    index = build_index(graph, work)
    log = MoveLog()
    cap = move_cap(graph)
    while True:
        v = index.first_violator()
        if v is None:
            return work, log
        log.append(apply_move(graph, work, index, v))
        if len(log) > cap:
            raise IterationLimitError(f"stabilize exceeded {cap} moves")


def balanced_stable_cut(graph: Graph, cut: Cut) -> tuple[Cut, MoveLog]:
    """Stable cut whose leading set covers at least half the nodes.

    Repeatedly: swap sides if the leading set is small, then move violating
    nodes to a fixed point.  Each round that fails the half test spends at
    least one strict-growth move, so the loop is bounded by m+1 rounds.
    """
    work = cut.copy()
    index = build_index(graph, work)
    log = MoveLog()
    cap = move_cap(graph)
    for _ in range(graph.m + 2):
        if 2 * work.s1_count < graph.n:
            work.swap()
        while True:
            v = index.first_violator()
            if v is None:
                break
            log.append(apply_move(graph, work, index, v))
            if len(log) > cap:
                raise IterationLimitError(f"balanced_stable_cut exceeded {cap} moves")
        if 2 * work.s1_count >= graph.n:
            return work, log
    raise IterationLimitError("balanced_stable_cut exceeded its round cap")


# ---------------------------------------------------------------------------
# Diagnostics output.

def format_cut(cut: Cut) -> str:
    """n lines of "node side"."""
    return "\n".join(f"{v} {s}" for v, s in enumerate(cut.side)) + "\n"


def write_cut(path: str | Path, cut: Cut) -> None:
    Path(path).write_text(format_cut(cut))


def move_log_csv(log: MoveLog) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["step", "node", "type", "cut_size"])
    for step, r in enumerate(log):
        writer.writerow([step, r.node, r.move_type, r.cut_size_after])
    return buf.getvalue()
