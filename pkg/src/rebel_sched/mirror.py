"""Mirror scheduling: grow two partial schedules that decide every covered
node oppositely, keep the Y-richer one, and extend it so every remaining node
decides Y.  Guarantees at least n/2 Y decisions on any connected network.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import Decision, PartialSchedule, Schedule, decide, simulate
from .graph import Graph, require_schedulable


@dataclass(frozen=True)
class MirrorPair:
    """Two partial schedules over the same node set with opposite decisions.

    For every covered node, `first` decides Y exactly when `second` decides N.
    Nodes left uncovered form an independent set whose covered neighborhoods
    are balanced, so any extension decides Y on all of them.
    """

    members: frozenset[int]
    first: PartialSchedule
    second: PartialSchedule


class _MirrorBuilder:
    """Shared growth engine for the plain and the layered mirror schedulers."""

    def __init__(self, graph: Graph):
        n = graph.n
        self.graph = graph
        self.in_set = [False] * n
        self.count = 0
        # Decided-neighbor tallies per node, one pair per mirror.
        self.y1 = [0] * n
        self.n1 = [0] * n
        self.y2 = [0] * n
        self.n2 = [0] * n
        self.unscheduled_nbrs = list(graph.degree)
        self.first = PartialSchedule()
        self.second = PartialSchedule()

    def delta(self, v: int) -> int:
        """Y-minus-N imbalance of v's covered neighborhood under the first mirror."""
        return self.y1[v] - self.n1[v]

    def _commit(self, v: int, d1: Decision, d2: Decision) -> None:
        self.in_set[v] = True
        self.count += 1
        for u in self.graph.adj[v]:
            self.unscheduled_nbrs[u] -= 1
            if d1 is Decision.Y:
                self.y1[u] += 1
            else:
                self.n1[u] += 1
            if d2 is Decision.Y:
                self.y2[u] += 1
            else:
                self.n2[u] += 1

    def schedule_node(self, w: int) -> None:
        """Place w at the same position in both mirrors; decisions follow the rule."""
        d1 = decide(self.y1[w], self.n1[w])
        d2 = decide(self.y2[w], self.n2[w])
        self.first.append(w, d1)
        self.second.append(w, d2)
        self._commit(w, d1, d2)

    def schedule_edge(self, u: int, v: int) -> None:
        """Place the edge u-v as u,v in the first mirror and v,u in the second."""
        d1u = decide(self.y1[u], self.n1[u])
        self.first.append(u, d1u)
        d2v = decide(self.y2[v], self.n2[v])
        self.second.append(v, d2v)
        # The second endpoint of each mirror sees the first one decided.
        y1v, n1v = self.y1[v], self.n1[v]
        if d1u is Decision.Y:
            y1v += 1
        else:
            n1v += 1
        d1v = decide(y1v, n1v)
        self.first.append(v, d1v)
        y2u, n2u = self.y2[u], self.n2[u]
        if d2v is Decision.Y:
            y2u += 1
        else:
            n2u += 1
        d2u = decide(y2u, n2u)
        self.second.append(u, d2u)
        self._commit(u, d1u, d2u)
        self._commit(v, d1v, d2v)

    def pair(self) -> MirrorPair:
        members = frozenset(v for v in range(self.graph.n) if self.in_set[v])
        return MirrorPair(members=members, first=self.first, second=self.second)


def build_mirror_pair(graph: Graph) -> MirrorPair:
    """Grow the mirrored schedules until no unbalanced node and no free edge remain.

    Alternates two steps: schedule the lowest-id uncovered node whose covered
    neighborhood is unbalanced; otherwise schedule the lexicographically
    smallest edge with both ends uncovered, in opposite order per mirror.
    """
    require_schedulable(graph)
    b = _MirrorBuilder(graph)
    n = graph.n
    while True:
        progressed = False
        for w in range(n):
            if not b.in_set[w] and b.delta(w) != 0:
                b.schedule_node(w)
                progressed = True
                break
        if progressed:
            continue
        for u in range(n):
            if b.in_set[u] or b.unscheduled_nbrs[u] == 0:
                continue
            v = next(x for x in graph.adj[u] if not b.in_set[x])
            b.schedule_edge(u, v)
            progressed = True
            break
        if not progressed:
            return b.pair()


def choose_and_extend(graph: Graph, pair: MirrorPair) -> Schedule:
    """Keep the mirror with more Y decisions (ties keep the first) and append
    the uncovered nodes in ascending id; each appended node decides Y."""
    chosen = pair.first
    if pair.second.count(Decision.Y) > pair.first.count(Decision.Y):
        chosen = pair.second
    tail = sorted(set(range(graph.n)) - pair.members)
    return Schedule(list(chosen.order) + tail)


def schedule_y(graph: Graph) -> Schedule:
    """A schedule with at least n/2 Y decisions, built in O(n^2) time."""
    return choose_and_extend(graph, build_mirror_pair(graph))


def one_product_order(graph: Graph, schedule: Schedule) -> list[int]:
    """Promotion order for a single product: the Y-deciders in schedule order.

    When the product is offered along this order, every consumer listed buys,
    because at her turn at most half of her neighbors already own it.
    """
    outcome = simulate(graph, schedule)
    return [v for v in schedule.order if outcome.decisions[v] is Decision.Y]
