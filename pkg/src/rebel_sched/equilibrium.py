"""Regret-proof schedulers built on stable cuts.

Both schedulers alternate between stabilizing a cut and greedily scheduling
nodes whose current decision matches their side's target (Y on the leading
side, N on the other).  When some node cannot be scheduled, recombining the
stuck remainders with the opposite finished sides strictly enlarges the cut,
so the process terminates with a complete schedule whose associated cut is
the final stable cut.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .cuts import Cut, MoveLog, balanced_stable_cut, stabilize
from .dynamics import Decision, PartialSchedule, Schedule, decide
from .errors import IterationLimitError
from .graph import (
    Graph,
    exact_max_independent_set,
    greedy_maximal_independent_set,
    require_schedulable,
)

_TARGET = {1: Decision.Y, 2: Decision.N}


@dataclass(frozen=True)
class GreedyPassResult:
    """Outcome of one greedy scheduling pass over a fixed cut.

    t1/t2 hold the nodes scheduled with their side's target decision; the
    remainders could never match their target during the pass.
    """

    partial: PartialSchedule
    t1: frozenset[int]
    t2: frozenset[int]
    s1_rem: frozenset[int]
    s2_rem: frozenset[int]


def greedy_pass(graph: Graph, cut: Cut) -> GreedyPassResult:
    """Schedule nodes whose current decision equals their side's target.

    Scans ids ascending and restarts after every placement; stops when a full
    scan places nothing.  Deterministic.
    """
    n = graph.n
    y_nb = [0] * n
    n_nb = [0] * n
    partial = PartialSchedule()
    placed = [False] * n
    while True:
        progressed = False
        for v in range(n):
            if placed[v]:
                continue
            d = decide(y_nb[v], n_nb[v])
            if d is _TARGET[cut.side[v]]:
                partial.append(v, d)
                placed[v] = True
                counts = y_nb if d is Decision.Y else n_nb
                for u in graph.adj[v]:
                    counts[u] += 1
                progressed = True
                break
        if not progressed:
            break
    t1 = frozenset(v for v in range(n) if placed[v] and cut.side[v] == 1)
    t2 = frozenset(v for v in range(n) if placed[v] and cut.side[v] == 2)
    s1_rem = frozenset(v for v in range(n) if not placed[v] and cut.side[v] == 1)
    s2_rem = frozenset(v for v in range(n) if not placed[v] and cut.side[v] == 2)
    return GreedyPassResult(partial=partial, t1=t1, t2=t2, s1_rem=s1_rem, s2_rem=s2_rem)


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    cut_size: int
    s1_count: int
    s2_count: int
    moves_type1: int
    moves_type2: int
    move_log: MoveLog | None = None


def trace_csv(records: list[TraceRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["iter", "cut_size", "s1", "s2", "moves_type1", "moves_type2"])
    for r in records:
        writer.writerow([r.iteration, r.cut_size, r.s1_count, r.s2_count, r.moves_type1, r.moves_type2])
    return buf.getvalue()


def default_initial_cut(graph: Graph) -> Cut:
    """Leading set = everything outside a greedy maximal independent set.

    Deterministic, both sides nonempty for any connected graph on >= 2 nodes,
    and it hands the N-oriented scheduler an independent second side to start
    from.
    """
    mis = greedy_maximal_independent_set(graph)
    return Cut.from_leading_set(graph, set(range(graph.n)) - mis)


def equilibrium_schedule_y(
    graph: Graph,
    initial_cut: Cut | None = None,
    trace: list[TraceRecord] | None = None,
) -> Schedule:
    """Regret-proof schedule with at least n/2 Y decisions.

    Each round balances and stabilizes the cut (leading set at least half),
    runs a greedy pass, and either finishes or recombines stuck remainders
    with the opposite finished sides, which strictly grows the cut.
    """
    require_schedulable(graph)
    start = initial_cut.copy() if initial_cut is not None else default_initial_cut(graph)
    t1: frozenset[int] = frozenset()
    t2: frozenset[int] = frozenset()
    s1p = start.leading_set()
    prev_size: int | None = None
    for iteration in range(graph.m + 2):
        recombined = Cut.from_leading_set(graph, s1p | t2)
        if prev_size is not None:
            assert recombined.size > prev_size, "recombination must strictly grow the cut"
        cut, log = balanced_stable_cut(graph, recombined)
        result = greedy_pass(graph, cut)
        if trace is not None:
            trace.append(
                TraceRecord(
                    iteration=iteration,
                    cut_size=cut.size,
                    s1_count=cut.s1_count,
                    s2_count=cut.s2_count,
                    moves_type1=log.type1_count,
                    moves_type2=log.type2_count,
                    move_log=log,
                )
            )
        if not result.s1_rem:
            assert not result.s2_rem, "empty leading remainder forces an empty second remainder"
            return Schedule(result.partial.order)
        t1, t2 = result.t1, result.t2
        s1p = result.s1_rem
        prev_size = cut.size
    raise IterationLimitError("schedule-and-recombine loop exceeded its cap")


def equilibrium_schedule_n(
    graph: Graph,
    initial_cut: Cut | None = None,
    trace: list[TraceRecord] | None = None,
) -> Schedule:
    """Regret-proof schedule with at least max(sqrt(n+1)-1, (n-alpha)/2) N decisions.

    Outer rounds swap the cut's sides; inner rounds stabilize, greedily
    schedule, and recombine until everything is scheduled.  The best schedule
    by N count is kept; the run stops when two consecutive complete schedules
    sit on cuts of equal size.
    """
    require_schedulable(graph)
    cut = initial_cut.copy() if initial_cut is not None else default_initial_cut(graph)
    size_after = 0
    best_count = 0
    best: Schedule | None = None
    iteration = 0
    for _ in range(graph.m + 2):
        size_before = size_after
        cut.swap()
        result = None
        for _ in range(graph.m + 2):
            cut, log = stabilize(graph, cut)
            result = greedy_pass(graph, cut)
            if trace is not None:
                trace.append(
                    TraceRecord(
                        iteration=iteration,
                        cut_size=cut.size,
                        s1_count=cut.s1_count,
                        s2_count=cut.s2_count,
                        moves_type1=log.type1_count,
                        moves_type2=log.type2_count,
                        move_log=log,
                    )
                )
            iteration += 1
            if not result.s1_rem:
                assert not result.s2_rem
                break
            recombined = Cut.from_leading_set(graph, result.s1_rem | result.t2)
            assert recombined.size > cut.size, "recombination must strictly grow the cut"
            cut = recombined
        else:
            raise IterationLimitError("inner schedule-and-recombine loop exceeded its cap")
        if cut.s2_count > best_count:
            best_count = cut.s2_count
            best = Schedule(result.partial.order)
        size_after = cut.size
        if size_before == size_after:
            assert best is not None
            return best
    raise IterationLimitError("outer swap loop exceeded its cap")


def sqrt_requirement(n: int) -> int:
    """Smallest integer count satisfying count >= sqrt(n+1) - 1, float-free."""
    root = math.isqrt(n + 1)
    if root * root < n + 1:
        root += 1
    return root - 1


def n_count_requirement(n: int, alpha: int | None) -> int:
    """Integer N-count guarantee; the independence term needs alpha."""
    req = sqrt_requirement(n)
    if alpha is not None:
        req = max(req, (n - alpha + 1) // 2)
    return req


def n_count_requirement_for(graph: Graph, alpha_limit: int = 60) -> int:
    """Guarantee with exact alpha when the exact solver is affordable."""
    alpha: int | None = None
    if graph.n <= alpha_limit:
        _, alpha = exact_max_independent_set(graph, max_nodes=alpha_limit)
    return n_count_requirement(graph.n, alpha)
