"""Domination peeling and the one-third N-guarantee scheduler.

Starting from a maximal independent set X, the peeling removes redundant
dominators layer by layer: stage i strips Y-nodes that no pendant X-node
depends on, then retires the pendant X-nodes themselves.  The layered mirror
scheduler walks the layers from the deepest inward, which forces every node
outside the base Y-layer to be covered; combining the N-richer mirror with a
domination argument yields at least n/3 N decisions.
"""

from __future__ import annotations

import csv
import heapq
import io
from dataclasses import dataclass

from .dynamics import Decision, Schedule
from .graph import Graph, greedy_maximal_independent_set, require_schedulable
from .mirror import MirrorPair, _MirrorBuilder


@dataclass(frozen=True)
class PeelingDecomposition:
    """Layered partition of the nodes produced by the peeling process.

    x_layers[0] is empty by convention; x_layers[1..levels] partition the base
    independent set and y_layers[0..levels] partition its complement.  Within
    the subgraph induced by all layers of index >= i, every node of
    x_layers[i] is pendant and every node of y_layers[i] has a neighbor in
    x_layers[i].
    """

    base_x: frozenset[int]
    x_layers: tuple[frozenset[int], ...]
    y_layers: tuple[frozenset[int], ...]
    layer_index: tuple[int, ...]

    @property
    def levels(self) -> int:
        return len(self.x_layers) - 1

    def check(self, graph: Graph) -> None:
        """Re-derive the layer invariants from scratch; raises on violation."""
        n = graph.n
        assigned = [0] * n
        for layer in list(self.x_layers) + list(self.y_layers):
            for v in layer:
                assigned[v] += 1
        assert all(c == 1 for c in assigned), "layers must partition the nodes"
        assert frozenset().union(*self.x_layers) == self.base_x
        assert not self.x_layers[0]
        for v in range(n):
            expected = self.layer_index[v]
            side = self.x_layers if v in self.base_x else self.y_layers
            assert v in side[expected], f"layer index of node {v} is wrong"
        for i in range(self.levels, 0, -1):
            alive = set().union(*self.x_layers[i:], *self.y_layers[i:])
            for x in self.x_layers[i]:
                deg = sum(1 for u in graph.adj[x] if u in alive)
                assert deg == 1, f"node {x} is not pendant at stage {i}"
            for y in self.y_layers[i]:
                assert any(u in self.x_layers[i] for u in graph.adj[y]), (
                    f"node {y} has no stage-{i} pendant neighbor"
                )


def peel(graph: Graph, x: frozenset[int] | set[int], validate: bool = False) -> PeelingDecomposition:
    """Peel the graph layer by layer starting from maximal independent set x.

    A Y-node is removable while no pendant X-node leans on it; removable
    nodes leave in ascending id.  When only critical Y-nodes remain, the
    pendant X-nodes form the next X-layer and are retired.  Total work is
    linear in the edge count.
    """
    n = graph.n
    x = frozenset(x)
    if any(d == 0 for d in graph.degree):
        raise ValueError("peeling requires a graph without isolated nodes")
    for v in x:
        for u in graph.adj[v]:
            if u in x:
                raise ValueError(f"set is not independent: edge ({v}, {u})")
    for v in range(n):
        if v not in x and not any(u in x for u in graph.adj[v]):
            raise ValueError(f"set is not maximal: node {v} has no neighbor inside")

    alive = [True] * n
    is_x = [v in x for v in range(n)]
    deg = list(graph.degree)
    # How many alive pendant X-neighbors each Y-node currently has.
    pendant_support = [0] * n
    pendant_x: set[int] = set()

    def sole_alive_neighbor(v: int) -> int:
        return next(u for u in graph.adj[v] if alive[u])

    for v in range(n):
        if is_x[v] and deg[v] == 1:
            pendant_x.add(v)
            pendant_support[sole_alive_neighbor(v)] += 1

    heap = [v for v in range(n) if not is_x[v] and pendant_support[v] == 0]
    heapq.heapify(heap)

    x_layers: list[frozenset[int]] = [frozenset()]
    y_layers: list[frozenset[int]] = []
    x_remaining = len(x)
    while x_remaining:
        shed: list[int] = []
        while heap:
            v = heapq.heappop(heap)
            if not alive[v] or pendant_support[v] != 0:
                continue  # stale entry
            alive[v] = False
            shed.append(v)
            for u in graph.adj[v]:
                if alive[u] and is_x[u]:
                    deg[u] -= 1
                    if deg[u] == 1:
                        pendant_x.add(u)
                        pendant_support[sole_alive_neighbor(u)] += 1
        y_layers.append(frozenset(shed))
        layer = sorted(pendant_x)
        for v in layer:
            owner = sole_alive_neighbor(v)
            alive[v] = False
            pendant_support[owner] -= 1
            if pendant_support[owner] == 0:
                heapq.heappush(heap, owner)
        pendant_x.clear()
        x_layers.append(frozenset(layer))
        x_remaining -= len(layer)
    y_layers.append(frozenset(v for v in range(n) if alive[v]))

    layer_index = [0] * n
    for i, layer in enumerate(x_layers):
        for v in layer:
            layer_index[v] = i
    for i, layer in enumerate(y_layers):
        for v in layer:
            layer_index[v] = i

    decomp = PeelingDecomposition(
        base_x=x,
        x_layers=tuple(x_layers),
        y_layers=tuple(y_layers),
        layer_index=tuple(layer_index),
    )
    if validate:
        decomp.check(graph)
    return decomp


def build_layered_mirror_pair(graph: Graph, decomp: PeelingDecomposition) -> tuple[MirrorPair, frozenset[int]]:
    """Mirror growth restricted stagewise to the induced layer subgraphs.

    Stage i admits unbalanced nodes from layer i only, and edges whose ends
    both lie in layers >= i.  All covered nodes live in layers >= i at stage
    i, so global neighbor tallies agree with the induced-subgraph ones.  On
    exit the uncovered nodes all belong to the base Y-layer.
    """
    require_schedulable(graph)
    b = _MirrorBuilder(graph)
    n = graph.n
    layer = decomp.layer_index
    for stage in range(decomp.levels, -1, -1):
        while True:
            progressed = False
            for w in range(n):
                if not b.in_set[w] and layer[w] == stage and b.delta(w) != 0:
                    b.schedule_node(w)
                    progressed = True
                    break
            if progressed:
                continue
            for u in range(n):
                if b.in_set[u] or layer[u] < stage:
                    continue
                v = next((t for t in graph.adj[u] if not b.in_set[t] and layer[t] >= stage), None)
                if v is None:
                    continue
                b.schedule_edge(u, v)
                progressed = True
                break
            if not progressed:
                break
    pair = b.pair()
    return pair, pair.members


def schedule_n(graph: Graph) -> Schedule:
    """A schedule with at least n/3 N decisions, built in O(n^2) time.

    If the mirrors cover more than two thirds of the nodes, the N-richer
    mirror already wins.  Otherwise schedule the base independent set first
    (all Y), then the uncovered nodes: each is independent of the others and
    dominated by the Y-deciders, so all of them go N.
    """
    x = greedy_maximal_independent_set(graph)
    decomp = peel(graph, x)
    pair, members = build_layered_mirror_pair(graph, decomp)
    uncovered = sorted(set(range(graph.n)) - members)
    if 3 * len(members) > 2 * graph.n:
        chosen = pair.first
        if pair.second.count(Decision.N) > pair.first.count(Decision.N):
            chosen = pair.second
        return Schedule(list(chosen.order) + uncovered)
    rest = sorted(members - x)
    return Schedule(sorted(x) + uncovered + rest)


def decomposition_csv(decomp: PeelingDecomposition) -> str:
    """CSV rows node,layer,side for diagnostics."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["node", "layer", "side"])
    for v, i in enumerate(decomp.layer_index):
        writer.writerow([v, i, "X" if v in decomp.base_x else "Y"])
    return buf.getvalue()
