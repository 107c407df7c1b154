"""Graph core: immutable simple undirected graphs, validation, deterministic
generators, edge-list file I/O, and independent-set machinery.

Node ids are dense 0-based integers.  Input files may carry arbitrary labels,
which are remapped on load; the mapping is kept so output files can use the
original labels.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError, InstanceTooLargeError

Edge = tuple[int, int]


class Graph:
    """Immutable simple undirected graph with sorted adjacency lists."""

    __slots__ = ("n", "m", "adj", "degree")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise ValueError(f"node count must be non-negative, got {n}")
        seen: set[Edge] = set()
        lists: list[list[int]] = [[] for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"parallel edge ({key[0]}, {key[1]})")
            seen.add(key)
            lists[u].append(v)
            lists[v].append(u)
            m += 1
        self.n = n
        self.m = m
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in lists)
        self.degree: tuple[int, ...] = tuple(len(a) for a in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[Edge]:
        """Yield edges as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        return count == self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of structural validation of a node count plus raw edge list."""

    n: int
    edge_count: int
    issues: tuple[str, ...]
    connected: bool

    @property
    def ok(self) -> bool:
        return not self.issues


def validate(n: int, edges: Sequence[Edge]) -> ValidationReport:
    """Check simplicity, symmetry-by-construction, connectivity and n >= 2.

    Operates on raw edge data so that self-loops and parallel edges can be
    reported rather than rejected at construction time.  Downstream schedulers
    require a report with no issues.
    """
    issues: list[str] = []
    if n < 2:
        issues.append(f"need at least 2 nodes, got {n}")
    simple: set[Edge] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            issues.append(f"edge ({u}, {v}) out of range for n={n}")
            continue
        if u == v:
            issues.append(f"self-loop at node {u}")
            continue
        key = (u, v) if u < v else (v, u)
        if key in simple:
            issues.append(f"parallel edge ({key[0]}, {key[1]})")
        else:
            simple.add(key)
    connected = False
    if n > 0:
        connected = Graph(n, sorted(simple)).is_connected()
    if not connected:
        issues.append("graph is disconnected")
    return ValidationReport(n=n, edge_count=len(edges), issues=tuple(issues), connected=connected)


def require_schedulable(graph: Graph) -> None:
    """Schedulers need a connected graph on at least two nodes."""
    if graph.n < 2:
        raise ValueError(f"need at least 2 nodes, got {graph.n}")
    if not graph.is_connected():
        raise ValueError("graph is disconnected")


# ---------------------------------------------------------------------------
# Generators.  All are deterministic for fixed parameters (and seed).

def star(n: int) -> Graph:
    """Star on n nodes: center 0, leaves 1..n-1."""
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return Graph(n, [(0, i) for i in range(1, n)])


def complete(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"complete graph needs n >= 2, got {n}")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def wheel(n: int) -> Graph:
    """Hub 0 joined to a cycle on nodes 1..n-1."""
    if n < 4:
        raise ValueError(f"wheel needs n >= 4, got {n}")
    edges = [(0, i) for i in range(1, n)]
    edges += [(i, i + 1) for i in range(1, n - 1)]
    edges.append((1, n - 1))
    return Graph(n, edges)


def triangle_chain(k: int) -> Graph:
    """k disjoint triangles {a_i, b_i, c_i} whose c-nodes are linked in a path.

    Triangle i (1-based) occupies ids 3(i-1)+0..2; the path edges join
    3(i-1)+2 and 3i+2.  For k >= 2 every triangle has exactly two degree-2
    nodes, which makes the family tight for the one-third guarantee.
    """
    if k < 1:
        raise ValueError(f"triangle chain needs k >= 1, got {k}")
    edges: list[Edge] = []
    for i in range(k):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (a, c), (b, c)]
    for i in range(k - 1):
        edges.append((3 * i + 2, 3 * (i + 1) + 2))
    return Graph(3 * k, edges)


def random_connected(n: int, p: float, seed: int, max_attempts: int = 1000) -> Graph:
    """Erdos-Renyi draw retried until connected; bit-reproducible per seed."""
    if n < 2:
        raise ValueError(f"random graph needs n >= 2, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if g.is_connected():
            return g
    raise RuntimeError(
        f"no connected graph with n={n}, p={p} after {max_attempts} attempts (seed {seed})"
    )


GENERATORS = {
    "star": star,
    "complete": complete,
    "wheel": wheel,
    "triangle_chain": triangle_chain,
    "random_connected": random_connected,
}


def generate(kind: str, **params) -> Graph:
    """Dispatch to a named generator; unknown kinds raise ValueError."""
    try:
        factory = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}") from None
    return factory(**params)


# ---------------------------------------------------------------------------
# Independent sets.

def greedy_maximal_independent_set(graph: Graph) -> frozenset[int]:
    """Maximal independent set by ascending-id scan (deterministic)."""
    chosen: set[int] = set()
    blocked = [False] * graph.n
    for v in range(graph.n):
        if not blocked[v]:
            chosen.add(v)
            for u in graph.adj[v]:
                blocked[u] = True
    return frozenset(chosen)


def exact_max_independent_set(graph: Graph, max_nodes: int = 60) -> tuple[frozenset[int], int]:
    """Exact maximum independent set via branch and bound over bitmasks.

    Vertices with at most one candidate neighbor are taken greedily (a
    standard dominance rule); otherwise the search branches on a candidate of
    maximum residual degree.  Refuses instances above `max_nodes`.
    """
    n = graph.n
    if n > max_nodes:
        raise InstanceTooLargeError(f"exact solver capped at {max_nodes} nodes, got {n}")
    masks = [0] * n
    for v in range(n):
        for u in graph.adj[v]:
            masks[v] |= 1 << u
    best_size = 0
    best_mask = 0

    def expand(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_mask
        while cand:
            if size + cand.bit_count() <= best_size:
                return
            # Take any candidate with <= 1 candidate neighbor; else branch.
            pick = -1
            pick_deg = -1
            c = cand
            while c:
                low = c & -c
                v = low.bit_length() - 1
                d = (masks[v] & cand).bit_count()
                if d <= 1:
                    pick = v
                    pick_deg = d
                    break
                if d > pick_deg:
                    pick = v
                    pick_deg = d
                c ^= low
            bit = 1 << pick
            if pick_deg <= 1:
                chosen |= bit
                size += 1
                cand &= ~(masks[pick] | bit)
                continue
            expand(cand & ~(masks[pick] | bit), chosen | bit, size + 1)
            cand &= ~bit
        if size > best_size:
            best_size = size
            best_mask = chosen

    expand((1 << n) - 1, 0, 0)
    members = frozenset(v for v in range(n) if best_mask >> v & 1)
    return members, best_size


# ---------------------------------------------------------------------------
# Edge-list files: first non-comment line "n m", then m lines "u v".
# '#' starts a comment.  The writer emits sorted edges with u < v.

@dataclass(frozen=True)
class LoadedGraph:
    graph: Graph
    labels: tuple[str, ...]

    @property
    def label_to_id(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


def format_edge_list(graph: Graph, labels: Sequence[str] | None = None) -> str:
    if labels is None:
        labels = [str(i) for i in range(graph.n)]
    lines = [f"{graph.n} {graph.m}"]
    for u, v in graph.edges():
        lines.append(f"{labels[u]} {labels[v]}")
    return "\n".join(lines) + "\n"


def write_edge_list(path: str | Path, graph: Graph, labels: Sequence[str] | None = None) -> None:
    Path(path).write_text(format_edge_list(graph, labels))


def parse_edge_list(text: str) -> tuple[int, list[tuple[str, str]]]:
    """Split an edge-list file into (declared n, raw labeled edges)."""
    rows: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append(line.split())
        if len(rows[-1]) != 2:
            raise GraphFormatError(f"line {lineno}: expected two fields, got {raw!r}")
    if not rows:
        raise GraphFormatError("empty edge-list file")
    header = rows.pop(0)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"bad header {' '.join(header)!r}; expected 'n m'") from None
    if len(rows) != m:
        raise GraphFormatError(f"header declares {m} edges but file has {len(rows)}")
    return n, [(a, b) for a, b in rows]


def load_edge_list(path: str | Path) -> LoadedGraph:
    """Load an edge-list file, remapping arbitrary labels to dense ids.

    Integer labels already in [0, n) are used as-is (unreferenced ids are
    isolated nodes); otherwise labels are remapped in order of appearance and
    must cover exactly n distinct names.
    """
    n, raw = parse_edge_list(Path(path).read_text())
    as_int: list[Edge] | None = []
    for a, b in raw:
        try:
            u, v = int(a), int(b)
        except ValueError:
            as_int = None
            break
        if not (0 <= u < n and 0 <= v < n):
            as_int = None
            break
        as_int.append((u, v))
    if as_int is not None:
        edges = as_int
        labels = tuple(str(i) for i in range(n))
    else:
        mapping: dict[str, int] = {}
        edges = []
        for a, b in raw:
            for lab in (a, b):
                if lab not in mapping:
                    mapping[lab] = len(mapping)
            edges.append((mapping[a], mapping[b]))
        if len(mapping) != n:
            raise GraphFormatError(
                f"header declares {n} nodes but edges name {len(mapping)} distinct labels"
            )
        labels = tuple(lab for lab, _ in sorted(mapping.items(), key=lambda kv: kv[1]))
    report = validate(n, edges)
    structural = [msg for msg in report.issues if "disconnected" not in msg and "at least 2" not in msg]
    if structural:
        raise GraphFormatError("; ".join(structural))
    return LoadedGraph(graph=Graph(n, edges), labels=labels)
