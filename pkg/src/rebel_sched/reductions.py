"""Hardness-reduction instance generators with machine-checkable certificates.

Two constructions are provided: attaching degree-many pendants to every node
of a graph (turning maximum-independent-set instances into Y-maximization
instances), and a gadget build that turns bounded-occurrence MAX-2SAT
instances into N-maximization instances together with a witness schedule
whose N count equals the satisfied-clause count plus a fixed gadget term.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from .dynamics import Schedule
from .errors import GraphFormatError, InstanceTooLargeError
from .graph import Edge, Graph


@dataclass(frozen=True)
class SatInstance:
    """MAX-2SAT instance with 1-based signed literals, at most two per clause."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if not 1 <= len(clause) <= 2:
                raise GraphFormatError(f"clause {clause} must have one or two literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise GraphFormatError(f"literal {lit} out of range for {self.num_vars} variables")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def occurrence_counts(self) -> dict[int, int]:
        """Number of distinct clauses each signed literal appears in."""
        counts: dict[int, int] = {}
        for clause in self.clauses:
            for lit in set(clause):
                counts[lit] = counts.get(lit, 0) + 1
        return counts

    def check_three_occurrence(self) -> None:
        for lit, count in sorted(self.occurrence_counts().items()):
            if count > 3:
                raise GraphFormatError(f"literal {lit} occurs in {count} clauses, limit is 3")

    def satisfied_count(self, assignment: Sequence[bool]) -> int:
        if len(assignment) != self.num_vars:
            raise ValueError(f"assignment covers {len(assignment)} of {self.num_vars} variables")
        sat = 0
        for clause in self.clauses:
            for lit in clause:
                value = assignment[abs(lit) - 1]
                if (lit > 0) == value:
                    sat += 1
                    break
        return sat


def best_assignment(instance: SatInstance, max_vars: int = 20) -> tuple[int, tuple[bool, ...]]:
    """Exhaustive optimum over all assignments; first maximizer wins ties."""
    n = instance.num_vars
    if n > max_vars:
        raise InstanceTooLargeError(f"assignment enumeration capped at {max_vars} variables, got {n}")
    best = -1
    best_assign: tuple[bool, ...] = ()
    for mask in range(1 << n):
        assign = tuple(bool(mask >> i & 1) for i in range(n))
        sat = instance.satisfied_count(assign)
        if sat > best:
            best = sat
            best_assign = assign
    return best, best_assign


@dataclass(frozen=True)
class ReducedInstance:
    """A generated network plus per-node roles and construction parameters."""

    graph: Graph
    roles: tuple[dict, ...]
    params: dict

    def role_of(self, v: int) -> dict:
        return self.roles[v]

    def pendant_owners(self) -> dict[int, int]:
        return {v: r["owner"] for v, r in enumerate(self.roles) if r["role"] == "pendant"}


# ---------------------------------------------------------------------------
# Independent-set reduction: every source node u of degree d gains d pendants.

def independent_set_reduction(h: Graph) -> ReducedInstance:
    """Attach deg(u) pendant nodes to every node u; originals keep their ids.

    Every original node ends up with half its neighbors pendant, which makes
    the maximum number of Y decisions equal 2*m(h) plus the independence
    number of the source graph.
    """
    if h.n < 2 or not h.is_connected():
        raise ValueError("source graph must be connected on at least 2 nodes")
    edges: list[Edge] = list(h.edges())
    roles: list[dict] = [{"role": "original"} for _ in range(h.n)]
    next_id = h.n
    for u in range(h.n):
        for _ in range(h.degree[u]):
            edges.append((u, next_id))
            roles.append({"role": "pendant", "owner": u})
            next_id += 1
    graph = Graph(next_id, edges)
    params = {"kind": "independent_set", "source_nodes": h.n, "source_edges": h.m}
    return ReducedInstance(graph=graph, roles=tuple(roles), params=params)


def pendants_after_owner(instance: ReducedInstance, schedule: Schedule) -> int:
    """How many pendant nodes the schedule places after their unique neighbor."""
    if schedule.n != instance.graph.n:
        raise ValueError(f"schedule covers {schedule.n} nodes, instance has {instance.graph.n}")
    pos = schedule.position
    return sum(1 for p, owner in instance.pendant_owners().items() if pos[p] > pos[owner])


# ---------------------------------------------------------------------------
# Bounded-occurrence MAX-2SAT reduction.
#
# Node layout: literal nodes first (positive then negative per variable),
# then one node per clause, then per-variable gadgets.  Each gadget holds
# groups A (2 nodes), B (2), C (a 9-cycle), and D (a fan of `fan` pendants on
# every cycle node), with both literals of the variable joined to A, B and C.

def _gadget_span(fan: int) -> int:
    return 13 + 9 * fan


def fan_size(num_vars: int, num_clauses: int) -> int:
    return 10 * num_vars + num_clauses


def max_two_sat_reduction(instance: SatInstance) -> ReducedInstance:
    """Build the rebel network for a bounded-occurrence MAX-2SAT instance."""
    instance.check_three_occurrence()
    n_vars = instance.num_vars
    n_clauses = instance.num_clauses
    fan = fan_size(n_vars, n_clauses)
    span = _gadget_span(fan)
    total = 2 * n_vars + n_clauses + n_vars * span

    edges: list[Edge] = []
    roles: list[dict] = []
    for i in range(n_vars):
        roles.append({"role": "literal", "var": i, "negated": False})
        roles.append({"role": "literal", "var": i, "negated": True})
    for j in range(n_clauses):
        roles.append({"role": "clause", "index": j})

    def literal_node(lit: int) -> int:
        return 2 * (abs(lit) - 1) + (1 if lit < 0 else 0)

    clause_base = 2 * n_vars
    for j, clause in enumerate(instance.clauses):
        for lit in sorted(set(clause)):
            edges.append((literal_node(lit), clause_base + j))

    gadget_base = 2 * n_vars + n_clauses
    for i in range(n_vars):
        base = gadget_base + i * span
        a = [base, base + 1]
        b = [base + 2, base + 3]
        c = [base + 4 + k for k in range(9)]
        for k in range(2):
            roles.append({"role": "gadget", "var": i, "part": "A", "index": k + 1})
        for k in range(2):
            roles.append({"role": "gadget", "var": i, "part": "B", "index": k + 1})
        for k in range(9):
            roles.append({"role": "gadget", "var": i, "part": "C", "index": k + 1})
        for k in range(9):
            for j in range(fan):
                roles.append({"role": "gadget", "var": i, "part": "D", "cycle": k + 1, "index": j + 1})
        pos_lit, neg_lit = 2 * i, 2 * i + 1
        for node in a + b + c:
            edges.append((pos_lit, node))
            edges.append((neg_lit, node))
        for node in c:
            edges.append((b[0], node))
            edges.append((b[1], node))
        for k in range(9):
            edges.append((c[k], c[(k + 1) % 9]))
        d_base = base + 13
        for k in range(9):
            for j in range(fan):
                edges.append((c[k], d_base + k * fan + j))

    graph = Graph(total, edges)
    assert graph.n == n_clauses + (15 + 9 * fan) * n_vars
    params = {
        "kind": "two_sat",
        "num_vars": n_vars,
        "num_clauses": n_clauses,
        "fan": fan,
    }
    return ReducedInstance(graph=graph, roles=tuple(roles), params=params)


def witness_schedule(instance: ReducedInstance, assignment: Sequence[bool]) -> Schedule:
    """Schedule realizing satisfied(assignment) + (5 + 9*fan)*num_vars N decisions.

    First the true literals and all clause nodes; then per gadget: groups A
    and B, the first eight cycle nodes, the false literal, the ninth cycle
    node, and the pendant fans.  Ascending ids within each step.
    """
    params = instance.params
    if params.get("kind") != "two_sat":
        raise ValueError("witness schedules exist only for the MAX-2SAT construction")
    n_vars = params["num_vars"]
    n_clauses = params["num_clauses"]
    fan = params["fan"]
    if len(assignment) != n_vars:
        raise ValueError(f"assignment covers {len(assignment)} of {n_vars} variables")
    span = _gadget_span(fan)
    clause_base = 2 * n_vars
    gadget_base = clause_base + n_clauses

    order: list[int] = []
    for i in range(n_vars):
        order.append(2 * i if assignment[i] else 2 * i + 1)
    order.extend(range(clause_base, clause_base + n_clauses))
    for i in range(n_vars):
        base = gadget_base + i * span
        c = [base + 4 + k for k in range(9)]
        order.extend([base, base + 1, base + 2, base + 3])
        order.extend(c[:8])
        order.append(2 * i + 1 if assignment[i] else 2 * i)
        order.append(c[8])
        order.extend(range(base + 13, base + span))
    return Schedule(order)


def expected_witness_n_count(instance: ReducedInstance, assignment: Sequence[bool],
                             sat_instance: SatInstance) -> int:
    """Closed-form N count the witness schedule must achieve."""
    fan = instance.params["fan"]
    n_vars = instance.params["num_vars"]
    return sat_instance.satisfied_count(assignment) + (5 + 9 * fan) * n_vars


# ---------------------------------------------------------------------------
# DIMACS-subset reader: "p cnf <vars> <clauses>" then clause lines ending 0.

def parse_cnf(text: str) -> SatInstance:
    num_vars: int | None = None
    declared_clauses: int | None = None
    clauses: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphFormatError(f"line {lineno}: bad problem line {raw!r}")
            num_vars, declared_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise GraphFormatError(f"line {lineno}: clause before problem line")
        try:
            lits = [int(t) for t in line.split()]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad clause {raw!r}") from None
        if not lits or lits[-1] != 0:
            raise GraphFormatError(f"line {lineno}: clause must end with 0")
        lits = lits[:-1]
        if not 1 <= len(lits) <= 2:
            raise GraphFormatError(f"line {lineno}: clauses are limited to two literals")
        clauses.append(tuple(lits))
    if num_vars is None:
        raise GraphFormatError("missing problem line")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise GraphFormatError(f"problem line declares {declared_clauses} clauses, file has {len(clauses)}")
    return SatInstance(num_vars=num_vars, clauses=tuple(clauses))


def load_cnf(path: str | Path) -> SatInstance:
    return parse_cnf(Path(path).read_text())


def certificate_lines(instance: ReducedInstance) -> Iterator[str]:
    """JSON lines: one params record, then one record per node."""
    yield json.dumps({"params": instance.params}, sort_keys=True)
    for v, role in enumerate(instance.roles):
        record = {"node": v}
        record.update(role)
        yield json.dumps(record, sort_keys=True)


def write_certificate(path: str | Path, instance: ReducedInstance) -> None:
    Path(path).write_text("\n".join(certificate_lines(instance)) + "\n")
