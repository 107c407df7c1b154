"""Exhaustive ground truth for desk-scale instances.

The search enumerates scheduling orders depth-first with its own incremental
replay of the rebel rule (kept independent of the production simulator so the
two can be checked against each other), tracking optimal Y and N counts and
the best counts achievable by schedules whose outcome is a stable cut.
Branches are pruned only when they can no longer improve any tracked optimum.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from . import equilibrium
from .dynamics import Decision, Schedule, is_regret_proof, simulate
from .errors import InstanceTooLargeError
from .graph import Graph, exact_max_independent_set
from .mirror import schedule_y
from .peeling import schedule_n


def replay(graph: Graph, order: Sequence[int]) -> tuple[Decision, ...]:
    """Independent replay of the rebel rule along an order; ties go to Y."""
    decided: list[int] = [0] * graph.n  # 0 undecided, 1 Y, 2 N
    out: list[Decision] = []
    for v in order:
        y = n = 0
        for u in graph.adj[v]:
            if decided[u] == 1:
                y += 1
            elif decided[u] == 2:
                n += 1
        if y > n:
            decided[v] = 2
            out.append(Decision.N)
        else:
            decided[v] = 1
            out.append(Decision.Y)
    return tuple(out)


@dataclass(frozen=True)
class OracleResult:
    """Exact optima over all schedules (or all completions of a fixed prefix)."""

    opt_y: int
    opt_n: int
    opt_y_schedule: Schedule
    opt_n_schedule: Schedule
    regret_proof_exists: bool
    stable_opt_y: int
    stable_opt_n: int
    stable_opt_y_schedule: Schedule | None
    stable_opt_n_schedule: Schedule | None


def brute_force(graph: Graph, prefix: Sequence[int] = (), max_free: int = 9) -> OracleResult:
    """Enumerate every schedule extending `prefix` (all schedules when empty).

    Lexicographic order over completions; a branch is cut only when neither
    optimum nor any stable-outcome optimum can still be beaten.
    """
    n = graph.n
    free = sorted(set(range(n)) - set(prefix))
    if len(prefix) + len(free) != n:
        raise ValueError("prefix must consist of distinct node ids")
    if len(free) > max_free:
        raise InstanceTooLargeError(
            f"exhaustive search capped at {max_free} free nodes, got {len(free)}"
        )

    adj = graph.adj
    decided = [0] * n  # 0 undecided, 1 Y, 2 N
    y_nb = [0] * n
    n_nb = [0] * n
    order: list[int] = []

    def place(v: int) -> int:
        d = 2 if y_nb[v] > n_nb[v] else 1
        decided[v] = d
        for u in adj[v]:
            if d == 1:
                y_nb[u] += 1
            else:
                n_nb[u] += 1
        order.append(v)
        return d

    def unplace(v: int) -> None:
        d = decided[v]
        decided[v] = 0
        for u in adj[v]:
            if d == 1:
                y_nb[u] -= 1
            else:
                n_nb[u] -= 1
        order.pop()

    y_total = n_total = 0
    for v in prefix:
        if place(v) == 1:
            y_total += 1
        else:
            n_total += 1

    best = {
        "y": -1, "n": -1, "sy": -1, "sn": -1,
        "y_order": None, "n_order": None, "sy_order": None, "sn_order": None,
    }

    def outcome_is_stable() -> bool:
        for v in range(n):
            if decided[v] == 1:
                if y_nb[v] > n_nb[v]:
                    return False
            elif y_nb[v] <= n_nb[v]:
                return False
        return True

    k = len(free)

    def dfs(depth: int, y_total: int, n_total: int) -> None:
        if depth == k:
            if y_total > best["y"]:
                best["y"], best["y_order"] = y_total, tuple(order)
            if n_total > best["n"]:
                best["n"], best["n_order"] = n_total, tuple(order)
            if outcome_is_stable():
                if y_total > best["sy"]:
                    best["sy"], best["sy_order"] = y_total, tuple(order)
                if n_total > best["sn"]:
                    best["sn"], best["sn_order"] = n_total, tuple(order)
            return
        rem = k - depth
        if (
            y_total + rem <= best["y"]
            and n_total + rem <= best["n"]
            and best["sy"] >= 0
            and y_total + rem <= best["sy"]
            and n_total + rem <= best["sn"]
        ):
            return
        for v in free:
            if decided[v]:
                continue
            d = place(v)
            dfs(depth + 1, y_total + (d == 1), n_total + (d == 2))
            unplace(v)

    dfs(0, y_total, n_total)
    return OracleResult(
        opt_y=best["y"],
        opt_n=best["n"],
        opt_y_schedule=Schedule(best["y_order"]),
        opt_n_schedule=Schedule(best["n_order"]),
        regret_proof_exists=best["sy"] >= 0,
        stable_opt_y=best["sy"],
        stable_opt_n=best["sn"],
        stable_opt_y_schedule=Schedule(best["sy_order"]) if best["sy"] >= 0 else None,
        stable_opt_n_schedule=Schedule(best["sn_order"]) if best["sn"] >= 0 else None,
    )


# ---------------------------------------------------------------------------
# Guarantee auditing.

@dataclass(frozen=True)
class AuditRow:
    claim: str
    required: str
    observed: str
    passed: bool


@dataclass(frozen=True)
class AuditReport:
    rows: tuple[AuditRow, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["claim", "required", "observed", "passed"])
        for r in self.rows:
            writer.writerow([r.claim, r.required, r.observed, str(r.passed).lower()])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for r in self.rows:
            lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.claim}: need {r.required}, got {r.observed}")
        return "\n".join(lines) + "\n"


def audit(graph: Graph, oracle_limit: int = 9, alpha_limit: int = 60) -> AuditReport:
    """Run all four schedulers and check every advertised guarantee.

    Failures become report rows rather than exceptions.  Exhaustive optima
    are consulted only when the graph is small enough, exact independence
    numbers only below the solver bound.
    """
    n = graph.n
    rows: list[AuditRow] = []

    sy = schedule_y(graph)
    sy_count = simulate(graph, sy).count_y
    rows.append(AuditRow("half_y_bound", f"2*count_y >= {n}", f"count_y={sy_count}", 2 * sy_count >= n))

    sn = schedule_n(graph)
    sn_count = simulate(graph, sn).count_n
    rows.append(AuditRow("third_n_bound", f"3*count_n >= {n}", f"count_n={sn_count}", 3 * sn_count >= n))

    eq_y = equilibrium.equilibrium_schedule_y(graph)
    eq_y_count = simulate(graph, eq_y).count_y
    eq_y_stable, _ = is_regret_proof(graph, eq_y)
    rows.append(AuditRow("equilibrium_y_regret_proof", "stable cut", f"stable={eq_y_stable}", eq_y_stable))
    rows.append(
        AuditRow("equilibrium_y_bound", f"2*count_y >= {n}", f"count_y={eq_y_count}", 2 * eq_y_count >= n)
    )

    eq_n = equilibrium.equilibrium_schedule_n(graph)
    eq_n_count = simulate(graph, eq_n).count_n
    eq_n_stable, _ = is_regret_proof(graph, eq_n)
    alpha: int | None = None
    if n <= alpha_limit:
        _, alpha = exact_max_independent_set(graph, max_nodes=alpha_limit)
    required = equilibrium.n_count_requirement(n, alpha)
    rows.append(AuditRow("equilibrium_n_regret_proof", "stable cut", f"stable={eq_n_stable}", eq_n_stable))
    rows.append(
        AuditRow(
            "equilibrium_n_bound",
            f"count_n >= {required}" + ("" if alpha is not None else " (sqrt term only)"),
            f"count_n={eq_n_count}",
            eq_n_count >= required,
        )
    )

    if n <= oracle_limit:
        result = brute_force(graph)
        rows.append(
            AuditRow("oracle_dominance_y", f"count_y <= {result.opt_y}", f"count_y={sy_count}", sy_count <= result.opt_y)
        )
        rows.append(
            AuditRow("oracle_dominance_n", f"count_n <= {result.opt_n}", f"count_n={sn_count}", sn_count <= result.opt_n)
        )
        rows.append(
            AuditRow(
                "oracle_dominance_equilibrium_y",
                f"count_y <= {result.opt_y}",
                f"count_y={eq_y_count}",
                eq_y_count <= result.opt_y,
            )
        )
        rows.append(
            AuditRow(
                "oracle_dominance_equilibrium_n",
                f"count_n <= {result.opt_n}",
                f"count_n={eq_n_count}",
                eq_n_count <= result.opt_n,
            )
        )
        rows.append(
            AuditRow(
                "regret_proof_exists",
                "some schedule has a stable outcome",
                f"exists={result.regret_proof_exists}",
                result.regret_proof_exists,
            )
        )
    return AuditReport(rows=tuple(rows))


__all__ = [
    "AuditReport",
    "AuditRow",
    "OracleResult",
    "audit",
    "brute_force",
    "replay",
]
