"""Exhaustive (v, k)-configuration search and independent output verification.

Deliberately simple: subsets are grown in increasing edge-id order and a
branch is abandoned as soon as its vertex span exceeds ``v``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .colouring import Colouring
from .errors import BudgetExceeded
from .hypergraph import LinearRGraph

MODES = ("count", "find_one", "enumerate_all")
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class OracleQuery:
    v: int
    k: int
    colour: int | None = None
    mode: str = "count"
    budget: int = DEFAULT_BUDGET

    def validate(self, r: int) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.v < r:
            raise ValueError(f"v must be >= r = {r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class OracleResult:
    count: int
    witness: tuple[int, ...] | None
    witnesses: list[tuple[int, ...]] | None
    examined: int

    def to_dict(self, mode: str) -> dict[str, Any]:
        out: dict[str, Any] = {"examined": self.examined}
        if mode == "count":
            out["count"] = self.count
        elif mode == "find_one":
            out["witness"] = list(self.witness) if self.witness is not None else None
        else:
            out["count"] = self.count
            out["witnesses"] = [list(w) for w in self.witnesses or []]
        return out


def _search(
    edges: Sequence[tuple[int, ...]],
    pool: Sequence[int],
    n: int,
    k: int,
    v: int,
    mode: str,
    budget: int,
    first: int | None = None,
) -> OracleResult:
    """Depth-first search over ``pool``; with ``first`` set, only subsets
    whose smallest pool index is ``first`` are visited."""
    mult = [0] * n
    chosen: list[int] = []
    found: list[tuple[int, ...]] = []
    count = 0
    examined = 0
    stop = False

    def extend(start: int, cur_span: int) -> None:
        nonlocal count, examined, stop
        need = k - len(chosen)
        stop_at = len(pool) - need + 1
        if not chosen and first is not None:
            start, stop_at = first, min(first + 1, stop_at)
        for idx in range(start, stop_at):
            examined += 1
            if examined > budget:
                raise BudgetExceeded(examined - 1)
            edge = edges[idx]
            added = 0
            for x in edge:
                if mult[x] == 0:
                    added += 1
                mult[x] += 1
            new_span = cur_span + added
            if new_span <= v:
                chosen.append(pool[idx])
                if need == 1:
                    count += 1
                    if mode != "count":
                        found.append(tuple(chosen))
                        if mode == "find_one":
                            stop = True
                else:
                    extend(idx + 1, new_span)
                chosen.pop()
            for x in edge:
                mult[x] -= 1
            if stop:
                return

    extend(0, 0)
    return OracleResult(
        count=count,
        witness=found[0] if found else None,
        witnesses=found if mode == "enumerate_all" else None,
        examined=examined,
    )


def _search_task(args: tuple) -> OracleResult | int:
    try:
        return _search(*args)
    except BudgetExceeded as exc:
        return -exc.examined - 1


def oracle_search(
    g: LinearRGraph, colouring: Colouring | None, q: OracleQuery, workers: int = 1
) -> OracleResult:
    """Exact search for (v, k)-configurations.

    With ``workers > 1`` the search space is split by first edge and the
    parts run in a process pool; parts are merged in edge order, so counts,
    witnesses and their order match the serial run.  The budget then caps
    the summed work of all parts.
    """
    q.validate(g.r)
    if q.colour is not None:
        if colouring is None:
            raise ValueError("a colour restriction needs a colouring")
        pool = [e for e in range(g.m) if colouring.assignment[e] == q.colour]
    else:
        pool = list(range(g.m))
    edges = [g.edges[e] for e in pool]
    if workers <= 1 or len(pool) < 2:
        return _search(edges, pool, g.n, q.k, q.v, q.mode, q.budget)

    firsts = range(max(0, len(pool) - q.k + 1))
    tasks = [(edges, pool, g.n, q.k, q.v, q.mode, q.budget, f) for f in firsts]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_search_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    total = OracleResult(0, None, [] if q.mode == "enumerate_all" else None, 0)
    for part in parts:
        if q.mode == "find_one" and total.witness is not None:
            break
        if isinstance(part, int):
            raise BudgetExceeded(q.budget)
        total.examined += part.examined
        if total.examined > q.budget:
            raise BudgetExceeded(q.budget)
        total.count += part.count
        if part.witness is not None and total.witness is None:
            total.witness = part.witness
        if q.mode == "enumerate_all":
            total.witnesses.extend(part.witnesses or [])  # type: ignore[union-attr]
    return total


@dataclass
class VerificationReport:
    passed: bool
    k: int
    v: int
    size: int
    span: int
    colours: list[int] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "k": self.k,
            "v": self.v,
            "size": self.size,
            "span": self.span,
            "colours": self.colours,
            "failures": self.failures,
        }


def verify_configuration(
    g: LinearRGraph,
    colouring: Colouring | Sequence[int] | None,
    edge_ids: Iterable[int],
    v: int,
    k: int,
) -> VerificationReport:
    ids = list(edge_ids)
    failures = []
    bad = [e for e in ids if not 0 <= e < g.m]
    if bad:
        failures.append(f"edge ids out of range: {bad}")
        ids = [e for e in ids if 0 <= e < g.m]
    if len(set(ids)) != len(ids):
        failures.append("duplicate edge ids")
    distinct = set(ids)
    if len(distinct) != k:
        failures.append(f"size: {len(distinct)} edges, expected {k}")
    covered: set[int] = set()
    for e in distinct:
        covered.update(g.edges[e])
    if len(covered) > v:
        failures.append(f"span: {len(covered)} > {v}")
    colours: list[int] = []
    if colouring is not None:
        assign = colouring.assignment if isinstance(colouring, Colouring) else tuple(colouring)
        colours = sorted({assign[e] for e in distinct})
        if len(colours) > 1:
            failures.append(f"monochromatic: edges carry colours {colours}")
    return VerificationReport(not failures, k, v, len(distinct), len(covered), colours, failures)
