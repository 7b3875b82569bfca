"""Complete linear r-graphs (Steiner systems, planes) and random linear r-graphs."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any

from .errors import UnsupportedOrder
from .hypergraph import LinearRGraph, is_complete, pair_key

log = logging.getLogger(__name__)

KINDS = ("fano", "bose", "skolem", "affine", "projective", "random")


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def fano() -> LinearRGraph:
    return LinearRGraph(3, 7, FANO_LINES)


def bose_sts(n: int) -> LinearRGraph:
    """Bose construction of an STS(n) for n = 6t + 3.

    Point ``(x, i)`` of Z_{2t+1} x {0,1,2} gets id ``x + (2t+1) i``.  Uses the
    idempotent commutative quasigroup ``x o y = (x + y)(t + 1) mod 2t+1``.
    """
    if n < 3 or n % 6 != 3:
        raise UnsupportedOrder(f"Bose construction needs n = 3 (mod 6), got {n}")
    order = n // 3
    half = (order + 1) // 2  # inverse of 2 mod order

    def pt(x: int, i: int) -> int:
        return x + order * i

    blocks = [[pt(x, 0), pt(x, 1), pt(x, 2)] for x in range(order)]
    for i in range(3):
        for x, y in combinations(range(order), 2):
            z = ((x + y) * half) % order
            blocks.append([pt(x, i), pt(y, i), pt(z, (i + 1) % 3)])
    return LinearRGraph(3, n, blocks)


def skolem_sts(n: int) -> LinearRGraph:
    """Skolem construction of an STS(n) for n = 6t + 1.

    Uses the half-idempotent commutative quasigroup of order 2t given by
    ``x o y = floor(s / 2) + t (s mod 2)`` with ``s = (x + y) mod 2t``.
    The point at infinity has id ``n - 1``.
    """
    if n < 7 or n % 6 != 1:
        raise UnsupportedOrder(f"Skolem construction needs n = 1 (mod 6), n >= 7, got {n}")
    t = (n - 1) // 6
    order = 2 * t
    inf = n - 1

    def pt(x: int, i: int) -> int:
        return x + order * i

    def op(x: int, y: int) -> int:
        s = (x + y) % order
        return s // 2 + t * (s % 2)

    blocks = [[pt(x, 0), pt(x, 1), pt(x, 2)] for x in range(t)]
    for x in range(t):
        for i in range(3):
            blocks.append([inf, pt(x + t, i), pt(x, (i + 1) % 3)])
    for i in range(3):
        for x, y in combinations(range(order), 2):
            blocks.append([pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)])
    return LinearRGraph(3, n, blocks)


def affine_plane(q: int) -> LinearRGraph:
    """AG(2, q) for prime q: n = q^2 points ``x*q + y``, q^2 + q lines of size q."""
    if not _is_prime(q):
        raise UnsupportedOrder(f"affine plane order must be prime here, got {q}")
    lines = []
    for slope, icpt in product(range(q), repeat=2):
        lines.append([x * q + (slope * x + icpt) % q for x in range(q)])
    for c in range(q):
        lines.append([c * q + y for y in range(q)])
    return LinearRGraph(q, q * q, lines)


def _normalized_points(q: int) -> list[tuple[int, int, int]]:
    # first non-zero coordinate equal to 1
    pts = []
    for v in product(range(q), repeat=3):
        nz = next((c for c in v if c), 0)
        if nz == 1:
            pts.append(v)
    return pts


def projective_plane(q: int) -> LinearRGraph:
    """PG(2, q) for prime q: q^2 + q + 1 points and lines, each line has q + 1 points."""
    if not _is_prime(q):
        raise UnsupportedOrder(f"projective plane order must be prime here, got {q}")
    pts = _normalized_points(q)
    lines = []
    for a in pts:
        lines.append([i for i, p in enumerate(pts) if (a[0] * p[0] + a[1] * p[1] + a[2] * p[2]) % q == 0])
    return LinearRGraph(q + 1, len(pts), lines)


def random_partial(r: int, n: int, target_edges: int, seed: int) -> tuple[LinearRGraph, bool]:
    """Greedy seeded insertion of random r-sets that keep the graph linear.

    Returns ``(graph, stalled)``; ``stalled`` is True when 50 * target_edges
    consecutive samples were rejected before the target was reached.
    """
    if target_edges < 0:
        raise ValueError("target_edges must be >= 0")
    if r < 2 or r > n:
        raise UnsupportedOrder(f"cannot place {r}-sets on {n} vertices")
    rng = random.Random(seed)
    covered: set[tuple[int, int]] = set()
    edges: list[list[int]] = []
    limit = 50 * target_edges
    rejected = 0
    while len(edges) < target_edges:
        cand = sorted(rng.sample(range(n), r))
        pairs = [pair_key(u, v) for u, v in combinations(cand, 2)]
        if any(p in covered for p in pairs):
            rejected += 1
            if rejected >= limit:
                return LinearRGraph(r, n, edges), True
            continue
        rejected = 0
        covered.update(pairs)
        edges.append(cand)
    return LinearRGraph(r, n, edges), False


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int | None = None
    q: int | None = None
    r: int | None = None
    edges: int | None = None
    seed: int = 0

    def to_dict(self) -> dict[str, Any]:
        d = {"kind": self.kind}
        for key in ("n", "q", "r", "edges"):
            val = getattr(self, key)
            if val is not None:
                d[key] = val
        if self.kind == "random":
            d["seed"] = self.seed
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> GeneratorSpec:
        return cls(
            kind=d["kind"],
            n=d.get("n"),
            q=d.get("q"),
            r=d.get("r"),
            edges=d.get("edges"),
            seed=d.get("seed", 0),
        )


def generate(spec: GeneratorSpec) -> LinearRGraph:
    kind = spec.kind
    if kind == "fano":
        return fano()
    if kind in ("bose", "bose_sts"):
        return bose_sts(_need(spec.n, "n", kind))
    if kind in ("skolem", "skolem_sts"):
        return skolem_sts(_need(spec.n, "n", kind))
    if kind in ("affine", "affine_plane"):
        return affine_plane(_need(spec.q, "q", kind))
    if kind in ("projective", "projective_plane"):
        return projective_plane(_need(spec.q, "q", kind))
    if kind in ("random", "random_partial"):
        g, stalled = random_partial(
            _need(spec.r, "r", kind), _need(spec.n, "n", kind), _need(spec.edges, "edges", kind), spec.seed
        )
        if stalled:
            log.warning("random_partial stalled at %d of %d edges", g.m, spec.edges)
        return g
    raise ValueError(f"unknown generator kind {kind!r}")


def _need(value: int | None, name: str, kind: str) -> int:
    if value is None:
        raise ValueError(f"generator {kind!r} requires {name}")
    return value


@dataclass
class CompletenessReport:
    complete: bool
    uncovered: list[tuple[int, int]]
    m: int
    expected_m: int | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "complete": self.complete,
            "uncovered_count": len(self.uncovered),
            "uncovered": [list(p) for p in self.uncovered],
            "m": self.m,
            "expected_m": self.expected_m,
        }


def validate_complete(g: LinearRGraph) -> CompletenessReport:
    uncovered = [(u, v) for u, v in combinations(range(g.n), 2) if (u, v) not in g.pair_index]
    expected = None
    if not uncovered:
        num, den = g.n * (g.n - 1), g.r * (g.r - 1)
        expected = num // den
        if num % den or expected != g.m:
            raise AssertionError(f"complete graph with m={g.m} but n(n-1)/(r(r-1)) = {num}/{den}")
    complete = not uncovered
    assert complete == is_complete(g)
    return CompletenessReport(complete, uncovered, g.m, expected)
