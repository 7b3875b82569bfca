"""Hyperedge colourings and per-colour triangle / cherry statistics."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Any, Sequence

from .errors import BadColourFile
from .hypergraph import LinearRGraph, UnderlyingGraph

STRATEGIES = ("uniform_random", "round_robin", "by_file")


@dataclass(frozen=True)
class Colouring:
    c: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("number of colours must be >= 1")
        bad = [x for x in self.assignment if not 0 <= x < self.c]
        if bad:
            raise BadColourFile(f"colour index {bad[0]} outside [0, {self.c})")

    def __len__(self) -> int:
        return len(self.assignment)

    def class_edges(self, colour: int) -> list[int]:
        return [e for e, x in enumerate(self.assignment) if x == colour]

    def class_graph(self, g: LinearRGraph, colour: int) -> LinearRGraph:
        """The colour class as its own linear r-graph (parent ids retained)."""
        return g.sub(self.class_edges(colour))


def colour(
    g: LinearRGraph,
    c: int,
    strategy: str = "uniform_random",
    seed: int = 0,
    path: str | Path | None = None,
) -> Colouring:
    if c < 1:
        raise ValueError("number of colours must be >= 1")
    if strategy == "uniform_random":
        rng = random.Random(seed)
        return Colouring(c, tuple(rng.randrange(c) for _ in range(g.m)))
    if strategy == "round_robin":
        return Colouring(c, tuple(e % c for e in range(g.m)))
    if strategy == "by_file":
        if path is None:
            raise ValueError("strategy 'by_file' needs a colour file path")
        col = read_colour_file(path, g.m)
        if col.c > c:
            raise BadColourFile(f"colour file uses {col.c} colours, only {c} allowed")
        return Colouring(c, col.assignment)
    raise ValueError(f"unknown colouring strategy {strategy!r}")


def parse_colour_file(text: str, m: int | None = None, c: int | None = None) -> Colouring:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.strip()
        if not tok:
            continue
        try:
            values.append(int(tok))
        except ValueError:
            raise BadColourFile(f"line {lineno}: expected one integer, got {line!r}") from None
    if m is not None and len(values) != m:
        raise BadColourFile(f"colour file has {len(values)} entries, graph has {m} edges")
    if any(v < 0 for v in values):
        raise BadColourFile("negative colour index")
    ncol = c if c is not None else (max(values) + 1 if values else 1)
    return Colouring(ncol, tuple(values))


def read_colour_file(path: str | Path, m: int | None = None, c: int | None = None) -> Colouring:
    return parse_colour_file(Path(path).read_text(), m, c)


def format_colour_file(col: Colouring) -> str:
    return "".join(f"{x}\n" for x in col.assignment)


@dataclass(frozen=True)
class ColourClassStats:
    colour: int
    T: int
    S: int
    degrees: tuple[int, ...]
    edge_count: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.T, self.S) if self.S else Fraction(0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "colour": self.colour,
            "T": self.T,
            "S": self.S,
            "ratio": float(self.ratio),
            "ratio_exact": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "hyperedges": self.edge_count,
        }


def underlying_of_class(g: LinearRGraph, col: Colouring, c_index: int) -> UnderlyingGraph:
    pairs = []
    for e in col.class_edges(c_index):
        edge = g.edges[e]
        pairs.extend((edge[a], edge[b]) for a in range(len(edge)) for b in range(a + 1, len(edge)))
    return UnderlyingGraph.from_pairs(g.n, pairs)


def class_stats(g: LinearRGraph, col: Colouring, c_index: int) -> ColourClassStats:
    if not 0 <= c_index < col.c:
        raise ValueError(f"colour {c_index} outside [0, {col.c})")
    if len(col) != g.m:
        raise BadColourFile(f"colouring has {len(col)} entries, graph has {g.m} edges")
    ug = underlying_of_class(g, col, c_index)
    return ColourClassStats(
        colour=c_index,
        T=ug.triangle_count(),
        S=ug.cherry_count(),
        degrees=tuple(ug.degree),
        edge_count=len(col.class_edges(c_index)),
    )


@dataclass(frozen=True)
class Selection:
    colour: int
    stats: ColourClassStats
    classes: tuple[ColourClassStats, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"selected": self.colour, "classes": [s.to_dict() for s in self.classes]}


def select_class(g: LinearRGraph, col: Colouring) -> Selection:
    """Pick the class with the largest T/S ratio (ties: larger S, then lower index)."""
    classes = tuple(class_stats(g, col, i) for i in range(col.c))
    best = max(classes, key=lambda s: (s.ratio, s.S, -s.colour))
    return Selection(best.colour, best, classes)


def goodman_check(n: int, a: ColourClassStats, b: ColourClassStats, eps: float) -> bool:
    """Approximate Goodman bound: T_A + T_B >= (1/4 - eps) C(n, 3)."""
    return Fraction(a.T + b.T) >= (Fraction(1, 4) - Fraction(eps)) * comb(n, 3)


def goodman_identity_holds(n: int, a: ColourClassStats, b: ColourClassStats) -> bool:
    """Exact cherry identity S_A + S_B = C(n,3) + 2 T_A + 2 T_B for a 2-colouring of K_n."""
    return a.S + b.S == comb(n, 3) + 2 * a.T + 2 * b.T


def stats_report(g: LinearRGraph, col: Colouring) -> dict[str, Any]:
    sel = select_class(g, col)
    return {"n": g.n, "c": col.c, **sel.to_dict()}


def coerce_colouring(g: LinearRGraph, col: Colouring | Sequence[int] | None) -> Colouring:
    if col is None:
        return Colouring(1, (0,) * g.m)
    if isinstance(col, Colouring):
        return col
    vals = tuple(col)
    return Colouring(max(vals) + 1 if vals else 1, vals)
