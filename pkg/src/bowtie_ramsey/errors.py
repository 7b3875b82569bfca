"""Exception hierarchy shared by all modules."""

from __future__ import annotations

from typing import Any


class BowtieRamseyError(Exception):
    """Base class for every error raised by this package."""


class InvalidHypergraph(BowtieRamseyError, ValueError):
    pass


class NonUniformEdge(InvalidHypergraph):
    def __init__(self, index: int, edge: Any, r: int):
        self.index = index
        self.edge = edge
        super().__init__(f"edge {index} {tuple(edge)!r} does not have {r} distinct vertices")


class LinearityViolation(InvalidHypergraph):
    def __init__(self, pair: tuple[int, int], first: int, second: int):
        self.pair = pair
        self.edges = (first, second)
        super().__init__(f"edges {first} and {second} share the pair {pair}")


class LhgFormatError(InvalidHypergraph):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnsupportedOrder(BowtieRamseyError, ValueError):
    pass


class BadColourFile(BowtieRamseyError, ValueError):
    pass


class IdentityViolation(BowtieRamseyError, AssertionError):
    """A structural identity that must hold for every linear r-graph failed."""

    def __init__(self, which: str, vertex: int | None = None, detail: str = ""):
        self.which = which
        self.vertex = vertex
        where = f" at vertex {vertex}" if vertex is not None else ""
        super().__init__(f"{which} violated{where}{': ' + detail if detail else ''}")


class NotATriangle(BowtieRamseyError, ValueError):
    pass


class InsufficientAnchors(BowtieRamseyError):
    def __init__(self, found: int, required: int):
        self.found = found
        self.required = required
        super().__init__(f"only {found} partner(s) in distinct dense components, {required} required")


class NoLongPath(BowtieRamseyError):
    def __init__(self, longest_found: int, needed: int):
        self.longest_found = longest_found
        self.needed = needed
        super().__init__(f"longest path found has {longest_found} bowties; walk did not reach {needed} edges")


class Stuck(BowtieRamseyError):
    reason = "stuck"

    def __init__(self, state: Any, detail: str = ""):
        self.state = state
        super().__init__(f"{self.reason} at i={getattr(state, 'i', '?')}{': ' + detail if detail else ''}")


class StuckNoPartner(Stuck):
    reason = "no clean partner left"


class StuckNoBoundary(Stuck):
    reason = "no boundary bowtie in component"


class InvariantBroken(BowtieRamseyError, AssertionError):
    def __init__(self, which: str, state: Any = None, detail: str = ""):
        self.which = which
        self.state = state
        super().__init__(f"invariant {which} broken{': ' + detail if detail else ''}")


class CrucialViolation(BowtieRamseyError, AssertionError):
    def __init__(self, detail: str, report: Any = None):
        self.report = report
        super().__init__(detail)


class BudgetExceeded(BowtieRamseyError):
    def __init__(self, examined: int):
        self.examined = examined
        super().__init__(f"search budget exceeded after {examined} partial subsets")
