from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from app.models.graph import Graph


class LexdomError(Exception):
    """Base error for the toolkit"""
    pass


class GraphValidationError(LexdomError, ValueError):
    """Malformed graph, graph6 line or family parameters"""
    pass


class CapExceededError(LexdomError):
    """A size cap was exceeded"""
    pass


class InfeasibleError(LexdomError):
    """Invariant undefined for the given graph"""

    def __init__(self, kind: str, precondition: str):
        self.kind = kind
        self.precondition = precondition
        super().__init__(f"INFEASIBLE: {kind} requires {precondition}")


class PremiseError(LexdomError):
    """A formula, bound or construction premise does not hold"""
    pass


def validate_vertex(graph: "Graph", v: int, what: str = "vertex") -> int:
    """Check that v is a vertex label of graph"""
    if not isinstance(v, int) or v < 0 or v >= graph.n:
        raise GraphValidationError(f"{what} {v!r} out of range 0..{graph.n - 1}")
    return v
