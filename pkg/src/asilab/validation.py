"""Input checks shared by the estimators and the CLI."""
from __future__ import annotations

from .exceptions import InvalidWitness, MalformedInput, ScaleTooSmall
from .graph import LazyGraph, StructuredMultigraph, from_networkx


def check_graph(G, allow_lazy: bool = True, max_multiplicity: int | None = None):
    """Return ``G`` as a StructuredMultigraph or LazyGraph, converting networkx graphs."""
    if isinstance(G, StructuredMultigraph):
        pass
    elif isinstance(G, LazyGraph):
        if not allow_lazy:
            raise MalformedInput("this operation needs a finite graph")
        return G
    elif hasattr(G, "nodes") and hasattr(G, "edges"):
        G = from_networkx(G)
    else:
        raise MalformedInput(f"expected a graph, got {type(G).__name__}")
    if max_multiplicity is not None and G.max_multiplicity > max_multiplicity:
        raise MalformedInput(f"edge multiplicity {G.max_multiplicity} exceeds p={max_multiplicity}")
    return G


def check_witness(G, W, min_scale: int = 1, validate: bool = True):
    """Check a witness against ``G``: right type, large enough scale, valid on finite graphs."""
    from .witness import AsiWitness, LazyParityWitness, validate_witness

    if not isinstance(W, (AsiWitness, LazyParityWitness)):
        raise InvalidWitness(f"expected a witness, got {type(W).__name__}")
    if W.scale < min_scale:
        raise ScaleTooSmall(f"witness scale {W.scale} is below the required {min_scale}")
    if validate and G.is_finite:
        validate_witness(G, W)
    return W


def check_positive(name: str, value, minimum: int = 1) -> int:
    if value is None or int(value) != value or value < minimum:
        raise MalformedInput(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)
