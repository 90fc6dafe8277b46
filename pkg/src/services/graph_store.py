"""
Edge-list file service: one edge per line, `u v [w]`, `#` starts a comment line
"""
from fractions import Fraction
from pathlib import Path
from typing import Dict, Union

from src.core.graphs import WeightedGraph, canonical_edge
from src.errors.graph_errors import DuplicateEdgeError, GraphParseError, SelfLoopError
from src.services.report_writer import write_text
from src.utils.formatters import format_rational, parse_rational
from src.utils.logger import get_logger

logger = get_logger("hdx.graph_store")


def load_graph(path: Union[str, Path]) -> WeightedGraph:
    """
    Load a weighted graph from an edge-list file

    Vertex ids must cover 0..n-1; n is one more than the largest id.

    Args:
        path: Edge-list file

    Returns:
        Connected graph

    Raises:
        GraphParseError: Malformed line (carries the line number)
        SelfLoopError, DuplicateEdgeError, DisconnectedGraphError
    """
    path = Path(path)
    edges: Dict = {}
    largest = -1

    with open(path, 'r', encoding='utf-8') as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue

            parts = line.split()
            if len(parts) not in (2, 3):
                raise GraphParseError(line_number, f"expected 'u v [w]', got {line!r}")

            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(line_number, f"vertex ids must be integers, got {line!r}")
            if u < 0 or v < 0:
                raise GraphParseError(line_number, "vertex ids must be non-negative")
            if u == v:
                raise SelfLoopError(u, line_number)

            weight = Fraction(1)
            if len(parts) == 3:
                try:
                    weight = parse_rational(parts[2])
                except (ValueError, ZeroDivisionError):
                    raise GraphParseError(line_number, f"bad weight {parts[2]!r}")
                if weight <= 0:
                    raise GraphParseError(line_number, f"weight must be positive, got {parts[2]!r}")

            key = canonical_edge(u, v)
            if key in edges:
                raise DuplicateEdgeError(key, line_number)
            edges[key] = weight
            largest = max(largest, u, v)

    if not edges:
        raise GraphParseError(0, "no edges found")

    graph = WeightedGraph.from_edges(largest + 1, ((u, v, w) for (u, v), w in edges.items()))
    logger.info(f"Loaded graph from {path}: n={graph.n}, |E|={len(graph.edges)}")
    return graph


def graph_to_text(graph: WeightedGraph) -> str:
    """Edge-list text; unit weights are omitted."""
    lines = []
    for (u, v), w in sorted(graph.edges.items()):
        lines.append(f"{u} {v}" if w == 1 else f"{u} {v} {format_rational(w)}")
    return "\n".join(lines) + "\n"


def save_graph(graph: WeightedGraph, path: Union[str, Path]) -> Path:
    """
    Write a graph as an edge list (atomic)

    Args:
        graph: Graph to write
        path: Target file

    Returns:
        The written path
    """
    return write_text(graph_to_text(graph), path)
