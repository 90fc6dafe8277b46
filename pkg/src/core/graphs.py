"""
Weighted graphs: representation, deterministic generators and random-walk spectra
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Hashable, Iterable, Mapping, Optional, Tuple

import networkx as nx
import numpy as np
import scipy.linalg

from config.settings import EIGEN_TOLERANCE, RANDOM_REGULAR_RETRIES
from src.errors.graph_errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    GraphError,
    InfeasibleGraphError,
    SelfLoopError,
)
from src.errors.spectrum_errors import EigenSolverError
from src.utils.logger import get_logger

logger = get_logger("hdx.graphs")

Edge = Tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """
    Undirected graph on vertices 0..n-1 with positive rational edge weights.

    Edges are keyed by (u, v) with u < v. `labels` optionally names the vertices
    (link skeletons carry their complex vertices here).
    """
    n: int
    edges: Mapping[Edge, Fraction]
    labels: Optional[Tuple[Hashable, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        for (u, v), w in self.edges.items():
            if u == v:
                raise SelfLoopError(u)
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u}, {v}) is not canonical or out of range for n={self.n}")
            if w <= 0:
                raise GraphError(f"edge ({u}, {v}) has non-positive weight {w}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError(f"{len(self.labels)} labels for {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int, Any]],
                   labels: Optional[Tuple[Hashable, ...]] = None,
                   require_connected: bool = True) -> "WeightedGraph":
        """
        Build a graph from (u, v, w) triples

        Args:
            n: Vertex count
            edges: Triples; w may be anything Fraction accepts
            labels: Optional vertex labels
            require_connected: Raise DisconnectedGraphError for disconnected input

        Returns:
            Validated graph
        """
        table: Dict[Edge, Fraction] = {}
        for u, v, w in edges:
            if u == v:
                raise SelfLoopError(u)
            key = canonical_edge(u, v)
            if key in table:
                raise DuplicateEdgeError(key)
            table[key] = Fraction(w)

        graph = cls(n=n, edges=table, labels=labels)
        if require_connected:
            graph.require_connected()
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "WeightedGraph":
        """Convert a networkx graph; nodes are relabelled 0..n-1 in sorted order."""
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        triples = [
            (index[a], index[b], data.get("weight", 1))
            for a, b, data in graph.edges(data=True)
        ]
        return cls.from_edges(len(nodes), triples)

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        neighbors: Dict[int, list] = {u: [] for u in range(self.n)}
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return {u: tuple(sorted(vs)) for u, vs in neighbors.items()}

    def neighbors(self, u: int) -> Tuple[int, ...]:
        return self.adjacency[u]

    def weight(self, u: int, v: int) -> Fraction:
        return self.edges[canonical_edge(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and canonical_edge(u, v) in self.edges

    def degree(self, u: int) -> Fraction:
        """Weighted degree of u."""
        return sum((self.weight(u, v) for v in self.adjacency[u]), Fraction(0))

    def degree_stats(self) -> Dict[str, Any]:
        """
        Degree statistics (the mixing-time remark assumes a bounded max/min degree ratio)

        Returns:
            Min/max combinatorial and weighted degrees and the weighted ratio
        """
        counts = [len(self.adjacency[u]) for u in range(self.n)]
        weighted = [self.degree(u) for u in range(self.n)]
        low = min(weighted)
        return {
            'min_degree': min(counts),
            'max_degree': max(counts),
            'min_weighted_degree': low,
            'max_weighted_degree': max(weighted),
            'weighted_degree_ratio': max(weighted) / low if low else None,
        }

    @property
    def is_unit_weighted(self) -> bool:
        return all(w == 1 for w in self.edges.values())

    def scaled(self, factor) -> "WeightedGraph":
        """Copy with every edge weight multiplied by a positive constant."""
        factor = Fraction(factor)
        if factor <= 0:
            raise GraphError(f"scale factor must be positive, got {factor}")
        return WeightedGraph(self.n, {e: w * factor for e, w in self.edges.items()}, self.labels)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for (u, v), w in self.edges.items():
            graph.add_edge(u, v, weight=w)
        return graph

    def component_count(self) -> int:
        return nx.number_connected_components(self.to_networkx())

    def require_connected(self) -> None:
        components = self.component_count()
        if components != 1:
            raise DisconnectedGraphError(components)

    def adjacency_matrix(self) -> np.ndarray:
        """Symmetric float adjacency matrix M_G."""
        matrix = np.zeros((self.n, self.n))
        for (u, v), w in self.edges.items():
            matrix[u, v] = matrix[v, u] = float(w)
        return matrix

    def label(self, u: int) -> Hashable:
        return self.labels[u] if self.labels is not None else u


@dataclass(frozen=True)
class GraphSpectrum:
    """Descending eigenvalues of W_G and the spectral gap 1 - omega_2."""
    eigenvalues: np.ndarray
    gap: float
    residual: float

    @property
    def omega2(self) -> float:
        return float(self.eigenvalues[1])

    @property
    def omega_min(self) -> float:
        return float(self.eigenvalues[-1])


def random_walk_matrix(g: WeightedGraph) -> np.ndarray:
    """W_G = M_G D_G^{-1}; columns sum to one."""
    matrix = g.adjacency_matrix()
    degrees = matrix.sum(axis=0)
    if np.any(degrees == 0):
        raise GraphError("random walk undefined: graph has an isolated vertex")
    return matrix / degrees[np.newaxis, :]


def lazy_walk_matrix(g: WeightedGraph) -> np.ndarray:
    """The lazy walk (I + W_G) / 2."""
    return 0.5 * (np.eye(g.n) + random_walk_matrix(g))


def symmetric_walk_matrix(g: WeightedGraph) -> np.ndarray:
    """D^{-1/2} M D^{-1/2}, similar to W_G."""
    matrix = g.adjacency_matrix()
    degrees = matrix.sum(axis=0)
    if np.any(degrees == 0):
        raise GraphError("random walk undefined: graph has an isolated vertex")
    scale = 1.0 / np.sqrt(degrees)
    return matrix * scale[:, np.newaxis] * scale[np.newaxis, :]


def graph_spectrum(g: WeightedGraph, tolerance: float = None) -> GraphSpectrum:
    """
    Spectrum of the random-walk matrix W_G

    The symmetric conjugate D^{-1/2} M D^{-1/2} is diagonalized with a dense
    symmetric solver; the spectrum is identical to that of W_G.

    Args:
        g: Graph without isolated vertices
        tolerance: Allowed deviation of omega_1 from 1

    Returns:
        Descending eigenvalues, gap and the eigen-residual

    Raises:
        EigenSolverError: If the solver fails or the spectrum is out of range
    """
    if tolerance is None:
        tolerance = EIGEN_TOLERANCE

    sym = symmetric_walk_matrix(g)
    try:
        values, vectors = scipy.linalg.eigh(sym)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(f"symmetric eigensolve failed: {e}") from e

    residual = float(np.max(np.abs(sym @ vectors - vectors * values))) if g.n else 0.0
    values = values[::-1].copy()

    if abs(values[0] - 1.0) > tolerance or np.any(np.abs(values) > 1.0 + tolerance):
        raise EigenSolverError(
            f"walk spectrum out of range: omega_1={values[0]!r}, extremes={values[[0, -1]]!r}",
            residual=residual,
        )

    gap = float(1.0 - values[1]) if g.n > 1 else 0.0
    if g.n > 1 and gap > 1.0 + 1.0 / (g.n - 1) + tolerance:
        raise EigenSolverError(f"gap {gap!r} exceeds 1 + 1/(n-1)", residual=residual)

    return GraphSpectrum(eigenvalues=values, gap=gap, residual=residual)


def gen_graph(kind: str, n: int, d: Optional[int] = None, seed: Optional[int] = None) -> WeightedGraph:
    """
    Generate a unit-weight connected graph

    Args:
        kind: 'cycle', 'complete' or 'random_regular'
        n: Vertex count
        d: Degree (random_regular only)
        seed: Fixes the random_regular output

    Returns:
        Generated graph

    Raises:
        InfeasibleGraphError: If no connected simple graph matches the parameters
    """
    if kind == "cycle":
        if n < 3:
            raise InfeasibleGraphError(f"a cycle needs n >= 3, got n={n}")
        return WeightedGraph.from_networkx(nx.cycle_graph(n))

    if kind == "complete":
        if n < 2:
            raise InfeasibleGraphError(f"a complete graph needs n >= 2, got n={n}")
        return WeightedGraph.from_networkx(nx.complete_graph(n))

    if kind == "random_regular":
        return _random_regular(n, d, seed)

    raise InfeasibleGraphError(f"unknown graph kind {kind!r}")


def _random_regular(n: int, d: Optional[int], seed: Optional[int]) -> WeightedGraph:
    if d is None:
        raise InfeasibleGraphError("random_regular needs a degree d")
    if n < 3:
        raise InfeasibleGraphError(f"random_regular needs n >= 3, got n={n}")
    if not 2 <= d < n:
        raise InfeasibleGraphError(f"a connected d-regular graph needs 2 <= d < n (got d={d}, n={n})")
    if (n * d) % 2 != 0:
        raise InfeasibleGraphError(f"n * d must be even (got n={n}, d={d})")

    # networkx samples from the pairing model and rejects loops and parallel edges;
    # each attempt gets its own seed drawn from one seeded stream
    rng = np.random.default_rng(seed)
    for attempt in range(RANDOM_REGULAR_RETRIES):
        candidate = nx.random_regular_graph(d, n, seed=int(rng.integers(2 ** 32)))
        if nx.is_connected(candidate):
            logger.debug(f"random {d}-regular graph on {n} vertices after {attempt + 1} attempts")
            return WeightedGraph.from_networkx(candidate)

    raise InfeasibleGraphError(
        f"no connected {d}-regular graph on {n} vertices after {RANDOM_REGULAR_RETRIES} attempts"
    )


def tensor_product(left: Mapping[Edge, Fraction], left_n: int, right: WeightedGraph) -> WeightedGraph:
    """
    Tensor product of a looped weight pattern with a loop-free graph

    `left` maps pairs (a, b) with a <= b to weights and may contain self-loops
    (a == b); the product has vertex (a, x) at index a * right.n + x and an edge
    {(a, x), (b, y)} of weight left(a, b) * right(x, y) for every right edge {x, y}.

    Args:
        left: Weights of the first factor, self-loops allowed
        left_n: Vertex count of the first factor
        right: Second factor

    Returns:
        The product graph, labelled by (a, label of x)
    """
    edges: Dict[Edge, Fraction] = {}
    for (a, b), wl in left.items():
        for (x, y), wr in right.edges.items():
            for p, q in {(a * right.n + x, b * right.n + y), (a * right.n + y, b * right.n + x)}:
                edges[canonical_edge(p, q)] = Fraction(wl) * wr
    labels = tuple((a, right.label(x)) for a in range(left_n) for x in range(right.n))
    return WeightedGraph(n=left_n * right.n, edges=edges, labels=labels)


def complete_graph_on(labels: Iterable[Hashable]) -> WeightedGraph:
    """Unit-weight complete graph K_V on the given labels."""
    labels = tuple(labels)
    edges = {(i, j): Fraction(1) for i in range(len(labels)) for j in range(i + 1, len(labels))}
    return WeightedGraph(n=len(labels), edges=edges, labels=labels)
