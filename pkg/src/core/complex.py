"""
Pure weighted simplicial complexes: the Z and Q product builders, links,
1-skeletons, face classes and balance checks
"""
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple, Union

from config.settings import MAX_TOP_FACES
from src.core.graphs import WeightedGraph
from src.errors.complex_errors import (
    ComplexError,
    ComplexSizeError,
    FaceNotInComplexError,
    InvalidParametersError,
    WeightedBaselineError,
)
from src.utils.logger import get_logger
from src.utils.validators import validate_build_params

logger = get_logger("hdx.complex")


class ZVertex(NamedTuple):
    """Vertex (v, b) of V(G) x [s]: graph vertex v, color b in 1..s."""
    v: int
    b: int


Face = Tuple[ZVertex, ...]
EMPTY_FACE: Face = ()


def make_face(vertices: Iterable[Tuple[int, int]]) -> Face:
    """Canonical face: vertices sorted by (v, b)."""
    return tuple(sorted(ZVertex(*x) for x in vertices))


def face_dim(face: Face) -> int:
    return len(face) - 1


def colors_of(face: Face) -> frozenset:
    return frozenset(x.b for x in face)


@dataclass(frozen=True, order=True)
class SplitClass:
    """Faces with j vertices over edge[0] and k - j over edge[1] (k = cardinality)."""
    edge: Tuple[int, int]
    j: int
    k: int


@dataclass(frozen=True, order=True)
class PureClass:
    """Faces with all k vertices over the graph vertex u."""
    u: int
    k: int


FaceClass = Union[SplitClass, PureClass]


class Complex:
    """
    Pure weighted simplicial complex with faces at levels -1..H.

    Level k holds the faces of dimension k (cardinality k + 1); level -1 holds
    the empty face. Instances are treated as immutable once built.
    """

    def __init__(self, H: int, kind: str, weights: Mapping[int, Mapping[Face, Fraction]],
                 s: Optional[int] = None, source: Optional[WeightedGraph] = None,
                 anchor: Optional[Face] = None, cofaces: Optional[Dict[Face, Tuple[Face, ...]]] = None):
        self.H = H
        self.kind = kind
        self.s = s
        self.source = source
        self.anchor = anchor
        self._weights: Dict[int, Dict[Face, Fraction]] = {k: dict(weights.get(k, {})) for k in range(-1, H + 1)}
        self._faces: Dict[int, List[Face]] = {k: sorted(level) for k, level in self._weights.items()}
        self._index: Dict[int, Dict[Face, int]] = {
            k: {face: i for i, face in enumerate(faces)} for k, faces in self._faces.items()
        }
        self.total_weight: Dict[int, Fraction] = {
            k: sum(level.values(), Fraction(0)) for k, level in self._weights.items()
        }
        self._cofaces = cofaces

    def __repr__(self):
        sizes = ", ".join(str(len(self._faces[k])) for k in range(0, self.H + 1))
        return f"Complex(kind={self.kind}, H={self.H}, s={self.s}, sizes=[{sizes}])"

    def __contains__(self, face) -> bool:
        level = len(face) - 1
        return -1 <= level <= self.H and face in self._weights[level]

    @property
    def levels(self) -> range:
        return range(-1, self.H + 1)

    def faces(self, k: int) -> List[Face]:
        """Faces of dimension k in canonical order."""
        return self._faces[k]

    def index(self, k: int) -> Dict[Face, int]:
        return self._index[k]

    def level_size(self, k: int) -> int:
        return len(self._faces[k])

    def weight(self, face: Face) -> Fraction:
        if face not in self:
            raise FaceNotInComplexError(face)
        return self._weights[len(face) - 1][face]

    def level_weights(self, k: int) -> Dict[Face, Fraction]:
        return self._weights[k]

    def top_faces(self) -> List[Face]:
        return self._faces[self.H]

    def cofaces(self, face: Face) -> Tuple[Face, ...]:
        """Faces one level up that contain `face`."""
        if self._cofaces is None:
            self._cofaces = _coface_map(self._weights, self.H)
        return self._cofaces.get(face, ())

    def with_weight(self, face: Face, weight) -> "Complex":
        """Copy with a single face weight replaced (no re-propagation)."""
        if face not in self:
            raise FaceNotInComplexError(face)
        weights = {k: dict(level) for k, level in self._weights.items()}
        weights[len(face) - 1][face] = Fraction(weight)
        return Complex(self.H, self.kind, weights, s=self.s, source=self.source,
                       anchor=self.anchor, cofaces=self._cofaces)

    def face_counts(self) -> Dict[int, int]:
        return {k: len(self._faces[k]) for k in range(0, self.H + 1)}


def _coface_map(weights: Mapping[int, Mapping[Face, Fraction]], H: int) -> Dict[Face, Tuple[Face, ...]]:
    cofaces: Dict[Face, List[Face]] = defaultdict(list)
    for k in range(0, H + 1):
        for tau in weights[k]:
            for i in range(len(tau)):
                cofaces[tau[:i] + tau[i + 1:]].append(tau)
    return {face: tuple(sorted(taus)) for face, taus in cofaces.items()}


def propagate(H: int, top: Mapping[Face, Fraction]) -> Tuple[Dict[int, Dict[Face, Fraction]], Dict[Face, Tuple[Face, ...]]]:
    """
    Downward closure with balanced weights: m(sigma) = sum of m over the faces one level up

    Args:
        H: Top dimension
        top: Top faces and their weights

    Returns:
        Per-level weights (levels -1..H) and the coface map
    """
    weights: Dict[int, Dict[Face, Fraction]] = {H: dict(top)}
    cofaces: Dict[Face, List[Face]] = defaultdict(list)
    for k in range(H, -1, -1):
        lower: Dict[Face, Fraction] = defaultdict(Fraction)
        for tau, m in weights[k].items():
            for i in range(len(tau)):
                sigma = tau[:i] + tau[i + 1:]
                lower[sigma] += m
                cofaces[sigma].append(tau)
        weights[k - 1] = dict(lower)
    return weights, {face: tuple(sorted(taus)) for face, taus in cofaces.items()}


def predicted_top_faces(g: WeightedGraph, H: int, s: int, kind: str = "Z") -> int:
    """|E(G)| C(s, H+1) (2^(H+1) - 2), plus n C(s, H+1) pure faces for Q."""
    count = len(g.edges) * comb(s, H + 1) * (2 ** (H + 1) - 2)
    if kind.upper() == "Q":
        count += g.n * comb(s, H + 1)
    return count


def _check_build(g: WeightedGraph, H: int, s: int, kind: str, max_faces: Optional[int]) -> None:
    validation = validate_build_params(H, s, kind)
    if not validation['valid']:
        raise InvalidParametersError("; ".join(validation['errors']))

    cap = MAX_TOP_FACES if max_faces is None else max_faces
    predicted = predicted_top_faces(g, H, s, kind)
    if predicted > cap:
        raise ComplexSizeError(predicted, cap)


def _split_top_faces(g: WeightedGraph, H: int, s: int):
    """Yield (face, edge, j, w_G) for every top face whose vertex projection is a full edge."""
    size = H + 1
    for (u, v), w in sorted(g.edges.items()):
        for colors in combinations(range(1, s + 1), size):
            for mask in range(1, 2 ** size - 1):
                vertices = [ZVertex(u if mask >> i & 1 else v, b) for i, b in enumerate(colors)]
                j = bin(mask).count("1")
                yield tuple(sorted(vertices)), (u, v), j, w


def build_Z(g: WeightedGraph, H: int, s: int, max_faces: Optional[int] = None) -> Complex:
    """
    Build the weighted product complex Z

    Top faces are the (H+1)-subsets of V(G) x [s] with distinct colors whose
    graph vertices are exactly the two endpoints of an edge {u, v}; a face with
    j vertices over u has weight w_G({u,v}) / C(H-1, j-1).

    Args:
        g: Connected loop-free graph
        H: Dimension, H >= 1
        s: Number of colors, s >= H + 1
        max_faces: Override of the MAX_TOP_FACES cap

    Returns:
        The complex with balanced weights on every level

    Raises:
        InvalidParametersError, ComplexSizeError
    """
    _check_build(g, H, s, "Z", max_faces)

    top = {face: w / comb(H - 1, j - 1) for face, _, j, w in _split_top_faces(g, H, s)}
    weights, cofaces = propagate(H, top)
    c = Complex(H, "Z", weights, s=s, source=g, cofaces=cofaces)
    logger.info(f"Built Z(H={H}, s={s}) over n={g.n}, |E|={len(g.edges)}: face counts {c.face_counts()}")
    return c


def build_Q(g: WeightedGraph, H: int, s: int, allow_weighted: bool = False,
            max_faces: Optional[int] = None) -> Complex:
    """
    Build the baseline product complex Q

    Like Z, but the graph vertices of a top face need only lie inside an edge
    (so faces over a single vertex are included) and every top face has weight 1.
    With allow_weighted, split faces take weight w_G({u,v}) and pure faces keep 1.

    Args:
        g: Connected loop-free graph; unit weights unless allow_weighted
        H: Dimension, H >= 1
        s: Number of colors, s >= H + 1
        allow_weighted: Enable the weighted extension
        max_faces: Override of the MAX_TOP_FACES cap

    Returns:
        The complex with balanced weights on every level

    Raises:
        InvalidParametersError, ComplexSizeError, WeightedBaselineError
    """
    _check_build(g, H, s, "Q", max_faces)
    if not g.is_unit_weighted and not allow_weighted:
        raise WeightedBaselineError("Q is defined for unit edge weights; the input graph is weighted")

    top: Dict[Face, Fraction] = {}
    for face, _, _, w in _split_top_faces(g, H, s):
        top[face] = Fraction(w) if allow_weighted else Fraction(1)
    for u in range(g.n):
        for colors in combinations(range(1, s + 1), H + 1):
            top[tuple(ZVertex(u, b) for b in colors)] = Fraction(1)

    weights, cofaces = propagate(H, top)
    c = Complex(H, "Q", weights, s=s, source=g, cofaces=cofaces)
    logger.info(f"Built Q(H={H}, s={s}) over n={g.n}, |E|={len(g.edges)}: face counts {c.face_counts()}")
    return c


def classify(c: Complex, face: Face) -> FaceClass:
    """
    Orbit class of a face under color permutations

    Args:
        c: Complex built over a graph
        face: Non-empty face of c

    Returns:
        PureClass(u, k) if every vertex lies over u, else SplitClass(edge, j, k)
        with j the count over the lower endpoint

    Raises:
        FaceNotInComplexError
    """
    if face not in c or not face:
        raise FaceNotInComplexError(face)

    counts = Counter(x.v for x in face)
    if len(counts) == 1:
        (u,) = counts
        return PureClass(u=u, k=len(face))

    u, v = sorted(counts)
    if c.source is not None and not c.source.has_edge(u, v):
        raise ComplexError(f"face {face} spans the non-edge {u}-{v}")
    return SplitClass(edge=(u, v), j=counts[u], k=len(face))


def class_sizes(c: Complex, k: int) -> Counter:
    """Number of level-k faces in each class."""
    return Counter(classify(c, face) for face in c.faces(k))


def link(c: Complex, face: Face) -> Complex:
    """
    Link of a face: {tau minus sigma : sigma in tau}, with m_sigma(tau minus sigma) = m(tau)

    Args:
        c: Complex
        face: Face with dim <= H - 2

    Returns:
        A materialized complex of dimension H - dim(face) - 1 (the complex itself
        for the empty face)

    Raises:
        FaceNotInComplexError, InvalidParametersError
    """
    if face not in c:
        raise FaceNotInComplexError(face)
    if not face:
        return c
    d = face_dim(face)
    if d > c.H - 2:
        raise InvalidParametersError(f"link needs dim <= H - 2 = {c.H - 2}, got a face of dim {d}")

    removed = set(face)
    weights: Dict[int, Dict[Face, Fraction]] = {-1: {EMPTY_FACE: c.weight(face)}}
    frontier = [face]
    for level in range(d + 1, c.H + 1):
        frontier = sorted({tau for sigma in frontier for tau in c.cofaces(sigma)})
        weights[level - d - 1] = {
            tuple(x for x in tau if x not in removed): c.weight(tau) for tau in frontier
        }
    return Complex(c.H - d - 1, "link", weights, s=c.s, source=c.source, anchor=face)


def one_skeleton(c: Complex) -> WeightedGraph:
    """
    Weighted graph (X(0), X(1), m); vertex i carries the label c.faces(0)[i][0]

    Args:
        c: Complex of dimension >= 1

    Returns:
        Graph whose weighted degree at x equals m(x)
    """
    if c.H < 1:
        raise InvalidParametersError("1-skeleton needs a complex of dimension >= 1")
    index = c.index(0)
    edges = {
        (index[(a,)], index[(b,)]): m for (a, b), m in c.level_weights(1).items()
    }
    labels = tuple(vertex for (vertex,) in c.faces(0))
    return WeightedGraph(n=len(labels), edges=edges, labels=labels)


@dataclass
class BalanceViolation:
    rule: str  # "one-level" or "top-sum"
    face: Face
    expected: Fraction
    actual: Fraction


@dataclass
class BalanceReport:
    violations: List[BalanceViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[BalanceViolation]:
        return self.violations[0] if self.violations else None


def verify_balance(c: Complex) -> BalanceReport:
    """
    Exact balance check

    (a) m(sigma) equals the sum of m over the faces one level up, for levels -1..H-1;
    (b) m(sigma) = (H - k)! times the sum of m over the top faces containing sigma.

    Args:
        c: Complex

    Returns:
        Report listing every violating face, one-level violations first
    """
    report = BalanceReport()

    for k in range(c.H - 1, -2, -1):
        for sigma in c.faces(k):
            total = sum((c.weight(tau) for tau in c.cofaces(sigma)), Fraction(0))
            if total != c.weight(sigma):
                report.violations.append(BalanceViolation("one-level", sigma, total, c.weight(sigma)))

    top_sums: Dict[Face, Fraction] = defaultdict(Fraction)
    for tau in c.top_faces():
        m = c.weight(tau)
        for r in range(0, len(tau) + 1):
            for sigma in combinations(tau, r):
                top_sums[sigma] += m

    for k in range(c.H, -2, -1):
        for sigma in c.faces(k):
            expected = factorial(c.H - k) * top_sums.get(sigma, Fraction(0))
            if expected != c.weight(sigma):
                report.violations.append(BalanceViolation("top-sum", sigma, expected, c.weight(sigma)))

    if not report.ok:
        logger.warning(f"{len(report.violations)} balance violations, first at {report.first.face}")
    return report


def is_downward_closed(c: Complex) -> bool:
    """Every (|sigma| - 1)-subset of a face is a face."""
    return all(
        face[:i] + face[i + 1:] in c
        for k in range(0, c.H + 1) for face in c.faces(k) for i in range(len(face))
    )


def is_pure(c: Complex) -> bool:
    """Every face lies in some top face."""
    covered = set()
    for tau in c.top_faces():
        for r in range(0, len(tau) + 1):
            covered.update(combinations(tau, r))
    return all(face in covered for k in c.levels for face in c.faces(k))


def permute_face(face: Face, permutation: Mapping[int, int]) -> Face:
    """Apply a color permutation b -> permutation[b]."""
    return make_face((x.v, permutation[x.b]) for x in face)


def project_face(face: Face) -> Tuple[frozenset, frozenset]:
    """Projections of a face onto V(G) and onto [s]."""
    return frozenset(x.v for x in face), colors_of(face)


def vertex_degree_profile(c: Complex) -> Dict[ZVertex, int]:
    """Number of faces (of every dimension >= 0) containing each vertex."""
    counts: Dict[ZVertex, int] = Counter()
    for k in range(0, c.H + 1):
        for face in c.faces(k):
            counts.update(face)
    return dict(counts)
