"""
Exact class-level weights of the product complexes

Class weights are indexed by cardinality k (a face in class (j, k-j)_(u,v) has k
vertices), unlike complex levels, which are indexed by dimension.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Tuple

from src.core.complex import Complex, FaceClass, PureClass, SplitClass, classify
from src.core.graphs import WeightedGraph, canonical_edge
from src.errors.complex_errors import InvalidParametersError
from src.utils.formatters import format_class
from src.utils.validators import validate_build_params


@dataclass
class ClassWeightTable:
    """One exact weight per face class, for cardinalities 1..H+1."""
    H: int
    s: int
    kind: str
    graph: WeightedGraph
    weights: Dict[FaceClass, Fraction] = field(default_factory=dict)

    def pure(self, u: int, k: int) -> Fraction:
        return self.weights[PureClass(u, k)]

    def split(self, u: int, v: int, count_u: int, k: int) -> Fraction:
        """
        Weight of the class with count_u vertices over u and k - count_u over v

        count_u = k and count_u = 0 fall back to the pure classes of u and v.
        """
        if count_u == k:
            return self.pure(u, k)
        if count_u == 0:
            return self.pure(v, k)
        edge = canonical_edge(u, v)
        j = count_u if edge[0] == u else k - count_u
        return self.weights[SplitClass(edge, j, k)]

    def level(self, k: int) -> Dict[FaceClass, Fraction]:
        return {cls: w for cls, w in self.weights.items() if cls.k == k}

    def first_edge(self) -> Tuple[int, int]:
        return min(self.graph.edges)


def class_weights(g: WeightedGraph, H: int, s: int, kind: str = "Z",
                  allow_weighted: bool = False) -> ClassWeightTable:
    """
    Class weights by downward recursion from the top cardinality

    A class at cardinality t gets (s - t) times the sum of the weights of its
    one-vertex extensions: w^{(j,t-j)} = (s-t)(w^{(j+1,t-j)} + w^{(j,t-j+1)}) and
    w^{(t)}_u = (s-t)(w^{(t+1)}_u + sum over v in N(u) of w^{(t,1)}_{(u,v)}).

    Args:
        g: Source graph
        H: Dimension
        s: Colors, s >= H + 1
        kind: "Z" or "Q"
        allow_weighted: Weighted extension of Q (split tops take w_G)

    Returns:
        Table keyed per edge and per vertex
    """
    validation = validate_build_params(H, s, kind)
    if not validation['valid']:
        raise InvalidParametersError("; ".join(validation['errors']))
    kind = kind.upper()

    table = ClassWeightTable(H=H, s=s, kind=kind, graph=g)
    top = H + 1
    for (u, v), w in g.edges.items():
        for j in range(1, top):
            if kind == "Z":
                table.weights[SplitClass((u, v), j, top)] = w / comb(H - 1, j - 1)
            else:
                table.weights[SplitClass((u, v), j, top)] = Fraction(w) if allow_weighted else Fraction(1)
    for u in range(g.n):
        table.weights[PureClass(u, top)] = Fraction(0) if kind == "Z" else Fraction(1)

    for t in range(H, 0, -1):
        free = s - t
        for (u, v) in g.edges:
            for j in range(1, t):
                table.weights[SplitClass((u, v), j, t)] = free * (
                    table.split(u, v, j + 1, t + 1) + table.split(u, v, j, t + 1)
                )
        for u in range(g.n):
            outward = sum((table.split(u, v, t, t + 1) for v in g.neighbors(u)), Fraction(0))
            table.weights[PureClass(u, t)] = free * (table.pure(u, t + 1) + outward)

    return table


def closed_form_ratio(H: int, s: int, k: int, j: int) -> Fraction:
    """
    w^{(j,k-j)}_{(u,v)} / w_G({u,v}) for Z, independent of the edge

    (H+1-k)! * sum over l = 0..H+1-k of C(s-k, l) C(s-k-l, H+1-k-l) / C(H-1, j+l-1)

    Args:
        H: Dimension
        s: Colors
        k: Cardinality, 2 <= k <= H + 1
        j: Count over u, 1 <= j <= k - 1

    Returns:
        Exact ratio
    """
    if not (2 <= k <= H + 1 and 1 <= j <= k - 1 and s >= H + 1):
        raise InvalidParametersError(f"closed form needs 2 <= k <= H+1, 1 <= j <= k-1, s >= H+1 (H={H}, s={s}, k={k}, j={j})")

    rest = H + 1 - k
    total = Fraction(0)
    for ell in range(0, rest + 1):
        total += Fraction(comb(s - k, ell) * comb(s - k - ell, rest - ell), comb(H - 1, j + ell - 1))
    return factorial(rest) * total


def harmonic(low: int, high: int) -> Fraction:
    """Sum of 1/i for i = low..high (zero when empty)."""
    return sum((Fraction(1, i) for i in range(low, high + 1)), Fraction(0))


def class_mass(H: int, s: int, j: int) -> Fraction:
    """Total Z weight per unit w_G of the top faces with j vertices over u: C(s,H+1) C(H+1,j) / C(H-1,j-1)."""
    return Fraction(comb(s, H + 1) * comb(H + 1, j), comb(H - 1, j - 1))


def top_class_mass(c: Complex, edge: Tuple[int, int], j: int) -> Fraction:
    """Enumerated total weight of the top faces in class (j, H+1-j) over an edge."""
    target = SplitClass(canonical_edge(*edge), j, c.H + 1)
    return sum((c.weight(f) for f in c.top_faces() if classify(c, f) == target), Fraction(0))


@dataclass
class IdentityCheck:
    name: str
    anchor: str
    expected: Fraction
    computed: Fraction

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class IdentityReport:
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[IdentityCheck]:
        return [check for check in self.checks if not check.passed]


def check_ratio_identities(t: ClassWeightTable) -> IdentityReport:
    """
    Exact ratio identities of the Z weights

    For 1 <= k <= H and 1 <= j <= k-1: w^{(j+1,k-j)} / w^{(j,k-j+1)} = j / (k-j);
    for 1 <= k <= H: w^{(k+1)}_u / sum over v in N(u) of w^{(k,1)}_{(u,v)} = k * sum_{i=k+1}^{H} 1/i.
    """
    report = IdentityReport()
    g = t.graph

    for k in range(1, t.H + 1):
        for (a, b) in sorted(g.edges):
            for u, v in ((a, b), (b, a)):
                for j in range(1, k):
                    report.checks.append(IdentityCheck(
                        name=f"split-ratio k={k} j={j} u={u} v={v}",
                        anchor="adjacent split classes weigh in ratio j/(k-j)",
                        expected=Fraction(j, k - j),
                        computed=t.split(u, v, j + 1, k + 1) / t.split(u, v, j, k + 1),
                    ))

        for u in range(g.n):
            outward = sum((t.split(u, v, k, k + 1) for v in g.neighbors(u)), Fraction(0))
            report.checks.append(IdentityCheck(
                name=f"pure-ratio k={k} u={u}",
                anchor="pure over outward weight equals k * sum_{i=k+1}^H 1/i",
                expected=k * harmonic(k + 1, t.H),
                computed=t.pure(u, k + 1) / outward,
            ))

    return report


def check_closed_form(t: ClassWeightTable) -> IdentityReport:
    """Recursion weights against the closed form times w_G, for every split class."""
    report = IdentityReport()
    for cls, w in sorted(t.weights.items(), key=lambda item: format_class(item[0])):
        if isinstance(cls, SplitClass) and cls.k >= 2:
            expected = closed_form_ratio(t.H, t.s, cls.k, cls.j) * t.graph.weight(*cls.edge)
            report.checks.append(IdentityCheck(
                name=f"closed-form {format_class(cls)}",
                anchor="closed-form class weight ratio",
                expected=expected,
                computed=w,
            ))
    return report


def check_against_complex(t: ClassWeightTable, c: Complex) -> IdentityReport:
    """Recursion weights against the explicitly propagated face weights (one check per class)."""
    report = IdentityReport()
    seen = {}
    for k in range(0, c.H + 1):
        for face in c.faces(k):
            cls = classify(c, face)
            if cls in seen:
                if seen[cls] != c.weight(face):
                    report.checks.append(IdentityCheck(
                        name=f"class-constant {format_class(cls)}",
                        anchor="weight is constant on each color-permutation orbit",
                        expected=seen[cls], computed=c.weight(face)))
                continue
            seen[cls] = c.weight(face)
            report.checks.append(IdentityCheck(
                name=f"propagated {format_class(cls)}",
                anchor="recursion weight equals propagated face weight",
                expected=t.weights[cls],
                computed=c.weight(face),
            ))
    return report


def check_class_counts(c: Complex) -> IdentityReport:
    """Top faces with j vertices over u: C(s, H+1) C(H+1, j) per edge and 1 <= j <= H."""
    report = IdentityReport()
    counts: Dict[FaceClass, int] = {}
    for face in c.top_faces():
        cls = classify(c, face)
        counts[cls] = counts.get(cls, 0) + 1

    for edge in sorted(c.source.edges):
        for j in range(1, c.H + 1):
            report.checks.append(IdentityCheck(
                name=f"class-count edge={edge} j={j}",
                anchor="top faces per edge with j vertices over u number C(s,H+1) C(H+1,j)",
                expected=Fraction(comb(c.s, c.H + 1) * comb(c.H + 1, j)),
                computed=Fraction(counts.get(SplitClass(edge, j, c.H + 1), 0)),
            ))
    return report


def check_integrality(c: Complex) -> List:
    """Faces of a unit-weight Z whose (H-1)! m(sigma) is not an integer (empty when all are)."""
    scale = factorial(c.H - 1)
    return [
        face for k in range(-1, c.H + 1) for face in c.faces(k)
        if (scale * c.weight(face)).denominator != 1
    ]


def updown_class_step_prob(t: ClassWeightTable, k: int, j: int, direction: int,
                           edge: Optional[Tuple[int, int]] = None) -> Fraction:
    """
    Probability that one up-down step from a face of class (j, k-j) moves j by `direction`

    Pr[j' = j+1] = w^{(j+1,k-j)} / (w^{(j+1,k-j)} + w^{(j,k-j+1)}) * (k-j)/(k+1)
    Pr[j' = j-1] = w^{(j,k-j+1)} / (w^{(j+1,k-j)} + w^{(j,k-j+1)}) * j/(k+1)

    Args:
        t: Class weight table
        k: Cardinality of the walking faces, 2 <= k <= H
        j: Count over u, 1 <= j <= k - 1
        direction: +1 or -1
        edge: Edge (u, v); defaults to the first edge of the table's graph

    Returns:
        Exact probability
    """
    if not (2 <= k <= t.H and 1 <= j <= k - 1) or direction not in (1, -1):
        raise InvalidParametersError(f"step probability needs 2 <= k <= H, 1 <= j <= k-1, direction +-1 (k={k}, j={j}, direction={direction})")

    u, v = edge if edge is not None else t.first_edge()
    toward_u = t.split(u, v, j + 1, k + 1)
    toward_v = t.split(u, v, j, k + 1)
    if direction == 1:
        return toward_u / (toward_u + toward_v) * Fraction(k - j, k + 1)
    return toward_v / (toward_u + toward_v) * Fraction(j, k + 1)


def class_step_profile(t: ClassWeightTable, k: int,
                       edge: Optional[Tuple[int, int]] = None) -> List[Tuple[int, Fraction, Fraction, Fraction]]:
    """
    Birth-death picture of the up-down walk on the split classes of one edge

    Returns:
        Rows (j, Pr[j+1], Pr[j-1], Pr[j unchanged]) for 1 <= j <= k - 1
    """
    rows = []
    for j in range(1, k):
        up = updown_class_step_prob(t, k, j, 1, edge)
        down = updown_class_step_prob(t, k, j, -1, edge)
        rows.append((j, up, down, 1 - up - down))
    return rows
