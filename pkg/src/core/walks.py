"""
High-order random walks: up, down, up-down and down-up operators, their
stationary measures, symmetrized spectra and exact distribution evolution
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse

from config.settings import EIGEN_TOLERANCE, MAX_EIGEN_SIZE, NONZERO_CUTOFF, SYMMETRY_TOLERANCE, TV_SLACK
from src.core.complex import Complex, Face
from src.errors.spectrum_errors import (
    DimensionMismatchError,
    EigenSizeError,
    EigenSolverError,
    LevelOutOfRangeError,
    ReversibilityError,
    SpectrumError,
    SymmetrizationError,
)
from src.utils.logger import get_logger
from src.utils.validators import validate_level

logger = get_logger("hdx.walks")


@dataclass
class WalkOperator:
    """
    Column-stochastic operator from the faces of one level to another.

    columns[i] maps codomain row indices to exact rational entries of the column
    of domain face i; `matrix` is the floating-point shadow.
    """
    level: int
    kind: str
    domain_level: int
    codomain_level: int
    domain: List[Face]
    codomain: List[Face]
    columns: List[Dict[int, Fraction]]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.codomain), len(self.domain)

    @property
    def is_square(self) -> bool:
        return self.domain_level == self.codomain_level

    def entry(self, row: int, column: int) -> Fraction:
        return self.columns[column].get(row, Fraction(0))

    def column_sums(self) -> List[Fraction]:
        return [sum(col.values(), Fraction(0)) for col in self.columns]

    def is_column_stochastic(self) -> bool:
        """Exact check that every column sums to one."""
        return all(total == 1 for total in self.column_sums())

    @cached_property
    def matrix(self) -> scipy.sparse.csc_matrix:
        rows, cols, data = [], [], []
        for j, col in enumerate(self.columns):
            for i, value in col.items():
                rows.append(i)
                cols.append(j)
                data.append(float(value))
        return scipy.sparse.csc_matrix((data, (rows, cols)), shape=self.shape)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()


@dataclass
class StationaryMeasure:
    """pi(sigma) = m(sigma) / total weight of level k, aligned with c.faces(k)."""
    level: int
    values: List[Fraction]

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.values])

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


@dataclass
class SpectrumReport:
    level: int
    walk: str
    eigenvalues: np.ndarray
    gap: float
    residual: float
    lower_bound_ok: Optional[bool] = None

    @property
    def omega2(self) -> float:
        return float(self.eigenvalues[1]) if len(self.eigenvalues) > 1 else float("nan")


def _check_level(c: Complex, name: str, k: int, low: int, high: int) -> None:
    if not validate_level(k, low, high):
        raise LevelOutOfRangeError(name, k, low, high)


def up_step(c: Complex, k: int) -> WalkOperator:
    """
    W_up(tau, sigma) = m(tau) / m(sigma) for sigma in tau, from level k to k + 1

    Args:
        c: Complex
        k: Level, -1 <= k <= H - 1

    Returns:
        Exact operator; its columns sum to one because the weights are balanced
    """
    _check_level(c, "up_step", k, -1, c.H - 1)
    target = c.index(k + 1)
    columns = []
    for sigma in c.faces(k):
        m = c.weight(sigma)
        columns.append({target[tau]: c.weight(tau) / m for tau in c.cofaces(sigma)})
    return WalkOperator(k, "up", k, k + 1, c.faces(k), c.faces(k + 1), columns)


def down_step(c: Complex, k: int) -> WalkOperator:
    """
    W_down(tau, sigma) = 1/(k+1) for tau in sigma, from level k to k - 1

    Args:
        c: Complex
        k: Level, 0 <= k <= H

    Returns:
        Exact operator with k + 1 equal entries per column
    """
    _check_level(c, "down_step", k, 0, c.H)
    target = c.index(k - 1)
    share = Fraction(1, k + 1)
    columns = [
        {target[sigma[:i] + sigma[i + 1:]]: share for i in range(len(sigma))}
        for sigma in c.faces(k)
    ]
    return WalkOperator(k, "down", k, k - 1, c.faces(k), c.faces(k - 1), columns)


def compose(outer: WalkOperator, inner: WalkOperator, kind: str, level: int) -> WalkOperator:
    """Exact product outer * inner (apply inner first)."""
    if inner.codomain_level != outer.domain_level:
        raise SpectrumError(f"cannot compose: inner lands on level {inner.codomain_level}, outer starts at {outer.domain_level}")
    columns = []
    for col in inner.columns:
        result: Dict[int, Fraction] = {}
        for middle, a in col.items():
            for row, b in outer.columns[middle].items():
                result[row] = result.get(row, Fraction(0)) + a * b
        columns.append(result)
    return WalkOperator(level, kind, inner.domain_level, outer.codomain_level,
                        inner.domain, outer.codomain, columns)


def updown(c: Complex, k: int) -> WalkOperator:
    """W_updown_k = W_down_{k+1} after W_up_k, for 0 <= k <= H - 1."""
    _check_level(c, "updown", k, 0, c.H - 1)
    return compose(down_step(c, k + 1), up_step(c, k), "updown", k)


def downup(c: Complex, k: int) -> WalkOperator:
    """W_downup_k = W_up_{k-1} after W_down_k, for 1 <= k <= H."""
    _check_level(c, "downup", k, 1, c.H)
    return compose(up_step(c, k - 1), down_step(c, k), "downup", k)


def walk_operator(c: Complex, walk: str, k: int) -> WalkOperator:
    builders = {"up": up_step, "down": down_step, "updown": updown, "downup": downup}
    if walk not in builders:
        raise SpectrumError(f"unknown walk {walk!r}")
    return builders[walk](c, k)


def stationary_measure(c: Complex, k: int) -> StationaryMeasure:
    """Stationary measure of the level-k walks."""
    _check_level(c, "stationary_measure", k, -1, c.H)
    total = c.total_weight[k]
    return StationaryMeasure(k, [c.weight(face) / total for face in c.faces(k)])


def reversibility_violation(w: WalkOperator, pi: StationaryMeasure) -> Optional[Tuple[int, int]]:
    """
    First entry where pi(sigma) W(tau, sigma) != pi(tau) W(sigma, tau), exactly

    Returns:
        (row, column) of the violation, or None when detailed balance holds
    """
    if not w.is_square:
        raise SpectrumError("detailed balance needs a square operator")
    values = pi.values
    for col_index, col in enumerate(w.columns):
        for row_index, value in col.items():
            if values[col_index] * value != values[row_index] * w.entry(col_index, row_index):
                return row_index, col_index
    return None


def is_reversible(w: WalkOperator, pi: StationaryMeasure) -> bool:
    return reversibility_violation(w, pi) is None


def operator_spectrum(w: WalkOperator, pi: StationaryMeasure, tolerance: float = None,
                      symmetry_tolerance: float = None, max_size: int = None) -> SpectrumReport:
    """
    Spectrum of a reversible level operator via diag(pi)^(-1/2) W diag(pi)^(1/2)

    Args:
        w: Square operator, reversible with respect to pi
        pi: Stationary measure of its level
        tolerance: Allowed deviation of omega_1 from 1 and slack of the
            up-down lower bound -k/(k+2)
        symmetry_tolerance: Allowed asymmetry of the conjugated matrix
        max_size: Override of MAX_EIGEN_SIZE

    Returns:
        Descending eigenvalues, gap 1 - omega_2 and the symmetrization residual

    Raises:
        ReversibilityError, SymmetrizationError, EigenSizeError, EigenSolverError
    """
    tolerance = EIGEN_TOLERANCE if tolerance is None else tolerance
    symmetry_tolerance = SYMMETRY_TOLERANCE if symmetry_tolerance is None else symmetry_tolerance
    max_size = MAX_EIGEN_SIZE if max_size is None else max_size

    size = w.shape[0]
    if size > max_size:
        raise EigenSizeError(size, max_size)

    violation = reversibility_violation(w, pi)
    if violation is not None:
        raise ReversibilityError(*violation)

    root = np.sqrt(pi.as_array())
    sym = w.to_dense() * root[np.newaxis, :] / root[:, np.newaxis]
    residual = float(np.max(np.abs(sym - sym.T))) if size else 0.0
    if residual > symmetry_tolerance:
        raise SymmetrizationError(residual, symmetry_tolerance)

    try:
        values = scipy.linalg.eigh(0.5 * (sym + sym.T), eigvals_only=True)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(f"symmetric eigensolve failed at level {w.level}: {e}", residual=residual) from e
    values = values[::-1].copy()

    if abs(values[0] - 1.0) > tolerance:
        raise EigenSolverError(f"omega_1 = {values[0]!r} differs from 1", residual=residual)

    lower_bound_ok = None
    if w.kind == "updown":
        lower_bound_ok = bool(values[-1] >= -w.level / (w.level + 2) - tolerance)

    gap = float(1.0 - values[1]) if size > 1 else 0.0
    logger.debug(f"{w.kind} level {w.level}: size {size}, gap {gap:.12g}, residual {residual:.2e}")
    return SpectrumReport(level=w.level, walk=w.kind, eigenvalues=values, gap=gap,
                          residual=residual, lower_bound_ok=lower_bound_ok)


def level_spectrum(c: Complex, walk: str, k: int, **kwargs) -> SpectrumReport:
    """Assemble the level-k updown/downup operator of c and return its spectrum."""
    if walk not in ("updown", "downup"):
        raise SpectrumError(f"spectra are defined for the square walks updown/downup, not {walk!r}")
    return operator_spectrum(walk_operator(c, walk, k), stationary_measure(c, k), **kwargs)


def raw_spectrum(w: WalkOperator) -> np.ndarray:
    """Eigenvalues of the unsymmetrized operator from a general solver, real parts, descending."""
    values = scipy.linalg.eigvals(w.to_dense())
    return np.sort(values.real)[::-1]


def nonzero_eigenvalues(values: Sequence[float], cutoff: float = None) -> np.ndarray:
    cutoff = NONZERO_CUTOFF if cutoff is None else cutoff
    values = np.asarray(values)
    return np.sort(values[np.abs(values) > cutoff])[::-1]


def spectra_match(a: Sequence[float], b: Sequence[float], tolerance: float, cutoff: float = None) -> bool:
    """Nonzero parts of two spectra agree with multiplicity."""
    left, right = nonzero_eigenvalues(a, cutoff), nonzero_eigenvalues(b, cutoff)
    return len(left) == len(right) and bool(np.all(np.abs(left - right) <= tolerance))


def point_mass(size: int, index: int) -> np.ndarray:
    p = np.zeros(size)
    p[index] = 1.0
    return p


def evolve(w: WalkOperator, p0: Sequence[float], steps: int, pi: StationaryMeasure) -> np.ndarray:
    """
    Exact repeated application of a level operator to a distribution

    Args:
        w: Square column-stochastic operator
        p0: Start distribution on the operator's level
        steps: Number of steps T
        pi: Stationary measure of the level

    Returns:
        Total-variation distances to pi, entry t after t steps (t = 0..T)
    """
    p = np.asarray(p0, dtype=float)
    if not w.is_square or p.shape != (w.shape[1],):
        raise DimensionMismatchError(w.shape[1], p.shape[0] if p.ndim else 0)

    target = pi.as_array()
    matrix = w.matrix
    trace = np.empty(steps + 1)
    trace[0] = 0.5 * np.abs(p - target).sum()
    for t in range(1, steps + 1):
        p = matrix @ p
        trace[t] = 0.5 * np.abs(p - target).sum()
    return trace


def is_monotone(trace: Sequence[float], slack: float = None) -> bool:
    """Non-increasing up to the given slack."""
    slack = TV_SLACK if slack is None else slack
    trace = np.asarray(trace)
    return bool(np.all(np.diff(trace) <= slack))


def steps_to_threshold(trace: Sequence[float], threshold: float) -> Optional[int]:
    """First step whose TV distance is below the threshold, or None."""
    below = np.flatnonzero(np.asarray(trace) < threshold)
    return int(below[0]) if below.size else None


def mix_until(w: WalkOperator, p0: Sequence[float], pi: StationaryMeasure,
              threshold: float, max_steps: int) -> np.ndarray:
    """Evolve until TV drops below threshold or max_steps is reached."""
    p = np.asarray(p0, dtype=float)
    if not w.is_square or p.shape != (w.shape[1],):
        raise DimensionMismatchError(w.shape[1], p.shape[0] if p.ndim else 0)
    target = pi.as_array()
    matrix = w.matrix
    trace = [0.5 * np.abs(p - target).sum()]
    while trace[-1] >= threshold and len(trace) <= max_steps:
        p = matrix @ p
        trace.append(0.5 * np.abs(p - target).sum())
    return np.array(trace)


def tv_upper_bound(pi_start: float, second_modulus: float, steps: int) -> float:
    """Reversible-chain bound on TV after t steps from a point mass: 1/2 sqrt((1-pi)/pi) lambda*^t."""
    return 0.5 * np.sqrt((1.0 - pi_start) / pi_start) * second_modulus ** steps


def second_modulus(report: SpectrumReport) -> float:
    """lambda* = max(|omega_2|, |omega_min|)."""
    values = report.eigenvalues
    return float(max(abs(values[1]), abs(values[-1])))


def sample_walk(w: WalkOperator, start: int, steps: int, seed: int) -> List[int]:
    """Seeded trajectory of face indices (demonstration only; traces use evolve)."""
    rng = np.random.default_rng(seed)
    path = [start]
    current = start
    for _ in range(steps):
        column = w.columns[current]
        rows = sorted(column)
        probabilities = np.array([float(column[r]) for r in rows])
        current = int(rng.choice(rows, p=probabilities / probabilities.sum()))
        path.append(current)
    return path
