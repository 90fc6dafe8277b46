#!/usr/bin/env python3
"""
Test script for the up/down walk operators, their spectra and distribution evolution
"""
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

# Add the project root to the Python path
sys.path.append(str(Path(__file__).parent))

from src.core.complex import EMPTY_FACE, build_Q, build_Z, one_skeleton
from src.core.graphs import gen_graph, graph_spectrum, lazy_walk_matrix
from src.core.walks import (
    StationaryMeasure,
    down_step,
    downup,
    evolve,
    is_monotone,
    is_reversible,
    level_spectrum,
    mix_until,
    operator_spectrum,
    point_mass,
    raw_spectrum,
    sample_walk,
    second_modulus,
    spectra_match,
    stationary_measure,
    steps_to_threshold,
    tv_upper_bound,
    up_step,
    updown,
)
from src.core.weights import harmonic
from src.errors.spectrum_errors import (
    DimensionMismatchError,
    EigenSizeError,
    LevelOutOfRangeError,
    ReversibilityError,
    SpectrumError,
)


def test_up_from_empty_face(z_k2_h2):
    w = up_step(z_k2_h2, -1)
    assert w.shape == (z_k2_h2.level_size(0), 1)
    total = z_k2_h2.weight(EMPTY_FACE)
    for row, face in enumerate(z_k2_h2.faces(0)):
        assert w.entry(row, 0) == z_k2_h2.weight(face) / total
    assert w.is_column_stochastic()


def test_down_steps(z_k2_h2):
    w = down_step(z_k2_h2, 1)
    assert all(len(col) == 2 and set(col.values()) == {Fraction(1, 2)} for col in w.columns)
    bottom = down_step(z_k2_h2, 0)
    assert all(col == {0: 1} for col in bottom.columns)


def test_operators_are_column_stochastic(z_c8_h3):
    for k in range(-1, 3):
        assert up_step(z_c8_h3, k).is_column_stochastic()
    for k in range(0, 4):
        assert down_step(z_c8_h3, k).is_column_stochastic()
    for k in range(0, 3):
        assert updown(z_c8_h3, k).is_column_stochastic()
        assert downup(z_c8_h3, k + 1).is_column_stochastic()


def test_level_ranges(z_k2_h2):
    with pytest.raises(LevelOutOfRangeError):
        up_step(z_k2_h2, 2)
    with pytest.raises(LevelOutOfRangeError):
        down_step(z_k2_h2, -1)
    with pytest.raises(LevelOutOfRangeError):
        updown(z_k2_h2, 2)
    with pytest.raises(LevelOutOfRangeError):
        downup(z_k2_h2, 0)


def test_updown_self_loops(z_c8_h3):
    for k in range(0, 3):
        w = updown(z_c8_h3, k)
        assert all(w.entry(i, i) >= Fraction(1, k + 2) for i in range(w.shape[0]))


def test_detailed_balance_is_exact(z_c8_h3, q_c8_h3):
    for c in (z_c8_h3, q_c8_h3):
        for k in range(0, 2):
            assert is_reversible(updown(c, k), stationary_measure(c, k))
            assert is_reversible(downup(c, k + 1), stationary_measure(c, k + 1))


def test_updown_of_one_dimensional_complex_is_lazy_walk(c4):
    z = build_Z(c4, 1, 3)
    w = updown(z, 0)
    assert all(w.entry(i, i) == Fraction(1, 2) for i in range(w.shape[0]))
    assert np.allclose(w.to_dense(), lazy_walk_matrix(one_skeleton(z)), atol=1e-12)


def test_updown_spectrum_range(z_c8_h3):
    for k in range(0, 3):
        report = level_spectrum(z_c8_h3, "updown", k)
        assert report.eigenvalues[0] == pytest.approx(1.0, abs=1e-9)
        assert report.lower_bound_ok
        assert report.eigenvalues[-1] >= -k / (k + 2) - 1e-9


def test_nonzero_spectra_match(z_c8_h3):
    for k in range(0, 2):
        a = level_spectrum(z_c8_h3, "updown", k).eigenvalues
        b = level_spectrum(z_c8_h3, "downup", k + 1).eigenvalues
        assert spectra_match(a, b, 1e-8)


def test_symmetrized_matches_general_solver(z_k2_h2):
    w = updown(z_k2_h2, 1)
    report = operator_spectrum(w, stationary_measure(z_k2_h2, 1))
    assert np.allclose(report.eigenvalues, raw_spectrum(w), atol=1e-8)


def test_gap_sandwich(z_c8_h3, c8):
    nu_graph = graph_spectrum(c8).gap
    h = float(harmonic(1, 3))
    for k in range(0, 3):
        gap = level_spectrum(z_c8_h3, "updown", k).gap
        assert nu_graph / (h * (k + 2) * (k + 1)) <= gap + 1e-9
        assert gap <= 2 / (k + 2) + 1e-9


def test_operators_ignore_weight_scale(c4_weighted):
    base = build_Z(c4_weighted, 2, 4)
    scaled = build_Z(c4_weighted.scaled(Fraction(5, 7)), 2, 4)
    for k in range(0, 2):
        assert updown(base, k).columns == updown(scaled, k).columns


def test_spectrum_guards(c4_weighted, z_c8_h3):
    z = build_Z(c4_weighted, 2, 4)
    w = updown(z, 0)
    uniform = StationaryMeasure(0, [Fraction(1, w.shape[0])] * w.shape[0])
    with pytest.raises(ReversibilityError):
        operator_spectrum(w, uniform)
    with pytest.raises(EigenSizeError):
        operator_spectrum(w, stationary_measure(z, 0), max_size=10)
    with pytest.raises(SpectrumError):
        level_spectrum(z_c8_h3, "up", 0)


def test_stationary_start_stays_put(z_k2_h2):
    w = updown(z_k2_h2, 1)
    pi = stationary_measure(z_k2_h2, 1)
    trace = evolve(w, pi.as_array(), 20, pi)
    assert len(trace) == 21
    assert np.all(trace < 1e-12)


def test_point_mass_trace(z_c8_h3):
    k = 1
    w = updown(z_c8_h3, k)
    pi = stationary_measure(z_c8_h3, k)
    trace = evolve(w, point_mass(w.shape[1], 0), 60, pi)
    assert trace[0] == pytest.approx(1 - float(pi.values[0]))
    assert is_monotone(trace)

    report = level_spectrum(z_c8_h3, "updown", k)
    modulus = second_modulus(report)
    for t, tv in enumerate(trace):
        assert tv <= tv_upper_bound(float(pi.values[0]), modulus, t) + 1e-12


def test_evolve_rejects_wrong_length(z_k2_h2):
    w = updown(z_k2_h2, 0)
    with pytest.raises(DimensionMismatchError):
        evolve(w, np.ones(3) / 3, 5, stationary_measure(z_k2_h2, 0))


def test_mix_until_threshold(z_k2_h2):
    w = updown(z_k2_h2, 1)
    pi = stationary_measure(z_k2_h2, 1)
    trace = mix_until(w, point_mass(w.shape[1], 0), pi, 0.01, 10000)
    assert trace[-1] < 0.01
    assert steps_to_threshold(trace, 0.01) == len(trace) - 1


def test_sampling_is_seeded(z_k2_h2):
    w = updown(z_k2_h2, 1)
    first = sample_walk(w, 0, 25, seed=3)
    assert first == sample_walk(w, 0, 25, seed=3)
    assert len(first) == 26
    for a, b in zip(first, first[1:]):
        assert w.entry(b, a) > 0


@pytest.mark.slow
def test_z_mixes_faster_than_q():
    g = gen_graph("cycle", 6)
    z, q = build_Z(g, 4, 8), build_Q(g, 4, 8)
    k = 3
    assert z.faces(k) == q.faces(k)

    steps = {}
    for c in (z, q):
        w = updown(c, k)
        trace = mix_until(w, point_mass(w.shape[1], 0), stationary_measure(c, k), 0.01, 20000)
        assert is_monotone(trace)
        steps[c.kind] = steps_to_threshold(trace, 0.01)
    assert steps["Z"] is not None and steps["Q"] is not None
    assert steps["Z"] < steps["Q"]
