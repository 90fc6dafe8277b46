#!/usr/bin/env python3
"""
Test script for local and global expansion and the verification harness
"""
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

# Add the project root to the Python path
sys.path.append(str(Path(__file__).parent))

from src.core.complex import build_Z, make_face
from src.core.expansion import (
    _compare,
    class_gap_summary,
    compare_constructions,
    expansion_profile,
    global_expansion,
    link_gap,
    local_sweep,
    verify_theorems,
)
from src.core.graphs import gen_graph, graph_spectrum
from src.errors.spectrum_errors import EigenSolverError, LevelOutOfRangeError


def test_local_expansion_of_z(z_c8_h3):
    for k, expected in ((0, 1 / 2), (1, 2 / 3)):
        level = local_sweep(z_c8_h3, k)
        assert level.nu == pytest.approx(expected, abs=1e-9)
        assert len(level.links) == z_c8_h3.level_size(k)
        assert all(entry.gap == pytest.approx(expected, abs=1e-9) for entry in level.links)


def test_local_expansion_of_q(q_c8_h3):
    assert local_sweep(q_c8_h3, 0).nu == pytest.approx(0.5, abs=1e-9)
    level = local_sweep(q_c8_h3, 1)
    assert level.nu == pytest.approx(0.5, abs=1e-9)
    summary = class_gap_summary(level, q_c8_h3)
    assert summary["split"]["min"] == pytest.approx(1.0, abs=1e-9)
    assert summary["pure(deg=2)"]["min"] == pytest.approx(0.5, abs=1e-9)


def test_class_gap_summary_counts(z_c8_h3):
    summary = class_gap_summary(local_sweep(z_c8_h3, 1), z_c8_h3)
    assert summary["split"]["count"] == 240
    assert summary["pure(deg=2)"]["count"] == 120
    for stats in summary.values():
        assert stats["min"] == pytest.approx(2 / 3, abs=1e-9)
        assert stats["max"] == pytest.approx(2 / 3, abs=1e-9)


def test_sweep_is_independent_of_workers(z_k2_h2):
    serial = local_sweep(z_k2_h2, 0, workers=1)
    parallel = local_sweep(z_k2_h2, 0, workers=4)
    assert [e.face for e in serial.links] == [e.face for e in parallel.links]
    assert [e.gap for e in serial.links] == [e.gap for e in parallel.links]
    assert serial.argmin == parallel.argmin


def test_sweep_level_range(z_c8_h3):
    with pytest.raises(LevelOutOfRangeError):
        local_sweep(z_c8_h3, 2)
    with pytest.raises(LevelOutOfRangeError):
        local_sweep(z_c8_h3, -1)


def test_link_failure_carries_face(z_c8_h3, mocker):
    mocker.patch("src.core.expansion.graph_spectrum", side_effect=EigenSolverError("did not converge"))
    face = make_face([(0, 1)])
    with pytest.raises(EigenSolverError) as info:
        link_gap(z_c8_h3, face)
    assert info.value.face == face


def test_global_expansion_of_cycle(z_c8_h3, c8):
    result = global_expansion(z_c8_h3)
    assert result.nu == pytest.approx(graph_spectrum(c8).gap / (11 / 6), abs=1e-9)
    assert result.omega2 == pytest.approx(result.predicted_omega2, abs=1e-9)
    assert result.branch == "lazy"


def test_global_expansion_of_complete_graph(k4):
    result = global_expansion(build_Z(k4, 2, 4))
    assert result.nu == pytest.approx(8 / 9, abs=1e-9)
    assert result.branch == "lazy"


@pytest.mark.parametrize("graph, H, s, omega2", [
    ("c4", 1, 3, 0.5),
    ("k2", 2, 3, 1 / 6),
])
def test_global_prediction_bipartite_branch(graph, H, s, omega2, request):
    result = global_expansion(build_Z(request.getfixturevalue(graph), H, s))
    assert result.branch == "bipartite"
    assert result.predicted_omega2 == pytest.approx(omega2, abs=1e-12)
    assert result.omega2 == pytest.approx(omega2, abs=1e-9)


def test_expansion_is_scale_invariant(c4_weighted):
    base = expansion_profile(build_Z(c4_weighted, 2, 4))
    scaled = expansion_profile(build_Z(c4_weighted.scaled(Fraction(9, 4)), 2, 4))
    for k in (-1, 0):
        assert base.nu(k) == pytest.approx(scaled.nu(k), abs=1e-10)


def test_descent_on_measured_profile(z_c8_h3):
    profile = expansion_profile(z_c8_h3)
    for k in range(0, 2):
        assert profile.nu(k - 1) >= 2 - 1 / profile.nu(k) - 1e-9


def test_verify_cycle_passes(c8):
    report = verify_theorems(c8, 3, 6)
    assert report.ok, [check.check_id for check in report.failed()]
    assert report.hypotheses == []
    ids = {check.check_id for check in report.checks}
    for required in ("z.local.k=0", "z.local.k=1", "z.local_per_link.k=1", "z.global",
                     "z.global_prediction.lazy", "z.updown_lower.k=2", "z.updown_upper.k=2",
                     "z.local_to_global.k=2", "z.descent.k=1", "weights.closed_form",
                     "weights.integrality", "q.local.k=1", "z_vs_q.updown.k=2", "z.spectra_match.k=1"):
        assert required in ids
    assert all(check.passed is True for check in report.checks)

    document = json.loads(json.dumps(report.to_document()))
    record = document["checks"][0]
    assert set(record) >= {"check_id", "anchor", "expected", "computed", "tolerance", "pass"}


def test_verify_skips_theorems_outside_hypotheses(k2):
    report = verify_theorems(k2, 2, 3)
    assert len(report.hypotheses) == 2
    local = next(check for check in report.checks if check.check_id == "z.local.k=0")
    assert local.passed is None
    assert local.computed is None
    assert local.skipped_reason.startswith("hypotheses not met")
    assert any(check.check_id == "weights.ratio_identities" and check.passed for check in report.checks)


def test_verify_explore_reports_values(k2):
    report = verify_theorems(k2, 2, 3, explore=True)
    local = next(check for check in report.checks if check.check_id == "z.local.k=0")
    assert local.passed is None
    assert local.computed is not None
    assert local.skipped_reason.startswith("explore")
    assert any(check.check_id.startswith("z.local_class.k=0") for check in report.checks)


def test_verify_explore_on_unit_weight_graph_runs_q_baseline():
    report = verify_theorems(gen_graph("complete", 4), 3, 5, explore=True)
    assert report.graph["min_degree"] == 3
    ids = {check.check_id for check in report.checks}
    assert {"z.local_class.k=0.pure(deg=3)", "z.local_class.k=1.split"} <= ids
    assert {"q.local.k=0", "q.local.k=1", "z_vs_q.updown.k=2"} <= ids
    group = next(check for check in report.checks if check.check_id == "z.local_class.k=1.split")
    assert group.passed is None and group.computed is not None


def test_z_vs_q_gap_is_strict(c8):
    report = verify_theorems(c8, 3, 6)
    record = next(check for check in report.checks if check.check_id == "z_vs_q.updown.k=2")
    assert record.relation == "gt"
    assert record.passed is True
    assert record.computed > record.expected


def test_compare_results_are_plain_bools():
    assert type(_compare("eq", 0.5, np.float64(0.5), 1e-9)) is bool
    assert _compare("gt", 0.5, 0.5, 1e-9) is False
    assert _compare("ge", 0.5, 0.5 - 1e-12, 1e-9) is True


def test_compare_constructions():
    rows = compare_constructions(gen_graph("cycle", 5), 2, 4)
    assert [row['k'] for row in rows] == [0, 1]
    assert rows[0]['z_local'] == pytest.approx(0.5, abs=1e-9)
    assert rows[0]['q_local'] == pytest.approx(0.5, abs=1e-9)
    assert rows[1]['z_local'] is None
    assert all(np.isfinite(row['z_updown_gap']) for row in rows)


@pytest.mark.slow
def test_z_top_updown_gap_beats_q_on_six_cycle():
    rows = compare_constructions(gen_graph("cycle", 6), 4, 8)
    top = rows[3]
    assert top["k"] == 3
    assert top["z_updown_gap"] > top["q_updown_gap"]
