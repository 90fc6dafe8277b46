#!/usr/bin/env python3
"""
Test script for exact class weights, the closed form and the class step probabilities
"""
import sys
from fractions import Fraction
from math import comb
from pathlib import Path

import pytest

# Add the project root to the Python path
sys.path.append(str(Path(__file__).parent))

from src.core.complex import SplitClass, build_Z
from src.core.graphs import gen_graph
from src.core.weights import (
    check_against_complex,
    check_class_counts,
    check_closed_form,
    check_integrality,
    check_ratio_identities,
    class_mass,
    class_step_profile,
    class_weights,
    closed_form_ratio,
    harmonic,
    top_class_mass,
    updown_class_step_prob,
)
from src.errors.complex_errors import InvalidParametersError


def test_recursion_on_single_edge(k2):
    table = class_weights(k2, 2, 4)
    assert table.weights[SplitClass((0, 1), 1, 2)] == 4
    assert table.pure(0, 3) == 0


def test_top_level_weights(c4_weighted):
    table = class_weights(c4_weighted, 3, 6)
    assert table.weights[SplitClass((2, 3), 2, 4)] == Fraction(3, 2)
    assert table.weights[SplitClass((0, 3), 1, 4)] == 5


def test_split_lookup_is_oriented(c4_weighted):
    table = class_weights(c4_weighted, 3, 6)
    # two vertices over 3 and one over 0 on edge (0, 3): j counts the lower endpoint
    assert table.split(3, 0, 2, 3) == table.weights[SplitClass((0, 3), 1, 3)]
    assert table.split(0, 3, 3, 3) == table.pure(0, 3)
    assert table.split(0, 3, 0, 3) == table.pure(3, 3)


def test_closed_form_values():
    assert closed_form_ratio(2, 4, 2, 1) == 4
    assert closed_form_ratio(3, 6, 3, 1) == Fraction(9, 2)
    for H in (2, 3, 4):
        for j in range(1, H + 1):
            assert closed_form_ratio(H, H + 2, H + 1, j) == Fraction(1, comb(H - 1, j - 1))


def test_closed_form_range():
    with pytest.raises(InvalidParametersError):
        closed_form_ratio(3, 6, 1, 1)
    with pytest.raises(InvalidParametersError):
        closed_form_ratio(3, 6, 3, 3)
    with pytest.raises(InvalidParametersError):
        closed_form_ratio(3, 3, 3, 1)


@pytest.mark.parametrize("H", [2, 3])
@pytest.mark.parametrize("s_rule", ["H+1", "2H"])
@pytest.mark.parametrize("graph", ["k2", "c4_weighted"])
def test_weight_oracles_agree(H, s_rule, graph, request):
    g = request.getfixturevalue(graph)
    s = H + 1 if s_rule == "H+1" else 2 * H
    table = class_weights(g, H, s)
    z = build_Z(g, H, s)

    assert check_ratio_identities(table).ok
    assert check_closed_form(table).ok
    assert check_against_complex(table, z).ok
    assert check_class_counts(z).ok


def test_ratio_examples():
    g = gen_graph("cycle", 4)
    table = class_weights(g, 3, 6)
    # k = 3, j = 1: cardinality-4 split classes (2,2) over (1,3)
    assert table.split(0, 1, 2, 4) / table.split(0, 1, 1, 4) == Fraction(1, 2)
    # k = 1: pure vertex weight over the outward split pairs
    outward = table.split(0, 1, 1, 2) + table.split(0, 3, 1, 2)
    assert table.pure(0, 2) / outward == Fraction(5, 6)
    assert harmonic(2, 3) == Fraction(5, 6)
    assert harmonic(4, 3) == 0


def test_class_mass_matches_enumeration(c4_weighted):
    z = build_Z(c4_weighted, 3, 6)
    for edge, w in c4_weighted.edges.items():
        for j in range(1, 4):
            assert top_class_mass(z, edge, j) == class_mass(3, 6, j) * w
    assert [class_mass(3, 6, j) for j in (1, 2, 3)] == [60, 45, 60]


def test_integrality_of_unit_weight_builds(z_c8_h3):
    assert check_integrality(z_c8_h3) == []


def test_q_class_weights_match_complex(q_c8_h3, c8):
    table = class_weights(c8, 3, 6, kind="Q")
    assert check_against_complex(table, q_c8_h3).ok
    assert table.pure(0, 4) == 1


def test_z_step_probabilities_are_symmetric():
    g = gen_graph("cycle", 6)
    table = class_weights(g, 4, 8)
    for k in range(2, 5):
        for j in range(1, k):
            expected = Fraction(j * (k - j), k * (k + 1))
            assert updown_class_step_prob(table, k, j, 1) == expected
            assert updown_class_step_prob(table, k, j, -1) == expected
    assert updown_class_step_prob(table, 2, 1, 1) == Fraction(1, 6)


def test_single_edge_step_probabilities(k2):
    table = class_weights(k2, 4, 8)
    for k in range(2, 5):
        rows = class_step_profile(table, k)
        assert [row[0] for row in rows] == list(range(1, k))
        for j, up, down, stay in rows:
            assert up == down == Fraction(j * (k - j), k * (k + 1))
            assert stay == 1 - 2 * up


def test_q_step_probabilities(c8):
    table = class_weights(c8, 4, 8, kind="Q")
    for k in range(2, 5):
        for j in range(1, k):
            assert updown_class_step_prob(table, k, j, 1) == Fraction(k - j, 2 * (k + 1))
            assert updown_class_step_prob(table, k, j, -1) == Fraction(j, 2 * (k + 1))


def test_class_step_profile_rows(k2):
    table = class_weights(k2, 4, 8)
    rows = class_step_profile(table, 4)
    assert [row[0] for row in rows] == [1, 2, 3]
    for j, up, down, stay in rows:
        assert up + down + stay == 1
    assert rows[1][1] == Fraction(1, 5)


def test_step_probability_range(k2):
    table = class_weights(k2, 3, 6)
    with pytest.raises(InvalidParametersError):
        updown_class_step_prob(table, 1, 1, 1)
    with pytest.raises(InvalidParametersError):
        updown_class_step_prob(table, 3, 1, 0)
