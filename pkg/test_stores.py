#!/usr/bin/env python3
"""
Test script for the edge-list store, the complex JSON store and the report writer
"""
import json
import sys
from fractions import Fraction
from pathlib import Path

import pandas as pd
import pytest

# Add the project root to the Python path
sys.path.append(str(Path(__file__).parent))

from config.settings import COMPLEX_FORMAT_VERSION
from src.core.complex import build_Q, build_Z, verify_balance
from src.errors.complex_errors import ComplexFormatError
from src.errors.graph_errors import DisconnectedGraphError, DuplicateEdgeError, GraphParseError, SelfLoopError
from src.services.complex_store import complex_from_document, complex_to_document, export_complex, import_complex
from src.services.graph_store import graph_to_text, load_graph, save_graph
from src.services.report_writer import spectrum_frame, trace_frame, write_csv, write_json
from src.utils.formatters import format_float


def _write(tmp_path, text, name="g.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_triangle(tmp_path):
    g = load_graph(_write(tmp_path, "# triangle\n0 1\n\n1 2\n2 0\n"))
    assert g.n == 3
    assert sorted(g.edges) == [(0, 1), (0, 2), (1, 2)]
    assert g.is_unit_weighted


def test_load_rational_weight(tmp_path):
    g = load_graph(_write(tmp_path, "0 1 1/2\n"))
    assert g.weight(0, 1) == Fraction(1, 2)
    g = load_graph(_write(tmp_path, "0 1 0.25\n1 2 3\n", "h.txt"))
    assert g.weight(0, 1) == Fraction(1, 4)


@pytest.mark.parametrize("text, error, line", [
    ("0 0\n", SelfLoopError, 1),
    ("0 1\n1 0\n", DuplicateEdgeError, 2),
    ("0 1\nx 2\n", GraphParseError, 2),
    ("0 1\n1 2 -1\n", GraphParseError, 2),
    ("0 1\n1 2 abc\n", GraphParseError, 2),
    ("0 1 2 3\n", GraphParseError, 1),
])
def test_load_errors_carry_line_numbers(tmp_path, text, error, line):
    with pytest.raises(error) as info:
        load_graph(_write(tmp_path, text))
    assert info.value.line_number == line


def test_load_disconnected(tmp_path):
    with pytest.raises(DisconnectedGraphError):
        load_graph(_write(tmp_path, "0 1\n2 3\n"))


def test_save_and_reload(tmp_path, c4_weighted):
    path = save_graph(c4_weighted, tmp_path / "out" / "c4.txt")
    assert "0 1\n" in path.read_text()
    assert "0 3 5/1\n" in path.read_text()
    assert load_graph(path).edges == c4_weighted.edges
    assert graph_to_text(c4_weighted) == path.read_text()


def test_complex_document_layout(z_k2_h2):
    document = complex_to_document(z_k2_h2)
    assert document["format"] == COMPLEX_FORMAT_VERSION
    assert document["header"] == {"kind": "Z", "H": 2, "s": 4, "n": 2, "edges": [[0, 1, "1/1"]]}
    assert sorted(document["levels"], key=int) == ["-1", "0", "1", "2"]
    assert len(document["levels"]["2"]) == 24
    assert document["levels"]["-1"][0]["face"] == []
    entry = next(c for c in document["class_weights"] if c["class"] == "(1,1)_(0,1)")
    assert entry["weight"] == "4/1"


def test_complex_document_embeds_config(z_k2_h2):
    config = {"subcommand": "build", "H": 2, "s": 4}
    document = complex_to_document(z_k2_h2, config=config)
    assert document["config"] == config
    assert complex_from_document(document).face_counts() == z_k2_h2.face_counts()
    assert "config" not in complex_to_document(z_k2_h2)


def test_complex_round_trip_is_exact(tmp_path, c4_weighted):
    z = build_Z(c4_weighted, 2, 4)
    path = export_complex(z, tmp_path / "z.json")
    loaded = import_complex(path)
    assert loaded.kind == "Z" and loaded.H == 2 and loaded.s == 4
    assert loaded.source.edges == c4_weighted.edges
    for k in z.levels:
        assert loaded.level_weights(k) == z.level_weights(k)
    assert verify_balance(loaded).ok


def test_q_round_trip(tmp_path, c8):
    q = build_Q(c8, 2, 3)
    loaded = import_complex(export_complex(q, tmp_path / "q.json"))
    assert loaded.kind == "Q"
    assert loaded.faces(2) == q.faces(2)


def test_import_rejects_bad_documents(tmp_path, z_k2_h2):
    document = complex_to_document(z_k2_h2)

    with pytest.raises(ComplexFormatError):
        complex_from_document({**document, "format": "hdx-complex/0"})

    broken = json.loads(json.dumps(document))
    broken["levels"]["2"][0]["weight"] = "2/1"
    with pytest.raises(ComplexFormatError):
        complex_from_document(broken)

    broken = json.loads(json.dumps(document))
    del broken["levels"]["1"]
    with pytest.raises(ComplexFormatError):
        complex_from_document(broken)

    broken = json.loads(json.dumps(document))
    broken["levels"]["0"][0]["weight"] = "x"
    with pytest.raises(ComplexFormatError):
        complex_from_document(broken)

    broken = json.loads(json.dumps(document))
    broken["levels"]["0"] = broken["levels"]["0"][1:]
    with pytest.raises(ComplexFormatError, match="downward closed"):
        complex_from_document(broken)

    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ComplexFormatError):
        import_complex(path)


def test_csv_frames(tmp_path):
    path = write_csv(trace_frame([1.0, 0.5, 0.25]), tmp_path / "trace.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["step", "tv"]
    assert list(frame["step"]) == [0, 1, 2]

    text = write_csv(spectrum_frame(0, "updown", [1.0, 1 / 3]), tmp_path / "spectrum.csv").read_text()
    assert text.splitlines()[0] == "level,walk,i,eigenvalue"
    assert text.splitlines()[2] == "0,updown,2,0.33333333333333331"


def test_json_writer_is_atomic(tmp_path):
    path = write_json({"a": 1}, tmp_path / "report.json")
    assert json.loads(path.read_text()) == {"a": 1}
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


def test_float_formatting():
    assert format_float(0.5) == "0.5"
    assert format_float(0.4) == "0.40000000000000002"
    assert float(format_float(1 / 3)) == 1 / 3
