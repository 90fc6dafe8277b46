"""
Complex JSON service: export and import weighted complexes with exact "p/q" weights
"""
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from config.settings import COMPLEX_FORMAT_VERSION
from src.core.complex import Complex, is_downward_closed, make_face, propagate, verify_balance
from src.core.graphs import WeightedGraph
from src.core.weights import class_weights
from src.errors.complex_errors import ComplexFormatError
from src.errors.graph_errors import GraphError
from src.services.report_writer import json_text, write_text
from src.utils.formatters import format_class, format_rational, parse_rational
from src.utils.logger import get_logger

logger = get_logger("hdx.complex_store")


def complex_to_document(c: Complex, include_class_weights: bool = True,
                        config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Serialize a complex

    Args:
        c: Z or Q complex built over a graph
        include_class_weights: Attach the recursion class weights
        config: Run configuration to embed under "config"

    Returns:
        JSON-ready document
    """
    if c.source is None:
        raise ComplexFormatError("only complexes built over a graph can be exported")
    g = c.source
    document = {
        'format': COMPLEX_FORMAT_VERSION,
        'header': {
            'kind': c.kind,
            'H': c.H,
            's': c.s,
            'n': g.n,
            'edges': [[u, v, format_rational(w)] for (u, v), w in sorted(g.edges.items())],
        },
        'levels': {
            str(k): [
                {'face': [[x.v, x.b] for x in face], 'weight': format_rational(c.weight(face))}
                for face in c.faces(k)
            ]
            for k in c.levels
        },
    }

    if include_class_weights and c.kind in ("Z", "Q"):
        table = class_weights(g, c.H, c.s, c.kind, allow_weighted=not g.is_unit_weighted)
        document['class_weights'] = [
            {'class': format_class(cls), 'weight': format_rational(w)}
            for cls, w in sorted(table.weights.items(), key=lambda item: (item[0].k, format_class(item[0])))
        ]
    if config is not None:
        document['config'] = config
    return document


def complex_from_document(document: Dict[str, Any]) -> Complex:
    """
    Rebuild a complex from its document and check its balance

    Raises:
        ComplexFormatError: Wrong version, missing keys, unparsable weights or an
            unbalanced weight function
    """
    if not isinstance(document, dict) or document.get('format') != COMPLEX_FORMAT_VERSION:
        found = document.get('format') if isinstance(document, dict) else type(document).__name__
        raise ComplexFormatError(f"expected format {COMPLEX_FORMAT_VERSION!r}, found {found!r}")

    try:
        header = document['header']
        H, s, kind, n = int(header['H']), int(header['s']), str(header['kind']), int(header['n'])
        graph = WeightedGraph.from_edges(n, [(u, v, parse_rational(w)) for u, v, w in header['edges']])

        weights = {}
        for key, entries in document['levels'].items():
            level = int(key)
            weights[level] = {}
            for entry in entries:
                face = make_face(tuple(pair) for pair in entry['face'])
                if len(face) != level + 1:
                    raise ComplexFormatError(f"face {entry['face']} listed at level {level}")
                weights[level][face] = parse_rational(entry['weight'])
    except (KeyError, TypeError, ValueError, ZeroDivisionError, GraphError) as e:
        if isinstance(e, ComplexFormatError):
            raise
        raise ComplexFormatError(f"malformed complex document: {e}") from e

    if sorted(weights) != list(range(-1, H + 1)):
        raise ComplexFormatError(f"levels {sorted(weights)} do not cover -1..{H}")

    _, cofaces = propagate(H, weights[H])
    c = Complex(H, kind, weights, s=s, source=graph, cofaces=cofaces)
    if not is_downward_closed(c):
        raise ComplexFormatError("face lists are not downward closed (a subface of a listed face is missing)")
    balance = verify_balance(c)
    if not balance.ok:
        raise ComplexFormatError(f"weights are not balanced ({balance.first.rule} rule fails at {balance.first.face})")
    return c


def export_complex(c: Complex, path: Union[str, Path], include_class_weights: bool = True,
                   config: Optional[Dict[str, Any]] = None) -> Path:
    """Write the complex document (atomic)."""
    path = write_text(json_text(complex_to_document(c, include_class_weights, config)), path)
    logger.info(f"Exported {c!r} to {path}")
    return path


def import_complex(path: Union[str, Path]) -> Complex:
    """
    Load a complex document

    Args:
        path: JSON file written by export_complex

    Returns:
        Balanced complex with its source graph
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ComplexFormatError(f"{path} is not JSON: {e}") from e
    c = complex_from_document(document)
    logger.info(f"Imported {c!r} from {path}")
    return c
