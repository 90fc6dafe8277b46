"""
Report writer: JSON documents and CSV tables, written atomically
"""
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Sequence, Union

import pandas as pd

from config.settings import FLOAT_DIGITS


def write_text(text: str, path: Union[str, Path]) -> Path:
    """
    Write text to a file through a temporary file and an atomic rename

    Args:
        text: File contents
        path: Target file

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def json_text(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"


def write_json(document: Dict[str, Any], path: Union[str, Path]) -> Path:
    """Write a JSON document (atomic)."""
    return write_text(json_text(document), path)


def csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=f"%.{FLOAT_DIGITS}g", lineterminator="\n")


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a table as CSV with FLOAT_DIGITS significant digits (atomic)."""
    return write_text(csv_text(frame), path)


def trace_frame(trace: Sequence[float]) -> pd.DataFrame:
    """`step,tv` rows; step 0 is the start distribution."""
    return pd.DataFrame({'step': range(len(trace)), 'tv': [float(x) for x in trace]})


def spectrum_frame(level: int, walk: str, eigenvalues: Sequence[float]) -> pd.DataFrame:
    """`level,walk,i,eigenvalue` rows; i counts from 1 in descending order."""
    return pd.DataFrame({
        'level': [level] * len(eigenvalues),
        'walk': [walk] * len(eigenvalues),
        'i': range(1, len(eigenvalues) + 1),
        'eigenvalue': [float(x) for x in eigenvalues],
    })
