"""
Service modules for HDX Product Complexes
"""
from .graph_store import load_graph, save_graph
from .complex_store import export_complex, import_complex
from .report_writer import write_csv, write_json

__all__ = [
    'load_graph',
    'save_graph',
    'export_complex',
    'import_complex',
    'write_csv',
    'write_json'
]
