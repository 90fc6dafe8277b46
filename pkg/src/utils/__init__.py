"""
Utility modules for HDX Product Complexes
"""
from .logger import setup_logger, get_logger
from .validators import *
from .formatters import *

__all__ = [
    'setup_logger',
    'get_logger'
]
