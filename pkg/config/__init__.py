"""
Configuration package for the HDX product-complex toolkit
"""
from .settings import *

__all__ = ['settings']
