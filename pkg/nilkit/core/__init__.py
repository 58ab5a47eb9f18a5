"""
General classes, functions, utilities that are used throughout nilkit.
"""
from nilkit.core.logging import logger

__all__ = ['logger']
