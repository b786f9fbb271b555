"""Exact computations with tau-tilting theory over small elementary algebras."""
from __future__ import annotations

__version__ = "0.1.0"
