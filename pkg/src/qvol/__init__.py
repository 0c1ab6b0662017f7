"""Exact colored Jones polynomials and their growth at roots of unity."""

from __future__ import annotations

__version__ = "0.1.0"
