"""Braid words for the knots used in tests, demos and the verify suite."""

from __future__ import annotations

from .braid import BraidWord, parse_braid

CORPUS: dict[str, str] = {
    "3_1": "2: 1 1 1",
    "4_1": "3: 1 -2 1 -2",
    "5_1": "2: 1 1 1 1 1",
    "7_1": "2: 1 1 1 1 1 1 1",
    "6_3": "3: -1 2 2 -1 -1 2",
}

# presentations of the unknot on 1, 2 and 3 strands
UNKNOTS: tuple[str, ...] = ("1:", "2: 1", "2: -1", "3: 1 2", "3: -1 2", "3: 1 -2", "3: -1 -2", "3: 2 1")


def knot(name: str) -> BraidWord:
    try:
        return parse_braid(CORPUS[name])
    except KeyError:
        raise KeyError(f"unknown knot {name!r}; corpus has {sorted(CORPUS)}") from None
