"""Braid words whose closures are knots."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

__all__ = ["BraidWord", "BraidError", "LinkNotKnotError", "parse_braid", "closure_components"]


class BraidError(ValueError):
    pass


class LinkNotKnotError(BraidError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strands`` strands; letter ``+i`` is sigma_i, ``-i`` its inverse."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for w in self.letters:
            if w == 0 or abs(w) >= self.strands:
                raise BraidError(f"generator {w} out of range for {self.strands} strands")

    @property
    def crossings(self) -> int:
        return len(self.letters)

    @property
    def c(self) -> int:
        """Crossing count minus two, floored at zero."""
        return max(0, self.crossings - 2)

    @property
    def writhe(self) -> int:
        return sum(1 if w > 0 else -1 for w in self.letters)

    def permutation(self) -> list[int]:
        """Where each bottom position ends up at the top of the braid."""
        pos = list(range(self.strands))
        for w in self.letters:
            i = abs(w) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        # pos[j] = which starting strand sits at position j
        perm = [0] * self.strands
        for j, start in enumerate(pos):
            perm[start] = j
        return perm

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-w for w in self.letters))

    def __str__(self) -> str:
        return f"{self.strands}: " + " ".join(str(w) for w in self.letters) if self.letters else f"{self.strands}:"

    def to_json_obj(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BraidWord":
        b = cls(int(obj["strands"]), tuple(obj["letters"]))
        _require_knot(b)
        return b


def closure_components(b: BraidWord) -> int:
    """Number of cycles of the closure permutation."""
    perm = b.permutation()
    seen = [False] * b.strands
    cycles = 0
    for start in range(b.strands):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return cycles


def _require_knot(b: BraidWord) -> None:
    k = closure_components(b)
    if k != 1:
        raise LinkNotKnotError(f"closure of {b} is a {k}-component link, not a knot")


_BRAID_RE = re.compile(r"^\s*(\d+)\s*:\s*((?:[-+]?\d+\s*)*)$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``"s: w1 w2 ..."``; the closure must be a knot."""
    m = _BRAID_RE.match(text)
    if not m:
        raise BraidError(f"malformed braid word {text!r}")
    strands = int(m.group(1))
    letters = tuple(int(t) for t in m.group(2).split())
    b = BraidWord(strands, letters)
    _require_knot(b)
    return b


def dumps(b: BraidWord) -> str:
    return json.dumps(b.to_json_obj())
