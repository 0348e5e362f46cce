"""Signed Gauss codes for virtual knot diagrams.

A Gauss code records one full traversal of a knot diagram: every
classical crossing is visited twice, once on the over strand and once on
the under strand, and each visit is written as a pass such as ``O3+``
(over strand of crossing 3, positive sign) or ``U3+``.  Virtual
crossings are artifacts of drawing a nonplanar code in the plane, so
they are never recorded; consequently *any* consistent pairing of
passes is a valid code here, whether or not it admits a planar drawing.

Grammar accepted by :func:`parse_gauss`::

    code  :=  pass ((","|whitespace)+ pass)*
    pass  :=  ("O"|"U") crossing-number ("+"|"-")

Letters are case-insensitive, ``#`` starts a comment running to the end
of the line, and a code with no passes is the unknot.
"""

from __future__ import annotations

import dataclasses
import re

OVER = "O"
UNDER = "U"

_PASS_RE = re.compile(r"([OoUu])([0-9]+)([+-])\Z")
_TOKEN_RE = re.compile(r"[^\s,]+")


class GaussCodeError(ValueError):
    """A Gauss code that does not parse or does not validate.

    ``position`` is the character offset of the offending token in the
    input text when the error comes from tokenizing, else ``None``.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


@dataclasses.dataclass(frozen=True)
class Pass:
    """One visit to a crossing: which crossing, which strand, which sign."""

    crossing: int
    strand: str  # OVER or UNDER
    sign: int  # +1 or -1

    def render(self) -> str:
        return f"{self.strand}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclasses.dataclass(frozen=True)
class GaussCode:
    """A cyclic sequence of passes plus the index where traversal starts.

    ``passes`` is stored in the order the code was written; ``basepoint``
    points at the pass considered first.  Structural equality is exact
    (same passes, same basepoint); use :func:`diagram_key` to compare
    codes up to crossing relabeling and basepoint moves.
    """

    passes: tuple[Pass, ...]
    basepoint: int = 0

    def __post_init__(self):
        if self.passes and not 0 <= self.basepoint < len(self.passes):
            raise GaussCodeError(
                f"basepoint {self.basepoint} out of range for {len(self.passes)} passes"
            )

    def traversal(self) -> tuple[Pass, ...]:
        """The passes in traversal order, starting at the basepoint."""
        b = self.basepoint
        return self.passes[b:] + self.passes[:b]

    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(sorted({p.crossing for p in self.passes}))

    def crossing_count(self) -> int:
        return len(self.passes) // 2

    def sign_of(self, crossing: int) -> int:
        for p in self.passes:
            if p.crossing == crossing:
                return p.sign
        raise KeyError(crossing)

    def with_basepoint(self, basepoint: int) -> "GaussCode":
        return GaussCode(self.passes, basepoint)


def parse_gauss(text: str) -> GaussCode:
    """Parse ``text`` into a validated :class:`GaussCode`.

    >>> render(parse_gauss("o1+ u2+,O3+ U1+ O2+ U3+"))
    'O1+ U2+ O3+ U1+ O2+ U3+'
    """
    passes: list[Pass] = []
    offset = 0
    for line in text.splitlines() or [""]:
        body = line.split("#", 1)[0]
        for tok in _TOKEN_RE.finditer(body):
            m = _PASS_RE.match(tok.group())
            if m is None:
                raise GaussCodeError(
                    f"bad pass {tok.group()!r}", position=offset + tok.start()
                )
            strand, num, sign = m.groups()
            passes.append(
                Pass(int(num), strand.upper(), 1 if sign == "+" else -1)
            )
        offset += len(line) + 1
    code = GaussCode(tuple(passes), 0)
    validate(code)
    return code


def validate(code: GaussCode) -> None:
    """Raise :class:`GaussCodeError` unless every crossing appears exactly
    once on each strand and carries one consistent sign."""
    by_crossing: dict[int, list[Pass]] = {}
    for p in code.passes:
        by_crossing.setdefault(p.crossing, []).append(p)
    for c, group in sorted(by_crossing.items()):
        strands = sorted(p.strand for p in group)
        if len(group) != 2 or strands != [OVER, UNDER]:
            raise GaussCodeError(
                f"crossing {c} must appear exactly once over and once under, "
                f"got {' '.join(p.render() for p in group)}"
            )
        if group[0].sign != group[1].sign:
            raise GaussCodeError(f"crossing {c} has inconsistent signs")


def writhe(code: GaussCode) -> int:
    """Sum of crossing signs, each crossing counted once."""
    return sum(p.sign for p in code.passes if p.strand == UNDER)


def render(code: GaussCode) -> str:
    """Render in traversal order, renumbering crossings 1.. by first appearance."""
    relabel: dict[int, int] = {}
    parts = []
    for p in code.traversal():
        num = relabel.setdefault(p.crossing, len(relabel) + 1)
        parts.append(f"{p.strand}{num}{'+' if p.sign > 0 else '-'}")
    return " ".join(parts)


def render_raw(code: GaussCode) -> str:
    """Render in traversal order keeping the crossing numbers as stored."""
    return " ".join(p.render() for p in code.traversal())


def diagram_key(code: GaussCode) -> str:
    """A string equal for two codes iff they agree up to crossing
    relabeling and a basepoint move (same cyclic pass pattern)."""
    n = len(code.passes)
    if n == 0:
        return ""
    return min(render(code.with_basepoint(b)) for b in range(n))
