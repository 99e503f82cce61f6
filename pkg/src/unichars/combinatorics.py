"""Partitions, bipartitions and the class/family validity rules.

Conjugacy classes of the relevant Weyl groups (and hence maximal torus types
and regular semisimple classes) are labelled by pairs of partitions
``(lambda, mu)`` of the rank ``n``.  For the two rational forms of the
even orthogonal groups only half of those pairs occur: the untwisted form
takes ``mu`` with an even number of parts, the twisted form an odd number.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Malformed textual input for a partition, bipartition or symbol."""


class Family(Enum):
    """Classical group family: odd orthogonal, symplectic, or one of the
    two rational forms of even orthogonal groups."""

    B = "B"
    C = "C"
    D_PLUS = "D+"
    D_MINUS = "D-"

    @classmethod
    def from_text(cls, text: str) -> "Family":
        for fam in cls:
            if fam.value == text:
                return fam
        raise ParseError(f"unknown family {text!r} (expected B, C, D+ or D-)")

    @property
    def is_d_side(self) -> bool:
        return self in (Family.D_PLUS, Family.D_MINUS)

    def __str__(self) -> str:
        return self.value


def normalize_parts(parts: Iterable[int]) -> tuple[int, ...]:
    """Sort weakly decreasing and drop zero parts; reject negatives."""
    out = []
    for p in parts:
        if p < 0:
            raise ParseError(f"negative part {p}")
        if p > 0:
            out.append(p)
    out.sort(reverse=True)
    return tuple(out)


@dataclass(frozen=True)
class BiPartition:
    """A pair of partitions, each stored weakly decreasing."""

    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", normalize_parts(self.lam))
        object.__setattr__(self, "mu", normalize_parts(self.mu))

    @property
    def size(self) -> int:
        return sum(self.lam) + sum(self.mu)

    def text(self) -> str:
        return format_bipartition(self)

    def __str__(self) -> str:
        return self.text()


def _parse_parts(text: str) -> list[int]:
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            parts.append(int(tok))
        except ValueError:
            raise ParseError(f"bad partition token {tok!r}") from None
    return parts


def parse_bipartition(text: str) -> BiPartition:
    """Parse ``"a,b,...|c,d,..."`` into a normalized bipartition.

    Either side may be empty; parts are sorted weakly decreasing and zero
    parts are dropped.
    """
    if text.count("|") != 1:
        raise ParseError(f"bipartition {text!r} must contain exactly one '|'")
    left, right = text.split("|")
    return BiPartition(tuple(_parse_parts(left)), tuple(_parse_parts(right)))


def format_bipartition(bp: BiPartition) -> str:
    return ",".join(map(str, bp.lam)) + "|" + ",".join(map(str, bp.mu))


def bipartition_size(bp: BiPartition) -> int:
    return bp.size


def validate_class(bp: BiPartition, family: Family) -> bool:
    """Whether ``bp`` labels a class of the family's Weyl group.

    Every bipartition works for B and C.  For the even orthogonal forms the
    parity of the number of parts of ``mu`` selects the rational form.
    """
    if family in (Family.B, Family.C):
        return True
    if family is Family.D_PLUS:
        return len(bp.mu) % 2 == 0
    return len(bp.mu) % 2 == 1


def degenerate_class(bp: BiPartition, family: Family) -> bool:
    """Classes with empty ``mu`` and all parts of ``lambda`` even split in two
    inside the untwisted even orthogonal group; we keep them unsplit and flag
    them."""
    return (
        family is Family.D_PLUS
        and not bp.mu
        and bool(bp.lam)
        and all(p % 2 == 0 for p in bp.lam)
    )


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n, parts weakly decreasing."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return

    def rec(rest: int, maxpart: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield prefix
            return
        for p in range(min(rest, maxpart), 0, -1):
            yield from rec(rest - p, p, prefix + (p,))

    yield from rec(n, n, ())


def bipartitions(n: int) -> Iterator[BiPartition]:
    """All pairs of partitions with total size n."""
    for k in range(n + 1):
        for lam in partitions(k):
            for mu in partitions(n - k):
                yield BiPartition(lam, mu)
