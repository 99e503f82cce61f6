"""The symbol calculus behind unipotent characters of classical groups.

A symbol is an unordered pair of strictly increasing sets of non-negative
integers, considered up to simultaneous shifts (prepend 0 to both rows after
incrementing every entry) and row swap.  Rank and defect are the two
invariants of the equivalence class; the defect decides which group family
the symbol belongs to: odd defect for B/C, defect 0 mod 4 for the untwisted
and 2 mod 4 for the twisted even orthogonal groups.

Hooks move an entry down by d inside its row, cohooks move it to the other
row; both carry a sign and reduce the rank by d.  These moves drive the
character value recursion in :mod:`unichars.mn_rule`.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .combinatorics import ParseError, partitions

Rows = tuple[tuple[int, ...], tuple[int, ...]]


class KindTag(Enum):
    BC = "BC"
    D_PLUS = "D+"
    D_MINUS = "D-"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SymbolKind:
    tag: KindTag
    degenerate: bool


@dataclass(frozen=True)
class Symbol:
    """A symbol with two strictly increasing rows.

    Construction does not shift-reduce or reorder the rows; use
    :func:`normalize` for the canonical representative of the equivalence
    class.
    """

    row_x: tuple[int, ...]
    row_y: tuple[int, ...]

    def __post_init__(self) -> None:
        for row in (self.row_x, self.row_y):
            if any(e < 0 for e in row):
                raise ParseError(f"negative symbol entry in {row}")
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                raise ParseError(f"row {row} is not strictly increasing")

    @property
    def rows(self) -> Rows:
        return (self.row_x, self.row_y)

    def text(self) -> str:
        return format_symbol(self)

    def __str__(self) -> str:
        return self.text()


def parse_symbol(text: str) -> Symbol:
    """Parse ``"x1,x2,...|y1,y2,..."`` with strictly increasing entries."""
    if text.count("|") != 1:
        raise ParseError(f"symbol {text!r} must contain exactly one '|'")

    def side(chunk: str) -> tuple[int, ...]:
        toks = [t.strip() for t in chunk.split(",") if t.strip()]
        try:
            return tuple(int(t) for t in toks)
        except ValueError:
            raise ParseError(f"bad symbol token in {chunk!r}") from None

    left, right = text.split("|")
    return Symbol(side(left), side(right))


def format_symbol(s: Symbol) -> str:
    return ",".join(map(str, s.row_x)) + "|" + ",".join(map(str, s.row_y))


def _reduce_rows(a: tuple[int, ...], b: tuple[int, ...]) -> Rows:
    # inverse shifts: drop a leading 0 from both rows, decrement the rest
    while a and b and a[0] == 0 and b[0] == 0:
        a = tuple(e - 1 for e in a[1:])
        b = tuple(e - 1 for e in b[1:])
    if (-len(a), a) > (-len(b), b):
        a, b = b, a
    return a, b


def normalize(s: Symbol) -> Symbol:
    """Canonical representative: fully inverse-shifted, rows ordered by
    (length descending, then lexicographic).  Idempotent."""
    a, b = _reduce_rows(s.row_x, s.row_y)
    return Symbol(a, b)


def shift(s: Symbol, times: int = 1) -> Symbol:
    """Apply the shift operation (equivalence-preserving) ``times`` times."""
    a, b = s.row_x, s.row_y
    for _ in range(times):
        a = (0,) + tuple(e + 1 for e in a)
        b = (0,) + tuple(e + 1 for e in b)
    return Symbol(a, b)


def rank(s: Symbol) -> int:
    z = len(s.row_x) + len(s.row_y)
    return sum(s.row_x) + sum(s.row_y) - (z - 1) ** 2 // 4 if z else 0


def defect(s: Symbol) -> int:
    return abs(len(s.row_x) - len(s.row_y))


def kind(s: Symbol) -> SymbolKind:
    d = defect(s)
    if d % 2 == 1:
        tag = KindTag.BC
    elif d % 4 == 0:
        tag = KindTag.D_PLUS
    else:
        tag = KindTag.D_MINUS
    ns = normalize(s)
    return SymbolKind(tag, ns.row_x == ns.row_y)


@dataclass(frozen=True)
class HookMove:
    """One hook or cohook removal: the resulting symbol (not necessarily
    canonical), its sign, and the site (row index, entry, entry - d)."""

    result: Symbol
    sign: int
    site: tuple[int, int, int]


def _remove_insert(row: tuple[int, ...], remove: int, insert: int) -> tuple[int, ...]:
    out = [e for e in row if e != remove]
    out.insert(bisect_left(out, insert), insert)
    return tuple(out)


def hooks(s: Symbol, d: int) -> list[HookMove]:
    """All d-hooks of the canonical representative of ``s``.

    A d-hook at entry x replaces x by x - d within the same row; it exists
    when x - d is non-negative and not already in that row.  The sign is
    (-1)^m with m the number of row entries strictly between x - d and x.
    """
    if d < 1:
        raise ValueError("hook length must be positive")
    ns = normalize(s)
    moves = []
    for i, row in enumerate(ns.rows):
        for x in row:
            t = x - d
            if t < 0 or t in row:
                continue
            m = bisect_left(row, x) - bisect_left(row, t)
            new = list(ns.rows)
            new[i] = _remove_insert(row, x, t)
            moves.append(HookMove(Symbol(*new), -1 if m % 2 else 1, (i, x, t)))
    return moves


def cohooks(s: Symbol, d: int) -> list[HookMove]:
    """All d-cohooks: entry x leaves its row and x - d joins the other row.

    Exists when x - d is non-negative and not already in the other row.  The
    sign is (-1)^m with m = #{entries below x in x's row} + #{entries below
    x - d in the other row}.
    """
    if d < 1:
        raise ValueError("cohook length must be positive")
    ns = normalize(s)
    moves = []
    for i, row in enumerate(ns.rows):
        other = ns.rows[1 - i]
        for x in row:
            t = x - d
            if t < 0 or t in other:
                continue
            m = bisect_left(row, x) + bisect_left(other, t)
            src = tuple(e for e in row if e != x)
            dst = list(other)
            dst.insert(bisect_left(dst, t), t)
            new = [None, None]
            new[i] = src
            new[1 - i] = tuple(dst)
            moves.append(HookMove(Symbol(*new), -1 if m % 2 else 1, (i, x, t)))
    return moves


def max_entry(s: Symbol) -> int:
    entries = s.row_x + s.row_y
    return max(entries) if entries else 0


def dual(s: Symbol, m: int) -> Symbol:
    """The dual symbol with respect to the window {0, ..., m}.

    Each row is replaced by the complement of its reflection x -> m - x.
    Requires every entry of ``s`` to be at most m.  Duality preserves rank,
    defect and all hook/cohook lengths, and is an involution up to
    equivalence.
    """
    if s.row_x or s.row_y:
        if max_entry(s) > m:
            raise ValueError(f"symbol entry exceeds duality bound m={m}")
    window = range(m + 1)
    refl_x = {m - x for x in s.row_x}
    refl_y = {m - y for y in s.row_y}
    return Symbol(
        tuple(e for e in window if e not in refl_x),
        tuple(e for e in window if e not in refl_y),
    )


def dual_class(s: Symbol) -> Symbol:
    """Canonical dual: dualize the canonical representative inside its own
    entry window.  Well defined on equivalence classes."""
    ns = normalize(s)
    return normalize(dual(ns, max_entry(ns)))


def _min_rank(d: int) -> int:
    # smallest rank carried by a symbol of defect d
    return (d * d - 1) // 4 if d % 2 else (d * d) // 4


def _symbol_from_bipartition(
    alpha: tuple[int, ...], beta: tuple[int, ...], d: int
) -> Symbol:
    # rows of sizes (b + d, b) built from the two partitions, padded with zeros
    b = max(len(beta), len(alpha) - d)
    a = b + d
    pad_a = tuple(reversed(alpha)) + (0,) * (a - len(alpha))
    pad_b = tuple(reversed(beta)) + (0,) * (b - len(beta))
    row_x = tuple(sorted(p + i for i, p in enumerate(sorted(pad_a))))
    row_y = tuple(sorted(p + i for i, p in enumerate(sorted(pad_b))))
    return normalize(Symbol(row_x, row_y))


@lru_cache(maxsize=None)
def enumerate_symbols(n: int, tag: KindTag) -> tuple[Symbol, ...]:
    """All canonical symbols of rank n in the given defect class, each once.

    Degenerate symbols (equal rows) appear once; they label two characters
    each.
    """
    if n < 0:
        raise ValueError("rank must be non-negative")
    defects = {
        KindTag.BC: (1, 3, 5, 7, 9, 11),
        KindTag.D_PLUS: (0, 4, 8, 12),
        KindTag.D_MINUS: (2, 6, 10),
    }[tag]
    seen: set[Rows] = set()
    out: list[Symbol] = []
    for d in defects:
        budget = n - _min_rank(d)
        if budget < 0:
            continue
        for k in range(budget + 1):
            for alpha in partitions(k):
                for beta in partitions(budget - k):
                    sym = _symbol_from_bipartition(alpha, beta, d)
                    if sym.rows in seen:
                        continue
                    assert rank(sym) == n and defect(sym) == d
                    seen.add(sym.rows)
                    out.append(sym)
    out.sort(key=lambda s: (len(s.row_x) + len(s.row_y), s.rows))
    return tuple(out)


def trivial_symbol(n: int, tag: KindTag) -> Symbol:
    """Symbol of the trivial character (generic degree 1) for rank n."""
    if tag is KindTag.BC:
        return normalize(Symbol((n,), ()))
    if n == 0:
        if tag is KindTag.D_MINUS:
            raise ValueError("no twisted form in rank 0")
        return Symbol((), ())
    if tag is KindTag.D_PLUS:
        return normalize(Symbol((n,), (0,)))
    return normalize(Symbol((0, n), ()))


def steinberg_symbol(n: int, tag: KindTag) -> Symbol:
    """Symbol of the Steinberg character: the dual of the trivial one."""
    return dual_class(trivial_symbol(n, tag))
