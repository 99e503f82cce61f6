"""Character values on regular semisimple classes via hook/cohook recursion.

The value of the unipotent character labelled by a symbol S at a regular
semisimple element in a torus of type (lambda, mu) is computed one part at a
time: a part d of lambda is resolved through the signed sum over d-hooks of
S, a part d of mu through the signed sum over d-cohooks with an extra global
factor of -1 per cohook step for the even orthogonal families.  Branches
without the required hook or cohook contribute 0; the surviving chains end
at a rank-0 symbol, which contributes 1.  The result does not depend on the
order in which parts are consumed, which the brute-force oracle
:func:`value_oracle` exploits as an independent check.

For a degenerate symbol (two equal rows) the computed number is the value of
the sum of the two characters sharing that symbol; values on degenerate
classes are likewise reported at the unsplit level.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, Sequence

from .combinatorics import BiPartition, Family, degenerate_class, validate_class
from .symbols import Rows, Symbol, defect, kind, KindTag, normalize, rank

_RANK0 = (((0,), ()), ((), ()))


class ContractError(ValueError):
    """Symbol, class and family do not fit together."""


@dataclass(frozen=True)
class CharacterValue:
    value: int
    degenerate_character: bool
    degenerate_class: bool


def _reduce(a: tuple[int, ...], b: tuple[int, ...]) -> Rows:
    while a and b and a[0] == 0 and b[0] == 0:
        a = tuple(e - 1 for e in a[1:])
        b = tuple(e - 1 for e in b[1:])
    if (-len(a), a) > (-len(b), b):
        a, b = b, a
    return a, b


def _hook_moves(rows: Rows, d: int) -> list[tuple[Rows, int]]:
    moves = []
    for i in (0, 1):
        row = rows[i]
        for x in row:
            t = x - d
            if t < 0 or t in row:
                continue
            m = bisect_left(row, x) - bisect_left(row, t)
            new = [e for e in row if e != x]
            new.insert(bisect_left(new, t), t)
            pair = (tuple(new), rows[1]) if i == 0 else (rows[0], tuple(new))
            moves.append((_reduce(*pair), -1 if m % 2 else 1))
    return moves


def _cohook_moves(rows: Rows, d: int) -> list[tuple[Rows, int]]:
    moves = []
    for i in (0, 1):
        row, other = rows[i], rows[1 - i]
        for x in row:
            t = x - d
            if t < 0 or t in other:
                continue
            m = bisect_left(row, x) + bisect_left(other, t)
            src = tuple(e for e in row if e != x)
            dst = list(other)
            dst.insert(bisect_left(dst, t), t)
            pair = (src, tuple(dst)) if i == 0 else (tuple(dst), src)
            moves.append((_reduce(*pair), -1 if m % 2 else 1))
    return moves


class MNCache:
    """Memo table for the recursion, optionally persisted to a flat file.

    File format: one entry per line, ``symbol<TAB>class<TAB>family<TAB>value``
    with canonical symbol/class text.  Loading is eager; :meth:`append_new`
    appends entries added since the last sync in a single atomic write.

    Plain dict operations are atomic under the GIL and values are
    deterministic, so concurrent readers and duplicate insertions from
    parallel scans are harmless.
    """

    def __init__(self) -> None:
        self._table: dict[tuple, int] = {}
        self._synced: set[tuple] = set()

    def __len__(self) -> int:
        return len(self._table)

    def get(self, key: tuple) -> int | None:
        return self._table.get(key)

    def put(self, key: tuple, value: int) -> None:
        self._table[key] = value

    @staticmethod
    def _key_text(key: tuple) -> str:
        rows, lam, mu = key
        sym = ",".join(map(str, rows[0])) + "|" + ",".join(map(str, rows[1]))
        cls = ",".join(map(str, lam)) + "|" + ",".join(map(str, mu))
        fam = "D" if (len(rows[0]) + len(rows[1])) % 2 == 0 else "BC"
        return f"{sym}\t{cls}\t{fam}"

    @staticmethod
    def _parse_line(line: str) -> tuple[tuple, int] | None:
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 4:
            return None
        sym, cls, _fam, val = fields

        def pair(text: str) -> Rows:
            a, b = text.split("|")
            return (
                tuple(int(t) for t in a.split(",") if t),
                tuple(int(t) for t in b.split(",") if t),
            )

        return (pair(sym), *pair(cls)), int(val)

    def load(self, path: str) -> int:
        """Merge entries from ``path`` (missing file is an empty cache)."""
        if not os.path.exists(path):
            return 0
        count = 0
        with open(path, "r", encoding="ascii") as fh:
            for line in fh:
                parsed = self._parse_line(line)
                if parsed is None:
                    continue
                key, val = parsed
                self._table[key] = val
                self._synced.add(key)
                count += 1
        return count

    def append_new(self, path: str) -> int:
        new = sorted(k for k in self._table if k not in self._synced)
        if new:
            blob = "".join(f"{self._key_text(k)}\t{self._table[k]}\n" for k in new)
            with open(path, "a", encoding="ascii") as fh:
                fh.write(blob)
        self._synced.update(new)
        return len(new)


_default_cache = MNCache()


def _check(s: Symbol, bp: BiPartition, family: Family) -> tuple[Rows, int]:
    k = kind(s)
    if bp.size != rank(s):
        raise ContractError(
            f"class size {bp.size} does not match symbol rank {rank(s)}"
        )
    expected = {
        Family.B: KindTag.BC,
        Family.C: KindTag.BC,
        Family.D_PLUS: KindTag.D_PLUS,
        Family.D_MINUS: KindTag.D_MINUS,
    }[family]
    if k.tag is not expected:
        raise ContractError(
            f"symbol of defect {defect(s)} does not belong to family {family}"
        )
    if not validate_class(bp, family):
        raise ContractError(f"{bp} is not a class of family {family}")
    ns = normalize(s)
    return ns.rows, 1 if family.is_d_side else 0


def value(
    s: Symbol, bp: BiPartition, family: Family, cache: MNCache | None = None
) -> CharacterValue:
    """Exact value of the character of ``s`` on the class ``bp``.

    Memoized on (canonical symbol, remaining class); delta (the extra cohook
    sign for the D side) is determined by the defect parity, which every
    move preserves, so it needs no slot in the key.
    """
    rows, delta = _check(s, bp, family)
    memo = cache if cache is not None else _default_cache

    def rec(rows: Rows, lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
        if not lam and not mu:
            assert rows in _RANK0, f"unexpected rank-0 symbol {rows}"
            return 1
        key = (rows, lam, mu)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if lam and (not mu or lam[0] >= mu[0]):
            d, rest_l, rest_m = lam[0], lam[1:], mu
            moves = _hook_moves(rows, d)
            sign = 1
        else:
            d, rest_l, rest_m = mu[0], lam, mu[1:]
            moves = _cohook_moves(rows, d)
            sign = -1 if delta else 1
        total = 0
        for nrows, eps in moves:
            sub = rec(nrows, rest_l, rest_m)
            if sub:
                total += eps * sub
        total *= sign
        memo.put(key, total)
        return total

    v = rec(rows, bp.lam, bp.mu)
    return CharacterValue(v, kind(s).degenerate, degenerate_class(bp, family))


def _distinct_orders(items: Sequence[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
    items = sorted(items)
    n = len(items)
    used = [False] * n
    cur: list[tuple[int, int]] = []

    def rec() -> Iterator[tuple[tuple[int, int], ...]]:
        if len(cur) == n:
            yield tuple(cur)
            return
        for i in range(n):
            if used[i] or (i > 0 and items[i] == items[i - 1] and not used[i - 1]):
                continue
            used[i] = True
            cur.append(items[i])
            yield from rec()
            cur.pop()
            used[i] = False

    return rec()


def value_oracle(s: Symbol, bp: BiPartition, family: Family) -> CharacterValue:
    """Reference evaluation without memoization.

    Evaluates every distinct ordering of the multiset of parts and asserts
    that all orderings agree, then returns the common value.  Slow by
    design; meant for tests.
    """
    rows, delta = _check(s, bp, family)

    def run(rows: Rows, order: tuple[tuple[int, int], ...]) -> int:
        if not order:
            assert rows in _RANK0, f"unexpected rank-0 symbol {rows}"
            return 1
        d, is_cohook = order[0]
        moves = _cohook_moves(rows, d) if is_cohook else _hook_moves(rows, d)
        total = 0
        for nrows, eps in moves:
            sub = run(nrows, order[1:])
            if sub:
                total += eps * sub
        if is_cohook and delta:
            total = -total
        return total

    tagged = [(d, 0) for d in bp.lam] + [(d, 1) for d in bp.mu]
    results = {run(rows, order) for order in _distinct_orders(tagged)}
    if not results:
        results = {run(rows, ())}
    assert len(results) == 1, (
        f"removal orders disagree for {s} at {bp}: {sorted(results)}"
    )
    v = results.pop()
    return CharacterValue(v, kind(s).degenerate, degenerate_class(bp, family))
