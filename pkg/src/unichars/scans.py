"""Exhaustive drivers: exceptional-symbol prediction, non-vanishing scans,
opposite-sign torus pairs, and the subgroup-index criterion for large
subgroups of groups of Lie type.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .combinatorics import BiPartition, Family, validate_class
from .mn_rule import MNCache, value
from .qpoly import (
    GroupFamily,
    GroupSpec,
    d_ell,
    group_order,
    is_prime,
    sylow_exponent,
    torus_order,
    unipotent_degree,
)
from .symbols import (
    KindTag,
    Symbol,
    dual_class,
    enumerate_symbols,
    kind,
    normalize,
    rank,
    steinberg_symbol,
    trivial_symbol,
)
from .tori import enumerate_torus_types, is_ell_singular, regular_guarantee
from .combinatorics import degenerate_class


def family_tag(family: Family) -> KindTag:
    if family in (Family.B, Family.C):
        return KindTag.BC
    return KindTag.D_PLUS if family is Family.D_PLUS else KindTag.D_MINUS


def _window(k: int) -> set[int]:
    # {0, ..., k}, empty for k < 0
    return set(range(k + 1)) if k >= 0 else set()


def _sym(x: set[int], y: set[int]) -> Symbol:
    return normalize(Symbol(tuple(sorted(x)), tuple(sorted(y))))


def _case_symbol(case_id: int, step: int, r: int) -> Symbol:
    """The exceptional symbol of the given family case; ``step`` is d for the
    odd cases (1, 3, 5) and e for the even ones (2, 4, 6)."""
    d = e = step
    if case_id == 1:
        return _sym(_window(d - r - 1) - {0} | {d, 2 * d}, _window(d - r - 1))
    if case_id == 2:
        return _sym(_window(e - r - 1) | {e}, _window(e - r - 1) - {0} | {2 * e})
    if case_id == 3:
        return _sym(_window(d - r - 1) - {0} | {d, 2 * d}, _window(d - r))
    if case_id == 4:
        return _sym(_window(e - r - 1) | {e}, _window(e - r) - {0} | {2 * e})
    if case_id == 5:
        return _sym(_window(d - r) - {0} | {d, 2 * d}, _window(d - r - 1))
    if case_id == 6:
        return _sym(_window(e - r) | {e}, _window(e - r - 1) - {0} | {2 * e})
    raise ValueError(f"unknown case {case_id}")


_CASE_FAMILY = {
    1: KindTag.BC,
    2: KindTag.BC,
    3: KindTag.D_PLUS,
    4: KindTag.D_PLUS,
    5: KindTag.D_MINUS,
    6: KindTag.D_MINUS,
}

# small-group exceptions, keyed by (kind tag, n, q, d)
_SMALL_CASES: dict[tuple[KindTag, int, int, int], tuple[str, ...]] = {
    (KindTag.BC, 2, 2, 2): ("0,1,2|", "0,2|1"),
    (KindTag.BC, 3, 2, 2): ("0,1,3|",),
    (KindTag.BC, 4, 2, 4): ("0,1|4", "1,4|0"),
    (KindTag.D_MINUS, 4, 2, 2): ("1,3|",),
    (KindTag.D_MINUS, 4, 2, 4): ("1,3|",),
}


def predicted_exceptions(
    family: Family, n: int, d: int, q: int | None = None
) -> list[Symbol]:
    """Symbols predicted to stay non-zero on every guaranteed-regular
    singular class: the applicable generic-case symbols, their duals, and
    the trivial and Steinberg symbols.  Small-group extras require ``q``.
    Empty when no case applies."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    tag = family_tag(family)
    base: list[Symbol] = []
    if d % 2 == 1:
        r = n - 2 * d
        if tag is KindTag.BC and 0 <= r < d:
            base.append(_case_symbol(1, d, r))
        elif tag is KindTag.D_PLUS and 0 <= r < d:
            base.append(_case_symbol(3, d, r))
        elif tag is KindTag.D_MINUS and 0 < r <= d:
            base.append(_case_symbol(5, d, r))
    else:
        e = d // 2
        r = n - 2 * e
        if tag is KindTag.BC and 0 <= r < e:
            base.append(_case_symbol(2, e, r))
        elif tag is KindTag.D_PLUS and 0 <= r <= e:
            base.append(_case_symbol(4, e, r))
        elif tag is KindTag.D_MINUS and 0 < r < e:
            base.append(_case_symbol(6, e, r))
    if q is not None:
        for text in _SMALL_CASES.get((tag, n, q, d), ()):
            from .symbols import parse_symbol

            base.append(normalize(parse_symbol(text)))
    if not base:
        return []
    for s in list(base):
        assert rank(s) == n and kind(s).tag is tag, f"bad case symbol {s}"
        base.append(dual_class(s))
    base.append(trivial_symbol(n, tag))
    base.append(steinberg_symbol(n, tag))
    uniq = {s.rows: s for s in map(normalize, base)}
    return sorted(uniq.values(), key=lambda s: (len(s.row_x) + len(s.row_y), s.rows))


@dataclass
class ScanReport:
    family: str
    n: int
    q: int
    ell: int
    d: int
    scanned_classes: int
    skipped_singular_classes: int
    classes: list[dict]
    nonvanishing: list[dict]
    witnesses_used: list[tuple[str, str]]
    degrees: dict[str, int] = field(default_factory=dict)
    all_values: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "group": {"family": self.family, "n": self.n, "q": self.q},
            "ell": self.ell,
            "d": self.d,
            "scanned_classes": self.scanned_classes,
            "skipped_singular_classes": self.skipped_singular_classes,
            "classes": self.classes,
            "nonvanishing": self.nonvanishing,
            "witnesses_used": [list(w) for w in self.witnesses_used],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        lines = ["symbol,degree,min_value,max_value,zero_witness"]
        witness = dict(self.witnesses_used)
        for sym_text in sorted(self.all_values):
            vals = self.all_values[sym_text]
            lo = min(vals.values()) if vals else "-"
            hi = max(vals.values()) if vals else "-"
            w = witness.get(sym_text, "-")
            deg = self.degrees[sym_text]
            lines.append(f'"{sym_text}",{deg},{lo},{hi},"{w}"')
        return "\n".join(lines) + "\n"

    def nonvanishing_symbols(self) -> list[str]:
        return [entry["symbol"] for entry in self.nonvanishing]


def scan_nonvanishing(
    family: Family,
    n: int,
    q: int,
    ell: int,
    threads: int | None = None,
    cache: MNCache | None = None,
) -> ScanReport:
    """Evaluate every unipotent character of the group on every ell-singular
    class carrying a regular-element guarantee, and report which characters
    never vanish there.  Classes without a guarantee are skipped (the
    criterion is sufficient only) and counted."""
    min_rank = 4 if family.is_d_side else 2
    if n < min_rank:
        raise ValueError(f"family {family} needs rank >= {min_rank}")
    if not is_prime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    d = d_ell(q, ell)

    tag = family_tag(family)
    symbols = enumerate_symbols(n, tag)
    singular = [
        bp for bp in enumerate_torus_types(family, n) if is_ell_singular(bp, q, ell)
    ]
    scanned: list[tuple[BiPartition, int]] = []
    skipped = 0
    for bp in singular:
        guarantee = regular_guarantee(family, q, bp)
        if guarantee.guaranteed:
            scanned.append((bp, guarantee.rule))
        else:
            skipped += 1
    scanned.sort(key=lambda item: item[0].text())

    memo = cache if cache is not None else MNCache()

    def row(sym: Symbol) -> dict[str, int]:
        return {bp.text(): value(sym, bp, family, cache=memo).value for bp, _ in scanned}

    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(row, symbols))

    class_meta = [
        {
            "class": bp.text(),
            "order_poly": list(torus_order(bp).coeffs),
            "ell_singular": True,
            "regular": "Guaranteed",
            "rule": rule,
            "degenerate_class": degenerate_class(bp, family),
        }
        for bp, rule in scanned
    ]

    nonvanishing = []
    witnesses: list[tuple[str, str]] = []
    all_values: dict[str, dict[str, int]] = {}
    degrees: dict[str, int] = {}
    for sym, vals in zip(symbols, rows):
        text = sym.text()
        all_values[text] = vals
        degrees[text] = unipotent_degree(sym)(q)
        zero_class = next((c for c in sorted(vals) if vals[c] == 0), None)
        if zero_class is None:
            nonvanishing.append(
                {
                    "symbol": text,
                    "degenerate_character": kind(sym).degenerate,
                    "values": dict(sorted(vals.items())),
                }
            )
        else:
            witnesses.append((text, zero_class))

    return ScanReport(
        family=family.value,
        n=n,
        q=q,
        ell=ell,
        d=d,
        scanned_classes=len(scanned),
        skipped_singular_classes=skipped,
        classes=class_meta,
        nonvanishing=nonvanishing,
        witnesses_used=witnesses,
        degrees=degrees,
        all_values=all_values,
    )


# ---------------------------------------------------------------------------
# Opposite-sign torus pairs
# ---------------------------------------------------------------------------


def cartan_legal_r(case_id: int, step: int) -> list[int]:
    """Admissible r for each exceptional-symbol case at the given d or e,
    respecting the rank bounds of the family (rank >= 4 on the D side)."""
    if case_id in (1, 2):
        lo, hi, min_n = (0, step - 1, 2)
    elif case_id == 3:
        lo, hi, min_n = (0, step - 1, 4)
    elif case_id == 4:
        lo, hi, min_n = (0, step, 4)
    elif case_id == 5:
        lo, hi, min_n = (1, step, 4)
    elif case_id == 6:
        lo, hi, min_n = (1, step - 1, 4)
    else:
        raise ValueError(f"unknown case {case_id}")
    return [r for r in range(lo, hi + 1) if 2 * step + r >= min_n]


def _cartan_tori(case_id: int, step: int, r: int, n: int) -> tuple[BiPartition, BiPartition]:
    d = e = step
    if case_id in (1, 5):
        return BiPartition((d,), (d + r,)), BiPartition((2 * d,), (r,) if r else ())
    if case_id == 2:
        return BiPartition((2 * e,), (r,) if r else ()), BiPartition((e + r,), (e,))
    if case_id == 3:
        first = (
            BiPartition((d, d - 2), (1, 1)) if r == 0 else BiPartition((d + r, d), ())
        )
        second = (
            BiPartition((2 * d,), (1, 1)) if r == 2 else BiPartition((2 * d, r) if r else (2 * d,), ())
        )
        return first, second
    if case_id == 4:
        if r == 0:
            second = (
                BiPartition((1,), (3, 2))
                if (n, e) == (6, 3)
                else BiPartition((e - 1,), (e, 1))
            )
            return BiPartition((2 * e,), ()), second
        second = (
            BiPartition((2 * e,), (1, 1)) if r == 2 else BiPartition((2 * e, r), ())
        )
        return BiPartition((), (e + r, e)), second
    if case_id == 6:
        return BiPartition((e + r,), (e,)), BiPartition((2 * e,), (r,))
    raise ValueError(f"unknown case {case_id}")


def cartan_sign_pairs(case_id: int, step: int, r: int, cache: MNCache | None = None) -> dict:
    """For the case's symbol and its dual, evaluate both on the designated
    pair of tori and check that the two values have opposite signs
    (product exactly -1).  A zero value is reported as a failure."""
    if r not in cartan_legal_r(case_id, step):
        raise ValueError(f"r={r} is not admissible for case {case_id} at step {step}")
    n = 2 * step + r
    tag = _CASE_FAMILY[case_id]
    family = {
        KindTag.BC: Family.C,
        KindTag.D_PLUS: Family.D_PLUS,
        KindTag.D_MINUS: Family.D_MINUS,
    }[tag]
    sym = _case_symbol(case_id, step, r)
    dsym = dual_class(sym)
    t1, t2 = _cartan_tori(case_id, step, r, n)
    for t in (t1, t2):
        if t.size != n or not validate_class(t, family):
            raise AssertionError(f"torus {t} invalid for {family} rank {n}")

    report: dict = {
        "case": case_id,
        "step": step,
        "r": r,
        "n": n,
        "family": family.value,
        "symbol": sym.text(),
        "dual": dsym.text(),
        "tori": [t1.text(), t2.text()],
        "values": {},
        "products": {},
    }
    ok = True
    for label, s in (("symbol", sym), ("dual", dsym)):
        v1 = value(s, t1, family, cache=cache).value
        v2 = value(s, t2, family, cache=cache).value
        report["values"][label] = [v1, v2]
        report["products"][label] = v1 * v2
        ok = ok and v1 * v2 == -1
    report["ok"] = ok
    return report


# ---------------------------------------------------------------------------
# Large-subgroup index criterion
# ---------------------------------------------------------------------------

HSpec = GroupSpec | tuple[GroupSpec, ...]


def corrigendum_row(key: str, n: int | None = None) -> tuple[GroupSpec, HSpec]:
    """Build the (G, H) pair for a named row of the large-subgroup table."""
    rows: dict[str, tuple] = {
        "sl4+": (GroupSpec(GroupFamily.SL_PLUS, 4), GroupSpec(GroupFamily.SP, 2)),
        "sl4-": (GroupSpec(GroupFamily.SL_MINUS, 4), GroupSpec(GroupFamily.SP, 2)),
        "g2": (GroupSpec(GroupFamily.G2), GroupSpec(GroupFamily.SL_MINUS, 3)),
        "f4": (GroupSpec(GroupFamily.F4), GroupSpec(GroupFamily.SPIN_ODD, 4)),
        "e6+": (GroupSpec(GroupFamily.E6_PLUS), GroupSpec(GroupFamily.F4)),
        "e6-": (GroupSpec(GroupFamily.E6_MINUS), GroupSpec(GroupFamily.F4)),
        "e7": (GroupSpec(GroupFamily.E7), GroupSpec(GroupFamily.E6_PLUS)),
        "e8": (GroupSpec(GroupFamily.E8), GroupSpec(GroupFamily.E7)),
    }
    if key in rows:
        if n is not None:
            raise ValueError(f"row {key!r} takes no n")
        return rows[key]
    if n is None:
        raise ValueError(f"row {key!r} needs n")
    if key == "sln+" and n >= 5:
        return GroupSpec(GroupFamily.SL_PLUS, n), GroupSpec(GroupFamily.GL_PLUS, n - 1)
    if key == "sln-" and n >= 5:
        return GroupSpec(GroupFamily.SL_MINUS, n), GroupSpec(GroupFamily.GL_MINUS, n - 1)
    if key == "spin-odd" and n >= 2:
        return GroupSpec(GroupFamily.SPIN_ODD, n), GroupSpec(GroupFamily.SPIN_MINUS, n)
    if key == "sp" and n >= 3:
        return GroupSpec(GroupFamily.SP, n), (
            GroupSpec(GroupFamily.SP, n - 1),
            GroupSpec(GroupFamily.SP, 1),
        )
    if key == "spin+" and n >= 4:
        return GroupSpec(GroupFamily.SPIN_PLUS, n), GroupSpec(GroupFamily.SPIN_ODD, n - 1)
    if key == "spin-" and n >= 4:
        return GroupSpec(GroupFamily.SPIN_MINUS, n), GroupSpec(GroupFamily.SPIN_ODD, n - 1)
    raise ValueError(f"unknown table row {key!r} (or n out of range)")


CORRIGENDUM_FIXED_ROWS = ("sl4+", "sl4-", "g2", "f4", "e6+", "e6-", "e7", "e8")
CORRIGENDUM_RANKED_ROWS = ("sln+", "sln-", "spin-odd", "sp", "spin+", "spin-")


def _is_table_row(g: GroupSpec, h: HSpec) -> bool:
    for key in CORRIGENDUM_FIXED_ROWS:
        if (g, h) == corrigendum_row(key):
            return True
    for key in CORRIGENDUM_RANKED_ROWS:
        if g.n is None:
            continue
        try:
            if (g, h) == corrigendum_row(key, g.n):
                return True
        except ValueError:
            continue
    return False


def corrigendum_check(g: GroupSpec, h: HSpec, q: int, p: int) -> dict:
    """Index criterion: |G:H| must be divisible by p yet smaller than the
    p-part of |G|.  The pair (g, h) must be a row of the large-subgroup
    table; products are taken with direct-product order (central factors of
    order prime to p cannot affect either boolean)."""
    if not _is_table_row(g, h):
        raise ValueError(f"({g}, {h}) is not a large-subgroup table row")
    if not is_prime(p) or q < 2:
        raise ValueError("need a prime p and q >= 2")
    qq, f = q, 0
    while qq % p == 0 and qq > 1:
        qq //= p
        f += 1
    if qq != 1 or f < 1:
        raise ValueError(f"q={q} is not a power of p={p}")

    order_g = group_order(g)(q)
    hs = h if isinstance(h, tuple) else (h,)
    order_h = 1
    for part in hs:
        order_h *= group_order(part)(q)
    assert order_g % order_h == 0, "subgroup order does not divide group order"
    index = order_g // order_h
    sylow = q ** sylow_exponent(g)
    return {
        "g": str(g),
        "h": " x ".join(str(part) for part in hs),
        "q": q,
        "p": p,
        "index": index,
        "p_divides_index": index % p == 0,
        "index_less_than_sylow": index < sylow,
        "sylow_order": sylow,
        "ok": index % p == 0 and index < sylow,
    }
