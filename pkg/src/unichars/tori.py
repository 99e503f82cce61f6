"""Torus types, regular-element guarantees, ell-singularity and the
common-overgroup obstruction for collections of maximal tori.

The regular-element criterion is sufficient, not necessary, so the verdict
is Guaranteed or Unknown, never a definite no.  Scans treat Unknown tori as
excluded witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .combinatorics import BiPartition, Family, bipartitions, validate_class
from .qpoly import d_ell


@dataclass(frozen=True)
class RegularGuarantee:
    guaranteed: bool
    rule: int | None  # which criterion clause fired, when guaranteed

    @property
    def tag(self) -> str:
        return "Guaranteed" if self.guaranteed else "Unknown"


def enumerate_torus_types(family: Family, n: int) -> list[BiPartition]:
    """All torus type labels of the family at rank n (degenerate labels for
    the untwisted even orthogonal form appear once, unsplit)."""
    if n < 1:
        raise ValueError("rank must be positive")
    return [bp for bp in bipartitions(n) if validate_class(bp, family)]


def _distinct(parts: tuple[int, ...]) -> bool:
    return len(set(parts)) == len(parts)


def regular_guarantee(family: Family, q: int, bp: BiPartition) -> RegularGuarantee:
    """Decide whether the torus of type ``bp`` is guaranteed to contain
    regular elements.

    Clause 1: q > 3 and all parts distinct within each of lambda and mu.
    Clause 2: q in {2, 3}, parts distinct within each side, no part of
    lambda equals 2, and for B/C no part equals 1 either.
    Clause 3 (D side only, any q): parts of lambda distinct and all > 2,
    while mu consists of exactly two parts equal to 1 followed by distinct
    larger parts.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    lam, mu = bp.lam, bp.mu
    if q > 3 and _distinct(lam) and _distinct(mu):
        return RegularGuarantee(True, 1)
    if (
        q in (2, 3)
        and _distinct(lam)
        and _distinct(mu)
        and all(p != 2 for p in lam)
        and (family.is_d_side or all(p != 1 for p in lam))
    ):
        return RegularGuarantee(True, 2)
    if family.is_d_side:
        asc = tuple(sorted(mu))
        if (
            _distinct(lam)
            and all(p > 2 for p in lam)
            and len(asc) >= 2
            and asc[0] == asc[1] == 1
            and _distinct(asc[2:])
            and all(p > 1 for p in asc[2:])
        ):
            return RegularGuarantee(True, 3)
    return RegularGuarantee(False, None)


def is_ell_singular(bp: BiPartition, q: int, ell: int) -> bool:
    """Whether the torus of type ``bp`` contains elements of order divisible
    by ell.  With d the order of q mod ell: for odd d some part of lambda
    must be a multiple of d; for d = 2e some part of mu must be an odd
    multiple of e or some part of lambda an even multiple of e."""
    d = d_ell(q, ell)
    if d % 2 == 1:
        return any(p % d == 0 for p in bp.lam)
    e = d // 2
    if any(p % e == 0 and (p // e) % 2 == 1 for p in bp.mu):
        return True
    return any(p % e == 0 and (p // e) % 2 == 0 for p in bp.lam)


def _subset_sums(parts: tuple[int, ...]) -> int:
    # bitmask of achievable subset sums
    mask = 1
    for p in parts:
        mask |= mask << p
    return mask


def maxred_check(types: Iterable[BiPartition], family: Family, n: int) -> bool:
    """Common-overgroup obstruction for a collection of torus types.

    True when (1) no single 1 <= k <= n-1 lets every member split off a
    sub-bipartition of size k, (2) the gcd of all parts across the
    collection is 1, and (3) for family B the collection contains both a
    member whose mu has an odd number of parts and one with an even number.
    A semisimple element whose centralizer carries tori of all these types
    is then necessarily central.
    """
    collection = list(types)
    if not collection:
        raise ValueError("empty torus collection")
    for bp in collection:
        if bp.size != n:
            raise ValueError(f"{bp} does not have size {n}")
        if not validate_class(bp, family):
            raise ValueError(f"{bp} is not a class of family {family}")

    common = (1 << n) - 2  # bits 1..n-1
    for bp in collection:
        common &= _subset_sums(bp.lam + bp.mu)
    if common:
        return False

    g = 0
    for bp in collection:
        for p in bp.lam + bp.mu:
            g = gcd(g, p)
    if g != 1:
        return False

    if family is Family.B:
        parities = {len(bp.mu) % 2 for bp in collection}
        if parities != {0, 1}:
            return False
    return True


# ---------------------------------------------------------------------------
# Parameterized torus collections used to pin down overgroups family by
# family.  Two of the rows (flagged refine=True) deliberately share a split
# size k; for those the rational-form refinement below rules out the
# remaining candidate overgroup, a sum of two even orthogonal groups.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusCollection:
    row: str
    family: Family
    n: int
    types: tuple[BiPartition, ...]
    refine: bool = False


def _bp(lam: Iterable[int], mu: Iterable[int]) -> BiPartition:
    return BiPartition(tuple(lam), tuple(mu))


def _row_types(
    kind: str, parity: str, a_parity: str, n: int, d: int, a: int, r: int
) -> tuple[list[BiPartition], bool] | None:
    e = d // 2
    t: list[BiPartition] = []
    refine = False
    if kind in ("B", "C"):
        if parity == "odd":
            if r == 0:
                t = [_bp([n], []), _bp([n - d], [d])]
                if d > 1:
                    t.append(_bp([n - d], [d - 1, 1]))
            else:
                t = [
                    _bp([n - r], [r]),
                    _bp([n - r - d], [d + r]),
                    _bp([n - r - d], [d + r - 1, 1]),
                ]
        elif a_parity == "even":
            if r == 0:
                t = [_bp([n], []), _bp([n - e], [e])]
                if e > 1:
                    t.append(_bp([], [n - e - 1, e, 1]))
            else:
                t = [_bp([n - r], [r]), _bp([], [n - e, e])]
                if r != 1:
                    t.append(_bp([], [n - e - 1, e, 1]))
        else:
            if r == 0:
                t = [_bp([], [n]), _bp([], [n - e, e])]
                if e > 1:
                    t.append(_bp([n - e - 1], [e, 1]))
            else:
                t = [
                    _bp([], [n - r, r]),
                    _bp([n - r - e], [r + e]),
                    _bp([n - r - e], [r + e - 1, 1]),
                ]
    elif kind == "D":
        if parity == "odd":
            if r == 0:
                t = [_bp([n], [])]
                t.append(_bp([n - 1, 1], []) if d == 1 else _bp([n - d], [d - 1, 1]))
            else:
                t = [_bp([n - d - r, d + r], [])]
                t.append(_bp([n - r, r], []) if r != 2 else _bp([n - 2], [1, 1]))
        elif a_parity == "even":
            if r == 0:
                t = [_bp([n], [])]
                if (n, e) in ((4, 1), (6, 3)):
                    t.append(_bp([n - e - 2], [e, 2]))
                else:
                    t.append(_bp([n - e - 1], [e, 1]))
            else:
                t = [_bp([], [n - e, e])]
                t.append(_bp([n - 1, 1], []) if r == 1 else _bp([n - r], [r - 1, 1]))
        else:
            if r == 0:
                refine = True
                t = [_bp([], [n - e, e]), _bp([], [n - 2 * e, 2 * e])]
                if e > 1:
                    t.append(_bp([1], [n - 2 * e, 2 * e - 1]))
                if n == 3 * e:
                    t.append(_bp([2 * e], [e - 1, 1]))
            else:
                t = [_bp([], [n - r, r]), _bp([], [n - e, e])]
                if r > 1:
                    t.append(_bp([1], [n - r, r - 1]))
    else:  # twisted D
        if parity == "odd":
            if r == 0:
                refine = True
                t = [_bp([n - d], [d]), _bp([d], [n - d])]
                if d > 1:
                    t.append(_bp([n - d - 1, d], [1]))
            else:
                t = [
                    _bp([n - r], [r]),
                    _bp([n - d - r], [d + r]),
                    _bp([n - d - r, 1], [d + r - 1]),
                ]
        elif a_parity == "even":
            if r == 0:
                t = [_bp([n - e], [e]), _bp([n - 2 * e], [2 * e])]
                if e > 1:
                    t.append(_bp([n - 2 * e, 2 * e - 1], [1]))
            else:
                t = [_bp([n - r], [r]), _bp([n - e], [e])]
                if r > 1:
                    t.append(_bp([n - r, 1], [r - 1]))
        else:
            if r == 0:
                t = [_bp([], [n]), _bp([n - e], [e])]
                if e > 1:
                    t.append(_bp([n - e, 1], [e - 1]))
            else:
                t = [_bp([n - e - r], [e + r])]
                if r > 1:
                    t.append(_bp([], [n - r, r - 1, 1]))
                else:
                    t.append(_bp([1], [n - 1]))
    return t, refine


def torus_table_cases(max_n: int = 12) -> Iterator[TorusCollection]:
    """Instantiate every parameterized torus-collection row at all admissible
    (n, d, a, r) with n <= max_n."""
    fam_of = {"B": Family.B, "C": Family.C, "D": Family.D_PLUS, "2D": Family.D_MINUS}
    for kind_key in ("B", "D", "2D"):
        family = fam_of[kind_key]
        min_n = {"B": 3, "D": 4, "2D": 4}[kind_key]
        for parity, steps in (("odd", (1, 3, 5)), ("even", (2, 4, 6))):
            for d in steps:
                step = d if parity == "odd" else d // 2
                for a in range(2, max_n // step + 1):
                    for r in range(0, step):
                        n = a * step + r
                        if n > max_n or n < min_n:
                            continue
                        if kind_key == "2D" and n <= 2 * step:
                            continue
                        a_parity = "even" if a % 2 == 0 else "odd"
                        built = _row_types(kind_key, parity, a_parity, n, d, a, r)
                        if built is None:
                            continue
                        types, refine = built
                        row = f"{kind_key}/{parity}-d{d}/a{a}/r{r}"
                        yield TorusCollection(row, family, n, tuple(types), refine)


def _split_signatures(bp: BiPartition, k: int) -> set[tuple[int, int]]:
    """Rational-form signatures (parity of mu-parts on each side) over all
    ways to split off a size-k sub-bipartition."""
    sigs: set[tuple[int, int]] = set()
    lam_sums = _subset_sums(bp.lam)
    for taken in range(len(bp.mu) + 1):
        # choose which mu parts go to the first factor by index subsets
        from itertools import combinations

        for idx in combinations(range(len(bp.mu)), taken):
            mu_sum = sum(bp.mu[i] for i in idx)
            need = k - mu_sum
            if need < 0 or not (lam_sums >> need) & 1:
                continue
            sigs.add((taken % 2, (len(bp.mu) - taken) % 2))
    return sigs


def _has_lambda_only_split(bp: BiPartition, k: int) -> bool:
    return bool((_subset_sums(bp.lam) >> k) & 1)


def check_torus_collection(case: TorusCollection) -> bool:
    """Verify that the collection admits no common proper reductive
    overgroup.  Rows without the refine flag must pass the bare obstruction;
    refined rows may fail it at split sizes that correspond to sums of two
    even orthogonal groups, provided no single rational form of such a
    subgroup hosts every member and a totally-singular-space stabilizer is
    ruled out as well."""
    if maxred_check(case.types, case.family, case.n):
        return True
    if not case.refine:
        return False

    # gcd and (for B) parity conditions cannot be repaired by the refinement
    g = 0
    for bp in case.types:
        for p in bp.lam + bp.mu:
            g = gcd(g, p)
    if g != 1:
        return False
    if case.family is Family.B:
        return False

    eps_g = 1 if case.family is Family.D_PLUS else -1
    forms = [(0, 0), (1, 1)] if eps_g == 1 else [(0, 1), (1, 0)]

    common = (1 << case.n) - 2
    for bp in case.types:
        common &= _subset_sums(bp.lam + bp.mu)
    for k in range(1, case.n):
        if not (common >> k) & 1:
            continue
        # parabolic containment: every member splits off k using lambda only
        if all(_has_lambda_only_split(bp, k) for bp in case.types):
            return False
        sig_sets = [_split_signatures(bp, k) for bp in case.types]
        for form in forms:
            if all(form in sigs for sigs in sig_sets):
                return False
    return True
