"""Exact integer polynomial arithmetic in q and everything built on it:
cyclotomic polynomials, Gaussian binomials and their Babbage-type congruence,
torus and group order polynomials, generic degrees of unipotent characters,
multiplicative orders, and the degree congruence report.

All arithmetic is over arbitrary-precision integers; divisions that are
mathematically exact assert exactness and fail loudly otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .combinatorics import BiPartition
from .symbols import KindTag, Symbol, kind, normalize, rank


class IntPoly:
    """Dense polynomial over the integers, coefficients indexed by exponent."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):  # type: ignore[no-untyped-def]
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @staticmethod
    def const(n: int) -> "IntPoly":
        return IntPoly((n,))

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly((0, 1))

    @staticmethod
    def monomial(coeff: int, exp: int) -> "IntPoly":
        return IntPoly((0,) * exp + (coeff,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        return self + (-other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        result = IntPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Long division; the divisor must have leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("division requires a unit leading coefficient")
        rem = list(self.coeffs)
        dn = other.degree
        quo = [0] * max(len(rem) - dn, 0)
        for i in range(len(rem) - dn - 1, -1, -1):
            q = rem[i + dn] * lead
            if q:
                quo[i] = q
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return IntPoly(quo), IntPoly(rem)

    def divexact(self, other: "IntPoly") -> "IntPoly":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError(f"inexact polynomial division: remainder {rem}")
        return quo

    def divexact_scalar(self, n: int) -> "IntPoly":
        if any(c % n for c in self.coeffs):
            raise ArithmeticError(f"coefficients not divisible by {n}")
        return IntPoly([c // n for c in self.coeffs])

    def shift_down(self, k: int) -> "IntPoly":
        """Exact division by x^k."""
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"polynomial not divisible by x^{k}")
        return IntPoly(self.coeffs[k:])

    def __mod__(self, other: "IntPoly") -> "IntPoly":
        return self.divmod(other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "x" if e == 1 else f"x^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append(sign + body)
        return "".join(terms)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


ONE = IntPoly.const(1)


def _x_pow_minus_one(k: int) -> IntPoly:
    return IntPoly((-1,) + (0,) * (k - 1) + (1,))


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial via exact division of x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    quo = _x_pow_minus_one(d)
    for e in range(1, d):
        if d % e == 0:
            quo = quo.divexact(cyclotomic(e))
    return quo


def quantum_binomial(n: int, k: int) -> IntPoly:
    """Gaussian binomial [n choose k]_x as an integer polynomial."""
    if k < 0 or k > n:
        raise ValueError(f"binomial parameters out of range: ({n}, {k})")
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * _x_pow_minus_one(n - i + 1)
        den = den * _x_pow_minus_one(i)
    return num.divexact(den)


def babbage_residue(d: int, h: int) -> IntPoly:
    """Residue of [hd-1 choose d-1]_x - x^{(h-1)d(d-1)/2} modulo the square
    of the d-th cyclotomic polynomial.  Zero in the supported regime
    (odd d >= 3, h >= 2)."""
    if d < 3 or d % 2 == 0:
        raise ValueError("supported only for odd d >= 3")
    if h < 2:
        raise ValueError("requires h >= 2")
    lhs = quantum_binomial(h * d - 1, d - 1)
    rhs = IntPoly.monomial(1, (h - 1) * d * (d - 1) // 2)
    return (lhs - rhs) % (cyclotomic(d) ** 2)


def torus_order(bp: BiPartition) -> IntPoly:
    """Order polynomial of the maximal torus of type ``bp``:
    the product of q^l - 1 over parts of lambda and q^m + 1 over parts of mu."""
    poly = ONE
    for p in bp.lam:
        poly = poly * _x_pow_minus_one(p)
    for p in bp.mu:
        poly = poly * IntPoly((1,) + (0,) * (p - 1) + (1,))
    return poly


class GroupFamily(Enum):
    SL_PLUS = "SL+"
    SL_MINUS = "SL-"
    GL_PLUS = "GL+"
    GL_MINUS = "GL-"
    SP = "Sp"
    SPIN_ODD = "Spin-odd"
    SPIN_PLUS = "Spin+"
    SPIN_MINUS = "Spin-"
    G2 = "G2"
    F4 = "F4"
    E6_PLUS = "E6"
    E6_MINUS = "2E6"
    E7 = "E7"
    E8 = "E8"

    def __str__(self) -> str:
        return self.value


_EXCEPTIONAL = {
    # family: (number of positive roots, ((d_i, eps_i), ...)) with factors q^d - eps
    GroupFamily.G2: (6, ((2, 1), (6, 1))),
    GroupFamily.F4: (24, ((2, 1), (6, 1), (8, 1), (12, 1))),
    GroupFamily.E6_PLUS: (36, ((2, 1), (5, 1), (6, 1), (8, 1), (9, 1), (12, 1))),
    GroupFamily.E6_MINUS: (36, ((2, 1), (5, -1), (6, 1), (8, 1), (9, -1), (12, 1))),
    GroupFamily.E7: (63, ((2, 1), (6, 1), (8, 1), (10, 1), (12, 1), (14, 1), (18, 1))),
    GroupFamily.E8: (
        120,
        ((2, 1), (8, 1), (12, 1), (14, 1), (18, 1), (20, 1), (24, 1), (30, 1)),
    ),
}


@dataclass(frozen=True)
class GroupSpec:
    """A finite group of Lie type identified by family and (where needed) the
    subscript n of the classical notation: SL_n, Sp_2n, Spin_2n+1, Spin_2n."""

    family: GroupFamily
    n: int | None = None

    def __str__(self) -> str:
        return self.family.value if self.n is None else f"{self.family.value}({self.n})"


def _factors(g: GroupSpec) -> tuple[int, tuple[tuple[int, int], ...]]:
    fam, n = g.family, g.n
    if fam in _EXCEPTIONAL:
        if n is not None:
            raise ValueError(f"{fam} takes no rank parameter")
        return _EXCEPTIONAL[fam]
    if n is None or n < 1:
        raise ValueError(f"{fam} needs a positive subscript n")
    if fam in (GroupFamily.SL_PLUS, GroupFamily.SL_MINUS):
        eps = 1 if fam is GroupFamily.SL_PLUS else -1
        return n * (n - 1) // 2, tuple((i, eps**i) for i in range(2, n + 1))
    if fam in (GroupFamily.GL_PLUS, GroupFamily.GL_MINUS):
        eps = 1 if fam is GroupFamily.GL_PLUS else -1
        return n * (n - 1) // 2, tuple((i, eps**i) for i in range(1, n + 1))
    if fam in (GroupFamily.SP, GroupFamily.SPIN_ODD):
        return n * n, tuple((2 * i, 1) for i in range(1, n + 1))
    if fam is GroupFamily.SPIN_PLUS:
        return n * (n - 1), tuple((2 * i, 1) for i in range(1, n)) + ((n, 1),)
    if fam is GroupFamily.SPIN_MINUS:
        return n * (n - 1), tuple((2 * i, 1) for i in range(1, n)) + ((n, -1),)
    raise ValueError(f"unsupported family {fam}")


def sylow_exponent(g: GroupSpec) -> int:
    """N such that the defining-characteristic part of the order is q^N."""
    return _factors(g)[0]


def group_order(g: GroupSpec) -> IntPoly:
    """Order polynomial q^N * prod (q^{d_i} - eps_i) of the finite group."""
    npos, factors = _factors(g)
    poly = IntPoly.monomial(1, npos)
    for d, eps in factors:
        poly = poly * IntPoly((-eps,) + (0,) * (d - 1) + (1,))
    return poly


def _prod_q2_range(k: int) -> IntPoly:
    # prod_{i=1..k} (q^{2i} - 1)
    poly = ONE
    for i in range(1, k + 1):
        poly = poly * _x_pow_minus_one(2 * i)
    return poly


@dataclass(frozen=True)
class DegreePolynomial:
    """A generic degree: an integer polynomial over a power-of-two
    denominator (several classical degrees, such as q(q^2+1)/2, are not
    integral coefficient-wise although all their values at prime powers
    are).  Stored reduced."""

    num: IntPoly
    denom: int

    def __call__(self, q: int) -> int:
        v = self.num(q)
        if v % self.denom:
            raise ArithmeticError(f"degree not integral at q={q}")
        return v // self.denom

    @property
    def degree(self) -> int:
        return self.num.degree

    def is_integral(self) -> bool:
        return self.denom == 1

    def __str__(self) -> str:
        return str(self.num) if self.denom == 1 else f"({self.num})/{self.denom}"


def unipotent_degree(s: Symbol) -> DegreePolynomial:
    """Generic degree of the unipotent character labelled by ``s``.

    For a degenerate symbol this is the common degree of the two characters
    sharing the label.  The polynomial division is exact; anything else
    signals a bug in the row data.
    """
    ns = normalize(s)
    n = rank(ns)
    tag = kind(ns).tag
    if n == 0:
        return DegreePolynomial(ONE, 1)
    x_row, y_row = ns.rows
    z = len(x_row) + len(y_row)

    if tag is KindTag.BC:
        num = _prod_q2_range(n)
    else:
        eps = 1 if tag is KindTag.D_PLUS else -1
        num = _prod_q2_range(n - 1) * IntPoly((-eps,) + (0,) * (n - 1) + (1,))
    for row in (x_row, y_row):
        for i, xi in enumerate(row):
            for xj in row[i + 1 :]:
                num = num * (IntPoly.monomial(1, xj) - IntPoly.monomial(1, xi))
    for xe in x_row:
        for ye in y_row:
            num = num * (IntPoly.monomial(1, xe) + IntPoly.monomial(1, ye))

    den = ONE
    for row in (x_row, y_row):
        for e in row:
            den = den * _prod_q2_range(e)
    c = (z - 1) // 2 if z else 0
    b = 0
    i = 1
    while z - 2 * i >= 2:
        t = z - 2 * i
        b += t * (t - 1) // 2
        i += 1

    poly = num.divexact(den).shift_down(b)
    denom = 2**c
    if kind(ns).degenerate:
        denom *= 2
    while denom % 2 == 0 and all(co % 2 == 0 for co in poly.coeffs):
        poly = poly.divexact_scalar(2)
        denom //= 2
    if poly.coeffs and poly.coeffs[-1] < 0:
        raise ArithmeticError(f"negative generic degree for {ns}")
    return DegreePolynomial(poly, denom)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def d_ell(q: int, ell: int) -> int:
    """Multiplicative order of q modulo the odd prime ell."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if not is_prime(ell) or ell == 2:
        raise ValueError(f"{ell} is not an odd prime")
    if q % ell == 0:
        raise ValueError(f"{ell} divides q={q}")
    d, t = 1, q % ell
    while t != 1:
        t = (t * q) % ell
        d += 1
    return d


def ell_valuation(n: int, ell: int) -> int | None:
    """Exponent of ell in n; None for n = 0 (infinite valuation)."""
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def ell_part(n: int, ell: int) -> int:
    v = ell_valuation(n, ell)
    if v is None:
        raise ValueError("the zero integer has no ell-part")
    return ell**v


@dataclass(frozen=True)
class CongruenceReport:
    symbol: str
    q: int
    ell: int
    d: int
    chi1: int
    val_minus: int | None
    val_plus: int | None
    phi_d_ell: int
    congruent_pm1: bool


def degree_congruence_check(s: Symbol, q: int, ell: int) -> CongruenceReport:
    """Compare the character degree chi(1) against +-1 modulo the square of
    the ell-part of Phi_d(q), where d is the order of q mod ell."""
    d = d_ell(q, ell)
    chi1 = unipotent_degree(s)(q)
    phi_ell = ell_part(cyclotomic(d)(q), ell)
    modulus = phi_ell**2
    congruent = (chi1 - 1) % modulus == 0 or (chi1 + 1) % modulus == 0
    return CongruenceReport(
        symbol=normalize(s).text(),
        q=q,
        ell=ell,
        d=d,
        chi1=chi1,
        val_minus=ell_valuation(chi1 - 1, ell),
        val_plus=ell_valuation(chi1 + 1, ell),
        phi_d_ell=phi_ell,
        congruent_pm1=congruent,
    )
