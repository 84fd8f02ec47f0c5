"""Exact rational functions over Z and Molien sums with Brauer lifts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .ffield import BrauerLift, CyclotomicScalar, ModularElementError, eigenvalues_bar, matrix_order
from .grouprep import LinearCharacter, MatrixGroup, Representation


class NotFreeError(ArithmeticError):
    """Series times prod(1 - t^e) is not a polynomial."""


class InternalConsistencyError(AssertionError):
    pass


def _strip(c: Iterable[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def one_minus_t_pow(cls, k: int) -> "IntPolynomial":
        return cls([1] + [0] * (k - 1) + [-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return reduce(lambda a, b: a * b, [self] * k, IntPolynomial([1]))

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def divmod_rational(self, other: "IntPolynomial") -> tuple[list[Fraction], list[Fraction]]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        return _fraction_divmod([Fraction(c) for c in self.coeffs], [Fraction(c) for c in other.coeffs])

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod_rational(other)
        if r or any(x.denominator != 1 for x in q):
            raise ArithmeticError("inexact division over Z")
        return IntPolynomial(int(x) for x in q)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self):
        return format_polynomial(self)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z with positive leading coefficient."""
    x = [Fraction(c) for c in a.coeffs]
    y = [Fraction(c) for c in b.coeffs]
    while y:
        _, r = _fraction_divmod(x, y)
        x, y = y, r
    if not x:
        return IntPolynomial()
    den = reduce(lambda u, v: u * v // gcd(u, v), (c.denominator for c in x), 1)
    ints = [int(c * den) for c in x]
    g = reduce(gcd, ints, 0)
    out = IntPolynomial(c // g for c in ints)
    return -out if out.coeffs[-1] < 0 else out


def _fraction_divmod(x: list[Fraction], y: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    r = list(x)
    q = [Fraction(0)] * max(len(r) - len(y) + 1, 0)
    while len(r) >= len(y) and r:
        shift = len(r) - len(y)
        f = r[-1] / y[-1]
        q[shift] = f
        for i, v in enumerate(y):
            r[shift + i] -= f * v
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


@dataclass(frozen=True)
class RationalSeries:
    """numerator / denominator in lowest terms with denominator(0) = 1."""

    numerator: IntPolynomial
    denominator: IntPolynomial

    def __init__(self, numerator, denominator=IntPolynomial([1]), reduce_terms: bool = True):
        num = numerator if isinstance(numerator, IntPolynomial) else IntPolynomial(numerator)
        den = denominator if isinstance(denominator, IntPolynomial) else IntPolynomial(denominator)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce_terms and num:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            c = gcd(num.content(), den.content())
            if c > 1:
                num, den = IntPolynomial(x // c for x in num.coeffs), IntPolynomial(x // c for x in den.coeffs)
        elif not num:
            den = IntPolynomial([1])
        if den[0] not in (1, -1):
            raise ValueError(f"denominator constant term {den[0]} is not a unit; no integer expansion")
        if den[0] == -1:
            num, den = -num, -den
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.numerator * other.denominator + other.numerator * self.denominator,
                              self.denominator * other.denominator)

    def __sub__(self, other):
        return self + RationalSeries(-other.numerator, other.denominator)

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.numerator * other.numerator, self.denominator * other.denominator)

    def expand(self, order: int) -> list[int]:
        return series_expand(self, order)

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"


def series_expand(r: RationalSeries, order: int) -> list[int]:
    """Taylor coefficients 0..order."""
    den = r.denominator.coeffs
    out: list[int] = []
    for k in range(order + 1):
        v = r.numerator[k] - sum(den[j] * out[k - j] for j in range(1, min(k, len(den) - 1) + 1))
        out.append(v)  # den[0] == 1
    return out


def hsop_denominator(degrees: Sequence[int]) -> IntPolynomial:
    return reduce(lambda a, e: a * IntPolynomial.one_minus_t_pow(e), degrees, IntPolynomial([1]))


def rewrite_over_hsop(r: RationalSeries, degrees: Sequence[int]) -> IntPolynomial:
    """The polynomial N with r = N / prod(1 - t^e); raises NotFreeError if none exists."""
    prod = r.numerator * hsop_denominator(degrees)
    try:
        return prod.exact_div(r.denominator)
    except ArithmeticError:
        raise NotFreeError(f"series is not a polynomial over prod(1 - t^e) for e in {list(degrees)}") from None


def series_over_hsop(numerator: IntPolynomial, degrees: Sequence[int]) -> RationalSeries:
    return RationalSeries(numerator, hsop_denominator(degrees))


def reconstruct_from_dims(dims: Sequence[int], degrees: Sequence[int]) -> IntPolynomial:
    """Numerator N with sum dims_i t^i = N / prod(1 - t^e), provided the table is long enough
    to show the truncated product vanishing past deg N."""
    prod = IntPolynomial(dims) * hsop_denominator(degrees)
    truncated = IntPolynomial(prod[i] for i in range(len(dims)))
    if truncated.degree >= len(dims) - max(degrees, default=0):
        raise NotFreeError("dimension table too short to certify a polynomial numerator")
    return truncated


# ---------------------------------------------------------------------------
# Molien
# ---------------------------------------------------------------------------

def _cyc_poly_mul(a: list[CyclotomicScalar], b: list[CyclotomicScalar], e: int) -> list[CyclotomicScalar]:
    out = [CyclotomicScalar([0], e) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def molien(group: MatrixGroup, rep: Representation | None = None, character: LinearCharacter | None = None,
           lift: BrauerLift | None = None, inverse_character: bool = False,
           elements: Sequence | None = None) -> RationalSeries:
    """Hilbert series of the chi-relative invariants of S(V*) for a non-modular group.

    The group acts through rep (default: its own matrices) on V*; each term is
    chi0(g) / det0(1 - t g) with g the matrix of the action on the x's.  With
    inverse_character the numerator uses chi(g)^-1 instead.
    """
    from .grouprep import identity_rep
    rep = rep or identity_rep(group)
    p = group.p
    elems = list(elements) if elements is not None else list(group.elements)
    images = {}
    for g in elems:
        d = rep.dual(g)
        c = 1 if character is None else character(g) % p
        if inverse_character:
            c = pow(c, p - 2, p)
        if images.setdefault(d, c) != c:
            raise ValueError("character is not constant on kernel cosets")
    from math import lcm
    orders = {d: matrix_order(d, p) for d in images}
    if any(o % p == 0 for o in orders.values()):
        raise ModularElementError("group image contains elements of order divisible by p")
    e = reduce(lcm, orders.values(), 1)
    if lift is None:
        lift = BrauerLift.for_exponent(p, e)
    elif lift.e % e:
        raise ValueError(f"lift of order {lift.e} cannot see roots of unity of order {e}")
    e = lift.e
    n = rep.dim
    # 1/det0(1 - tg) = Q_g(t) / (1 - t^e)^n with Q_g = prod over eigenvalues of sum_{r<e} (z t)^r
    total = [CyclotomicScalar([0], e) for _ in range(n * (e - 1) + 1)]
    for d, c in images.items():
        q = [CyclotomicScalar([1], e)]
        for lam in eigenvalues_bar(d, p, lift.field):
            z = lift(lam)
            geo = [z ** r for r in range(e)]
            q = _cyc_poly_mul(q, geo, e)
        chi0 = lift(c)
        for i, v in enumerate(q):
            total[i] = total[i] + chi0 * v
    order = len(images)
    coeffs = []
    for v in total:
        if not v.is_rational():
            raise InternalConsistencyError(f"Molien numerator coefficient {v!r} is not rational")
        k = v.to_int()
        if k % order:
            raise InternalConsistencyError(f"Molien numerator coefficient {k} not divisible by {order}")
        coeffs.append(k // order)
    return RationalSeries(IntPolynomial(coeffs), IntPolynomial.one_minus_t_pow(e) ** n)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def format_polynomial(f: IntPolynomial, var: str = "t") -> str:
    if not f:
        return "0"
    parts = []
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s


def format_hsop_form(numerator: IntPolynomial, degrees: Sequence[int], var: str = "t") -> str:
    """E.g. (t+t^2)/(1-t^2)^3 or (1+t^6)/((1-t^2)(1-t^3)(1-t^4))."""
    num = format_polynomial(numerator, var)
    if sum(1 for c in numerator.coeffs if c) > 1:
        num = f"({num})"
    counts: dict[int, int] = {}
    for d in degrees:
        counts[d] = counts.get(d, 0) + 1
    factors = []
    for d in sorted(counts):
        base = f"(1-{var})" if d == 1 else f"(1-{var}^{d})"
        factors.append(base + (f"^{counts[d]}" if counts[d] > 1 else ""))
    if not factors:
        return num
    den = "".join(factors)
    if len(factors) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def format_series(r: RationalSeries, var: str = "t") -> str:
    num = format_polynomial(r.numerator, var)
    den = format_polynomial(r.denominator, var)
    if r.denominator.coeffs == (1,):
        return num
    return f"({num})/({den})"
