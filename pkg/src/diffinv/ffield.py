"""Exact scalars: prime fields, their small extensions, and cyclotomic integers.

Extension fields only exist here to hold eigenvalues of matrices over F_p;
cyclotomic integers hold their lifts to characteristic zero.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


class ModularElementError(ArithmeticError):
    """Matrix order is divisible by the characteristic, so it has no Brauer lift."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------

class PrimeFieldScalar:
    """An element of F_p, stored as its least non-negative residue."""

    __slots__ = ("residue", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "residue", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldScalar is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldScalar):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldScalar(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldScalar(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldScalar(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldScalar(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldScalar(-self.residue, self.p)

    def inv(self) -> "PrimeFieldScalar":
        if self.residue == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return PrimeFieldScalar(pow(self.residue, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldScalar(o, self.p).inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return PrimeFieldScalar(pow(self.residue, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldScalar):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __int__(self):
        return self.residue

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"F{self.p}({self.residue})"


def field_op(op: str, a, b=None):
    """Dispatch ``add|sub|mul|div|neg|inv|pow`` on field scalars; ``b`` is the exponent for pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Dense polynomials over F_p, coefficient lists low -> high
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mod_p(c: Iterable[int], p: int) -> list[int]:
    return _trim([x % p for x in c])


def poly_add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return poly_add(a, [-x for x in b], p)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_mod_p(out, p)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    b = poly_mod_p(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_mod_p(a, p)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1] * inv_lead % p
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - f * y) % p
        _trim(r)
    return _trim(q), r


def poly_exact_div(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    q, r = poly_divmod(a, b, p)
    if r:
        raise ArithmeticError("inexact polynomial division over F_%d" % p)
    return q


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = poly_mod_p(f, p)
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_divmod(f, list(low) + [1], p)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, ordered by the integer sum(c_i p^i)."""
    for idx in range(p ** k):
        low = [(idx // p ** i) % p for i in range(k)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# Characteristic polynomial via Bareiss elimination over F_p[x]
# ---------------------------------------------------------------------------

def charpoly(m: Sequence[Sequence[int]], p: int) -> list[int]:
    """det(x*I - m) over F_p, low -> high, monic."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    a = [[poly_mod_p([-m[i][j]] + ([1] if i == j else []), p) for j in range(n)] for i in range(n)]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return []
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(poly_mul(a[k][k], a[i][j], p), poly_mul(a[i][k], a[k][j], p), p)
                a[i][j] = poly_exact_div(num, prev, p)
            a[i][k] = []
        prev = a[k][k]
    det = a[n - 1][n - 1] if n else [1]
    return poly_mod_p([sign * c for c in det], p)


# ---------------------------------------------------------------------------
# F_{p^k}
# ---------------------------------------------------------------------------

class ExtField:
    """F_p[z]/(f) with f the first irreducible of degree k (or a supplied one)."""

    def __init__(self, p: int, k: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if modulus is None:
            modulus = first_irreducible(p, k)
        modulus = tuple(poly_mod_p(modulus, p))
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise ValueError(f"{modulus} is reducible over F_{p}")
        self.p, self.k, self.modulus = p, k, modulus
        self.order = p ** k
        self._generator: ExtFieldScalar | None = None

    def __eq__(self, other):
        return isinstance(other, ExtField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"ExtField(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __call__(self, coeffs) -> "ExtFieldScalar":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        return ExtFieldScalar(self, coeffs)

    def element(self, index: int) -> "ExtFieldScalar":
        """The element whose base-p digits are its coefficients."""
        return ExtFieldScalar(self, [(index // self.p ** i) % self.p for i in range(self.k)])

    def elements(self):
        return [self.element(i) for i in range(self.order)]

    def generator(self) -> "ExtFieldScalar":
        """Smallest-index element of full multiplicative order."""
        if self._generator is None:
            for i in range(1, self.order):
                g = self.element(i)
                if g.multiplicative_order() == self.order - 1:
                    self._generator = g
                    break
        return self._generator


class ExtFieldScalar:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: Sequence[int]):
        p, k = field.p, field.k
        c = [x % p for x in coeffs]
        if len(c) > k:
            c = poly_divmod(c, field.modulus, p)[1]
        c = list(c) + [0] * (k - len(c))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("ExtFieldScalar is immutable")

    def _other(self, other) -> "ExtFieldScalar":
        if isinstance(other, int):
            return ExtFieldScalar(self.field, [other])
        if isinstance(other, PrimeFieldScalar):
            if other.p != self.field.p:
                raise FieldMismatchError("characteristic mismatch")
            return ExtFieldScalar(self.field, [other.residue])
        if isinstance(other, ExtFieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ExtFieldScalar(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExtFieldScalar(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        prod = poly_mul(self.coeffs, o.coeffs, self.field.p)
        return ExtFieldScalar(self.field, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = ExtFieldScalar(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> "ExtFieldScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def index(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs))

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("0 has no multiplicative order")
        q1 = self.field.order - 1
        for d in sorted(d for d in range(1, q1 + 1) if q1 % d == 0):
            if (self ** d).coeffs == (1,) + (0,) * (self.field.k - 1):
                return d
        raise AssertionError("unreachable")  # pragma: no cover

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (int, PrimeFieldScalar, ExtFieldScalar)) else NotImplemented
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.field.k == 1:
            return f"F{self.field.p}({self.coeffs[0]})"
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"F{self.field.order}({' + '.join(terms) or '0'})"


def _poly_eval(coeffs: Sequence[ExtFieldScalar], x: ExtFieldScalar) -> ExtFieldScalar:
    acc = ExtFieldScalar(x.field, [0])
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _roots_in(field: ExtField, f: Sequence[int]) -> list[ExtFieldScalar]:
    """Roots of f (over F_p) in field, with multiplicity; f must split for the count to equal deg f."""
    coeffs = [field(c) for c in f]
    roots = []
    for x in field.elements():
        while len(coeffs) > 1 and _poly_eval(coeffs, x).is_zero():
            roots.append(x)
            # synthetic division by (X - x)
            out = [field(0)] * (len(coeffs) - 1)
            acc = field(0)
            for i in range(len(coeffs) - 1, 0, -1):
                acc = acc * x + coeffs[i]
                out[i - 1] = acc
            coeffs = out
    return roots


def splitting_field(f: Sequence[int], p: int) -> ExtField:
    deg = len(poly_mod_p(f, p)) - 1
    k = 1
    while True:
        field = ExtField(p, k)
        if len(_roots_in(field, f)) == deg:
            return field
        k += 1


def eigenvalues_bar(m: Sequence[Sequence[int]], p: int, field: ExtField | None = None) -> list[ExtFieldScalar]:
    """All eigenvalues of m with multiplicity, in field (default: the smallest splitting field)."""
    f = charpoly(m, p)
    if field is None:
        field = splitting_field(f, p)
    roots = _roots_in(field, f)
    if len(roots) != len(f) - 1:
        raise ValueError(f"characteristic polynomial does not split over {field}")
    return roots


# ---------------------------------------------------------------------------
# Z[zeta_e]
# ---------------------------------------------------------------------------

def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_poly_divmod_monic(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    r = list(a)
    q = [0] * max(len(r) - len(b) + 1, 1)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1]
        if f:
            q[shift] = f
            for i, y in enumerate(b):
                r[shift + i] -= f * y
        r.pop()
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Phi_e over Z, low -> high."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num, r = _int_poly_divmod_monic(num, cyclotomic_polynomial(d))
            assert not any(r)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


class CyclotomicScalar:
    """Element of Z[zeta_e] in the power basis 1, zeta, ..., zeta^(phi(e)-1)."""

    __slots__ = ("e", "coeffs")

    def __init__(self, coeffs: Sequence[int], e: int):
        phi = cyclotomic_polynomial(e)
        c = list(coeffs)
        if len(c) >= len(phi):
            c = _int_poly_divmod_monic(c, phi)[1]
        c = c + [0] * (len(phi) - 1 - len(c))
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicScalar is immutable")

    @classmethod
    def zeta_power(cls, k: int, e: int) -> "CyclotomicScalar":
        return cls([0] * (k % e) + [1], e)

    def _other(self, other):
        if isinstance(other, int):
            return CyclotomicScalar([other], self.e)
        if isinstance(other, CyclotomicScalar):
            if other.e != self.e:
                raise FieldMismatchError(f"Z[zeta_{self.e}] vs Z[zeta_{other.e}]")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return CyclotomicScalar([a + b for a, b in zip(self.coeffs, o.coeffs)], self.e)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar([-a for a in self.coeffs], self.e)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return CyclotomicScalar(_int_poly_mul(self.coeffs, o.coeffs), self.e)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported in Z[zeta]")
        out = CyclotomicScalar([1], self.e)
        for _ in range(k):
            out = out * self
        return out

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (int, CyclotomicScalar)) else NotImplemented
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def __repr__(self):
        return f"Cyc{self.e}{list(self.coeffs)}"


class BrauerLift:
    """Isomorphism from the order-e subgroup of F_{p^k}^x onto <zeta_e>.

    The chosen generator of F_{p^k}^x, raised to (p^k - 1)/e, maps to zeta_e.
    """

    def __init__(self, field: ExtField, e: int):
        if (field.order - 1) % e:
            raise ValueError(f"e={e} does not divide |F_{field.order}^x|")
        self.field, self.e = field, e
        base = field.generator() ** ((field.order - 1) // e)
        self.base = base
        self._log: dict[ExtFieldScalar, int] = {}
        x = field(1)
        for m in range(e):
            self._log[x] = m
            x = x * base

    @classmethod
    def for_exponent(cls, p: int, e: int) -> "BrauerLift":
        """Lift over the smallest F_{p^k} containing the e-th roots of unity."""
        if gcd(p, e) != 1:
            raise ModularElementError(f"exponent {e} is divisible by {p}")
        k = 1
        while (p ** k - 1) % e:
            k += 1
        return cls(ExtField(p, k), e)

    def discrete_log(self, a) -> int:
        a = a if isinstance(a, ExtFieldScalar) else self.field(int(a))
        try:
            return self._log[a]
        except KeyError:
            raise ValueError(f"{a!r} has order not dividing {self.e}") from None

    def __call__(self, a) -> CyclotomicScalar:
        return CyclotomicScalar.zeta_power(self.discrete_log(a), self.e)


def matrix_order(m: Sequence[Sequence[int]], p: int, bound: int = 10 ** 6) -> int:
    n = len(m)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    cur = tuple(tuple(x % p for x in row) for row in m)
    k = 1
    while cur != ident:
        cur = tuple(tuple(sum(cur[i][l] * m[l][j] for l in range(n)) % p for j in range(n)) for i in range(n))
        k += 1
        if k > bound:
            raise ValueError("matrix is not invertible or has enormous order")
    return k


def brauer_det(m: Sequence[Sequence[int]], lift: BrauerLift) -> list[CyclotomicScalar]:
    """prod over eigenvalues of (1 - lift(lambda) t), as a coefficient list in t."""
    p = lift.field.p
    if matrix_order(m, p) % p == 0:
        raise ModularElementError("element order is divisible by the characteristic")
    out = [CyclotomicScalar([1], lift.e)]
    for lam in eigenvalues_bar(m, p, lift.field):
        z = lift(lam)
        nxt = out + [CyclotomicScalar([0], lift.e)]
        for i in range(len(out)):
            nxt[i + 1] = nxt[i + 1] - z * out[i]
        out = nxt
    return out
