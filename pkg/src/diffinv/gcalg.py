"""Sparse arithmetic in S(V*) (x) Lambda(V*) over F_p.

Even generators x_1..x_n and odd generators y_1..y_n.  A monomial is an
exponent tuple for the x's plus a bitmask for the y's (bit i-1 <-> y_i), with
the y's always kept in increasing order; reordering signs go into the
coefficient.  Native grading is the bidegree (xdeg, ydeg).
"""
from __future__ import annotations

import re
from functools import lru_cache
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

import numpy as np


class RankMismatchError(ValueError):
    pass


class GCMonomial(NamedTuple):
    exponents: tuple[int, ...]
    mask: int

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def xdeg(self) -> int:
        return sum(self.exponents)

    @property
    def ydeg(self) -> int:
        return bin(self.mask).count("1")

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.xdeg, self.ydeg

    @property
    def topological_degree(self) -> int:
        return 2 * self.xdeg + self.ydeg

    @property
    def odd_indices(self) -> tuple[int, ...]:
        """1-based indices of the y's present, increasing."""
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)


class Bidegree(NamedTuple):
    xdeg: int
    ydeg: int


def sign_normalize(factors: Iterable[int]) -> tuple[int, int]:
    """Sort a word in the odd generators (1-based indices).

    Returns (mask, sign) with sign the parity of the sorting permutation, or
    sign 0 when an index repeats (the product vanishes).
    """
    f = list(factors)
    mask = 0
    for i in f:
        if mask >> (i - 1) & 1:
            return mask, 0
        mask |= 1 << (i - 1)
    inversions = sum(1 for a in range(len(f)) for b in range(a + 1, len(f)) if f[a] > f[b])
    return mask, -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def mask_product_sign(m1: int, m2: int) -> int:
    """Sign of y_{m1} * y_{m2} relative to y_{m1|m2}; 0 when they share a generator."""
    if m1 & m2:
        return 0
    inversions = 0
    b = m2
    while b:
        low = b & -b
        # bits of m1 above this bit of m2 must pass over it
        inversions += bin(m1 & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if inversions % 2 else 1


def _monomial_key(m: GCMonomial):
    # graded-lex, x_1 > x_2 > ... ; larger monomials first; masks ascending as tiebreak
    return (-m.xdeg, -m.ydeg, tuple(-e for e in m.exponents), m.mask)


class GCElement:
    """Immutable sparse element: GCMonomial -> residue in 1..p-1."""

    __slots__ = ("_terms", "n", "p")

    def __init__(self, terms: Mapping[GCMonomial, int] | None = None, n: int = 3, p: int = 3):
        clean = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, GCMonomial):
                m = GCMonomial(tuple(m[0]), int(m[1]))
            if len(m.exponents) != n or m.mask >> n:
                raise RankMismatchError(f"monomial {m} does not have rank {n}")
            c = int(c) % p
            if c:
                clean[m] = (clean.get(m, 0) + c) % p
                if not clean[m]:
                    del clean[m]
        self._terms = clean
        self.n = n
        self.p = p

    @classmethod
    def _raw(cls, terms: dict, n: int, p: int) -> "GCElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.n = n
        obj.p = p
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, n: int = 3, p: int = 3) -> "GCElement":
        return cls._raw({}, n, p)

    @classmethod
    def one(cls, n: int = 3, p: int = 3) -> "GCElement":
        return cls.constant(1, n, p)

    @classmethod
    def constant(cls, c: int, n: int = 3, p: int = 3) -> "GCElement":
        return cls({GCMonomial((0,) * n, 0): c}, n, p)

    @classmethod
    def x(cls, i: int, n: int = 3, p: int = 3) -> "GCElement":
        e = [0] * n
        e[i - 1] = 1
        return cls._raw({GCMonomial(tuple(e), 0): 1}, n, p)

    @classmethod
    def y(cls, i: int, n: int = 3, p: int = 3) -> "GCElement":
        return cls._raw({GCMonomial((0,) * n, 1 << (i - 1)): 1}, n, p)

    @classmethod
    def monomial(cls, m: GCMonomial, c: int = 1, p: int = 3) -> "GCElement":
        return cls({m: c}, m.n, p)

    # access -----------------------------------------------------------------
    @property
    def terms(self) -> Mapping[GCMonomial, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, m: GCMonomial) -> int:
        return self._terms.get(m, 0)

    def monomials(self) -> list[GCMonomial]:
        return sorted(self._terms, key=_monomial_key)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {m.bidegree for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    @property
    def bidegree(self) -> Bidegree:
        bds = self.bidegrees()
        if len(bds) != 1:
            raise ValueError("bidegree is only defined for nonzero homogeneous elements")
        return Bidegree(*bds.pop())

    @property
    def xdeg(self) -> int:
        return self.bidegree.xdeg

    @property
    def ydeg(self) -> int:
        return self.bidegree.ydeg

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "GCElement"):
        if other.n != self.n:
            raise RankMismatchError(f"rank {self.n} vs rank {other.n}")
        if other.p != self.p:
            raise ValueError(f"F_{self.p} vs F_{other.p}")

    def _lift(self, other) -> "GCElement":
        if isinstance(other, GCElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return GCElement.constant(other, self.n, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.p
        out = dict(self._terms)
        for m, c in o._terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GCElement._raw(out, self.n, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return GCElement._raw({m: p - c for m, c in self._terms.items()}, self.n, p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "GCElement":
        c %= self.p
        if not c:
            return GCElement.zero(self.n, self.p)
        return GCElement._raw({m: v * c % self.p for m, v in self._terms.items()}, self.n, self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, GCElement):
            return NotImplemented
        return gc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = GCElement.one(self.n, self.p)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = GCElement.constant(other, self.n, self.p)
        if not isinstance(other, GCElement):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self._terms.items())))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"GCElement({format_element(self)!r})"


def gc_mul(a: GCElement, b: GCElement) -> GCElement:
    if a.n != b.n:
        raise RankMismatchError(f"rank {a.n} vs rank {b.n}")
    if a.p != b.p:
        raise ValueError(f"F_{a.p} vs F_{b.p}")
    p = a.p
    out: dict[GCMonomial, int] = {}
    for m1, c1 in a._terms.items():
        e1, k1 = m1
        for m2, c2 in b._terms.items():
            s = mask_product_sign(k1, m2.mask)
            if not s:
                continue
            key = GCMonomial(tuple(u + v for u, v in zip(e1, m2.exponents)), k1 | m2.mask)
            v = (out.get(key, 0) + s * c1 * c2) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return GCElement._raw(out, a.n, p)


# ---------------------------------------------------------------------------
# Coordinates
# ---------------------------------------------------------------------------

def _compositions(d: int, n: int):
    """Exponent tuples of total d, lexicographically decreasing."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def exponent_basis(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_compositions(d, n))


@lru_cache(maxsize=None)
def masks_of_weight(y: int, n: int) -> tuple[int, ...]:
    return tuple(m for m in range(1 << n) if bin(m).count("1") == y)


@lru_cache(maxsize=None)
def bidegree_basis(bd: tuple[int, int], n: int) -> tuple[GCMonomial, ...]:
    xdeg, ydeg = bd
    if xdeg < 0 or not 0 <= ydeg <= n:
        return ()
    return tuple(GCMonomial(e, m) for e in exponent_basis(xdeg, n) for m in masks_of_weight(ydeg, n))


@lru_cache(maxsize=None)
def basis_index(bd: tuple[int, int], n: int) -> dict[GCMonomial, int]:
    return {m: i for i, m in enumerate(bidegree_basis(bd, n))}


def bidegree_dim(bd: tuple[int, int], n: int) -> int:
    xdeg, ydeg = bd
    if xdeg < 0 or not 0 <= ydeg <= n:
        return 0
    return comb(xdeg + n - 1, n - 1) * comb(n, ydeg)


def to_vector(f: GCElement, bd: tuple[int, int]) -> np.ndarray:
    idx = basis_index(tuple(bd), f.n)
    v = np.zeros(len(idx), dtype=np.int64)
    for m, c in f._terms.items():
        try:
            v[idx[m]] = c
        except KeyError:
            raise ValueError(f"term {m} is not in bidegree {tuple(bd)}") from None
    return v


def from_vector(v, bd: tuple[int, int], n: int, p: int) -> GCElement:
    basis = bidegree_basis(tuple(bd), n)
    terms = {basis[i]: int(c) % p for i, c in enumerate(np.asarray(v).ravel()) if int(c) % p}
    return GCElement._raw(terms, n, p)


# ---------------------------------------------------------------------------
# Text syntax:  x1^4*x2^2*y1*y3+2*x3-y2
# ---------------------------------------------------------------------------

def format_monomial(m: GCMonomial) -> str:
    parts = []
    for i, e in enumerate(m.exponents, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    parts.extend(f"y{i}" for i in m.odd_indices)
    return "*".join(parts)


def format_element(f: GCElement) -> str:
    if f.is_zero():
        return "0"
    out = []
    for m in f.monomials():
        c = f._terms[m]
        body = format_monomial(m)
        if not body:
            out.append(str(c))
        elif c == 1:
            out.append(body)
        else:
            out.append(f"{c}*{body}")
    return "+".join(out)


_TERM_SPLIT = re.compile(r"([+-])")
_FACTOR = re.compile(r"^(?:([xy])(\d+)(?:\^(\d+))?|(\d+))$")


def parse_element(text: str, n: int = 3, p: int = 3) -> GCElement:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty element")
    tokens = _TERM_SPLIT.split(s)
    sign = 1
    total: dict[GCMonomial, int] = {}
    pending_sign = None
    for tok in tokens:
        if tok in "+-" and tok:
            pending_sign = (pending_sign or 1) * (-1 if tok == "-" else 1)
            continue
        if tok == "":
            continue
        sign = pending_sign or 1
        pending_sign = None
        coeff = sign
        exps = [0] * n
        odd: list[int] = []
        for fac in tok.split("*"):
            mt = _FACTOR.match(fac)
            if not mt:
                raise ValueError(f"cannot parse factor {fac!r} in {text!r}")
            var, idx, power, num = mt.groups()
            if num is not None:
                coeff *= int(num)
                continue
            i = int(idx)
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} out of range for rank {n}")
            k = int(power) if power else 1
            if var == "x":
                exps[i - 1] += k
            else:
                odd.extend([i] * k)
        mask, s_sign = sign_normalize(odd)
        if not s_sign:
            continue
        m = GCMonomial(tuple(exps), mask)
        total[m] = (total.get(m, 0) + coeff * s_sign) % p
    if pending_sign is not None:
        raise ValueError(f"dangling sign in {text!r}")
    return GCElement(total, n, p)
