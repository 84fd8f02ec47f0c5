"""Finite matrix groups over F_p, their representations and actions on R.

Matrices are tuples of row tuples with entries in 0..p-1, so group elements
are identified by their entries.  Representation images follow the row
convention used for the conjugation fixture: row s holds the coordinates of
g(v_s).  With that convention g -> image(g) reverses products, and the dual
action on x_1..x_n is read off row j of the inverse-transpose.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .gcalg import GCElement, GCMonomial, sign_normalize

Matrix = tuple[tuple[int, ...], ...]


class SingularMatrixError(ValueError):
    pass


class NotASubgroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Small matrix helpers
# ---------------------------------------------------------------------------

def as_matrix(rows: Iterable[Iterable[int]], p: int) -> Matrix:
    m = tuple(tuple(int(x) % p for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


@lru_cache(maxsize=4096)
def mat_inv(a: Matrix, p: int) -> Matrix:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] % p), None)
        if piv is None:
            raise SingularMatrixError(f"matrix {a} is singular mod {p}")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], p - 2, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def dual_action_matrix(g: Matrix, p: int) -> Matrix:
    """Inverse-transpose: the matrix of the contragredient action."""
    return transpose(mat_inv(g, p))


def is_monomial_matrix(a: Matrix) -> bool:
    return all(sum(1 for x in row if x) == 1 for row in a) and all(sum(1 for x in col if x) == 1 for col in zip(*a))


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class MatrixGroup:
    generators: tuple[Matrix, ...]
    elements: tuple[Matrix, ...]
    p: int

    @cached_property
    def index(self) -> dict[Matrix, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements[0])

    @property
    def identity(self) -> Matrix:
        return identity(self.dim)

    def __contains__(self, g) -> bool:
        return g in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(a, b, self.p)

    def inv(self, a: Matrix) -> Matrix:
        return mat_inv(a, self.p)

    @cached_property
    def table(self) -> list[list[int]]:
        """Multiplication table on element indices."""
        idx = self.index
        return [[idx[self.mul(a, b)] for b in self.elements] for a in self.elements]

    def exponent(self) -> int:
        from math import lcm
        from .ffield import matrix_order
        out = 1
        for g in self.elements:
            out = lcm(out, matrix_order(g, self.p))
        return out

    def is_closed(self) -> bool:
        idx = self.index
        return self.identity in idx and all(self.mul(a, b) in idx for a in self.elements for b in self.elements)


def closure(generators: Sequence[Sequence[Sequence[int]]], p: int) -> MatrixGroup:
    """Breadth-first closure from the identity, multiplying by generators on the right."""
    gens = tuple(as_matrix(g, p) for g in generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    for g in gens:
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("generators must be square of equal size")
        mat_inv(g, p)  # raises on singular input
    e = identity(n)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mat_mul(a, g, p)
            if b not in seen:
                seen.add(b)
                order.append(b)
                queue.append(b)
    return MatrixGroup(gens, tuple(order), p)


def subgroup_check(group: MatrixGroup, sub: MatrixGroup) -> None:
    if not all(h in group for h in sub.elements):
        raise NotASubgroupError("not contained in the group")
    if not sub.is_closed():
        raise NotASubgroupError("not closed under multiplication")


# ---------------------------------------------------------------------------
# Representations and characters
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Representation:
    source: MatrixGroup
    images: dict[Matrix, Matrix]
    p: int
    row_convention: bool = True

    @property
    def dim(self) -> int:
        return len(next(iter(self.images.values())))

    def image(self, g: Matrix) -> Matrix:
        return self.images[g]

    def dual(self, g: Matrix) -> Matrix:
        """Substitution matrix: row j gives the coordinates of g(x_j)."""
        d = dual_action_matrix(self.images[g], self.p)
        return d if self.row_convention else transpose(d)

    def kernel(self) -> list[Matrix]:
        e = identity(self.dim)
        return [g for g in self.source.elements if self.images[g] == e]

    def image_group(self) -> MatrixGroup:
        return closure([self.images[g] for g in self.source.generators], self.p)

    def is_multiplicative(self) -> bool:
        """Exhaustive check; under the row convention image(gh) = image(h) image(g)."""
        p = self.p
        for g in self.source.elements:
            for h in self.source.elements:
                gh = self.source.mul(g, h)
                a, b = self.images[g], self.images[h]
                expect = mat_mul(b, a, p) if self.row_convention else mat_mul(a, b, p)
                if self.images[gh] != expect:
                    return False
        return True


def identity_rep(group: MatrixGroup) -> Representation:
    """A matrix group acting through its own matrices (row convention)."""
    return Representation(group, {g: g for g in group.elements}, group.p)


def _coords_in_basis(target: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> tuple[int, ...]:
    from .linalg import solve
    import numpy as np
    a = np.array(basis, dtype=np.int64).T
    x, unique = solve(a, np.array(target, dtype=np.int64), p)
    if x is None or not unique:
        raise ValueError("basis does not span the target space")
    return tuple(int(v) for v in x)


def conjugation_rep(group: MatrixGroup, basis: Sequence[Sequence[Sequence[int]]]) -> Representation:
    """Action g(v) = g v g^-1 on trace-zero matrices, in the given basis (row convention)."""
    p = group.p
    basis = [as_matrix(v, p) for v in basis]
    d = group.dim
    if any(sum(v[i][i] for i in range(d)) % p for v in basis):
        raise ValueError("basis matrices must have trace zero")
    flat = [tuple(x for row in v for x in row) for v in basis]
    from .linalg import rank
    if len(basis) != d * d - 1 or rank(flat, p) != d * d - 1:
        raise ValueError("basis does not span the trace-zero matrices")
    images = {}
    for g in group.elements:
        gi = mat_inv(g, p)
        rows = []
        for v in basis:
            w = mat_mul(mat_mul(g, v, p), gi, p)
            rows.append(_coords_in_basis([x for row in w for x in row], flat, p))
        images[g] = tuple(rows)
    return Representation(group, images, p)


@dataclass(eq=False)
class LinearCharacter:
    source: MatrixGroup
    values: dict[Matrix, int]
    p: int

    def __call__(self, g: Matrix) -> int:
        return self.values[g]

    @classmethod
    def trivial(cls, group: MatrixGroup) -> "LinearCharacter":
        return cls(group, {g: 1 for g in group.elements}, group.p)

    @classmethod
    def from_generators(cls, group: MatrixGroup, gen_values: Mapping[Matrix, int] | Sequence[tuple]) -> "LinearCharacter":
        """Extend values on generators multiplicatively; raises if inconsistent."""
        p = group.p
        pairs = list(gen_values.items()) if isinstance(gen_values, Mapping) else list(gen_values)
        pairs = [(as_matrix(g, p), int(v) % p) for g, v in pairs]
        if any(v == 0 for _, v in pairs):
            raise ValueError("character values must be nonzero")
        e = group.identity
        vals = {e: 1}
        queue = deque([e])
        while queue:
            a = queue.popleft()
            for g, v in pairs:
                b = group.mul(a, g)
                w = vals[a] * v % p
                if b in vals:
                    if vals[b] != w:
                        raise ValueError("generator values do not define a character")
                else:
                    vals[b] = w
                    queue.append(b)
        if set(vals) != set(group.elements):
            raise ValueError("supplied elements do not generate the group")
        chi = cls(group, vals, p)
        if not chi.is_multiplicative():
            raise ValueError("generator values do not define a character")
        return chi

    def is_multiplicative(self) -> bool:
        p = self.p
        return all(
            self.values[self.source.mul(g, h)] == self.values[g] * self.values[h] % p
            for g in self.source.elements for h in self.source.elements
        )

    def through(self, rep: Representation) -> "LinearCharacter":
        """The character induced on the image group; must be constant on kernel cosets."""
        img = rep.image_group()
        vals: dict[Matrix, int] = {}
        for g, v in self.values.items():
            m = rep.images[g]
            if vals.setdefault(m, v) != v:
                raise ValueError("character is not trivial on the kernel")
        return LinearCharacter(img, vals, self.p)


@dataclass(eq=False)
class CosetTransversal:
    group: MatrixGroup
    subgroup: MatrixGroup
    representatives: tuple[Matrix, ...]

    def locate(self, g: Matrix) -> tuple[int, Matrix]:
        """(s, h) with g = T_s h and h in the subgroup."""
        for s, t in enumerate(self.representatives):
            h = self.group.mul(self.group.inv(t), g)
            if h in self.subgroup:
                return s, h
        raise ValueError("element lies in no listed coset")

    def is_transversal(self) -> bool:
        seen = set()
        for t in self.representatives:
            coset = frozenset(self.group.mul(t, h) for h in self.subgroup.elements)
            if coset & seen:
                return False
            seen |= coset
        return len(seen) == self.group.order


def transversal(group: MatrixGroup, sub: MatrixGroup) -> CosetTransversal:
    """First element of each left coset gH in BFS order."""
    subgroup_check(group, sub)
    covered: set[Matrix] = set()
    reps = []
    for g in group.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(group.mul(g, h) for h in sub.elements)
    return CosetTransversal(group, sub, tuple(reps))


# ---------------------------------------------------------------------------
# Induced modules and isomorphism checks
# ---------------------------------------------------------------------------

def induced_module(trans: CosetTransversal, chi: LinearCharacter) -> Callable[[Matrix], Matrix]:
    """Column matrices of g on k(G/H) (x) W in the basis T_s (x) w."""
    p = chi.p
    r = len(trans.representatives)

    def act(g: Matrix) -> Matrix:
        cols = [[0] * r for _ in range(r)]
        for s, t in enumerate(trans.representatives):
            s2, h = trans.locate(trans.group.mul(g, t))
            cols[s2][s] = chi(h) % p
        return tuple(tuple(row) for row in cols)

    return act


@dataclass
class IsoCheck:
    ok: bool
    witness: Matrix | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_module_iso(phi: Matrix, source: Callable[[Matrix], Matrix], target: Callable[[Matrix], Matrix],
                      generators: Sequence[Matrix], p: int) -> IsoCheck:
    """phi (column matrix) is an isomorphism iff invertible and phi src(g) = tgt(g) phi on generators."""
    try:
        mat_inv(phi, p)
    except SingularMatrixError:
        return IsoCheck(False, None, "phi is not bijective")
    for g in generators:
        if mat_mul(phi, source(g), p) != mat_mul(target(g), phi, p):
            return IsoCheck(False, g, "phi does not commute with g")
    return IsoCheck(True)


def dual_module(rep: Representation) -> Callable[[Matrix], Matrix]:
    """Column matrices of g on V* in the basis x_1..x_n."""
    return lambda g: transpose(rep.dual(g))


# ---------------------------------------------------------------------------
# Action on R
# ---------------------------------------------------------------------------

class _Substitution:
    """Algebra automorphism of R sending x_j -> sum_k D[j][k] x_k and likewise for y_j."""

    def __init__(self, d: Matrix, p: int):
        self.d, self.p, self.n = d, p, len(d)
        self.monomial = is_monomial_matrix(d)
        if self.monomial:
            self.perm = [next(k for k, v in enumerate(row) if v) for row in d]
            self.scal = [row[k] for row, k in zip(d, self.perm)]
        self._powers: dict[tuple[int, int], GCElement] = {}
        self._cache: dict[GCMonomial, GCElement] = {}

    def _linear(self, j: int, odd: bool) -> GCElement:
        n, p = self.n, self.p
        terms = {}
        for k, c in enumerate(self.d[j]):
            if c:
                if odd:
                    terms[GCMonomial((0,) * n, 1 << k)] = c
                else:
                    e = [0] * n
                    e[k] = 1
                    terms[GCMonomial(tuple(e), 0)] = c
        return GCElement._raw(terms, n, p)

    def _xpow(self, j: int, e: int) -> GCElement:
        key = (j, e)
        if key not in self._powers:
            self._powers[key] = self._linear(j, False) ** e
        return self._powers[key]

    def image(self, m: GCMonomial) -> GCElement:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        n, p = self.n, self.p
        if self.monomial:
            exps = [0] * n
            c = 1
            for j, e in enumerate(m.exponents):
                if e:
                    exps[self.perm[j]] += e
                    c *= pow(self.scal[j], e, p)
            word = []
            for j in range(n):
                if m.mask >> j & 1:
                    word.append(self.perm[j] + 1)
                    c *= self.scal[j]
            mask, s = sign_normalize(word)
            out = GCElement._raw({GCMonomial(tuple(exps), mask): c * s % p}, n, p)
        else:
            out = GCElement.one(n, p)
            for j, e in enumerate(m.exponents):
                if e:
                    out = out * self._xpow(j, e)
            for j in range(n):
                if m.mask >> j & 1:
                    out = out * self._linear(j, True)
        self._cache[m] = out
        return out

    def __call__(self, f: GCElement) -> GCElement:
        p = self.p
        acc: dict[GCMonomial, int] = {}
        for m, c in f._terms.items():
            for m2, c2 in self.image(m)._terms.items():
                v = (acc.get(m2, 0) + c * c2) % p
                if v:
                    acc[m2] = v
                else:
                    acc.pop(m2, None)
        return GCElement._raw(acc, f.n, p)


_SUBS: dict[tuple[Matrix, int], _Substitution] = {}


def substitution(d: Matrix, p: int) -> _Substitution:
    key = (d, p)
    sub = _SUBS.get(key)
    if sub is None:
        sub = _SUBS[key] = _Substitution(d, p)
    return sub


def act_dual(d: Matrix, f: GCElement) -> GCElement:
    """Apply the automorphism whose action on generators is given by rows of d."""
    if len(d) != f.n:
        raise ValueError(f"matrix size {len(d)} does not match rank {f.n}")
    return substitution(d, f.p)(f)


def act(g: Matrix, f: GCElement, rep: Representation) -> GCElement:
    """g . f for g in rep.source, through the contragredient of rep."""
    return act_dual(rep.dual(g), f)
