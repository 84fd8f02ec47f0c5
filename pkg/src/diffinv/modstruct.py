"""Module structure over the hsop subalgebra A, covariants, and algebra generators.

All membership questions are settled by exact linear algebra in one bidegree
at a time; infinite-degree statements come from the Hilbert-series identities
in ``series``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .gcalg import GCElement, bidegree_basis, bidegree_dim, exponent_basis, to_vector
from .grouprep import CosetTransversal, Representation, act
from .invariants import Action, FixedSpaceBasis
from .series import IntPolynomial, hsop_denominator, series_expand, series_over_hsop


class NotRelativeInvariantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# hsop
# ---------------------------------------------------------------------------

class HsopSubalgebra:
    """A = k[f_1..f_m] for homogeneous f_i with ydeg 0."""

    def __init__(self, generators: Sequence[GCElement], names: Sequence[str] | None = None):
        self.generators = tuple(generators)
        if not self.generators:
            raise ValueError("need at least one generator")
        for g in self.generators:
            if not g.is_homogeneous() or g.is_zero() or g.ydeg != 0:
                raise ValueError("hsop generators must be nonzero, homogeneous and even")
        self.names = tuple(names) if names else tuple(f"a{i + 1}" for i in range(len(self.generators)))
        self.degrees = tuple(g.xdeg for g in self.generators)
        self.n, self.p = self.generators[0].n, self.generators[0].p
        self._elements: dict[tuple[int, ...], GCElement] = {}
        self._monomials: dict[int, list[tuple[int, ...]]] = {}

    def monomials(self, d: int) -> list[tuple[int, ...]]:
        """Exponent vectors e with sum e_i deg_i = d, in lexicographically decreasing order."""
        if d < 0:
            return []
        if d not in self._monomials:
            out = []

            def rec(i, rem, acc):
                if i == len(self.degrees):
                    if rem == 0:
                        out.append(tuple(acc))
                    return
                for k in range(rem // self.degrees[i], -1, -1):
                    rec(i + 1, rem - k * self.degrees[i], acc + [k])

            rec(0, d, [])
            self._monomials[d] = out
        return self._monomials[d]

    def element(self, exps: tuple[int, ...]) -> GCElement:
        hit = self._elements.get(exps)
        if hit is None:
            if not any(exps):
                hit = GCElement.one(self.n, self.p)
            else:
                i = max(k for k, e in enumerate(exps) if e)
                lower = list(exps)
                lower[i] -= 1
                hit = self.element(tuple(lower)) * self.generators[i]
            self._elements[exps] = hit
        return hit

    def format_monomial(self, exps: tuple[int, ...]) -> str:
        parts = [name if e == 1 else f"{name}^{e}" for name, e in zip(self.names, exps) if e]
        return "*".join(parts) or "1"

    def hilbert_denominator(self) -> IntPolynomial:
        return hsop_denominator(self.degrees)


def hsop_check(polys: Sequence[GCElement], n: int, window: tuple[int, int] | None = None) -> bool:
    """The ideal (polys) contains every monomial of degree d for all d in the window.

    The default window starts at sum(e_i - 1) + 1, where the quotient by an
    hsop vanishes, and runs for max(e_i) further degrees.
    """
    if len(polys) != n:
        raise ValueError(f"need {n} polynomials for an hsop of S in {n} variables, got {len(polys)}")
    degrees = []
    for f in polys:
        if f.is_zero() or not f.is_homogeneous() or f.ydeg != 0:
            raise ValueError("hsop candidates must be nonzero homogeneous polynomials in the x's")
        degrees.append(f.xdeg)
    p = polys[0].p
    if window is None:
        start = sum(e - 1 for e in degrees) + 1
        window = (start, start + max(degrees))
    for d in range(window[0], window[1] + 1):
        rows = []
        for f, e in zip(polys, degrees):
            for exps in exponent_basis(d - e, n) if d >= e else ():
                m = GCElement({(exps, 0): 1}, n, p)
                rows.append(to_vector(m * f, (d, 0)))
        if not rows or linalg.rank(np.array(rows), p) != bidegree_dim((d, 0), n):
            return False
    return True


# ---------------------------------------------------------------------------
# A-spans
# ---------------------------------------------------------------------------

def _span_rows(gens: Sequence[GCElement], hsop: HsopSubalgebra, bd: tuple[int, int]) -> list[GCElement]:
    out = []
    for g in gens:
        if g.is_zero():
            continue
        gx, gy = g.bidegree
        if gy != bd[1]:
            continue
        for exps in hsop.monomials(bd[0] - gx):
            out.append(hsop.element(exps) * g)
    return out


def _rank_of(elems: Sequence[GCElement], bd: tuple[int, int], p: int) -> int:
    if not elems:
        return 0
    return linalg.rank(np.array([to_vector(f, bd) for f in elems]), p)


def a_span_dims(gens: Sequence[GCElement], hsop: HsopSubalgebra, xdegs: Sequence[int], ydeg: int) -> list[int]:
    """dim of sum_i A g_i in each bidegree (d, ydeg)."""
    return [_rank_of(_span_rows(gens, hsop, (d, ydeg)), (d, ydeg), hsop.p) for d in xdegs]


def free_counts(gens: Sequence[GCElement], hsop: HsopSubalgebra, max_xdeg: int) -> list[int]:
    """Dimensions a free module on gens would have."""
    num = generator_numerator(gens)
    return series_expand(series_over_hsop(num, hsop.degrees), max_xdeg)


def generator_numerator(gens: Sequence[GCElement]) -> IntPolynomial:
    counts: dict[int, int] = {}
    for g in gens:
        counts[g.xdeg] = counts.get(g.xdeg, 0) + 1
    return IntPolynomial([counts.get(i, 0) for i in range(max(counts, default=-1) + 1)])


@dataclass
class GenerationResult:
    ok: bool
    free: bool
    span_dims: list[int]
    fixed_dims: list[int]
    free_dims: list[int]
    witness: tuple[tuple[int, int], GCElement] | None = None

    def __bool__(self):
        return self.ok


def generation_check(gens: Sequence[GCElement], hsop: HsopSubalgebra, action: Action, ydeg: int,
                     max_xdeg: int) -> GenerationResult:
    """A-span of gens equals the fixed space in every (d, ydeg), d <= max_xdeg.

    ``free`` additionally records that the span has the dimensions of a free
    module on gens (no A-relations up to the bound).
    """
    p = hsop.p
    span_dims, fixed_dims = [], []
    free_dims = free_counts(gens, hsop, max_xdeg)
    witness = None
    ok = True
    for g in gens:
        if not action.is_relative_invariant(g):
            ok = False
            witness = (tuple(g.bidegree), g)
    for d in range(max_xdeg + 1):
        bd = (d, ydeg)
        fs = action.fixed_space(bd)
        rows = _span_rows(gens, hsop, bd)
        if rows:
            ech, piv = linalg.rref(np.array([to_vector(f, bd) for f in rows]), p)
        else:
            ech, piv = np.zeros((0, len(bidegree_basis(bd, hsop.n))), dtype=np.int64), []
        span_dims.append(len(piv))
        fixed_dims.append(fs.dim)
        if witness is None:
            for f in fs.basis:
                if linalg.reduce_against(to_vector(f, bd), ech, piv, p).any():
                    witness = (bd, f)
                    break
        if len(piv) != fs.dim:
            ok = False
    ok = ok and witness is None
    free = span_dims == free_dims
    return GenerationResult(ok, free, span_dims, fixed_dims, free_dims, witness)


@dataclass
class GeneratorReport:
    context: str
    names: list[str]
    generators: list[GCElement]
    max_xdeg: int
    numerator: IntPolynomial = field(default_factory=IntPolynomial)
    free: bool = False
    complete: bool = False

    @property
    def bidegrees(self) -> list[tuple[int, int]]:
        return [tuple(g.bidegree) for g in self.generators]

    @property
    def degrees(self) -> list[int]:
        return [g.xdeg for g in self.generators]

    def counts_match_numerator(self) -> bool:
        return generator_numerator(self.generators) == self.numerator

    def to_dict(self) -> dict:
        return {
            "context": self.context,
            "generators": [{"name": n, "bidegree": list(g.bidegree), "element": str(g)}
                           for n, g in zip(self.names, self.generators)],
            "numerator": list(self.numerator.coeffs),
            "free": self.free,
            "complete": self.complete,
            "max_xdeg": self.max_xdeg,
        }


def find_module_generators(hsop: HsopSubalgebra, action: Action, ydeg: int, max_xdeg: int,
                           prefix: str = "g") -> GeneratorReport:
    """Greedy ascending-degree choice of A-module generators of a fixed-space family."""
    p = hsop.p
    gens: list[GCElement] = []
    for d in range(max_xdeg + 1):
        bd = (d, ydeg)
        fs = action.fixed_space(bd)
        if fs.dim == 0:
            continue
        rows = _span_rows(gens, hsop, bd)
        if rows:
            coords = np.array([fs.coordinates(f) for f in rows])
            _, piv = linalg.rref(coords, p)
        else:
            piv = []
        # basis vectors of the fixed space at non-pivot positions complete the span
        for j in range(fs.dim):
            if j not in piv:
                gens.append(fs.basis[j])
    names = [f"{prefix}{k + 1}" for k in range(len(gens))]
    report = GeneratorReport(action.name, names, gens, max_xdeg, generator_numerator(gens))
    check = generation_check(gens, hsop, action, ydeg, max_xdeg)
    report.free, report.complete = check.free, check.ok
    return report


def spans_same_complement(candidates: Sequence[GCElement], lower: Sequence[GCElement],
                          space: FixedSpaceBasis, p: int) -> bool:
    """candidates together with lower span the space, and candidates are independent modulo lower."""
    bd = space.bidegree
    lower_rank = _rank_of(lower, bd, p)
    total = _rank_of(list(lower) + list(candidates), bd, p)
    return total == space.dim and total - lower_rank == len(candidates)


def freeness_triangle(gens: Sequence[GCElement], hsop: HsopSubalgebra, action: Action, ydeg: int,
                      max_xdeg: int) -> dict:
    """Series of the free module on gens == A-span dims == fixed-space dims."""
    num = generator_numerator(gens)
    series = series_over_hsop(num, hsop.degrees).expand(max_xdeg)
    res = generation_check(gens, hsop, action, ydeg, max_xdeg)
    return {
        "numerator": list(num.coeffs),
        "series": series,
        "span_dims": res.span_dims,
        "fixed_dims": res.fixed_dims,
        "ok": bool(res.ok and series == res.span_dims == res.fixed_dims),
    }


# ---------------------------------------------------------------------------
# Theta
# ---------------------------------------------------------------------------

def _coset_forms(i: int, n: int, p: int) -> list[GCElement]:
    """Forms attached to the cosets: y_s for i = 1, y_{s+1} y_{s+2} for i = 2 (indices mod n)."""
    y = [GCElement.y(s, n, p) for s in range(1, n + 1)]
    if i == 1:
        return y
    if i == 2:
        if n != 3:
            raise ValueError("2-forms indexed by cosets need rank 3")
        return [y[(s + 1) % 3] * y[(s + 2) % 3] for s in range(3)]
    raise ValueError("i must be 1 or 2")


def theta(f: GCElement, i: int, trans: CosetTransversal, rep: Representation, relative: Action) -> GCElement:
    """sum_s T_s(f) * omega_s, from chi-relative H-invariants to G-invariants of ydeg i."""
    if not relative.is_relative_invariant(f):
        raise NotRelativeInvariantError(f"{f} is not a relative invariant for {relative.name or 'H'}")
    forms = _coset_forms(i, f.n, f.p)
    if len(forms) != len(trans.representatives):
        raise ValueError("need one coset form per coset representative")
    out = GCElement.zero(f.n, f.p)
    for t, w in zip(trans.representatives, forms):
        out = out + act(t, f, rep) * w
    return out


@dataclass
class ThetaCheck:
    ok: bool
    failures: list[dict] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def theta_iso_check(trans: CosetTransversal, rep: Representation, relative: Action, target: Action,
                    max_xdeg: int, forms: Sequence[int] = (1, 2)) -> ThetaCheck:
    """Theta maps a basis of each relative fixed space onto a basis of the target's fixed space."""
    failures = []
    if not trans.is_transversal():
        failures.append({"reason": "representatives do not form a transversal"})
    p = rep.p
    for i in forms:
        for d in range(max_xdeg + 1):
            src = relative.fixed_space((d, 0))
            tgt = target.fixed_space((d, i))
            images = [theta(f, i, trans, rep, relative) for f in src.basis]
            outside = [str(g) for g in images if not tgt.contains(g)]
            r = _rank_of(images, (d, i), p)
            if outside or r != len(images) or r != tgt.dim:
                failures.append({"i": i, "xdeg": d, "source_dim": src.dim, "target_dim": tgt.dim,
                                 "image_rank": r, "not_invariant": len(outside)})
    return ThetaCheck(not failures, failures)


# ---------------------------------------------------------------------------
# Minimal algebra generators
# ---------------------------------------------------------------------------

@dataclass
class MinimalGenerators:
    max_xdeg: int
    profile: dict[tuple[int, int], int]
    representatives: dict[tuple[int, int], list[GCElement]]
    decomposable_dims: dict[tuple[int, int], int]
    fixed_dims: dict[tuple[int, int], int]

    @property
    def total(self) -> int:
        return sum(self.profile.values())

    def decomposables(self, bd: tuple[int, int], action: Action) -> list[GCElement]:
        return _decomposables(bd, self.representatives, action)


def _products(bd, gens_by_bd: dict[tuple[int, int], list[GCElement]], action: Action) -> list[GCElement]:
    out = []
    x, y = bd
    for (gx, gy), gens in gens_by_bd.items():
        rest = (x - gx, y - gy)
        if rest[0] < 0 or not 0 <= rest[1] <= action.n or rest == (0, 0) or (gx, gy) == (0, 0):
            continue
        basis = action.fixed_space(rest).basis
        for g in gens:
            out.extend(g * w for w in basis)
    return out


def _decomposables(bd, gens_by_bd, action: Action) -> list[GCElement]:
    return [f for f in _products(bd, gens_by_bd, action) if not f.is_zero()]


def _bidegree_order(max_xdeg: int, n: int) -> list[tuple[int, int]]:
    bds = [(x, y) for x in range(max_xdeg + 1) for y in range(n + 1) if (x, y) != (0, 0)]
    return sorted(bds, key=lambda b: (2 * b[0] + b[1], b[1]))


def minimal_algebra_generators(action: Action, max_xdeg: int,
                               extra_decomposables: Sequence[GCElement] = ()) -> MinimalGenerators:
    """Indecomposables R^G_+ / (R^G_+)^2 per bidegree, x-degree <= max_xdeg.

    Products of positive-degree invariants in degree b are spanned by g * w with
    g a minimal generator of lower degree and w an invariant of degree b - deg g,
    so only the generators found so far need to be multiplied out.
    """
    p, n = action.p, action.n
    gens_by_bd: dict[tuple[int, int], list[GCElement]] = {}
    profile, dec_dims, fixed_dims = {}, {}, {}
    extras: dict[tuple[int, int], list[GCElement]] = {}
    for f in extra_decomposables:
        extras.setdefault(tuple(f.bidegree), []).append(f)
    for bd in _bidegree_order(max_xdeg, n):
        fs = action.fixed_space(bd)
        fixed_dims[bd] = fs.dim
        if fs.dim == 0:
            continue
        prods = _decomposables(bd, gens_by_bd, action) + extras.get(bd, [])
        if prods:
            full = np.array([to_vector(f, bd) for f in prods])
            stray = linalg.reduce_against(full, fs.echelon, list(fs.pivots), p)
            if stray.any():
                raise AssertionError(f"product of invariants left the fixed space at {bd}")
            _, piv = linalg.rref(full[:, list(fs.pivots)], p)
        else:
            piv = []
        dec_dims[bd] = len(piv)
        reps = [fs.basis[j] for j in range(fs.dim) if j not in piv]
        if reps:
            gens_by_bd[bd] = reps
            profile[bd] = len(reps)
    return MinimalGenerators(max_xdeg, profile, gens_by_bd, dec_dims, fixed_dims)


def named_generators_check(named: dict[str, GCElement], mg: MinimalGenerators, action: Action) -> dict:
    """At every bidegree with indecomposables, the named elements there complete the decomposables."""
    by_bd: dict[tuple[int, int], list[str]] = {}
    for name, f in named.items():
        by_bd.setdefault(tuple(f.bidegree), []).append(name)
    result = {}
    ok = True
    for bd in sorted(set(by_bd) | set(mg.profile), key=lambda b: (2 * b[0] + b[1], b[1])):
        if bd[0] > mg.max_xdeg:
            continue
        names = by_bd.get(bd, [])
        fs = action.fixed_space(bd)
        dec = mg.decomposables(bd, action)
        good = all(fs.contains(named[nm]) for nm in names) and \
            spans_same_complement([named[nm] for nm in names], dec, fs, action.p)
        result[f"{bd[0]},{bd[1]}"] = {"names": names, "count": mg.profile.get(bd, 0), "ok": good}
        ok &= good
    return {"ok": ok, "bidegrees": result}


def in_subalgebra(f: GCElement, gens: Sequence[GCElement], mg: MinimalGenerators, action: Action) -> bool:
    """f lies in the subalgebra generated by gens, given that gens span the lower indecomposables."""
    bd = tuple(f.bidegree)
    dec = mg.decomposables(bd, action)
    same = [g for g in gens if not g.is_zero() and tuple(g.bidegree) == bd]
    return _rank_of(dec + same, bd, action.p) == _rank_of(dec + same + [f], bd, action.p)


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

@dataclass
class RelationRecord:
    left: str
    product: GCElement
    coefficients: dict[str, dict[tuple[int, ...], int]]
    unique: bool
    residual_zero: bool
    hsop_names: tuple[str, ...] = ("a1", "a2", "a3")

    def right_side_text(self, p: int = 3) -> str:
        parts = []
        for name, poly in self.coefficients.items():
            for exps, c in poly.items():
                mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.hsop_names, exps) if e)
                body = f"{mono}*{name}" if mono else name
                if c == 1:
                    parts.append("+" + body)
                elif c == p - 1:
                    parts.append("-" + body)
                else:
                    parts.append(f"+{c}*{body}")
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s

    def matches(self, terms, p: int = 3) -> bool:
        """Compare with (coefficient, a-exponents, generator) triples."""
        want: dict[str, dict[tuple[int, ...], int]] = {}
        for c, exps, name in terms:
            slot = want.setdefault(name, {})
            slot[tuple(exps)] = (slot.get(tuple(exps), 0) + c) % p
        want = {k: {e: c for e, c in v.items() if c} for k, v in want.items()}
        return {k: v for k, v in want.items() if v} == self.coefficients

    def to_dict(self) -> dict:
        return {
            "left": self.left,
            "right": self.right_side_text(),
            "unique": self.unique,
            "residual_zero": self.residual_zero,
        }


def relation_extract(product: GCElement, module_gens: dict[str, GCElement], hsop: HsopSubalgebra,
                     left: str = "") -> RelationRecord | None:
    """Write product as sum of A-multiples of module_gens; None if it is not in their span."""
    p = hsop.p
    if product.is_zero():
        return RelationRecord(left, product, {}, True, True, hsop.names)
    bd = tuple(product.bidegree)
    cols, labels = [], []
    for name, g in module_gens.items():
        gx, gy = g.bidegree
        if gy != bd[1]:
            continue
        for exps in hsop.monomials(bd[0] - gx):
            cols.append(to_vector(hsop.element(exps) * g, bd))
            labels.append((name, exps))
    if not cols:
        return None
    sol, unique = linalg.solve(np.array(cols).T, to_vector(product, bd), p)
    if sol is None:
        return None
    coeffs: dict[str, dict[tuple[int, ...], int]] = {}
    rebuilt = GCElement.zero(product.n, p)
    for (name, exps), c in zip(labels, sol):
        c = int(c)
        if c:
            coeffs.setdefault(name, {})[exps] = c
            rebuilt = rebuilt + (hsop.element(exps) * module_gens[name]).scale(c)
    return RelationRecord(left, product, coeffs, unique, rebuilt == product, hsop.names)


def relation_from_terms(terms, module_gens: dict[str, GCElement], hsop: HsopSubalgebra) -> GCElement:
    """Evaluate sum c * a^e * gen for (c, e, gen) triples."""
    out = GCElement.zero(hsop.n, hsop.p)
    for c, exps, name in terms:
        out = out + (hsop.element(tuple(exps)) * module_gens[name]).scale(c)
    return out
