"""Fixed spaces, relative invariants and Reynolds averages, one bidegree at a time.

Fixed spaces are always computed as nullspaces, never by averaging, so they
are valid in the modular case too.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .gcalg import GCElement, bidegree_basis, from_vector, to_vector
from .grouprep import LinearCharacter, Matrix, MatrixGroup, Representation, act_dual, substitution


class ModularGroupError(ArithmeticError):
    """Averaging requested over a group whose order the characteristic divides."""


@dataclass(frozen=True)
class FixedSpaceBasis:
    bidegree: tuple[int, int]
    basis: tuple[GCElement, ...]
    echelon: np.ndarray
    pivots: tuple[int, ...]
    context: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: GCElement) -> np.ndarray:
        """Coordinates in this basis; only meaningful for f in the space."""
        basis = bidegree_basis(self.bidegree, f.n)
        return np.array([f.coefficient(basis[c]) for c in self.pivots], dtype=np.int64)

    def contains(self, f: GCElement) -> bool:
        if f.is_zero():
            return True
        if f.bidegree != self.bidegree:
            return False
        res = linalg.reduce_against(to_vector(f, self.bidegree), self.echelon, list(self.pivots), f.p)
        return not res.any()


@dataclass(frozen=True, eq=False)
class Action:
    """A group acting on R through rep, with f required to satisfy g.f = chi(g) f."""

    group: MatrixGroup
    rep: Representation
    character: LinearCharacter | None = None
    name: str = ""

    @property
    def n(self) -> int:
        return self.rep.dim

    @property
    def p(self) -> int:
        return self.rep.p

    def chi(self, g: Matrix) -> int:
        return 1 if self.character is None else self.character(g)

    def pairs(self, all_elements: bool = False) -> tuple[tuple[Matrix, int], ...]:
        elems = self.group.elements if all_elements else self.group.generators
        return tuple(dict.fromkeys((self.rep.dual(g), self.chi(g)) for g in elems))

    def fixed_space(self, bd, all_elements: bool = False) -> FixedSpaceBasis:
        fs = _fixed_space(self.pairs(all_elements), tuple(bd), self.n, self.p)
        return FixedSpaceBasis(fs.bidegree, fs.basis, fs.echelon, fs.pivots, self.name)

    def is_relative_invariant(self, f: GCElement) -> bool:
        return all(act_dual(d, f) == f.scale(c) for d, c in self.pairs(all_elements=True))


@lru_cache(maxsize=None)
def action_matrix(d: Matrix, bd: tuple[int, int], n: int, p: int) -> np.ndarray:
    """Column c holds the image of the c-th basis monomial of bd."""
    basis = bidegree_basis(bd, n)
    sub = substitution(d, p)
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for c, m in enumerate(basis):
        out[:, c] = to_vector(sub.image(m), bd)
    return out


@lru_cache(maxsize=None)
def _fixed_space(pairs: tuple[tuple[Matrix, int], ...], bd: tuple[int, int], n: int, p: int) -> FixedSpaceBasis:
    size = len(bidegree_basis(bd, n))
    if size == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return FixedSpaceBasis(bd, (), empty, ())
    eye = np.eye(size, dtype=np.int64)
    blocks = [action_matrix(d, bd, n, p) - c * eye for d, c in pairs]
    system = np.vstack(blocks) if blocks else np.zeros((0, size), dtype=np.int64)
    null = linalg.nullspace(system, p)
    pivots = tuple(int(np.flatnonzero(row)[0]) for row in null)
    basis = tuple(from_vector(row, bd, n, p) for row in null)
    return FixedSpaceBasis(bd, basis, null, pivots)


def fixed_space(bd, group: MatrixGroup, rep: Representation, character: LinearCharacter | None = None,
                all_elements: bool = False) -> FixedSpaceBasis:
    """Echelon basis of {f in R_bd : g.f = chi(g) f for all g}."""
    return Action(group, rep, character).fixed_space(bd, all_elements)


def image_order(group: MatrixGroup, rep: Representation) -> int:
    return len({rep.images[g] for g in group.elements})


def reynolds(f: GCElement, group: MatrixGroup, rep: Representation,
             character: LinearCharacter | None = None) -> GCElement:
    """(1/|image|) sum over the image group of chi(s)^-1 s(f)."""
    p = f.p
    reps: dict[Matrix, int] = {}
    for g in group.elements:
        d = rep.dual(g)
        c = 1 if character is None else character(g)
        if reps.setdefault(d, c) != c:
            raise ValueError("character is not constant on kernel cosets")
    order = len(reps)
    if order % p == 0:
        raise ModularGroupError(f"image group of order {order} is modular in characteristic {p}")
    acc = GCElement.zero(f.n, p)
    for d, c in reps.items():
        acc = acc + act_dual(d, f).scale(pow(c, p - 2, p))
    return acc.scale(pow(order, p - 2, p))


def dimension_table(group: MatrixGroup, rep: Representation, character: LinearCharacter | None,
                    max_xdeg: int, ydegs=None) -> dict[int, list[int]]:
    action = Action(group, rep, character)
    if ydegs is None:
        ydegs = range(action.n + 1)
    return {y: [action.fixed_space((x, y)).dim for x in range(max_xdeg + 1)] for y in ydegs}
