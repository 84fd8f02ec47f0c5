"""The SL_2(F_3) conjugation setup and the named elements of its invariant ring.

Everything here can be overridden by a key/value config file (see
``load_config``) for experiments beyond the default setup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .gcalg import GCElement, parse_element
from .grouprep import (CosetTransversal, LinearCharacter, Matrix, MatrixGroup, Representation, as_matrix,
                       closure, conjugation_rep, identity_rep, mat_inv, mat_mul, transversal)
from .invariants import Action

P = 3
T = ((1, 1), (0, 1))
I = ((0, 1), (-1, 0))
BASIS = (
    ((0, 1), (-1, 0)),
    ((-1, -1), (-1, 1)),
    ((1, -1), (-1, -1)),
)
# chi on H = <i, j>: i -> 1, j -> -1 (so k = ij -> -1)
CHI_I = 1
CHI_J = -1

NAMED = {
    "a1": "x1^2+x2^2+x3^2",
    "a2": "x1*x2*x3",
    "a3": "x1^4+x2^4+x3^4",
    "b": "x1^4*x2^2+x1^2*x3^4+x2^4*x3^2",
    "c1": "x1*y1+x2*y2+x3*y3",
    "c2": "x2*x3*y1+x3*x1*y2+x1*x2*y3",
    "c3": "x1^3*y1+x2^3*y2+x3^3*y3",
    "c4": "x1*x2^2*y1+x2*x3^2*y2+x3*x1^2*y3",
    "c5": "x2^3*x3*y1+x3^3*x1*y2+x1^3*x2*y3",
    "c6": "x1^3*x2^2*y1+x2^3*x3^2*y2+x3^3*x1^2*y3",
    "d1": "x1*y2*y3+x2*y3*y1+x3*y1*y2",
    "d2": "x2*x3*y2*y3+x3*x1*y3*y1+x1*x2*y1*y2",
    "d3": "x1^3*y2*y3+x2^3*y3*y1+x3^3*y1*y2",
    "d4": "x1*x2^2*y2*y3+x2*x3^2*y3*y1+x3*x1^2*y1*y2",
    "d5": "x2^3*x3*y2*y3+x3^3*x1*y3*y1+x1^3*x2*y1*y2",
    "d6": "x1^3*x2^2*y2*y3+x2^3*x3^2*y3*y1+x3^3*x1^2*y1*y2",
    "y123": "y1*y2*y3",
}

RELATIVE_GENERATORS = ("x1", "x2*x3", "x1^3", "x1*x2^2", "x2^3*x3", "x1^3*x2^2")

MINIMAL_GENERATORS = ("a1", "a2", "a3", "b", "c1", "c2", "c3", "c4", "c5", "c6", "d1", "d2", "d3", "y123")

# (coefficient, exponents of a1, a2, a3, module generator)
RELATIONS = {
    ("c1", "c2"): [(-1, (0, 0, 0), "d4"), (-1, (1, 0, 0), "d1"), (1, (0, 0, 0), "d3")],
    ("c1", "c3"): [(1, (1, 0, 0), "d2"), (1, (0, 0, 0), "d5"), (-1, (0, 1, 0), "d1")],
    ("c2", "c3"): [(-1, (0, 0, 0), "d6"), (1, (1, 0, 0), "d4"), (-1, (1, 0, 0), "d3"), (1, (0, 1, 0), "d2"),
                   (-1, (0, 0, 1), "d1"), (-1, (2, 0, 0), "d1")],
}

MINIMAL_PROFILE = {
    (2, 0): 1, (3, 0): 1, (4, 0): 1, (6, 0): 1,
    (1, 1): 1, (2, 1): 1, (3, 1): 2, (4, 1): 1, (5, 1): 1,
    (1, 2): 1, (2, 2): 1, (3, 2): 1,
    (0, 3): 1,
}


@dataclass
class Setup:
    """Groups, representation, characters and named elements for one configuration."""

    p: int = P
    t: Matrix = T
    i: Matrix = I
    basis: tuple = BASIS
    chi_i: int = CHI_I
    chi_j: int = CHI_J
    named_text: dict = field(default_factory=lambda: dict(NAMED))

    def __post_init__(self):
        p = self.p
        self.t = as_matrix(self.t, p)
        self.i = as_matrix(self.i, p)
        self.basis = tuple(as_matrix(v, p) for v in self.basis)

    @property
    def n(self) -> int:
        return len(self.basis)

    @cached_property
    def j(self) -> Matrix:
        return mat_mul(mat_mul(mat_inv(self.t, self.p), self.i, self.p), self.t, self.p)

    @cached_property
    def k(self) -> Matrix:
        return mat_mul(mat_mul(self.t, self.i, self.p), mat_inv(self.t, self.p), self.p)

    @cached_property
    def G(self) -> MatrixGroup:
        return closure([self.t, self.i], self.p)

    @cached_property
    def H(self) -> MatrixGroup:
        return closure([self.i, self.j], self.p)

    @cached_property
    def rho(self) -> Representation:
        return conjugation_rep(self.G, self.basis)

    @cached_property
    def rho_H(self) -> Representation:
        return Representation(self.H, {h: self.rho.images[h] for h in self.H.elements}, self.p)

    @cached_property
    def Gbar(self) -> MatrixGroup:
        return self.rho.image_group()

    @cached_property
    def Hbar(self) -> MatrixGroup:
        return self.rho_H.image_group()

    @cached_property
    def chi(self) -> LinearCharacter:
        return LinearCharacter.from_generators(self.H, [(self.i, self.chi_i), (self.j, self.chi_j)])

    @cached_property
    def chi_bar(self) -> LinearCharacter:
        return self.chi.through(self.rho_H)

    @cached_property
    def transversal(self) -> CosetTransversal:
        return transversal(self.G, self.H)

    # actions on R
    @cached_property
    def G_action(self) -> Action:
        return Action(self.G, self.rho, None, "G")

    @cached_property
    def H_chi_action(self) -> Action:
        return Action(self.H, self.rho_H, self.chi, "H,chi")

    @cached_property
    def Hbar_action(self) -> Action:
        return Action(self.Hbar, identity_rep(self.Hbar), None, "Hbar")

    @cached_property
    def Hbar_chi_action(self) -> Action:
        return Action(self.Hbar, identity_rep(self.Hbar), self.chi_bar, "Hbar,chi")

    def action(self, group: str, character: str = "trivial") -> Action:
        table = {
            ("G", "trivial"): lambda: self.G_action,
            ("H", "trivial"): lambda: Action(self.H, self.rho_H, None, "H"),
            ("H", "chi"): lambda: self.H_chi_action,
            ("Hbar", "trivial"): lambda: self.Hbar_action,
            ("Hbar", "chi"): lambda: self.Hbar_chi_action,
        }
        try:
            return table[(group, character)]()
        except KeyError:
            raise ValueError(f"unknown group/character combination {group}/{character}") from None

    @cached_property
    def named(self) -> dict[str, GCElement]:
        return {k: parse_element(v, self.n, self.p) for k, v in self.named_text.items()}

    def element(self, text: str) -> GCElement:
        return parse_element(text, self.n, self.p)

    @cached_property
    def hsop(self):
        from .modstruct import HsopSubalgebra
        return HsopSubalgebra([self.named[a] for a in ("a1", "a2", "a3")], ["a1", "a2", "a3"])


# ---------------------------------------------------------------------------
# Config file:  one "key = value" per line, '#' comments.
#   p = 3
#   t = 1 1; 0 1            (row-major, rows separated by ';')
#   i = 0 1; -1 0
#   v1 = 0 1; -1 0          (v1, v2, v3, ...)
#   chi_i = 1
#   chi_j = -1
#   name.b = x1^4*x2^2+...  (override or add a named element)
# ---------------------------------------------------------------------------

def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    rows = [r.split() for r in text.split(";") if r.strip()]
    return tuple(tuple(int(x) for x in r) for r in rows)


def load_config(path: str | Path) -> Setup:
    kw: dict = {}
    basis: dict[int, Matrix] = {}
    named = dict(NAMED)
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "p":
            kw["p"] = int(value)
        elif key in ("t", "i"):
            kw[key] = parse_matrix(value)
        elif key in ("chi_i", "chi_j"):
            kw[key] = int(value)
        elif key.startswith("v") and key[1:].isdigit():
            basis[int(key[1:])] = parse_matrix(value)
        elif key.startswith("name."):
            named[key[5:]] = value
        else:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    if basis:
        kw["basis"] = tuple(basis[k] for k in sorted(basis))
    return Setup(named_text=named, **kw)
