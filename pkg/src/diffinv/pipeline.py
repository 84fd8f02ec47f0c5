"""End-to-end certification run behind ``diffinv reproduce``."""
from __future__ import annotations

import hashlib
import json
import time
from contextlib import contextmanager

from . import __version__
from .ffield import BrauerLift
from .fixtures import MINIMAL_GENERATORS, MINIMAL_PROFILE, RELATIONS, RELATIVE_GENERATORS, Setup
from .grouprep import LinearCharacter, act, dual_module, identity, induced_module, verify_module_iso
from .modstruct import (find_module_generators, freeness_triangle, generation_check, hsop_check, in_subalgebra,
                        minimal_algebra_generators, named_generators_check, relation_extract, spans_same_complement,
                        theta, theta_iso_check)
from .series import (IntPolynomial, format_hsop_form, format_series, molien, rewrite_over_hsop, series_over_hsop)

SCHEMA = 1


def _m(mat) -> list[list[int]]:
    return [list(r) for r in mat]


def _signed(mat, p):
    return [[x - p if x > p // 2 else x for x in row] for row in mat]


class Run:
    def __init__(self, setup: Setup, max_degree: int):
        self.s = setup
        self.D = max_degree
        self.certs: dict[str, dict] = {}
        self.timing: dict[str, float] = {}
        self._mg = None

    @property
    def mg(self):
        if self._mg is None:
            self._mg = minimal_algebra_generators(self.s.G_action, self.D)
        return self._mg

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        yield
        self.timing[name] = round(time.perf_counter() - t0, 4)

    def record(self, name: str, ok: bool, **details):
        self.certs[name] = {"pass": bool(ok), **details}


def _groups(run: Run):
    s = run.s
    kernel = s.rho.kernel()
    minus_e = tuple(tuple((-x) % s.p for x in row) for row in identity(2))
    ok = (s.G.order == 24 and s.Gbar.order == 12 and s.H.order == 8 and s.Hbar.order == 4
          and set(kernel) == {identity(2), minus_e} and s.rho.is_multiplicative())
    run.record("group_closure", ok,
               order_G=s.G.order, order_Gbar=s.Gbar.order, order_H=s.H.order, order_Hbar=s.Hbar.order,
               kernel=[_signed(k, s.p) for k in kernel],
               rho_t=_signed(s.rho.image(s.t), s.p), rho_i=_signed(s.rho.image(s.i), s.p),
               rho_j=_signed(s.rho.image(s.j), s.p), rho_k=_signed(s.rho.image(s.k), s.p),
               transversal=[_signed(t, s.p) for t in s.transversal.representatives],
               row_convention_multiplicative=s.rho.is_multiplicative())


def _module_iso(run: Run):
    s = run.s
    phi = identity(3)  # x_s -> T_{s-1} (x) w
    src = dual_module(s.rho)
    res = verify_module_iso(phi, src, induced_module(s.transversal, s.chi), s.G.generators, s.p)
    swapped = LinearCharacter.from_generators(s.H, [(s.i, -s.chi_i), (s.j, -s.chi_j)])
    neg = verify_module_iso(phi, src, induced_module(s.transversal, swapped), s.G.generators, s.p)
    derived_actions = {name: [str(act(g, s.element(f"x{c}"), s.rho)) for c in (1, 2, 3)]
                       for name, g in (("t", s.t), ("i", s.i), ("j", s.j), ("k", s.k))}
    run.record("module_isomorphism", bool(res) and not neg,
               phi_is_isomorphism=bool(res),
               swapped_character_rejected=not neg,
               swapped_witness=_signed(neg.witness, s.p) if neg.witness else None,
               derived_actions=derived_actions,
               chi={"i": _signed([[s.chi(s.i)]], s.p)[0][0], "j": _signed([[s.chi(s.j)]], s.p)[0][0],
                    "k": _signed([[s.chi(s.k)]], s.p)[0][0]})


def _dimensions(run: Run):
    s, D = run.s, run.D
    tables = {
        "G": {str(y): [s.G_action.fixed_space((x, y)).dim for x in range(D + 1)] for y in range(4)},
        "Hbar_chi": [s.Hbar_chi_action.fixed_space((x, 0)).dim for x in range(D + 1)],
        "Hbar": [s.Hbar_action.fixed_space((x, 0)).dim for x in range(D + 1)],
    }
    run.tables = tables
    run.record("invariant_dimensions", True, max_xdeg=D, tables=tables)


def _molien(run: Run):
    s, D = run.s, run.D
    lift = BrauerLift.for_exponent(s.p, s.Hbar.exponent())
    m_chi = molien(s.Hbar, character=s.chi_bar, lift=lift)
    m_triv = molien(s.Hbar, lift=lift)
    m_H = molien(s.H, s.rho_H, s.chi)
    num_224 = rewrite_over_hsop(m_chi, [2, 2, 2])
    num_234 = rewrite_over_hsop(m_chi, [2, 3, 4])
    expected = series_over_hsop(IntPolynomial([0, 1, 1]), [2, 2, 2])
    ok = (m_chi == expected and m_H == m_chi
          and num_234 == IntPolynomial([0, 1, 1, 2, 1, 1])
          and m_chi.expand(D) == run.tables["Hbar_chi"]
          and m_triv.expand(D) == run.tables["Hbar"])
    run.record("molien", ok,
               chi_series=format_hsop_form(num_224, [2, 2, 2]),
               chi_reduced=format_series(m_chi),
               chi_over_234=format_hsop_form(num_234, [2, 3, 4]),
               chi_over_234_nonnegative=num_234.is_nonnegative(),
               trivial_series=format_hsop_form(rewrite_over_hsop(m_triv, [2, 2, 2]), [2, 2, 2]),
               matches_dimension_tables=m_chi.expand(D) == run.tables["Hbar_chi"]
               and m_triv.expand(D) == run.tables["Hbar"],
               lift_field_order=lift.field.order, lift_root_order=lift.e)


def _hsop(run: Run):
    s = run.s
    a = [s.named[k] for k in ("a1", "a2", "a3")]
    squares = [s.element(f"x{c}^2") for c in (1, 2, 3)]
    a_ok = hsop_check(a, 3)
    sq_ok = hsop_check(squares, 3)
    inv = all(s.G_action.is_relative_invariant(f) for f in a)
    sq_inv = all(s.Hbar_action.is_relative_invariant(f) for f in squares)
    run.record("hsop", a_ok and sq_ok and inv and sq_inv, a=a_ok, a_invariant=inv, squares=sq_ok,
               squares_invariant_under_H=sq_inv)


def _invariants_G(run: Run):
    s, D, A = run.s, run.D, run.s.hsop
    series = series_over_hsop(IntPolynomial([1, 0, 0, 0, 0, 0, 1]), A.degrees)
    dims_ok = series.expand(D) == run.tables["G"]["0"]
    rep = find_module_generators(A, s.G_action, 0, D, prefix="s")
    want = [d for d in (0, 6) if d <= D]
    b_ok = True
    if D >= 6:
        fs = s.G_action.fixed_space((6, 0))
        lower = [A.element(e) for e in A.monomials(6)]
        b_ok = spans_same_complement([s.named["b"]], lower, fs, s.p) and spans_same_complement(
            [g for g in rep.generators if g.xdeg == 6], lower, fs, s.p)
    gen = generation_check([s.element("1"), s.named["b"]], A, s.G_action, 0, D)
    run.record("invariants_S_G", dims_ok and rep.degrees == want and b_ok and gen.ok and gen.free,
               dims_match_series=dims_ok, series=format_hsop_form(IntPolynomial([1, 0, 0, 0, 0, 0, 1]), A.degrees),
               found_degrees=rep.degrees, found=[str(g) for g in rep.generators],
               b_spans_degree6_complement=b_ok, generated_by_1_b=gen.ok, free=gen.free)


def _relative(run: Run):
    s, D, A = run.s, run.D, run.s.hsop
    gens = [s.element(t) for t in RELATIVE_GENERATORS]
    full = generation_check(gens, A, s.Hbar_chi_action, 0, D)
    drops = {}
    for k, g in enumerate(gens):
        if g.xdeg > D:
            continue
        res = generation_check(gens[:k] + gens[k + 1:], A, s.Hbar_chi_action, 0, D)
        drops[RELATIVE_GENERATORS[k]] = {
            "fails": not res.ok,
            "witness_bidegree": list(res.witness[0]) if res.witness else None,
            "witness": str(res.witness[1]) if res.witness else None,
        }
    found = find_module_generators(A, s.Hbar_chi_action, 0, D, prefix="r")
    want = [d for d in (1, 2, 3, 3, 4, 5) if d <= D]
    ok = full.ok and full.free and all(v["fails"] for v in drops.values()) and found.degrees == want
    run.record("relative_invariants", ok, generated=full.ok, free=full.free, span_dims=full.span_dims,
               drop_one=drops, found_degrees=found.degrees)


def _summands(run: Run):
    s, D, A = run.s, run.D, run.s.hsop
    N = s.named
    families = {
        "0": [s.element("1"), N["b"]],
        "1": [N[f"c{k}"] for k in range(1, 7)],
        "2": [N[f"d{k}"] for k in range(1, 7)],
        "3": [N["y123"], N["b"] * N["y123"]],
    }
    out = {}
    ok = True
    for y, gens in families.items():
        tri = freeness_triangle(gens, A, s.G_action, int(y), D)
        found = find_module_generators(A, s.G_action, int(y), D)
        tri["found_degrees"] = found.degrees
        out[y] = tri
        ok &= tri["ok"] and found.free and found.complete
    run.record("lambda_summands", ok, summands=out)


def _theta(run: Run):
    s, D = run.s, run.D
    checks = {}
    for k, text in enumerate(RELATIVE_GENERATORS, start=1):
        f = s.element(text)
        for i, letter in ((1, "c"), (2, "d")):
            img = theta(f, i, s.transversal, s.rho, s.H_chi_action)
            checks[f"theta{i}({text})={letter}{k}"] = img == s.named[f"{letter}{k}"]
    iso = theta_iso_check(s.transversal, s.rho, s.H_chi_action, s.G_action, D)
    run.record("theta", all(checks.values()) and iso.ok, identities=checks, isomorphism=iso.ok,
               failures=iso.failures)


def _relations(run: Run):
    s, D, A = run.s, run.D, run.s.hsop
    N = s.named
    dgens = {f"d{k}": N[f"d{k}"] for k in range(1, 7)}
    records = []
    ok = True
    for (u, v), terms in RELATIONS.items():
        prod = N[u] * N[v]
        if prod.xdeg > D:
            records.append({"left": f"{u}*{v}", "skipped": "beyond max degree"})
            continue
        rec = relation_extract(prod, dgens, A, f"{u}*{v}")
        if rec is None:
            ok = False
            records.append({"left": f"{u}*{v}", "in_span": False})
            continue
        agrees = rec.matches(terms, s.p)
        row = rec.to_dict()
        row["in_span"] = True
        row["agrees_with_reference"] = agrees
        if not agrees:
            row["erratum"] = True
        records.append(row)
        ok &= rec.unique and rec.residual_zero
    gens = [N[k] for k in MINIMAL_GENERATORS]
    obsolete = {k: in_subalgebra(N[k], gens, run.mg, s.G_action) for k in ("d4", "d5", "d6") if N[k].xdeg <= D}
    run.record("relations", ok and all(obsolete.values()), records=records, obsolete_decomposable=obsolete)


def _minimal(run: Run):
    s, D = run.s, run.D
    mg = run.mg
    want = {bd: c for bd, c in MINIMAL_PROFILE.items() if bd[0] <= D}
    named = {k: s.named[k] for k in MINIMAL_GENERATORS if s.named[k].xdeg <= D}
    nc = named_generators_check(named, mg, s.G_action)
    profile = {f"{x},{y}": c for (x, y), c in sorted(mg.profile.items())}
    ok = mg.profile == want and nc["ok"]
    run.record("minimal_generators", ok, total=mg.total, profile=profile,
               representatives={f"{x},{y}": [str(f) for f in fs] for (x, y), fs in sorted(mg.representatives.items())},
               named_elements=nc["bidegrees"])


STAGES = [
    ("closure", _groups),
    ("module_iso", _module_iso),
    ("dimensions", _dimensions),
    ("molien", _molien),
    ("hsop", _hsop),
    ("generators_S_G", _invariants_G),
    ("generators_relative", _relative),
    ("generators_summands", _summands),
    ("theta", _theta),
    ("relations", _relations),
    ("minimal_generators", _minimal),
]


def reproduce(max_degree: int = 20, setup: Setup | None = None) -> dict:
    if max_degree < 0:
        raise ValueError("max degree must be non-negative")
    run = Run(setup or Setup(), max_degree)
    for name, fn in STAGES:
        with run.stage(name):
            try:
                fn(run)
            except Exception as exc:  # a crashing stage is a failed certificate
                run.record(f"{name}_error", False, error=f"{type(exc).__name__}: {exc}")
    failures = [k for k, v in run.certs.items() if not v["pass"]]
    report = {
        "schema": SCHEMA,
        "engine": {"name": "diffinv", "version": __version__},
        "parameters": {"max_degree": max_degree, "p": run.s.p},
        "certificates": run.certs,
        "pass": not failures,
        "first_failure": failures[0] if failures else None,
    }
    report["stable_hash"] = stable_hash(report)
    report["timing"] = run.timing
    return report


def stable_hash(report: dict) -> str:
    body = {k: v for k, v in report.items() if k not in ("timing", "stable_hash")}
    return hashlib.sha256(dumps(body).encode()).hexdigest()


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def format_text(report: dict) -> str:
    lines = [f"diffinv {report['engine']['version']}  max_degree={report['parameters']['max_degree']}"]
    for name, cert in report["certificates"].items():
        lines.append(f"{'PASS' if cert['pass'] else 'FAIL'}  {name}")
    mg = report["certificates"].get("minimal_generators")
    if mg:
        lines.append(f"minimal generators: {mg['total']}  profile {mg['profile']}")
    rel = report["certificates"].get("relations")
    if rel:
        for r in rel["records"]:
            if "right" in r:
                flag = "" if r["agrees_with_reference"] else "  [ERRATUM]"
                lines.append(f"  {r['left']} = {r['right']}{flag}")
    lines.append("OVERALL " + ("PASS" if report["pass"] else f"FAIL (first: {report['first_failure']})"))
    lines.append(f"stable_hash {report['stable_hash']}")
    return "\n".join(lines) + "\n"
