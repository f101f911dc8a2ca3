"""The reproduction suite run by ``fdalg verify-paper``.

Each check returns a :class:`Check` with a verdict grade and the evidence it
rests on; nothing is reported as a bare boolean.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import __version__
from .algebra import UnsupportedCharacteristic, check_algebra, is_local, is_selfinjective, symmetrizing_form, trivial_extension
from .endo import (
    codomdim_crosscheck, end_algebra, gendo_domdim_crosscheck, hom_functor_module,
    mueller_crosscheck, refute_nearly_gorenstein,
)
from .families import (
    LiuSchulzParams, hom_ext_grid, liu_schulz, module_Mc, quantum_exterior_2,
)
from .homological import (
    DEFAULT_BOUND, ar_translate, codominant_dimension, dominant_dimension, ext_dim,
    ext_dim_via_syzygy,
)
from .linalg import QQ, Field
from .module import (
    cosyzygy, direct_sum, dual, hom_space, isomorphism_test, regular_module, syzygy,
)

__all__ = ["VerifyConfig", "Check", "Report", "run_suite", "CHECKS"]


@dataclass
class VerifyConfig:
    field: Field = QQ
    r: object = 2
    cs: list = dc_field(default_factory=lambda: [1, 2, 3, 4, 5])
    bound: int = DEFAULT_BOUND
    depth: int = 4
    samples_seed: int = 0

    def __post_init__(self):
        self.r = self.field(self.r)
        if not self.r:
            raise ValueError("r must be nonzero")
        self.cs = [self.field(c) for c in self.cs]
        if any(not c for c in self.cs):
            raise ValueError("every c must be nonzero")
        if len(set(self.cs)) != len(self.cs):
            raise ValueError("the c values must be distinct")
        if not self.cs:
            raise ValueError("need at least one c")
        if self.bound < 1:
            raise ValueError("the bound must be at least 1")


@dataclass
class Check:
    name: str
    status: str                  # "pass" | "fail" | "skipped"
    grade: str                   # "exact" | "bounded (H=..)" | "criterion-certified"
    evidence: dict
    message: str = ""

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        return {"name": self.name, "status": self.status, "grade": self.grade,
                "evidence": self.evidence, "message": self.message}


@dataclass
class Report:
    config: VerifyConfig
    checks: list
    warnings: list

    @property
    def failed(self):
        return [c for c in self.checks if c.status == "fail"]

    @property
    def exit_code(self):
        return 1 if self.failed else 0

    def to_json(self):
        f = self.config.field
        return {
            "engine_version": __version__,
            "field": f.spec,
            "r": f.format(self.config.r),
            "cs": [f.format(c) for c in self.config.cs],
            "bound": self.config.bound,
            "depth": self.config.depth,
            "warnings": self.warnings,
            "checks": [c.to_json() for c in self.checks],
            "summary": {"passed": sum(c.status == "pass" for c in self.checks),
                        "failed": len(self.failed),
                        "skipped": sum(c.status == "skipped" for c in self.checks)},
        }

    def to_text(self):
        f = self.config.field
        lines = [f"fdalg {__version__}  field={f.spec}  r={f.format(self.config.r)}  "
                 f"cs={[f.format(c) for c in self.config.cs]}  H={self.config.bound}"]
        for w in self.warnings:
            lines.append(f"warning: {w}")
        width = max(len(c.name) for c in self.checks) if self.checks else 10
        for c in self.checks:
            lines.append(f"{c.status.upper():7s} {c.name:<{width}}  [{c.grade}]  {c.message}")
        if self.failed:
            lines.append(f"first failing check: {self.failed[0].name}")
        js = self.to_json()["summary"]
        lines.append(f"{js['passed']} passed, {js['failed']} failed, {js['skipped']} skipped")
        return "\n".join(lines)


class _Ctx:
    """Shared objects built lazily across checks."""

    def __init__(self, cfg: VerifyConfig):
        self.cfg = cfg
        self.f = cfg.field
        self.A = liu_schulz(LiuSchulzParams(cfg.field, cfg.r))
        self._mods = {}
        self._endo = {}
        self._table = None

    def M(self, c):
        c = self.f(c)
        if c not in self._mods:
            self._mods[c] = module_Mc(self.A, c)
        return self._mods[c]

    def mul(self, c, k):
        f, r = self.f, self.cfg.r
        for _ in range(k):
            c = c * r % f.p if f.p else c * r
        for _ in range(-k):
            c = c * f.inv(r) % f.p if f.p else c / r
        return c

    def table(self):
        if self._table is None:
            self._table = hom_ext_grid(self.cfg.r, self.cfg.cs, self.cfg.bound, self.f)
        return self._table

    def endo(self, cs):
        key = tuple(cs)
        if key not in self._endo:
            parts = [regular_module(self.A)] + [self.M(c) for c in cs]
            self._endo[key] = end_algebra(direct_sum(parts, name="N"))
        return self._endo[key]


def _fmt(f, x):
    return f.format(x)


def check_basics(ctx: _Ctx) -> Check:
    A = ctx.A
    chk = check_algebra(A)
    rad = len(A.radical)
    form = symmetrizing_form(A)
    selfinj = is_selfinjective(A)
    dims = {_fmt(ctx.f, c): ctx.M(c).dim for c in ctx.cfg.cs}
    ok = (A.dim == 8 and chk.ok and chk.triples_checked == 512 and rad == 7
          and form.status == "found" and form.gram_rank == 8 and selfinj
          and all(d == 4 for d in dims.values()))
    ev = {"dim": A.dim, "associativity_triples": chk.triples_checked, "associative": chk.ok,
          "radical_dim": rad, "local": rad == A.dim - 1,
          "symmetrizing_form": [_fmt(ctx.f, x) for x in form.functional] if form.functional else None,
          "gram_rank": form.gram_rank, "selfinjective": selfinj, "dim_Mc": dims}
    return Check("liu_schulz_basics", "pass" if ok else "fail", "exact", ev,
                 "dim 8, local, symmetric, selfinjective; dim M_c = 4")


def _grid_check(ctx: _Ctx, part, name, grade, ok_msg):
    cells = getattr(ctx.table(), part)
    bad = [c for c in cells if not c["agree"]]
    msg = ok_msg if not bad else f"{len(bad)} cells disagree, first (c, d) = ({bad[0]['c']}, {bad[0]['d']})"
    ev = {"cells": cells}
    if part == "tail":
        ev["certified_cells"] = sum(1 for c in cells if c["grade"] == "criterion-certified")
        if not bad:
            msg += f"; {ev['certified_cells']} cells certified for all i"
    return Check(name, "fail" if bad else "pass", grade, ev, msg)


def check_hom_grid(ctx: _Ctx) -> Check:
    return _grid_check(ctx, "hom", "hom_dimension_formula", "exact",
                       "dim Hom(M_c, M_e) = 2 + [c=e] + [c r^2 = e] on every cell")


def check_ext1_grid(ctx: _Ctx) -> Check:
    return _grid_check(ctx, "ext1", "ext1_formula", "exact",
                       "dim Ext^1(M_c, M_d) matches the four-term formula; "
                       "vanishing iff d not in {c, cr, cr^2, cr^3}")


def check_ext_tail(ctx: _Ctx) -> Check:
    H = ctx.cfg.bound
    return _grid_check(ctx, "tail", "ext_tail_criterion", f"bounded (H={H})",
                       "bounded verdicts agree with d != r^l c")


def check_syzygies(ctx: _Ctx) -> Check:
    f = ctx.f
    c = ctx.cfg.cs[0]
    m = ctx.M(c)
    out = {}
    ok = True
    for label, mod, target in (
        ("Omega^1", syzygy(m, 1), ctx.mul(c, 1)),
        ("Omega^2", syzygy(m, 2), ctx.mul(c, 2)),
        ("tau", ar_translate(m), ctx.mul(c, 2)),
        ("Omega^-1", cosyzygy(m, 1), ctx.mul(c, -1)),
    ):
        cert = isomorphism_test(mod, ctx.M(target))
        good = cert.verdict == "iso" and cert.verify()
        ok = ok and good
        out[label] = {"target": f"M_{_fmt(f, target)}", "verdict": cert.verdict,
                      "map": cert.map.matrix.to_json() if cert.map else None}
    return Check("syzygy_identity", "pass" if ok else "fail", "exact", out,
                 f"Omega(M_c) = M_cr, Omega^2(M_c) = tau(M_c) = M_cr^2 for c = {_fmt(f, c)}")


def check_mueller(ctx: _Ctx) -> Check:
    cs = ctx.cfg.cs
    H = ctx.cfg.bound
    variants = [cs[:1]] + ([cs[:3]] if len(cs) >= 3 else [cs] if len(cs) > 1 else [])
    ev = []
    ok = True
    for sub in variants:
        e = ctx.endo(sub)
        cc = mueller_crosscheck(e, e.generator, H)
        simples = len(e.algebra.class_representatives)
        good = cc.agree and cc.direct.is_exact and cc.direct.value == 2 and simples == len(sub) + 1
        ok = ok and good
        ev.append({"summands": ["A"] + [f"M_{_fmt(ctx.f, c)}" for c in sub], "dim_B": e.algebra.dim,
                   "simples": simples, **cc.to_json()})
    return Check("mueller_domdim", "pass" if ok else "fail", "exact", {"variants": ev},
                 "domdim(B) = 2 both directly and by inf{i : Ext^i(N,N) != 0} + 1")


def _samples(ctx: _Ctx):
    c = ctx.cfg.cs[0]
    mods = [ctx.M(x) for x in ctx.cfg.cs[:3]]
    mods.append(cosyzygy(ctx.M(c), 1))
    mods.append(ctx.M(ctx.mul(c, -1)))
    mods.append(regular_module(ctx.A))
    om = syzygy(ctx.M(ctx.cfg.cs[-1]), 1)
    mods.append(om)
    return mods


def check_codomdim_formula(ctx: _Ctx) -> Check:
    e = ctx.endo(ctx.cfg.cs[:1])
    H = ctx.cfg.bound
    ev = []
    ok = True
    for x in _samples(ctx):
        cc = codomdim_crosscheck(e, x, H)
        ok = ok and cc.agree
        ev.append({"x": x.name, **cc.to_json()})
    ok = ok and len(ev) >= 5
    return Check("codomdim_formula", "pass" if ok else "fail", f"bounded (H={H})", {"samples": ev},
                 f"codomdim Hom(N,x) = inf{{i : Ext^1(N, Omega^i x) != 0}} - 1 on {len(ev)} samples")


def check_witness(ctx: _Ctx):
    c = ctx.cfg.cs[0]
    H = ctx.cfg.bound
    m = ctx.M(c)
    w = refute_nearly_gorenstein(ctx.A, [m], m=m, l=1, bound=H, depth=ctx.cfg.depth, with_dual=True)
    ok = w.ok and "criterion" in w.certificates
    grade = "criterion-certified" if "criterion" in w.certificates else f"bounded (H={H})"
    detail = "R costable, codomdim 0 < 2 = domdim(B), cosyzygy codomdims 1..depth"
    if w.ok and "criterion" not in w.certificates:
        detail = (f"bounded certificates hold to H={H}, but r^k c reaches the target index for some k, "
                  "so domdim(R) is finite and R does not refute the statement")
    return Check("nearly_gorenstein_witness", "pass" if ok else "fail", grade,
                 w.to_json(include_module=False), detail), w


def check_gendo(ctx: _Ctx, witness=None) -> Check:
    e = ctx.endo(ctx.cfg.cs[:1])
    H = ctx.cfg.bound
    ys = [("regular B", regular_module(e.algebra))]
    if witness is not None:
        ys.append(("R", witness.R))
    else:
        ys.append(("R", hom_functor_module(e, ctx.M(ctx.mul(ctx.cfg.cs[0], -1)))))
    ev = []
    ok = True
    for lab, y in ys:
        g = gendo_domdim_crosscheck(e, y, H)
        ok = ok and g.consistent and g.iso.verdict == "iso"
        ev.append({"y": lab, **g.to_json()})
    return Check("gendo_domdim_iso", "pass" if ok else "fail", f"bounded (H={H})", {"modules": ev},
                 "domdim >= 2 agrees with y = Hom_B(D(B), y), certificates attached")


def check_oracles(ctx: _Ctx) -> Check:
    rng = random.Random(ctx.cfg.samples_seed)
    pool = list(ctx.cfg.cs) + [ctx.mul(ctx.cfg.cs[0], k) for k in (-1, 1, 2, 3)]
    pool = list(dict.fromkeys(pool))
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(10)]
    ext_ev = []
    ok = True
    for c, d in pairs:
        m, n = ctx.M(c), ctx.M(d)
        row = []
        for i in range(2, 7):
            a, b = ext_dim(m, n, i), ext_dim_via_syzygy(m, n, i)
            row.append([a, b])
            ok = ok and a == b
        ext_ev.append({"c": _fmt(ctx.f, c), "d": _fmt(ctx.f, d), "ext_i_vs_syzygy": row})
    duality = []
    e = ctx.endo(ctx.cfg.cs[:1])
    samples = [ctx.M(ctx.cfg.cs[0]), regular_module(ctx.A), hom_functor_module(e, ctx.M(ctx.cfg.cs[0])),
               regular_module(e.algebra), hom_functor_module(e, cosyzygy(ctx.M(ctx.cfg.cs[0]), 1))]
    for s in samples:
        a = dominant_dimension(s, ctx.cfg.bound)
        b = codominant_dimension(dual(s), ctx.cfg.bound)
        ok = ok and a.same_value(b)
        duality.append({"module": s.name, "domdim": a.to_json(), "codomdim_of_dual": b.to_json()})
    inv = all(dual(dual(s)) is s and dual(s).dim == s.dim for s in samples)
    hom_dual = all(hom_space(ctx.M(c), ctx.M(d)).dim == hom_space(dual(ctx.M(d)), dual(ctx.M(c))).dim
                   for c, d in pairs[:5])
    y = isomorphism_test(hom_functor_module(e, e.generator), regular_module(e.algebra))
    ok = ok and inv and hom_dual and y.verdict == "iso"
    return Check("oracle_equivalence", "pass" if ok else "fail", "exact",
                 {"ext_pairs": ext_ev, "duality": duality, "dual_involution": inv,
                  "hom_dual_dims": hom_dual, "yoneda": y.verdict},
                 "two independent Ext paths agree; domdim/codomdim duality; D D = id; Yoneda")


def check_trivial_extension(ctx: _Ctx) -> Check:
    lam = quantum_exterior_2(ctx.f, ctx.cfg.r)
    T = trivial_extension(lam)
    chk = check_algebra(T)
    form = symmetrizing_form(T)
    ok = T.dim == 8 and chk.ok and is_local(T) and form.status == "found"
    return Check("trivial_extension", "pass" if ok else "fail", "exact",
                 {"dim": T.dim, "associative": chk.ok, "local": is_local(T),
                  "symmetrizing_form": form.status, "gram_rank": form.gram_rank},
                 "T(quantum 2-exterior) is 8-dimensional, local and symmetric")


CHECKS = [
    "liu_schulz_basics", "hom_dimension_formula", "ext1_formula", "ext_tail_criterion",
    "syzygy_identity", "mueller_domdim", "codomdim_formula", "nearly_gorenstein_witness",
    "gendo_domdim_iso", "oracle_equivalence", "trivial_extension",
]


def run_suite(cfg: VerifyConfig, only=None) -> Report:
    params = LiuSchulzParams(cfg.field, cfg.r, order_bound=cfg.bound + 2)
    warnings = params.warnings()
    degenerate = params.r_squared_is_one or params.r_cubed_is_one
    ctx = _Ctx(cfg)
    checks = []

    def want(name):
        return only is None or name in only

    def skip(name, why="r violates the standing assumptions"):
        checks.append(Check(name, "skipped", "exact", {}, f"skipped: {why}"))

    def run(name, fn, *args):
        # small characteristic is rejected downstream; report it instead of failing the suite
        try:
            out = fn(ctx, *args)
        except UnsupportedCharacteristic as e:
            skip(name, str(e))
            return None
        chk, extra = out if isinstance(out, tuple) else (out, None)
        checks.append(chk)
        return extra

    if want("liu_schulz_basics"):
        run("liu_schulz_basics", check_basics)
    for name, fn in (("hom_dimension_formula", check_hom_grid), ("ext1_formula", check_ext1_grid),
                     ("ext_tail_criterion", check_ext_tail), ("syzygy_identity", check_syzygies),
                     ("mueller_domdim", check_mueller), ("codomdim_formula", check_codomdim_formula)):
        if want(name):
            skip(name) if degenerate else run(name, fn)
    witness = None
    if want("nearly_gorenstein_witness"):
        if degenerate or params.root_of_unity_order is not None:
            skip("nearly_gorenstein_witness")
        else:
            witness = run("nearly_gorenstein_witness", check_witness)
    if want("gendo_domdim_iso"):
        skip("gendo_domdim_iso") if degenerate else run("gendo_domdim_iso", check_gendo, witness)
    if want("oracle_equivalence"):
        skip("oracle_equivalence") if degenerate else run("oracle_equivalence", check_oracles)
    if want("trivial_extension"):
        run("trivial_extension", check_trivial_extension)
    return Report(cfg, checks, warnings)
