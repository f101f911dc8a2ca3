"""Command-line front end.

Exit codes: 0 success, 1 a check failed or a witness could not be built,
2 usage or input validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

import jsonschema
import sympy

from . import __version__
from .algebra import Algebra, UnsupportedCharacteristic, check_algebra
from .families import (
    LiuSchulzParams, QCIParams, liu_schulz, module_Mc, quantum_complete_intersection,
    quantum_exterior_2,
)
from .homological import (
    DEFAULT_BOUND, ar_translate, codominant_dimension, dominant_dimension, ext_dim,
    l_special_scan,
)
from .linalg import Field
from .module import (
    Module, direct_sum, hom_space, quotient, regular_module, submodule_generated,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    field: Field
    r: object
    cs: list
    bound: int = DEFAULT_BOUND
    depth: int = 4
    out: str | None = None
    fmt: str = "json"
    extra: dict = dc_field(default_factory=dict)


def _parse_field(s):
    try:
        return Field.from_spec(s)
    except ValueError as e:
        raise UsageError(str(e))


def _parse_scalar(f, s, what):
    try:
        x = f.parse(str(s))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad {what} {s!r}: {e}")
    if not x:
        raise UsageError(f"{what} must be nonzero")
    return x


def _parse_list(f, s, what):
    items = [t for t in str(s).replace(" ", "").split(",") if t]
    return [_parse_scalar(f, t, what) for t in items]


def _job(args) -> JobSpec:
    f = _parse_field(args.field)
    r = _parse_scalar(f, args.r, "r")
    cs = _parse_list(f, args.cs, "c") if getattr(args, "cs", None) is not None else []
    if len(set(cs)) != len(cs):
        raise UsageError("the c values must be distinct")
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    depth = getattr(args, "depth", 4)
    if depth < 0:
        raise UsageError("--depth must be nonnegative")
    return JobSpec(args.command, f, r, cs, args.bound, depth, args.out, args.format)


def _emit(job: JobSpec, payload: dict, text: str):
    body = json.dumps(payload, indent=2, sort_keys=True) + "\n" if job.fmt == "json" else text + "\n"
    if job.out:
        with open(job.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# ---------------------------------------------------------------------------

def cmd_verify_paper(job: JobSpec) -> int:
    from .reproduce import VerifyConfig, run_suite
    if not job.cs:
        job.cs = [job.field(c) for c in (1, 2, 3, 4, 5)]
    cfg = VerifyConfig(job.field, job.r, job.cs, job.bound, job.depth)
    rep = run_suite(cfg)
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(job, rep.to_json(), rep.to_text())
    if rep.failed:
        print(f"first failing check: {rep.failed[0].name}", file=sys.stderr)
    return rep.exit_code


def cmd_witness(job: JobSpec) -> int:
    from .endo import refute_nearly_gorenstein
    params = LiuSchulzParams(job.field, job.r, order_bound=job.bound + 2)
    for w in params.warnings():
        print(f"warning: {w}", file=sys.stderr)
    a = liu_schulz(params)
    cs = job.cs or [job.field(1)]
    xs = [module_Mc(a, c) for c in cs]
    try:
        w = refute_nearly_gorenstein(a, xs, bound=job.bound, depth=job.depth,
                                     with_dual=job.extra.get("dual", False))
    except ValueError as e:
        payload = {"engine_version": __version__, "field": job.field.spec,
                   "r": job.field.format(job.r), "bound": job.bound, "error": str(e)}
        _emit(job, payload, f"no witness: {e}")
        return EXIT_FAIL
    payload = {"engine_version": __version__, "field": job.field.spec,
               "r": job.field.format(job.r), "bound": job.bound, "depth": job.depth,
               "witness": w.to_json()}
    c = w.certificates
    lines = [f"witness over {w.base_algebra}, X = {' + '.join(w.generator_summands[1:])}, "
             f"m = {w.m_label}, l = {w.l}",
             f"domdim_B(R): {_dv(c['domdim'])}",
             f"codomdim_B(R): {_dv(c['codomdim'])}",
             f"costable up to H={job.bound}: {c['costable_up_to']['holds']}",
             f"domdim(B): {_dv(c['domdim_B'])}",
             f"not Gorenstein injective: {c['not_GI_reason']}",
             "codomdim of cosyzygies: " + ", ".join(_dv(x) for x in c["cosyzygy_codomdims"]),
             f"verdict: {'ok' if w.ok else 'FAILED'}"]
    _emit(job, payload, "\n".join(lines))
    return EXIT_OK if w.ok else EXIT_FAIL


def _dv(d):
    s = str(d["value"]) if d["kind"] == "exact" else f">= {d['value']}"
    if d.get("certificate"):
        s += f" ({d['certificate']})"
    return s


def _family_algebra(job: JobSpec, family: str, exponents=None, qs=None) -> Algebra:
    f = job.field
    if family == "liu-schulz":
        return liu_schulz(LiuSchulzParams(f, job.r))
    if family == "quantum-exterior":
        return quantum_exterior_2(f, job.r)
    if family == "qci":
        exps = exponents or [2, 2]
        n = len(exps)
        q = {}
        vals = _parse_list(f, qs, "q") if qs else []
        k = 0
        for i in range(n):
            for j in range(i):
                q[(i, j)] = vals[k] if k < len(vals) else job.r
                k += 1
        return quantum_complete_intersection(QCIParams(f, exps, q))
    raise UsageError(f"unknown family {family!r}")


def _plain(f, c):
    """Scalar as a sympy-readable literal (F_p elements as their residue)."""
    return str(c) if f.p else f.format(c)


def _parse_element(a: Algebra, text: str):
    f = a.field
    syms = {lab: sympy.Symbol(lab) for lab in a.labels if lab != "1"}
    try:
        expr = sympy.sympify(text, locals=syms)
        poly = sympy.Poly(expr, *syms.values())
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as e:
        raise UsageError(f"cannot parse generator {text!r}: {e}")
    if poly.total_degree() > 1:
        raise UsageError(f"generator {text!r} must be a linear combination of basis labels")
    v = a.zero_vector()
    names = list(syms)
    for mon, coeff in poly.terms():
        k = sympy.Rational(coeff)
        c = f(f"{k.p}/{k.q}")
        term = list(a.unit) if sum(mon) == 0 else a.basis_vector(a.labels.index(names[mon.index(1)]))
        v = a.add(v, a.scale(c, term))
    return v


def cmd_lspecial_scan(job: JobSpec) -> int:
    a = _family_algebra(job, job.extra["family"], job.extra.get("exponents"), job.extra.get("q"))
    rows = []
    gens = job.extra.get("generators")
    if gens is not None:
        items = [(g, _parse_element(a, g)) for g in gens]
    elif "x" in a.labels and "y" in a.labels:
        items = []
        for c in job.cs:
            text = f"x+({_plain(job.field, c)})*y"
            items.append((text, _parse_element(a, text)))
    else:
        items = []
    reg = regular_module(a)
    for text, v in items:
        _, inc = submodule_generated(reg, [v])
        m, _ = quotient(reg, inc.matrix.columns(), name=f"A/({text})A")
        if m.dim == 0:
            rows.append({"generator": text, "dim": 0, "l": None, "note": "zero module"})
            continue
        res = l_special_scan(m, job.bound)
        rows.append({"generator": text, "dim": m.dim, "l": res.l, "ext_dims": res.ext_dims})
    payload = {"engine_version": __version__, "field": job.field.spec, "r": job.field.format(job.r),
               "family": job.extra["family"], "algebra_dim": a.dim, "bound": job.bound,
               "grade": f"bounded (H={job.bound})", "candidates": rows}
    lines = [f"{a.name} (dim {a.dim}) over {job.field.spec}, H={job.bound}"]
    for row in rows:
        tag = f"candidate {row['l']}-special" if row.get("l") else "no candidate"
        lines.append(f"  A/({row['generator']})A  dim {row['dim']}: {tag}  {row.get('ext_dims', '')}")
    _emit(job, payload, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# compute: one-off queries on user data

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": ["string", "integer"]}}}

COMPUTE_SCHEMA = {
    "type": "object",
    "required": ["algebra", "queries"],
    "properties": {
        "algebra": {
            "oneOf": [
                {"type": "object", "required": ["field", "dim", "unit", "structure"],
                 "properties": {
                     "field": {"type": "string"},
                     "dim": {"type": "integer", "minimum": 1},
                     "unit": {"type": "array", "items": {"type": ["string", "integer"]}},
                     "structure": {"type": "array", "items": {"type": "array", "items": {
                         "type": "array", "items": {"type": ["string", "integer"]}}}},
                     "labels": {"type": "array", "items": {"type": "string"}}}},
                {"type": "object", "required": ["family"],
                 "properties": {"family": {"enum": ["liu-schulz", "quantum-exterior", "qci"]},
                                "field": {"type": "string"},
                                "r": {"type": ["string", "integer"]},
                                "exponents": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                                "q": {"type": "array", "items": {"type": ["string", "integer"]}}}},
            ]},
        "modules": {
            "type": "object",
            "additionalProperties": {
                "oneOf": [
                    {"type": "object", "required": ["dim", "actions"],
                     "properties": {"dim": {"type": "integer", "minimum": 0},
                                    "actions": {"type": "array", "items": _MATRIX}}},
                    {"type": "object", "required": ["Mc"],
                     "properties": {"Mc": {"type": ["string", "integer"]}}},
                    {"type": "object", "required": ["regular"],
                     "properties": {"regular": {"const": True}}},
                    {"type": "object", "required": ["sum"],
                     "properties": {"sum": {"type": "array", "items": {"type": "string"}, "minItems": 1}}},
                ]}},
        "queries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op"],
                "properties": {
                    "op": {"enum": ["check_algebra", "hom_dim", "ext_dim", "domdim", "codomdim",
                                    "tau", "approximation", "write_algebra"]},
                    "source": {"type": "string"}, "target": {"type": "string"},
                    "module": {"type": "string"}, "generator": {"type": "string"},
                    "degree": {"type": "integer", "minimum": 0},
                    "bound": {"type": "integer", "minimum": 1}}}},
    },
}


def _load_job(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    v = jsonschema.Draft7Validator(COMPUTE_SCHEMA)
    errs = sorted(v.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errs:
        msgs = [f"{path}: at /{'/'.join(str(p) for p in e.absolute_path)}: {e.message}" for e in errs]
        raise UsageError("\n".join(msgs))
    return data


def _build_compute_algebra(spec, job: JobSpec):
    if "family" in spec:
        f = _parse_field(spec.get("field", job.field.spec))
        j = JobSpec("compute", f, _parse_scalar(f, spec.get("r", 2), "r"), [], job.bound)
        return _family_algebra(j, spec["family"], spec.get("exponents"),
                               ",".join(str(x) for x in spec["q"]) if spec.get("q") else None)
    try:
        a = Algebra.from_json(spec, name="input")
    except (ValueError, ZeroDivisionError, KeyError) as e:
        raise UsageError(f"algebra: {e}")
    chk = check_algebra(a)
    if not chk.ok:
        raise UsageError(f"algebra rejected: {chk.message}")
    return a


def cmd_compute(job: JobSpec) -> int:
    data = _load_job(job.extra["job"])
    a = _build_compute_algebra(data["algebra"], job)
    mods = {}
    for name, spec in data.get("modules", {}).items():
        if "Mc" in spec:
            mods[name] = module_Mc(a, _parse_scalar(a.field, spec["Mc"], "c"))
        elif "regular" in spec:
            mods[name] = regular_module(a)
        elif "sum" in spec:
            try:
                mods[name] = direct_sum([mods[p] for p in spec["sum"]], name=name)
            except KeyError as e:
                raise UsageError(f"modules/{name}: unknown summand {e}")
        else:
            try:
                mods[name] = Module.from_json(spec, a)
            except (ValueError, ZeroDivisionError) as e:
                raise UsageError(f"modules/{name}: {e}")
            from .module import check_module
            rep = check_module(mods[name])
            if not rep.ok:
                raise UsageError(f"modules/{name}: {rep.message}")
        mods[name].name = name

    def get(q, key):
        try:
            return mods[q[key]]
        except KeyError:
            raise UsageError(f"query {q}: unknown or missing module {key!r}")

    results = []
    for q in data["queries"]:
        op = q["op"]
        bound = q.get("bound", job.bound)
        if op == "check_algebra":
            chk = check_algebra(a)
            res = {"associative": chk.ok, "triples_checked": chk.triples_checked}
        elif op == "write_algebra":
            res = {"algebra": a.to_json()}
        elif op == "hom_dim":
            res = {"dim": hom_space(get(q, "source"), get(q, "target")).dim}
        elif op == "ext_dim":
            res = {"dim": ext_dim(get(q, "source"), get(q, "target"), q.get("degree", 1))}
        elif op == "domdim":
            res = dominant_dimension(get(q, "module"), bound).to_json()
        elif op == "codomdim":
            res = codominant_dimension(get(q, "module"), bound).to_json()
        elif op == "tau":
            try:
                t = ar_translate(get(q, "module"))
            except ValueError as e:
                raise UsageError(str(e))
            res = {"module": t.to_json()}
        elif op == "approximation":
            from .approximation import NotAGenerator, minimal_right_approximation
            try:
                step = minimal_right_approximation(get(q, "generator"), get(q, "target"))
            except NotAGenerator as e:
                raise UsageError(str(e))
            res = step.to_json()
        results.append({"query": q, "result": res})
    payload = {"engine_version": __version__, "field": a.field.spec, "bound": job.bound,
               "results": results}
    text = "\n".join(f"{r['query']['op']}: {json.dumps(r['result'], sort_keys=True)}" for r in results)
    _emit(job, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="fdalg", description="Exact computations with finite-dimensional algebras.")
    p.add_argument("--version", action="version", version=f"fdalg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, cs_default):
        sp.add_argument("--field", default="Q", help="Q or Fp:<p>")
        sp.add_argument("--r", default="2", help="the parameter r (a nonzero scalar, e.g. 2 or 5/2)")
        sp.add_argument("--cs", default=cs_default, help="comma-separated nonzero scalars c")
        sp.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="homological bound H")
        sp.add_argument("--depth", type=int, default=4, help="number of cosyzygies in the witness")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=["json", "text"], default="json")

    vp = sub.add_parser("verify-paper", help="run the reproduction suite")
    common(vp, "1,2,3,4,5")
    wp = sub.add_parser("witness", help="build a costable, not Gorenstein injective module")
    common(wp, "1")
    wp.add_argument("--dual", action="store_true", help="also emit the dual witness over the opposite algebra")
    lp = sub.add_parser("lspecial-scan", help="scan cyclic modules for l-special behaviour")
    common(lp, "1,2,3")
    lp.add_argument("--family", choices=["liu-schulz", "quantum-exterior", "qci"], default="liu-schulz")
    lp.add_argument("--exponents", default=None, help="comma-separated exponents for qci")
    lp.add_argument("--q", default=None, help="comma-separated q_{i,j} (i > j, row by row) for qci")
    lp.add_argument("--generators", nargs="*", default=None,
                    help="generator expressions such as 'x+2*y'; default x+c*y for c in --cs")
    cp = sub.add_parser("compute", help="run queries from a JSON job file")
    common(cp, None)
    cp.add_argument("job", help="path to the JSON job")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        job = _job(args)
        if args.command == "witness":
            job.extra["dual"] = args.dual
            return cmd_witness(job)
        if args.command == "lspecial-scan":
            job.extra.update(family=args.family, generators=args.generators, q=args.q,
                             exponents=[int(x) for x in args.exponents.split(",")] if args.exponents else None)
            return cmd_lspecial_scan(job)
        if args.command == "compute":
            job.extra["job"] = args.job
            return cmd_compute(job)
        return cmd_verify_paper(job)
    except (UsageError, UnsupportedCharacteristic) as e:
        print(f"fdalg: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
