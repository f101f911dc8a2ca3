"""Minimal right add(M)-approximations and add(M)-resolution dimension."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .homological import DEFAULT_BOUND, DimensionValue
from .linalg import Echelon, Matrix
from .module import (
    Module, ModuleMap, direct_sum, dual, hom_space, is_generator, kernel,
    projective_indecomposable, regular_module, strip_injective_summands,
    strip_projective_summands, zero_module,
)

__all__ = [
    "ApproximationStep", "NotAGenerator", "minimal_right_approximation",
    "is_generator", "in_add", "add_resolution_dimension", "sgc_extension",
]


class NotAGenerator(ValueError):
    pass


@dataclass
class ApproximationStep:
    target: Module
    summands: list          # summand indices, one entry per copy
    labels: list            # summand labels aligned with ``summands``
    source: Module          # direct sum of the chosen copies
    map: ModuleMap
    kernel: Module

    def multiplicities(self):
        out = {}
        for lab in self.labels:
            out[lab] = out.get(lab, 0) + 1
        return out

    def is_iso(self):
        return self.map.is_iso()

    def to_json(self):
        return {"target": self.target.name, "summands": self.multiplicities(),
                "source_dim": self.source.dim, "kernel_dim": self.kernel.dim}


def _parts(gen: Module):
    """Summands of ``gen`` with projective and injective summands split into
    indecomposables, one copy per isomorphism class; cached on ``gen``."""
    if "approx_parts" in gen._cache:
        return gen._cache["approx_parts"]
    a = gen.algebra
    op = a.opposite()
    out, seen_p, seen_i = [], set(), set()
    for part in (gen.summands or [gen]):
        rest, proj = strip_projective_summands(part)
        if rest.dim == 0 and len(proj) == 1:
            if a.idempotent_classes[proj[0]] not in seen_p:
                seen_p.add(a.idempotent_classes[proj[0]])
                out.append(part)
            continue
        for j in proj:
            if a.idempotent_classes[j] not in seen_p:
                seen_p.add(a.idempotent_classes[j])
                pj = projective_indecomposable(a, j)
                pj.name = f"P{j}"
                out.append(pj)
        rest, inj = strip_injective_summands(rest) if rest.dim else (rest, [])
        for j in inj:
            if op.idempotent_classes[j] not in seen_i:
                seen_i.add(op.idempotent_classes[j])
                ij = dual(projective_indecomposable(op, j))
                ij.name = f"I{j}"
                out.append(ij)
        if rest.dim:
            out.append(rest)
    gen._cache["approx_parts"] = out
    return out


def _homs(parts, n):
    return [hom_space(p, n) for p in parts]


def _spans_everything(parts, internal, homs_n, chosen):
    """Is ``Hom(M, sum of chosen copies) -> Hom(M, n)`` onto?

    ``chosen`` is a list of ``(i, h)`` with ``h: N_i -> n``.  The image in
    ``Hom(N_j, n)`` is spanned by ``h o phi`` for ``phi`` in ``Hom(N_j, N_i)``.
    """
    for j, pj in enumerate(parts):
        want = homs_n[j].dim
        if not want:
            continue
        f = pj.field
        ech = Echelon(f, pj.dim * homs_n[j].target.dim)
        for i, h in chosen:
            for phi in internal[(j, i)].basis:
                ech.add([x for r in (h @ phi).rows for x in r])
                if len(ech) == want:
                    break
            if len(ech) == want:
                break
        if len(ech) < want:
            return False
    return True


def minimal_right_approximation(gen: Module, n: Module, check_generator=True) -> ApproximationStep:
    """Right-minimal ``f: M_0 -> n`` with ``M_0`` in add(gen) and ``Hom(gen, f)`` onto.

    Starts from the universal map on ``Hom(N_i, n)`` bases and drops copies
    greedily (larger summands first) while surjectivity survives.
    """
    if check_generator and not is_generator(gen):
        raise NotAGenerator("the approximating module is not a generator")
    parts = _parts(gen)
    homs_n = _homs(parts, n)
    internal = {(j, i): hom_space(parts[j], parts[i]) for j in range(len(parts)) for i in range(len(parts))}
    chosen = [(i, h) for i in range(len(parts)) for h in homs_n[i].basis]
    order = sorted(range(len(chosen)), key=lambda k: (-parts[chosen[k][0]].dim, chosen[k][0], k))
    keep = set(range(len(chosen)))
    for k in order:
        trial = keep - {k}
        if _spans_everything(parts, internal, homs_n, [chosen[t] for t in sorted(trial)]):
            keep = trial
    final = [chosen[t] for t in sorted(keep)]
    return _assemble(parts, n, final)


def _assemble(parts, n, final):
    a = n.algebra
    f = n.field
    if not final:
        src = zero_module(a)
        fm = ModuleMap(src, n, Matrix(f, [[] for _ in range(n.dim)], 0))
        return ApproximationStep(n, [], [], src, fm, src)
    copies = [parts[i] for i, _ in final]
    src = direct_sum(copies, name="M0")
    cols = []
    for (_, h) in final:
        cols.extend(h.columns())
    fm = ModuleMap(src, n, Matrix.from_columns(f, cols, n.dim))
    ker, _ = kernel(fm)
    ker.name = f"K({n.name})" if n.name else None
    labels = [parts[i].name or f"N{i}" for i, _ in final]
    return ApproximationStep(n, [i for i, _ in final], labels, src, fm, ker)


def approximation_is_surjective_on_hom(gen: Module, step: ApproximationStep) -> bool:
    """Rank check that ``Hom(gen, M_0) -> Hom(gen, n)`` is onto."""
    parts = _parts(gen)
    homs_n = _homs(parts, step.target)
    internal = {(j, i): hom_space(parts[j], parts[i]) for j in range(len(parts)) for i in range(len(parts))}
    chosen = list(zip(step.summands, _split_columns(step)))
    return _spans_everything(parts, internal, homs_n, chosen)


def is_right_minimal(gen: Module, step: ApproximationStep) -> bool:
    """Dropping any single copy breaks surjectivity on Hom."""
    parts = _parts(gen)
    homs_n = _homs(parts, step.target)
    internal = {(j, i): hom_space(parts[j], parts[i]) for j in range(len(parts)) for i in range(len(parts))}
    chosen = list(zip(step.summands, _split_columns(step)))
    for k in range(len(chosen)):
        if _spans_everything(parts, internal, homs_n, chosen[:k] + chosen[k + 1:]):
            return False
    return True


def _split_columns(step):
    out = []
    mat = step.map.matrix
    for inj in step.source.injections:
        out.append(mat @ inj.matrix)
    return out


def in_add(n: Module, gen: Module) -> bool:
    """``n`` is a direct summand of a sum of copies of summands of ``gen``."""
    if n.dim == 0:
        return True
    return minimal_right_approximation(gen, n).is_iso()


def add_resolution_dimension(n: Module, gen: Module, maxlen: int = DEFAULT_BOUND) -> DimensionValue:
    """Least ``k`` such that the k-th kernel of iterated minimal approximations lies in add(gen)."""
    if not is_generator(gen):
        raise NotAGenerator("the approximating module is not a generator")
    cur = n
    for k in range(maxlen + 1):
        if cur.dim == 0:
            return DimensionValue.exact(max(k - 1, 0), maxlen)
        step = minimal_right_approximation(gen, cur, check_generator=False)
        if step.is_iso():
            return DimensionValue.exact(k, maxlen)
        cur = step.kernel
    return DimensionValue.at_least(maxlen + 1, maxlen)


def sgc_extension(a: Algebra):
    """``End_A(A + D(A))``, the endomorphism algebra of the smallest generator-cogenerator."""
    from .endo import end_algebra
    reg = regular_module(a)
    da = dual(regular_module(a.opposite()))
    da.name = "D(A)"
    ctx = end_algebra(direct_sum([reg, da], name="A+D(A)"), check_generator=False)
    return ctx.algebra
