"""Build the costable, non Gorenstein injective module over End(A + M_c ...)
and print its certificate chain.

    python scripts/witness_bundle.py --cs 1 --depth 4 --out witness.json
"""
import argparse
import json

from fdalg.endo import refute_nearly_gorenstein
from fdalg.families import LiuSchulzParams, liu_schulz, module_Mc
from fdalg.linalg import Field


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default="Q")
    ap.add_argument("--r", default="2")
    ap.add_argument("--cs", default="1")
    ap.add_argument("--bound", type=int, default=12)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    f = Field.from_spec(args.field)
    a = liu_schulz(LiuSchulzParams(f, f.parse(args.r)))
    xs = [module_Mc(a, f.parse(c)) for c in args.cs.split(",")]
    w = refute_nearly_gorenstein(a, xs, bound=args.bound, depth=args.depth, with_dual=True)
    c = w.certificates
    print(f"B = End({' + '.join(w.generator_summands)}), {c['simple_count_B']} simples")
    print(f"R = Hom(N, Omega^-{w.l}({w.m_label}))")
    for key in ("domdim", "codomdim", "domdim_B"):
        print(f"  {key:10s} {c[key]['kind']:9s} {c[key]['value']}  {c[key].get('certificate') or ''}")
    print(f"  costable up to H: {c['costable_up_to']['holds']}")
    print(f"  not GI: {c['not_GI_reason']}")
    print("  cosyzygy codomdims:", [d["value"] for d in c["cosyzygy_codomdims"]])
    print("  ok:", w.ok)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(w.to_json(), fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
