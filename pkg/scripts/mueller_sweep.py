"""Dominant dimension of End(A + M_c1 + ... + M_cn) computed two ways."""
import argparse
import itertools
import time

from fdalg.endo import end_algebra, mueller_crosscheck
from fdalg.families import liu_schulz, module_Mc
from fdalg.module import direct_sum, regular_module


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r", default="2")
    ap.add_argument("--pool", default="1,2,3,5")
    ap.add_argument("--max-summands", type=int, default=2)
    ap.add_argument("--bound", type=int, default=8)
    args = ap.parse_args()

    a = liu_schulz(r=args.r)
    pool = args.pool.split(",")
    for n in range(1, args.max_summands + 1):
        for cs in itertools.combinations(pool, n):
            t0 = time.time()
            parts = [regular_module(a)] + [module_Mc(a, c) for c in cs]
            ctx = end_algebra(direct_sum(parts, name="N"))
            cc = mueller_crosscheck(ctx, ctx.generator, args.bound)
            print(f"cs={cs}: dim B = {ctx.algebra.dim}, domdim = {cc.direct}, "
                  f"formula = {cc.formula}, agree = {cc.agree}  ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
