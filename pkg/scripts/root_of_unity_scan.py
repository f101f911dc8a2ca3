"""Where the Ext tail behaves differently once r is a root of unity.

Over F_p the powers r^l c cycle, so Ext^i(M_c, M_d) stops vanishing on cells
that are eventually hit.  For each (p, r) this prints the order of r, the
number of grid cells whose tail vanishes, and the Ext^i(M_1, M_1) profile.
"""
import argparse

from fdalg.families import LiuSchulzParams, hom_ext_grid, liu_schulz, module_Mc, multiplicative_order
from fdalg.homological import ext_dims
from fdalg.linalg import GF, QQ


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="11,13,17")
    ap.add_argument("--bound", type=int, default=10)
    args = ap.parse_args()

    H = args.bound
    q = hom_ext_grid(2, [1, 2, 3, 4], H, QQ)
    base = sum(c["vanishes_up_to_H"] for c in q.tail)
    print(f"Q, r=2: {base}/16 tail cells vanish up to H={H}")
    for p in (int(x) for x in args.primes.split(",")):
        f = GF(p)
        for r in range(2, p):
            k = multiplicative_order(f, r, H)
            if k is None or k < 3:
                continue
            t = hom_ext_grid(r, [1, 2, 3, 4], H, f)
            van = sum(c["vanishes_up_to_H"] for c in t.tail)
            m1 = module_Mc(liu_schulz(LiuSchulzParams(f, r)), 1)
            prof = ext_dims(m1, m1, H)[1:]
            print(f"F_{p}, r={r} (order {k}): {van}/16 tail cells vanish, "
                  f"agree={t.all_agree}, Ext^i(M_1,M_1) = {prof}")


if __name__ == "__main__":
    main()
