"""Hom / Ext^1 / Ext-tail grids over the M_c family for several r.

    python scripts/grid_table.py --out results/grids
"""
import argparse
import json
import os

from fdalg.families import hom_ext_grid
from fdalg.linalg import Field


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default="Q")
    ap.add_argument("--rs", default="2,3,5/2")
    ap.add_argument("--cs", default="1,2,3,4,5")
    ap.add_argument("--bound", type=int, default=12)
    ap.add_argument("--out", default=None, help="directory for JSON files")
    args = ap.parse_args()

    f = Field.from_spec(args.field)
    cs = [f.parse(c) for c in args.cs.split(",")]
    for r in args.rs.split(","):
        t = hom_ext_grid(f.parse(r), cs, args.bound, f)
        print(t.to_text())
        print()
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            name = f"grid_r{r.replace('/', '_')}_{f.spec.replace(':', '')}.json"
            with open(os.path.join(args.out, name), "w") as fh:
                json.dump(t.to_json(), fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
