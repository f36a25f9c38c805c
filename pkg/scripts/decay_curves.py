#!/usr/bin/env python3
"""Write scaled multiplier-kernel decay curves for a few bump supports."""
import argparse

import numpy as np

from hypsurf.transforms import PlancherelWeight, bump_multiplier, k_rho_scaled


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="decay_curves.csv")
    ap.add_argument("--supports", default="1:2,0.5:1,2:3")
    args = ap.parse_args()
    ts = np.linspace(1.0, 40.0, 400)
    cols = [ts]
    names = ["t"]
    for spec in args.supports.split(","):
        lo, hi = (float(x) for x in spec.split(":"))
        rho = bump_multiplier(lo, hi)
        cols.append(np.abs(k_rho_scaled(rho, PlancherelWeight.paper(), ts)))
        names.append(f"abs_scaled_k_{lo:g}_{hi:g}")
    with open(args.out, "w") as f:
        f.write(",".join(names) + "\n")
        for row in zip(*cols):
            f.write(",".join("%.17g" % v for v in row) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
