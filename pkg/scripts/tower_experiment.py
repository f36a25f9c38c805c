#!/usr/bin/env python3
"""Variance and Weyl-ratio table across a cover tower of the octagon surface."""
import argparse
import math

import numpy as np

from hypsurf.eigensolve import disc_surface_mesh, fem_eigensolve
from hypsurf.fuchsian import bolza_group, random_cover
from hypsurf.variance import (SpectralWindow, mean_zero_density,
                              quantum_variance, weyl_ratio)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degrees", default="1,2,4,8")
    ap.add_argument("--h", type=float, default=0.05)
    ap.add_argument("--window", default="1:4")
    ap.add_argument("--seed", type=int, default=23)
    args = ap.parse_args()
    base = bolza_group()
    window = SpectralWindow(*(float(x) for x in args.window.split(":")))
    print("deg   modes-in-window   variance      spread        weyl-ratio")
    for deg in (int(d) for d in args.degrees.split(",")):
        surface = base if deg == 1 else random_cover(base, deg, seed=args.seed)
        data = fem_eigensolve(disc_surface_mesh(surface, args.h), 24 + 12 * deg)
        vals = mean_zero_density(lambda z: 1.0 if z.real > 0 else -1.0, data)
        rep = quantum_variance(vals, data, window, seed=args.seed)
        spread = float(np.std(rep.terms) / math.sqrt(rep.count))
        wr = weyl_ratio(data, window)
        print(f"{deg:3d}   {rep.count:15d}   {rep.variance:.6f}   "
              f"{spread:.6f}   {wr.ratio:10.3f}")


if __name__ == "__main__":
    main()
