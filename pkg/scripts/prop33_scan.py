#!/usr/bin/env python3
"""Scan the averaged-multiplier floor over sigma and report each certificate."""
import argparse
import math

from hypsurf.propagators import prop33_certificate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigmas", default="0.4,0.2,0.1,0.05")
    ap.add_argument("--T", default="10,20,40")
    ap.add_argument("--nu-window", default="1:4")
    args = ap.parse_args()
    nu_lo, nu_hi = (float(x) for x in args.nu_window.split(":"))
    interval = (math.sqrt(nu_lo - 0.25), math.sqrt(nu_hi - 0.25))
    T_list = [float(x) for x in args.T.split(",")]
    print(f"lambda window [{interval[0]:.6f}, {interval[1]:.6f}]")
    for sigma in (float(s) for s in args.sigmas.split(",")):
        cert = prop33_certificate(interval, sigma, T_list)
        floors = ", ".join(f"T={T:g}: {c:.6f}" for T, c in
                           zip(cert.T_list, cert.c_min))
        print(f"sigma={sigma:g}: {floors}  (variation "
              f"{100 * cert.upper_half_variation:.1f}%, pass={cert.passed})")


if __name__ == "__main__":
    main()
