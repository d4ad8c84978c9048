#!/usr/bin/env python3
"""Generate an N x N symbol grid CSV usable with `--symbol grid:PATH`.

Samples a built-in family at the cell centers ((i+1/2)/N - 1/2, (j+1/2)/N - 1/2)
of the fundamental cell [-1/2,1/2)^2 and writes the grid CSV format: a header
line holding N, then N*N rows "xi,eta,re,im" in row-major order (xi varies
slowest). The loader ignores the coordinate columns; they are kept for
inspection and plotting.
"""

import argparse
import cmath
import math


def sample(family, xi, eta, args):
    if family == "constant":
        return complex(args.re, args.im)
    if family == "sign":
        t = xi + args.alpha * eta
        s = 0.0 if t == 0.0 else math.copysign(1.0, t)
        return complex(args.re, args.im) * s
    if family == "phase":
        return cmath.exp(2j * math.pi * (args.j1 * xi + args.j2 * eta))
    if family == "bump":
        # Smooth separable bump vanishing on the cell boundary.
        return complex(math.cos(math.pi * xi) ** 2 * math.cos(math.pi * eta) ** 2, 0.0)
    raise ValueError(f"unknown family: {family}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, required=True, help="grid resolution N >= 2")
    ap.add_argument("--family", choices=["constant", "sign", "phase", "bump"],
                    default="sign")
    ap.add_argument("--alpha", type=float, default=2.0,
                    help="slope for the sign family (default 2)")
    ap.add_argument("--re", type=float, default=0.0,
                    help="amplitude real part for constant/sign (default 0)")
    ap.add_argument("--im", type=float, default=-1.0,
                    help="amplitude imaginary part for constant/sign (default -1)")
    ap.add_argument("--j1", type=int, default=1, help="phase frequency in xi")
    ap.add_argument("--j2", type=int, default=-2, help="phase frequency in eta")
    ap.add_argument("-o", "--output", required=True, help="output CSV path")
    args = ap.parse_args()

    if args.n < 2:
        ap.error("--n must be at least 2")

    with open(args.output, "w") as out:
        out.write(f"{args.n}\n")
        for i in range(args.n):
            xi = (i + 0.5) / args.n - 0.5
            for j in range(args.n):
                eta = (j + 0.5) / args.n - 0.5
                v = sample(args.family, xi, eta, args)
                out.write(f"{xi:.17g},{eta:.17g},{v.real:.17g},{v.imag:.17g}\n")


if __name__ == "__main__":
    main()
