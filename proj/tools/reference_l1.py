"""Reference grid L1 distances for Q = 1/(1+z^2) on [-3,3]^2.

The zeros of the n-th derivative are cot(k pi/(n+1)), k = 1..n, and the limit
potential is log max(|z-i|, |z+i|). Everything here is numpy on a midpoint
grid, independent of the C++ solver and quadrature.

    python tools/reference_l1.py --grid 4000
"""

import argparse

import numpy as np


def l1_distance(n, grid, half=3.0, exclusion=6e-3, rows=250):
    zeros = 1.0 / np.tan(np.arange(1, n + 1) * np.pi / (n + 1))
    sites = np.array([1j, -1j])
    h = 2.0 * half / grid
    xs = -half + (np.arange(grid) + 0.5) * h
    total, used = 0.0, 0
    for start in range(0, grid, rows):
        ys = xs[start:start + rows]
        z = xs[None, :] + 1j * ys[:, None]
        near = np.min(np.abs(z[..., None] - sites), axis=-1)
        logsum = np.zeros(z.shape)
        for a in zeros:
            r = np.abs(z - a)
            near = np.minimum(near, r)
            logsum += np.log(r)
        target = np.log(np.maximum(np.abs(z - 1j), np.abs(z + 1j)))
        keep = near >= exclusion
        total += np.abs(logsum / n - target)[keep].sum()
        used += int(keep.sum())
    return total / used


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", type=int, default=4000)
    parser.add_argument("--n", default="25,50,100")
    args = parser.parse_args()
    for n in (int(s) for s in args.n.split(",")):
        print(f"n={n} l1={l1_distance(n, args.grid):.6g}")


if __name__ == "__main__":
    main()
