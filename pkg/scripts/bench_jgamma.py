"""Time the ternary-derivation solve on J(Gamma_n) for growing n."""

import argparse
import time

from sjlab.catalog import build
from sjlab.derivations import first_nonstandard, solve_gder, solve_tder
from sjlab.exact import field_from_tag


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--field", default="Q")
    args = ap.parse_args()
    F = field_from_tag(args.field)
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        A = build(f"jgamma:n={n}", F).algebra
        for p in (0, 1):
            T = solve_tder(A, p)
            t1 = time.perf_counter()
            std = first_nonstandard(A, T) is None and first_nonstandard(A, solve_gder(A, p)) is None
            t2 = time.perf_counter()
            print(f"n={n} dim={A.dim:3d} parity={p} unknowns={3 * T.block.size:5d} "
                  f"tder={T.dim:3d} solve={t1 - t0:7.2f}s standard={std} check={t2 - t1:6.2f}s")
            t0 = time.perf_counter()


if __name__ == "__main__":
    main()
