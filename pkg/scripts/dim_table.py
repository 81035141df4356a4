"""Print Der / TDer / GDer / centroid dimensions (even, odd) for catalog algebras."""

import argparse

from sjlab.catalog import build
from sjlab.derivations import solve_der, solve_gder, solve_tder
from sjlab.exact import field_from_tag
from sjlab.structure import centroid
from sjlab.verify import ALL_CATALOG


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("specs", nargs="*", default=ALL_CATALOG)
    ap.add_argument("--field", default="Q")
    args = ap.parse_args()
    F = field_from_tag(args.field)
    cols = [("Der", solve_der), ("TDer", solve_tder), ("GDer", solve_gder), ("C", centroid)]
    print(f"{'algebra':28s} {'dim':>3s} " + " ".join(f"{n:>7s}" for n, _ in cols))
    for spec in args.specs:
        A = build(spec, F).algebra
        cells = [f"{f(A, 0).dim:>3d},{f(A, 1).dim:<3d}" for _, f in cols]
        print(f"{spec:28s} {A.dim:3d} " + " ".join(cells))


if __name__ == "__main__":
    main()
