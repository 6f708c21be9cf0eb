"""B_d(D) for a unit film, wire and grain across 2 < D < 4, plus A(D)."""

import numpy as np

from glrg.bubble import a_coeff, b_film, b_grain, b_wire

from _table import parser, write


def main():
    p = parser(__doc__)
    p.add_argument("--n", type=int, default=77)
    p.add_argument("--L", type=float, default=1.0)
    args = p.parse_args()
    L = args.L
    rows = []
    for D in np.linspace(2.05, 3.95, args.n):
        D = float(D)
        rows.append((D, a_coeff(D), b_film(D, L), b_wire(D, L, L), b_grain(D, L, L, L)))
    write(rows, ("D", "A", "B_film", "B_wire", "B_grain"), args.out)


if __name__ == "__main__":
    main()
