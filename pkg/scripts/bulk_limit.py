"""Full film bubble against the bulk A(D)|p|^(D-4) as L grows (algebraic approach)."""

import numpy as np

from glrg.bubble import Geometry, a_coeff, pi_compactified

from _table import parser, write


def main():
    args = parser(__doc__).parse_args()
    rows = []
    for D in (3.3, 3.5, 3.8):
        for L in np.logspace(0, 3, 13):
            v = pi_compactified(1.0, D, Geometry.film(float(L))).value
            rows.append((D, float(L), v, a_coeff(D), v / a_coeff(D) - 1.0))
    write(rows, ("D", "L", "Pi", "A", "rel_dev"), args.out)


if __name__ == "__main__":
    main()
