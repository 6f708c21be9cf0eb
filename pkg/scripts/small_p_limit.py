"""Small-|p| structure of the full bubble.

For each geometry the full sum behaves as Z_0 |p|^(D-d-4) + B_d + O(p^2):
the table gives the regular part against B_d and the zero-mode share of the
full value, next to the A(D)|p|^(D-4) + B_d form.
"""

import numpy as np

from glrg.bubble import Geometry, b_coeff, pi_compactified, regular_part, small_p_decomposition
from glrg.errors import PoleError

from _table import parser, write


def main():
    args = parser(__doc__).parse_args()
    geoms = [Geometry.film(1.0), Geometry.wire(1.0, 1.0), Geometry.grain(1.0, 1.0, 1.0)]
    rows = []
    for geom in geoms:
        for D in (2.6, 3.0, 3.4, 3.7):
            b = b_coeff(D, geom)
            for p in np.logspace(-4, 0, 9):
                p = float(p)
                reg = regular_part(p, D, geom)
                try:
                    full = pi_compactified(p, D, geom).value
                except PoleError:
                    full = float("nan")
                decomp = small_p_decomposition(D, geom, p).value
                rows.append((geom.name, D, p, reg, b, abs(reg - b) / abs(b), full, decomp))
    write(rows, ("geometry", "D", "p", "regular_part", "B", "rel_dev", "full", "A_p_plus_B"),
          args.out)


if __name__ == "__main__":
    main()
