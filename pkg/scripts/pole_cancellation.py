"""Approach to D = 3: B_2, B_3 through 3 +- eps and the Laurent data of E_2, E_3.

E_p((D-2)/2) has a simple pole at D = 3; the table lists the raw value, the
value with the pole removed and the analytic finite part.  B_2 and B_3 are
regular there.
"""

from glrg.bubble import b_grain, b_wire
from glrg.epstein import EpsteinSpec, e2_laurent_at_3, e3_laurent_at_3, epstein_recurrence

from _table import parser, write


def main():
    args = parser(__doc__).parse_args()
    cases = [("E2", (1.0, 1.0), e2_laurent_at_3), ("E2", (1.0, 2.0), e2_laurent_at_3),
             ("E3", (1.0, 1.0, 1.0), e3_laurent_at_3), ("E3", (1.0, 2.0, 3.0), e3_laurent_at_3)]
    rows = []
    for eps in (1e-2, 1e-3, 1e-4, -1e-4, -1e-3, -1e-2):
        D = 3.0 + eps
        for name, L, laurent in cases:
            lau = laurent(*L)
            raw = epstein_recurrence(EpsteinSpec((D - 2.0) / 2.0, L))
            rows.append((name, " ".join(f"{v:g}" for v in L), eps, raw,
                         raw - lau.residue / eps, lau.finite))
        rows.append(("B_wire", "1 1", eps, b_wire(D, 1.0, 1.0), "", b_wire(3.0, 1.0, 1.0)))
        rows.append(("B_grain", "1 1 1", eps, b_grain(D, 1.0, 1.0, 1.0), "",
                     b_grain(3.0, 1.0, 1.0, 1.0)))
    write(rows, ("quantity", "lengths", "eps", "value", "pole_removed", "value_at_3"), args.out)


if __name__ == "__main__":
    main()
