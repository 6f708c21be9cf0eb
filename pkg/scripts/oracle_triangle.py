"""Relative deviations between direct sums, Bessel forms and the recurrence."""

from glrg.epstein import epstein_direct, epstein_recurrence, hurwitz_bessel, hurwitz_direct
from glrg.validation import oracle_points

from _table import parser, write


def main():
    args = parser(__doc__).parse_args()
    hurwitz, epstein = oracle_points()
    rows = []
    for s in hurwitz:
        res = hurwitz_direct(s, full_output=True)
        other = hurwitz_bessel(s)
        rows.append(("hurwitz", s.d, s.nu, s.c2, res.value, other,
                     abs(res.value - other) / abs(res.value), res.error / abs(res.value), res.shells))
    for s in epstein:
        res = epstein_direct(s, full_output=True)
        other = epstein_recurrence(s)
        rows.append(("epstein", s.p, s.nu, "", res.value, other,
                     abs(res.value - other) / abs(res.value), res.error / abs(res.value), res.shells))
    write(rows, ("kind", "dim", "nu", "c2", "direct", "continued", "rel_dev",
                 "direct_rel_error_estimate", "shells"), args.out)


if __name__ == "__main__":
    main()
