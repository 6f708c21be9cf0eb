"""g(t) from integrate_flow for several starting couplings, with the closed-form deviation."""

from glrg.flow import MAGNETIC, ZERO_FIELD, flow_closed_form, integrate_flow

from _table import parser, write


def main():
    p = parser(__doc__)
    p.add_argument("--steps", type=int, default=101)
    args = p.parse_args()
    runs = [(ZERO_FIELD, D, g0) for D in (2.5, 3.0, 3.5) for g0 in (0.1, 0.5, 2.0)]
    runs += [(MAGNETIC, 5.0, g0) for g0 in (10.0, 100.0, 500.0)]
    rows = []
    for regime, D, g0 in runs:
        for s in integrate_flow(g0, D, regime, (0.0, -20.0), args.steps):
            exact = float(flow_closed_form(g0, D, regime, s.t))
            rows.append((regime, D, g0, s.t, s.g, s.beta, abs(s.g - exact) / exact))
    write(rows, ("regime", "D", "g0", "t", "g", "beta", "rel_dev_closed_form"), args.out)


if __name__ == "__main__":
    main()
