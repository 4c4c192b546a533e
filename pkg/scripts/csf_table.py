"""Print the Frobenius coefficients c_s for one place, by the gamma route and the
period route, with valuations and leading terms.

    python3 scripts/csf_table.py --p 3 --v "x^2+1" --ell 4
"""

import argparse

from carlitz_periods.algebra import FieldDesc, parse_polynomial
from carlitz_periods.localfield import diff_valuation, make_place
from carlitz_periods.periods import period_index, rho_row_gamma, rho_row_period


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--v", default="x^2+x+1")
    ap.add_argument("--ell", type=int, default=4)
    ap.add_argument("--prec", type=int, default=64)
    ap.add_argument("--terms", type=int, default=4)
    args = ap.parse_args()

    place = make_place(parse_polynomial(args.v, FieldDesc(args.p, args.e)))
    print(f"# {place}")
    print(f"{'s':>2} {'s_0':>3} {'n_s':>3} {'val':>3} {'diff':>5}  leading terms")
    for s in range(args.ell):
        idx = period_index(args.ell, place.d, s)
        a = rho_row_gamma(args.ell, s, place, args.prec)
        b = rho_row_period(args.ell, s, place, args.prec)
        dv = diff_valuation(a, b)
        print(f"{s:>2} {idx.s_0:>3} {idx.n_s:>3} {b.val:>3} {dv!s:>5}  {b.render(args.terms)}")


if __name__ == "__main__":
    main()
