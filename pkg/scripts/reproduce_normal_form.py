"""Normal-form coefficients at the reference Turing-Turing point under each convention.

Prints the tabulated reduction next to the variants that restore the u* factor
in the taxis rates and the mixed-gradient taxis terms, evaluated at both the
rounded and the exact intersection point.
"""

import itertools

from turing2.model import pdagger, reaction_taylor, steady_state
from turing2.normal_form import Convention, normal_form
from turing2.turing import turing_turing_point
from turing2.unfolding import planar_unfolding

KEYS = [("1010", 1), ("1001", 1), ("0110", 2), ("0101", 2), ("3000", 1), ("1200", 1), ("2100", 2),
        ("0300", 2)]


def main() -> None:
    p = pdagger()
    tt = turing_turing_point(steady_state(p), p, 3)
    points = {"rounded": (0.0253, 0.5527), "exact": (tt.du_star, tt.alpha_star)}
    head = "point    mixed  u*  " + " ".join(f"B{k}_{c:<1}".rjust(10) for k, c in KEYS)
    print(head + "      b~        c~     d~-b~c~")
    for (name, (du, al)), (mixed, us) in itertools.product(points.items(), [(False, False), (False, True),
                                                                             (True, False), (True, True)]):
        q = p.replace(du=du, alpha=al)
        lin = steady_state(q)
        nf = normal_form(lin, q, reaction_taylor(lin, q), 3, 4, Convention(mixed, us), singular_tol=1e-4)
        unf = planar_unfolding(nf)
        vals = " ".join(f"{nf.B(k, c):10.6f}" for k, c in KEYS)
        print(f"{name:8} {mixed!s:5} {us!s:5} {vals} {unf.b_tilde:8.5f} {unf.c_tilde:9.4f} {unf.det:9.4f}")


if __name__ == "__main__":
    main()
