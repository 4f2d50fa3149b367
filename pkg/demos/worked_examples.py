"""Walk through the small worked examples at p = 37 and a few neighbours.

Run with: python3 demos/worked_examples.py
"""

from supersingular.arith import char_exponents
from supersingular.classnum import class_number
from supersingular.fppoly import format_factored, split_factors
from supersingular.qseries import build_RN, relations
from supersingular.ssp import ss_fricke_hg, ss_level1, ss_resultant


def show(title, text):
    print(f"{title:<34} {text}")


p = 37
ce = char_exponents(p)
show("exponents (eps, delta, nu)", (ce.eps, ce.delta, ce.nu))

show("level 1", format_factored(split_factors(ss_level1(p).poly)))
show("2* from the hypergeometric sum", format_factored(split_factors(ss_fricke_hg(2, p).poly), "Y"))

# the resultant carries squared factors; its radical is the 2* polynomial again
V, radical = ss_resultant("2*", p)
show("Res_X(ss_p(X), R_2(X, Y))", format_factored(split_factors(V.monic()), "Y"))
show("radical", format_factored(split_factors(radical.poly), "Y"))

a, b = relations.a_b_of(build_RN(2))
show("a_2 coefficients (low first)", a)
show("b_2 coefficients (low first)", b)

for d in (37, 74, 111):
    show(f"h(-{d})", class_number(d))
