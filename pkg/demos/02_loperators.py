"""L-operators: the closed-form table and its two characterizations.

An L-operator on V is a map on V (x) V(1, t) that intertwines the coproduct
and opposite coproduct actions.  This script builds the table operator for
V(1, 5) at t = 9, then checks the component identities and the
intertwining property.  It finishes by perturbing one entry to show that
both checks catch the change.
"""

from fractions import Fraction

from tdpsi import build_loperator, build_representation, eval_loperator, eval_module_rep
from tdpsi.exact_scalar import Factor
from tdpsi.loperator import check_L00_invertible, verify_intertwiner, verify_loperator_equations
from tdpsi.matrix import Matrix

q, t = Fraction(2), Fraction(9)

L = eval_loperator(1, 5, t, 1, q)
for r in (0, 1):
    for s in (0, 1):
        print(f"L{r}{s} =", [[str(x) for x in row] for row in L.component(r, s).tolist()])
print("L00^-1 =", [[str(x) for x in row] for row in check_L00_invertible(L).tolist()])

rep = eval_module_rep(1, 5, q)
eq = verify_loperator_equations(L, rep)
inter = verify_intertwiner(L, rep)
print(f"\ncomponent identities: {eq.summary()['pass']}/{len(eq)} pass")
print(f"intertwining:         {inter.summary()['pass']}/{len(inter)} pass")

bad = L.replace(L10=L.L10 + Matrix.from_entries(2, 2, {(0, 1): 1}))
print("\nafter perturbing L10[0, 1]:")
print("  identities pass?  ", verify_loperator_equations(bad, rep).passed)
print("  intertwining pass?", verify_intertwiner(bad, rep).passed)

# composite L-operator on a tensor product
facs = [(1, 5), (1, 11)]
LL = build_loperator([Factor(d, mu) for d, mu in facs], t, q)
big = build_representation(facs, q)
print("\nV(1,5) (x) V(1,11):",
      "identities", verify_loperator_equations(LL, big).passed,
      "| intertwining", verify_intertwiner(LL, big).passed)
