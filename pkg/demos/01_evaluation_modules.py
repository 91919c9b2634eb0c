"""Evaluation modules for the quantum loop algebra, and their tensor products.

Builds V(1, 5) and V(2, 5) at q = 2, prints the generator matrices, and
checks the defining relations on V(1,5) (x) V(1,11) (x) V(1,13).
"""

from fractions import Fraction

from tdpsi import build_representation, eval_module_rep
from tdpsi.uq_module import equitable_generators, verify_defining_relations, verify_equitable_relations


def show(name, M):
    print(f"{name} =")
    for row in M.tolist():
        print("   ", [str(x) for x in row])


q = Fraction(2)

V = eval_module_rep(1, 5, q)
print("V(1, 5) at q = 2")
for g in ("E0", "F0", "E1", "F1", "K0", "K1"):
    show(g, V[g])

W = eval_module_rep(2, 5, q)
print("\nK1 on V(2, 5) is diag(q^2, 1, q^-2):")
show("K1", W.K1)

big = build_representation([(1, 5), (1, 11), (1, 13)], q)
rpt = verify_defining_relations(big)
print(f"\nV(1,5) (x) V(1,11) (x) V(1,13): dimension {big.dim}")
print(rpt.text_summary())

X = equitable_generators(V)
print("\nEquitable generators on V(1, 5):")
show("X01", X.X01)
show("X23", X.X23)
print(verify_equitable_relations(X, q).text_summary().splitlines()[-1])
