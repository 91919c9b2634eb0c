"""A tridiagonal pair of q-Racah type and its split decomposition.

A = a X01 + a^-1 X12 and A* = b X23 + b^-1 X30 act on V(2, 5) (x) V(1, 11).
We print the eigenvalues, run the axiom checks, and show the subspaces
U_0, ..., U_d with the operators K and R.
"""

from fractions import Fraction

from tdpsi import build_representation, build_td_pair, split_decomposition
from tdpsi.tdpair import verify_split_decomposition, verify_tridiagonal_axioms

q, a, b = Fraction(2), Fraction(3), Fraction(7)
rep = build_representation([(2, 5), (1, 11)], q)
td = build_td_pair(rep, a, b)

print("dimension", rep.dim, "diameter", td.d)
print("theta  =", [str(x) for x in td.theta])
print("theta* =", [str(x) for x in td.theta_star])
print("eigenspace dimensions", [V.dim for V in td.V_spaces])

axioms = verify_tridiagonal_axioms(td)
print("\n" + axioms.text_summary())

sd = split_decomposition(td)
print("\nsplit decomposition dims", [U.dim for U in sd.U_spaces])
print(verify_split_decomposition(td, sd).text_summary().splitlines()[-1])
print("R nilpotent of order <= d+1:", (sd.R ** (td.d + 1)).is_zero())
