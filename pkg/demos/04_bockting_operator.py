"""The operator psi, computed twice.

Route one solves the linear conditions that define psi directly.  Route two
reads psi off the L-operator with parameter t = a^2 as -a L00^-1 L01.  On
V(1, 5) both give one nonzero entry, 45/8; on larger modules they still
agree exactly, for any choice of the per-factor scalings xi.
"""

import random
from fractions import Fraction

from tdpsi import (
    build_loperator,
    build_representation,
    build_td_pair,
    psi_from_loperator,
    solve_psi,
    split_decomposition,
)
from tdpsi.exact_scalar import Factor

q, a, b = Fraction(2), Fraction(3), Fraction(7)


def pipeline(factors):
    rep = build_representation(factors, q)
    sd = split_decomposition(build_td_pair(rep, a, b))
    return rep, sd


rep, sd = pipeline([(1, 5)])
ps = solve_psi(sd, q)
ph = psi_from_loperator(build_loperator([Factor(1, 5)], a * a, q), a, sd)
print("V(1,5): psi in the U-adapted basis", [[str(x) for x in r] for r in ps.adapted(sd).tolist()])
print("        routes agree:", ps.psi == ph.psi)

factors = [(2, 5), (1, 11)]
rep, sd = pipeline(factors)
ps = solve_psi(sd, q)
print(f"\nV(2,5) (x) V(1,11): solver kernel dimension {ps.kernel_dim}, block profile {ps.block_profile}")
rng = random.Random(0)
for _ in range(3):
    xis = [Fraction(rng.randint(1, 17), rng.randint(1, 17)) for _ in factors]
    L = build_loperator([Factor(d, mu, xi) for (d, mu), xi in zip(factors, xis)], a * a, q)
    print("  xi =", [str(x) for x in xis], "-> equal:", psi_from_loperator(L, a, sd).psi == ps.psi)
