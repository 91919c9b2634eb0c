"""L-operators on evaluation modules and their tensor products.

An L-operator for V with parameter t is a map on V (x) V(1, t) that
intertwines the coproduct with the opposite coproduct.  It is stored by its
four components ``L00, L01, L10, L11`` acting on V, where

    L(v (x) w0) = L00 v (x) w0 + L10 v (x) w1
    L(v (x) w1) = L01 v (x) w0 + L11 v (x) w1.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_scalar import ParameterError, as_rational, qint
from .matrix import Matrix, SingularMatrix, inverse, rank
from .report import VerificationReport
from .uq_module import GENERATORS, Representation, eval_module_rep


class SingularL00(ArithmeticError):
    """``L00`` is not invertible.

    ``rank`` is the rank of L00; ``offending`` lists ``(factor, i)`` pairs
    whose diagonal table entry vanishes, when the factor data is known.
    """

    def __init__(self, rank, size, offending=()):
        self.rank = rank
        self.size = size
        self.offending = list(offending)
        msg = f"L00 is singular (rank {rank} of {size})"
        if self.offending:
            msg += "; zero diagonal at " + ", ".join(f"factor {j} index {i}" for j, i in self.offending)
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class LOperator:
    t: Fraction
    L00: Matrix
    L01: Matrix
    L10: Matrix
    L11: Matrix
    q: Fraction = None
    # (d, mu) per evaluation factor, for diagnosing a singular L00
    factor_spec: tuple = field(default=())

    def __post_init__(self):
        t = as_rational(self.t)
        if t == 0:
            raise ParameterError([("t", "spectral parameter must be nonzero")])
        object.__setattr__(self, "t", t)
        shapes = {m.shape for m in (self.L00, self.L01, self.L10, self.L11)}
        if len(shapes) != 1:
            raise ValueError(f"L-operator components disagree in shape: {sorted(shapes)}")

    @property
    def dim(self):
        return self.L00.rows

    def component(self, r, s):
        return getattr(self, f"L{r}{s}")

    def replace(self, **comps):
        kw = dict(t=self.t, L00=self.L00, L01=self.L01, L10=self.L10, L11=self.L11,
                  q=self.q, factor_spec=self.factor_spec)
        kw.update(comps)
        return LOperator(**kw)

    def scaled(self, c):
        c = as_rational(c)
        return self.replace(L00=self.L00.scale(c), L01=self.L01.scale(c),
                            L10=self.L10.scale(c), L11=self.L11.scale(c))

    def full_matrix(self):
        """The map on V (x) V(1, t), basis ordered with the V index slowest."""
        out = None
        for r in (0, 1):
            for s in (0, 1):
                unit = Matrix.from_entries(2, 2, {(r, s): 1})
                term = self.component(r, s).kron(unit)
                out = term if out is None else out + term
        return out


def eval_loperator(d: int, mu, t, xi, q) -> LOperator:
    """The one-parameter family of L-operators on V(d, mu), scaled by ``xi``."""
    q, mu, t, xi = (as_rational(x) for x in (q, mu, t, xi))
    bad = []
    if mu == 0:
        bad.append(("mu", "evaluation parameter zero"))
    if t == 0:
        bad.append(("t", "spectral parameter must be nonzero"))
    if xi == 0:
        bad.append(("xi", "xi must be nonzero"))
    if q == 0 or q * q == 1:
        bad.append(("q", "q is a root of unity"))
    if bad:
        raise ParameterError(bad)
    n = d + 1
    qq = q - 1 / q
    s = t / mu
    L00 = [(q ** (1 - i) - s * q ** (i - d)) / qq * xi for i in range(n)]
    L11 = [(q ** (i - d + 1) - s * q ** (-i)) / qq * xi for i in range(n)]
    L01 = {(i, i - 1): qint(i, q) * q ** (1 - i) * xi for i in range(1, n)}
    L10 = {(i - 1, i): qint(d - i + 1, q) * q ** (i - d) * s * xi for i in range(1, n)}
    return LOperator(
        t=t,
        L00=Matrix.diag(L00),
        L01=Matrix.from_entries(n, n, L01),
        L10=Matrix.from_entries(n, n, L10),
        L11=Matrix.diag(L11),
        q=q,
        factor_spec=((d, mu),),
    )


def tensor_loperator(LU: LOperator, LV: LOperator) -> LOperator:
    """Compose L-operators on U and V into one on U (x) V.

    L_rs(u (x) v) = L_r0(u) (x) L_0s(v) + L_r1(u) (x) L_1s(v).
    """
    if LU.t != LV.t:
        raise ParameterError([("t", f"spectral parameter mismatch: {LU.t} vs {LV.t}")])
    comps = {}
    for r in (0, 1):
        for s in (0, 1):
            comps[f"L{r}{s}"] = (LU.component(r, 0).kron(LV.component(0, s))
                                 + LU.component(r, 1).kron(LV.component(1, s)))
    q = LU.q if LU.q is not None else LV.q
    return LOperator(t=LU.t, q=q, factor_spec=LU.factor_spec + LV.factor_spec, **comps)


def build_loperator(factors, t, q) -> LOperator:
    """Left-associated composite over ``Factor`` objects (each carries d, mu, xi)."""
    out = None
    for f in factors:
        L = eval_loperator(f.d, f.mu, t, f.xi, q)
        out = L if out is None else tensor_loperator(out, L)
    return out


def verify_loperator_equations(L: LOperator, rep: Representation) -> VerificationReport:
    """The 24 component identities equivalent to the intertwining property."""
    if L.dim != rep.dim:
        raise ValueError(f"L-operator dimension {L.dim} does not match module dimension {rep.dim}")
    q, t = rep.q, L.t
    g = rep.chevalley
    E0, E1, F0, F1, K0, K1 = (g[k] for k in ("E0", "E1", "F0", "F1", "K0", "K1"))
    L00, L01, L10, L11 = L.L00, L.L01, L.L10, L.L11
    Z = Matrix.zeros(rep.dim)
    qi = 1 / q
    eqs = [
        ("K1 L00 = L00 K1", K1 @ L00, L00 @ K1),
        ("K1 L01 = q^-2 L01 K1", K1 @ L01, (L01 @ K1).scale(qi * qi)),
        ("K1 L10 = q^2 L10 K1", K1 @ L10, (L10 @ K1).scale(q * q)),
        ("K1 L11 = L11 K1", K1 @ L11, L11 @ K1),
        ("L00 E1 - q E1 L00 = L10", L00 @ E1 - (E1 @ L00).scale(q), L10),
        ("L01 E1 - q E1 L01 = L11 - L00 K1", L01 @ E1 - (E1 @ L01).scale(q), L11 - L00 @ K1),
        ("L10 E1 - q^-1 E1 L10 = 0", L10 @ E1 - (E1 @ L10).scale(qi), Z),
        ("L11 E1 - q^-1 E1 L11 = -L10 K1", L11 @ E1 - (E1 @ L11).scale(qi), -(L10 @ K1)),
        ("F1 L00 - q^-1 L00 F1 = L01", F1 @ L00 - (L00 @ F1).scale(qi), L01),
        ("F1 L01 - q L01 F1 = 0", F1 @ L01 - (L01 @ F1).scale(q), Z),
        ("F1 L10 - q^-1 L10 F1 = L11 - K0 L00", F1 @ L10 - (L10 @ F1).scale(qi), L11 - K0 @ L00),
        ("F1 L11 - q L11 F1 = -K0 L01", F1 @ L11 - (L11 @ F1).scale(q), -(K0 @ L01)),
        ("K0 L00 = L00 K0", K0 @ L00, L00 @ K0),
        ("K0 L01 = q^2 L01 K0", K0 @ L01, (L01 @ K0).scale(q * q)),
        ("K0 L10 = q^-2 L10 K0", K0 @ L10, (L10 @ K0).scale(qi * qi)),
        ("K0 L11 = L11 K0", K0 @ L11, L11 @ K0),
        ("L00 E0 - q^-1 E0 L00 = -t L01 K0", L00 @ E0 - (E0 @ L00).scale(qi), -(L01 @ K0).scale(t)),
        ("L01 E0 - q^-1 E0 L01 = 0", L01 @ E0 - (E0 @ L01).scale(qi), Z),
        ("L10 E0 - q E0 L10 = t L00 - t L11 K0", L10 @ E0 - (E0 @ L10).scale(q), (L00 - L11 @ K0).scale(t)),
        ("L11 E0 - q E0 L11 = t L01", L11 @ E0 - (E0 @ L11).scale(q), L01.scale(t)),
        ("F0 L00 - q L00 F0 = -t^-1 K1 L10", F0 @ L00 - (L00 @ F0).scale(q), -(K1 @ L10) / t),
        ("F0 L01 - q^-1 L01 F0 = t^-1 L00 - t^-1 K1 L11", F0 @ L01 - (L01 @ F0).scale(qi), (L00 - K1 @ L11) / t),
        ("F0 L10 - q L10 F0 = 0", F0 @ L10 - (L10 @ F0).scale(q), Z),
        ("F0 L11 - q^-1 L11 F0 = t^-1 L10", F0 @ L11 - (L11 @ F0).scale(qi), L10 / t),
    ]
    rpt = VerificationReport("loperator")
    for name, lhs, rhs in eqs:
        rpt.expect_equal(name, lhs, rhs, name)
    return rpt


def coproduct(U: Representation, W: Representation, u: str) -> Matrix:
    """Matrix of Delta(u) on U (x) W for a Chevalley generator name ``u``."""
    if u.startswith("K"):
        return U[u].kron(W[u])
    i = u[1]
    if u[0] == "E":
        return U[u].kron(W.identity()) + U["K" + i].kron(W[u])
    return U.identity().kron(W[u]) + U[u].kron(W["K" + i + "inv"])


def opposite_coproduct(U: Representation, W: Representation, u: str) -> Matrix:
    """Matrix of Delta^op(u) on U (x) W: the two tensor legs of Delta(u) swapped."""
    if u.startswith("K"):
        return U[u].kron(W[u])
    i = u[1]
    if u[0] == "E":
        return U.identity().kron(W[u]) + U[u].kron(W["K" + i])
    return U[u].kron(W.identity()) + U["K" + i + "inv"].kron(W[u])


def verify_intertwiner(L: LOperator, rep: Representation) -> VerificationReport:
    """Check L Delta(u) = Delta^op(u) L on V (x) V(1, t) for every Chevalley generator u.

    Both coproducts are algebra maps, so the generators suffice.
    """
    if L.dim != rep.dim:
        raise ValueError(f"L-operator dimension {L.dim} does not match module dimension {rep.dim}")
    W = eval_module_rep(1, L.t, rep.q)
    M = L.full_matrix()
    rpt = VerificationReport("intertwiner")
    rpt.expect_equal("L Delta(1) = Delta^op(1) L", M, M, "L Delta(u) = Delta^op(u) L")
    for u in GENERATORS:
        rpt.expect_equal(f"L Delta({u}) = Delta^op({u}) L",
                         M @ coproduct(rep, W, u), opposite_coproduct(rep, W, u) @ M,
                         "L Delta(u) = Delta^op(u) L")
    return rpt


def singular_indices(factor_spec, t, q):
    """``(factor, i)`` pairs where the L00 diagonal entry q^(1-i) - t/mu q^(i-d) vanishes."""
    t, q = as_rational(t), as_rational(q)
    out = []
    for j, (d, mu) in enumerate(factor_spec):
        for i in range(d + 1):
            if q ** (1 - i) == t / mu * q ** (i - d):
                out.append((j, i))
    return out


def check_L00_invertible(L: LOperator) -> Matrix:
    """Return L00^-1, or raise :class:`SingularL00` with a diagnosis."""
    try:
        return inverse(L.L00)
    except SingularMatrix:
        off = singular_indices(L.factor_spec, L.t, L.q) if (L.factor_spec and L.q is not None) else []
        raise SingularL00(rank(L.L00), L.dim, off) from None
