"""Tridiagonal pairs of q-Racah type built from loop-algebra modules.

On a module V with equitable generators X, the pair

    A  = a X01 + a^-1 X12,      A* = b X23 + b^-1 X30

is tridiagonal with eigenvalues theta_i = a q^(2i-d) + a^-1 q^(d-2i) (and
likewise theta*_i with b).  Eigenvalues are predicted from that closed
form and eigenspaces are plain kernels; nothing is ever root-found.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .exact_scalar import as_rational
from .matrix import EchelonBuilder, Matrix, Subspace, intersect, inverse, is_direct_sum, kernel, subspace_sum
from .report import VerificationReport
from .uq_module import EquitableGenerators, Representation, equitable_generators


class DegenerateParameters(ValueError):
    """The sampled parameter point is not generic enough for the construction."""


def qracah_eigenvalues(c, q, d):
    """[c q^(2i-d) + c^-1 q^(d-2i) for i = 0..d]."""
    c, q = as_rational(c), as_rational(q)
    return [c * q ** (2 * i - d) + q ** (d - 2 * i) / c for i in range(d + 1)]


def eigenvalue_ratios(theta):
    """(theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i) for 2 <= i <= d-1."""
    d = len(theta) - 1
    return [(theta[i - 2] - theta[i + 1]) / (theta[i - 1] - theta[i]) for i in range(2, d)]


@dataclass(frozen=True, eq=False)
class TDPairData:
    A: Matrix
    Astar: Matrix
    d: int
    a: Fraction
    b: Fraction
    q: Fraction
    theta: tuple
    theta_star: tuple
    V_spaces: tuple
    Vstar_spaces: tuple

    @property
    def dim(self):
        return self.A.rows


@dataclass(frozen=True, eq=False)
class SplitDecomposition:
    U_spaces: tuple
    K: Matrix
    Kinv: Matrix
    R: Matrix
    # columns: U_0 basis, then U_1 basis, ...
    adapted_basis: Matrix

    @property
    def d(self):
        return len(self.U_spaces) - 1

    def blocks(self):
        """Index ranges of each U_i inside the adapted basis."""
        out, start = [], 0
        for U in self.U_spaces:
            out.append(range(start, start + U.dim))
            start += U.dim
        return out


def _eigenspaces(M, values):
    n = M.rows
    I = Matrix.identity(n)
    return tuple(kernel(M - I.scale(th)) for th in values)


def build_td_pair(rep: Representation, a, b, X: EquitableGenerators = None) -> TDPairData:
    a, b = as_rational(a), as_rational(b)
    if a == 0 or b == 0:
        raise DegenerateParameters("a and b must be nonzero")
    X = X or equitable_generators(rep)
    q = rep.q
    d = rep.diameter
    A = X.X01.scale(a) + X.X12 / a
    As = X.X23.scale(b) + X.X30 / b
    theta = qracah_eigenvalues(a, q, d)
    theta_s = qracah_eigenvalues(b, q, d)
    for name, seq in (("theta", theta), ("theta*", theta_s)):
        if len(set(seq)) != len(seq):
            raise DegenerateParameters(f"{name} values are not mutually distinct: {[str(x) for x in seq]}")
    V = _eigenspaces(A, theta)
    Vs = _eigenspaces(As, theta_s)
    for name, spaces in (("A", V), ("A*", Vs)):
        zero = [i for i, S in enumerate(spaces) if S.dim == 0]
        if zero:
            raise DegenerateParameters(f"predicted eigenspaces of {name} are zero at indices {zero}")
        if sum(S.dim for S in spaces) != rep.dim:
            raise DegenerateParameters(f"{name} is not diagonalizable with the predicted spectrum")
    return TDPairData(A, As, d, a, b, q, tuple(theta), tuple(theta_s), V, Vs)


def is_standard_ordering(M: Matrix, spaces) -> bool:
    """True iff M sends each spaces[i] into spaces[i-1] + spaces[i] + spaces[i+1]."""
    n = M.rows
    d = len(spaces) - 1
    for i, S in enumerate(spaces):
        nbhd = subspace_sum(*spaces[max(i - 1, 0): min(i + 1, d) + 1])
        if not nbhd.contains_subspace(S.image(M)):
            return False
    return True


def verify_tridiagonal_axioms(td: TDPairData) -> VerificationReport:
    rpt = VerificationReport("tdpair")
    n, d = td.dim, td.d
    I = Matrix.identity(n)
    rpt.expect("A diagonalizable", sum(S.dim for S in td.V_spaces) == n and is_direct_sum(td.V_spaces),
               [S.dim for S in td.V_spaces], "sum of dim V_i = dim V")
    rpt.expect("A* diagonalizable", sum(S.dim for S in td.Vstar_spaces) == n and is_direct_sum(td.Vstar_spaces),
               [S.dim for S in td.Vstar_spaces], "sum of dim V*_i = dim V")
    rpt.expect("diameters agree", len(td.V_spaces) == len(td.Vstar_spaces) == d + 1,
               (len(td.V_spaces), len(td.Vstar_spaces)), "d = delta")
    ok = all(all((td.A - I.scale(th)).apply(v) == (0,) * n for v in S.basis)
             for th, S in zip(td.theta, td.V_spaces))
    ok_s = all(all((td.Astar - I.scale(th)).apply(v) == (0,) * n for v in S.basis)
               for th, S in zip(td.theta_star, td.Vstar_spaces))
    rpt.expect("A eigenvalues are q-Racah", ok, [str(x) for x in td.theta], "theta_i = a q^(2i-d) + a^-1 q^(d-2i)")
    rpt.expect("A* eigenvalues are q-Racah", ok_s, [str(x) for x in td.theta_star], "theta*_i = b q^(2i-d) + b^-1 q^(d-2i)")
    rpt.expect("theta distinct", len(set(td.theta)) == d + 1, None, "theta_i mutually distinct")
    rpt.expect("theta* distinct", len(set(td.theta_star)) == d + 1, None, "theta*_i mutually distinct")
    rpt.expect("A* V_i in V_i-1 + V_i + V_i+1", is_standard_ordering(td.Astar, td.V_spaces), None,
               "A* V_i subset V_{i-1} + V_i + V_{i+1}")
    rpt.expect("A V*_i in V*_i-1 + V*_i + V*_i+1", is_standard_ordering(td.A, td.Vstar_spaces), None,
               "A V*_i subset V*_{i-1} + V*_i + V*_{i+1}")
    rpt.expect("reversed V ordering standard", is_standard_ordering(td.Astar, td.V_spaces[::-1]), None,
               "{V_(d-i)} is standard")
    rpt.expect("reversed V* ordering standard", is_standard_ordering(td.A, td.Vstar_spaces[::-1]), None,
               "{V*_(d-i)} is standard")
    if d == 2:
        ident, rev = (0, 1, 2), (2, 1, 0)
        others = [p for p in permutations(range(3)) if p not in (ident, rev)]
        bad_V = [p for p in others if is_standard_ordering(td.Astar, [td.V_spaces[i] for i in p])]
        bad_Vs = [p for p in others if is_standard_ordering(td.A, [td.Vstar_spaces[i] for i in p])]
        rpt.expect("no other V ordering standard", not bad_V, bad_V, "no further ordering is standard")
        rpt.expect("no other V* ordering standard", not bad_Vs, bad_Vs, "no further ordering is standard")
    if d >= 3:
        beta = td.q ** 2 + 1 + td.q ** -2
        r, rs = eigenvalue_ratios(td.theta), eigenvalue_ratios(td.theta_star)
        rpt.expect("theta ratio constant", all(x == beta for x in r), [str(x) for x in r],
                   "(theta_(i-2) - theta_(i+1))/(theta_(i-1) - theta_i) = q^2 + 1 + q^-2")
        rpt.expect("theta* ratio constant", all(x == beta for x in rs), [str(x) for x in rs],
                   "(theta*_(i-2) - theta*_(i+1))/(theta*_(i-1) - theta*_i) = q^2 + 1 + q^-2")
    irr = verify_irreducible(td)
    if irr.status is None:
        rpt.inconclusive("irreducible", irr.profile, "no proper common invariant subspace")
    else:
        rpt.expect("irreducible", irr.status, irr.profile, "no proper common invariant subspace")
    return rpt


@dataclass(frozen=True)
class Irreducibility:
    """``status`` is True, False, or None (inconclusive); ``profile`` is the span dimension after each word length."""

    status: object
    span_dim: int
    profile: tuple

    def __bool__(self):
        return bool(self.status)


def word_span(mats, max_len=None) -> Irreducibility:
    """Dimension of the algebra generated by ``mats``, grown one word length at a time.

    Full matrix algebra (dim n^2) means the matrices act irreducibly over an
    algebraically closed field (Burnside).  Stops when a word length adds
    nothing; ``max_len`` defaults to n^2, after which the answer is None.
    """
    n = mats[0].rows
    full = n * n
    max_len = full if max_len is None else max_len
    span = EchelonBuilder(full)
    I = Matrix.identity(n)
    span.add(I.flatten())
    frontier = [I]
    profile = [span.dim]
    for _ in range(max_len):
        nxt = []
        for W in frontier:
            for M in mats:
                P = M @ W
                if span.add(P.flatten()):
                    nxt.append(P)
        profile.append(span.dim)
        if span.dim == full:
            return Irreducibility(True, span.dim, tuple(profile))
        if not nxt:
            return Irreducibility(False, span.dim, tuple(profile))
        frontier = nxt
    return Irreducibility(None, span.dim, tuple(profile))


def verify_irreducible(td: TDPairData) -> Irreducibility:
    return word_span([td.A, td.Astar])


def split_decomposition(td: TDPairData) -> SplitDecomposition:
    """U_i = (V*_0 + ... + V*_i) cap (V_0 + ... + V_(d-i)), then K and R.

    Raises :class:`DegenerateParameters` if the U_i fail to be a direct sum
    decomposition compatible with both flags.
    """
    d, n, q, a = td.d, td.dim, td.q, td.a
    V, Vs = td.V_spaces, td.Vstar_spaces
    Us = tuple(intersect(subspace_sum(*Vs[: i + 1]), subspace_sum(*V[: d - i + 1])) for i in range(d + 1))
    if not is_direct_sum(Us) or sum(U.dim for U in Us) != n:
        raise DegenerateParameters(f"split decomposition is not a direct sum: dims {[U.dim for U in Us]}")
    for i in range(d + 1):
        if subspace_sum(*Us[: i + 1]) != subspace_sum(*Vs[: i + 1]):
            raise DegenerateParameters(f"U_0 + ... + U_{i} differs from V*_0 + ... + V*_{i}")
        if subspace_sum(*Us[i:]) != subspace_sum(*V[: d - i + 1]):
            raise DegenerateParameters(f"U_{i} + ... + U_d differs from V_0 + ... + V_{d - i}")
    P = Matrix.from_columns([v for U in Us for v in U.basis])
    Pinv = inverse(P)
    kdiag = [q ** (d - 2 * i) for i, U in enumerate(Us) for _ in range(U.dim)]
    K = P @ Matrix.diag(kdiag) @ Pinv
    Kinv = P @ Matrix.diag([1 / x for x in kdiag]) @ Pinv
    R = td.A - K.scale(a) - Kinv / a
    return SplitDecomposition(Us, K, Kinv, R, P)


def verify_split_decomposition(td: TDPairData, sd: SplitDecomposition) -> VerificationReport:
    rpt = VerificationReport("split")
    d, n, q, a = td.d, td.dim, td.q, td.a
    Us, V, Vs = sd.U_spaces, td.V_spaces, td.Vstar_spaces
    I = Matrix.identity(n)
    Z = Subspace.zero(n)
    rpt.expect("U_i direct sum = V", is_direct_sum(Us) and sum(U.dim for U in Us) == n,
               [U.dim for U in Us], "V = sum U_i (direct)")
    rpt.expect("U_0..U_i = V*_0..V*_i",
               all(subspace_sum(*Us[: i + 1]) == subspace_sum(*Vs[: i + 1]) for i in range(d + 1)),
               None, "U_0 + ... + U_i = V*_0 + ... + V*_i")
    rpt.expect("U_i..U_d = V_0..V_d-i",
               all(subspace_sum(*Us[i:]) == subspace_sum(*V[: d - i + 1]) for i in range(d + 1)),
               None, "U_i + ... + U_d = V_0 + ... + V_(d-i)")
    rpt.expect("K eigenspaces",
               all((sd.K - I.scale(q ** (d - 2 * i))).apply(v) == (0,) * n for i, U in enumerate(Us) for v in U.basis),
               None, "(K - q^(d-2i) I) U_i = 0")
    rpt.expect_equal("K K^-1 = 1", sd.K @ sd.Kinv, I, "K K^-1 = 1")
    def on_U(M, i):
        return Us[i].image(M)
    rpt.expect("aK + a^-1 K^-1 = theta_d-i on U_i",
               all(on_U(sd.K.scale(a) + sd.Kinv / a - I.scale(td.theta[d - i]), i) == Z for i in range(d + 1)),
               None, "a K + a^-1 K^-1 = theta_(d-i) I on U_i")
    rpt.expect_equal("A = aK + a^-1 K^-1 + R", td.A, sd.K.scale(a) + sd.Kinv / a + sd.R, "A = a K + a^-1 K^-1 + R")
    up = lambda i: Us[i + 1] if i < d else Z
    down = lambda i: Us[i - 1] if i > 0 else Z
    rpt.expect("(A - theta_d-i) U_i in U_i+1",
               all(up(i).contains_subspace(on_U(td.A - I.scale(td.theta[d - i]), i)) for i in range(d + 1)),
               None, "(A - theta_(d-i) I) U_i subset U_(i+1)")
    rpt.expect("(A* - theta*_i) U_i in U_i-1",
               all(down(i).contains_subspace(on_U(td.Astar - I.scale(td.theta_star[i]), i)) for i in range(d + 1)),
               None, "(A* - theta*_i I) U_i subset U_(i-1)")
    rpt.expect("R U_i in U_i+1", all(up(i).contains_subspace(on_U(sd.R, i)) for i in range(d + 1)),
               None, "R U_i subset U_(i+1)")
    rpt.expect_zero("R^(d+1) = 0", sd.R ** (d + 1), "R nilpotent")
    return rpt


def verify_K_is_X31(sd: SplitDecomposition, X: EquitableGenerators) -> VerificationReport:
    rpt = VerificationReport("split")
    rpt.expect_equal("K = X31", sd.K, X.X31, "K = X_31")
    rpt.expect_equal("K^-1 = X13", sd.Kinv, X.X13, "K^-1 = X_13")
    return rpt


def verify_R_forms(sd: SplitDecomposition, rep: Representation, X: EquitableGenerators, a) -> VerificationReport:
    """R in equitable form a(X01 - X31) + a^-1(X12 - X13) and Chevalley form (q - q^-1)(a q K0 F0 - a^-1 E1)."""
    a = as_rational(a)
    q = rep.q
    R_eq = (X.X01 - X.X31).scale(a) + (X.X12 - X.X13) / a
    R_ch = ((rep["K0"] @ rep["F0"]).scale(a * q) - rep["E1"] / a).scale(q - 1 / q)
    rpt = VerificationReport("split")
    rpt.expect_equal("R = a(X01 - X31) + a^-1(X12 - X13)", sd.R, R_eq, "R = a(X_01 - X_31) + a^-1(X_12 - X_13)")
    rpt.expect_equal("R = (q - q^-1)(a q K0 F0 - a^-1 E1)", sd.R, R_ch, "R = (q - q^-1)(a q K_0 F_0 - a^-1 E_1)")
    return rpt
