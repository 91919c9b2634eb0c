"""The Bockting operator psi, by two independent routes.

``solve_psi`` finds psi from its defining constraints: psi lowers the split
grading (psi U_i in U_(i-1)) and psi R - R psi = (q - q^-1)(K - K^-1).
``psi_from_loperator`` instead reads it off an L-operator with parameter
a^2 as -a L00^-1 L01.  ``verify_theorem`` compares the two.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exact_scalar import as_rational
from .loperator import LOperator, check_L00_invertible
from .matrix import Matrix, NoSolution, Subspace, inverse, solve_affine
from .report import VerificationReport
from .tdpair import SplitDecomposition
from .uq_module import Representation, equitable_generators


class NonUniqueSolution(ArithmeticError):
    def __init__(self, kernel):
        self.kernel = kernel
        super().__init__(f"psi constraints leave a {kernel.dim}-dimensional solution space")


class WrongParameter(ValueError):
    pass


class ShapeViolation(ArithmeticError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"psi does not map U_{index} into U_{index - 1}")


@dataclass(frozen=True, eq=False)
class PsiOperator:
    psi: Matrix
    # (i, dim U_i, dim psi(U_i)) for each i
    block_profile: tuple
    kernel_dim: int = 0

    def adapted(self, sd: SplitDecomposition) -> Matrix:
        """psi written in the U-adapted basis of ``sd``."""
        P = sd.adapted_basis
        return inverse(P) @ self.psi @ P


def _block_profile(psi, sd):
    return tuple((i, U.dim, U.image(psi).dim) for i, U in enumerate(sd.U_spaces))


def lowers_split_grading(psi: Matrix, sd: SplitDecomposition):
    """Index of the first U_i with psi U_i not inside U_(i-1), or None."""
    n = psi.rows
    for i, U in enumerate(sd.U_spaces):
        target = sd.U_spaces[i - 1] if i > 0 else Subspace.zero(n)
        if not target.contains_subspace(U.image(psi)):
            return i
    return None


def solve_psi(sd: SplitDecomposition, q) -> PsiOperator:
    """Solve the affine system for psi with unknowns only on the U_i -> U_(i-1) blocks.

    Raises NoSolution if inconsistent, NonUniqueSolution if the homogeneous
    system has a nonzero solution.
    """
    q = as_rational(q)
    P = sd.adapted_basis
    Pinv = inverse(P)
    n = P.rows
    Ra = Pinv @ sd.R @ P
    rhs = (Pinv @ (sd.K - sd.Kinv) @ P).scale(q - 1 / q)
    blocks = sd.blocks()
    # unknown psi'[r, c] for c in block i, r in block i-1
    unknowns = [(r, c) for i in range(1, len(blocks)) for c in blocks[i] for r in blocks[i - 1]]
    index = {rc: k for k, rc in enumerate(unknowns)}
    m = len(unknowns)
    # (psi' R' - R' psi')[r, c] = sum_k psi'[r,k] R'[k,c] - sum_k R'[r,k] psi'[k,c]
    rows = []
    b = []
    for r in range(n):
        for c in range(n):
            row = [Fraction(0)] * m
            for k in range(n):
                x = Ra[k, c]
                if x and (r, k) in index:
                    row[index[(r, k)]] += x
                y = Ra[r, k]
                if y and (k, c) in index:
                    row[index[(k, c)]] -= y
            rows.append(row)
            b.append(rhs[r, c])
    if m == 0:
        raise NoSolution("split decomposition has a single block; psi has no unknowns")
    sol, hom = solve_affine(Matrix._raw(tuple(tuple(r) for r in rows)), b)
    if hom.dim:
        raise NonUniqueSolution(hom)
    ent = {rc: sol[k] for rc, k in index.items() if sol[k]}
    psi_a = Matrix.from_entries(n, n, ent)
    psi = P @ psi_a @ Pinv
    return PsiOperator(psi, _block_profile(psi, sd), hom.dim)


def psi_from_loperator(L: LOperator, a, sd: SplitDecomposition) -> PsiOperator:
    """psi-hat = -a L00^-1 L01 for an L-operator with parameter a^2."""
    a = as_rational(a)
    if L.t != a * a:
        raise WrongParameter(f"L-operator parameter {L.t} is not a^2 = {a * a}")
    L00inv = check_L00_invertible(L)
    psi = (L00inv @ L.L01).scale(-a)
    bad = lowers_split_grading(psi, sd)
    if bad is not None:
        raise ShapeViolation(bad)
    return PsiOperator(psi, _block_profile(psi, sd))


def commutator_residual(psi: Matrix, sd: SplitDecomposition, q) -> Matrix:
    """psi R - R psi - (q - q^-1)(K - K^-1); zero for the Bockting operator."""
    q = as_rational(q)
    return psi @ sd.R - sd.R @ psi - (sd.K - sd.Kinv).scale(q - 1 / q)


def verify_theorem(psi_solved: PsiOperator, psi_hat: PsiOperator) -> VerificationReport:
    rpt = VerificationReport("psi")
    rpt.expect_equal("psi = -a L00^-1 L01", psi_solved.psi, psi_hat.psi, "psi = -a L00^-1 L01")
    return rpt


def verify_psi(psi_solved: PsiOperator, psi_hat: PsiOperator, sd: SplitDecomposition, q) -> VerificationReport:
    """The theorem check plus the defining properties of each route separately."""
    d = sd.d
    rpt = VerificationReport("psi")
    rpt.expect("psi unique", psi_solved.kernel_dim == 0, psi_solved.kernel_dim, "there exists a unique psi")
    for tag, p in (("solved", psi_solved), ("L-operator", psi_hat)):
        rpt.expect(f"{tag}: psi U_i in U_i-1", lowers_split_grading(p.psi, sd) is None, None, "psi U_i subset U_(i-1)")
        rpt.expect_zero(f"{tag}: psi R - R psi = (q - q^-1)(K - K^-1)", commutator_residual(p.psi, sd, q),
                        "psi R - R psi = (q - q^-1)(K - K^-1)")
        rpt.expect_zero(f"{tag}: psi^(d+1) = 0", p.psi ** (d + 1), "psi nilpotent")
    rpt.extend(verify_theorem(psi_solved, psi_hat))
    return rpt


def verify_proof_identities(L: LOperator, rep: Representation, sd: SplitDecomposition, a) -> VerificationReport:
    """Every intermediate equality in the argument that -a L00^-1 L01 is psi."""
    a = as_rational(a)
    q = rep.q
    qq = q - 1 / q
    g = rep.chevalley
    E1, F0, K0, K1 = g["E1"], g["F0"], g["K0"], g["K1"]
    L00, L01, L10, L11 = L.L00, L.L01, L.L10, L.L11
    ph = (inverse(L00) @ L01).scale(-a)
    X = equitable_generators(rep)
    rpt = VerificationReport("proof")

    rpt.expect_equal("K0 psi^ = q^2 psi^ K0", K0 @ ph, (ph @ K0).scale(q * q), "K_0 psi^ = q^2 psi^ K_0")
    rpt.expect_equal("K0 = X31 = K", K0, X.X31, "K_0 = X_31")
    rpt.expect_equal("X31 = K", X.X31, sd.K, "X_31 = K")
    rpt.expect_equal("K psi^ = q^2 psi^ K", sd.K @ ph, (ph @ sd.K).scale(q * q), "K psi^ = q^2 psi^ K")
    rpt.expect_equal("K0 K1 = 1", K0 @ K1, rep.identity(), "K_0 K_1 = 1")

    rpt.expect_equal("L00 (psi^ R - R psi^) = (q - q^-1) L00 (K0 - K1)",
                     L00 @ (ph @ sd.R - sd.R @ ph), (L00 @ (K0 - K1)).scale(qq),
                     "L00 (psi^ R - R psi^) = (q - q^-1) L00 (K0 - K1)")
    K0F0 = K0 @ F0
    want = ((L00 @ (ph @ K0F0 - K0F0 @ ph)).scale(a * q)
            - (L00 @ (ph @ E1 - E1 @ ph)) / a
            + L00 @ (K1 - K0))
    rpt.expect_zero("a q L00 (psi^ K0F0 - K0F0 psi^) - a^-1 L00 (psi^ E1 - E1 psi^) + L00 (K1 - K0) = 0", want,
                    "a q L00 (psi^ K0 F0 - K0 F0 psi^) - a^-1 L00 (psi^ E1 - E1 psi^) + L00 (K1 - K0) = 0")

    a2 = 1 / (a * a)
    qi = 1 / q
    chains = {
        "L00 psi^ K0 F0": [
            L00 @ ph @ K0F0,
            (L01 @ K0F0).scale(-a),
            (K0 @ L01 @ F0).scale(-a * qi * qi),
            (K0 @ (F0 @ L01 - L00.scale(a2) + (K1 @ L11).scale(a2))).scale(-a * qi),
        ],
        "L00 K0 F0 psi^": [
            L00 @ K0F0 @ ph,
            K0 @ L00 @ F0 @ ph,
            (K0 @ ((K1 @ L10).scale(a2) + F0 @ L00) @ ph).scale(qi),
            (K0 @ ((K1 @ L10 @ ph).scale(a2) - (F0 @ L01).scale(a))).scale(qi),
        ],
        "L00 psi^ E1": [
            L00 @ ph @ E1,
            (L01 @ E1).scale(-a),
            ((E1 @ L01).scale(q) + L11 - L00 @ K1).scale(-a),
            ((E1 @ L01).scale(q) + L11 - K1 @ L00).scale(-a),
        ],
        "L00 E1 psi^": [
            L00 @ E1 @ ph,
            (L10 + (E1 @ L00).scale(q)) @ ph,
            L10 @ ph - (E1 @ L01).scale(q * a),
        ],
    }
    for label, steps in chains.items():
        for k in range(1, len(steps)):
            rpt.expect_equal(f"{label}: step {k}", steps[k - 1], steps[k], f"{label} chain, equality {k}")
    rpt.expect_equal("L00 K1 = K1 L00", L00 @ K1, K1 @ L00, "L00 K1 = K1 L00")
    rpt.expect_equal("L00 K0 = K0 L00", L00 @ K0, K0 @ L00, "L00 K0 = K0 L00")

    # the four chain endpoints substituted back must cancel
    ends = {k: v[-1] for k, v in chains.items()}
    substituted = ((ends["L00 psi^ K0 F0"] - ends["L00 K0 F0 psi^"]).scale(a * q)
                   - (ends["L00 psi^ E1"] - ends["L00 E1 psi^"]) / a
                   + L00 @ (K1 - K0))
    rpt.expect_zero("substituted left side vanishes", substituted, "left side after substitution = 0")
    return rpt
