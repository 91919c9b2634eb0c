"""Finite-dimensional modules for the quantum loop algebra of sl2.

Evaluation modules V(d, mu), their tensor products (first factor slowest in
the basis order), the equitable generators, and exact checks of both
presentations' defining relations.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact_scalar import ParameterError, as_rational, qint
from .matrix import Matrix
from .report import VerificationReport

GENERATORS = ("E0", "E1", "F0", "F1", "K0", "K0inv", "K1", "K1inv")
EQUITABLE = ("X01", "X12", "X23", "X30", "X13", "X31")


class ConsistencyError(RuntimeError):
    """An internal construction failed its own round-trip check."""


@dataclass(frozen=True, eq=False)
class Representation:
    q: Fraction
    chevalley: dict
    factor_spec: tuple
    basis_labels: tuple

    @property
    def dim(self):
        return len(self.basis_labels)

    @property
    def diameter(self):
        return sum(d for d, _ in self.factor_spec)

    def __getitem__(self, name):
        return self.chevalley[name]

    def __getattr__(self, name):
        if name in GENERATORS:
            return self.chevalley[name]
        raise AttributeError(name)

    def replace(self, **mats):
        """Copy with some generator matrices swapped out (used for negative controls)."""
        ch = dict(self.chevalley)
        ch.update(mats)
        return Representation(self.q, ch, self.factor_spec, self.basis_labels)

    def identity(self):
        return Matrix.identity(self.dim)


def _require_q(q):
    q = as_rational(q)
    if q == 0 or q * q == 1:
        raise ParameterError([("q", "q is a root of unity" if q else "q must be nonzero")])
    return q


def eval_module_rep(d: int, mu, q) -> Representation:
    """The evaluation module V(d, mu) in its basis v_0..v_d."""
    q = _require_q(q)
    t = as_rational(mu)
    if t == 0:
        raise ParameterError([("mu", "evaluation parameter zero")])
    if not isinstance(d, int) or d < 1:
        raise ParameterError([("d", "diameter must be a positive integer")])
    if any(q ** (2 * i) == 1 for i in range(1, d + 1)):
        raise ParameterError([("q", f"V({d}, mu) is reducible: q^2i = 1 for some i <= d")])
    n = d + 1
    E1, F1, E0, F0 = {}, {}, {}, {}
    for i in range(n):
        if i >= 1:
            E1[(i - 1, i)] = qint(d - i + 1, q)
            F0[(i - 1, i)] = qint(d - i + 1, q) / t
        if i < d:
            F1[(i + 1, i)] = qint(i + 1, q)
            E0[(i + 1, i)] = t * qint(i + 1, q)
    K1 = [q ** (d - 2 * i) for i in range(n)]
    ch = {
        "E1": Matrix.from_entries(n, n, E1),
        "F1": Matrix.from_entries(n, n, F1),
        "E0": Matrix.from_entries(n, n, E0),
        "F0": Matrix.from_entries(n, n, F0),
        "K1": Matrix.diag(K1),
        "K1inv": Matrix.diag([1 / x for x in K1]),
        "K0": Matrix.diag([1 / x for x in K1]),
        "K0inv": Matrix.diag(K1),
    }
    return Representation(q, ch, ((d, t),), tuple((i,) for i in range(n)))


def tensor_rep(U: Representation, V: Representation) -> Representation:
    """U (x) V via the coproduct: K's act diagonally, E_i = E_i(x)1 + K_i(x)E_i, F_i = 1(x)F_i + F_i(x)K_i^-1."""
    if U.q != V.q:
        raise ParameterError([("q", f"q mismatch: {U.q} vs {V.q}")])
    IU, IV = U.identity(), V.identity()
    ch = {}
    for k in ("K0", "K0inv", "K1", "K1inv"):
        ch[k] = U[k].kron(V[k])
    for i in "01":
        ch["E" + i] = U["E" + i].kron(IV) + U["K" + i].kron(V["E" + i])
        ch["F" + i] = IU.kron(V["F" + i]) + U["F" + i].kron(V["K" + i + "inv"])
    labels = tuple(a + b for a, b in product(U.basis_labels, V.basis_labels))
    return Representation(U.q, ch, U.factor_spec + V.factor_spec, labels)


def tensor_product(*reps) -> Representation:
    """Left-associated tensor product ((V1 (x) V2) (x) V3) ..."""
    out = reps[0]
    for r in reps[1:]:
        out = tensor_rep(out, r)
    return out


def build_representation(factors, q) -> Representation:
    """Tensor product of evaluation modules from ``(d, mu[, ...])`` tuples or Factor objects."""
    reps = []
    for f in factors:
        d, mu = (f.d, f.mu) if hasattr(f, "d") else (f[0], f[1])
        reps.append(eval_module_rep(d, mu, q))
    return tensor_product(*reps)


def _serre(X, Y, q3):
    X2 = X @ X
    X3 = X2 @ X
    return X3 @ Y - (X2 @ Y @ X).scale(q3) + (X @ Y @ X2).scale(q3) - Y @ X3


def verify_defining_relations(rep: Representation) -> VerificationReport:
    """Check every Chevalley relation exactly, one record per relation instance."""
    q = rep.q
    rpt = VerificationReport("relations")
    I = rep.identity()
    g = rep.chevalley
    qq = q - 1 / q
    q3 = qint(3, q)
    for i in "01":
        K, Ki = g["K" + i], g["K" + i + "inv"]
        rpt.expect_equal(f"K{i} K{i}^-1 = 1", K @ Ki, I, "K_i K_i^{-1} = 1")
        rpt.expect_equal(f"K{i}^-1 K{i} = 1", Ki @ K, I, "K_i^{-1} K_i = 1")
    rpt.expect_equal("K0 K1 = 1", g["K0"] @ g["K1"], I, "K_0 K_1 = 1")
    rpt.expect_equal("K1 K0 = 1", g["K1"] @ g["K0"], I, "K_1 K_0 = 1")
    for i in "01":
        K = g["K" + i]
        for j in "01":
            E, F = g["E" + j], g["F" + j]
            if i == j:
                rpt.expect_equal(f"K{i} E{j} = q^2 E{j} K{i}", K @ E, (E @ K).scale(q * q), "K_i E_i = q^2 E_i K_i")
                rpt.expect_equal(f"K{i} F{j} = q^-2 F{j} K{i}", K @ F, (F @ K) / (q * q), "K_i F_i = q^{-2} F_i K_i")
            else:
                rpt.expect_equal(f"K{i} E{j} = q^-2 E{j} K{i}", K @ E, (E @ K) / (q * q), "K_i E_j = q^{-2} E_j K_i")
                rpt.expect_equal(f"K{i} F{j} = q^2 F{j} K{i}", K @ F, (F @ K).scale(q * q), "K_i F_j = q^2 F_j K_i")
    for i in "01":
        for j in "01":
            lhs = g["E" + i] @ g["F" + j] - g["F" + j] @ g["E" + i]
            if i == j:
                rhs = (g["K" + i] - g["K" + i + "inv"]) / qq
            else:
                rhs = Matrix.zeros(rep.dim)
            rpt.expect_equal(f"E{i} F{j} - F{j} E{i}", lhs, rhs, "E_i F_j - F_j E_i = delta_ij (K_i - K_i^{-1})/(q - q^{-1})")
    for i, j in (("0", "1"), ("1", "0")):
        rpt.expect_zero(f"Serre E{i}^3 E{j}", _serre(g["E" + i], g["E" + j], q3), "E_i^3 E_j - [3] E_i^2 E_j E_i + [3] E_i E_j E_i^2 - E_j E_i^3 = 0")
        rpt.expect_zero(f"Serre F{i}^3 F{j}", _serre(g["F" + i], g["F" + j], q3), "F_i^3 F_j - [3] F_i^2 F_j F_i + [3] F_i F_j F_i^2 - F_j F_i^3 = 0")
    return rpt


@dataclass(frozen=True, eq=False)
class EquitableGenerators:
    X01: Matrix
    X12: Matrix
    X23: Matrix
    X30: Matrix
    X13: Matrix
    X31: Matrix

    def __getitem__(self, name):
        return getattr(self, name)

    def as_dict(self):
        return {k: getattr(self, k) for k in EQUITABLE}


def chevalley_from_equitable(X: EquitableGenerators, q) -> dict:
    """Inverse substitution: recover E_i, F_i, K_i^{+-1} from the equitable generators."""
    q = as_rational(q)
    qq = q - 1 / q
    I = Matrix.identity(X.X13.rows)
    return {
        "E1": (X.X13 - X.X12) / qq,
        "E0": (X.X31 - X.X30) / qq,
        "F1": (X.X31 @ X.X23 - I) / (q * qq),
        "F0": (X.X13 @ X.X01 - I) / (q * qq),
        "K1": X.X13,
        "K0": X.X31,
        "K1inv": X.X31,
        "K0inv": X.X13,
    }


def equitable_generators(rep: Representation) -> EquitableGenerators:
    q = rep.q
    qq = q - 1 / q
    g = rep.chevalley
    X = EquitableGenerators(
        X01=g["K0"] + (g["K0"] @ g["F0"]).scale(q * qq),
        X12=g["K1"] - g["E1"].scale(qq),
        X23=g["K1"] + (g["K1"] @ g["F1"]).scale(q * qq),
        X30=g["K0"] - g["E0"].scale(qq),
        X13=g["K1"],
        X31=g["K0"],
    )
    back = chevalley_from_equitable(X, q)
    for name, M in back.items():
        if M != g[name]:
            raise ConsistencyError(f"equitable round trip does not reproduce {name}")
    return X


def verify_equitable_relations(X: EquitableGenerators, q) -> VerificationReport:
    q = as_rational(q)
    qq = q - 1 / q
    q3 = qint(3, q)
    I = Matrix.identity(X.X13.rows)
    rpt = VerificationReport("equitable")
    rpt.expect_equal("X13 X31 = 1", X.X13 @ X.X31, I, "X_13 X_31 = 1")
    rpt.expect_equal("X31 X13 = 1", X.X31 @ X.X13, I, "X_31 X_13 = 1")
    pairs = [("X01", "X12"), ("X12", "X23"), ("X23", "X30"), ("X30", "X01"),
             ("X01", "X13"), ("X31", "X12"), ("X23", "X31"), ("X13", "X30")]
    for a, b in pairs:
        A, B = X[a], X[b]
        lhs = ((A @ B).scale(q) - (B @ A) / q) / qq
        rpt.expect_equal(f"q-Weyl {a} {b}", lhs, I, f"(q {a} {b} - q^-1 {b} {a})/(q - q^-1) = 1")
    cyc = ["X01", "X12", "X23", "X30"]
    for i in range(4):
        a, b = cyc[i], cyc[(i + 2) % 4]
        rpt.expect_zero(f"Serre {a}^3 {b}", _serre(X[a], X[b], q3), "X_{i,i+1}^3 X_{i+2,i+3} - [3] ... = 0")
    return rpt

