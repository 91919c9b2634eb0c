from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tdpsi.exact_scalar import Factor, ParameterError, qint
from tdpsi.loperator import (
    LOperator,
    SingularL00,
    build_loperator,
    check_L00_invertible,
    coproduct,
    eval_loperator,
    opposite_coproduct,
    tensor_loperator,
    verify_intertwiner,
    verify_loperator_equations,
)
from tdpsi.matrix import Matrix
from tdpsi.uq_module import GENERATORS, build_representation, eval_module_rep

from .conftest import CONFIGS

q = F(2)
T = F(9)


def test_table_entries_d1():
    L = eval_loperator(1, 5, 9, 1, 2)
    assert L.L00[0, 0] == F(11, 15)
    assert L.L00[1, 1] == F(-8, 15)
    assert L.L01[1, 0] == 1
    assert L.L10[0, 1] == F(9, 5)  # [1]_q q^0 mu^-1 t
    assert L.L11[0, 0] == (1 - F(9, 5)) / F(3, 2)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_table_zero_pattern(d):
    L = eval_loperator(d, 5, 9, F(3, 4), 2)
    n = d + 1
    assert L.L00.is_diagonal() and L.L11.is_diagonal()
    assert L.L01.support() <= {(i, i - 1) for i in range(1, n)}
    assert L.L10.support() <= {(i - 1, i) for i in range(1, n)}
    for i in range(1, n):
        assert L.L01[i, i - 1] == qint(i, q) * q ** (1 - i) * F(3, 4)


def test_rejects_zero_parameters():
    for kw in ({"mu": 0}, {"t": 0}, {"xi": 0}):
        args = dict(d=1, mu=5, t=9, xi=1, q=2)
        args.update(kw)
        with pytest.raises(ParameterError):
            eval_loperator(**args)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("xi", [F(1), F(-2, 3)])
def test_evaluation_loperator_both_characterizations(d, xi):
    rep = eval_module_rep(d, 5, q)
    L = eval_loperator(d, 5, T, xi, q)
    eq = verify_loperator_equations(L, rep)
    assert len(eq) == 24
    assert eq.passed
    assert verify_intertwiner(L, rep).passed


@pytest.mark.parametrize("name", [n for n in CONFIGS if "x" in n])
def test_composite_loperator(name):
    facs = [Factor(d, mu) for d, mu in CONFIGS[name]]
    rep = build_representation(facs, q)
    L = build_loperator(facs, T, q)
    assert verify_loperator_equations(L, rep).passed
    assert verify_intertwiner(L, rep).passed


def test_zero_loperator_satisfies_equations():
    rep = eval_module_rep(2, 5, q)
    Z = Matrix.zeros(3)
    L = LOperator(T, Z, Z, Z, Z)
    assert verify_loperator_equations(L, rep).passed
    assert verify_intertwiner(L, rep).passed


def test_perturbed_L10_fails_both():
    rep = eval_module_rep(1, 5, q)
    L = eval_loperator(1, 5, T, 1, q)
    bad = L.replace(L10=L.L10 + Matrix.from_entries(2, 2, {(0, 1): 1}))
    eq = verify_loperator_equations(bad, rep)
    assert eq["L00 E1 - q E1 L00 = L10"].status == "fail"
    assert not verify_intertwiner(bad, rep).passed


@settings(max_examples=40, deadline=None)
@given(
    comp=st.sampled_from(["L00", "L01", "L10", "L11"]),
    i=st.integers(0, 2),
    j=st.integers(0, 2),
    delta=st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool),
)
def test_characterizations_agree_under_perturbation(comp, i, j, delta):
    rep = eval_module_rep(2, 5, q)
    L = eval_loperator(2, 5, T, 1, q)
    bad = L.replace(**{comp: getattr(L, comp) + Matrix.from_entries(3, 3, {(i, j): delta})})
    assert verify_loperator_equations(bad, rep).passed == verify_intertwiner(bad, rep).passed


def test_composite_rule_r0_s0():
    LU = eval_loperator(1, 5, T, 1, q)
    LV = eval_loperator(1, 11, T, 1, q)
    L = tensor_loperator(LU, LV)
    assert L.L00 == LU.L00.kron(LV.L00) + LU.L01.kron(LV.L10)
    assert L.L11 == LU.L10.kron(LV.L01) + LU.L11.kron(LV.L11)


def _swap23(n):
    """Permutation on C^n (x) C^2 (x) C^2 exchanging the last two legs."""
    ent = {}
    for a in range(n):
        for b in range(2):
            for c in range(2):
                ent[(a * 4 + c * 2 + b, a * 4 + b * 2 + c)] = 1
    return Matrix.from_entries(4 * n, 4 * n, ent)


def test_composite_equals_leg_composition():
    # independent oracle: L_{U(x)V} = L_U on legs (1,3) after L_V on legs (2,3)
    LU = eval_loperator(1, 5, T, 1, q)
    LV = eval_loperator(1, 11, T, F(2, 3), q)
    L = tensor_loperator(LU, LV)
    nU, nV = 2, 2
    L_V23 = Matrix.identity(nU).kron(LV.full_matrix())
    P = _swap23(nU)  # U (x) W (x) V  <->  U (x) V (x) W with nV = 2
    L_U13 = P @ LU.full_matrix().kron(Matrix.identity(nV)) @ P
    assert L.full_matrix() == L_U13 @ L_V23
    # the entry spelled out: L01 sends v0 (x) v0 to a multiple of v0 (x) v1 and v1 (x) v0
    col = L.L01.column(0)
    assert col[0] == 0 and col[3] == 0
    assert col[1] == LU.L00[0, 0] * LV.L01[1, 0]
    assert col[2] == LU.L01[1, 0] * LV.L11[0, 0]


def test_spectral_mismatch():
    with pytest.raises(ParameterError):
        tensor_loperator(eval_loperator(1, 5, 9, 1, q), eval_loperator(1, 5, 8, 1, q))


@pytest.mark.parametrize("c", [F(2), F(-5, 3)])
def test_xi_scaling_is_linear(c):
    facs = [Factor(1, 5), Factor(2, 11)]
    base = build_loperator(facs, T, q)
    scaled = build_loperator([Factor(1, 5), Factor(2, 11, c)], T, q)
    for r in (0, 1):
        for s in (0, 1):
            assert scaled.component(r, s) == base.component(r, s).scale(c)
    assert check_L00_invertible(scaled) @ scaled.L01 == check_L00_invertible(base) @ base.L01


def test_weight_relations():
    facs = [Factor(1, 5), Factor(1, 11)]
    rep = build_representation(facs, q)
    L = build_loperator(facs, T, q)
    assert rep.K1 @ L.L01 == (L.L01 @ rep.K1) / (q * q)
    assert rep.K0 @ L.L01 == (L.L01 @ rep.K0).scale(q * q)


def test_k1_intertwining_is_kronecker_commutation():
    rep = eval_module_rep(2, 5, q)
    W = eval_module_rep(1, T, q)
    assert coproduct(rep, W, "K1") == rep.K1.kron(W.K1) == opposite_coproduct(rep, W, "K1")


def test_l00_inverse_d1():
    L = eval_loperator(1, 5, 9, 1, 2)
    assert check_L00_invertible(L) == Matrix.diag([F(15, 11), F(-15, 8)])


@pytest.mark.parametrize("d,i", [(1, 0), (1, 1), (3, 2)])
def test_singular_l00_diagnosis(d, i):
    mu = F(5)
    t = mu * q ** (d + 1 - 2 * i)
    L = eval_loperator(d, mu, t, 1, q)
    with pytest.raises(SingularL00) as exc:
        check_L00_invertible(L)
    assert (0, i) in exc.value.offending
    assert exc.value.rank == d


def test_singular_l00_in_composite():
    facs = [Factor(1, 5), Factor(1, 11)]
    t = F(11) * q**2  # zero at factor 1, index 0
    with pytest.raises(SingularL00) as exc:
        check_L00_invertible(build_loperator(facs, t, q))
    assert exc.value.offending == [(1, 0)]
