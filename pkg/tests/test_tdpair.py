from fractions import Fraction as F
from itertools import permutations

import pytest

from tdpsi.matrix import Matrix, Subspace
from tdpsi.tdpair import (
    DegenerateParameters,
    build_td_pair,
    eigenvalue_ratios,
    is_standard_ordering,
    qracah_eigenvalues,
    verify_irreducible,
    verify_K_is_X31,
    verify_R_forms,
    verify_split_decomposition,
    verify_tridiagonal_axioms,
    word_span,
)
from tdpsi.uq_module import eval_module_rep

from .conftest import CONFIGS, pipeline_for

q, a, b = F(2), F(3), F(7)


def test_d1_pair(d1):
    td = d1.td
    assert td.A == Matrix([[F(13, 6), F(2, 5)], [0, F(37, 6)]])
    assert td.theta == (F(13, 6), F(37, 6))
    assert td.theta[0] == a / q + q / a


def test_b_only_enters_astar():
    rep = eval_module_rep(2, 5, q)
    t1, t2 = build_td_pair(rep, a, b), build_td_pair(rep, a, F(11, 3))
    assert t1.A == t2.A
    assert t1.Astar != t2.Astar


def test_qracah_formula():
    d = 3
    th = qracah_eigenvalues(a, q, d)
    assert th == [a * q ** (2 * i - d) + q ** (d - 2 * i) / a for i in range(d + 1)]


@pytest.mark.parametrize("d", [3, 4, 5])
def test_eigenvalue_ratio_constant(d):
    for c in (a, b, F(-2, 9)):
        r = eigenvalue_ratios(qracah_eigenvalues(c, q, d))
        assert len(r) == d - 2
        assert all(x == F(21, 4) for x in r)


@pytest.mark.parametrize("name", list(CONFIGS))
def test_axioms_and_split(name):
    pl = pipeline_for(name)
    rpt = verify_tridiagonal_axioms(pl.td)
    assert rpt.passed, [c.name for c in rpt.failures()]
    assert verify_split_decomposition(pl.td, pl.sd).passed
    assert verify_K_is_X31(pl.sd, pl.X).passed
    assert verify_R_forms(pl.sd, pl.rep, pl.X, a).passed


def test_d1_axioms_trivially(d1):
    assert is_standard_ordering(d1.td.Astar, d1.td.V_spaces)
    assert is_standard_ordering(d1.td.Astar, d1.td.V_spaces[::-1])


def test_d2_orderings():
    pl = pipeline_for("V(2,5)")
    V, As = pl.td.V_spaces, pl.td.Astar
    standard = [p for p in permutations(range(3)) if is_standard_ordering(As, [V[i] for i in p])]
    assert sorted(standard) == [(0, 1, 2), (2, 1, 0)]
    assert not is_standard_ordering(As, [V[1], V[0], V[2]])
    rpt = verify_tridiagonal_axioms(pl.td)
    assert rpt["no other V ordering standard"].passed


def test_ratio_checks_reported_for_d3():
    rpt = verify_tridiagonal_axioms(pipeline_for("V(3,5)").td)
    assert rpt["theta ratio constant"].passed and rpt["theta* ratio constant"].passed


def test_irreducible_d1(d1):
    irr = verify_irreducible(d1.td)
    assert irr.status is True and irr.span_dim == 4
    assert len(irr.profile) <= 4


def test_single_generator_is_reducible():
    pl = pipeline_for("V(3,5)")
    irr = word_span([pl.td.A])
    assert irr.status is False
    assert irr.span_dim == 4  # d + 1


def test_span_invariant_under_scaling():
    pl = pipeline_for("V(2,5)")
    r1 = word_span([pl.td.A, pl.td.Astar])
    r2 = word_span([pl.td.A.scale(F(-7, 3)), pl.td.Astar])
    assert r1.span_dim == r2.span_dim == 9


def test_word_span_cap_gives_inconclusive():
    pl = pipeline_for("V(3,5)")
    assert word_span([pl.td.A, pl.td.Astar], max_len=1).status is None


def test_d1_split(d1):
    U0, U1 = d1.sd.U_spaces
    assert U0 == Subspace(2, [(0, 1)])
    assert U1 == Subspace(2, [(1, 0)])
    assert d1.sd.R == Matrix([[0, F(2, 5)], [0, 0]])
    assert d1.sd.R[0, 1] == (q - 1 / q) * (a / 5 - 1 / a)
    assert d1.sd.K == Matrix.diag([F(1, 2), 2]) == d1.X.X31


def test_d1_R_chevalley_form(d1):
    rep = d1.rep
    R = ((rep.K0 @ rep.F0).scale(a * q) - rep.E1 / a).scale(q - 1 / q)
    assert R == Matrix([[0, F(2, 5)], [0, 0]])


@pytest.mark.parametrize("name", list(CONFIGS))
def test_R_nilpotent(name):
    pl = pipeline_for(name)
    assert (pl.sd.R ** (pl.td.d + 1)).is_zero()


def test_R_vanishes_iff_A_is_K_part():
    pl = pipeline_for("V(2,5)")
    K = pl.sd.K
    diag_part = K.scale(a) + pl.sd.Kinv / a
    assert (pl.td.A == diag_part) == pl.sd.R.is_zero()


def test_coinciding_eigenvalues_are_degenerate():
    # a = 1 gives theta_0 = theta_1 for d = 1
    with pytest.raises(DegenerateParameters):
        build_td_pair(eval_module_rep(1, 5, q), 1, b)


def test_reducible_point_detected():
    # a^2 = mu kills R on V(1, mu); the pair then has a common eigenvector
    rep = eval_module_rep(1, 9, q)
    td = build_td_pair(rep, 3, b)
    assert verify_irreducible(td).status is False
    assert not verify_tridiagonal_axioms(td)["irreducible"].passed


def test_split_dims_match_eigenspaces():
    pl = pipeline_for("V(2,5)xV(1,11)")
    dims = [U.dim for U in pl.sd.U_spaces]
    assert sum(dims) == 6
    assert dims == [S.dim for S in pl.td.Vstar_spaces]
