from dataclasses import dataclass
from fractions import Fraction as F

import pytest

from tdpsi.exact_scalar import Factor, ParamSet
from tdpsi.loperator import build_loperator
from tdpsi.tdpair import build_td_pair, split_decomposition
from tdpsi.uq_module import build_representation, equitable_generators

Q, A, B = F(2), F(3), F(7)

# every configuration in the acceptance matrix, at q=2
CONFIGS = {
    "V(1,5)": [(1, 5)],
    "V(2,5)": [(2, 5)],
    "V(3,5)": [(3, 5)],
    "V(4,5)": [(4, 5)],
    "V(1,5)xV(1,11)": [(1, 5), (1, 11)],
    "V(2,5)xV(1,11)": [(2, 5), (1, 11)],
    "V(1,5)xV(1,11)xV(1,13)": [(1, 5), (1, 11), (1, 13)],
}


def params_for(factors, q=Q, a=A, b=B, xis=None):
    xis = xis or [1] * len(factors)
    return ParamSet(q, a, b, tuple(Factor(d, mu, xi) for (d, mu), xi in zip(factors, xis)))


@dataclass
class Pipeline:
    params: ParamSet
    rep: object
    X: object
    td: object
    sd: object
    L: object


def build_pipeline(p: ParamSet) -> Pipeline:
    rep = build_representation(p.factors, p.q)
    X = equitable_generators(rep)
    td = build_td_pair(rep, p.a, p.b, X)
    sd = split_decomposition(td)
    L = build_loperator(p.factors, p.a * p.a, p.q)
    return Pipeline(p, rep, X, td, sd, L)


_cache = {}


def pipeline_for(name):
    if name not in _cache:
        _cache[name] = build_pipeline(params_for(CONFIGS[name]))
    return _cache[name]


@pytest.fixture
def d1():
    return pipeline_for("V(1,5)")


@pytest.fixture
def tensor4():
    return pipeline_for("V(1,5)xV(1,11)")


@pytest.fixture(params=list(CONFIGS))
def config_name(request):
    return request.param


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
