"""Exact verification of the Bockting operator of a q-Racah tridiagonal pair.

Everything is computed over the rationals with no rounding:

- ``exact_scalar``: q-integers, parameter sets
- ``matrix``: dense exact matrices, kernels, subspaces
- ``uq_module``: evaluation modules and tensor products for U_q(L(sl2))
- ``loperator``: L-operators and their two characterizations
- ``tdpair``: the tridiagonal pair, its split decomposition, K and R
- ``bockting``: psi from its defining constraints and from an L-operator
- ``runner`` / ``cli``: JSON-configured verification runs and sweeps
"""

from .bockting import PsiOperator, psi_from_loperator, solve_psi, verify_proof_identities, verify_theorem
from .exact_scalar import Factor, ParamSet, default_params, qint, validate_params
from .loperator import LOperator, build_loperator, eval_loperator, tensor_loperator
from .matrix import Matrix, Subspace
from .report import VerificationReport
from .tdpair import build_td_pair, split_decomposition
from .uq_module import Representation, build_representation, equitable_generators, eval_module_rep, tensor_rep

__version__ = "0.1.0"
