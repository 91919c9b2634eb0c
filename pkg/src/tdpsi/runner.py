"""Configuration-driven verification runs and random parameter sweeps."""

import json
import random
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from .bockting import NonUniqueSolution, ShapeViolation, psi_from_loperator, solve_psi, verify_proof_identities, verify_psi
from .exact_scalar import Factor, ParameterError, ParamSet, param_violations, validate_params
from .loperator import SingularL00, build_loperator, verify_intertwiner, verify_loperator_equations
from .matrix import NoSolution
from .report import FAIL, PASS, SKIP, VerificationReport
from .tdpair import (
    DegenerateParameters,
    build_td_pair,
    split_decomposition,
    verify_irreducible,
    verify_K_is_X31,
    verify_R_forms,
    verify_split_decomposition,
    verify_tridiagonal_axioms,
)
from .uq_module import build_representation, equitable_generators, verify_defining_relations, verify_equitable_relations

SUITES = ("relations", "equitable", "loperator", "tdpair", "psi", "proof")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_RATIONAL = {"type": "string", "pattern": r"^\s*-?[0-9]+(\s*/\s*[0-9]+)?\s*$"}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "tdpsi run configuration",
    "description": "Rationals are strings 'p' or 'p/q'; floats are not accepted.",
    "type": "object",
    "required": ["q", "a", "b", "factors"],
    "additionalProperties": False,
    "properties": {
        "q": _RATIONAL,
        "a": _RATIONAL,
        "b": _RATIONAL,
        "factors": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["d", "mu"],
                "additionalProperties": False,
                "properties": {
                    "d": {"type": "integer", "minimum": 1},
                    "mu": _RATIONAL,
                    "xi": _RATIONAL,
                },
            },
        },
        "suites": {
            "type": "array",
            "minItems": 1,
            "items": {"enum": list(SUITES) + ["all"]},
        },
        "sweep": {
            "type": "object",
            "required": ["count", "seed"],
            "additionalProperties": False,
            "properties": {
                "count": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
            },
        },
        "output_path": {"type": "string"},
        "max_dim": {"type": "integer", "minimum": 2},
    },
}


class ConfigError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class RunConfig:
    params: ParamSet
    suites: tuple = SUITES
    sweep: tuple = None  # (count, seed)
    output_path: str = None
    max_dim: int = 18

    def echo(self):
        p = self.params
        out = {
            "q": str(p.q), "a": str(p.a), "b": str(p.b),
            "factors": [{"d": f.d, "mu": str(f.mu), "xi": str(f.xi)} for f in p.factors],
            "suites": list(self.suites),
            "max_dim": self.max_dim,
        }
        if self.sweep:
            out["sweep"] = {"count": self.sweep[0], "seed": self.sweep[1]}
        return out


def normalize_suites(suites):
    suites = list(suites)
    if not suites:
        raise ConfigError(["suites: at least one suite is required"])
    bad = [s for s in suites if s not in SUITES and s != "all"]
    if bad:
        raise ConfigError([f"suites: unknown suite(s) {bad}"])
    if "all" in suites:
        return SUITES
    return tuple(s for s in SUITES if s in suites)


def load_config(doc, suites=None, sweep=None) -> RunConfig:
    """Validate a parsed JSON config document; CLI overrides win."""
    if sweep is not None:
        doc = dict(doc, sweep={"count": sweep[0], "seed": sweep[1]})
    if suites is not None:
        doc = dict(doc, suites=list(suites))
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        raise ConfigError([f"{'/'.join(str(p) for p in e.path) or '<root>'}: {e.message}" for e in errors])
    facs = tuple(Factor(f["d"], Fraction(f["mu"]), Fraction(f.get("xi", "1"))) for f in doc["factors"])
    params = ParamSet(Fraction(doc["q"]), Fraction(doc["a"]), Fraction(doc["b"]), facs)
    try:
        validate_params(params)
    except ParameterError as exc:
        raise ConfigError([f"{field}: {msg}" for field, msg in exc.violations]) from None
    max_dim = doc.get("max_dim", 18)
    if params.dim > max_dim:
        raise ConfigError([f"factors: module dimension {params.dim} exceeds max_dim {max_dim}"])
    sw = doc.get("sweep")
    return RunConfig(
        params=params,
        suites=normalize_suites(doc.get("suites", ["all"])),
        sweep=(sw["count"], sw["seed"]) if sw else None,
        output_path=doc.get("output_path"),
        max_dim=max_dim,
    )


def _needed(suites):
    """Constructions required by the requested suites."""
    last = max(SUITES.index(s) for s in suites)
    return set(SUITES[: last + 1])


def run_suites(params: ParamSet, suites=SUITES, config_echo=None) -> VerificationReport:
    """Build everything the requested suites need and run their checks.

    Prerequisite constructions always run; only the requested suites'
    checks are recorded.  A degenerate parameter point becomes a single
    ``skip`` record carrying the diagnosis.
    """
    suites = normalize_suites(suites)
    need = _needed(suites)
    rpt = VerificationReport("", config_echo or {})
    p = params
    t = p.a * p.a

    def add(suite, sub):
        if suite in suites:
            for c in sub.checks:
                c.suite = suite
            rpt.extend(sub, prefix=f"{suite}/")

    rep = build_representation(p.factors, p.q)
    add("relations", verify_defining_relations(rep))
    X = equitable_generators(rep)
    add("equitable", verify_equitable_relations(X, p.q))
    L = build_loperator(p.factors, t, p.q) if need & {"loperator", "psi", "proof"} else None
    if "loperator" in suites:
        eq, inter = verify_loperator_equations(L, rep), verify_intertwiner(L, rep)
        add("loperator", eq)
        add("loperator", inter)
        chk = VerificationReport("loperator")
        chk.expect("component identities hold iff intertwining holds", eq.passed == inter.passed,
                   {"equations": eq.passed, "intertwiner": inter.passed}, "L-operator characterizations agree")
        add("loperator", chk)
    if not need & {"tdpair", "psi", "proof"}:
        return rpt

    stage = "tdpair"
    try:
        td = build_td_pair(rep, p.a, p.b, X)
        irr = verify_irreducible(td)
        if not irr.status:
            raise DegenerateParameters(f"A, A* act reducibly (algebra span profile {list(irr.profile)})")
        sd = split_decomposition(td)
        if "tdpair" in suites:
            add("tdpair", verify_tridiagonal_axioms(td))
            add("tdpair", verify_split_decomposition(td, sd))
            add("tdpair", verify_K_is_X31(sd, X))
            add("tdpair", verify_R_forms(sd, rep, X, p.a))
        if not need & {"psi", "proof"}:
            return rpt
        stage = "psi"
        ps = solve_psi(sd, p.q)
        ph = psi_from_loperator(L, p.a, sd)
        add("psi", verify_psi(ps, ph, sd, p.q))
        if "proof" in suites:
            add("proof", verify_proof_identities(L, rep, sd, p.a))
    except (DegenerateParameters, SingularL00) as exc:
        rpt.skip(f"{stage}/degenerate parameters", f"{type(exc).__name__}: {exc}")
        rpt.checks[-1].suite = stage
    except (NoSolution, NonUniqueSolution, ShapeViolation) as exc:
        witness = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, NonUniqueSolution):
            witness["kernel"] = [[str(x) for x in v] for v in exc.kernel.basis]
        rpt._record(f"{stage}/construction", FAIL, "psi exists and is unique", witness, stage)
    return rpt


def exit_code_for(report: VerificationReport) -> int:
    status = report.status
    if status == PASS:
        return EXIT_OK
    if status == FAIL:
        return EXIT_FAIL
    # skip: degenerate parameter point; inconclusive: treated the same way
    return EXIT_CONFIG


def run(config: RunConfig):
    """Run one configuration; returns ``(report, exit_code)``."""
    try:
        report = run_suites(config.params, config.suites, config.echo())
    except ParameterError as exc:
        report = VerificationReport("", config.echo())
        report.skip("parameters", [f"{f}: {m}" for f, m in exc.violations])
        return report, EXIT_CONFIG
    return report, exit_code_for(report)


SAMPLE_BOUND = 17

SWEEP_DISTRIBUTION = (
    f"q, a, b and every mu, xi drawn independently as n/m with n uniform in "
    f"[-{SAMPLE_BOUND}, {SAMPLE_BOUND}] \\ {{0}} and m uniform in [1, {SAMPLE_BOUND}]; "
    f"factor diameters kept from the config; draws violating a parameter invariant are redrawn"
)


def _small_rational(rng):
    n = 0
    while n == 0:
        n = rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND)
    return Fraction(n, rng.randint(1, SAMPLE_BOUND))


def sample_params(rng, diameters) -> ParamSet:
    while True:
        q, a, b = (_small_rational(rng) for _ in range(3))
        facs = tuple(Factor(d, _small_rational(rng), _small_rational(rng)) for d in diameters)
        p = ParamSet(q, a, b, facs)
        if not param_violations(p):
            return p


def _params_echo(p):
    return {"q": str(p.q), "a": str(p.a), "b": str(p.b),
            "factors": [{"d": f.d, "mu": str(f.mu), "xi": str(f.xi)} for f in p.factors]}


def sweep(config: RunConfig):
    """Run the suites on ``count`` random parameter points; returns ``(aggregate, exit_code)``.

    The aggregate carries no timing, so equal seeds give byte-identical JSON.
    """
    if not config.sweep:
        raise ConfigError(["sweep: count and seed are required"])
    count, seed = config.sweep
    if count < 1:
        raise ConfigError(["sweep: count must be at least 1"])
    rng = random.Random(seed)
    diameters = [f.d for f in config.params.factors]
    samples = []
    counts = {"pass": 0, "fail": 0, "degenerate": 0}
    for k in range(count):
        p = sample_params(rng, diameters)
        rpt = run_suites(p, config.suites)
        status = rpt.status
        entry = {"index": k, "params": _params_echo(p)}
        if status == PASS:
            entry["status"] = "pass"
        elif status == FAIL:
            entry["status"] = "fail"
            entry["failed_checks"] = [c.name for c in rpt.failures()]
        else:
            entry["status"] = "degenerate"
            entry["diagnosis"] = [str(c.witness) for c in rpt.checks if c.status != PASS]
        entry["checks"] = len(rpt)
        counts[entry["status"]] += 1
        samples.append(entry)
    agg = {
        "config": config.echo(),
        "distribution": SWEEP_DISTRIBUTION,
        "samples": samples,
        "summary": counts,
        "status": "fail" if counts["fail"] else "pass",
    }
    return agg, EXIT_FAIL if counts["fail"] else EXIT_OK


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
