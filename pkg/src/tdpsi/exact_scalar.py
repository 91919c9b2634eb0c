"""Exact rational scalars, q-integers and validated parameter sets.

All arithmetic in the package runs over :class:`fractions.Fraction`; floats
are refused at every entry point so that nothing is ever rounded.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


class ParameterError(ValueError):
    """Raised when a parameter set violates one or more invariants.

    ``violations`` holds every problem found, as ``(field, message)`` pairs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{field}: {msg}" for field, msg in self.violations)
        super().__init__(text or "invalid parameters")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: exactness has to survive every I/O boundary.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"decimal notation not accepted for exact input: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def _check_q(q):
    if q == 0:
        raise ParameterError([("q", "q must be nonzero")])
    if q * q == 1:
        raise ParameterError([("q", "q is a root of unity")])


def qint(n: int, q) -> Fraction:
    """The q-integer ``(q^n - q^-n) / (q - q^-1)``.

    >>> qint(3, 2)
    Fraction(21, 4)
    """
    q = as_rational(q)
    _check_q(q)
    return (q ** n - q ** (-n)) / (q - 1 / q)


@dataclass(frozen=True)
class Factor:
    """One evaluation-module tensor factor: diameter, evaluation parameter, L-operator scale."""

    d: int
    mu: Fraction
    xi: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "mu", as_rational(self.mu))
        object.__setattr__(self, "xi", as_rational(self.xi))


@dataclass(frozen=True)
class ParamSet:
    q: Fraction
    a: Fraction
    b: Fraction
    factors: tuple = ()

    def __post_init__(self):
        for name in ("q", "a", "b"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        facs = tuple(f if isinstance(f, Factor) else Factor(*f) for f in self.factors)
        object.__setattr__(self, "factors", facs)

    @property
    def diameter(self) -> int:
        return sum(f.d for f in self.factors)

    @property
    def dim(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.d + 1
        return n

    def with_xis(self, xis) -> "ParamSet":
        facs = tuple(Factor(f.d, f.mu, x) for f, x in zip(self.factors, xis, strict=True))
        return ParamSet(self.q, self.a, self.b, facs)


# Small and generic; they avoid every degeneracy locus hit in practice.
DEFAULT_Q = Fraction(2)
DEFAULT_A = Fraction(3)
DEFAULT_B = Fraction(7)
DEFAULT_MUS = (Fraction(5), Fraction(11), Fraction(13))


def default_params(*diameters) -> ParamSet:
    """Default sample point with one factor per diameter (mu cycles 5, 11, 13)."""
    diameters = diameters or (1,)
    facs = [Factor(d, DEFAULT_MUS[j % len(DEFAULT_MUS)], 1) for j, d in enumerate(diameters)]
    return ParamSet(DEFAULT_Q, DEFAULT_A, DEFAULT_B, tuple(facs))


def param_violations(p: ParamSet) -> list:
    out = []
    if p.q == 0:
        out.append(("q", "q must be nonzero"))
    elif p.q * p.q == 1:
        out.append(("q", "q is a root of unity"))
    if p.a == 0:
        out.append(("a", "a must be nonzero"))
    if p.b == 0:
        out.append(("b", "b must be nonzero"))
    if not p.factors:
        out.append(("factors", "at least one factor is required"))
    for j, f in enumerate(p.factors):
        if not isinstance(f.d, int) or isinstance(f.d, bool) or f.d < 1:
            out.append((f"factors[{j}].d", "diameter must be a positive integer"))
        if f.mu == 0:
            out.append((f"factors[{j}].mu", "evaluation parameter zero"))
        if f.xi == 0:
            out.append((f"factors[{j}].xi", "xi must be nonzero"))
    if p.factors and all(isinstance(f.d, int) for f in p.factors) and p.diameter < 1:
        out.append(("factors", "total diameter must be at least 1"))
    return out


def validate_params(p: ParamSet) -> ParamSet:
    """Return ``p`` unchanged if valid, else raise :class:`ParameterError` listing every violation."""
    problems = param_violations(p)
    if problems:
        raise ParameterError(problems)
    return p
