"""Structured pass/fail records for identity checks."""

import hashlib
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .matrix import Matrix

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
SKIP = "skip"

WITNESS_LIMIT = 12


@dataclass
class Check:
    name: str
    status: str
    anchor: str = ""
    witness: object = None
    elapsed: float = 0.0
    suite: str = ""

    @property
    def passed(self):
        return self.status == PASS


def witness_to_json(w):
    """JSON-safe form of a witness; matrices above 12x12 are truncated and hashed."""
    if w is None:
        return None
    if isinstance(w, Matrix):
        rows = [[str(x) for x in r] for r in w]
        out = {"shape": [w.rows, w.cols]}
        if w.rows > WITNESS_LIMIT or w.cols > WITNESS_LIMIT:
            blob = ";".join(",".join(r) for r in rows).encode()
            out["sha256"] = hashlib.sha256(blob).hexdigest()
            out["entries"] = [r[:WITNESS_LIMIT] for r in rows[:WITNESS_LIMIT]]
            out["truncated"] = True
        else:
            out["entries"] = rows
        return out
    if isinstance(w, Fraction):
        return str(w)
    if isinstance(w, (list, tuple)):
        return [witness_to_json(x) for x in w]
    if isinstance(w, dict):
        return {str(k): witness_to_json(v) for k, v in w.items()}
    if isinstance(w, (int, str, bool, float)):
        return w
    return repr(w)


class VerificationReport:
    """Ordered collection of named checks.

    Each check name may appear only once.  ``passed`` is true iff every
    check passed (an empty report counts as passing).
    """

    def __init__(self, suite="", config=None):
        self.suite = suite
        self.config = config or {}
        self.checks = []
        self._names = set()
        self._mark = time.perf_counter()

    def _record(self, name, status, anchor="", witness=None, suite=None):
        if name in self._names:
            raise ValueError(f"duplicate check name {name!r}")
        now = time.perf_counter()
        chk = Check(name, status, anchor, witness, now - self._mark, suite or self.suite)
        self._mark = now
        self._names.add(name)
        self.checks.append(chk)
        return chk

    def expect(self, name, ok, witness=None, anchor=""):
        """Record a boolean check; ``witness`` is kept only on failure."""
        return self._record(name, PASS if ok else FAIL, anchor, None if ok else witness)

    def expect_equal(self, name, lhs, rhs, anchor=""):
        """Record an exact equality; on failure the residual ``lhs - rhs`` is the witness."""
        if isinstance(lhs, Matrix) and isinstance(rhs, Matrix):
            if lhs.shape != rhs.shape:
                return self._record(name, FAIL, anchor, {"lhs_shape": lhs.shape, "rhs_shape": rhs.shape})
            res = lhs - rhs
            return self._record(name, PASS if res.is_zero() else FAIL, anchor, None if res.is_zero() else res)
        ok = lhs == rhs
        return self._record(name, PASS if ok else FAIL, anchor, None if ok else {"lhs": lhs, "rhs": rhs})

    def expect_zero(self, name, M, anchor=""):
        ok = M.is_zero()
        return self._record(name, PASS if ok else FAIL, anchor, None if ok else M)

    def inconclusive(self, name, witness=None, anchor=""):
        return self._record(name, INCONCLUSIVE, anchor, witness)

    def skip(self, name, reason, anchor=""):
        return self._record(name, SKIP, anchor, reason)

    def extend(self, other, prefix=""):
        for c in other.checks:
            name = prefix + c.name
            if name in self._names:
                raise ValueError(f"duplicate check name {name!r}")
            self._names.add(name)
            self.checks.append(Check(name, c.status, c.anchor, c.witness, c.elapsed, c.suite))
        return self

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self):
        return all(c.status == PASS for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def summary(self):
        counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0, SKIP: 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def status(self):
        s = self.summary()
        if s[FAIL]:
            return FAIL
        if s[SKIP] or s[INCONCLUSIVE]:
            return SKIP if s[SKIP] else INCONCLUSIVE
        return PASS

    def to_dict(self, timing=True):
        checks = []
        for c in self.checks:
            d = {"name": c.name, "suite": c.suite, "anchor": c.anchor, "status": c.status,
                 "witness": witness_to_json(c.witness)}
            if timing:
                d["elapsed"] = round(c.elapsed, 6)
            checks.append(d)
        return {"config": self.config, "checks": checks, "summary": self.summary(), "status": self.status}

    def text_summary(self):
        lines = [f"[{c.status.upper():>4}] {c.suite + ': ' if c.suite else ''}{c.name}" for c in self.checks]
        s = self.summary()
        lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[INCONCLUSIVE]} inconclusive, {s[SKIP]} skipped")
        return "\n".join(lines)

    def __repr__(self):
        s = self.summary()
        return f"<VerificationReport {self.suite!r} {s}>"
