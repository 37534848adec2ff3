"""Structured pass/fail records shared by validators and the check suites."""

import hashlib
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationReport:
    """One named check: residuals measured against a tolerance.

    ``verdict`` is "pass" iff every residual is within tolerance, "fail"
    otherwise, or "diagnostic" for measurements that do not assert anything.
    ``info`` holds context values that do not count against the tolerance.
    """

    check_id: str
    theorem_tag: str
    inputs_digest: str
    measured: tuple          # ((name, value), ...) sorted by name
    tolerance: float
    verdict: str
    info: tuple = ()         # ((name, value), ...) sorted by name
    notes: str = ""

    @property
    def passed(self):
        return self.verdict == "pass"

    @property
    def worst(self):
        return max((v for _, v in self.measured), default=0.0)

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "theorem_tag": self.theorem_tag,
            "inputs_digest": self.inputs_digest,
            "measured": [{"name": n, "value": _canon(v)} for n, v in self.measured],
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "info": [{"name": n, "value": _canon(v)} for n, v in self.info],
            "notes": self.notes,
        }


def _canon(v):
    if isinstance(v, complex):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (list, tuple)):
        return [_canon(x) for x in v]
    if isinstance(v, (int, bool, str)):
        return v
    return float(v)


def make_report(check_id, theorem_tag, digest, residuals, tolerance,
                info=None, diagnostic=False, notes=""):
    """Build a report; residuals is a name -> value mapping."""
    measured = tuple(sorted((k, float(v)) for k, v in residuals.items()))
    if diagnostic:
        verdict = "diagnostic"
    else:
        verdict = "pass" if all(v <= tolerance for _, v in measured) else "fail"
    extra = tuple(sorted((k, v) for k, v in (info or {}).items()))
    return VerificationReport(check_id, theorem_tag, digest, measured,
                              float(tolerance), verdict, extra, notes)


def digest_of(payload):
    """Canonical sha256 of a JSON-serializable payload."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=_canon)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def reports_to_json(reports):
    """Canonical serialization; byte-identical for identical inputs."""
    return json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2)
