"""A closed catalog of right-hand sides with known integrability.

Every source kind has a provable L^q range, so experiments can attach
honest q labels. The catalog is closed on purpose: operators accept sampled
fields separately when arbitrary data is needed.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

KINDS = ("zero", "monomial", "radial_power", "arc_bump", "linear_combination")


@dataclass(frozen=True)
class SourceTerm:
    kind: str
    a: int = 0
    b: int = 0
    beta: float = 0.0
    center: float = 0.0
    width: float = 0.0
    amplitude: float = 1.0
    parts: tuple = ()          # ((complex coefficient, SourceTerm), ...)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown source kind {self.kind!r}")
        if self.kind == "monomial" and (self.a < 0 or self.b < 0):
            raise ValueError("monomial exponents must be nonnegative")
        if self.kind == "radial_power" and not 0.0 <= self.beta < 2.0:
            raise ValueError("radial exponent must lie in [0, 2)")
        if self.kind == "arc_bump" and self.width <= 0.0:
            raise ValueError("bump width must be positive")


def zero():
    return SourceTerm("zero")


def monomial(a, b):
    """zeta^a * conj(zeta)^b."""
    return SourceTerm("monomial", a=int(a), b=int(b))


def radial_power(beta):
    """|zeta|^(-beta); lies in L^q exactly when beta*q < 2."""
    return SourceTerm("radial_power", beta=float(beta))


def arc_bump(center, width, amplitude=1.0):
    """Smooth compactly supported bump in the angular variable."""
    return SourceTerm("arc_bump", center=float(center), width=float(width),
                      amplitude=float(amplitude))


def linear_combination(terms):
    parts = tuple((complex(c), t) for c, t in terms)
    for _, t in parts:
        if not isinstance(t, SourceTerm):
            raise ValueError("linear_combination takes (coefficient, SourceTerm) pairs")
    return SourceTerm("linear_combination", parts=parts)


def singular_points(f):
    """Interior points where the source itself is unbounded."""
    if f.kind == "radial_power" and f.beta > 0.0:
        return (0.0 + 0.0j,)
    if f.kind == "linear_combination":
        pts = []
        for _, t in f.parts:
            pts.extend(singular_points(t))
        return tuple(pts)
    return ()


def is_smooth(f):
    return not singular_points(f)


def _bump_profile(delta, width):
    u = delta / (0.5 * width)
    out = np.zeros_like(u, dtype=float)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out


def eval_source(f, zeta):
    """Pointwise source values; vectorized over complex ``zeta``.

    Raises DomainError when asked to evaluate a radial power exactly at its
    singular point. Use :func:`eval_source_clipped` inside quadratures.
    """
    zeta = np.asarray(zeta, dtype=complex)
    if f.kind == "radial_power" and f.beta > 0.0 and np.any(np.abs(zeta) == 0.0):
        raise DomainError("radial_power source evaluated at its singular point")
    return _eval(f, zeta)


def _eval(f, zeta):
    if f.kind == "zero":
        return np.zeros_like(zeta)
    if f.kind == "monomial":
        return zeta ** f.a * np.conj(zeta) ** f.b
    if f.kind == "radial_power":
        r = np.abs(zeta)
        with np.errstate(divide="ignore"):
            vals = r ** (-f.beta)
        return vals.astype(complex)
    if f.kind == "arc_bump":
        delta = np.angle(zeta) - f.center
        delta = delta - 2.0 * np.pi * np.round(delta / (2.0 * np.pi))
        return (f.amplitude * _bump_profile(delta, f.width)).astype(complex)
    acc = np.zeros_like(zeta)
    for c, t in f.parts:
        acc = acc + c * _eval(t, zeta)
    return acc


def eval_source_clipped(f, zeta, exclusion=1e-3):
    """Source values with nodes inside ``exclusion`` of a singularity zeroed.

    The omitted mass is bounded separately by :func:`excluded_mass_bound`.
    """
    zeta = np.asarray(zeta, dtype=complex)
    vals = _eval(f, zeta)
    for p in singular_points(f):
        vals = np.where(np.abs(zeta - p) < exclusion, 0.0, vals)
    return np.nan_to_num(vals, nan=0.0, posinf=0.0, neginf=0.0)


def excluded_mass_bound(f, z, exclusion=1e-3):
    """Analytic bound on the Cauchy-kernel mass dropped by the exclusion disk.

    Bounds (1/pi) * integral over |zeta| < delta of |f| / |zeta - z|.
    """
    total = 0.0
    delta = exclusion
    for term, coef in _flatten(f):
        if term.kind != "radial_power" or term.beta == 0.0:
            continue
        beta = term.beta
        radial_mass = 2.0 * delta ** (2.0 - beta) / (2.0 - beta)
        dist = max(abs(z) - delta, 0.5 * delta)
        total += abs(coef) * radial_mass / dist
    return total


def _flatten(f, coef=1.0 + 0.0j):
    if f.kind == "linear_combination":
        out = []
        for c, t in f.parts:
            out.extend(_flatten(t, coef * c))
        return out
    return [(f, coef)]


def lq_norm(f, q, grid):
    """Discrete (integral |f|^q dA)^(1/q) on a disk grid.

    Divergent memberships are not raised here; they show up as growth along
    a resolution ladder, which is how experiments report them.
    """
    if q < 1.0:
        raise ValueError(f"lq_norm needs q >= 1, got {q}")
    vals = eval_source_clipped(f, grid.nodes, exclusion=0.0 if is_smooth(f) else 1e-12)
    return float(np.dot(np.abs(vals) ** q, grid.weights) ** (1.0 / q))


# --- JSON encoding -----------------------------------------------------------
#
# {"kind": "zero"}
# {"kind": "monomial", "a": 1, "b": 0}
# {"kind": "radial_power", "beta": 0.5}
# {"kind": "arc_bump", "center": 0.0, "width": 1.0, "amplitude": 1.0}
# {"kind": "linear_combination",
#  "parts": [{"coefficient": [re, im], "term": {...}}, ...]}

def source_to_json(f):
    if f.kind == "zero":
        return {"kind": "zero"}
    if f.kind == "monomial":
        return {"kind": "monomial", "a": f.a, "b": f.b}
    if f.kind == "radial_power":
        return {"kind": "radial_power", "beta": f.beta}
    if f.kind == "arc_bump":
        return {"kind": "arc_bump", "center": f.center, "width": f.width,
                "amplitude": f.amplitude}
    return {"kind": "linear_combination",
            "parts": [{"coefficient": [c.real, c.imag], "term": source_to_json(t)}
                      for c, t in f.parts]}


def source_from_json(data):
    kind = data.get("kind")
    if kind == "zero":
        return zero()
    if kind == "monomial":
        return monomial(data["a"], data["b"])
    if kind == "radial_power":
        return radial_power(data["beta"])
    if kind == "arc_bump":
        return arc_bump(data["center"], data["width"], data.get("amplitude", 1.0))
    if kind == "linear_combination":
        return linear_combination(
            [(complex(p["coefficient"][0], p["coefficient"][1]),
              source_from_json(p["term"])) for p in data["parts"]])
    raise ValueError(f"unknown source kind in JSON: {kind!r}")
