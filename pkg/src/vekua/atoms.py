"""Arc-supported atoms on the circle and finite atomic sums.

An atom for exponent p lives on an arc J, is bounded by |J|^(-1/p), and has
vanishing moments against theta^k for every integer 0 <= k <= 1/p - 1; the
one exception is a constant of modulus at most 1 on the whole circle.

Profiles are piecewise polynomials in the angle lifted to a continuous
branch over the arc, so every support, size, and moment check is evaluated
by exact polynomial integration with no quadrature error. Arcs that wrap
through 0 keep the lifted branch; validation reports record that choice.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, MomentOrderError
from .report import digest_of, make_report

TWO_PI = 2.0 * math.pi

WRAP_NOTE = ("moments use the angle lifted to a continuous branch over the arc, "
             "so arcs wrapping through 0 integrate theta on that branch")


@dataclass(frozen=True)
class PAtom:
    """A p-atom: piecewise-polynomial profile on an arc, or a constant.

    ``breakpoints`` are ascending offsets u = theta - arc_center spanning
    [-arc_length/2, arc_length/2]; ``coefficients[i]`` are ascending powers
    of u on piece [breakpoints[i], breakpoints[i+1]].
    """

    p: float
    arc_center: float
    arc_length: float
    breakpoints: tuple = ()
    coefficients: tuple = ()
    is_constant: bool = False
    constant: complex = 0.0 + 0.0j

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"atom exponent must lie in (0, 1], got {self.p}")
        if self.is_constant:
            return
        if not 0.0 < self.arc_length <= TWO_PI:
            raise ValueError(f"arc length must lie in (0, 2*pi], got {self.arc_length}")
        if len(self.breakpoints) != len(self.coefficients) + 1:
            raise ValueError("breakpoints and coefficient pieces do not line up")

    @property
    def size_bound(self):
        if self.is_constant:
            return 1.0
        return self.arc_length ** (-1.0 / self.p)

    def sup_value(self):
        if self.is_constant:
            return abs(self.constant)
        return max(_poly_sup(c, lo, hi) for c, lo, hi
                   in zip(self.coefficients, self.breakpoints[:-1], self.breakpoints[1:]))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.is_constant:
            return np.full(theta.shape, self.constant, dtype=complex)
        delta = theta - self.arc_center
        delta = delta - TWO_PI * np.round(delta / TWO_PI)
        half = 0.5 * self.arc_length
        inside = np.abs(delta) <= half + 1e-15
        out = np.zeros(theta.shape, dtype=complex)
        if np.any(inside):
            d = delta[inside]
            bp = np.asarray(self.breakpoints)
            idx = np.clip(np.searchsorted(bp, d, side="right") - 1,
                          0, len(self.coefficients) - 1)
            vals = np.empty(d.shape, dtype=float)
            for i, c in enumerate(self.coefficients):
                sel = idx == i
                if np.any(sel):
                    vals[sel] = np.polynomial.polynomial.polyval(d[sel], np.asarray(c))
            out[inside] = vals
        return out

    def centered_moments(self, count):
        """Exact integrals of a(theta) * u^j du for j < count, u = theta - center."""
        if self.is_constant:
            half = math.pi
            return [self.constant * (half ** (j + 1) - (-half) ** (j + 1)) / (j + 1)
                    for j in range(count)]
        out = []
        for j in range(count):
            pieces = []
            for c, lo, hi in zip(self.coefficients, self.breakpoints[:-1],
                                 self.breakpoints[1:]):
                for m, cm in enumerate(c):
                    k = m + j + 1
                    pieces.append(cm * (hi ** k - lo ** k) / k)
            out.append(math.fsum(pieces))
        return out

    def theta_moments(self, count):
        """Exact integrals of a(theta) * theta^k d(theta) on the lifted branch."""
        centered = [complex(m) for m in self.centered_moments(count)]
        tc = self.arc_center if not self.is_constant else 0.0
        out = []
        for k in range(count):
            terms = [math.comb(k, i) * tc ** (k - i) * centered[i]
                     for i in range(k + 1)]
            out.append(complex(math.fsum(t.real for t in terms),
                               math.fsum(t.imag for t in terms)))
        return out


@dataclass(frozen=True)
class AtomicDistribution:
    """Finite sum of coefficient * atom pairs."""

    terms: tuple = ()        # ((complex coefficient, PAtom), ...)

    def __post_init__(self):
        object.__setattr__(self, "terms",
                           tuple((complex(c), a) for c, a in self.terms))

    @property
    def p(self):
        ps = {a.p for _, a in self.terms}
        if len(ps) > 1:
            raise ValueError(f"distribution mixes atom exponents {sorted(ps)}")
        return ps.pop() if ps else None

    def coefficient_power_sum(self, p):
        return float(sum(abs(c) ** p for c, _ in self.terms))


def required_moment_order(p):
    """Largest integer k with k <= 1/p - 1."""
    return max(0, math.floor(1.0 / p - 1.0 + 1e-12))


def make_haar_atom(p, arc_center, arc_length):
    """Two-level atom: +|J|^(-1/p) on the first half-arc, - on the second."""
    if not 0.5 < p <= 1.0:
        raise MomentOrderError(
            f"haar atoms only satisfy the k=0 moment; p = {p} needs higher "
            "moments, use make_moment_atom")
    if not 0.0 < arc_length <= TWO_PI:
        raise ValueError(f"arc length must lie in (0, 2*pi], got {arc_length}")
    amp = arc_length ** (-1.0 / p)
    half = 0.5 * arc_length
    return PAtom(p=p, arc_center=float(arc_center), arc_length=float(arc_length),
                 breakpoints=(-half, 0.0, half),
                 coefficients=((amp,), (-amp,)))


def make_moment_atom(p, k_max, arc_center, arc_length):
    """Polynomial atom orthogonal to 1, theta, ..., theta^k_max on its arc.

    The profile is the degree k_max + 1 result of orthogonalizing the
    shifted monomials on the arc (a rescaled Legendre polynomial), scaled to
    meet the size bound with equality.
    """
    if k_max != required_moment_order(p):
        raise ValueError(
            f"k_max must equal floor(1/p - 1) = {required_moment_order(p)} "
            f"for p = {p}, got {k_max}")
    if not 0.0 < arc_length <= TWO_PI:
        raise ValueError(f"arc length must lie in (0, 2*pi], got {arc_length}")
    half = 0.5 * arc_length
    degree = k_max + 1
    leg = np.polynomial.legendre.Legendre.basis(degree).convert(
        kind=np.polynomial.Polynomial)
    # x = u / half maps the arc offset onto [-1, 1]
    coeffs = tuple(c / half ** m for m, c in enumerate(leg.coef))
    sup = _poly_sup(coeffs, -half, half)
    if not np.isfinite(sup) or sup <= 0.0:
        raise ConstructionError("degenerate profile after orthogonalization")
    scale = arc_length ** (-1.0 / p) / sup
    return PAtom(p=p, arc_center=float(arc_center), arc_length=float(arc_length),
                 breakpoints=(-half, half),
                 coefficients=(tuple(scale * c for c in coeffs),))


def make_constant_atom(c, p=1.0):
    """The exceptional atom: a constant of modulus at most 1 on the circle."""
    c = complex(c)
    if abs(c) > 1.0:
        raise ValueError(f"constant atom needs |c| <= 1, got {abs(c)}")
    return PAtom(p=p, arc_center=0.0, arc_length=TWO_PI,
                 is_constant=True, constant=c)


def validate_atom(atom, tol=1e-12):
    """Check support, size, and every required moment by exact integration."""
    digest = digest_of(atom_to_json(atom))
    residuals = {}
    info = {"p": atom.p, "is_constant": atom.is_constant}
    if atom.is_constant:
        residuals["modulus_excess"] = max(0.0, abs(atom.constant) - 1.0)
    else:
        half = 0.5 * atom.arc_length
        over = max(0.0, -atom.breakpoints[0] - half, atom.breakpoints[-1] - half)
        residuals["support_overhang"] = over
        residuals["size_excess"] = max(
            0.0, atom.sup_value() - atom.size_bound * (1.0 + 1e-12))
        for k, mom in enumerate(atom.theta_moments(required_moment_order(atom.p) + 1)):
            residuals[f"moment_{k}"] = abs(mom)
        info["size_bound"] = atom.size_bound
    return make_report("atoms/validate", "atom conditions", digest,
                       residuals, tol, info=info, notes=WRAP_NOTE)


def quasinorm_upper(dist, p):
    """(sum |c_n|^p)^(1/p) for this representation; an upper bound only,
    since no search over equivalent decompositions is attempted."""
    for _, a in dist.terms:
        if abs(a.p - p) > 1e-12:
            raise ValueError(f"atom with exponent {a.p} in a p = {p} distribution")
    if not dist.terms:
        return 0.0
    return float(dist.coefficient_power_sum(p) ** (1.0 / p))


def eval_atomic(dist, theta):
    """Pointwise sum of the finite atomic series."""
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape, dtype=complex)
    for c, a in dist.terms:
        out += c * a(theta)
    return out


def _poly_sup(coeffs, lo, hi):
    c = np.asarray(coeffs, dtype=float)
    candidates = [lo, hi]
    if c.size > 1:
        dc = np.polynomial.polynomial.polyder(c)
        roots = np.polynomial.polynomial.polyroots(dc)
        for r in roots:
            if abs(r.imag) < 1e-12 and lo <= r.real <= hi:
                candidates.append(r.real)
    vals = np.polynomial.polynomial.polyval(np.asarray(candidates), c)
    return float(np.max(np.abs(vals)))


# --- JSON encoding -----------------------------------------------------------

def atom_to_json(atom):
    if atom.is_constant:
        return {"type": "constant", "p": atom.p,
                "c": [atom.constant.real, atom.constant.imag]}
    return {"type": "explicit", "p": atom.p, "arc_center": atom.arc_center,
            "arc_length": atom.arc_length,
            "breakpoints": list(atom.breakpoints),
            "coefficients": [list(c) for c in atom.coefficients]}


def atom_from_json(data):
    kind = data.get("type", "explicit")
    if kind == "haar":
        return make_haar_atom(data["p"], data.get("center", 0.0), data["length"])
    if kind == "moment":
        p = data["p"]
        return make_moment_atom(p, data.get("k_max", required_moment_order(p)),
                                data.get("center", 0.0), data["length"])
    if kind == "constant":
        c = data["c"]
        c = complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c)
        return make_constant_atom(c, data.get("p", 1.0))
    if kind == "explicit":
        return PAtom(p=data["p"], arc_center=data["arc_center"],
                     arc_length=data["arc_length"],
                     breakpoints=tuple(data["breakpoints"]),
                     coefficients=tuple(tuple(c) for c in data["coefficients"]))
    raise ValueError(f"unknown atom type in JSON: {kind!r}")


def distribution_to_json(dist):
    return {"terms": [{"coefficient": [c.real, c.imag], "atom": atom_to_json(a)}
                      for c, a in dist.terms]}


def distribution_from_json(data):
    return AtomicDistribution(tuple(
        (complex(t["coefficient"][0], t["coefficient"][1]),
         atom_from_json(t["atom"])) for t in data["terms"]))
