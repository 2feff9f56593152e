"""Planar continua and their exterior conformal data.

A continuum K here is one of

* a closed disc, exterior map (z - center)/radius,
* a real segment [a, b], exterior map via the inverse Zhukovskii map
  u + sqrt(u*u - 1) on the affine image of [-1, 1],
* a custom continuum defined by a finite Laurent polynomial
  g*z + g0 + g1/z + ... (the map is the definition of the set).

The exterior map phi sends the complement of K onto {|w| > 1} with
phi(inf) = inf and real positive derivative at infinity.  Level sets
{|phi| = r} for r > 1 are the closed analytic curves on which all the
contour machinery of the package lives; the Green function of the
complement is log|phi|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DomainError,
    InsideUnitDisc,
    NonConvergent,
    PointInsideK,
    WrongKind,
)
from .series import QC, GradedLaurent, LaurentTail

__all__ = [
    "ContinuumSpec",
    "LevelSet",
    "SupNorm",
    "disc",
    "segment",
    "custom",
    "contains",
    "phi",
    "psi",
    "psi_prime",
    "green",
    "exterior_series",
    "level_boundary",
    "eccentricity",
    "arc_length",
    "dist_to_level",
    "sup_norm",
    "scaled_closure",
]

MEMBERSHIP_TOL = 1e-12
DEFAULT_SAMPLES = 1024
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ContinuumSpec:
    """Immutable description of a continuum; build via disc/segment/custom."""

    kind: str
    center: complex = 0j
    radius: float = 0.0
    a: float = 0.0
    b: float = 0.0
    map_tail: LaurentTail | None = None

    @property
    def gamma(self) -> float:
        """Derivative of the exterior map at infinity (real positive)."""
        if self.kind == "disc":
            return 1.0 / self.radius
        if self.kind == "segment":
            return 4.0 / (self.b - self.a)
        return float(self.map_tail.lead.re)

    @property
    def capacity(self) -> float:
        """Logarithmic capacity, the reciprocal of gamma."""
        return 1.0 / self.gamma

    def describe(self) -> str:
        if self.kind == "disc":
            return f"disc(center={self.center}, radius={self.radius})"
        if self.kind == "segment":
            return f"segment([{self.a}, {self.b}])"
        return f"custom(gamma={self.gamma}, depth={self.map_tail.M})"


def disc(center=0j, radius=1.0) -> ContinuumSpec:
    if not radius > 0:
        raise DomainError("disc radius must be positive")
    return ContinuumSpec(kind="disc", center=complex(center), radius=float(radius))


def segment(a=-1.0, b=1.0) -> ContinuumSpec:
    a, b = float(a), float(b)
    if not a < b:
        raise DomainError("segment needs a < b")
    return ContinuumSpec(kind="segment", a=a, b=b)


def custom(tail: LaurentTail) -> ContinuumSpec:
    if not isinstance(tail, LaurentTail):
        raise DomainError("custom continuum needs a LaurentTail map")
    if tail.lead.im != 0 or tail.lead.re <= 0:
        raise DomainError("exterior map must have real positive leading coefficient")
    return ContinuumSpec(kind="custom", map_tail=tail)


def _is_canonical(K: ContinuumSpec) -> bool:
    return K.kind == "segment" and K.a == -1.0 and K.b == 1.0


# ---------------------------------------------------------------------------
# membership

def contains(K: ContinuumSpec, z) -> bool:
    """True when z lies on K, within an absolute tolerance of 1e-12.

    Points within tolerance of the boundary count as inside; the
    exterior map is never evaluated there.
    """
    z = complex(z)
    if K.kind == "segment":
        x, y = z.real, z.imag
        if K.a <= x <= K.b:
            d = abs(y)
        else:
            d = min(abs(z - K.a), abs(z - K.b))
        return d <= MEMBERSHIP_TOL
    if K.kind == "disc":
        return abs(z - K.center) <= K.radius + MEMBERSHIP_TOL * max(1.0, K.radius)
    w = _phi_custom_raw(K, np.array([z], dtype=complex))[0]
    if not np.isfinite(w):
        return True
    return abs(w) <= 1.0 + MEMBERSHIP_TOL


def _check_outside(K: ContinuumSpec, z: np.ndarray):
    flat = z.ravel()
    for i, zz in enumerate(flat):
        if contains(K, zz):
            raise PointInsideK(f"point {zz} lies on {K.describe()}")


# ---------------------------------------------------------------------------
# exterior map and inverse

def _phi_custom_raw(K: ContinuumSpec, z: np.ndarray) -> np.ndarray:
    t = K.map_tail
    with np.errstate(divide="ignore", invalid="ignore"):
        u = 1.0 / z
        acc = np.zeros_like(z)
        for g in t.tail_complex()[::-1]:
            acc = (acc + g) * u
        return t.lead_complex * z + t.c0_complex + acc


def phi(K: ContinuumSpec, z):
    """Exterior map value(s); raises PointInsideK on points of K."""
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_outside(K, arr)
    if K.kind == "disc":
        w = (arr - K.center) / K.radius
    elif K.kind == "segment":
        u = (2.0 * arr - (K.a + K.b)) / (K.b - K.a)
        s = np.sqrt(u * u - 1.0)
        w1 = u + s
        w2 = u - s
        w = np.where(np.abs(w1) >= np.abs(w2), w1, w2)
    else:
        w = _phi_custom_raw(K, arr)
    return complex(w[0]) if scalar else w


def psi(K: ContinuumSpec, w):
    """Inverse of the exterior map, defined for |w| > 1."""
    arr = np.asarray(w, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(np.abs(arr) <= 1.0):
        bad = arr[np.abs(arr) <= 1.0][0]
        raise InsideUnitDisc(f"psi is defined for |w| > 1, got {bad}")
    if K.kind == "disc":
        z = K.center + K.radius * arr
    elif K.kind == "segment":
        mid = 0.5 * (K.a + K.b)
        quarter = 0.25 * (K.b - K.a)
        z = mid + quarter * (arr + 1.0 / arr)
    else:
        z = _psi_custom(K, arr)
    return complex(z[0]) if scalar else z


def _phi_custom_deriv(K: ContinuumSpec, z: np.ndarray) -> np.ndarray:
    t = K.map_tail
    u = 1.0 / z
    acc = np.zeros_like(z)
    tc = t.tail_complex()
    for k in range(len(tc), 0, -1):
        acc = (acc - k * tc[k - 1]) * u
    return t.lead_complex + acc * u


def _psi_custom(K: ContinuumSpec, w: np.ndarray) -> np.ndarray:
    t = K.map_tail
    z = (w - t.c0_complex) / t.lead_complex
    tol = 1e-13 * np.maximum(1.0, np.abs(w))
    for _ in range(60):
        f = _phi_custom_raw(K, z) - w
        if np.all(np.abs(f) <= tol):
            return z
        z = z - f / _phi_custom_deriv(K, z)
    f = _phi_custom_raw(K, z) - w
    if np.all(np.abs(f) <= tol):
        return z
    raise NonConvergent("Newton inversion of the custom exterior map stalled")


def psi_prime(K: ContinuumSpec, w):
    """Derivative of psi; for custom maps via 1/phi'(psi(w))."""
    arr = np.asarray(w, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if K.kind == "disc":
        d = np.full_like(arr, K.radius)
    elif K.kind == "segment":
        quarter = 0.25 * (K.b - K.a)
        d = quarter * (1.0 - arr ** -2)
    else:
        z = _psi_custom(K, arr)
        d = 1.0 / _phi_custom_deriv(K, z)
    return complex(d[0]) if scalar else d


def green(K: ContinuumSpec, z):
    """Green function of the complement with pole at infinity: log|phi|."""
    w = phi(K, z)
    if isinstance(w, complex):
        return math.log(abs(w))
    return np.log(np.abs(w))


# ---------------------------------------------------------------------------
# exact series of the exterior map

@lru_cache(maxsize=None)
def _sqrt_binomials(depth: int) -> tuple:
    """Coefficients of (1 - x)**(1/2): 1, -1/2, -1/8, -1/16, -5/128, ..."""
    out = [Fraction(1)]
    c = Fraction(1)
    for j in range(1, depth + 1):
        c = c * Fraction(3 - 2 * j, 2 * j)   # C(1/2, j) recurrence
        out.append(c * (-1) ** j)
    return tuple(out)


@lru_cache(maxsize=None)
def _canonical_segment_graded(depth: int) -> GradedLaurent:
    """z + sqrt(z^2-1) = 2z - (1/2)/z - (1/8)/z^3 - ... to the given depth."""
    b = _sqrt_binomials(depth // 2 + 1)
    data = [QC(2), QC(0)]
    for k in range(1, depth + 1):
        if k % 2 == 1:
            data.append(QC(b[(k + 1) // 2]))
        else:
            data.append(QC(0))
    return GradedLaurent(1, depth, tuple(data))


def exterior_series(K: ContinuumSpec, depth: int) -> GradedLaurent:
    """Truncated Laurent series of phi at infinity, exact coefficients.

    Segments are supported in canonical position [-1, 1] only; other
    segments are handled upstream by affine transport of the canonical
    data rather than by re-expanding the series.
    """
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    if K.kind == "disc":
        r = Fraction(K.radius)
        lead = QC(1 / r)
        c0 = QC.of(complex(K.center)) * QC(-1 / r)
        return GradedLaurent(1, depth, (lead, c0) + (QC(0),) * depth)
    if K.kind == "segment":
        if not _is_canonical(K):
            raise DomainError("series form only available for the segment [-1, 1]")
        return _canonical_segment_graded(depth)
    g = K.map_tail.to_graded()
    return g.truncated(depth)


def scaled_closure(K: ContinuumSpec, R: float, depth: int = 96) -> ContinuumSpec:
    """The filled level set {green <= log R} as a continuum of its own.

    Its exterior map is phi/R.  For a disc this is again a disc; for the
    canonical segment and for custom continua the scaled map tail is
    materialised as a custom spec.
    """
    if not R > 1.0:
        raise DomainError("level parameter R must exceed 1")
    if K.kind == "disc":
        return disc(K.center, K.radius * R)
    g = exterior_series(K, depth).scaled(QC(1) / QC(Fraction(R)))
    tail = LaurentTail(g.exact_coeff(1), g.exact_coeff(0),
                       tuple(g.data[2:]))
    return custom(tail)


# ---------------------------------------------------------------------------
# level sets

@dataclass(frozen=True, eq=False)
class LevelSet:
    """Discretised level curve {|phi| = R} with its arc length."""

    spec: ContinuumSpec
    R: float
    points: np.ndarray
    m: int
    arc_length: float

    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.m) / self.m

    def to_csv(self) -> str:
        lines = ["theta,re,im"]
        for t, p in zip(self.thetas(), self.points):
            lines.append(f"{t:.17g},{p.real:.17g},{p.imag:.17g}")
        return "\n".join(lines) + "\n"


def level_boundary(K: ContinuumSpec, R: float, m: int = DEFAULT_SAMPLES) -> LevelSet:
    """Sample the level curve at m equispaced angles of the circle |w| = R."""
    if not R > 1.0:
        raise DomainError("level parameter R must exceed 1")
    if m < 8:
        raise DomainError("need at least 8 boundary samples")
    w = R * np.exp(2j * np.pi * np.arange(m) / m)
    pts = psi(K, w)
    back = np.abs(phi(K, pts))
    if np.max(np.abs(back - R)) > 1e-9 * R:
        raise NonConvergent("level curve points failed the roundtrip check")
    return LevelSet(spec=K, R=R, points=pts, m=m, arc_length=arc_length(K, R))


def eccentricity(R: float) -> float:
    """Eccentricity of the segment level ellipse with focal half-distance 1.

    The level curve of a segment at parameter R is an ellipse with
    semi-axes (R + 1/R)/2 and (R - 1/R)/2, so the eccentricity is
    2R/(1 + R^2).  Strictly decreasing in R.
    """
    if not R > 1.0:
        raise DomainError("eccentricity defined for R > 1")
    return 2.0 * R / (1.0 + R * R)


def arc_length(K: ContinuumSpec, r: float, m: int = DEFAULT_SAMPLES,
               rtol: float = 1e-8, max_doublings: int = 12) -> float:
    """Arc length of {|phi| = r} by the periodic trapezoid rule.

    The integrand |psi'(r e^(i theta))| * r is smooth and periodic, so
    the node count is doubled until two successive values agree to
    relative rtol.
    """
    if not r > 1.0:
        raise DomainError("level parameter must exceed 1")

    def value(mm: int) -> float:
        th = 2.0 * np.pi * np.arange(mm) / mm
        w = r * np.exp(1j * th)
        integ = np.abs(psi_prime(K, w)) * r
        return float(np.sum(integ)) * 2.0 * np.pi / mm

    prev = value(m)
    for _ in range(max_doublings):
        m *= 2
        cur = value(m)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise NonConvergent("arc length did not stabilise; is the map tail sane?")


def _golden_extremum(f, lo: float, hi: float, sign: float, iters: int = 60) -> float:
    """Golden-section search for extremum of f on [lo, hi]; returns f value."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = sign * f(x1), sign * f(x2)
    for _ in range(iters):
        if f1 <= f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = sign * f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = sign * f(x1)
    return sign * max(f1, f2)


def dist_to_level(K: ContinuumSpec, z, r: float, m: int = DEFAULT_SAMPLES) -> float:
    """Distance from z to the level curve {|phi| = r}.

    Sampled minimum over m boundary points followed by one golden
    section refinement stage in the boundary angle.  If refinement
    cannot improve the sampled value, the sampled value is returned;
    an overestimate here would wrongly tighten the bounds built on it,
    an underestimate only loosens them.
    """
    z = complex(z)
    th = 2.0 * np.pi * np.arange(m) / m
    pts = psi(K, r * np.exp(1j * th))
    d = np.abs(pts - z)
    j = int(np.argmin(d))
    coarse = float(d[j])
    lo = th[j] - 2.0 * np.pi / m
    hi = th[j] + 2.0 * np.pi / m

    def g(t: float) -> float:
        return abs(complex(psi(K, r * np.exp(1j * t))) - z)

    try:
        fine = _golden_extremum(g, lo, hi, sign=-1.0)
    except Exception:
        return coarse
    return min(coarse, fine)


# ---------------------------------------------------------------------------
# sup norms

class SupNorm(float):
    """A float carrying the sample count that produced it."""

    def __new__(cls, value: float, samples: int):
        obj = super().__new__(cls, value)
        obj.samples = samples
        return obj


def _poly_coeffs(p) -> np.ndarray:
    if hasattr(p, "coeffs"):
        return np.asarray(p.coeffs, dtype=complex)
    return np.asarray(p, dtype=complex)


def _eval_on_values(p, z: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyval(z, _poly_coeffs(p))


def sup_norm(p, S, m: int = DEFAULT_SAMPLES) -> SupNorm:
    """Maximum modulus of the polynomial p over a continuum or level set.

    Sampling is followed by one golden section refinement around the
    discrete maximiser.  On segments, polynomials that expose an exact
    Chebyshev-basis view (see FaberPoly.cheb_floats) are evaluated
    through it; monomial evaluation of high-degree Faber data on [-1, 1]
    loses everything to cancellation.
    """
    if isinstance(S, LevelSet):
        K, path_r, kind = S.spec, S.R, "level"
    elif isinstance(S, ContinuumSpec):
        K, path_r, kind = S, None, S.kind
    else:
        raise WrongKind(f"cannot take a sup norm over {type(S).__name__}")

    cheb = None
    if kind == "segment" and hasattr(p, "cheb_floats"):
        cheb = p.cheb_floats(K.a, K.b)

    th = 2.0 * np.pi * np.arange(m) / m
    if kind == "segment":
        mid, half = 0.5 * (K.a + K.b), 0.5 * (K.b - K.a)

        def path_vals(t):
            x = np.cos(t)
            if cheb is not None:
                return np.polynomial.chebyshev.chebval(x, cheb)
            return _eval_on_values(p, mid + half * x)

    elif kind == "disc":
        def path_vals(t):
            return _eval_on_values(p, K.center + K.radius * np.exp(1j * t))

    elif kind == "custom":
        rr = 1.0 + 1e-9

        def path_vals(t):
            return _eval_on_values(p, psi(K, rr * np.exp(1j * np.atleast_1d(t))))

    else:  # level set
        def path_vals(t):
            return _eval_on_values(p, psi(K, path_r * np.exp(1j * np.atleast_1d(t))))

    vals = np.abs(np.atleast_1d(path_vals(th)))
    j = int(np.argmax(vals))
    coarse = float(vals[j])
    lo = th[j] - 2.0 * np.pi / m
    hi = th[j] + 2.0 * np.pi / m

    def g(t: float) -> float:
        return float(np.abs(np.atleast_1d(path_vals(np.array([t])))[0]))

    fine = _golden_extremum(g, lo, hi, sign=1.0)
    return SupNorm(max(coarse, fine), m)
