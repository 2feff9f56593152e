"""Faber polynomials and Faber coefficient series.

The n-th Faber polynomial of a continuum is the polynomial part of the
n-th power of its exterior map; the remainder (the principal part) is
what the polynomial misses, and it vanishes at infinity.  Two
independent routes are implemented and kept separate on purpose:

* the series route, exact arithmetic on the truncated Laurent expansion,
* the contour route, a Cauchy-type integral over a level curve
  normalised by 1/(2 pi i), evaluated with the periodic trapezoid rule.

Coefficient extraction with respect to the Faber basis is a discrete
Fourier transform on a circle |w| = r of the target coordinate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .continua import (
    ContinuumSpec,
    contains,
    exterior_series,
    green,
    phi,
    psi,
    psi_prime,
)
from .errors import (
    AliasingRisk,
    DomainError,
    FaberBohrError,
    PointInsideK,
    PointInsideLevel,
    PointOutsideLevel,
    ReconstructionMismatch,
    WrongKind,
)
from .series import (
    QC,
    GradedLaurent,
    laurent_mul,
    qc_horner,
    split_parts_exact,
)

__all__ = [
    "FaberPoly",
    "FaberSeries",
    "faber_polys",
    "faber_poly",
    "faber_contour",
    "faber_remainder",
    "contour_values",
    "faber_coeffs",
    "target_identity_check",
    "target_identity_residual",
    "norm_root",
]

_LEVEL_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class FaberPoly:
    """Monomial coefficients of one Faber polynomial, plus exact views.

    coeffs is ascending [c_0, ..., c_n]; the leading coefficient equals
    gamma**n.  When the polynomial was produced from exact series data
    the exact Gaussian-rational coefficients are retained, which is what
    makes stable evaluation on segments possible at degrees where the
    monomial form is hopeless in doubles.
    """

    n: int
    coeffs: np.ndarray
    gamma_n: complex
    exact: tuple | None = field(default=None, repr=False)
    _cheb: dict = field(default_factory=dict, repr=False, compare=False)

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex),
                                                self.coeffs)

    def eval_exact(self, z) -> complex:
        if self.exact is None:
            return complex(self(complex(z)))
        return qc_horner(self.exact, QC.of(complex(z))).to_complex()

    def cheb_floats(self, a: float, b: float) -> np.ndarray:
        """Chebyshev-basis coefficients of self on [a, b], computed exactly."""
        key = (float(a), float(b))
        if key not in self._cheb:
            if self.exact is None:
                shifted = _affine_compose_f(self.coeffs, 0.5 * (b - a),
                                            0.5 * (a + b))
                self._cheb[key] = np.polynomial.polynomial.poly2cheb(shifted)
            else:
                half = Fraction(b) / 2 - Fraction(a) / 2
                mid = Fraction(a) / 2 + Fraction(b) / 2
                shifted = _affine_compose_qc(self.exact, QC(half), QC(mid))
                cheb = _cheb_from_monomial_qc(shifted)
                self._cheb[key] = np.array([c.to_complex() for c in cheb])
        return self._cheb[key]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "gamma": [self.gamma_n.real, self.gamma_n.imag],
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }


# ---------------------------------------------------------------------------
# basis transforms

def _affine_compose_qc(coeffs, alpha: QC, beta: QC):
    """Coefficients of p(alpha*x + beta) from ascending coeffs of p."""
    out = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        nxt = [out[0] * beta + c]
        for i in range(1, len(out) + 1):
            prev = out[i] * beta if i < len(out) else QC(0)
            nxt.append(out[i - 1] * alpha + prev)
        out = nxt
    return tuple(out)


def _affine_compose_f(coeffs: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    out = np.array([coeffs[-1]], dtype=complex)
    for c in coeffs[-2::-1]:
        nxt = np.zeros(len(out) + 1, dtype=complex)
        nxt[: len(out)] = out * beta
        nxt[1:] += out * alpha
        nxt[0] += c
        out = nxt
    return out


def _cheb_from_monomial_qc(coeffs):
    """Exact monomial-to-Chebyshev transform (Horner with x*T recurrences)."""
    half = QC(Fraction(1, 2))
    out = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        nxt = [QC(0)] * (len(out) + 1)
        nxt[1] = nxt[1] + out[0]
        for i in range(1, len(out)):
            nxt[i + 1] = nxt[i + 1] + out[i] * half
            nxt[i - 1] = nxt[i - 1] + out[i] * half
        nxt[0] = nxt[0] + c
        out = nxt
    return tuple(out)


# ---------------------------------------------------------------------------
# construction

_POLY_CACHE: dict = {}
_SINGLE_CACHE: dict = {}


def _default_depth(N: int) -> int:
    return 2 * N + 16


def _polys_from_graded(g: GradedLaurent, N: int, M: int):
    """Polynomial parts of g, g^2, ..., g^N; g must carry depth >= M + N."""
    gamma = g.exact_coeff(1)
    out = [(QC(1),)]
    gpow = [QC(1), gamma]
    cur = g
    for n in range(1, N + 1):
        if n > 1:
            cur = laurent_mul(cur, g, M + N)
            gpow.append(gpow[-1] * gamma)
        poly, _ = split_parts_exact(cur.truncated(M))
        out.append(poly)
    return out, gpow


def _make_poly(n: int, exact_coeffs, gamma_n: QC) -> FaberPoly:
    arr = np.array([c.to_complex() for c in exact_coeffs], dtype=complex)
    return FaberPoly(n=n, coeffs=arr, gamma_n=gamma_n.to_complex(),
                     exact=tuple(exact_coeffs))


def _disc_polys(K: ContinuumSpec, N: int):
    r = Fraction(K.radius)
    alpha = QC(1 / r)
    beta = QC.of(complex(K.center)) * QC(-1 / r)
    polys = []
    apow = [QC(1)]
    bpow = [QC(1)]
    for _ in range(N):
        apow.append(apow[-1] * alpha)
        bpow.append(bpow[-1] * beta)
    for n in range(N + 1):
        coeffs = tuple(QC(comb(n, k)) * apow[k] * bpow[n - k]
                       for k in range(n + 1))
        polys.append(_make_poly(n, coeffs, apow[n]))
    return polys


def _transport_segment(polys_canonical, K: ContinuumSpec):
    """Carry [-1, 1] Faber data to [a, b] by the exact affine change."""
    alpha = QC(Fraction(2) / (Fraction(K.b) - Fraction(K.a)))
    beta = QC(-(Fraction(K.a) + Fraction(K.b)) / (Fraction(K.b) - Fraction(K.a)))
    g = alpha * QC(2)   # gamma of [a, b]
    out = []
    for p in polys_canonical:
        comp = _affine_compose_qc(p.exact, alpha, beta)
        gn = QC(1)
        for _ in range(p.n):
            gn = gn * g
        out.append(_make_poly(p.n, comp, gn))
    return out


def faber_polys(K: ContinuumSpec, N: int, M: int | None = None):
    """Faber polynomials F_0, ..., F_N of K via the series route.

    For discs the binomial form is exact; for segments the canonical
    [-1, 1] series is powered and transported by the affine change of
    variable; custom continua are powered from their stored map tail.
    """
    if N < 0:
        raise DomainError("N must be nonnegative")
    if M is None:
        M = _default_depth(N)
    key = (K, N, M)
    if key in _POLY_CACHE:
        return _POLY_CACHE[key]

    if K.kind == "disc":
        polys = _disc_polys(K, N)
    elif K.kind == "segment":
        from .continua import segment as _segment
        canon = K if (K.a, K.b) == (-1.0, 1.0) else _segment(-1.0, 1.0)
        g = exterior_series(canon, M + N)
        exact, gpow = _polys_from_graded(g, N, M)
        polys = [_make_poly(n, exact[n], gpow[n]) for n in range(N + 1)]
        if canon is not K:
            polys = _transport_segment(polys, K)
    else:
        g = exterior_series(K, K.map_tail.M)
        exact, gpow = _polys_from_graded(g, N, M)
        polys = [_make_poly(n, exact[n], gpow[n]) for n in range(N + 1)]

    polys = tuple(polys)
    _POLY_CACHE[key] = polys
    return polys


def faber_poly(K: ContinuumSpec, n: int, M: int | None = None) -> FaberPoly:
    """Single Faber polynomial; cheaper than the full family for large n."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if M is None:
        M = _default_depth(n)
    key = (K, n, M)
    if key in _SINGLE_CACHE:
        return _SINGLE_CACHE[key]
    full_key = (K, n, M)
    for (spec, N, MM), polys in _POLY_CACHE.items():
        if spec == K and N >= n and MM >= M:
            _SINGLE_CACHE[key] = polys[n]
            return polys[n]

    if K.kind == "disc":
        poly = _disc_polys(K, n)[n]
    elif K.kind == "segment":
        from .continua import segment as _segment
        from .series import laurent_pow
        canon = K if (K.a, K.b) == (-1.0, 1.0) else _segment(-1.0, 1.0)
        g = exterior_series(canon, M + n)
        p = laurent_pow(g, n, M)
        exact, _ = split_parts_exact(p)
        gamma_n = QC(1)
        for _ in range(n):
            gamma_n = gamma_n * QC(2)
        poly = _make_poly(n, exact, gamma_n)
        if canon is not K:
            poly = _transport_segment([poly], K)[0]
    else:
        from .series import laurent_pow
        g = exterior_series(K, K.map_tail.M)
        p = laurent_pow(g, n, M)
        exact, _ = split_parts_exact(p)
        gamma_n = QC(1)
        lead = g.exact_coeff(1)
        for _ in range(n):
            gamma_n = gamma_n * lead
        poly = _make_poly(n, exact, gamma_n)
    _SINGLE_CACHE[full_key] = poly
    return poly


# ---------------------------------------------------------------------------
# contour route

_NODE_CACHE: dict = {}


def _nodes(K: ContinuumSpec, r: float, m: int):
    key = (K, float(r), int(m))
    if key not in _NODE_CACHE:
        th = 2.0 * np.pi * np.arange(m) / m
        w = r * np.exp(1j * th)
        t = psi(K, w)
        dp = psi_prime(K, w)
        _NODE_CACHE[key] = (w, t, dp)
    return _NODE_CACHE[key]


def contour_values(K: ContinuumSpec, ns, zs, r: float, m: int = 1024,
                   dps: int | None = None) -> np.ndarray:
    """Trapezoid Cauchy integrals of phi^n/(t - z) over {|phi| = r}.

    Returns the matrix V[i, j] for n = ns[i], z = zs[j], normalised by
    1/(2 pi i).  For points inside the level curve this is the Faber
    polynomial value; the optional dps switches to high-precision
    arithmetic, needed when r**n overwhelms double-precision summation.
    """
    ns = list(ns)
    zs = np.asarray(zs, dtype=complex).ravel()
    if dps is not None:
        return _contour_mp(K, ns, zs, r, m, dps)
    w, t, dp = _nodes(K, r, m)
    B = (dp * w)[:, None] / (t[:, None] - zs[None, :])
    P = w[None, :] ** np.asarray(ns, dtype=float)[:, None]
    return (P @ B) / m


def _contour_mp(K: ContinuumSpec, ns, zs, r, m, dps) -> np.ndarray:
    from mpmath import mp, mpc

    if K.kind not in ("segment", "disc"):
        raise FaberBohrError("high-precision contour is implemented for "
                             "segment and disc continua only")
    out = np.zeros((len(ns), len(zs)), dtype=complex)
    nmax = max(ns)
    with mp.workdps(dps):
        rr = mp.mpf(repr(float(r)))
        two_pi = 2 * mp.pi
        ws, ts, dps_ = [], [], []
        for j in range(m):
            th = two_pi * j / m
            w = rr * mpc(mp.cos(th), mp.sin(th))
            if K.kind == "segment":
                mid = (mp.mpf(repr(K.a)) + mp.mpf(repr(K.b))) / 2
                quarter = (mp.mpf(repr(K.b)) - mp.mpf(repr(K.a))) / 4
                t = mid + quarter * (w + 1 / w)
                dpv = quarter * (1 - 1 / (w * w))
            else:
                t = mpc(K.center.real, K.center.imag) + mp.mpf(repr(K.radius)) * w
                dpv = mp.mpf(repr(K.radius))
            ws.append(w)
            ts.append(t)
            dps_.append(dpv * w)
        for jz, z in enumerate(zs):
            zq = mpc(z.real, z.imag)
            B = [dps_[j] / (ts[j] - zq) for j in range(m)]
            # accumulate powers incrementally across n
            pw = [mpc(1, 0)] * m
            sums = {}
            for n in range(nmax + 1):
                if n in ns:
                    acc = mpc(0, 0)
                    for j in range(m):
                        acc += pw[j] * B[j]
                    sums[n] = acc / m
                if n < nmax:
                    for j in range(m):
                        pw[j] = pw[j] * ws[j]
            for ji, n in enumerate(ns):
                v = sums[n]
                out[ji, jz] = complex(float(v.real), float(v.imag))
    return out


def faber_contour(K: ContinuumSpec, n: int, z, r: float, m: int = 1024,
                  dps: int | None = None) -> complex:
    """Faber polynomial value by the normalised Cauchy integral.

    Valid for z strictly inside the level curve {|phi| = r} (points of K
    included).  The result does not depend on the choice of r as long as
    z stays inside, which is one of the cross-checks the tests enforce.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    z = complex(z)
    if not contains(K, z):
        if green(K, z) >= np.log(r) - _LEVEL_SLACK:
            raise PointOutsideLevel(
                f"z={z} is not inside the level curve at r={r}")
    return complex(contour_values(K, [n], [z], r, m=m, dps=dps)[0, 0])


def faber_remainder(K: ContinuumSpec, n: int, z, r: float, m: int = 1024,
                    dps: int | None = None) -> complex:
    """Remainder phi^n - F_n at a point outside the level curve.

    Same integrand and normalisation as faber_contour; the orientation
    of the residue count flips the sign for exterior points.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    z = complex(z)
    if contains(K, z) or green(K, z) <= np.log(r) + _LEVEL_SLACK:
        raise PointInsideLevel(
            f"z={z} is not outside the level curve at r={r}")
    return -complex(contour_values(K, [n], [z], r, m=m, dps=dps)[0, 0])


# ---------------------------------------------------------------------------
# coefficient series

@dataclass(frozen=True, eq=False)
class FaberSeries:
    """Finite Faber expansion a_0 + sum a_n F_n on the region {green < log R}.

    cert_sup, when present, is a sampled upper bound for |f| on the
    outer boundary, recorded by the generator that certified it.
    """

    K: ContinuumSpec
    R: float
    coeffs: np.ndarray
    cert_sup: float | None = None
    label: str = ""

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def eval_z(self, z):
        z = np.asarray(z, dtype=complex)
        polys = faber_polys(self.K, self.N)
        acc = np.zeros_like(z)
        for a_n, p in zip(self.coeffs, polys):
            if a_n != 0:
                acc = acc + a_n * p(z)
        return acc

    def eval_w(self, w):
        """Evaluate through the target coordinate w = phi(z).

        On segments the basis pulls back to w^n + w^-n, on discs to w^n;
        custom continua fall back to eval_z(psi(w)).
        """
        w = np.asarray(w, dtype=complex)
        if self.K.kind == "custom":
            return self.eval_z(psi(self.K, w))
        acc = np.full_like(w, self.coeffs[0])
        pw = np.ones_like(w)
        for n in range(1, len(self.coeffs)):
            pw = pw * w
            if self.coeffs[n] != 0:
                term = pw + pw ** -1 if self.K.kind == "segment" else pw
                acc = acc + self.coeffs[n] * term
        return acc

    def scaled(self, factor: complex) -> "FaberSeries":
        cert = None if self.cert_sup is None else self.cert_sup * abs(factor)
        return FaberSeries(self.K, self.R, self.coeffs * factor, cert, self.label)

    def rotated_nonneg(self) -> "FaberSeries":
        """Multiply by a unimodular constant so the constant term is >= 0."""
        a0 = self.coeffs[0]
        if a0 == 0:
            return self
        return self.scaled(abs(a0) / a0)

    def to_json_dict(self) -> dict:
        return {
            "R": self.R,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }


def faber_coeffs(samples, K: ContinuumSpec, r: float, N: int,
                 fn=None, verify: bool = False) -> FaberSeries:
    """Faber coefficients from equispaced samples of f(psi(w)) on |w| = r.

    a_n is the n-th Fourier coefficient of the samples divided by r**n;
    the constant term needs no scaling.  N may not exceed a quarter of
    the sample count (anti-aliasing rule).  When verify is set, fn must
    be the sampled function itself and the reconstruction is checked at
    16 interior points.
    """
    samples = np.asarray(samples, dtype=complex)
    m = len(samples)
    if not r > 1.0:
        raise DomainError("extraction radius must exceed 1")
    if N > m // 4:
        raise DomainError(f"N={N} exceeds the anti-aliasing limit m/4={m // 4}")
    bins = np.fft.fft(samples) / m
    a = bins[: N + 1] * np.float_power(r, -np.arange(N + 1))
    if not np.all(np.isfinite(a)):
        raise DomainError("non-finite coefficients; check the samples")
    peak = float(np.max(np.abs(a)))
    if peak > 0 and abs(a[N]) > 1e-6 * peak:
        warnings.warn(
            f"last extracted coefficient a_{N} is {abs(a[N]):.3g} against a "
            f"peak of {peak:.3g}; increase the sample count or N",
            AliasingRisk, stacklevel=2)
    series = FaberSeries(K=K, R=float(r), coeffs=a)
    if verify:
        if fn is None:
            raise DomainError("verification requires the sampled function")
        rng = np.random.default_rng(0)
        radii = 1.0 + (min(r, 0.95 * r + 0.05) - 1.0) * rng.random(16)
        angles = 2.0 * np.pi * rng.random(16)
        zpts = psi(K, np.maximum(radii, 1.0 + 1e-6) * np.exp(1j * angles))
        rec = series.eval_z(zpts)
        ref = np.asarray([fn(z) for z in zpts], dtype=complex)
        err = float(np.max(np.abs(rec - ref)))
        if err > 1e-6:
            raise ReconstructionMismatch(
                f"reconstruction error {err:.3g} exceeds 1e-6")
    return series


# ---------------------------------------------------------------------------
# identities and norms

def target_identity_residual(K: ContinuumSpec, n: int, w) -> float:
    """|F_n(psi(w)) - (w^n + w^-n)| computed in exact arithmetic.

    Both sides grow like |w|**n, far past the absolute resolution of
    doubles, so the residual is assembled exactly and only then rounded.
    """
    if K.kind != "segment":
        raise WrongKind("the target-coordinate identity is a segment fact")
    if n < 1:
        raise DomainError("the identity is stated for n >= 1")
    wq = QC.of(complex(w))
    winv = wq.inverse()
    mid = QC((Fraction(K.a) + Fraction(K.b)) / 2)
    quarter = QC((Fraction(K.b) - Fraction(K.a)) / 4)
    zq = mid + quarter * (wq + winv)
    p = faber_poly(K, n)
    lhs = qc_horner(p.exact, zq)
    wn = QC(1)
    wninv = QC(1)
    for _ in range(n):
        wn = wn * wq
        wninv = wninv * winv
    diff = lhs - (wn + wninv)
    return float(diff.abs2()) ** 0.5


def target_identity_check(K: ContinuumSpec, n: int, w, tol: float = 1e-9) -> bool:
    return target_identity_residual(K, n, w) < tol


def norm_root(K: ContinuumSpec, L, n: int) -> float:
    """(max over L of |F_n|)**(1/n) for a finite point set L outside K."""
    if n < 1:
        raise DomainError("norm root needs n >= 1")
    pts = [complex(p) for p in np.atleast_1d(np.asarray(L, dtype=complex))]
    for p in pts:
        if contains(K, p):
            raise PointInsideK(f"norm root point {p} lies on K")
    poly = faber_poly(K, n)
    top = max(abs(poly.eval_exact(p)) for p in pts)
    return float(top) ** (1.0 / n)
