"""Command line front end.

Subcommands
-----------
faber        Faber polynomial coefficients, optionally cross-checked
             against the contour route (exit 3 on mismatch beyond 1e-7)
levelset     sample points of a Green level curve
bohr-radius  bisect for the sufficient Bohr level of a segment
verify       run a bounded-family campaign on a level-set domain
             (exit 4 when a counterexample to the classical sum
             threshold is found)
estimates    margins for the separation conditions plus a level sweep
coeffs       Faber coefficients of a sampled function

A continuum is named as ``segment:a,b``, ``disc:re,im,radius`` or
``custom:@mapfile.json``; the JSON file holds the exterior map as
``{"gamma": g, "gamma0": g0, "tail": [[re, im], ...]}`` where entries
may be plain numbers or ``[re, im]`` pairs.

Exit codes: 0 success, 2 bad arguments or input, 3 contour mismatch,
4 campaign found a violation.

All output for a fixed command line (including ``--seed``) is
byte-identical between runs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bohr import (
    KAPTANOGLU_SADIK_ECCENTRICITY,
    KAPTANOGLU_SADIK_RADIUS,
    BoundedFamily,
    bohr_verify,
    segment_bohr_radius,
)
from .continua import (
    ContinuumSpec,
    custom,
    disc,
    eccentricity,
    level_boundary,
    psi,
    segment,
)
from .errors import DomainError, FaberBohrError
from .estimates import margins_csv, thm31_conditions
from .faber import contour_values, faber_coeffs, faber_poly, faber_polys
from .series import LaurentTail

SCHEMA = "faberbohr/1"
_CONTOUR_GATE = 1e-7


# ---------------------------------------------------------------------------
# parsing helpers

def _cnum(v) -> complex:
    """A JSON number or [re, im] pair as a complex value."""
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise DomainError(f"expected a number or an [re, im] pair, got {v!r}")


def parse_continuum(text: str) -> ContinuumSpec:
    kind, _, rest = text.partition(":")
    if kind == "segment":
        parts = rest.split(",") if rest else []
        if len(parts) != 2:
            raise DomainError(
                f"continuum 'segment' needs two fields 'a,b' (the real "
                f"endpoints), e.g. segment:-1,1; got {rest!r}")
        try:
            a, b = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainError(
                f"segment fields 'a,b' must be real numbers; got {rest!r}")
        return segment(a, b)
    if kind == "disc":
        parts = rest.split(",") if rest else []
        if len(parts) != 3:
            raise DomainError(
                f"continuum 'disc' needs three fields 're,im,radius' "
                f"(centre and radius), e.g. disc:0,0,1; got {rest!r}")
        try:
            re_, im_, rad = (float(p) for p in parts)
        except ValueError:
            raise DomainError(
                f"disc fields 're,im,radius' must be numbers; got {rest!r}")
        return disc(complex(re_, im_), rad)
    if kind == "custom":
        if not rest.startswith("@"):
            raise DomainError(
                "continuum 'custom' expects '@file.json', a JSON object "
                "with fields 'gamma', 'gamma0' and 'tail'")
        path = rest[1:]
        with open(path) as fh:
            data = json.load(fh)
        for name in ("gamma", "tail"):
            if name not in data:
                raise DomainError(
                    f"custom map file {path} is missing field {name!r} "
                    "(expected 'gamma', optional 'gamma0', and 'tail' as a "
                    "list of [re, im] pairs)")
        tail = LaurentTail.build(
            _cnum(data["gamma"]),
            _cnum(data.get("gamma0", 0)),
            [_cnum(t) for t in data["tail"]],
        )
        return custom(tail)
    raise DomainError(
        f"unknown continuum kind {kind!r}; use 'segment:a,b', "
        "'disc:re,im,radius' or 'custom:@file.json'")


def _parse_sweep(text):
    if text is None or text == "none":
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(
            f"--sweep needs two fields 'lo,hi' in (0, 1), or 'none'; "
            f"got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise DomainError(f"--sweep fields 'lo,hi' must be numbers; got {text!r}")
    return (lo, hi)


# ---------------------------------------------------------------------------
# formatting helpers

def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _ctext(z) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-14 * max(1.0, abs(z.real)):
        return "%.6g" % z.real
    return "%.6g%+.6gj" % (z.real, z.imag)


def _jprint(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_faber(args, K: ContinuumSpec) -> int:
    polys = faber_polys(K, args.n_max)
    check = None
    status = 0
    if args.check_contour:
        n_chk = min(args.n_max, 16)
        ns = list(range(n_chk + 1))
        th = 2.0 * np.pi * np.arange(8) / 8.0
        zs = np.asarray(psi(K, 1.2 * np.exp(1j * th)))
        mat = contour_values(K, ns, zs, 1.5, m=args.samples)
        exact = np.array([[polys[n].eval_exact(z) for z in zs] for n in ns])
        mism = float(np.max(np.abs(mat - exact)))
        check = {"max_mismatch": mism, "r": 1.5, "points": len(zs),
                 "n_checked": n_chk}
        if mism > _CONTOUR_GATE:
            status = 3

    if args.output == "json":
        payload = {"schema": SCHEMA, "continuum": K.describe(),
                   "n_max": args.n_max,
                   "polynomials": [p.to_json_dict() for p in polys]}
        if check is not None:
            payload["contour_check"] = check
        _jprint(payload)
    elif args.output == "csv":
        lines = ["n,k,re,im"]
        for p in polys:
            for k, c in enumerate(p.coeffs):
                lines.append("%d,%d,%.17g,%.17g" % (p.n, k, c.real, c.imag))
        print("\n".join(lines))
    else:
        print(f"Faber polynomials of {K.describe()}, ascending coefficients")
        for p in polys:
            body = ", ".join(_ctext(c) for c in p.coeffs)
            print(f"F_{p.n}: {body}")
        if check is not None:
            tag = "OK" if status == 0 else "MISMATCH"
            print("contour check (%d points, r=%.6g, n<=%d): max deviation "
                  "%.6g [%s]" % (check["points"], check["r"],
                                 check["n_checked"], check["max_mismatch"], tag))
    return status


def _cmd_levelset(args, K: ContinuumSpec) -> int:
    ls = level_boundary(K, args.R, args.m)
    if args.output == "json":
        payload = {"schema": SCHEMA, "continuum": K.describe(), "R": ls.R,
                   "m": ls.m, "arc_length": float(ls.arc_length),
                   "points": [_pair(z) for z in ls.points]}
        if K.kind == "segment":
            payload["eccentricity"] = eccentricity(args.R)
        _jprint(payload)
    elif args.output == "csv":
        print(ls.to_csv(), end="")
    else:
        print("level curve of %s at R=%.6g: %d points, arc length %.6g"
              % (K.describe(), ls.R, ls.m, ls.arc_length))
        if K.kind == "segment":
            print("ellipse eccentricity %.6g" % eccentricity(args.R))
    return 0


def _cmd_bohr_radius(args) -> int:
    res = segment_bohr_radius(args.tol)
    if args.output == "json":
        _jprint({
            "schema": SCHEMA,
            "radius": res.radius,
            "eccentricity": res.eccentricity,
            "iterations": res.iterations,
            "bracket": [res.bracket[0], res.bracket[1]],
            "tol": res.tol,
            "reference": {
                "kaptanoglu_sadik_radius": KAPTANOGLU_SADIK_RADIUS,
                "kaptanoglu_sadik_eccentricity": KAPTANOGLU_SADIK_ECCENTRICITY,
            },
        })
    elif args.output == "csv":
        print("radius,eccentricity,iterations,tol")
        print("%.17g,%.17g,%d,%.17g"
              % (res.radius, res.eccentricity, res.iterations, res.tol))
    else:
        print("sufficient Bohr level for a segment: R0 = %.6g "
              "(ellipse eccentricity %.6g)" % (res.radius, res.eccentricity))
        print("bisection: %d iterations on [%.6g, %.6g], tol %.6g"
              % (res.iterations, res.bracket[0], res.bracket[1], res.tol))
        print("reported elliptic-region values for comparison: radius %.6g, "
              "eccentricity %.6g" % (KAPTANOGLU_SADIK_RADIUS,
                                     KAPTANOGLU_SADIK_ECCENTRICITY))
    return 0


def _cmd_verify(args, K: ContinuumSpec) -> int:
    sweep = _parse_sweep(args.sweep)
    if sweep is None and args.sweep is None and args.family == "moebius":
        sweep = (0.8, 0.99)
    family = BoundedFamily(kind=args.family, seed=args.seed, count=args.count,
                           margin=args.margin, sweep=sweep)
    report = bohr_verify(K, args.R, family)
    if args.output == "json":
        _jprint(report.to_json_dict())
    elif args.output == "csv":
        lines = ["index,sum"]
        for i, s in enumerate(report.sums):
            lines.append("%d,%.17g" % (i, s))
        print("\n".join(lines))
    else:
        print("campaign on %s at R=%.6g: family=%s count=%d margin=%.6g"
              % (K.describe(), args.R, args.family, args.count, args.margin))
        if report.sums:
            print("max coefficient sum %.6g, min slack %.6g"
                  % (max(report.sums), report.min_slack))
        print("verdict: %s (%d violation(s); members bounded by "
              "construction, sums are evidence about the campaign only)"
              % (report.verdict, len(report.violations)))
        for v in report.violations:
            print("  member %d (%s): sum %.6g"
                  % (v["index"], v["label"], v["sum"]))
    return 4 if report.violations else 0


def _cmd_estimates(args, K: ContinuumSpec) -> int:
    rep = thm31_conditions(K, args.R, eps0=args.eps0, n_max=args.n_max,
                           m=args.samples)
    if args.output == "json":
        _jprint({
            "schema": SCHEMA,
            "continuum": K.describe(),
            "R": rep.R,
            "eps0": rep.eps0,
            "C": rep.C,
            "n_max": rep.n_max,
            "anchor": _pair(rep.a),
            "all_hold": rep.all_hold,
            "r_star": rep.r_star,
            "tail_ratio": rep.tail_ratio,
            "tail_dominance_ok": rep.tail_dominance_ok,
            "theta_residual_max": rep.theta_residual_max,
            "anchor_margin_tail": list(rep.anchor_margin_tail),
            "note": rep.note,
            "rows": list(rep.rows),
        })
    elif args.output == "csv":
        print(rep.to_csv(), end="")
    else:
        print("separation conditions for %s at R=%.6g (eps0=%.6g, C=%.6g, "
              "n<=%d): %s" % (K.describe(), rep.R, rep.eps0, rep.C, rep.n_max,
                              "all hold" if rep.all_hold else "NOT all hold"))
        worst = {}
        for row in rep.rows:
            name = row["condition"]
            if name not in worst or row["margin"] < worst[name]:
                worst[name] = row["margin"]
        for name in sorted(worst):
            print("  min margin %s: %.6g" % (name, worst[name]))
        print("first grid level with every margin positive: R* = %.6g"
              % rep.r_star)
        print("turned-point residual max %.6g; collar/worst-level ratio "
              "%.6g" % (rep.theta_residual_max, rep.tail_ratio))
        print("note: %s" % rep.note)
    return 0


def _cmd_coeffs(args, K: ContinuumSpec) -> int:
    m = args.samples
    r = args.r
    th = 2.0 * np.pi * np.arange(m) / m
    w = r * np.exp(1j * th)
    kind, _, rest = args.function.partition(":")
    if kind == "faber":
        try:
            n = int(rest)
        except ValueError:
            raise DomainError(f"function 'faber:n' needs an integer index; "
                              f"got {rest!r}")
        if n == 0:
            vals = np.ones(m, dtype=complex)
        elif K.kind == "segment":
            pw = w ** n
            vals = pw + 1.0 / pw
        elif K.kind == "disc":
            vals = w ** n
        else:
            vals = faber_poly(K, n)(np.asarray(psi(K, w)))
    elif kind == "poly":
        try:
            c = [complex(tok) for tok in rest.split(",")]
        except ValueError:
            raise DomainError(
                f"function 'poly:c0,c1,...' needs complex-literal fields "
                f"like 1, 0.5, 1j, 2+3j (no spaces); got {rest!r}")
        vals = np.polynomial.polynomial.polyval(np.asarray(psi(K, w)), c)
    elif kind == "const":
        try:
            vals = np.full(m, complex(rest))
        except ValueError:
            raise DomainError(f"function 'const:c' needs a complex literal; "
                              f"got {rest!r}")
    else:
        raise DomainError(
            f"unknown function kind {kind!r}; use 'faber:n', "
            "'poly:c0,c1,...' or 'const:c'")
    coeffs = faber_coeffs(vals, K, r, args.n_coeffs).coeffs
    if args.output == "json":
        _jprint({"schema": SCHEMA, "continuum": K.describe(), "r": r,
                 "n_coeffs": args.n_coeffs,
                 "coeffs": [_pair(c) for c in coeffs]})
    elif args.output == "csv":
        lines = ["n,re,im"]
        for n, c in enumerate(coeffs):
            lines.append("%d,%.17g,%.17g" % (n, c.real, c.imag))
        print("\n".join(lines))
    else:
        print("Faber coefficients of %s on %s (extraction radius %.6g)"
              % (args.function, K.describe(), r))
        for n, c in enumerate(coeffs):
            print("a_%d = %s" % (n, _ctext(c)))
    return 0


# ---------------------------------------------------------------------------
# driver

def _add_common(p, top: bool) -> None:
    """Shared flags, valid before or after the subcommand.

    On subparsers the defaults are suppressed so a flag given before the
    subcommand is not clobbered by the subparser's second pass.
    """
    def dflt(v):
        return v if top else argparse.SUPPRESS

    p.add_argument("--continuum", default=dflt("segment:-1,1"),
                   help="segment:a,b | disc:re,im,radius | custom:@file.json "
                        "(default: segment:-1,1)")
    p.add_argument("--output", choices=("text", "json", "csv"),
                   default=dflt("text"), help="output format (default: text)")
    p.add_argument("--seed", type=int, default=dflt(0),
                   help="seed for generated families (default: 0)")
    p.add_argument("--samples", type=int, default=dflt(1024),
                   help="sample count for contours and boundary sups "
                        "(default: 1024)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="faberbohr",
        description="Faber polynomials, Green level sets and Bohr-type "
                    "coefficient sums for planar continua.")
    _add_common(p, top=True)
    sub = p.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("faber", help="Faber polynomial coefficients")
    _add_common(f, top=False)
    f.add_argument("--n-max", dest="n_max", type=int, default=8)
    f.add_argument("--check-contour", action="store_true",
                   help="cross-check the coefficients against the contour "
                        "route; exit 3 on mismatch beyond 1e-7")

    ls = sub.add_parser("levelset", help="sample a Green level curve")
    _add_common(ls, top=False)
    ls.add_argument("--R", type=float, default=2.0)
    ls.add_argument("--m", type=int, default=256)

    br = sub.add_parser("bohr-radius",
                        help="sufficient Bohr level of the segment")
    _add_common(br, top=False)
    br.add_argument("--tol", type=float, default=1e-6)

    v = sub.add_parser("verify", help="bounded-family campaign")
    _add_common(v, top=False)
    v.add_argument("--R", type=float, default=3.0)
    v.add_argument("--family",
                   choices=("moebius", "scaled_poly", "faber_series"),
                   default="moebius")
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--margin", type=float, default=0.01)
    v.add_argument("--sweep", default=None,
                   help="lo,hi grid for the moebius parameter, or 'none' "
                        "for random parameters (moebius default: 0.8,0.99)")

    e = sub.add_parser("estimates", help="separation-condition margins")
    _add_common(e, top=False)
    e.add_argument("--R", type=float, default=8.0)
    e.add_argument("--eps0", type=float, default=0.25)
    e.add_argument("--n-max", dest="n_max", type=int, default=32)

    c = sub.add_parser("coeffs", help="Faber coefficients of a function")
    _add_common(c, top=False)
    c.add_argument("--function", default="faber:1",
                   help="faber:n | poly:c0,c1,... | const:c")
    c.add_argument("--r", type=float, default=2.0,
                   help="extraction radius in the exterior coordinate")
    c.add_argument("--n-coeffs", dest="n_coeffs", type=int, default=16)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cmd == "bohr-radius":
            return _cmd_bohr_radius(args)
        K = parse_continuum(args.continuum)
        if args.cmd == "faber":
            return _cmd_faber(args, K)
        if args.cmd == "levelset":
            return _cmd_levelset(args, K)
        if args.cmd == "verify":
            return _cmd_verify(args, K)
        if args.cmd == "estimates":
            return _cmd_estimates(args, K)
        if args.cmd == "coeffs":
            return _cmd_coeffs(args, K)
    except FaberBohrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")
