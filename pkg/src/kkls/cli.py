"""Command-line front end: reproducible, config-driven runs.

Configuration files are INI-style ``key = value`` sections (see FORMATS.md
for the schema).  Every subcommand writes CSV tables (header row, full
round-trip float precision) and/or JSON records carrying a schema_version
field.  Exit codes: 0 success, 1 invariant violation detected in the
computation, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import critpoints, entropy, groupact, invariants, landau, reduction, singtools

SCHEMA_VERSION = 1


class ConfigError(Exception):
    pass


class InvariantViolation(Exception):
    pass


# ----------------------------------------------------------------- helpers

def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2, default=_json_default)
        fh.write("\n")
    return path


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def load_config(path):
    parser = configparser.ConfigParser()
    try:
        read = parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    if not read:
        raise ConfigError(f"config file not found: {path}")
    return parser


def _getfloat(section, key, default=None):
    if key not in section:
        if default is None:
            raise ConfigError(f"missing key '{key}' in section [{section.name}]")
        return default
    try:
        return float(section[key])
    except ValueError as exc:
        raise ConfigError(f"bad float for '{key}': {section[key]}") from exc


LANDAU_KEYS = ("alpha", "beta", "gamma", "a3", "a4", "b4",
               "a5", "b5", "a6", "b6", "c6", "d6")


def model_from_config(cfg):
    """Build LandauCoeffs from [model]: physical (T, U0, lambda, kT) or
    explicit coefficients -- exactly one of the two."""
    if "model" not in cfg:
        raise ConfigError("config needs a [model] section")
    sec = cfg["model"]
    physical = "T" in sec or "U0" in sec or "lambda" in sec
    explicit = any(k in sec for k in LANDAU_KEYS)
    if physical and explicit:
        raise ConfigError("[model] must use either (T, U0, lambda, kT) "
                          "or explicit coefficients, not both")
    if physical:
        t = _getfloat(sec, "T")
        u0 = _getfloat(sec, "U0")
        kt = _getfloat(sec, "kT", t)
        try:
            lam = tuple(float(x) for x in sec["lambda"].split(","))
        except (KeyError, ValueError) as exc:
            raise ConfigError("bad or missing 'lambda = l1, l2, l3'") from exc
        if len(lam) != 3:
            raise ConfigError("'lambda' needs three components")
        cone = landau.ConeParams(T=t, U0=u0, lam=lam)
        alpha, beta, gamma = landau.coeffs_from_Tlambda(cone)
        ec = entropy.kkls_coefficients(entropy.default_quadrature())
        return entropy.landau_from_entropy(ec, alpha, beta, gamma, kt), cone
    if not explicit:
        raise ConfigError("[model] has neither physical nor explicit data")
    values = {k: _getfloat(sec, k, 0.0) for k in LANDAU_KEYS}
    return invariants.LandauCoeffs(**values), None


def normal_form_from_config(cfg):
    if "normal_form" not in cfg:
        raise ConfigError("config needs a [normal_form] section")
    sec = cfg["normal_form"]
    return critpoints.NormalFormParams(
        e2=_getfloat(sec, "e2", 0.0), e3=_getfloat(sec, "e3", 0.0),
        e4=_getfloat(sec, "e4", 0.0), e5=_getfloat(sec, "e5", 0.0),
        e6=_getfloat(sec, "e6", 0.0), e8=_getfloat(sec, "e8", 0.0),
        m=_getfloat(sec, "m", 1.0), n=_getfloat(sec, "n", 1.0))


def _outdir(cfg, args):
    if getattr(args, "out", None):
        return Path(args.out)
    if cfg is not None and "output" in cfg and "dir" in cfg["output"]:
        return Path(cfg["output"]["dir"])
    return Path("out")


# ------------------------------------------------------------- subcommands

def cmd_molien(args):
    groups = {
        "d3": groupact.d3_elements,
        "d3tilde": groupact.d3tilde_elements,
        "d3xd3": groupact.d3xd3_elements,
    }
    if args.group == "so3":
        series, residual = groupact.molien_so3_conjugacy(args.max_degree)
        extra = {"rounding_residual": residual}
    else:
        series = groupact.molien_finite(groups[args.group](), args.max_degree)
        extra = {}
    rows = [(d, series[d]) for d in range(len(series))]
    out = Path(args.out or "out")
    write_csv(out / f"molien_{args.group}.csv", ["degree", "coefficient"], rows)
    write_json(out / f"molien_{args.group}.json",
               {"group": args.group, "coefficients": series.coefficients, **extra})
    print(f"molien[{args.group}] r_0..r_{len(series)-1} = {series.coefficients}")
    return 0


def cmd_invariants(args):
    rows_out = []
    worst = 0.0
    with open(args.points) as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            op = invariants.OrderParams(float(row["s"]), float(row["p"]),
                                        float(row["d"]), float(row["c"]))
            iv = invariants.eval_basis_r4(op)
            syz = iv.syzygy_defect()
            scale = max(1.0, iv.f5 ** 2)
            worst = max(worst, abs(syz) / scale)
            rows_out.append((op.s, op.p, op.d, op.c) + iv.as_tuple() + (syz,))
    out = Path(args.out or "out")
    write_csv(out / "invariants.csv",
              ["s", "p", "d", "c", "f2", "f3", "f4", "f5", "f6", "syzygy_defect"],
              rows_out)
    print(f"invariants: {len(rows_out)} points, worst relative syzygy defect {worst:.3e}")
    if worst > 1e-10:
        raise InvariantViolation("syzygy defect above tolerance")
    return 0


def cmd_entropy_coeffs(args):
    quad = entropy.HaarQuadrature.product_rule(args.n_phi, args.n_beta)
    ec = entropy.kkls_coefficients(quad)
    defects = quad.moment_defects()
    payload = {
        "coefficients": {k: getattr(ec, k) for k in
                         ("quad_s", "quad_pdc", "gamma_cross", "a3p", "a4p",
                          "b4p", "a5p", "b5p", "a6p", "b6p", "c6p", "d6p")},
        "signs": ec.signs(),
        "fit_residual": ec.fit_residual,
        "quadrature": {"size": ec.quadrature_size,
                       "design_degree": quad.design_degree,
                       "first_moment_defect": defects[0],
                       "second_moment_defect": defects[1]},
        "degree5_report": ec.degree5_prefactor_report(),
    }
    out = Path(args.out or "out")
    path = write_json(out / "entropy_coeffs.json", payload)
    print(f"entropy-coeffs: a3p = {ec.a3p!r} (25/21 = {25/21!r}); wrote {path}")
    return 0


def cmd_classify(args):
    cfg = load_config(args.config)
    lc, cone = model_from_config(cfg)
    verdict = landau.stability_classify(lc.alpha, lc.beta, lc.gamma)
    payload = {"alpha": lc.alpha, "beta": lc.beta, "gamma": lc.gamma,
               "classification": verdict,
               "cone_determinant": lc.alpha * lc.beta - lc.gamma ** 2}
    if cone is not None:
        payload["T"] = cone.T
        payload["U0"] = cone.U0
        payload["lambda"] = list(cone.lam)
        payload["mu"] = cone.mu
    out = _outdir(cfg, args)
    write_json(out / "classify.json", payload)
    print(f"classify: {verdict}")
    return 0


def cmd_solve4d(args):
    cfg = load_config(args.config)
    lc, _ = model_from_config(cfg)
    sec = cfg["solver"] if "solver" in cfg else {}
    records = landau.critical_points_4d(
        lc,
        search_radius=float(sec.get("search_radius", 1.5)),
        grid_n=int(sec.get("grid_n", 5)),
        tol=float(sec.get("tol", 1e-11)))
    rows = [(r.orbit_id, *r.location, r.gradient_norm,
             -1 if r.morse_index is None else r.morse_index,
             r.tag, int(r.degenerate)) for r in records]
    out = _outdir(cfg, args)
    write_csv(out / "critical_points_4d.csv",
              ["orbit_id", "s", "p", "d", "c", "gradient_norm",
               "morse_index", "tag", "degenerate"], rows)
    print(f"solve4d: {len(records)} critical points, "
          f"{len(set(r.orbit_id for r in records))} orbits")
    return 0


def cmd_reduce(args):
    cfg = load_config(args.config)
    lc, cone = model_from_config(cfg)
    sec = cfg["reduction"] if "reduction" in cfg else {}
    xi = float(sec.get("xi", cone.xi if cone and cone.xi is not None else 0.0))
    mu = float(sec.get("mu", (lc.alpha + lc.beta) / 2.0))
    red = reduction.residual_coeffs(lc, mu, math.cos(xi), math.sin(xi))
    out = _outdir(cfg, args)
    write_json(out / "reduced_coeffs.json",
               {"xi": xi, "mu": mu, **asdict(red)})
    print(f"reduce: e3={red.e3!r} e4={red.e4!r} e5={red.e5!r} "
          f"m={red.m!r} n={red.n!r}")
    return 0


def cmd_solve(args):
    cfg = load_config(args.config)
    p = normal_form_from_config(cfg)
    uni = critpoints.uniaxial_points(p)
    orbits, boundary = critpoints.biaxial_points(p)
    out = _outdir(cfg, args)
    write_csv(out / "uniaxial.csv",
              ["x", "axis_second_derivative", "transverse_eig", "classification"],
              [(u.x, u.axis_second_derivative, u.transverse_eig, u.classification)
               for u in uni])
    write_csv(out / "biaxial.csv",
              ["X", "Y", "theta", "x_rep", "u_rep", "classification"],
              [(o.X, o.Y, o.theta, o.representatives[0][0],
                o.representatives[0][1], o.classification) for o in orbits])
    cell = critpoints.census_at(p)
    write_json(out / "solve_summary.json",
               {"params": asdict(p), "uniaxial_nonzero": cell.uniaxial_pts,
                "biaxial_orbits": cell.biaxial_orbits,
                "total_critical_points": cell.total_critical_pts,
                "boundary_hits": boundary})
    print(f"solve: {cell.uniaxial_pts} nonzero axis roots, "
          f"{cell.biaxial_orbits} biaxial orbits, total {cell.total_critical_pts}")
    return 0


def cmd_bifset(args):
    cfg = load_config(args.config)
    p = normal_form_from_config(cfg)
    sec = cfg["bifset"] if "bifset" in cfg else {}
    x_max = float(sec.get("x_max", 1.5))
    num = int(sec.get("num", 1201))
    curves = [critpoints.swallowtail_section(p.e4, p.e5, p.m, p.n,
                                             (-x_max, x_max), num,
                                             e6=p.e6, e8=p.e8)]
    if p.e6 == 0.0 and p.e8 == 0.0:
        curves += critpoints.bluebird_section(p.e4, p.e5, p.m, p.n, x_max, num)
    rows = []
    for curve in curves:
        tag = curve.kind
        if curve.fixed.get("sign") is not None:
            tag += "_plus" if curve.fixed["sign"] > 0 else "_minus"
        for par, (e2, e3) in zip(curve.params, curve.points):
            rows.append((tag, par, e2, e3))
    out = _outdir(cfg, args)
    write_csv(out / "bifurcation_set.csv", ["kind", "parameter", "e2", "e3"], rows)
    print(f"bifset: {len(curves)} curves, {len(rows)} points")
    return 0


def cmd_census(args):
    cfg = load_config(args.config)
    p = normal_form_from_config(cfg)
    sec = cfg["census"] if "census" in cfg else {}
    e2s = np.linspace(float(sec.get("e2_min", -0.5)), float(sec.get("e2_max", 0.5)),
                      int(sec.get("e2_steps", 21)))
    e3s = np.linspace(float(sec.get("e3_min", -0.5)), float(sec.get("e3_max", 0.5)),
                      int(sec.get("e3_steps", 21)))
    grid = critpoints.region_census(p.e4, p.e5, p.m, p.n, e2s, e3s,
                                    e6=p.e6, e8=p.e8)
    rows = []
    for row in grid:
        for cell in row:
            rows.append((cell.e2, cell.e3, cell.uniaxial_pts,
                         cell.biaxial_orbits, cell.total_critical_pts))
    out = _outdir(cfg, args)
    write_csv(out / "census.csv",
              ["e2", "e3", "uniaxial_pts", "biaxial_orbits", "total_critical_pts"],
              rows)
    totals = sorted(set(r[4] for r in rows))
    print(f"census: {len(rows)} cells, totals seen: {totals}")
    return 0


def _sweep_path_from_config(cfg):
    if "sweep" not in cfg:
        raise ConfigError("config needs a [sweep] section")
    sec = cfg["sweep"]
    t0, t1 = _getfloat(sec, "t_min"), _getfloat(sec, "t_max")
    steps = int(sec.get("steps", 201))
    kind = sec.get("kind", "affine")
    if kind == "affine":
        def spec(key, default=0.0):
            raw = sec.get(key, None)
            if raw is None:
                return (default, default)
            parts = [float(x) for x in raw.split(":")]
            return (parts[0], parts[-1])

        ends = {k: spec(k) for k in ("e2", "e3", "e4", "e5", "e6", "e8")}
        m, n = _getfloat(sec, "m", 1.0), _getfloat(sec, "n", 1.0)

        def path(t):
            frac = (t - t0) / (t1 - t0) if t1 != t0 else 0.0
            vals = {k: a + (b - a) * frac for k, (a, b) in ends.items()}
            return critpoints.NormalFormParams(m=m, n=n, **vals)

        return path, (t0, t1), steps
    if kind == "physical":
        u0 = _getfloat(sec, "U0")
        rho0 = _getfloat(sec, "rho0")
        xi0 = _getfloat(sec, "xi0", 0.0)
        ec = entropy.kkls_coefficients(entropy.default_quadrature())

        def t1_tricritical():
            lo, hi = u0 / 10.0 + 1e-9, u0
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                lc = entropy.landau_from_entropy(ec, 0, 0, 0, mid)
                mu = (10.0 * mid - u0) / 4.0
                e4 = reduction.residual_coeffs(lc, mu, math.cos(xi0),
                                               math.sin(xi0)).e4
                if e4 > 0:
                    hi = mid
                else:
                    lo = mid
            return 0.5 * (lo + hi)

        t_star = t1_tricritical()

        def path(t):
            lc = entropy.landau_from_entropy(ec, 0, 0, 0, t)
            mu = (10.0 * t - u0) / 4.0
            red = reduction.residual_coeffs(lc, mu, math.cos(xi0), math.sin(xi0))
            e2 = reduction.e2_from_perturbation(t - t_star, rho0, u0)
            return critpoints.NormalFormParams(
                e2=e2, e3=red.e3, e4=red.e4, e5=red.e5, m=red.m, n=red.n)

        return path, (t0, t1), steps
    raise ConfigError(f"unknown sweep kind {kind!r}")


def cmd_sweep(args):
    cfg = load_config(args.config)
    path, t_range, steps = _sweep_path_from_config(cfg)
    result = critpoints.branch_sweep(path, t_range, steps)
    out = _outdir(cfg, args)
    rows = []
    for t, cell, roots in zip(result.ts, result.census, result.axis_roots):
        rows.append((t, cell.uniaxial_pts, cell.biaxial_orbits,
                     cell.total_critical_pts,
                     ";".join(repr(x) for x in roots)))
    write_csv(out / "sweep.csv",
              ["t", "uniaxial_pts", "biaxial_orbits", "total", "axis_roots"],
              rows)
    write_json(out / "sweep_events.json",
               {"events": [asdict(e) for e in result.events]})
    print(f"sweep: {len(result.events)} events")
    for e in result.events:
        print(f"  t = {e.t:.6g}: {e.kind} ({e.detail})")
    if any(e.ambiguous for e in result.events):
        raise InvariantViolation("ambiguous event bracketing; refine the sweep")
    return 0


def _parse_weighted(text):
    coeffs = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        a, b, c = part.split(",")
        coeffs[(int(a), int(b))] = Fraction(c)
    return singtools.WeightedPoly(coeffs)


def cmd_determinacy(args):
    poly = _parse_weighted(args.poly)
    verdict = singtools.k_determined(poly, args.k, args.window)
    payload = {"poly": {f"{a},{b}": str(c) for (a, b), c in poly.coeffs.items()},
               "k": args.k, **asdict(verdict)}
    out = Path(args.out or "out")
    write_json(out / "determinacy.json", payload)
    status = "holds" if verdict.holds_on_window else \
        f"fails at degree {verdict.witness_degree} (witness X^{verdict.witness[0]} Y^{verdict.witness[1]})"
    print(f"determinacy: k={args.k} window certificate {status}")
    return 0


def cmd_versal(args):
    poly = _parse_weighted(args.poly)
    monomials = []
    for part in args.monomials.split(";"):
        part = part.strip()
        if not part:
            continue
        a, b = part.split(",")
        monomials.append((int(a), int(b)))
    verdict = singtools.versal_check(poly, monomials, args.window)
    out = Path(args.out or "out")
    write_json(out / "versal.json",
               {"poly": {f"{a},{b}": str(c) for (a, b), c in poly.coeffs.items()},
                "monomials": [list(m) for m in monomials], **asdict(verdict)})
    status = "versal" if verdict.versal_on_window else \
        f"fails at degree {verdict.failing_degree}"
    print(f"versal: {status}")
    return 0


def cmd_spanning(args):
    report = groupact.spanning_check(args.samples, args.seed)
    out = Path(args.out or "out")
    write_json(out / "spanning.json", asdict(report))
    print(f"spanning: linear rank {report.linear_rank}, affine rank "
          f"{report.affine_rank}, identity residual {report.identity_residual:.3e}")
    if report.identity_residual > 1e-12:
        raise InvariantViolation("identity combination residual above 1e-12")
    return 0


def cmd_figdata(args):
    cfg = load_config(args.config) if args.config else None
    out = _outdir(cfg, args)
    out.mkdir(parents=True, exist_ok=True)
    files = []

    # instability circle in the lambda-plane at a sample temperature
    u0, t = 1.0, 0.13
    rows = []
    for xi in np.linspace(0.0, math.pi, 241):
        cone = landau.cone_point(t, xi, u0)
        rows.append((xi, *cone.lam))
    files.append(write_csv(out / "fig_cone_circle.csv",
                           ["xi", "lambda1", "lambda2", "lambda3"], rows))

    # image region boundary X^3 = Y^2
    rows = [(x * x, sgn * x ** 3) for x in np.linspace(0.0, 1.2, 241)
            for sgn in (1.0, -1.0)]
    files.append(write_csv(out / "fig_image_region.csv", ["X", "Y"], rows))

    # swallowtail and bluebird sections for both signs of e4
    for tag, e4 in (("pos", 0.25), ("neg", -0.25)):
        sw = critpoints.swallowtail_section(e4, 0.0, 1.0, 1.0, (-1.2, 1.2), 961)
        rows = [("swallowtail_S", x, p[0], p[1])
                for x, p in zip(sw.params, sw.points)]
        for curve in critpoints.bluebird_section(e4, 0.0, 1.0, 1.0, 1.2, 961):
            name = curve.kind + ("_plus" if curve.fixed.get("sign", 0) > 0
                                 else "_minus" if curve.fixed.get("sign") else "")
            rows += [(name, par, p[0], p[1])
                     for par, p in zip(curve.params, curve.points)]
        files.append(write_csv(out / f"fig_bifset_e4_{tag}.csv",
                               ["kind", "parameter", "e2", "e3"], rows))

    # symmetric-slice crossings in the (e4, e2)-plane at e3 = 0
    rows = []
    for e4 in np.linspace(-0.6, 0.0, 121):
        rows.append(("S", e4, e4 * e4 / 6.0))
        rows.append(("B1", e4, e4 * e4 / 3.0))
    rows.append(("B0", 0.0, 0.0))
    files.append(write_csv(out / "fig_symmetric_slice.csv",
                           ["kind", "e4", "e2"], rows))

    # canonical sweeps: symmetric outside/inside, and broken symmetry
    paths = {
        "a": lambda t_: critpoints.NormalFormParams(e2=0.3 - t_, e3=0.0, e4=0.4),
        "b": lambda t_: critpoints.NormalFormParams(e2=0.5 - t_, e3=0.0, e4=-1.0),
        "c": lambda t_: critpoints.NormalFormParams(e2=0.5 - t_, e3=0.02, e4=-1.0),
    }
    for tag, path in paths.items():
        result = critpoints.branch_sweep(path, (0.0, 0.6), 241)
        rows = []
        for t_, roots, orbits in zip(result.ts, result.axis_roots, result.biaxial):
            for x in roots:
                rows.append((t_, "uniaxial", x, 0.0))
            for X, Y in orbits:
                r = math.sqrt(X)
                alpha = math.acos(max(-1.0, min(1.0, Y / X ** 1.5)))
                rows.append((t_, "biaxial", r * math.cos(alpha / 3.0),
                             r * math.sin(alpha / 3.0)))
        files.append(write_csv(out / f"fig_sweep_{tag}.csv",
                               ["t", "branch", "x", "u"], rows))

    script = ["# gnuplot script for the emitted figure data",
              "set datafile separator ','",
              "set key autotitle columnhead"]
    for f in files:
        script.append(f"# plot '{f.name}' using 1:2 with points")
    (out / "plot.gp").write_text("\n".join(script) + "\n")
    print(f"figdata: wrote {len(files)} CSV files and plot.gp to {out}")
    return 0


# ------------------------------------------------------------------ driver

def build_parser():
    parser = argparse.ArgumentParser(
        prog="kkls",
        description="Invariant-theoretic analysis of the reduced mean-field "
                    "free energy for nematic liquid crystals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("molien", help="Molien series of the built-in actions")
    p.add_argument("--group", choices=["d3", "d3tilde", "d3xd3", "so3"],
                   required=True)
    p.add_argument("--max-degree", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("invariants", help="evaluate the Hilbert basis on points")
    p.add_argument("--points", required=True, help="CSV with columns s,p,d,c")
    p.add_argument("--out")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("entropy-coeffs", help="quadrature entropy coefficients")
    p.add_argument("--n-phi", type=int, default=24)
    p.add_argument("--n-beta", type=int, default=16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_entropy_coeffs)

    for name, func in (("classify", cmd_classify), ("solve4d", cmd_solve4d),
                       ("reduce", cmd_reduce), ("solve", cmd_solve),
                       ("bifset", cmd_bifset), ("census", cmd_census),
                       ("sweep", cmd_sweep)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("determinacy", help="window determinacy certificate")
    p.add_argument("--poly", required=True,
                   help="semicolon list of a,b,coeff triples for X^a Y^b")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_determinacy)

    p = sub.add_parser("versal", help="window versality certificate")
    p.add_argument("--poly", required=True)
    p.add_argument("--monomials", required=True,
                   help="semicolon list of a,b monomials")
    p.add_argument("--window", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_versal)

    p = sub.add_parser("spanning", help="conjugacy-action spanning evidence")
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spanning)

    p = sub.add_parser("figdata", help="emit point clouds for the figures")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_figdata)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
