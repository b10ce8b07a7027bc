"""Critical-point geometry of the reduced normal form.

The object of study is the triangle-group-invariant family

    P(X, Y) = e2*X + e3*Y + e4*X^2 + e5*X*Y + (e6 + m)*X^3 + e8*X^4 + n*Y^2

pulled back to the plane through X = x^2 + u^2, Y = x^3 - 3 x u^2.  Critical
points split into the axis family (roots of a sextic in x) and the biaxial
family (positive roots of a cubic in X that land strictly inside the image
region X^3 > Y^2).  The fold locus of the axis family is a swallowtail
section in the (e2, e3)-plane; the biaxial birth/fold locus is the bluebird,
with a boundary part B0 and a double-root segment B1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

REGION_EPS = 1e-10   # relative interiority margin for X^3 > Y^2


@dataclass(frozen=True)
class NormalFormParams:
    e2: float = 0.0
    e3: float = 0.0
    e4: float = 0.0
    e5: float = 0.0
    e6: float = 0.0
    e8: float = 0.0
    m: float = 1.0
    n: float = 1.0

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("the Y^2 coefficient n must be nonzero")

    def nondegenerate(self):
        return self.m * self.n * (self.m + self.n) != 0

    def p_value(self, X, Y):
        return (self.e2 * X + self.e3 * Y + self.e4 * X * X + self.e5 * X * Y
                + (self.e6 + self.m) * X ** 3 + self.e8 * X ** 4 + self.n * Y * Y)

    def p_x(self, X, Y):
        return (self.e2 + 2 * self.e4 * X + self.e5 * Y
                + 3 * (self.e6 + self.m) * X * X + 4 * self.e8 * X ** 3)

    def p_y(self, X, Y):
        return self.e3 + self.e5 * X + 2 * self.n * Y

    def q_value(self, x, u):
        X = x * x + u * u
        Y = x ** 3 - 3 * x * u * u
        return self.p_value(X, Y)

    def q_gradient(self, x, u):
        X = x * x + u * u
        Y = x ** 3 - 3 * x * u * u
        px, py = self.p_x(X, Y), self.p_y(X, Y)
        return np.array([px * 2 * x + py * 3 * (x * x - u * u),
                         px * 2 * u - py * 6 * x * u])

    def q_hessian(self, x, u):
        X = x * x + u * u
        Y = x ** 3 - 3 * x * u * u
        px, py = self.p_x(X, Y), self.p_y(X, Y)
        pxx = 2 * self.e4 + 6 * (self.e6 + self.m) * X + 12 * self.e8 * X * X
        pxy = self.e5
        pyy = 2 * self.n
        gx = np.array([2 * x, 2 * u])
        gy = np.array([3 * (x * x - u * u), -6 * x * u])
        hx = np.array([[2.0, 0.0], [0.0, 2.0]])
        hy = np.array([[6 * x, -6 * u], [-6 * u, -6 * x]])
        h = (pxx * np.outer(gx, gx) + pxy * (np.outer(gx, gy) + np.outer(gy, gx))
             + pyy * np.outer(gy, gy) + px * hx + py * hy)
        return h

    def axis_poly(self):
        """Coefficients (ascending in x) of F with p'(x) = x F(x)."""
        return np.array([2 * self.e2, 3 * self.e3, 4 * self.e4, 5 * self.e5,
                         6 * (self.m + self.n + self.e6), 0.0, 8 * self.e8])

    def biaxial_cubic(self):
        """Coefficients (ascending in X) of the circle-radius cubic."""
        n = self.n
        return np.array([2 * n * self.e2 - self.e3 * self.e5,
                         4 * n * self.e4 - self.e5 ** 2,
                         6 * n * (self.m + self.e6),
                         8 * n * self.e8])


def _real_roots(coeffs_ascending, imag_tol=3e-7, dedupe_tol=1e-9):
    """Real roots of a polynomial given ascending coefficients."""
    c = np.asarray(coeffs_ascending, dtype=float)
    nz = np.nonzero(np.abs(c) > 0)[0]
    if len(nz) == 0:
        return []
    c = c[: nz[-1] + 1]
    if len(c) == 1:
        return []
    roots = np.roots(c[::-1])
    scale = max(1.0, np.max(np.abs(roots.real))) if len(roots) else 1.0
    out = []
    for r in roots:
        if abs(r.imag) > imag_tol * scale:
            continue
        out.append(float(r.real))
    out.sort()
    merged = []
    for r in out:
        if merged and abs(r - merged[-1]) < dedupe_tol * max(1.0, abs(r)):
            continue
        merged.append(r)
    return merged


def _polish_root(coeffs_ascending, x0, iters=8):
    c = np.asarray(coeffs_ascending, dtype=float)
    d = np.polynomial.polynomial.polyder(c)
    x = x0
    for _ in range(iters):
        fx = np.polynomial.polynomial.polyval(x, c)
        dx = np.polynomial.polynomial.polyval(x, d)
        if dx == 0:
            break
        step = fx / dx
        if not np.isfinite(step) or abs(step) > 1.0:
            break
        x -= step
    return x


@dataclass
class UniaxialPoint:
    x: float
    axis_second_derivative: float   # p''(x) along the axis
    transverse_eig: float           # q_uu at (x, 0)
    classification: str             # min | max | saddle | degenerate


@dataclass
class BiaxialOrbit:
    X: float
    Y: float
    theta: float
    representatives: tuple          # the two points with angles +-theta
    classification: str


def _classify_pair(a, b, tol=1e-9):
    scale = max(abs(a), abs(b), 1.0)
    if min(abs(a), abs(b)) < tol * scale:
        return "degenerate"
    if a > 0 and b > 0:
        return "min"
    if a < 0 and b < 0:
        return "max"
    return "saddle"


def uniaxial_points(p: NormalFormParams, include_origin=True):
    """All axis critical points, classified along and across the axis."""
    coeffs = p.axis_poly()
    out = []
    if include_origin:
        h0 = p.q_hessian(0.0, 0.0)
        out.append(UniaxialPoint(
            x=0.0, axis_second_derivative=float(h0[0, 0]),
            transverse_eig=float(h0[1, 1]),
            classification=_classify_pair(h0[0, 0], h0[1, 1])))
    for r in _real_roots(coeffs):
        r = _polish_root(coeffs, r)
        if abs(r) < 1e-8:
            continue   # the origin is listed once, separately
        h = p.q_hessian(r, 0.0)
        out.append(UniaxialPoint(
            x=r, axis_second_derivative=float(h[0, 0]),
            transverse_eig=float(h[1, 1]),
            classification=_classify_pair(h[0, 0], h[1, 1])))
    return out


def classify_2d(p: NormalFormParams, x, u, tol=1e-9):
    """Morse type of the Hessian of the planar polynomial at (x, u)."""
    eigs = np.linalg.eigvalsh(p.q_hessian(x, u))
    return _classify_pair(eigs[0], eigs[1], tol)


def biaxial_points(p: NormalFormParams, boundary_eps=REGION_EPS):
    """Biaxial orbits: interior solutions of the two-equation critical system.

    Returns (orbits, boundary_hits); a root with X^3 - Y^2 inside the
    relative margin of zero counts as a boundary (axis-touching) hit, not a
    biaxial orbit.
    """
    orbits = []
    boundary = []
    for X in _real_roots(p.biaxial_cubic()):
        X = _polish_root(p.biaxial_cubic(), X)
        if X <= 0:
            continue
        Y = -(p.e3 + p.e5 * X) / (2 * p.n)
        margin = X ** 3 - Y * Y
        if margin <= boundary_eps * X ** 3:
            if abs(margin) <= boundary_eps * X ** 3:
                boundary.append((X, Y))
            continue
        r = math.sqrt(X)
        alpha = math.acos(max(-1.0, min(1.0, Y / X ** 1.5)))
        theta = alpha / 3.0
        pt = (r * math.cos(theta), r * math.sin(theta))
        orbits.append(BiaxialOrbit(
            X=X, Y=Y, theta=theta,
            representatives=(pt, (pt[0], -pt[1])),
            classification=classify_2d(p, *pt)))
    return orbits, boundary


def shift_x0(p: NormalFormParams):
    """Translate the axis critical equation to remove its cubic term.

    The translation x -> x - x0 with x0 = (5/24) e5 / (m + n + e6) acts on
    the critical polynomial F (the p'(x)/x sextic), shifting its roots by
    exactly x0; it is not a symmetry of the planar normal form, only of the
    axis analysis.  The new e5 slot vanishes identically when e8 = 0 and to
    first order otherwise.  Returns (params, dropped) where ``dropped``
    records x0 and the translated x^5 coefficient, which has no slot in the
    critical equation (it is second order, proportional to e8 * e5).
    """
    big_m = p.m + p.n + p.e6
    if big_m == 0:
        raise ValueError("shift_x0 needs m + n + e6 != 0")
    x0 = 5.0 * p.e5 / (24.0 * big_m)
    if x0 == 0.0:
        return p, {"x0": 0.0, "x5_coefficient": 0.0}
    shifted = _translate_poly(p.axis_poly(), -x0)
    params = NormalFormParams(
        e2=shifted[0] / 2.0, e3=shifted[1] / 3.0, e4=shifted[2] / 4.0,
        e5=shifted[3] / 5.0, e6=shifted[4] / 6.0 - p.m - p.n,
        e8=shifted[6] / 8.0, m=p.m, n=p.n)
    dropped = {"x0": x0, "x5_coefficient": shifted[5]}
    return params, dropped


def _translate_poly(coeffs_ascending, shift):
    """Coefficients of p(x + shift)."""
    c = np.asarray(coeffs_ascending, dtype=float)
    out = np.zeros_like(c)
    for k, ck in enumerate(c):
        if ck == 0.0:
            continue
        for j in range(k + 1):
            out[j] += ck * math.comb(k, j) * shift ** (k - j)
    return out


# -------------------------------------------------------- bifurcation sets

@dataclass
class BifurcationCurve:
    kind: str                      # swallowtail_S | bluebird_B0 | bluebird_B1
    points: list                   # ordered (e2, e3) pairs
    fixed: dict
    params: list = field(default_factory=list)   # curve parameter per point
    cusps: list = field(default_factory=list)


def swallowtail_section(e4, e5, m, n, x_range=(-1.5, 1.5), num=1201, e6=0.0, e8=0.0):
    """Axis double-root locus, parametrized by the double-root location x."""
    big_m = m + n + e6
    xs = np.linspace(x_range[0], x_range[1], num)
    pts, par = [], []
    cusps = []
    prev_fpp = None
    for x in xs:
        e3 = -(8 * e4 * x + 15 * e5 * x ** 2 + 24 * big_m * x ** 3
               + 48 * e8 * x ** 5) / 3.0
        e2 = -(3 * e3 * x + 4 * e4 * x ** 2 + 5 * e5 * x ** 3
               + 6 * big_m * x ** 4 + 8 * e8 * x ** 6) / 2.0
        pts.append((e2, e3))
        par.append(x)
        fpp = 8 * e4 + 30 * e5 * x + 72 * big_m * x ** 2 + 240 * e8 * x ** 4
        if prev_fpp is not None and prev_fpp * fpp < 0:
            cusps.append((e2, e3))
        prev_fpp = fpp
    return BifurcationCurve("swallowtail_S", pts,
                            {"e4": e4, "e5": e5, "m": m, "n": n,
                             "e6": e6, "e8": e8},
                            params=par, cusps=cusps)


def swallowtail_tangent(x, e4, e5, m, n, e6=0.0, e8=0.0):
    """Tangent direction d(e2, e3)/dx of the fold curve at parameter x."""
    big_m = m + n + e6
    de3 = -(8 * e4 + 30 * e5 * x + 72 * big_m * x ** 2 + 240 * e8 * x ** 4) / 3.0
    de2 = -1.5 * x * de3     # F'(x) = 0 along the curve kills the other terms
    return np.array([de2, de3])


def bluebird_section(e4, e5, m, n, x_max=1.5, num=1201):
    """Biaxial bifurcation set for the local normal form (e6 = e8 = 0).

    B0 (one curve per sign of Y): the biaxial circle radius meets the image
    boundary Y^2 = X^3, i.e. birth of a biaxial orbit from the axis.
    B1: double root of the radius quadratic, i.e. simultaneous creation of
    two biaxial orbits; a segment clipped to the interior condition.
    """
    if n == 0:
        raise ValueError("bluebird_section needs n != 0")
    curves = []
    xs = np.linspace(0.0, x_max, num)[1:]
    for sign in (+1.0, -1.0):
        pts, par = [], []
        for X in xs:
            e3 = -2.0 * n * sign * X ** 1.5 - e5 * X
            e2 = (e3 * e5 - 6 * n * m * X * X - (4 * n * e4 - e5 ** 2) * X) / (2 * n)
            pts.append((e2, e3))
            par.append(X)
        kind = "bluebird_B0"
        curves.append(BifurcationCurve(kind, pts,
                                       {"e4": e4, "e5": e5, "m": m, "n": n,
                                        "sign": sign}, params=par))
    # B1: discriminant of 6nm X^2 + (4n e4 - e5^2) X + (2n e2 - e3 e5)
    x_star = -(4 * n * e4 - e5 ** 2) / (12 * n * m)
    if x_star > 0:
        e3_max = 2 * abs(n) * x_star ** 1.5
        e3s = np.linspace(-e3_max, e3_max, num)
        pts, par = [], []
        for e3 in e3s:
            y_star = -(e3 + e5 * x_star) / (2 * n)
            if x_star ** 3 - y_star ** 2 <= 0:
                continue
            e2 = (e3 * e5 + (4 * n * e4 - e5 ** 2) ** 2 / (24 * n * m)) / (2 * n)
            pts.append((e2, e3))
            par.append(e3)
        curves.append(BifurcationCurve("bluebird_B1", pts,
                                       {"e4": e4, "e5": e5, "m": m, "n": n,
                                        "X_star": x_star}, params=par))
    return curves


def bluebird_b0_tangent(X, sign, e4, e5, m, n):
    """Tangent direction d(e2, e3)/dX of the B0 curve at radius X."""
    de3 = -3.0 * n * sign * math.sqrt(X) - e5
    de2 = (de3 * e5 - 12 * n * m * X - (4 * n * e4 - e5 ** 2)) / (2 * n)
    return np.array([de2, de3])


# ------------------------------------------------------------------ census

@dataclass
class CensusCell:
    e2: float
    e3: float
    uniaxial_pts: int        # distinct nonzero axis roots
    biaxial_orbits: int
    total_critical_pts: int  # 1 + 3*uniaxial + 6*biaxial


def census_at(p: NormalFormParams):
    uni = [pt for pt in uniaxial_points(p, include_origin=False)]
    orbits, _ = biaxial_points(p)
    n_uni, n_biax = len(uni), len(orbits)
    return CensusCell(p.e2, p.e3, n_uni, n_biax, 1 + 3 * n_uni + 6 * n_biax)


def region_census(e4, e5, m, n, e2_values, e3_values, e6=0.0, e8=0.0):
    """Census over a grid of (e2, e3) cells; rows follow e2, columns e3."""
    rows = []
    for e2 in e2_values:
        row = []
        for e3 in e3_values:
            p = NormalFormParams(e2=e2, e3=e3, e4=e4, e5=e5, e6=e6, e8=e8,
                                 m=m, n=n)
            row.append(census_at(p))
        rows.append(row)
    return rows


# ------------------------------------------------------------------ sweeps

@dataclass
class SweepEvent:
    t: float
    kind: str
    detail: str
    changes: tuple       # (delta axis roots, delta biaxial orbits, e2 flip)
    ambiguous: bool = False
    hint: str = ""


@dataclass
class SweepResult:
    ts: list
    census: list                 # CensusCell per step
    axis_roots: list             # sorted nonzero roots per step
    biaxial: list                # (X, Y) pairs per step
    events: list


def _signature(p: NormalFormParams):
    uni = [pt.x for pt in uniaxial_points(p, include_origin=False)]
    orbits, _ = biaxial_points(p)
    return (len(uni), len(orbits), bool(p.e2 > 0))


def _classify_event(sig0, sig1):
    du = sig1[0] - sig0[0]
    db = sig1[1] - sig0[1]
    flip = sig0[2] != sig1[2]
    parts = []
    if du == 2:
        parts.append("creation of a uniaxial pair")
    elif du == -2:
        parts.append("annihilation of a uniaxial pair")
    elif du == 4:
        parts.append("creation of two uniaxial pairs")
    elif du == -4:
        parts.append("annihilation of two uniaxial pairs")
    elif du != 0:
        parts.append(f"axis root count change {du:+d}")
    if db == 2:
        parts.append("creation of two biaxial pairs")
    elif db == -2:
        parts.append("annihilation of two biaxial pairs")
    elif db == 1:
        parts.append("biaxial pair branching from a uniaxial state")
    elif db == -1:
        parts.append("annihilation of a biaxial pair at a uniaxial state")
    elif db != 0:
        parts.append(f"biaxial orbit count change {db:+d}")
    if flip:
        parts.append("stability change of the origin")
    if not parts:
        parts.append("unclassified transition")
    if du == 2 and db == 1 and flip:
        kind = "origin_branching"
    elif du == -2 and db == -1 and flip:
        kind = "origin_annihilation"
    elif du and db:
        kind = "simultaneous"
    elif abs(du) == 4:
        kind = "uniaxial_double_fold"
    elif du:
        kind = "uniaxial_fold"
    elif db == 1 or db == -1:
        kind = "biaxial_pitchfork"
    elif db:
        kind = "biaxial_double_fold"
    elif flip:
        kind = "transcritical_origin"
    else:
        kind = "unknown"
    return kind, "; ".join(parts), (du, db, flip)


def branch_sweep(path, t_range, steps, refine_tol=None):
    """Sweep a parameter path, recording branches and localized events.

    ``path`` maps a scalar t to NormalFormParams.  Events are detected from
    census-signature changes between consecutive steps, localized by
    bisection, and then clustered: raw transitions closer together than the
    flicker scale (root counting is unreliable within ~1e-8 of a fold) are
    reported as one event with the net signature change.  A cluster wider
    than the flicker scale is flagged ambiguous with a refinement hint.
    """
    t0, t1 = t_range
    ts = np.linspace(t0, t1, steps)
    span = abs(t1 - t0)
    if refine_tol is None:
        refine_tol = span * 1e-12
    flicker = span * 1e-4    # merge window; root counting flickers near folds
    census = []
    axis = []
    biax = []
    sigs = []
    for t in ts:
        p = path(t)
        census.append(census_at(p))
        axis.append(sorted(pt.x for pt in uniaxial_points(p, include_origin=False)))
        orbits, _ = biaxial_points(p)
        biax.append([(o.X, o.Y) for o in orbits])
        sigs.append(_signature(p))

    raw = []

    def refine(ta, tb, sa, sb):
        while tb - ta > refine_tol:
            tm = 0.5 * (ta + tb)
            sm = _signature(path(tm))
            if sm == sa:
                ta = tm
            elif sm == sb:
                tb = tm
            else:
                refine(ta, tm, sa, sm)
                refine(tm, tb, sm, sb)
                return
        raw.append((0.5 * (ta + tb), sa, sb))

    for i in range(len(ts) - 1):
        if sigs[i] != sigs[i + 1]:
            refine(ts[i], ts[i + 1], sigs[i], sigs[i + 1])
    raw.sort(key=lambda r: r[0])

    events = []
    i = 0
    while i < len(raw):
        j = i
        while j + 1 < len(raw) and raw[j + 1][0] - raw[j][0] < flicker:
            j += 1
        t_mid = 0.5 * (raw[i][0] + raw[j][0])
        sa, sb = raw[i][1], raw[j][2]
        kind, detail, changes = _classify_event(sa, sb)
        width = raw[j][0] - raw[i][0]
        ambiguous = j > i and width > span * 1e-6
        hint = ("transitions merged over a wide window; rerun with more steps "
                "or smaller refine_tol" if ambiguous else "")
        events.append(SweepEvent(t_mid, kind, detail, changes, ambiguous, hint))
        i = j + 1
    return SweepResult(list(ts), census, axis, biax, events)


# --------------------------------------------------------------- tangency

@dataclass
class TangencyReport:
    contact_point: tuple
    contact_x: float
    contact_angle: float
    fold_residual: float
    boundary_residual: float
    transversal_point: tuple | None
    transversal_angle: float | None


def _angle_between(v, w):
    v = v / np.linalg.norm(v)
    w = w / np.linalg.norm(w)
    cross = abs(v[0] * w[1] - v[1] * w[0])
    dot = abs(float(v @ w))
    return math.atan2(cross, dot)


def tangency_check(e4, e5, m, n):
    """Contact of the swallowtail and bluebird sets; returns angle evidence.

    The contact is the simultaneous axis-fold / biaxial-birth point: the two
    critical-system equations hold on the axis and the fold condition holds
    there too.  A transversal crossing of the same two curves, away from the
    contact, is also located for contrast.
    """
    if e4 >= 0:
        raise ValueError("tangency_check expects e4 < 0 (folded regime)")
    # nonzero contact roots of (24m + 18n) x^2 + 12 e5 x + 8 e4 = 0
    a, b, c = 24 * m + 18 * n, 12 * e5, 8 * e4
    disc = b * b - 4 * a * c
    if disc <= 0:
        raise ValueError("no real contact point for these parameters")
    x_star = (-b + math.sqrt(disc)) / (2 * a)
    if x_star == 0:
        x_star = (-b - math.sqrt(disc)) / (2 * a)
    e3c = -e5 * x_star ** 2 - 2 * n * x_star ** 3
    e2c = -2 * e4 * x_star ** 2 - e5 * x_star ** 3 - 3 * m * x_star ** 4
    p = NormalFormParams(e2=e2c, e3=e3c, e4=e4, e5=e5, m=m, n=n)
    coeffs = p.axis_poly()
    d = np.polynomial.polynomial.polyder(coeffs)
    fold_residual = abs(float(np.polynomial.polynomial.polyval(x_star, coeffs))) \
        + abs(float(np.polynomial.polynomial.polyval(x_star, d)))
    X_star = x_star ** 2
    Y_star = -(e3c + e5 * X_star) / (2 * n)
    boundary_residual = abs(X_star ** 3 - Y_star ** 2)

    sign = 1.0 if x_star > 0 else -1.0
    t_s = swallowtail_tangent(x_star, e4, e5, m, n)
    t_b = bluebird_b0_tangent(X_star, sign, e4, e5, m, n)
    contact_angle = _angle_between(t_s, t_b)

    transversal = _transversal_crossing(e4, e5, m, n, exclude_x=abs(x_star))
    if transversal is None:
        t_pt, t_angle = None, None
    else:
        t_pt, t_angle = transversal
    return TangencyReport(
        contact_point=(e2c, e3c), contact_x=x_star,
        contact_angle=contact_angle,
        fold_residual=fold_residual, boundary_residual=boundary_residual,
        transversal_point=t_pt, transversal_angle=t_angle)


def _transversal_crossing(e4, e5, m, n, exclude_x, num=4001):
    """A generic crossing of the fold curve and the B0 branch, by bisection
    on the signed distance of the swallowtail point from the B0 condition."""
    big_m = m + n
    best = None

    def b0_gap(x, sign):
        # e2 difference between the swallowtail point at x and the B0 curve
        # at X = x^2 with the given branch sign
        e3 = -(8 * e4 * x + 15 * e5 * x ** 2 + 24 * big_m * x ** 3) / 3.0
        e2 = -(3 * e3 * x + 4 * e4 * x ** 2 + 5 * e5 * x ** 3
               + 6 * big_m * x ** 4) / 2.0
        X = _b0_radius_for_e3(e3, sign, e5, n)
        if X is None:
            return None, None
        e2_b = (e3 * e5 - 6 * n * m * X * X - (4 * n * e4 - e5 ** 2) * X) / (2 * n)
        return e2 - e2_b, (e2, e3)

    for sign in (+1.0, -1.0):
        xs = np.linspace(-1.5, 1.5, num)
        prev = None
        for x in xs:
            if abs(x) < 1e-6:
                prev = None
                continue
            gap, pt = b0_gap(x, sign)
            if gap is None:
                prev = None
                continue
            if prev is not None and prev[0] * gap < 0:
                xa, xb = prev[1], x
                for _ in range(80):
                    xm = 0.5 * (xa + xb)
                    gm, _ = b0_gap(xm, sign)
                    if gm is None:
                        break
                    if prev[0] * gm < 0:
                        xb = xm
                    else:
                        xa = xm
                xm = 0.5 * (xa + xb)
                gm, pm = b0_gap(xm, sign)
                if gm is not None and abs(abs(xm) - exclude_x) > 1e-3:
                    X = _b0_radius_for_e3(pm[1], sign, e5, n)
                    t_s = swallowtail_tangent(xm, e4, e5, m, n)
                    t_b = bluebird_b0_tangent(X, sign, e4, e5, m, n)
                    angle = _angle_between(t_s, t_b)
                    if best is None or angle > best[1]:
                        best = (pm, angle)
            prev = (gap, x)
    return best


def _b0_radius_for_e3(e3, sign, e5, n):
    """Invert e3 = -2 n sign X^{3/2} - e5 X for X > 0 (bisection)."""
    def g(X):
        return -2.0 * n * sign * X ** 1.5 - e5 * X - e3

    lo, hi = 1e-12, 10.0
    if g(lo) * g(hi) > 0:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(lo) * g(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -------------------------------------------------- brute-force reference

def dense_grid_critical_points(p: NormalFormParams, radius=2.0, grid_n=41,
                               tol=1e-12, dedupe_tol=1e-7):
    """Independent critical-point finder: dense seeding plus plain Newton
    on the planar gradient, vectorized over all seeds.

    Returns points with |(x, u)| <= radius.  Serves as the oracle against
    the root-based solvers; shares no code with them beyond the polynomial.
    """
    lin = np.linspace(-radius, radius, grid_n)
    gx, gu = np.meshgrid(lin, lin)
    pts = np.column_stack([gx.ravel(), gu.ravel()])
    pts = np.vstack([pts, [[0.0, 0.0]]])
    x, u = pts[:, 0].copy(), pts[:, 1].copy()
    for _ in range(100):
        X = x * x + u * u
        Y = x ** 3 - 3 * x * u * u
        px = p.p_x(X, Y)
        py = p.p_y(X, Y)
        g1 = px * 2 * x + py * 3 * (x * x - u * u)
        g2 = px * 2 * u - py * 6 * x * u
        pxx = 2 * p.e4 + 6 * (p.e6 + p.m) * X + 12 * p.e8 * X * X
        h11 = (pxx * 4 * x * x + 2 * p.e5 * 2 * x * 3 * (x * x - u * u)
               + 2 * p.n * 9 * (x * x - u * u) ** 2 + px * 2 + py * 6 * x)
        h22 = (pxx * 4 * u * u + 2 * p.e5 * 2 * u * (-6 * x * u)
               + 2 * p.n * 36 * x * x * u * u + px * 2 - py * 6 * x)
        h12 = (pxx * 4 * x * u + p.e5 * (2 * x * (-6 * x * u)
               + 2 * u * 3 * (x * x - u * u))
               + 2 * p.n * 3 * (x * x - u * u) * (-6 * x * u) - py * 6 * u)
        det = h11 * h22 - h12 * h12
        bad = np.abs(det) < 1e-300
        det = np.where(bad, 1.0, det)
        sx = (h22 * g1 - h12 * g2) / det
        su = (h11 * g2 - h12 * g1) / det
        step = np.sqrt(sx * sx + su * su)
        clip = np.where(step > 0.5, 0.5 / np.maximum(step, 1e-300), 1.0)
        x = x - sx * clip
        u = u - su * clip
        keep = np.isfinite(x) & np.isfinite(u) & (np.abs(x) < 50) & (np.abs(u) < 50)
        x = np.where(keep, x, np.nan)
        u = np.where(keep, u, np.nan)
    out = []
    for xi, ui in zip(x, u):
        if not (np.isfinite(xi) and np.isfinite(ui)):
            continue
        if xi * xi + ui * ui > radius * radius:
            continue
        if np.linalg.norm(p.q_gradient(xi, ui)) > 1e-9:
            continue
        if not any((xi - a) ** 2 + (ui - b) ** 2 < dedupe_tol ** 2 for a, b in out):
            out.append((float(xi), float(ui)))
    return sorted(out)


def solver_critical_points(p: NormalFormParams, radius=2.0):
    """Critical points within the disc from the uniaxial/biaxial solvers,
    expanded to explicit planar points (axis roots rotated three ways,
    biaxial orbits as all six points)."""
    pts = [(0.0, 0.0)]
    for pt in uniaxial_points(p, include_origin=False):
        for k in range(3):
            th = 2.0 * math.pi * k / 3.0
            pts.append((pt.x * math.cos(th), pt.x * math.sin(th)))
    orbits, _ = biaxial_points(p)
    for orb in orbits:
        for rep in orb.representatives:
            for k in range(3):
                th = 2.0 * math.pi * k / 3.0
                c, s = math.cos(th), math.sin(th)
                pts.append((rep[0] * c - rep[1] * s, rep[0] * s + rep[1] * c))
    out = [q for q in pts if q[0] ** 2 + q[1] ** 2 <= radius * radius]
    return sorted(out)
