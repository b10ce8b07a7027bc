"""Symmetry-preserving reduction of the free energy at an instability point.

On the cone alpha*beta = gamma^2 the quadratic form drops rank; after a
rotation of coordinates depending on the cone angle xi the quadratic part
becomes 2*mu*(y^2 + v^2) and a cubic shear of (y, v) (completing the square)
removes every term linear in (y, v) through degree 5.  What remains on the
kernel plane is a triangle-group-invariant residual

    q(x, u) = e3*Y + e4*X^2 + e5*X*Y + m*X^3 + n*Y^2 + O(7)

whose coefficients are explicit in the original ones.  ``verify_reduction``
re-derives q by exact rational arithmetic and checks the coefficient map
symbol by symbol; trigonometric data enters through exact on-circle pairs
(cos xi, sin xi) so the whole pipeline stays in Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .invariants import LandauCoeffs
from .landau import free_energy
from .polyser import RATIONAL, TruncSeries, invert_map


@dataclass
class ReducedCoeffs:
    """Residual coefficients at a cone point; m, n are the X^3, Y^2 slots."""

    e2: float
    e3: float
    e4: float
    e5: float
    m: float
    n: float
    sigma: float
    C: float    # cos(3 xi)
    S: float    # sin(3 xi)


def triple_angle(c, s):
    """(cos 3xi, sin 3xi) from (cos xi, sin xi); exact for exact inputs."""
    return 4 * c * c * c - 3 * c, 3 * s - 4 * s * s * s


def pythagorean_pair(t):
    """Rational (cos, sin) on the unit circle from the tangent half-angle."""
    t = Fraction(t)
    den = 1 + t * t
    return (1 - t * t) / den, 2 * t / den


def residual_coeffs(lc: LandauCoeffs, mu, cos_xi, sin_xi, e2=0):
    """Coefficient map of the reduction at cone angle xi.

    Exact when all inputs are rational.  The degree-6 slots include the
    contribution of the a6 coefficient, which drops out only when
    cos(3 xi) = 0.
    """
    if mu == 0:
        raise ValueError("the reduction is not defined at the cone vertex (mu = 0)")
    c3, s3 = triple_angle(cos_xi, sin_xi)
    sigma = -3 * lc.a3 / (4 * mu)
    c2, s2 = c3 * c3, s3 * s3
    e3 = -lc.a3 * s3
    e4 = 2 * mu * c2 * sigma ** 2 + 3 * lc.a3 * c2 * sigma + lc.b4
    e5 = 3 * lc.a3 * s3 * c2 * sigma ** 2 - lc.b5 * s3
    m = (8 * mu * s2 * c2 * sigma ** 4
         + lc.a3 * (12 * s2 * c2 + c2 * c2) * sigma ** 3
         + (2 * lc.b4 - 4 * lc.a4) * c2 * sigma ** 2
         + (2 * lc.a5 + 3 * lc.b5) * c2 * sigma
         + lc.b6 + lc.a6 * c2)
    n = (-2 * lc.a3 * c2 * c2 * sigma ** 3
         + 4 * lc.a4 * c2 * sigma ** 2
         - 2 * lc.a5 * c2 * sigma
         + lc.c6 * s2 - lc.a6 * c2)
    return ReducedCoeffs(e2=e2, e3=e3, e4=e4, e5=e5, m=m, n=n,
                         sigma=sigma, C=c3, S=s3)


def printed_formula_variants(lc: LandauCoeffs, mu, cos_xi, sin_xi):
    """The two published closed forms for e5 and m, for cross-checking.

    The raw and sigma-simplified printed forms disagree (a sign on the
    middle e5 term and the a4 multiple in m), and the published m, n slots
    both omit the a6 contribution entirely; the exact pipeline in
    ``verify_reduction`` adjudicates.  Returned as a dict of candidates.
    """
    c3, s3 = triple_angle(cos_xi, sin_xi)
    sigma = -3 * lc.a3 / (4 * mu)
    c2, s2 = c3 * c3, s3 * s3
    return {
        "e5_raw": 8 * mu * s3 * c2 * sigma ** 3 - 9 * lc.a3 * s3 * c2 * sigma ** 2
                  - lc.b5 * s3,
        "e5_simplified": 3 * lc.a3 * s3 * c2 * sigma ** 2 - lc.b5 * s3,
        "m_raw": (8 * mu * s2 * c2 * sigma ** 4
                  + lc.a3 * (12 * s2 * c2 + c2 * c2) * sigma ** 3
                  + 2 * lc.b4 * c2 * sigma ** 2 - 4 * lc.a4 * c2 * sigma ** 2
                  + (2 * lc.a5 + 3 * lc.b5) * c2 * sigma + lc.b6),
        "m_simplified": (lc.a3 * (6 * s2 + c2) * c2 * sigma ** 3
                         + 2 * (lc.b4 - lc.a4) * c2 * sigma ** 2
                         + (2 * lc.a5 + 3 * lc.b5) * c2 * sigma + lc.b6),
        "n_printed": (-2 * lc.a3 * c2 * c2 * sigma ** 3
                      + 4 * lc.a4 * c2 * sigma ** 2
                      - 2 * lc.a5 * c2 * sigma + lc.c6 * s2),
    }


def e2_from_perturbation(t, rho, U0):
    """Kernel-direction quadratic coefficient for a perturbation (t, rho)
    of (temperature, circle radius) off a cone point."""
    return 2.5 * t - (math.sqrt(3.0) / (4.0 * math.sqrt(2.0))) * U0 * rho


def rotation_images(cos_xi, sin_xi, cap=6, kind=RATIONAL):
    """Images of (s, p, d, c) as linear series in the rotated (x, y, u, v).

    s = sin*x + cos*y, d = -cos*x + sin*y, p = sin*u + cos*v,
    c = -cos*u + sin*v.
    """
    x, y, u, v = TruncSeries.variables(4, cap, kind)
    s_img = x.scale(sin_xi) + y.scale(cos_xi)
    d_img = x.scale(-cos_xi) + y.scale(sin_xi)
    p_img = u.scale(sin_xi) + v.scale(cos_xi)
    c_img = u.scale(-cos_xi) + v.scale(sin_xi)
    return [s_img, p_img, d_img, c_img]


def rotate_coords(xi):
    """Orthogonal 4x4 matrix sending (x, y, u, v) to (s, d, p, c)."""
    c, s = math.cos(xi), math.sin(xi)
    return np.array([[s, c, 0, 0],
                     [-c, s, 0, 0],
                     [0, 0, s, c],
                     [0, 0, -c, s]])


def completing_square_images(sigma, cos3xi, sin3xi, cap=6, kind=RATIONAL):
    """The cubic shear (x, y, u, v) -> (x, y + phi_y, u, v + phi_v).

    phi = sigma*C*(x^2 - u^2, -2xu) + 2*sigma^2*S*C*(x^2 + u^2)*(x, u); the
    map is the identity to first order and commutes with the simultaneous
    triangle-group rotation of (x, u) and (y, v).
    """
    x, y, u, v = TruncSeries.variables(4, cap, kind)
    a = sigma * cos3xi
    b = 2 * sigma * sigma * sin3xi * cos3xi
    xx_uu = x * x - u * u
    r2 = x * x + u * u
    phi_y = xx_uu.scale(a) + (r2 * x).scale(b)
    phi_v = (x * u).scale(-2 * a) + (r2 * u).scale(b)
    return [x, y + phi_y, u, v + phi_v]


@dataclass
class ReductionReport:
    max_mixed_coeff: float
    residual_match_error: float
    mixed_offenders: list
    quadratic_ok: bool
    quartic_shear_residual_shift: float
    residual_series: TruncSeries
    reduced: ReducedCoeffs


def _split_parts(full, mu):
    """Sort the transformed series into residual / offender / quadratic data."""
    offenders = []
    quadratic_ok = True
    residual = {}
    for exps, coeff in full.coeffs.items():
        x_e, y_e, u_e, v_e = exps
        w_degree = y_e + v_e
        total = sum(exps)
        if w_degree == 0:
            residual[(x_e, u_e)] = coeff
        elif total == 2:
            expected = 2 * mu if (y_e == 2 or v_e == 2) else 0
            if coeff != expected:
                quadratic_ok = False
                offenders.append((exps, coeff))
        elif w_degree == 1 and total <= 5:
            offenders.append((exps, coeff))
    return residual, offenders, quadratic_ok


def verify_reduction(lc: LandauCoeffs, mu, cos_xi, sin_xi):
    """Exact end-to-end check of the reduction at one cone point.

    Builds the free energy with the on-cone quadratic part
    (alpha, beta, gamma) = 2*mu*(cos^2, sin^2, cos*sin)(xi), rotates, and
    applies the inverse of the quadratic+cubic shear.  That shear removes
    every monomial of degree <= 4 that is linear in (y, v); the degree-5
    linear stragglers are then removed by the induced quartic shear
    phi_4 = (straggler polynomial)/(4 mu), and the check asserts that doing
    so leaves the pure-(x, u) residual unchanged -- the cancellation that
    justifies stopping the explicit map at degree 3.  Finally the residual
    through degree 6 is compared against ``residual_coeffs`` exactly.
    All arithmetic is rational: reported errors are exact zeros or genuine
    mismatches.
    """
    mu = Fraction(mu)
    cos_xi, sin_xi = Fraction(cos_xi), Fraction(sin_xi)
    if cos_xi * cos_xi + sin_xi * sin_xi != 1:
        raise ValueError("(cos_xi, sin_xi) must lie exactly on the unit circle")
    lc_full = LandauCoeffs(**{**lc.as_dict(),
                              "alpha": 2 * mu * cos_xi * cos_xi,
                              "beta": 2 * mu * sin_xi * sin_xi,
                              "gamma": 2 * mu * cos_xi * sin_xi})
    f = free_energy(lc_full)
    rotated = f.substitute(rotation_images(cos_xi, sin_xi))
    reduced = residual_coeffs(lc, mu, cos_xi, sin_xi)
    shear = completing_square_images(reduced.sigma, reduced.C, reduced.S)
    full1 = rotated.substitute(invert_map(shear))
    residual1, offenders1, quadratic_ok = _split_parts(full1, mu)
    low_offenders = [(e, c) for e, c in offenders1 if sum(e) <= 4]

    # quartic shear from the degree-5 stragglers, then redo the substitution
    x, y, u, v = TruncSeries.variables(4, 6)
    phi4_y = TruncSeries.zero(4, 6)
    phi4_v = TruncSeries.zero(4, 6)
    for (x_e, y_e, u_e, v_e), coeff in offenders1:
        if sum((x_e, y_e, u_e, v_e)) != 5:
            continue
        mono = TruncSeries(4, 6, {(x_e, 0, u_e, 0): coeff / (4 * mu)})
        if y_e == 1:
            phi4_y = phi4_y + mono
        else:
            phi4_v = phi4_v + mono
    shear4 = [shear[0], shear[1] + phi4_y, shear[2], shear[3] + phi4_v]
    full2 = rotated.substitute(invert_map(shear4))
    residual2, offenders2, quadratic_ok2 = _split_parts(full2, mu)

    max_mixed = max((abs(c) for _, c in offenders2), default=Fraction(0))
    shift = Fraction(0)
    for key in set(residual1) | set(residual2):
        diff = abs(residual1.get(key, Fraction(0)) - residual2.get(key, Fraction(0)))
        shift = max(shift, diff)

    # predicted residual in monomials of (x, u)
    x2, u2 = TruncSeries.variables(2, 6)
    big_x = x2 * x2 + u2 * u2
    big_y = x2 ** 3 - (x2 * u2 * u2).scale(3)
    predicted = (big_y.scale(reduced.e3) + (big_x * big_x).scale(reduced.e4)
                 + (big_x * big_y).scale(reduced.e5)
                 + (big_x ** 3).scale(reduced.m) + (big_y * big_y).scale(reduced.n))
    match_err = Fraction(0)
    keys = set(residual2) | set((e[0], e[1]) for e in predicted.coeffs)
    for key in keys:
        diff = abs(residual2.get(key, Fraction(0)) - predicted.coeff(key))
        if diff > match_err:
            match_err = diff
    return ReductionReport(
        max_mixed_coeff=float(max_mixed),
        residual_match_error=float(match_err),
        mixed_offenders=low_offenders + offenders2,
        quadratic_ok=quadratic_ok and quadratic_ok2,
        quartic_shear_residual_shift=float(shift),
        residual_series=TruncSeries(2, 6, residual2),
        reduced=reduced)
