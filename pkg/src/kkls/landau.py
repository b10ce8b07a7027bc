"""Degree-6 free energy on the four order parameters.

Assembles H - T S from coefficient data, maps the physical parameters
(T, U0, lambda) to the quadratic coefficients, classifies stability of the
isotropic state against the cone alpha*beta = gamma^2, and finds critical
points both by Newton iteration on the polynomial gradient and through the
self-consistency fixed-point formulation B W(eta) = kT eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import entropy as entropy_mod
from .groupact import d3tilde_elements
from .invariants import LandauCoeffs, linear_basis_series
from .polyser import FLOAT, RATIONAL, TruncSeries

STABLE = "stable"
MARGINAL = "marginal"
SADDLE_2_2 = "saddle_2_2"
UNSTABLE_4 = "unstable_4"


@dataclass
class ConeParams:
    """Physical parameters (T, U0, lambda) with derived cone data."""

    T: float
    U0: float
    lam: tuple[float, float, float]
    xi: float | None = None

    def __post_init__(self):
        if abs(sum(self.lam) - 1.0) > 1e-12:
            raise ValueError("lambda components must sum to 1")

    @property
    def mu(self):
        return (10.0 * self.T - self.U0) / 4.0

    @property
    def R_T(self):
        return math.sqrt(2.0 / 3.0) * (10.0 * self.T / self.U0 - 1.0)


def coeffs_from_Tlambda(cone: ConeParams):
    """Quadratic coefficients (alpha, beta, gamma) of the free energy."""
    t, u0 = cone.T, cone.U0
    l1, l2, l3 = cone.lam
    alpha = 2.5 * t - 0.5 * u0 * (0.25 * l1 + 0.25 * l2 + l3)
    beta = 2.5 * t - 0.375 * u0 * (l1 + l2)
    gamma = -(math.sqrt(3.0) / 8.0) * u0 * (l1 - l2)
    return alpha, beta, gamma


def cone_point(T, xi, U0):
    """The lambda on the instability circle at temperature T and angle xi."""
    if T < U0 / 10.0:
        raise ValueError("the instability circle exists only for T >= U0/10")
    r = math.sqrt(2.0 / 3.0) * (10.0 * T / U0 - 1.0)
    third = 1.0 / 3.0
    lam = (third + r * math.sqrt(2.0 / 3.0) * math.cos(2.0 * xi + math.pi / 3.0),
           third + r * math.sqrt(2.0 / 3.0) * math.cos(2.0 * xi - math.pi / 3.0),
           third - r * math.sqrt(2.0 / 3.0) * math.cos(2.0 * xi))
    return ConeParams(T=T, U0=U0, lam=lam, xi=xi)


def stability_classify(alpha, beta, gamma, tol=1e-12):
    """Stability of the isotropic state from the doubled 2x2 Hessian block."""
    det = alpha * beta - gamma * gamma
    scale = max(abs(alpha), abs(beta), abs(gamma), 1.0) ** 2
    if abs(det) <= tol * scale:
        return MARGINAL
    if det < 0:
        return SADDLE_2_2
    return STABLE if alpha + beta > 0 else UNSTABLE_4


def free_energy(lc: LandauCoeffs, cap=6):
    """The degree-6 polynomial in (s, p, d, c) with the given coefficients.

    Rational coefficients give an exact series, otherwise a float series.
    """
    kind = RATIONAL if lc.is_rational() else FLOAT
    basis = linear_basis_series(cap=cap, kind=kind)
    out = TruncSeries.zero(4, cap, kind)
    for slot, series in basis.items():
        value = getattr(lc, slot)
        if kind == RATIONAL:
            value = Fraction(value)
        out = out + series.scale(value)
    return out


# ------------------------------------------------------- critical points

@dataclass
class CriticalPointRecord:
    location: tuple[float, float, float, float]
    gradient_norm: float
    morse_index: int | None
    orbit_id: int
    tag: str                      # isotropic | uniaxial | biaxial
    degenerate: bool = False
    min_abs_hessian_eig: float = 0.0


def _left_d3_matrices():
    """The six matrices of the left triangle-group action on (s, p, d, c)."""
    out = []
    for k in range(3):
        th = 2.0 * math.pi * k / 3.0
        c, s = math.cos(th), math.sin(th)
        rot = np.array([[c, -s, 0, 0], [s, c, 0, 0], [0, 0, c, -s], [0, 0, s, c]])
        out.append(rot)
        out.append(rot @ np.diag([1.0, -1.0, 1.0, -1.0]))
    return out


LEFT_D3 = _left_d3_matrices()


def _series_float(series):
    return series if series.kind == FLOAT else TruncSeries(
        series.num_vars, series.cap,
        {e: float(c) for e, c in series.coeffs.items()}, FLOAT)


class VectorPoly:
    """Batch evaluator for a float TruncSeries at many points at once."""

    def __init__(self, series):
        series = _series_float(series)
        self.n = series.num_vars
        if series.coeffs:
            self.exps = np.array(list(series.coeffs.keys()), dtype=np.int64)
            self.coeffs = np.array([series.coeffs[tuple(e)] for e in self.exps])
            self.max_e = int(self.exps.max())
        else:
            self.exps = np.zeros((0, self.n), dtype=np.int64)
            self.coeffs = np.zeros(0)
            self.max_e = 0

    def __call__(self, pts):
        pts = np.atleast_2d(pts)
        if len(self.coeffs) == 0:
            return np.zeros(len(pts))
        powers = np.ones((len(pts), self.n, self.max_e + 1))
        for k in range(1, self.max_e + 1):
            powers[:, :, k] = powers[:, :, k - 1] * pts
        terms = np.ones((len(pts), len(self.coeffs)))
        for var in range(self.n):
            terms *= powers[:, var, self.exps[:, var]]
        return terms @ self.coeffs


class PolynomialGradient:
    """Gradient/Hessian of a TruncSeries, batch-evaluable for Newton."""

    def __init__(self, series):
        series = _series_float(series)
        grads = series.gradient()
        self.n = series.num_vars
        self.grad = [VectorPoly(g) for g in grads]
        self.hess = [[VectorPoly(g2) for g2 in g.gradient()] for g in grads]

    def gradient(self, x):
        return self.gradient_batch(np.atleast_2d(x))[0]

    def gradient_batch(self, pts):
        return np.column_stack([g(pts) for g in self.grad])

    def hessian(self, x):
        return self.hessian_batch(np.atleast_2d(x))[0]

    def hessian_batch(self, pts):
        h = np.empty((len(np.atleast_2d(pts)), self.n, self.n))
        for i in range(self.n):
            for j in range(self.n):
                h[:, i, j] = self.hess[i][j](pts)
        return 0.5 * (h + np.transpose(h, (0, 2, 1)))


def _newton_all(pg, seeds, tol, max_iter=80):
    """Damped Newton on all seeds at once; returns converged points."""
    x = np.array(seeds, dtype=float)
    for _ in range(max_iter):
        alive = np.all(np.isfinite(x), axis=1)
        x_eval = np.where(alive[:, None], x, 0.0)
        g = pg.gradient_batch(x_eval)
        h = pg.hessian_batch(x_eval)
        det_ok = (np.abs(np.linalg.det(h)) > 1e-300) & alive
        h[~det_ok] = np.eye(pg.n)
        step = np.linalg.solve(h, g[..., None])[..., 0]
        step[~det_ok] = np.nan
        norms = np.linalg.norm(step, axis=1, keepdims=True)
        step = step * np.minimum(1.0, 0.5 / np.maximum(norms, 1e-300))
        x = x - step
        bad = ~np.all(np.isfinite(x), axis=1) | (np.abs(x).max(axis=1) > 1e3)
        x[bad] = np.nan
    g = pg.gradient_batch(np.nan_to_num(x, nan=1e6))
    ok = np.all(np.isfinite(x), axis=1) & (np.linalg.norm(g, axis=1) < tol)
    return x[ok]


def critical_points_4d(lc: LandauCoeffs, search_radius=1.5, grid_n=5,
                       tol=1e-11, degeneracy_tol=1e-7):
    """Newton search for all critical points within the seed ball.

    Converged points are deduplicated, grouped into orbits of the left
    triangle-group action (the symmetry every instance of the free energy
    has), Morse-classified, and tagged isotropic / uniaxial / biaxial by
    the reflection symmetry of their orbit.  Near-singular Hessians are
    flagged degenerate instead of classified.
    """
    f = free_energy(lc)
    pg = PolynomialGradient(f)
    lin = np.linspace(-search_radius, search_radius, grid_n)
    grids = np.meshgrid(lin, lin, lin, lin)
    seeds = np.column_stack([g.ravel() for g in grids])
    seeds = np.vstack([np.zeros(4), seeds])
    converged = _newton_all(pg, seeds, tol)
    found = []
    for x in converged:
        if np.linalg.norm(x) > 4.0 * search_radius:
            continue
        if not any(np.linalg.norm(x - y) < 10.0 * math.sqrt(tol) for y in found):
            found.append(x)
    # orbit grouping under the left action
    orbit_of = {}
    orbits = []
    for i, x in enumerate(found):
        if i in orbit_of:
            continue
        members = [i]
        orbit_of[i] = len(orbits)
        for g in LEFT_D3:
            gx = g @ x
            for j, y in enumerate(found):
                if j not in orbit_of and np.linalg.norm(gx - y) < 1e-6:
                    orbit_of[j] = len(orbits)
                    members.append(j)
        orbits.append(members)
    records = []
    for i, x in enumerate(found):
        h = pg.hessian(x)
        eigs = np.linalg.eigvalsh(h)
        degenerate = bool(np.min(np.abs(eigs)) < degeneracy_tol)
        morse = None if degenerate else int(np.sum(eigs < 0))
        r = float(np.linalg.norm(x))
        if r < 1e-8:
            tag = "isotropic"
        else:
            reflection_fixed = any(
                np.linalg.norm(g @ x - x) < 1e-7 * max(r, 1.0)
                for g in LEFT_D3 if _is_reflection(g))
            tag = "uniaxial" if reflection_fixed else "biaxial"
        records.append(CriticalPointRecord(
            location=tuple(float(v) for v in x),
            gradient_norm=float(np.linalg.norm(pg.gradient(x))),
            morse_index=morse, orbit_id=orbit_of[i], tag=tag,
            degenerate=degenerate,
            min_abs_hessian_eig=float(np.min(np.abs(eigs)))))
    records.sort(key=lambda rec: (rec.orbit_id, rec.location))
    return records


def _is_reflection(g):
    # left-action reflections square to the identity and differ from it
    return np.allclose(g @ g, np.eye(4)) and not np.allclose(g, np.eye(4))


# ------------------------------------------------- fixed-point formulation

def interaction_matrix(alpha, beta, gamma, kT):
    """Symmetric B with H(W) = -(1/2) B W . W reproducing the quadratic part.

    The full quadratic part of H - T S is the doubled block
    [[alpha, gamma], [gamma, beta]]; the entropy supplies (5/2) kT times the
    identity, and B carries the rest.
    """
    quad = np.array([[alpha, 0, gamma, 0],
                     [0, alpha, 0, gamma],
                     [gamma, 0, beta, 0],
                     [0, gamma, 0, beta]])
    return 5.0 * kT * np.eye(4) - 2.0 * quad


def solve_fixed_point(alpha, beta, gamma, kT, quad=None, seeds=None,
                      tol=1e-12, max_iter=80):
    """Solve B W(eta) = kT eta by Newton from the given eta seeds.

    Returns deduplicated (eta, W) pairs; eta = 0 is always a solution.  Each
    W is a critical point of the untruncated free energy, so it matches the
    degree-6 polynomial's critical points to seventh order in |W|.
    """
    quad = quad or entropy_mod.default_quadrature()
    b = interaction_matrix(alpha, beta, gamma, kT)
    if seeds is None:
        seeds = [np.zeros(4)]
    solutions = []
    for seed in seeds:
        eta = np.asarray(seed, dtype=float)
        ok = False
        for _ in range(max_iter):
            res = b @ entropy_mod.w_of_eta(quad, eta) - kT * eta
            if np.linalg.norm(res) < tol:
                ok = True
                break
            jac = b @ entropy_mod.dW_matrix(quad, eta) - kT * np.eye(4)
            try:
                step = np.linalg.solve(jac, res)
            except np.linalg.LinAlgError:
                break
            if np.linalg.norm(step) > 10.0:
                break
            eta = eta - step
        if not ok:
            continue
        if not any(np.linalg.norm(eta - e0) < 1e-8 for e0, _ in solutions):
            solutions.append((eta, entropy_mod.w_of_eta(quad, eta)))
    return solutions
