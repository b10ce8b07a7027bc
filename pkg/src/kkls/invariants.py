"""Hilbert bases of the reduced order-parameter symmetry groups.

Provides numeric evaluation of the five generating invariants f2..f6 of the
72-element wreath group on (s, p, d, c), the pair (X, Y) generating the
triangle-group invariants on R^2, the same polynomials as TruncSeries, and a
fitter expressing any degree-<=6 polynomial of the right symmetry class in
the fixed linear basis

    |z|^2, |w|^2, 2 Re(z wbar);  f3;  f4, f2^2;  f5, f2 f3;
    f6, f2^3, f3^2, f2 f4

whose coefficient slots are (alpha, beta, gamma; a3; a4, b4; a5, b5;
a6, b6, c6, d6) in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polyser import FLOAT, RATIONAL, TruncSeries


@dataclass(frozen=True)
class OrderParams:
    """The four order parameters; z = s + ip and w = d + ic."""

    s: float
    p: float
    d: float
    c: float

    @property
    def z(self):
        return complex(self.s, self.p)

    @property
    def w(self):
        return complex(self.d, self.c)

    def apply(self, matrix):
        """Image under a 4x4 symmetry matrix acting on (s, p, d, c)."""
        v = matrix @ np.array([self.s, self.p, self.d, self.c])
        return OrderParams(*v)

    def transpose(self):
        return OrderParams(self.s, self.d, self.p, self.c)


@dataclass(frozen=True)
class InvariantVector:
    f2: float
    f3: float
    f4: float
    f5: float
    f6: float

    def syzygy_defect(self):
        """f5^2 + f4*f6; identically zero on the image of eval_basis_r4."""
        return self.f5 * self.f5 + self.f4 * self.f6

    def as_tuple(self):
        return (self.f2, self.f3, self.f4, self.f5, self.f6)


def eval_basis_r4(op: OrderParams) -> InvariantVector:
    """Evaluate the five generators at a point (exact for Fraction fields)."""
    s, p, d, c = op.s, op.p, op.d, op.c
    f2 = s * s + p * p + d * d + c * c
    f3 = s * s * s - 3 * s * p * p - 3 * s * (d * d - c * c) + 6 * p * d * c
    im_zwbar = p * d - s * c
    im_w3 = 3 * d * d * c - c * c * c - 3 * c * (s * s - p * p) - 6 * s * p * d
    f4 = -4 * im_zwbar * im_zwbar
    f5 = 2 * im_zwbar * im_w3
    f6 = im_w3 * im_w3
    return InvariantVector(f2, f3, f4, f5, f6)


def eval_basis_r2(x, u):
    """The triangle-group generators X = x^2 + u^2, Y = x^3 - 3 x u^2."""
    return (x * x + u * u, x * x * x - 3 * x * u * u)


def hatf6(op: OrderParams):
    """Re((z^2 + w^2)^3): invariant for the 36-subgroup, not the full group."""
    return ((op.z * op.z + op.w * op.w) ** 3).real


def hatf6_defect(op: OrderParams):
    """Transposition defect of hatf6; generically nonzero."""
    return hatf6(op) - hatf6(op.transpose())


# ----------------------------------------------------------- series builders

def _spdc(cap, kind):
    return TruncSeries.variables(4, cap, kind)


def generator_series(cap=6, kind=RATIONAL):
    """The five generators as TruncSeries in (s, p, d, c)."""
    s, p, d, c = _spdc(cap, kind)
    f2 = s * s + p * p + d * d + c * c
    f3 = s * s * s - (s * p * p).scale(3) - (s * d * d).scale(3) \
        + (s * c * c).scale(3) + (p * d * c).scale(6)
    im_zwbar = p * d - s * c
    im_w3 = (d * d * c).scale(3) - c * c * c - (c * s * s).scale(3) \
        + (c * p * p).scale(3) - (s * p * d).scale(6)
    f4 = (im_zwbar * im_zwbar).scale(-4)
    f5 = (im_zwbar * im_w3).scale(2)
    f6 = im_w3 * im_w3
    return {"f2": f2, "f3": f3, "f4": f4, "f5": f5, "f6": f6}


def hatf6_series(cap=6, kind=RATIONAL):
    s, p, d, c = _spdc(cap, kind)
    re_part = s * s - p * p + d * d - c * c          # Re(z^2 + w^2)
    im_part = (s * p + d * c).scale(2)               # Im(z^2 + w^2)
    return re_part ** 3 - (re_part * im_part * im_part).scale(3)


def transpose_series(series):
    """Pull back a series in (s, p, d, c) through the transposition p <-> d."""
    return TruncSeries(series.num_vars, series.cap,
                       {(a, c, b, e): v for (a, b, c, e), v in series.coeffs.items()},
                       series.kind, series.truncated)


def hatf6_odd_series(cap=6, kind=RATIONAL):
    """Transposition-odd part of hatf6: the secondary degree-6 invariant of
    the index-2 subgroup.  Its transposition-even complement is exactly
    f3^2 - f6, and its square lies in the generator ring."""
    h = hatf6_series(cap, kind)
    half = Fraction(1, 2) if kind == RATIONAL else 0.5
    return (h - transpose_series(h)).scale(half)


BASIS_SLOTS = ("alpha", "beta", "gamma", "a3", "a4", "b4",
               "a5", "b5", "a6", "b6", "c6", "d6")


def linear_basis_series(cap=6, kind=RATIONAL):
    """The twelve basis polynomials, keyed by their coefficient slot."""
    s, p, d, c = _spdc(cap, kind)
    f = generator_series(cap, kind)
    return {
        "alpha": s * s + p * p,
        "beta": d * d + c * c,
        "gamma": (s * d + p * c).scale(2),
        "a3": f["f3"],
        "a4": f["f4"],
        "b4": f["f2"] * f["f2"],
        "a5": f["f5"],
        "b5": f["f2"] * f["f3"],
        "a6": f["f6"],
        "b6": f["f2"] * f["f2"] * f["f2"],
        "c6": f["f3"] * f["f3"],
        "d6": f["f2"] * f["f4"],
    }


@dataclass
class LandauCoeffs:
    """Coefficient vector of the degree-6 free energy in the fixed basis."""

    alpha: float = 0
    beta: float = 0
    gamma: float = 0
    a3: float = 0
    a4: float = 0
    b4: float = 0
    a5: float = 0
    b5: float = 0
    a6: float = 0
    b6: float = 0
    c6: float = 0
    d6: float = 0

    def as_dict(self):
        return {k: getattr(self, k) for k in BASIS_SLOTS}

    def is_rational(self):
        return all(not isinstance(getattr(self, k), float) for k in BASIS_SLOTS)


def _exact_lstsq(columns, target):
    """Exact solve of an overdetermined consistent-or-not system.

    Gaussian elimination over Fractions; returns (solution, residual_vector).
    The columns are linearly independent for our basis, so pivoting by first
    nonzero entry is enough.
    """
    rows = len(target)
    ncols = len(columns)
    a = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("basis columns are linearly dependent")
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    solution = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        solution[col] = a[i][ncols]
    residual = [a[i][ncols] for i in range(r, rows)]
    return solution, residual


def fit_invariant_basis(poly: TruncSeries, tol=1e-9):
    """Express a degree-<=6 polynomial in the fixed linear basis.

    Returns (LandauCoeffs, residual).  A nonzero residual means the input is
    not in the symmetry class spanned by the basis (for example, it is not
    transposition-symmetric above degree 2).  Exact elimination is used for
    rational input, least squares for float input.
    """
    if poly.num_vars != 4:
        raise ValueError("fit_invariant_basis expects a series in (s, p, d, c)")
    if any(sum(e) < 2 for e in poly.coeffs):
        raise ValueError("input must have no degree-0 or degree-1 terms")
    basis = linear_basis_series(cap=max(poly.cap, 6), kind=poly.kind)
    names = list(BASIS_SLOTS)
    monomials = sorted(set().union(*(b.coeffs.keys() for b in basis.values()),
                                   poly.coeffs.keys()))
    if poly.kind == RATIONAL:
        columns = [[basis[n].coeff(m) for m in monomials] for n in names]
        target = [poly.coeff(m) for m in monomials]
        solution, residual = _exact_lstsq(columns, target)
        res_norm = float(np.sqrt(sum(float(x) ** 2 for x in residual)))
        lc = LandauCoeffs(**dict(zip(names, solution)))
    else:
        mat = np.array([[float(basis[n].coeff(m)) for n in names] for m in monomials])
        target = np.array([float(poly.coeff(m)) for m in monomials])
        solution, _, _, _ = np.linalg.lstsq(mat, target, rcond=None)
        res_norm = float(np.linalg.norm(mat @ solution - target))
        lc = LandauCoeffs(**dict(zip(names, (float(x) for x in solution))))
    return lc, res_norm


def product_basis_exponents(total_degree):
    """Exponent tuples (k2..k6) with sum(i*k_i) = total_degree."""
    out = []
    for k2 in range(total_degree // 2 + 1):
        for k3 in range((total_degree - 2 * k2) // 3 + 1):
            for k4 in range((total_degree - 2 * k2 - 3 * k3) // 4 + 1):
                for k5 in range((total_degree - 2 * k2 - 3 * k3 - 4 * k4) // 5 + 1):
                    rem = total_degree - 2 * k2 - 3 * k3 - 4 * k4 - 5 * k5
                    if rem % 6 == 0:
                        out.append((k2, k3, k4, k5, rem // 6))
    return out


def express_in_generators(poly: TruncSeries, total_degree):
    """Least-squares fit of a homogeneous polynomial as a sum of products
    f2^k2 f3^k3 f4^k4 f5^k5 f6^k6 of the given total degree.

    Returns (coefficient dict, residual).  The product set may be linearly
    dependent (the syzygy), so the minimum-norm solution is returned.
    """
    exps = product_basis_exponents(total_degree)
    gens = generator_series(cap=poly.cap, kind=FLOAT)
    keys = ("f2", "f3", "f4", "f5", "f6")
    products = []
    for e in exps:
        term = TruncSeries.const(1.0, 4, poly.cap, FLOAT)
        for k, g in zip(e, keys):
            for _ in range(k):
                term = term * gens[g]
        products.append(term)
    monomials = sorted(set().union(*(t.coeffs.keys() for t in products),
                                   poly.coeffs.keys()))
    mat = np.array([[float(t.coeff(m)) for t in products] for m in monomials])
    target = np.array([float(poly.coeff(m)) for m in monomials])
    sol, _, _, _ = np.linalg.lstsq(mat, target, rcond=None)
    residual = float(np.linalg.norm(mat @ sol - target))
    return dict(zip(exps, sol)), residual
