"""Concrete orthogonal group actions and Molien series.

Covers the 6-element triangle symmetry group on R^2, its 72-element wreath
extension acting on the four order parameters (s, p, d, c), the conjugacy
action of SO(3) on traceless symmetric 3x3 matrices, Molien series by exact
finite sum / closed form / circle quadrature, and the random-rotation
spanning check for the conjugacy action.

Finite-group elements carry exact entries in Q[sqrt(3)] so that closure and
Molien sums are exact; float matrices are derived views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

SQRT3 = math.sqrt(3.0)


class Q3:
    """Exact element a + b*sqrt(3) of Q[sqrt(3)]."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other):
        other = _as_q3(other)
        return Q3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Q3(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_as_q3(other))

    def __rsub__(self, other):
        return _as_q3(other) + (-self)

    def __mul__(self, other):
        other = _as_q3(other)
        return Q3(self.a * other.a + 3 * self.b * other.b,
                  self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _as_q3(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Q3({self.a}, {self.b})"

    def to_float(self):
        return float(self.a) + float(self.b) * SQRT3

    def is_rational(self):
        return self.b == 0


def _as_q3(x):
    if isinstance(x, Q3):
        return x
    return Q3(x)


@dataclass
class OrthogonalElement:
    """An orthogonal matrix, with exact Q[sqrt(3)] entries when available."""

    matrix: np.ndarray
    label: str = ""
    exact: tuple | None = None  # tuple of tuples of Q3

    @classmethod
    def from_exact(cls, rows, label=""):
        exact = tuple(tuple(_as_q3(x) for x in row) for row in rows)
        mat = np.array([[x.to_float() for x in row] for row in exact])
        return cls(matrix=mat, label=label, exact=exact)

    def dim(self):
        return self.matrix.shape[0]

    def det(self):
        return float(np.linalg.det(self.matrix))

    def orthogonality_defect(self):
        m = self.matrix
        return float(np.max(np.abs(m.T @ m - np.eye(m.shape[0]))))


@dataclass
class MolienSeries:
    """Coefficients r_d counting independent invariants of each degree."""

    coefficients: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.coefficients and self.coefficients[0] != 1:
            raise ValueError("a Molien series starts with r_0 = 1")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("Molien coefficients are nonnegative")

    def __getitem__(self, d):
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, MolienSeries):
            return self.coefficients == other.coefficients
        return self.coefficients == list(other)


def _q3_matmul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), Q3(0))
              for j in range(m))
        for i in range(n))


def _closure(generators, limit):
    """BFS closure of exact-matrix generators; error if `limit` is exceeded."""
    dim = len(generators[0].exact)
    ident = tuple(tuple(Q3(1 if i == j else 0) for j in range(dim)) for i in range(dim))
    seen = {ident: ""}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                prod = _q3_matmul(g.exact, m)
                if prod not in seen:
                    seen[prod] = (g.label + seen[m]) if len(seen[m]) < 12 else g.label
                    nxt.append(prod)
                    if len(seen) > limit:
                        raise ValueError(
                            f"group closure exceeded {limit} elements; "
                            "generator encoding is wrong")
        frontier = nxt
    out = []
    for mat, label in seen.items():
        elem = OrthogonalElement.from_exact(mat, label=label or "e")
        out.append(elem)
    out.sort(key=lambda e: e.label)
    return out


def d3_elements():
    """The six 2x2 symmetries of an equilateral triangle (exact entries)."""
    h = Fraction(1, 2)
    rot = [[Q3(-h), Q3(0, -h)], [Q3(0, h), Q3(-h)]]       # rotation by 2*pi/3
    flip = [[Q3(1), Q3(0)], [Q3(0), Q3(-1)]]              # reflection in x-axis
    gens = [OrthogonalElement.from_exact(rot, "r"),
            OrthogonalElement.from_exact(flip, "k")]
    elems = _closure(gens, 6)
    if len(elems) != 6:
        raise ValueError(f"triangle group closure has {len(elems)} elements, expected 6")
    return elems


def d3tilde_generators():
    """Exact 4x4 generators rho, kappa, tau on (s, p, d, c)."""
    h = Fraction(1, 2)
    z = Q3(0)
    c3, s3 = Q3(-h), Q3(0, h)  # cos/sin of 2*pi/3
    rho = [[c3, -s3, z, z],
           [s3, c3, z, z],
           [z, z, c3, -s3],
           [z, z, s3, c3]]
    kappa = [[Q3(1), z, z, z],
             [z, Q3(-1), z, z],
             [z, z, Q3(1), z],
             [z, z, z, Q3(-1)]]
    tau = [[Q3(1), z, z, z],
           [z, z, Q3(1), z],
           [z, Q3(1), z, z],
           [z, z, z, Q3(1)]]
    return (OrthogonalElement.from_exact(rho, "r"),
            OrthogonalElement.from_exact(kappa, "k"),
            OrthogonalElement.from_exact(tau, "t"))


def d3tilde_elements():
    """The 72-element wreath-product symmetry group of the entropy on R^4."""
    elems = _closure(list(d3tilde_generators()), 72)
    if len(elems) != 72:
        raise ValueError(f"wreath-group closure has {len(elems)} elements, expected 72")
    return elems


def d3xd3_elements():
    """The index-2 subgroup generated without the transposition."""
    rho, kappa, tau = d3tilde_generators()
    rho2 = OrthogonalElement.from_exact(_q3_matmul(_q3_matmul(tau.exact, rho.exact),
                                                   tau.exact), "trt")
    kappa2 = OrthogonalElement.from_exact(_q3_matmul(_q3_matmul(tau.exact, kappa.exact),
                                                     tau.exact), "tkt")
    elems = _closure([rho, kappa, rho2, kappa2], 36)
    if len(elems) != 36:
        raise ValueError(f"subgroup closure has {len(elems)} elements, expected 36")
    return elems


# ------------------------------------------------------------------- Molien

def _det_i_minus_tm(exact):
    """det(I - t*M) as a list of Q3 coefficients in t, by Laplace expansion."""
    n = len(exact)
    # entries are degree-<=1 polynomials in t: (const, t-coefficient)
    entries = [[(Q3(1 if i == j else 0), -exact[i][j]) for j in range(n)]
               for i in range(n)]

    def polymul(p, q):
        out = [Q3(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return out

    def polyadd(p, q):
        out = [Q3(0)] * max(len(p), len(q))
        for i, a in enumerate(p):
            out[i] = out[i] + a
        for i, b in enumerate(q):
            out[i] = out[i] + b
        return out

    def det(rows, cols):
        if len(cols) == 1:
            return list(entries[rows[0]][cols[0]])
        total = [Q3(0)]
        for k, c in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1:])
            term = polymul(list(entries[rows[0]][c]), minor)
            if k % 2:
                term = [-x for x in term]
            total = polyadd(total, term)
        return total

    return det(tuple(range(n)), tuple(range(n)))


def _reciprocal_series(poly, max_degree):
    """Power-series inverse of a Q3 polynomial with constant term 1."""
    if poly[0] != Q3(1):
        raise ValueError("reciprocal needs constant term 1")
    inv = [Q3(1)] + [Q3(0)] * max_degree
    for d in range(1, max_degree + 1):
        acc = Q3(0)
        for k in range(1, min(d, len(poly) - 1) + 1):
            acc = acc + poly[k] * inv[d - k]
        inv[d] = -acc
    return inv


def molien_finite(group, max_degree):
    """Exact Molien expansion (1/|G|) sum_g 1/det(I - t g) to max_degree."""
    if any(e.exact is None for e in group):
        raise ValueError("molien_finite needs exact group elements")
    total = [Q3(0)] * (max_degree + 1)
    for e in group:
        rec = _reciprocal_series(_det_i_minus_tm(e.exact), max_degree)
        for d in range(max_degree + 1):
            total[d] = total[d] + rec[d]
    order = Fraction(1, len(group))
    coeffs = []
    for d, c in enumerate(total):
        c = Q3(c.a * order, c.b * order)
        if not c.is_rational() or c.a.denominator != 1:
            raise ValueError(f"non-integer Molien coefficient at degree {d}: {c!r}")
        coeffs.append(int(c.a))
    return MolienSeries(coeffs)


def molien_rational(numer_exponents, denom_exponents, max_degree):
    """Exact expansion of prod(1 + t^k) / prod(1 - t^m) to max_degree."""
    series = [Fraction(0)] * (max_degree + 1)
    series[0] = Fraction(1)
    for k in numer_exponents:
        new = list(series)
        for d in range(k, max_degree + 1):
            new[d] += series[d - k]
        series = new
    for m in denom_exponents:
        # multiply by 1/(1 - t^m): cumulative sums with stride m
        for d in range(m, max_degree + 1):
            series[d] += series[d - m]
    coeffs = []
    for d, c in enumerate(series):
        if c.denominator != 1 or c < 0:
            raise ValueError(f"non-integer expansion coefficient at degree {d}")
        coeffs.append(int(c))
    return MolienSeries(coeffs)


def molien_so3_conjugacy(max_degree, grid_size=None):
    """Molien coefficients of the SO(3) conjugacy action by circle quadrature.

    r_d = (1/2pi) Int (1 - cos t) c_d(t) dt with c_d the degree-d coefficient
    of 1 / ((1-z)(1-2z cos t+z^2)(1-2z cos 2t+z^2)); the integrand is a
    trigonometric polynomial, so a uniform grid of size >= 4*max_degree + 4 is
    exact up to round-off.  Raises if rounding to integers leaves a residual.
    """
    n = grid_size or (4 * max_degree + 4)
    sums = np.zeros(max_degree + 1)
    for theta in 2.0 * math.pi * np.arange(n) / n:
        c1, c2 = math.cos(theta), math.cos(2.0 * theta)
        # denominator polynomial (degree 5), then series reciprocal
        poly = np.array([1.0, -1.0])
        poly = np.convolve(poly, np.array([1.0, -2.0 * c1, 1.0]))
        poly = np.convolve(poly, np.array([1.0, -2.0 * c2, 1.0]))
        inv = np.zeros(max_degree + 1)
        inv[0] = 1.0
        for d in range(1, max_degree + 1):
            acc = 0.0
            for k in range(1, min(d, 5) + 1):
                acc += poly[k] * inv[d - k]
            inv[d] = -acc
        sums += (1.0 - c1) * inv
    vals = sums / n
    coeffs = [int(round(v)) for v in vals]
    residual = float(np.max(np.abs(vals - np.array(coeffs, dtype=float))))
    if residual > 1e-8:
        raise ValueError(f"quadrature underresolved: rounding residual {residual:.3e}")
    return MolienSeries(coeffs), residual


# ------------------------------------------- conjugacy action on Sym0(R^3)

def sym0_basis():
    """Orthonormal basis of traceless symmetric 3x3 matrices.

    The first two span the diagonal subspace and coincide (up to sign) with
    the unit-normalized diagonal seed matrices; the last three are the
    normalized symmetric off-diagonal pair matrices.
    """
    b1 = np.diag([1.0, -1.0, 0.0]) / math.sqrt(2.0)
    b2 = np.diag([-1.0, -1.0, 2.0]) / math.sqrt(6.0)
    b3 = np.zeros((3, 3)); b3[1, 2] = b3[2, 1] = 1.0 / math.sqrt(2.0)
    b4 = np.zeros((3, 3)); b4[0, 2] = b4[2, 0] = 1.0 / math.sqrt(2.0)
    b5 = np.zeros((3, 3)); b5[0, 1] = b5[1, 0] = 1.0 / math.sqrt(2.0)
    return [b1, b2, b3, b4, b5]


_SYM0_BASIS = sym0_basis()


def conjugation_operator(rotation):
    """5x5 matrix of Q -> R Q R^T on traceless symmetric matrices.

    The output is orthogonal because conjugation by a rotation preserves the
    trace inner product.
    """
    rotation = np.asarray(rotation, dtype=float)
    if np.max(np.abs(rotation.T @ rotation - np.eye(3))) > 1e-10:
        raise ValueError("conjugation_operator needs an orthogonal matrix")
    if np.linalg.det(rotation) < 0:
        raise ValueError("conjugation_operator needs a proper rotation (det +1)")
    out = np.empty((5, 5))
    transformed = [rotation @ e @ rotation.T for e in _SYM0_BASIS]
    for j, te in enumerate(transformed):
        for i, e in enumerate(_SYM0_BASIS):
            out[i, j] = float(np.sum(e * te))
    return out


def haar_rotations(count, seed):
    """Seeded Haar-uniform rotations via the uniform-quaternion method."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        w, x, y, z = q
        out.append(np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]))
    return out


def _axis_flip_rotations():
    k0 = np.eye(3)
    k1 = np.diag([1.0, -1.0, -1.0])
    k2 = np.diag([-1.0, 1.0, -1.0])
    k3 = np.diag([-1.0, -1.0, 1.0])
    return [k0, k1, k2, k3]


def _cyclic_rotations():
    i1 = np.eye(3)
    i2 = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    i3 = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    return [i1, i2, i3]


@dataclass
class SpanningReport:
    linear_rank: int
    affine_rank: int
    identity_residual: float
    num_samples: int
    seed: int


def spanning_check(num_samples, seed):
    """Rank evidence that conjugation operators span all 25 supertensor slots.

    Also evaluates the explicit positive combination of axis-flip and cyclic
    conjugations that annihilates everything, whose norm certifies the
    affine-degeneracy direction.
    """
    if num_samples < 26:
        raise ValueError("need at least 26 samples for a 25-dimensional span")
    ops = [conjugation_operator(r).reshape(-1)
           for r in haar_rotations(num_samples, seed)]
    stack = np.array(ops)
    linear_rank = int(np.linalg.matrix_rank(stack, tol=1e-9))
    affine_rank = int(np.linalg.matrix_rank(stack[1:] - stack[0], tol=1e-9))
    flips = sum(conjugation_operator(k) for k in _axis_flip_rotations())
    cycles = sum(conjugation_operator(i) for i in _cyclic_rotations())
    identity_residual = float(np.linalg.norm(flips @ cycles, 2))
    return SpanningReport(linear_rank, affine_rank, identity_residual,
                          num_samples, seed)
