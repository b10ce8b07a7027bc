"""Graded linear algebra for determinacy and versality of invariant germs.

Works in the weighted polynomial ring Q[X, Y] with weight(X) = 2 and
weight(Y) = 3, the invariant ring of the triangle group on the plane.  The
module of equivariant vector fields is free on

    V1 = (x, u),          dX V1 = 2X,  dY V1 = 3Y,
    V2 = (x^2-u^2, -2xu), dX V2 = 2Y,  dY V2 = 3X^2,

so df.V1 = 2X f_X + 3Y f_Y and df.V2 = 2Y f_X + 3X^2 f_Y.  The tangent-space
module with unipotent (no-linear-term) vector fields constrains the V1
multiplier to the maximal ideal; versality uses unconstrained multipliers.
Membership is decided degree by degree: the weighted-degree-d slice of the
module is spanned by the degree-d components of monomial multiples of the
generators, and ranks are computed exactly over the rationals.

Determinacy verdicts certify a finite degree window only; the infinite-tail
step (a Nakayama-type filtration argument) is documented, not mechanized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

WEIGHTS = (2, 3)

MAXIMAL_IDEAL = "maximal_ideal"
FULL_RING = "full_ring"


class WeightedPoly:
    """Polynomial in the invariant generators X, Y with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[(int(a), int(b))] = c
        self.coeffs = clean

    @classmethod
    def monomial(cls, a, b, coeff=1):
        return cls({(a, b): coeff})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, Fraction(0)) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return WeightedPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        factor = Fraction(factor)
        return WeightedPoly({k: c * factor for k, c in self.coeffs.items()})

    def mul_monomial(self, a, b, coeff=1):
        return WeightedPoly({(ka + a, kb + b): c * coeff
                             for (ka, kb), c in self.coeffs.items()})

    def __mul__(self, other):
        out = WeightedPoly()
        for (a, b), c in other.coeffs.items():
            out = out + self.mul_monomial(a, b, c)
        return out

    def diff_x(self):
        return WeightedPoly({(a - 1, b): c * a
                             for (a, b), c in self.coeffs.items() if a > 0})

    def diff_y(self):
        return WeightedPoly({(a, b - 1): c * b
                             for (a, b), c in self.coeffs.items() if b > 0})

    def weighted_part(self, d):
        return WeightedPoly({(a, b): c for (a, b), c in self.coeffs.items()
                             if 2 * a + 3 * b == d})

    def weighted_degrees(self):
        return sorted({2 * a + 3 * b for (a, b) in self.coeffs})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, WeightedPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = []
        for (a, b), c in sorted(self.coeffs.items(),
                                key=lambda t: (2 * t[0][0] + 3 * t[0][1], t[0])):
            terms.append(f"{c}*X^{a}*Y^{b}")
        return "WeightedPoly(" + " + ".join(terms or ["0"]) + ")"


def monomials_of_weight(d):
    """All (a, b) with 2a + 3b = d."""
    out = []
    for b in range(d // 3 + 1):
        rem = d - 3 * b
        if rem % 2 == 0:
            out.append((rem // 2, b))
    return out


@dataclass
class GradedIdeal:
    """Module generators, each with its multiplier class."""

    generators: list          # list of (WeightedPoly, multiplier_class)

    def slice_vectors(self, d):
        """Degree-d components of monomial multiples of the generators."""
        vecs = []
        for gen, mclass in self.generators:
            min_w = 2 if mclass == MAXIMAL_IDEAL else 0
            for gd in gen.weighted_degrees():
                w = d - gd
                if w < min_w:
                    continue
                for (a, b) in monomials_of_weight(w):
                    part = gen.mul_monomial(a, b).weighted_part(d)
                    if not part.is_zero():
                        vecs.append(part)
        return vecs


def euler_pairing(f: WeightedPoly):
    """df.V1 = 2X f_X + 3Y f_Y (the weighted Euler derivative)."""
    return (f.diff_x().mul_monomial(1, 0, 2) + f.diff_y().mul_monomial(0, 1, 3))


def shear_pairing(f: WeightedPoly):
    """df.V2 = 2Y f_X + 3X^2 f_Y."""
    return (f.diff_x().mul_monomial(0, 1, 2) + f.diff_y().mul_monomial(2, 0, 3))


def w0_generators(f: WeightedPoly) -> GradedIdeal:
    """Tangent module of f under coordinate changes with no linear part."""
    if (0, 0) in f.coeffs:
        raise ValueError("w0_generators needs a germ with no constant term")
    return GradedIdeal([(euler_pairing(f), MAXIMAL_IDEAL),
                        (shear_pairing(f), FULL_RING)])


def w_generators(f: WeightedPoly) -> GradedIdeal:
    """Tangent module without the unipotency restriction (for versality)."""
    return GradedIdeal([(euler_pairing(f), FULL_RING),
                        (shear_pairing(f), FULL_RING)])


def _rank(vectors, basis):
    """Exact rank of the span of coefficient vectors over the monomials."""
    index = {mono: i for i, mono in enumerate(basis)}
    rows = []
    for v in vectors:
        row = [Fraction(0)] * len(basis)
        for mono, c in v.coeffs.items():
            row[index[mono]] = c
        rows.append(row)
    rank = 0
    col = 0
    while col < len(basis) and rank < len(rows):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank, rows


def _missing_monomial(vectors, basis):
    """A basis monomial outside the span, if any (after elimination)."""
    rank, rows = _rank(vectors, basis)
    if rank == len(basis):
        return None
    # pivot columns of the reduced rows
    pivots = set()
    for row in rows[:rank]:
        for j, x in enumerate(row):
            if x != 0:
                pivots.add(j)
                break
    for j, mono in enumerate(basis):
        if j not in pivots:
            return mono
    return basis[-1]


@dataclass
class DegreeReport:
    degree: int
    spans_all: bool
    missing_dim: int
    witness: tuple | None


def graded_membership(ideal: GradedIdeal, degree_window):
    """Per-degree spanning report of the module against all invariants."""
    lo, hi = degree_window
    out = {}
    for d in range(lo, hi + 1):
        basis = monomials_of_weight(d)
        if not basis:
            out[d] = DegreeReport(d, True, 0, None)
            continue
        vecs = ideal.slice_vectors(d)
        rank, _ = _rank(vecs, basis)
        missing = len(basis) - rank
        witness = _missing_monomial(vecs, basis) if missing else None
        out[d] = DegreeReport(d, missing == 0, missing, witness)
    return out


@dataclass
class DeterminacyVerdict:
    holds_on_window: bool
    window: tuple
    witness: tuple | None
    witness_degree: int | None


def k_determined(f: WeightedPoly, k, window_extent=6):
    """Window certificate for k-determinacy of the k-jet of f.

    True iff the unipotent tangent module of the k-jet spans every weighted
    degree in [k+1, k+window_extent].  A pass certifies the window only; a
    failure returns the first missing invariant monomial as witness.
    """
    jet = WeightedPoly({(a, b): c for (a, b), c in f.coeffs.items()
                        if 2 * a + 3 * b <= k})
    reports = graded_membership(w0_generators(jet), (k + 1, k + window_extent))
    for d in sorted(reports):
        rep = reports[d]
        if not rep.spans_all:
            return DeterminacyVerdict(False, (k + 1, k + window_extent),
                                      rep.witness, d)
    return DeterminacyVerdict(True, (k + 1, k + window_extent), None, None)


def w0_equality(f: WeightedPoly, g: WeightedPoly, degree_window):
    """Do the unipotent tangent modules agree slice-by-slice on the window?"""
    ia, ib = w0_generators(f), w0_generators(g)
    lo, hi = degree_window
    for d in range(lo, hi + 1):
        basis = monomials_of_weight(d)
        if not basis:
            continue
        va = ia.slice_vectors(d)
        vb = ib.slice_vectors(d)
        ra, _ = _rank(va, basis)
        rb, _ = _rank(vb, basis)
        rab, _ = _rank(va + vb, basis)
        if not (ra == rb == rab):
            return False
    return True


@dataclass
class VersalityVerdict:
    versal_on_window: bool
    failing_degree: int | None
    witness: tuple | None


def versal_check(h: WeightedPoly, deformation_monomials, window):
    """Window certificate that the monomial family versally deforms h.

    True iff the unconstrained tangent module of h plus the real span of the
    deformation monomials covers every weighted degree in [0, window].
    """
    ideal = w_generators(h)
    extras = [WeightedPoly.monomial(a, b) for (a, b) in deformation_monomials]
    for d in range(0, window + 1):
        basis = monomials_of_weight(d)
        if not basis:
            continue
        vecs = ideal.slice_vectors(d)
        vecs += [e.weighted_part(d) for e in extras
                 if not e.weighted_part(d).is_zero()]
        rank, _ = _rank(vecs, basis)
        if rank < len(basis):
            witness = _missing_monomial(vecs, basis)
            return VersalityVerdict(False, d, witness)
    return VersalityVerdict(True, None, None)
