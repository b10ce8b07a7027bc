"""Truncated multivariate polynomial / power-series arithmetic.

A series is a dictionary mapping exponent tuples to coefficients, truncated at
a fixed total degree.  Two coefficient kinds are supported behind the same
interface:

  * ``rational`` -- exact ``Fraction`` coefficients; every operation is exact,
    so identities can be asserted with ``==``.
  * ``float``    -- double precision, for quadrature-fed series.

Zero coefficients are never stored, so equality is structural (map equality).
All operations return new instances; nothing mutates in place.
"""

from __future__ import annotations

from fractions import Fraction
from math import log as _math_log

Exponent = tuple[int, ...]

RATIONAL = "rational"
FLOAT = "float"

MAX_VARS = 5
MAX_DEGREE = 12


def _coerce(value, kind):
    if kind == RATIONAL:
        if isinstance(value, float):
            raise ValueError("float coefficient in a rational series")
        return Fraction(value)
    return float(value)


class TruncSeries:
    """A polynomial in ``num_vars`` variables, truncated above ``cap``.

    ``truncated`` marks instances that stand for an infinite series cut at the
    cap (logs, inverses); composing such a series with an image that has a
    nonzero constant term is rejected because the discarded tail would matter.
    """

    __slots__ = ("num_vars", "cap", "kind", "coeffs", "truncated")

    def __init__(self, num_vars, cap, coeffs=None, kind=RATIONAL, truncated=False):
        if not (1 <= num_vars <= MAX_VARS):
            raise ValueError(f"num_vars must be in 1..{MAX_VARS}, got {num_vars}")
        if not (0 <= cap <= MAX_DEGREE):
            raise ValueError(f"cap must be in 0..{MAX_DEGREE}, got {cap}")
        if kind not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown coefficient kind {kind!r}")
        self.num_vars = num_vars
        self.cap = cap
        self.kind = kind
        self.truncated = truncated
        clean: dict[Exponent, object] = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for {num_vars} variables")
            if sum(exps) > cap:
                continue
            c = _coerce(c, kind)
            if c != 0:
                clean[exps] = c
        self.coeffs = clean

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, num_vars, cap, kind=RATIONAL):
        return cls(num_vars, cap, {}, kind)

    @classmethod
    def const(cls, value, num_vars, cap, kind=RATIONAL):
        return cls(num_vars, cap, {(0,) * num_vars: value}, kind)

    @classmethod
    def variable(cls, index, num_vars, cap, kind=RATIONAL):
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, cap, {tuple(exps): 1}, kind)

    @classmethod
    def variables(cls, num_vars, cap, kind=RATIONAL):
        return [cls.variable(i, num_vars, cap, kind) for i in range(num_vars)]

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Total degree of the stored part (-1 for the zero series)."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def coeff(self, exps):
        c = self.coeffs.get(tuple(exps))
        if c is None:
            return Fraction(0) if self.kind == RATIONAL else 0.0
        return c

    def constant_term(self):
        return self.coeff((0,) * self.num_vars)

    def homogeneous_part(self, d):
        return TruncSeries(
            self.num_vars, self.cap,
            {e: c for e, c in self.coeffs.items() if sum(e) == d},
            self.kind, self.truncated)

    def truncate(self, d):
        """Drop every term of total degree > d (the cap is unchanged)."""
        return TruncSeries(
            self.num_vars, self.cap,
            {e: c for e, c in self.coeffs.items() if sum(e) <= d},
            self.kind, self.truncated)

    def with_cap(self, cap):
        return TruncSeries(self.num_vars, cap, self.coeffs, self.kind, self.truncated)

    def max_abs_coeff(self):
        return max((abs(c) for c in self.coeffs.values()), default=0)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.kind == other.kind
                and self.coeffs == other.coeffs)

    def __hash__(self):
        raise TypeError("TruncSeries is not hashable")

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))
        shown = ", ".join(f"{e}: {c}" for e, c in terms[:8])
        more = "" if len(terms) <= 8 else f", ... ({len(terms)} terms)"
        return f"TruncSeries({self.num_vars} vars, cap {self.cap}, {{{shown}{more}}})"

    # ------------------------------------------------------------ arithmetic

    def _check_compatible(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("incompatible operands: different num_vars")
        if self.kind != other.kind:
            raise ValueError("incompatible operands: different coefficient kinds")
        if self.cap != other.cap:
            raise ValueError("incompatible operands: different degree caps")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return self + TruncSeries.const(other, self.num_vars, self.cap, self.kind)
        self._check_compatible(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return TruncSeries(self.num_vars, self.cap, out, self.kind,
                           self.truncated or other.truncated)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return TruncSeries(self.num_vars, self.cap,
                           {e: -c for e, c in self.coeffs.items()},
                           self.kind, self.truncated)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return self - TruncSeries.const(other, self.num_vars, self.cap, self.kind)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = _coerce(factor, self.kind)
        if factor == 0:
            return TruncSeries.zero(self.num_vars, self.cap, self.kind)
        return TruncSeries(self.num_vars, self.cap,
                           {e: c * factor for e, c in self.coeffs.items()},
                           self.kind, self.truncated)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check_compatible(other)
        cap = self.cap
        out: dict[Exponent, object] = {}
        for ea, ca in self.coeffs.items():
            da = sum(ea)
            for eb, cb in other.coeffs.items():
                if da + sum(eb) > cap:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return TruncSeries(self.num_vars, cap, out, self.kind,
                           self.truncated or other.truncated)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined for series")
        result = TruncSeries.const(1, self.num_vars, self.cap, self.kind)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ----------------------------------------------------------- operations

    def substitute(self, images):
        """Compose with one image series per variable, truncating at the cap.

        Linear substitution is exact.  For a genuine series truncation the
        images must have zero constant term.
        """
        if len(images) != self.num_vars:
            raise ValueError(f"need {self.num_vars} images, got {len(images)}")
        first = images[0]
        for img in images[1:]:
            first._check_compatible(img)
        if self.kind != first.kind:
            raise ValueError("incompatible operands: different coefficient kinds")
        if self.truncated:
            for img in images:
                if img.constant_term() != 0:
                    raise ValueError(
                        "nonzero constant term in image of a truncated series")
        nv, cap, kind = first.num_vars, first.cap, first.kind
        one = TruncSeries.const(1, nv, cap, kind)
        powers: list[dict[int, TruncSeries]] = [{0: one} for _ in range(self.num_vars)]

        def img_power(i, k):
            table = powers[i]
            if k not in table:
                table[k] = img_power(i, k - 1) * images[i]
            return table[k]

        out = TruncSeries.zero(nv, cap, kind)
        for exps, c in sorted(self.coeffs.items(), key=lambda t: sum(t[0])):
            term = one
            for i, e in enumerate(exps):
                if e:
                    term = term * img_power(i, e)
            out = out + term.scale(c)
        out.truncated = out.truncated or self.truncated
        return out

    def gradient(self):
        """Formal partial derivatives; the cap drops by one."""
        outs = []
        for i in range(self.num_vars):
            d: dict[Exponent, object] = {}
            for e, c in self.coeffs.items():
                if e[i] == 0:
                    continue
                ne = list(e)
                ne[i] -= 1
                d[tuple(ne)] = c * e[i]
            outs.append(TruncSeries(self.num_vars, max(self.cap - 1, 0), d,
                                    self.kind, self.truncated))
        return outs

    def evaluate(self, point):
        """Evaluate at a numeric point (exact for Fraction inputs)."""
        if len(point) != self.num_vars:
            raise ValueError("point has wrong dimension")
        total = 0
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = term * x
            total = total + term
        return total


def log_series(f):
    """log(f) as a truncated series; requires constant term 1.

    Float series may carry a constant within 1e-9 of 1 (quadrature round-off);
    the exact log of that constant is then added.
    """
    c0 = f.constant_term()
    shift = 0.0
    if f.kind == RATIONAL:
        if c0 != 1:
            raise ValueError(f"log_series needs constant term 1, got {c0}")
    else:
        if abs(c0 - 1.0) > 1e-9:
            raise ValueError(f"log_series needs constant term 1, got {c0}")
        if c0 != 1.0:
            shift = _math_log(c0)
            f = f.scale(1.0 / c0)
    u = f - 1
    out = TruncSeries.zero(f.num_vars, f.cap, f.kind)
    power = TruncSeries.const(1, f.num_vars, f.cap, f.kind)
    for k in range(1, f.cap + 1):
        power = power * u
        if power.is_zero():
            break
        sign = 1 if k % 2 == 1 else -1
        out = out + power.scale(Fraction(sign, k) if f.kind == RATIONAL else sign / k)
    if shift:
        out = out + shift
    out.truncated = True
    return out


def exp_series(f):
    """exp(f) for a series with zero constant term."""
    if f.constant_term() != 0:
        raise ValueError("exp_series needs zero constant term")
    out = TruncSeries.const(1, f.num_vars, f.cap, f.kind)
    power = TruncSeries.const(1, f.num_vars, f.cap, f.kind)
    fact = 1
    for k in range(1, f.cap + 1):
        power = power * f
        fact *= k
        if power.is_zero():
            break
        out = out + power.scale(Fraction(1, fact) if f.kind == RATIONAL else 1.0 / fact)
    out.truncated = True
    return out


def _solve_linear(matrix, rhs, kind):
    """Solve an n x n system; matrix rows are lists, rhs a list of columns."""
    n = len(matrix)
    a = [list(row) + list(r) for row, r in zip(matrix, rhs)]
    ncols = len(a[0])
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                if piv is None or (kind == FLOAT and abs(a[r][col]) > abs(a[piv][col])):
                    piv = r
                    if kind == RATIONAL:
                        break
        if piv is None:
            raise ValueError("singular linear part")
        a[col], a[piv] = a[piv], a[col]
        inv = (Fraction(1) / a[col][col]) if kind == RATIONAL else 1.0 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [[a[r][n + j] for j in range(ncols - n)] for r in range(n)]


def invert_map(ws):
    """Inverse of a formal map w = W(eta) with zero constant terms.

    Returns series eta(w) in the same variables such that W(eta(w)) is the
    identity up to the cap.  Fixed-point iteration converges in at most
    ``cap`` rounds; exact in rational mode.
    """
    n = len(ws)
    first = ws[0]
    if n != first.num_vars:
        raise ValueError("invert_map needs as many components as variables")
    for w in ws:
        first._check_compatible(w)
        if w.constant_term() != 0:
            raise ValueError("invert_map needs zero constant terms")
    cap, kind = first.cap, first.kind

    unit = [[0] * n for _ in range(n)]
    lin = [[0] * n for _ in range(n)]
    for i, w in enumerate(ws):
        unit[i][i] = 1
        for j in range(n):
            e = [0] * n
            e[j] = 1
            lin[i][j] = w.coeff(tuple(e))
    linv = _solve_linear(lin, unit, kind)

    def apply_linv(series_list):
        return [sum((series_list[j].scale(linv[i][j]) for j in range(n)),
                    TruncSeries.zero(n, cap, kind)) for i in range(n)]

    variables = TruncSeries.variables(n, cap, kind)
    higher = [w - sum((variables[j].scale(lin[i][j]) for j in range(n)),
                      TruncSeries.zero(n, cap, kind)) for i, w in enumerate(ws)]

    eta = apply_linv(variables)
    for _ in range(cap):
        corr = [h.substitute(eta) for h in higher]
        new = apply_linv([variables[i] - corr[i] for i in range(n)])
        if new == eta:
            break
        eta = new
    for comp in eta:
        comp.truncated = True
    return eta
