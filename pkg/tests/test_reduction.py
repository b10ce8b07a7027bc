import math
import random
from fractions import Fraction

import numpy as np
import pytest

from kkls.invariants import LandauCoeffs
from kkls.landau import free_energy
from kkls.polyser import TruncSeries, invert_map
from kkls.reduction import (completing_square_images, e2_from_perturbation,
                            printed_formula_variants, pythagorean_pair,
                            residual_coeffs, rotate_coords, rotation_images,
                            triple_angle, verify_reduction)


def rand_lc(rng):
    def f():
        return Fraction(rng.randint(-20, 20), rng.choice([1, 2, 3, 4, 5, 8]))
    return LandauCoeffs(a3=f(), a4=f(), b4=f(), a5=f(), b5=f(),
                        a6=f(), b6=f(), c6=f(), d6=f())


def test_rotation_matrix_orthogonal_and_special_angles():
    for xi in (0.0, 0.4, math.pi / 2, 2.2):
        m = rotate_coords(xi)
        assert np.max(np.abs(m.T @ m - np.eye(4))) < 1e-14
    m = rotate_coords(math.pi / 2)
    # at xi = pi/2: (s, d, p, c) = (x, y, u, v)
    assert np.allclose(m, np.eye(4))
    m0 = rotate_coords(0.0)
    # at xi = 0: (x, u) = -(d, c) and (y, v) = (s, p)
    s, d, p, c = m0 @ np.array([1.0, 0.0, 0.0, 0.0])
    assert (s, d, p, c) == pytest.approx((0.0, -1.0, 0.0, 0.0))


def test_rotation_reduces_on_cone_quadratic():
    mu = Fraction(3, 7)
    c, s = pythagorean_pair(Fraction(2, 5))
    lc = LandauCoeffs(alpha=2 * mu * c * c, beta=2 * mu * s * s,
                      gamma=2 * mu * c * s)
    f = free_energy(lc)
    rotated = f.substitute(rotation_images(c, s))
    assert rotated.coeffs == {(0, 2, 0, 0): 2 * mu, (0, 0, 0, 2): 2 * mu}


def test_completing_square_map_structure():
    ident = completing_square_images(0, Fraction(1), Fraction(0))
    assert ident == TruncSeries.variables(4, 6)
    # sin(3 xi) = 0 kills the cubic piece: images are quadratic shears only
    shear = completing_square_images(Fraction(1, 2), Fraction(1), Fraction(0))
    assert all(max((sum(e) for e in img.coeffs), default=0) <= 2
               for img in shear)
    # triangle-rotation equivariance of the shear part, checked in floats
    sigma, c3, s3 = 0.37, 0.6, 0.8
    imgs = completing_square_images(sigma, c3, s3, kind="float")
    th = 2 * math.pi / 3
    rot = np.array([[math.cos(th), 0, -math.sin(th), 0],
                    [0, math.cos(th), 0, -math.sin(th)],
                    [math.sin(th), 0, math.cos(th), 0],
                    [0, math.sin(th), 0, math.cos(th)]])  # acts on (x,y,u,v)
    rng = np.random.default_rng(4)
    for _ in range(20):
        pt = rng.normal(size=4) * 0.5
        lhs = np.array([img.evaluate(rot @ pt) for img in imgs])
        rhs = rot @ np.array([img.evaluate(pt) for img in imgs])
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_residual_coeffs_quarter_turn_slots():
    lc = LandauCoeffs(a3=Fraction(3), a4=Fraction(5), b4=Fraction(7),
                      a5=Fraction(11), b5=Fraction(13), a6=Fraction(17),
                      b6=Fraction(19), c6=Fraction(23), d6=Fraction(29))
    # xi = pi/2: C = cos(3 xi) = 0, S = sin(3 xi) = -1
    red = residual_coeffs(lc, Fraction(1, 2), Fraction(0), Fraction(1))
    assert (red.C, red.S) == (0, -1)
    assert red.e3 == lc.a3
    assert red.e4 == lc.b4
    assert red.e5 == lc.b5
    assert red.m == lc.b6
    assert red.n == lc.c6


def test_residual_coeffs_aligned_slots_and_tricritical():
    a3, b4 = Fraction(3, 2), Fraction(5, 4)
    lc = LandauCoeffs(a3=a3, b4=b4)
    mu = Fraction(7, 8)
    red = residual_coeffs(lc, mu, Fraction(1), Fraction(0))      # xi = 0
    assert red.e3 == 0 and red.e5 == 0
    assert red.e4 == b4 - 9 * a3 * a3 / (8 * mu)
    # vanishing quartic slot at the shifted temperature
    t0 = Fraction(1, 10)   # U0 = 1
    t1 = t0 + 9 * a3 * a3 / (20 * b4)
    mu1 = (10 * t1 - 1) / 4
    assert residual_coeffs(lc, mu1, Fraction(1), Fraction(0)).e4 == 0


def test_residual_vertex_rejected():
    with pytest.raises(ValueError):
        residual_coeffs(LandauCoeffs(a3=Fraction(1)), 0, Fraction(1), Fraction(0))


def test_sigma_elimination_identity():
    rng = random.Random(2)
    for _ in range(20):
        a3 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        mu = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        sigma = -3 * a3 / (4 * mu)
        assert 2 * mu * sigma ** 2 == -Fraction(3, 2) * a3 * sigma


def test_printed_variant_discrepancies_are_the_known_ones():
    # raw e5 differs from the validated value by 18*a3*S*C^2*sigma^2 (the
    # sign slip on its middle term); the printed m, n differ from the
    # validated ones exactly by the missing a6*C^2 term
    rng = random.Random(6)
    for _ in range(10):
        lc = rand_lc(rng)
        mu = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        c, s = pythagorean_pair(Fraction(rng.randint(-5, 5), rng.randint(1, 6)))
        red = residual_coeffs(lc, mu, c, s)
        var = printed_formula_variants(lc, mu, c, s)
        c3, s3 = triple_angle(c, s)
        sigma = -3 * lc.a3 / (4 * mu)
        assert var["e5_simplified"] == red.e5
        assert var["e5_raw"] - red.e5 == -18 * lc.a3 * s3 * c3 ** 2 * sigma ** 2
        assert red.m - var["m_raw"] == lc.a6 * c3 ** 2
        assert red.n - var["n_printed"] == -lc.a6 * c3 ** 2


def test_e2_from_perturbation():
    assert e2_from_perturbation(0, 0, 1.0) == 0
    assert e2_from_perturbation(1, 0, 1.0) == 2.5
    # vanishes identically along the local cone generator 10 t = sqrt(3/2) U0 rho
    for rho in (0.3, -1.7, 0.01):
        t = math.sqrt(1.5) * rho / 10.0
        assert abs(e2_from_perturbation(t, rho, 1.0)) < 1e-14


def test_verify_reduction_exact_on_random_draws():
    rng = random.Random(11)
    for _ in range(8):
        lc = rand_lc(rng)
        mu = Fraction(rng.randint(1, 20), rng.choice([1, 2, 3, 4])) \
            * rng.choice([1, -1])
        c, s = pythagorean_pair(Fraction(rng.randint(-6, 6), rng.randint(1, 7)))
        rep = verify_reduction(lc, mu, c, s)
        assert rep.quadratic_ok
        assert rep.max_mixed_coeff == 0
        assert not rep.mixed_offenders
        assert rep.residual_match_error == 0
        assert rep.quartic_shear_residual_shift == 0


def test_verify_reduction_requires_unit_circle_pair():
    with pytest.raises(ValueError):
        verify_reduction(LandauCoeffs(a3=Fraction(1)), Fraction(1),
                         Fraction(1, 2), Fraction(1, 2))


def test_residual_is_triangle_invariant():
    # the exact residual lies in the X, Y subring by construction (match
    # error zero); spot-check rotation invariance in floats as well
    lc = rand_lc(random.Random(9))
    c, s = pythagorean_pair(Fraction(1, 4))
    rep = verify_reduction(lc, Fraction(2, 3), c, s)
    q = rep.residual_series
    th = 2 * math.pi / 3
    rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    rng = np.random.default_rng(5)
    qf = TruncSeries(2, 6, {e: float(v) for e, v in q.coeffs.items()},
                     kind="float")
    for _ in range(20):
        pt = rng.normal(size=2)
        assert qf.evaluate(rot @ pt) == pytest.approx(qf.evaluate(pt),
                                                      rel=1e-10, abs=1e-10)


def test_angle_plus_pi_consistency():
    # replacing xi by xi + pi flips all rotated coordinates, so the residual
    # picks up the parity of each slot: e3, e5 flip and e4, m, n persist
    lc = rand_lc(random.Random(12))
    mu = Fraction(5, 6)
    c, s = pythagorean_pair(Fraction(3, 5))
    red = residual_coeffs(lc, mu, c, s)
    red_pi = residual_coeffs(lc, mu, -c, -s)
    assert red_pi.e3 == -red.e3
    assert red_pi.e5 == -red.e5
    assert red_pi.e4 == red.e4
    assert (red_pi.m, red_pi.n) == (red.m, red.n)
    # and both angles pass the exact end-to-end verification
    assert verify_reduction(lc, mu, -c, -s).residual_match_error == 0


def test_shear_inverse_is_exact():
    imgs = completing_square_images(Fraction(1, 3), Fraction(3, 5),
                                    Fraction(4, 5))
    inv = invert_map(imgs)
    variables = TruncSeries.variables(4, 6)
    assert [i.substitute(inv) for i in imgs] == variables
    assert [i.substitute(imgs) for i in inv] == variables
