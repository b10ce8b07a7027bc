import math
from fractions import Fraction

import numpy as np
import pytest

from kkls.groupact import (MolienSeries, conjugation_operator, d3_elements,
                           d3tilde_elements, d3xd3_elements, haar_rotations,
                           molien_finite, molien_rational, molien_so3_conjugacy,
                           spanning_check, _axis_flip_rotations, _cyclic_rotations)
from kkls.invariants import eval_basis_r2


def test_d3_product_table_closed():
    elems = d3_elements()
    assert len(elems) == 6
    mats = [e.matrix for e in elems]
    for a in mats:
        for b in mats:
            prod = a @ b
            assert any(np.allclose(prod, c, atol=1e-12) for c in mats)


def test_d3_elements_fix_hilbert_basis():
    for e in d3_elements():
        for x, u in [(1.0, 0.3), (-0.7, 2.1), (0.25, -0.5)]:
            gx, gu = e.matrix @ np.array([x, u])
            assert eval_basis_r2(gx, gu) == pytest.approx(eval_basis_r2(x, u),
                                                          abs=1e-12)


def test_d3_orthogonality_exact():
    for e in d3_elements() + d3tilde_elements():
        assert e.orthogonality_defect() < 1e-14


def test_72_group_closure_and_subgroup():
    g72 = d3tilde_elements()
    assert len(g72) == 72
    g36 = d3xd3_elements()
    assert len(g36) == 36
    mats36 = [e.exact for e in g36]
    assert all(m in [e.exact for e in g72] for m in mats36)


def test_tau_kappa_tau_relation():
    # the conjugated reflection negates the second complex slot: (z,w)->(z,-w)
    from kkls.groupact import d3tilde_generators, _q3_matmul
    _, kappa, tau = d3tilde_generators()
    tkt = _q3_matmul(_q3_matmul(tau.exact, kappa.exact), tau.exact)
    expect = np.diag([1.0, 1.0, -1.0, -1.0])
    got = np.array([[x.to_float() for x in row] for row in tkt])
    assert np.allclose(got, expect)


def test_72_group_determinants_reported():
    # the transposition coset has determinant -1 on the four order parameters;
    # recorded, not asserted as a subgroup-of-SO(4) claim
    dets = sorted(round(e.det()) for e in d3tilde_elements())
    assert dets.count(1) == 36 and dets.count(-1) == 36
    assert all(round(e.det()) == 1 for e in d3xd3_elements())


def test_molien_d3_matches_closed_form():
    series = molien_finite(d3_elements(), 6)
    assert series == [1, 0, 1, 1, 1, 1, 2]
    assert series == molien_rational([], [2, 3], 6)


def test_molien_72_and_36_match_closed_forms():
    assert molien_finite(d3tilde_elements(), 12) == \
        molien_rational([5], [2, 3, 4, 6], 12)
    assert molien_finite(d3xd3_elements(), 12) == \
        molien_rational([5, 6], [2, 3, 4, 6], 12)
    # first coefficients as hand-expanded
    assert molien_finite(d3tilde_elements(), 6) == [1, 0, 1, 1, 2, 2, 4]


def test_molien_rational_trivial_cases():
    assert molien_rational([], [1], 5) == [1, 1, 1, 1, 1, 1]
    assert molien_finite([d3_elements()[0].__class__.from_exact(
        [[1]])], 4) == [1, 1, 1, 1, 1]  # trivial group on R^1


def test_molien_so3_matches_closed_form_and_plateaus():
    series, residual = molien_so3_conjugacy(10)
    assert residual < 1e-8
    assert series == molien_rational([], [2, 3], 10)
    doubled, _ = molien_so3_conjugacy(10, grid_size=2 * (4 * 10 + 4))
    assert doubled == series


def test_molien_counts_match_reynolds_projection():
    # r_d equals the trace of the group-averaged action on degree-d monomials
    from kkls.polyser import TruncSeries
    g72 = d3tilde_elements()
    series = molien_finite(g72, 4)
    for d in range(1, 5):
        monos = [e for e in _exponents(4, d)]
        trace = 0.0
        for exps in monos:
            mono = TruncSeries(4, d, {exps: 1.0}, kind="float")
            acc = 0.0
            for e in g72:
                imgs = _linear_images(e.matrix, d)
                acc += mono.substitute(imgs).coeff(exps)
            trace += acc / len(g72)
        assert round(trace) == series[d]
        assert abs(trace - round(trace)) < 1e-9


def _exponents(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree + 1):
        for rest in _exponents(nvars - 1, degree - k):
            yield (k,) + rest


def _linear_images(matrix, cap):
    from kkls.polyser import TruncSeries
    variables = TruncSeries.variables(4, cap, kind="float")
    return [sum((variables[j].scale(float(matrix[i, j])) for j in range(4)),
                TruncSeries.zero(4, cap, kind="float"))
            for i in range(4)]


def test_conjugation_operator_identity_and_orthogonality():
    assert np.allclose(conjugation_operator(np.eye(3)), np.eye(5))
    rng = np.random.default_rng(2)
    for r in haar_rotations(100, seed=42):
        m = conjugation_operator(r)
        assert np.max(np.abs(m.T @ m - np.eye(5))) < 1e-12
        a = rng.normal(size=5)
        b = rng.normal(size=5)
        assert (m @ a) @ (m @ b) == pytest.approx(a @ b, abs=1e-12)


def test_conjugation_operator_rejects_bad_input():
    with pytest.raises(ValueError):
        conjugation_operator(np.diag([2.0, 1.0, 1.0]))
    with pytest.raises(ValueError):
        conjugation_operator(np.diag([-1.0, 1.0, 1.0]))


def test_explicit_matrices_alone_do_not_span():
    ops = [conjugation_operator(k).reshape(-1)
           for k in _axis_flip_rotations() + _cyclic_rotations()[1:]]
    assert np.linalg.matrix_rank(np.array(ops)) < 25


def test_spanning_check_ranks_and_identity():
    report = spanning_check(30, seed=0)
    assert report.linear_rank == 25
    assert report.affine_rank == 25
    assert report.identity_residual < 1e-12
    with pytest.raises(ValueError):
        spanning_check(10, seed=0)


def test_molien_series_validation():
    with pytest.raises(ValueError):
        MolienSeries([2, 0, 1])
    with pytest.raises(ValueError):
        MolienSeries([1, -1])
