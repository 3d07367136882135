from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from semifact import invariants as inv
from semifact.core import Element, SemigroupPresentation, denumerant_table, factorizations
from semifact.errors import InsufficientSamples, NoFitWithinBounds
from semifact.quasipoly import (
    QuasiPolynomial,
    TranslatedCone,
    cone_coordinates,
    cone_fit,
    fit_fixed,
    fit_search,
    qp_eval,
    rank,
    ray_fit,
    solve_exact,
)


def test_qp_eval():
    const = QuasiPolynomial(1, 0, ((F(5),),))
    assert all(qp_eval(const, n) == 5 for n in range(10))
    qp = QuasiPolynomial(2, 1, ((F(0), F(1, 2)), (F(1, 2), F(1, 2))))
    assert qp_eval(qp, 3) == 2


def test_qp_json_roundtrip():
    qp = QuasiPolynomial(2, 1, ((F(0), F(1, 2)), (F(1, 2), F(1, 3))))
    doc = qp.to_json()
    assert doc == {"period": 2, "degree": 1, "coeffs": [[0, 1], [1, 2], [1, 2], [1, 3]]}
    assert QuasiPolynomial.from_json(doc) == qp


def test_qp_rejects_zero_leading_row():
    with pytest.raises(ValueError):
        QuasiPolynomial(1, 1, ((F(1),), (F(0),)))


def test_solve_exact():
    assert solve_exact([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_exact([[1], [1]], [1, 2]) is None
    with pytest.raises(InsufficientSamples):
        solve_exact([[1, 1], [2, 2]], [1, 2])
    assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2


def test_fit_fixed_constant():
    qp = fit_fixed({n: 4 for n in range(10)}, 0, 1)
    assert qp.degree == 0 and qp.coeffs == ((F(4),),)
    with pytest.raises(InsufficientSamples):
        fit_fixed({0: 1}, 0, 1)


def test_denumerant_quasipolynomial(mcnugget):
    counts = denumerant_table(mcnugget, 720)
    samples = {n: counts[n] for n in range(721)}
    qp = fit_fixed(samples, 2, 180, 0)
    assert set(qp.leading()) == {F(1, 2160)}
    assert qp_eval(qp, 60) == 5
    report = fit_search(samples, 2, 180)
    assert report.onset == 0 and report.residual_positions == ()
    assert report.row_periods == (180, 6, 1)
    assert report.exact_match_count == 721


def test_length_count_fit(mcnugget):
    table = inv.scan(mcnugget, 0, 500, ["lengths"])
    samples = {r.element.free[0]: len(r.lengths) for r in table}
    qp = fit_fixed(samples, 1, 60, 92)
    assert set(qp.leading()) == {F(7, 60)}
    assert fit_fixed(samples, 1, 60, 91) is None
    report = fit_search(samples, 1, 60)
    assert report.onset == 92 and 91 in report.residual_positions
    # minimality: no proper divisor of the reported period fits, and the onset cannot move down
    for d in range(1, report.qp.period):
        if report.qp.period % d == 0:
            fit = fit_fixed(samples, 1, d, 92) if all(
                sum(1 for n in samples if n >= 92 and n % d == c) >= 3 for c in range(d)
            ) else None
            assert fit is None


def test_fit_search_prefers_low_degree():
    samples = {n: (n // 2) for n in range(60)}  # n/2 - (n mod 2)/2
    report = fit_search(samples, 2, 4)
    assert report.qp.degree == 1 and report.qp.period == 2
    assert set(report.qp.leading()) == {F(1, 2)}


def test_fit_search_no_fit():
    samples = {n: n * n * n for n in range(40)}
    with pytest.raises(NoFitWithinBounds):
        fit_search(samples, 2, 4)


@given(
    period=st.sampled_from([1, 2, 3, 4, 6]),
    coeffs=st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=12, max_size=12),
    onset=st.integers(0, 20),
)
def test_fit_search_recovers_quasipolynomials(period, coeffs, onset):
    a0 = coeffs[:period]
    a1 = [F(1, 3)] * period
    truth = QuasiPolynomial(period, 1, (tuple(a0), tuple(a1)))
    samples = {n: qp_eval(truth, n) for n in range(onset, onset + 60)}
    report = fit_search(samples, 1, 12)
    for n, v in samples.items():
        if n >= report.onset:
            assert qp_eval(report.qp, n) == v
    assert report.onset == onset
    assert truth.period % report.qp.period == 0


def test_cone_coordinates():
    cone = TranslatedCone.of((0, 0), [(2, 1), (3, 3)])
    assert cone_coordinates(cone, (5, 4)) == (1, 1)
    assert cone_coordinates(cone, (1, 0)) is None
    shifted = TranslatedCone.of((1, 1), [(2, 1), (3, 3)])
    assert cone_coordinates(shifted, (1, 1)) == (0, 0)


@given(c1=st.integers(0, 30), c2=st.integers(0, 30))
def test_cone_coordinates_roundtrip(c1, c2):
    cone = TranslatedCone.of((2, 2), [(2, 1), (3, 3)])
    point = cone.point((c1, c2))
    assert cone_coordinates(cone, point) == (c1, c2)
    off = Element((point.free[0] + 1, point.free[1]))
    assert cone_coordinates(cone, off) is None or cone.point(cone_coordinates(cone, off)) == off


def test_cone_rejects_dependent_generators():
    with pytest.raises(ValueError):
        TranslatedCone.of((0, 0), [(1, 1), (2, 2)])


def test_cone_fit_reference_cone(plane):
    cp = cone_fit(plane, TranslatedCone.of((0, 0), [(2, 1), (3, 3)]), "z_count", 1, 6)
    assert cp.ambient_form == {(1, 0): F(-1, 3), (0, 1): F(2, 3), (0, 0): F(1)}
    for c in [(0, 0), (3, 2), (5, 6)]:
        point = cp.cone.point(c)
        assert cp(c) == len(factorizations(plane, point))
    shifted = cone_fit(plane, TranslatedCone.of((1, 1), [(2, 1), (3, 3)]), "z_count", 1, 6)
    assert shifted is not None


def test_cone_fit_constant_and_failures(plane):
    cone = TranslatedCone.of((0, 0), [(2, 1), (3, 3)])
    cp = cone_fit(plane, cone, lambda e: 7, 0, 3)
    assert cp.poly == {(0, 0): F(7)}
    with pytest.raises(InsufficientSamples):
        cone_fit(plane, cone, "z_count", 3, 2)
    # |Z| on the quadrant cone is not affine-linear
    assert cone_fit(plane, TranslatedCone.of((0, 0), [(2, 1), (1, 2)]), "z_count", 1, 6) is None


def test_ray_fit_counts(mcnugget):
    rf = ray_fit(mcnugget, 6, "z_count", 2, 30)
    assert rf.observed_degree == 2 == rf.factorization_rank - 1
    # leading coefficient n^(r-1) / ((r-1)! n_1 ... n_r) with n = 6
    assert set(rf.report.qp.leading()) == {F(6**2, 2 * 6 * 9 * 20)}


def test_ray_fit_lengths(mcnugget):
    rf = ray_fit(mcnugget, 6, "lengths", 1, 10, steps=60)
    assert rf.observed_degree == 1
    assert rf.factorization_rank is None
