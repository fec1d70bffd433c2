import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal
from scipy.special import zeta

from psibeta.core import (
    ConstantBeta,
    ConstraintViolation,
    DomainError,
    ExplicitBeta,
    ExplicitPsi,
    GeometricPsi,
    GeometricTail,
    InvalidRange,
    LinearBeta,
    MultiplierScheme,
    NotSquareSummable,
    ParameterSet,
    ParseError,
    PowerLawPsi,
    SchemeDomain,
    TailNotSummable,
    TriangularMethod,
    TrigPolynomial,
    compensated_sum,
    fejer_method,
    fourier_method,
    frozen_scheme,
    l1_cutoff,
    l2_cutoff,
    parse_beta,
    parse_method,
    parse_psi,
    periodic_grid,
    psi_eval,
    psi_tail_abs_bound,
    psi_tail_sq_sum,
    scheme_from_family,
    triangular_validate,
    validate_square_summable,
    vdp_method,
)

SEQUENCES = [
    GeometricPsi(0.5),
    GeometricPsi(0.95),
    PowerLawPsi(1.0),
    PowerLawPsi(0.75),
    ExplicitPsi((1.0, 0.5, 0.1)),
    ExplicitPsi((0.3, -0.2), GeometricTail(0.8, 2.0)),
]


def test_compensated_sum_keeps_small_terms():
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert compensated_sum(np.array([0.1] * 10)) == 1.0
    assert compensated_sum([]) == 0.0


@pytest.mark.parametrize(
    "seq, k, expected",
    [
        (GeometricPsi(0.5), 3, 0.125),
        (PowerLawPsi(1.0), 4, 0.25),
        (ExplicitPsi((1.0, 0.5, 0.1)), 5, 0.0),
        (ExplicitPsi((1.0,), GeometricTail(0.5, 4.0)), 3, 0.5),
    ],
)
def test_psi_eval(seq, k, expected):
    assert psi_eval(seq, k) == expected


def test_psi_eval_starts_at_one():
    with pytest.raises(InvalidRange):
        psi_eval(GeometricPsi(0.5), 0)


def test_geometric_tail_closed_form():
    assert psi_tail_sq_sum(GeometricPsi(0.5), 2, 1e-15) == pytest.approx(
        0.020833333333333332, rel=1e-15
    )
    tail = psi_tail_sq_sum(GeometricPsi(0.5), 60, 1e-15)
    assert tail == pytest.approx(0.5**122 / 0.75)
    assert tail < 1e-36


def test_explicit_tail_sums_remaining_values():
    assert psi_tail_sq_sum(ExplicitPsi((1.0, 1.0)), 1, 1e-15) == 1.0
    assert psi_tail_sq_sum(ExplicitPsi((1.0, 1.0)), 0, 1e-15) == 2.0
    seq = ExplicitPsi((1.0,), GeometricTail(0.5))
    assert psi_tail_sq_sum(seq, 0) == pytest.approx(1.0 + 0.25**2 / 0.75)


@pytest.mark.parametrize("r", [0.75, 1.0, 1.5, 2.0])
@pytest.mark.parametrize("n", [0, 1, 10, 100])
def test_power_law_tail_matches_hurwitz_zeta(r, n):
    tol = 1e-12
    value = psi_tail_sq_sum(PowerLawPsi(r), n, tol)
    assert value == pytest.approx(zeta(2 * r, n + 1), abs=2 * tol)


@pytest.mark.parametrize("seq", SEQUENCES)
def test_tail_differences_are_squared_terms(seq):
    tol = 1e-12
    tails = [psi_tail_sq_sum(seq, n, tol) for n in range(0, 102)]
    for n in range(101):
        assert tails[n] - tails[n + 1] == pytest.approx(seq(n + 1) ** 2, abs=2 * tol)
        assert tails[n + 1] <= tails[n] + 2 * tol


@given(q=st.floats(min_value=0.01, max_value=0.99), n=st.integers(0, 100))
@settings(deadline=None)
def test_geometric_tail_drops_by_one_term(q, n):
    seq = GeometricPsi(q)
    step = psi_tail_sq_sum(seq, n) - psi_tail_sq_sum(seq, n + 1)
    assert step == pytest.approx(q ** (2 * (n + 1)), rel=1e-9, abs=1e-14)


def test_validate_square_summable():
    assert validate_square_summable(GeometricPsi(0.99))
    assert not validate_square_summable(PowerLawPsi(0.5))
    assert validate_square_summable(PowerLawPsi(0.75))
    assert validate_square_summable(ExplicitPsi((1.0,)))


def test_tail_of_non_square_summable_power_law():
    with pytest.raises(NotSquareSummable):
        psi_tail_sq_sum(PowerLawPsi(0.5), 0)


@pytest.mark.parametrize(
    "make",
    [lambda: GeometricPsi(1.0), lambda: GeometricPsi(0.0), lambda: PowerLawPsi(0.0)],
)
def test_bad_parameters(make):
    with pytest.raises(DomainError):
        make()


def test_abs_tail_and_cutoffs():
    assert psi_tail_abs_bound(GeometricPsi(0.5), 0) == pytest.approx(1.0)
    assert math.isinf(psi_tail_abs_bound(PowerLawPsi(1.0), 0))
    assert l1_cutoff(GeometricPsi(0.5), 1e-3) == 10
    assert l2_cutoff(GeometricPsi(0.5), 1e-6) == 10
    with pytest.raises(TailNotSummable):
        l1_cutoff(PowerLawPsi(1.0), 1e-6)


def test_power_law_abs_tail_bounds_the_sum():
    seq = PowerLawPsi(2.0)
    assert psi_tail_abs_bound(seq, 5) >= zeta(2.0, 6)


def test_beta_phases_are_exact_quarter_turns():
    cos, sin = LinearBeta(1.0).phases([1, 2, 3, 4])
    assert_array_equal(cos, [0.0, -1.0, 0.0, 1.0])
    assert_array_equal(sin, [1.0, 0.0, -1.0, 0.0])
    cos, sin = ConstantBeta(-1.0).phases([1])
    assert_array_equal(cos, [0.0])
    assert_array_equal(sin, [-1.0])
    cos, sin = ConstantBeta(0.5).phases([1, 2])
    assert_allclose(cos, math.sqrt(0.5))
    assert_allclose(sin, math.sqrt(0.5))


def test_explicit_beta_default():
    beta = ExplicitBeta((1.0, 3.0), default=2.0)
    assert beta(2) == 3.0
    assert beta(7) == 2.0


@pytest.mark.parametrize("n", [0, 2])
def test_fourier_method(n):
    method = fourier_method(n)
    assert method.lam == (1.0,) * (n + 1)
    assert method.mu == (0.0,) * (n + 1)


def test_vdp_method_taper():
    assert vdp_method(5, 2).lam[4] == pytest.approx(2 / 3)
    assert vdp_method(3, 0) == fourier_method(3)
    assert vdp_method(2, 2).lam == pytest.approx((1.0, 2 / 3, 1 / 3))
    assert fejer_method(2) == vdp_method(2, 2)
    with pytest.raises(InvalidRange):
        vdp_method(2, 3)
    with pytest.raises(InvalidRange):
        vdp_method(2, -1)


@given(n=st.integers(0, 60), data=st.data())
@settings(deadline=None)
def test_vdp_multipliers_decrease_within_unit_interval(n, data):
    m = data.draw(st.integers(0, n))
    lam = np.array(vdp_method(n, m).lam)
    assert np.all((lam >= 0.0) & (lam <= 1.0))
    assert np.all(np.diff(lam) <= 0.0)


def test_triangular_validate():
    assert triangular_validate(fourier_method(3))
    with pytest.raises(ConstraintViolation) as info:
        triangular_validate(TriangularMethod(1, (0.9, 1.0), (0.0, 0.0)))
    assert info.value.index == 0
    with pytest.raises(ConstraintViolation) as info:
        triangular_validate(TriangularMethod(1, (1.0, 1.0), (0.1, 0.0)))
    assert info.value.index == 0
    with pytest.raises(ConstraintViolation) as info:
        triangular_validate(TriangularMethod(2, (1.0, 1.0), (0.0, 0.0)))
    assert info.value.index == 2
    with pytest.raises(ConstraintViolation) as info:
        triangular_validate(TriangularMethod(1, (1.0, math.nan), (0.0, 0.0)))
    assert info.value.index == 1


def test_method_multipliers_vanish_beyond_order():
    lam, mu = TriangularMethod(1, (1.0, 0.5), (0.0, 0.25)).multipliers(3)
    assert_array_equal(lam, [0.5, 0.0, 0.0])
    assert_array_equal(mu, [0.25, 0.0, 0.0])


def test_frozen_scheme():
    scheme = frozen_scheme(fourier_method(2))
    scheme.check(123.0)
    assert scheme.support(0.1) == 2
    lam, mu = scheme.multipliers(0.1, 4)
    assert_array_equal(lam, [1.0, 1.0, 0.0, 0.0])
    assert_array_equal(mu, np.zeros(4))


def test_scheme_from_family():
    scheme = scheme_from_family(fejer_method)
    scheme.check(0.25)
    assert scheme.support(0.25) == 4
    assert scheme.domain.limit_point == 0.0
    lam, _ = scheme.multipliers(0.5, 3)
    assert lam == pytest.approx([2 / 3, 1 / 3, 0.0])
    with pytest.raises(SchemeDomain) as info:
        scheme.check(0.3)
    assert info.value.delta == 0.3


def test_scheme_checks_index_zero():
    scheme = MultiplierScheme(
        ParameterSet("(0, 1)", limit_point=0.0),
        lambda_at=lambda delta, k: 1.0 - delta,
        mu_at=lambda delta, k: 0.0,
    )
    with pytest.raises(ConstraintViolation):
        scheme.check(0.5)


def test_trig_polynomial_norm_by_parseval():
    poly = TrigPolynomial(2.0, [1.0, 0.0], [0.0, 2.0])
    assert poly.constant == 1.0
    assert poly.l2_norm() == pytest.approx(math.sqrt(math.pi * (2.0 + 1.0 + 4.0)))


def test_trig_polynomial_arithmetic():
    f = TrigPolynomial(1.0, [1.0], [2.0])
    g = TrigPolynomial(0.0, [0.0, 1.0], [0.0, -1.0])
    h = 2.0 * f - g
    assert h.a0 == 2.0
    assert_array_equal(h.cos_coeffs, [2.0, -1.0])
    assert_array_equal(h.sin_coeffs, [4.0, 1.0])
    with pytest.raises(ValueError):
        h.cos_coeffs[0] = 0.0


def test_trig_polynomial_shapes_must_match():
    with pytest.raises(InvalidRange):
        TrigPolynomial(0.0, [1.0, 2.0], [1.0])


@pytest.mark.parametrize("N", [8, 16, 64])
def test_sample_matches_direct_evaluation(N):
    rng = np.random.default_rng(N)
    poly = TrigPolynomial(rng.normal(), rng.normal(size=5), rng.normal(size=5))
    assert_allclose(poly.sample(N), poly.evaluate(periodic_grid(N)), atol=1e-13)


def test_periodic_grid():
    ts = periodic_grid(4)
    assert_allclose(ts, [-math.pi, -math.pi / 2, 0.0, math.pi / 2])


def test_parse_psi_literals(write_json):
    assert parse_psi("geometric:q=0.5") == GeometricPsi(0.5)
    assert parse_psi("geometric:0.5") == GeometricPsi(0.5)
    assert parse_psi("power:r=1.5") == PowerLawPsi(1.5)
    tail = {"kind": "geometric", "q": 0.5, "scale": 4}
    path = write_json("psi.json", {"values": [1, 0.5], "tail": tail})
    seq = parse_psi(f"file:{path}")
    assert seq(2) == 0.5
    assert seq(3) == 0.5


@pytest.mark.parametrize(
    "text", ["power:r=0.5", "cubic:q=1", "geometric", "geometric:q=2", "geometric:x=1"]
)
def test_parse_psi_rejects(text):
    with pytest.raises(ParseError) as info:
        parse_psi(text)
    assert info.value.field == "psi"


def test_parse_beta_literals():
    assert parse_beta("const:1") == ConstantBeta(1.0)
    assert parse_beta("linear:c=0.37") == LinearBeta(0.37)
    with pytest.raises(ParseError):
        parse_beta("wobbly:1")


def test_parse_method(write_json):
    method = parse_method('{"n": 1, "lambda": [1, 0.5], "mu": [0, 0.25]}')
    assert method == TriangularMethod(1, (1.0, 0.5), (0.0, 0.25))
    assert parse_method('{"n": 2, "lambda": [1, 1, 1]}') == fourier_method(2)
    path = write_json("method.json", method.as_dict())
    assert parse_method(str(path)) == method


@pytest.mark.parametrize(
    "text", ['{"n": 1, "lambda": [0.9, 1]}', '{"lambda": [1]}', "{not json", "/no/such"]
)
def test_parse_method_rejects(text):
    with pytest.raises(ParseError) as info:
        parse_method(text)
    assert info.value.field == "method"
