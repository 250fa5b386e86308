import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from extres.models import (
    ANHARMONIC_PRINTED,
    MODELS,
    CoefficientUnavailable,
    _best_frequency,
    _lowest,
    anharmonic_series,
    bender_wu_generate,
    model_series,
    oracle_ground_state,
    oracle_strong_limit,
    oracle_zero_dim,
    oracle_zero_dim_strong_limit,
    zero_dim_series,
)
from extres.signature import to_uniform

ROOT_PI = math.sqrt(math.pi)


def test_zero_dim_first_terms():
    s = zero_dim_series(1)
    assert str(s.sig) == "2|1|4"
    assert s.coeffs == pytest.approx((ROOT_PI, -0.75 * ROOT_PI), rel=1e-15)


def test_zero_dim_b8():
    # (-1)^2 (7/2)!/2! = 105/32 sqrt(pi)
    assert zero_dim_series(2).coeffs[2] == pytest.approx(105 / 32 * ROOT_PI, rel=1e-14)


@pytest.mark.parametrize("N", range(7))
def test_zero_dim_coefficients_by_quadrature(N):
    # term lam^N of sqrt(2) int exp(-x^2/2) (-x^4/4)^N / N! dx
    val, _ = integrate.quad(
        lambda x: math.exp(-0.5 * x * x) * (-(x**4) / 4) ** N / math.factorial(N),
        0, np.inf, epsabs=0, epsrel=1e-13, limit=200,
    )
    assert zero_dim_series(max(N, 1)).coeffs[N] == pytest.approx(math.sqrt(2) * val, rel=1e-10)


def test_zero_dim_uniform_coefficients_are_one():
    assert to_uniform(zero_dim_series(6)) == pytest.approx([1.0] * 7, rel=1e-13)


def test_anharmonic_printed():
    assert anharmonic_series(1).coeffs == (Fraction(1, 2), Fraction(3, 16))
    assert anharmonic_series(5).coeffs == ANHARMONIC_PRINTED
    assert str(anharmonic_series(5).sig) == "2|-1|3"


def test_anharmonic_printed_bound():
    with pytest.raises(CoefficientUnavailable, match="enable generator"):
        anharmonic_series(6)
    assert MODELS["anharmonic"].max_order == 5


def test_exact_column_decimals():
    # the table's exact column, at its four printed decimals
    exact = list(ANHARMONIC_PRINTED[3:]) + [bender_wu_generate(6)[6]]
    for b, printed in zip(exact, [0.3252, -0.9425, 3.4970, -15.6208]):
        assert abs(float(b) - printed) <= 1e-4


def test_bender_wu_matches_printed():
    gen = bender_wu_generate(5)
    assert tuple(gen) == ANHARMONIC_PRINTED
    assert gen[1] == Fraction(3, 16)


def test_bender_wu_sixth_against_oracle():
    # (E(g) - first six terms)/g^6 fitted at small coupling; smaller g drowns
    # in the oracle's rounding, larger g in the divergent tail
    b = bender_wu_generate(6)
    assert b[6] == Fraction(-65518401, 4194304)
    gs = np.linspace(0.02, 0.06, 9)
    head = [sum(float(c) * g**k for k, c in enumerate(b[:6])) for g in gs]
    ratio = (np.array([oracle_ground_state(g, tol=1e-12) for g in gs]) - head) / gs**6
    fit = np.polynomial.polynomial.polyfit(gs, ratio, 3)
    assert fit[0] == pytest.approx(float(b[6]), rel=1e-2)


def test_model_series_auto_source():
    assert model_series("anharmonic", 6).coeffs[-1] == Fraction(-65518401, 4194304)
    with pytest.raises(CoefficientUnavailable):
        model_series("anharmonic", 6, "printed")
    with pytest.raises(KeyError):
        model_series("sextic", 2)


def test_oracle_zero_dim():
    assert oracle_zero_dim(0.0) == pytest.approx(ROOT_PI, rel=1e-13)
    # large-coupling asymptote lam^(-1/4) times the strong limit
    lam = 1e8
    assert oracle_zero_dim(lam) * lam**0.25 == pytest.approx(oracle_zero_dim_strong_limit(), rel=1e-3)
    assert oracle_zero_dim_strong_limit() == pytest.approx(math.gamma(0.25) / 2, rel=1e-13)


@pytest.mark.parametrize("lam, expected", [(2.0, 0.6961758), (4.0, 0.8037707), (8.0, 0.9515685)])
def test_oracle_ground_state(lam, expected):
    assert oracle_ground_state(lam) == pytest.approx(expected, abs=5e-8)


def test_oracle_harmonic():
    assert oracle_ground_state(0.0) == 0.5


def test_oracle_strong_limit():
    assert oracle_strong_limit() == pytest.approx(0.4208049, abs=1e-6)


def test_strong_scaling():
    # E(m=0, lam) = lam^(1/3) E0, and E(lam)/lam^(1/3) -> E0
    e0 = oracle_strong_limit()
    assert _lowest(0.0, 5.0, _best_frequency(0.0, 5.0), 200) == pytest.approx(5 ** (1 / 3) * e0, rel=1e-9)
    lam = 1e6
    assert oracle_ground_state(lam) / lam ** (1 / 3) == pytest.approx(e0, rel=1e-3)


def test_variational_monotone():
    freq = _best_frequency(1.0, 4.0)
    energies = [_lowest(1.0, 4.0, freq, n) for n in (10, 20, 40, 80, 160)]
    assert all(b <= a + 1e-13 for a, b in zip(energies, energies[1:]))
