"""Zeta evaluators: oracle values, reflection, the RS/EM consistency band."""

import cmath
import math

import numpy as np
import pytest

from birkhoff_lab.errors import (
    AccuracyError,
    CapabilityError,
    ConfigError,
    PoleError,
    RoutingError,
    SingularityError,
)
from birkhoff_lab.zeta import (
    Observable,
    ZetaEvaluator,
    envelope_exponents,
    envelope_soundness_report,
    interval_envelope,
    observe,
    observe_batch,
    rs_correction,
    rs_psi,
    rs_theta,
    rs_theta_stirling,
)

# -- oracles (independent of the implementation under test) --------------------


def zeta_direct_series_richardson(s: float) -> float:
    """Direct series with integral tail and one Richardson step, real s > 1.

    zeta(s) - sum_{n<N} n^-s = N^{1-s}/(s-1) + N^-s/2 + O(N^{-s-1}); the
    Richardson step cancels the leading error power.
    """

    def tail_corrected(n_terms):
        n = np.arange(1, n_terms)
        head = float(np.sum(n ** (-s)))
        return head + n_terms ** (1 - s) / (s - 1) + 0.5 * n_terms ** (-s)

    t1, t2 = tail_corrected(2048), tail_corrected(4096)
    w = 2.0 ** (s + 1)  # next error term scales like N^{-(s+1)}
    return (w * t2 - t1) / (w - 1)


def zeta_eta_oracle(sigma: float, t: float = 0.0, terms: int = 60) -> complex:
    """zeta via the alternating eta function with Cohen-Villegas-Zagier
    acceleration: zeta(s) = eta(s) / (1 - 2^{1-s})."""
    s = complex(sigma, t)
    n = terms
    d = [(3 + math.sqrt(8.0)) ** n, None]
    d_n = 0.5 * ((3 + math.sqrt(8.0)) ** n + (3 - math.sqrt(8.0)) ** n)
    b = -1.0
    c = -d_n
    eta = 0.0j
    for k in range(n):
        c = b - c
        eta += c * (k + 1.0) ** (-s)
        b *= 2.0 * (k + n) * (k - n) / ((2.0 * k + 1.0) * (k + 1.0))
    eta /= d_n
    return eta / (1.0 - 2.0 ** (1.0 - s))


ZETA_HALF = -1.4603545088095868  # frozen from the eta oracle
ZETA_3_2 = 2.6123753486854883  # frozen from the direct-series oracle


def test_oracles_agree_on_frozen_values():
    assert zeta_direct_series_richardson(1.5) == pytest.approx(ZETA_3_2, abs=1e-10)
    assert zeta_eta_oracle(0.5).real == pytest.approx(ZETA_HALF, abs=1e-12)
    assert abs(zeta_eta_oracle(0.5).imag) < 1e-12


# -- Euler-Maclaurin -------------------------------------------------------------


@pytest.fixture(scope="module")
def ev():
    return ZetaEvaluator()


def test_em_basel(ev):
    assert abs(ev.zeta_em(2.0, 0.0) - math.pi**2 / 6) < 1e-10


def test_em_three_halves_vs_series_oracle(ev):
    assert abs(ev.zeta_em(1.5, 0.0) - ZETA_3_2) < 1e-8


def test_em_half_vs_eta_oracle(ev):
    assert abs(ev.zeta_em(0.5, 0.0) - ZETA_HALF) < 1e-10


def test_em_pole_and_domain(ev):
    with pytest.raises(PoleError):
        ev.zeta_em(1.0, 0.0)
    from birkhoff_lab.errors import DomainError

    with pytest.raises(DomainError):
        ev.zeta_em(2.5, 0.0)


def test_em_reflection(ev):
    a = ev.zeta_em(0.7, 12.3)
    b = ev.zeta_em(0.7, -12.3)
    assert a == b.conjugate()


def test_em_accuracy_error_reports_achieved_bound():
    weak = ZetaEvaluator(em_terms=10, em_bernoulli_order=1, target_abs_error=1e-12)
    with pytest.raises(AccuracyError) as err:
        weak.zeta_em(0.5, 25.0)
    assert err.value.achieved > 1e-12


def test_em_batch_matches_scalar(ev):
    t = np.array([-7.0, 0.5, 3.0, 29.0])
    batch = ev.zeta_em_batch(0.5, t)
    singles = np.array([ev.zeta_em(0.5, v) for v in t])
    assert np.max(np.abs(batch - singles)) < 1e-12


# -- Riemann-Siegel ---------------------------------------------------------------


def test_rs_reflection_exact(ev):
    a = ev.zeta_rs(77.7)
    b = ev.zeta_rs(-77.7)
    assert a == b.conjugate()
    assert abs(abs(a) - abs(b)) == 0.0


def test_rs_routing_guard(ev):
    with pytest.raises(RoutingError):
        ev.zeta_rs(10.0)


def test_rs_vs_em_at_100(ev):
    big = ZetaEvaluator(em_terms=500, em_bernoulli_order=6, target_abs_error=1e-9)
    assert abs(ev.zeta_rs(100.0) - big.zeta_em(0.5, 100.0)) < 1e-6


def test_rs_consistency_band(ev):
    rng = np.random.default_rng(31)
    t = rng.uniform(30.0, 200.0, 50)
    rs = ev.zeta_rs_batch(t)
    em = ev.zeta_em_batch(0.5, t)
    assert np.max(np.abs(rs - em)) < 1e-5


def test_z_function_real_via_stirling_theta(ev):
    for t in (50.0, 120.0, 333.0):
        z = ev.zeta_rs(t)
        assert abs((cmath.exp(1j * rs_theta_stirling(t)) * z).imag) < 1e-7


def test_theta_oracle_agreement():
    t = np.linspace(30, 500, 40)
    assert np.max(np.abs(rs_theta(t) - rs_theta_stirling(t))) < 1e-9


def test_rs_leading_correction_matches_closed_form():
    p = np.linspace(0.01, 0.99, 301)
    assert np.max(np.abs(rs_correction(p, 0) - rs_psi(p))) < 1e-6


def test_zeta_line_batch_routes_and_chunks(ev):
    t = np.array([0.0, -5.0, 40.0, -70.0, 2000.0])
    vals = ev.zeta_line_batch(0.5, t)
    assert abs(vals[0] - ZETA_HALF) < 1e-9
    assert vals[1] == ev.zeta_em(0.5, -5.0)
    assert abs(vals[2] - ev.zeta_rs(40.0)) == 0.0
    assert vals[3] == ev.zeta_rs(-70.0)


def test_evaluator_config_validation():
    with pytest.raises(ConfigError):
        ZetaEvaluator(em_terms=5)
    with pytest.raises(ConfigError):
        ZetaEvaluator(rs_switch_t=10)
    with pytest.raises(ConfigError):
        ZetaEvaluator(target_abs_error=1e-2)


# -- observables ------------------------------------------------------------------


def test_observe_osc_examples():
    obs = Observable(kind="osc_c", c=0.0)
    assert observe(obs, 1.0 / math.pi) == pytest.approx(math.sin(math.pi), abs=1e-15)
    obs2 = Observable(kind="osc_c", c=0.3)
    x = np.linspace(0.01, 0.99, 500)
    direct = x ** (-0.3) * np.sin(1.0 / x)
    assert np.max(np.abs(observe_batch(obs2, x) - direct)) < 1e-14


def test_observe_zeta_on_real_line():
    obs = Observable(kind="zeta_re", sigma=0.5, domain="R")
    assert observe(obs, 0.0) == pytest.approx(ZETA_HALF, abs=1e-7)
    im = Observable(kind="zeta_im", sigma=0.5, domain="R")
    for t in (3.3, 17.0, 64.0):
        assert abs(observe(im, t) + observe(im, -t)) < 1e-9


def test_observe_singularity_guard():
    obs = Observable(kind="osc_c", c=0.2)
    with pytest.raises(SingularityError) as err:
        observe(obs, 0.0)
    assert err.value.x == 0.0


def test_observe_composes_with_conjugacy():
    obs_i = Observable(kind="zeta_abs", sigma=0.5, domain="I")
    obs_r = Observable(kind="zeta_abs", sigma=0.5, domain="R")
    from birkhoff_lab.maps import conjugacy_xi

    x = 0.37
    assert observe(obs_i, x) == pytest.approx(observe(obs_r, conjugacy_xi(x)), rel=1e-12)


def test_envelope_exponents():
    osc = Observable(kind="osc_c", c=0.2)
    assert envelope_exponents(osc).lower == pytest.approx(0.2)
    assert envelope_exponents(osc).upper == pytest.approx(2.2)
    env = envelope_exponents(Observable(kind="zeta_re", sigma=0.6, domain="R", delta=0.01))
    assert env.u == pytest.approx(0.2 + 0.01)
    assert env.v == env.u
    env_p = envelope_exponents(Observable(kind="zeta_abs_power", power=1.0, domain="R", delta=0.01))
    assert env_p.u == pytest.approx(13.0 / 84.0 + 0.01)
    with pytest.raises(CapabilityError):
        envelope_exponents(Observable(kind="custom", custom_fn=lambda x: x))


def test_interval_envelope_shifts_derivative_exponent():
    env = interval_envelope(Observable(kind="zeta_re", sigma=0.5, domain="R", delta=0.01))
    assert env.a == pytest.approx(0.26)
    assert env.b == pytest.approx(2.26)


def test_envelope_soundness_statistical(ev):
    fitted, violations = envelope_soundness_report(ev, n_samples=10_000, seed=7)
    assert violations == 0
    assert 0 < fitted < 50.0
