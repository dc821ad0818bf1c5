"""Birkhoff sampling, moment estimation, and the distributional tests."""

import math
from fractions import Fraction

import numpy as np
import pytest

from birkhoff_lab.errors import (
    BudgetError,
    DegenerateError,
    PreconditionError,
    VarianceError,
)
from birkhoff_lab.maps import BooleanMap, make_doubling
from birkhoff_lab.stats import (
    BirkhoffSampleSet,
    BumpV,
    EdgeworthModel,
    MomentParams,
    clt_test,
    coboundary_heuristic,
    edgeworth_eval,
    edgeworth_test,
    estimate_moments,
    ks_statistic,
    mlclt_test,
    sample_birkhoff,
    sample_birkhoff_checkpoints,
)
from birkhoff_lab.zeta import Observable


@pytest.fixture(scope="module")
def doubling():
    return make_doubling()


def coboundary_obs():
    # chi = psi(x) - x = x - floor(2x), telescoping with g(x) = x
    return Observable(
        kind="custom", custom_fn=lambda x: np.where(x < 0.5, x, x - 1.0)
    )


def test_constant_observable_sums(doubling):
    obs = Observable(kind="custom", custom_fn=lambda x: np.ones_like(x))
    ss = sample_birkhoff(doubling, obs, 10, 150, seed=1)
    assert np.all(ss.samples == 10.0)


def test_coboundary_sums_telescope(doubling):
    ss = sample_birkhoff(doubling, coboundary_obs(), 5000, 300, seed=2)
    assert np.max(np.abs(ss.samples)) <= 1.0 + 1e-12
    short = sample_birkhoff(doubling, coboundary_obs(), 50, 300, seed=2)
    assert short.samples.var() / 50 > ss.samples.var() / 5000


def test_seeded_reproducibility(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    a = sample_birkhoff(doubling, obs, 200, 128, seed=7)
    b = sample_birkhoff(doubling, obs, 200, 128, seed=7)
    c = sample_birkhoff(doubling, obs, 200, 128, seed=8)
    assert np.array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)


def test_sample_set_validation(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    with pytest.raises(PreconditionError):
        sample_birkhoff(doubling, obs, 10, 50, seed=1)  # m < 100
    with pytest.raises(BudgetError):
        sample_birkhoff(doubling, obs, 10**9, 10**6, seed=1)


def test_boolean_sampling_tracks_cauchy_mean():
    obs = Observable(kind="zeta_re", sigma=0.5, domain="R")
    ss = sample_birkhoff(BooleanMap(), obs, 2000, 200, init_measure="cauchy-on-R", seed=3)
    assert ss.samples.mean() / 2000 == pytest.approx(-0.0543, abs=0.02)
    assert ss.rejected_draws == 0


def test_point_mass_initial_measure():
    pl = __import__("birkhoff_lab.maps", fromlist=["make_piecewise_linear"]).make_piecewise_linear(
        [0.0, 0.3, 1.0]
    )
    obs = Observable(kind="custom", custom_fn=lambda x: x)
    ss = sample_birkhoff(pl, obs, 20, 100, init_measure="point-mass", x0=0.1, seed=1)
    assert np.all(ss.samples == ss.samples[0])  # deterministic orbit
    bb = sample_birkhoff(
        BooleanMap(),
        Observable(kind="custom", custom_fn=lambda x: x, domain="R"),
        5, 100, init_measure="point-mass", x0=2.0, seed=1,
    )
    # 2 -> 0.75 -> -0.29166... : S_5 identical across orbits
    assert np.all(bb.samples == bb.samples[0])


def test_boolean_rejection_counts():
    obs = Observable(kind="zeta_re", sigma=0.5, domain="R", t_max=5e3)
    ss = sample_birkhoff(BooleanMap(), obs, 500, 200, init_measure="cauchy-on-R", seed=4)
    assert ss.rejected_draws > 0  # |t| > 5000 occurs with prob ~ n 2/(pi t_max)


def test_estimate_moments_doubling_mean_and_variance(doubling):
    obs = Observable(kind="custom", custom_fn=lambda x: x)
    mo = estimate_moments(
        doubling, obs, MomentParams(orbit_len=8000, n_orbits=128, kappa3_orbits=1024, seed=5)
    )
    assert mo.A == pytest.approx(0.5, abs=3 * mo.A_se + 1e-3)
    centered = Observable(kind="custom", custom_fn=lambda x: x - 0.5)
    mo2 = estimate_moments(
        doubling, centered, MomentParams(orbit_len=8000, n_orbits=128, kappa3_orbits=1024, seed=5)
    )
    assert mo2.sigma2 == pytest.approx(0.25, abs=0.01)
    assert mo2.gk_plateau_ok
    assert mo2.sigma2_geometric == pytest.approx(0.25, abs=0.01)
    # x - 1/2 is odd under the dynamics-commuting flip x -> 1-x: kappa3 = 0
    assert abs(mo2.kappa3) < 3 * mo2.kappa3_se + 1e-3


def test_ks_statistic_self_test():
    rng = np.random.default_rng(6)
    z = rng.standard_normal(10_000)
    assert ks_statistic(z) < 0.03


def test_clt_test_gaussian_path(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    sums, _ = sample_birkhoff_checkpoints(doubling, obs, [100, 1000], 2000, seed=9)
    sets = [
        BirkhoffSampleSet(n=n, samples=s, m=2000, init_measure="invariant-ulam", seed=9)
        for n, s in sums.items()
    ]
    rep = clt_test(sets)
    assert rep.ks < 0.05
    assert len(rep.trajectory) == 2
    with pytest.raises(PreconditionError):
        clt_test(
            BirkhoffSampleSet(
                n=10, samples=np.zeros(100) + np.arange(100), m=100,
                init_measure="x", seed=0,
            )
        )


def test_clt_test_degenerate_variance(doubling):
    ss = sample_birkhoff(doubling, coboundary_obs(), 1000, 1200, seed=10)
    with pytest.raises(DegenerateError):
        clt_test(ss, sigma2=0.0)


def test_edgeworth_eval_trivial():
    model = EdgeworthModel(sigma=1.0, kappa3=0.0)
    z = np.linspace(-3, 3, 7)
    from scipy.special import ndtr

    assert np.allclose(edgeworth_eval(model, z, 400), ndtr(z), atol=1e-15)
    skewed = EdgeworthModel(sigma=1.0, kappa3=2.0)
    for x in (-1.0, 1.0):
        assert edgeworth_eval(skewed, x, 400) == pytest.approx(ndtr(x), abs=1e-15)
    assert model.p_coefficients == (0.0, 0.0, 0.0)


def test_edgeworth_improves_fit_for_skewed_observable(doubling):
    bump = Observable(kind="custom", custom_fn=lambda x: np.exp(-(((x - 0.7) / 0.05) ** 2)))
    mo = estimate_moments(
        doubling, bump, MomentParams(orbit_len=10000, n_orbits=64, kappa3_orbits=2048, seed=11)
    )
    model = EdgeworthModel(sigma=math.sqrt(mo.sigma2), kappa3=mo.kappa3)
    ss = sample_birkhoff(doubling, bump, 1000, 20_000, seed=12)
    g_err, e_err = edgeworth_test(ss, model)
    assert e_err <= g_err


def test_mlclt_trivial_targets():
    v = BumpV(half_width=1.0, height=1.0)
    assert v.integral == 1.0
    assert v(0.0) == 1.0 and v(1.5) == 0.0
    # Gaussian target ratio between rho = 2 and rho = 0 levels
    assert math.exp(-(2.0**2) / 2.0) == pytest.approx(0.1353, abs=1e-4)


def test_mlclt_converges_to_bump_mass(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    rows = mlclt_test(
        doubling, obs, [400, 4000], 20_000,
        V=BumpV(half_width=4.0), ell_rhos=(0.0,), seed=13,
    )
    # at ell = 0 the normalized estimate approaches int V
    assert rows[-1].sup_deviation < 0.08 * 4.0
    with pytest.raises(VarianceError):
        mlclt_test(doubling, obs, [400], 200, V=BumpV(half_width=0.01), seed=13)


def test_coboundary_heuristic_verdicts(doubling):
    def chi_cob(q):
        two = 2 * q
        return (two - 1 if two >= 1 else two) - q

    rep = coboundary_heuristic(doubling, chi_cob, 6)
    assert rep.verdict == "coboundary-consistent"
    assert all(r[2] == 0 for r in rep.cycles)

    rep_x = coboundary_heuristic(doubling, lambda q: q, 6)
    assert rep_x.verdict == "not cohomologous to a constant"
    by_period = {r[0]: r for r in rep_x.cycles}
    assert by_period[1][2] == 0
    assert by_period[2][2] == 1 and by_period[2][3] == Fraction(1, 2)
    # x = (psi(x) - x) + binary digit, so x is cohomologous to a Z-valued
    # function: every cycle sum is an exact integer and the heuristic must
    # see the unit lattice
    assert all(r[2] == int(r[2]) for r in rep_x.cycles)
    assert "lattice" in rep_x.arithmetic_verdict
    assert rep_x.lattice_spacing == pytest.approx(1.0, abs=1e-9)


def test_coboundary_nonarithmetic_for_oscillating_observable(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    rep = coboundary_heuristic(doubling, obs, 7)
    assert rep.verdict == "not cohomologous to a constant"
    assert rep.arithmetic_verdict == "non-arithmetic (heuristic)"
    assert rep.skipped_cycles == 1  # the fixed point sits on the singularity

    rep_c = coboundary_heuristic(doubling, lambda q: Fraction(7, 3), 5)
    assert rep_c.verdict == "cohomologous to a constant"
    assert float(rep_c.candidate_constant) == pytest.approx(7 / 3)


def test_coboundary_detects_lattice(doubling):
    # integer-valued observable: cycle sums live on the lattice Z
    def chi_lattice(q):
        return 1 if q >= Fraction(1, 2) else 0

    rep = coboundary_heuristic(doubling, chi_lattice, 7)
    assert rep.verdict == "not cohomologous to a constant"
    assert "lattice" in rep.arithmetic_verdict


def test_mean_variance_consistency_with_spectral(doubling):
    # transfer-operator route vs Monte Carlo for chi = x - 1/2
    from birkhoff_lab.transfer import eigenvalue_curve

    obs = Observable(kind="custom", custom_fn=lambda x: x - 0.5)
    curve = eigenvalue_curve(doubling, obs, [-0.02, 0.0, 0.02], N=512)
    ss = sample_birkhoff(doubling, obs, 2000, 2000, seed=14)
    mc_mean = ss.samples.mean() / 2000
    mc_se = ss.samples.std(ddof=1) / math.sqrt(2000.0) / 2000
    assert abs(curve.mean - mc_mean) <= 3 * (mc_se + curve.mean_error)
    assert abs(ss.samples.var(ddof=1) / 2000 - curve.variance) < 0.05 * curve.variance
