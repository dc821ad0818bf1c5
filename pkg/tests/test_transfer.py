"""Ulam matrices, spectra, duality, characteristic-function and DFLY checks."""

from fractions import Fraction

import numpy as np
import pytest

from birkhoff_lab.banach import GridFunction, random_piecewise_smooth
from birkhoff_lab.errors import (
    HypothesisError,
    PreconditionError,
)
from birkhoff_lab.maps import apply_map_array, make_doubling, make_piecewise_linear
from birkhoff_lab.transfer import (
    char_fn_check,
    dense_spectrum_oracle,
    dfly_check,
    duality_check,
    eigenvalue_curve,
    invariant_density,
    leading_eigen,
    lp_bound_check,
    ulam_matrix,
)
from birkhoff_lab.zeta import Observable


@pytest.fixture(scope="module")
def doubling():
    return make_doubling()


@pytest.fixture(scope="module")
def skew_map():
    return make_piecewise_linear([0.0, 0.3, 1.0])


def lag_covariance_oracle(k: int) -> Fraction:
    """Exact Cov(x, psi^k x) for the doubling map by piecewise integration.

    E[x (2^k x mod 1)] = sum_j int_{j/2^k}^{(j+1)/2^k} x (2^k x - j) dx,
    evaluated in rational arithmetic; the known closed form is 2^-k / 12.
    """
    two_k = 2**k
    acc = Fraction(0)
    for j in range(two_k):
        lo = Fraction(j, two_k)
        hi = Fraction(j + 1, two_k)
        # int x (2^k x - j) = 2^k x^3/3 - j x^2/2
        acc += Fraction(two_k, 3) * (hi**3 - lo**3) - Fraction(j, 2) * (hi**2 - lo**2)
    return acc - Fraction(1, 4)


def test_lag_covariance_oracle_closed_form():
    for k in range(8):
        assert lag_covariance_oracle(k) == Fraction(1, 12 * 2**k)


def test_ulam_two_cell_doubling(doubling):
    mat = ulam_matrix(doubling, None, 0.0, 2)
    assert np.allclose(mat.entries, 0.5 * np.ones((2, 2)), atol=1e-14)


def test_ulam_mass_conservation(doubling, skew_map):
    rng = np.random.default_rng(2)
    for pmap in (doubling, skew_map):
        mat = ulam_matrix(pmap, None, 0.0, 128)
        v = rng.random(128)
        assert abs(np.sum(mat.apply(v)) - np.sum(v)) < 1e-10 * np.sum(np.abs(v))


def test_ulam_fixes_constants_on_doubling(doubling):
    mat = ulam_matrix(doubling, None, 0.0, 64)
    assert np.max(np.abs(mat.apply(np.ones(64)) - 1.0)) < 1e-12


def test_leading_eigen_examples(doubling):
    mat = ulam_matrix(doubling, None, 0.0, 64)
    spec = leading_eigen(mat)
    assert abs(spec.lambda_ - 1.0) < 1e-8
    assert spec.residual < 1e-9
    assert np.max(np.abs(spec.eigenfunction.values - 1.0)) < 1.0 / 64
    # second eigenvalue against the dense oracle
    dense = dense_spectrum_oracle(mat)
    assert abs(abs(dense[0]) - 1.0) < 1e-10
    gap_oracle = 1.0 - abs(dense[1])
    assert spec.gap >= 0.4
    assert gap_oracle >= 0.4
    assert abs(spec.gap - gap_oracle) < 0.05


def test_leading_eigen_skew_map_against_oracle(skew_map):
    mat = ulam_matrix(skew_map, None, 0.0, 128)
    spec = leading_eigen(mat)
    dense = dense_spectrum_oracle(ulam_matrix(skew_map, None, 0.0, 128))
    assert abs(spec.lambda_ - 1.0) < 1e-8
    assert abs((1.0 - abs(dense[1])) - spec.gap) < 1e-6


def test_eigenvalue_curve_doubling_variance(doubling):
    obs = Observable(kind="custom", custom_fn=lambda x: x - 0.5)
    curve = eigenvalue_curve(doubling, obs, [-0.05, 0.0, 0.05], N=1024)
    # centered observable: zero derivative at 0
    assert abs(curve.mean) < 2 * max(curve.mean_error, 1e-12)
    # Green-Kubo series from the exact lag oracle (tail below 2^-12/6)
    sigma2 = float(
        lag_covariance_oracle(0)
        + sum(Fraction(2) * lag_covariance_oracle(k) for k in range(1, 13))
    )
    assert abs(sigma2 - 0.25) < 1e-4
    assert curve.variance == pytest.approx(0.25, abs=5e-3)
    # conjugation symmetry lambda(-s) = conj(lambda(s))
    lam = dict(zip(curve.s_values, curve.lambdas))
    assert lam[-0.05] == pytest.approx(np.conj(lam[0.05]), abs=1e-10)


def test_eigenvalue_curve_needs_symmetric_grid(doubling):
    obs = Observable(kind="custom", custom_fn=lambda x: x)
    with pytest.raises(PreconditionError):
        eigenvalue_curve(doubling, obs, [0.0, 0.05], N=64)


def test_duality_examples(doubling):
    n_cells = 1024
    f = GridFunction.from_callable(lambda x: x, n_cells)
    ones = GridFunction(np.ones(n_cells))
    # f* = 1 reduces to mass conservation
    assert duality_check(doubling, f, ones) < 1e-10
    zero = GridFunction(np.zeros(n_cells))
    assert duality_check(doubling, zero, f) == 0.0
    # f = f* = x: both sides equal 7/24 in closed form
    resid = duality_check(doubling, f, f)
    assert resid < 5.0 / n_cells
    mat = ulam_matrix(doubling, None, 0.0, n_cells)
    lhs = np.mean(mat.apply(f.values) * f.values)
    assert lhs == pytest.approx(7.0 / 24.0, abs=5.0 / n_cells)


def test_duality_random_smooth(doubling, skew_map):
    for pmap in (doubling, skew_map):
        for f, g in zip(
            random_piecewise_smooth(1024, 3, seed=5), random_piecewise_smooth(1024, 3, seed=6)
        ):
            smooth_f = GridFunction(np.cumsum(f.values) / f.N)  # integrate out jumps
            smooth_g = GridFunction(np.cumsum(g.values) / g.N)
            assert duality_check(pmap, smooth_f, smooth_g) < 5.0 / 1024


def test_char_fn_trivial_cases(doubling):
    rho = GridFunction(np.ones(256))
    obs = Observable(kind="custom", custom_fn=lambda x: x - 0.5)
    out = char_fn_check(doubling, obs, rho, s=0.0, n=3, n_orbits=2000, seed=3)
    assert out["residual"] < 1e-10
    const = Observable(kind="custom", custom_fn=lambda x: np.full_like(x, 0.7))
    out = char_fn_check(doubling, const, rho, s=0.4, n=1, n_orbits=2000, seed=3)
    assert abs(out["mc"] - np.exp(0.4j * 0.7)) < 1e-8
    assert out["residual"] < 1e-6


def test_char_fn_mutual_oracle(doubling):
    rho = GridFunction(np.ones(512))
    obs = Observable(kind="custom", custom_fn=lambda x: x - 0.5)
    out = char_fn_check(doubling, obs, rho, s=0.5, n=5, n_orbits=100_000, seed=9)
    assert out["residual"] < 3.0 * (out["mc_se"] + 5.0 / 512)
    with pytest.raises(PreconditionError):
        char_fn_check(doubling, obs, rho, s=0.5, n=21)


def test_spectral_radius_inside_unit_disc(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    for s in (0.1, 0.7, 1.9, 3.0):
        mat = ulam_matrix(doubling, obs, s, 256)
        spec = leading_eigen(mat)
        assert abs(spec.lambda_) <= 1.0 + 1e-8
        # non-arithmetic observable: strictly inside the disc (reported)
        assert abs(spec.lambda_) < 1.0


def test_ulam_consistency_under_refinement(skew_map):
    d512 = invariant_density(skew_map, 512)
    d1024 = invariant_density(skew_map, 1024)
    coarse = d1024.values.reshape(512, 2).mean(axis=1)
    assert np.mean(np.abs(coarse - d512.values)) < 0.02
    lam2 = {}
    for n_cells in (512, 1024):
        spec = leading_eigen(ulam_matrix(skew_map, None, 0.0, n_cells))
        lam2[n_cells] = 1.0 - spec.gap
    assert abs(lam2[1024] - lam2[512]) <= 0.02 * max(abs(lam2[512]), 1e-2) + 0.02


def test_invariant_density_matches_orbit_histogram(skew_map):
    dens = invariant_density(skew_map, 256)
    rng = np.random.default_rng(12)
    x = rng.random(10_000)
    counts = np.zeros(256)
    # 10^7 orbit points: 10^4 parallel orbits, 10^3 steps, 200 burn-in
    for step in range(1200):
        x = apply_map_array(skew_map, x)
        if step >= 200:
            counts += np.bincount(np.minimum((x * 256).astype(int), 255), minlength=256)
    hist = counts / counts.sum()
    tv = 0.5 * np.sum(np.abs(hist - dens.values / dens.values.sum()))
    assert tv < 0.02


def test_dfly_examples(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    assert 2.0**0.2 / 2.0**0.3 == pytest.approx(2.0**-0.1)
    hs = [GridFunction(np.ones(512))] + random_piecewise_smooth(512, 3, seed=7)
    rep = dfly_check(doubling, obs, 0.2, 0.3, 2.0, hs, n_max=6, s_values=(0.0, 0.3), N=512)
    assert rep.kappa == pytest.approx(2.0**-0.1)
    assert np.isfinite(rep.c_tilde) and rep.c_tilde > 0
    assert np.isfinite(rep.c_weak)
    # h = 1 at s = 0 stays exactly invariant: strong norms stay bounded
    ones_rows = [r for r in rep.rows if r[0] == 0.0 and r[1] == 0]
    n1 = [r[3] for r in ones_rows]
    assert max(n1) <= rep.c_tilde * (rep.kappa * n1[0] + rep.c_weak * 1.0) + 1e-9


def test_dfly_hypothesis_guard(doubling):
    obs = Observable(kind="osc_c", c=0.2)
    with pytest.raises(HypothesisError):
        dfly_check(doubling, obs, 0.3, 0.2, 2.0, [GridFunction(np.ones(64))], 2, N=64)


def test_lp_bound_doubling(doubling):
    hs = random_piecewise_smooth(512, 20, seed=15)
    out = lp_bound_check(doubling, 0.0, 2.0, hs, N=512)
    assert out["bound"] == pytest.approx(4.0)
    assert out["max_ratio"] <= out["bound"] + 0.01
    # s = 0 contracts L1-like norms: constant function gives ratio exactly 1
    ones = [GridFunction(np.ones(512))]
    out1 = lp_bound_check(doubling, 0.0, 2.0, ones, N=512)
    assert out1["max_ratio"] == pytest.approx(1.0, abs=1e-12)
