"""Monte Carlo estimation of Birkhoff-sum statistics and the empirical
verification of the CLT, first-order Edgeworth expansion and mixing local CLT.

Orbit batches are generated blockwise with per-orbit seeds spawned from a
single SeedSequence, so every estimate is bit-reproducible from (seed, n, m)
and embarrassingly parallel.  Doubling-map orbits use the exact bit-tape
shift; the Boolean-type transformation is iterated in floats from Cauchy
starts, with heavy-tail rejection control for zeta observables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import (
    BirkhoffLabError,
    BudgetError,
    CapabilityError,
    DegenerateError,
    PreconditionError,
    TailBiasError,
    TruncationError,
    VarianceError,
)
from .maps import BooleanMap, PartitionedMap, apply_map_array, periodic_points
from .transfer import invariant_density
from .zeta import Observable, observe_batch

DEFAULT_BUDGET = 20_000_000_000
_BLOCK_ORBITS = 256

_REJECT_WARN = 0.01
_REJECT_FAIL = 0.05


@dataclass(frozen=True)
class BirkhoffSampleSet:
    """m independent Birkhoff sums S_n of one observable over one system."""

    n: int
    samples: np.ndarray
    m: int
    init_measure: str
    seed: int
    rejected_draws: int = 0
    system_id: str = ""
    observable_id: str = ""

    def __post_init__(self):
        if self.m < 100:
            raise PreconditionError("sample sets need m >= 100 orbits")
        if not np.all(np.isfinite(self.samples)):
            raise PreconditionError("all Birkhoff sums must be finite")


@dataclass(frozen=True)
class MomentEstimates:
    """Asymptotic mean, Green-Kubo variance and third cumulant with errors."""

    A: float
    A_se: float
    sigma2: float
    sigma2_se: float
    kappa3: float
    kappa3_se: float
    gk_truncation_K: int
    gk_plateau_ok: bool
    sigma2_geometric: float = float("nan")

    def __post_init__(self):
        if self.sigma2 < 0:
            raise DegenerateError("Green-Kubo variance came out negative")


@dataclass(frozen=True)
class EdgeworthModel:
    """First-order Edgeworth correction from the first three moments.

    The classical quadratic P(x) = -kappa3/(6 sigma^3) (x^2 - 1) multiplies
    the Gaussian density at order n^{-1/2}; kappa3 = 0 gives P = 0.
    """

    sigma: float
    kappa3: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise PreconditionError("Edgeworth model needs sigma > 0")

    @property
    def p_coefficients(self):
        c = -self.kappa3 / (6.0 * self.sigma**3)
        return (c, 0.0, -c)  # quadratic, linear, constant

    def correction(self, x):
        x = np.asarray(x, dtype=float)
        return -self.kappa3 / (6.0 * self.sigma**3) * (x * x - 1.0)


@dataclass(frozen=True)
class BumpV:
    """Compactly supported continuous bump for the local-CLT window."""

    half_width: float = 1.0
    height: float = 1.0

    @property
    def integral(self):
        return self.half_width * self.height

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.height * np.maximum(0.0, 1.0 - np.abs(x) / self.half_width)


def _gaussian_cdf(x):
    return ndtr(np.asarray(x, dtype=float))


def _gaussian_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def ks_statistic(z: np.ndarray, cdf=_gaussian_cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance of z to the given CDF."""
    z = np.sort(np.asarray(z, dtype=float))
    m = z.size
    c = cdf(z)
    up = np.arange(1, m + 1) / m - c
    dn = c - np.arange(0, m) / m
    return float(max(up.max(), dn.max()))


# -- orbit engines -------------------------------------------------------------


def _tape_values(child: np.random.SeedSequence, n: int) -> np.ndarray:
    """n exact doubling-orbit points from a fresh random bit tape."""
    rng = np.random.Generator(np.random.PCG64(child))
    n_words = (n + 63) // 64 + 2
    words = rng.integers(0, 2**64, size=n_words, dtype=np.uint64)
    k = np.arange(n)
    i = k >> 6
    s = (k & 63).astype(np.uint64)
    w = words[i] << s
    # carry made shift-safe by splitting: >> (64 - s) with s = 0 is undefined
    carry = (words[i + 1] >> np.uint64(1)) >> (np.uint64(63) - s)
    return (w | carry) / 2.0**64


def _observable_block(system, obs, children, n, init_measure, x0, inv_cdf_cells):
    """(B, n) observable series for one block of orbits; returns rejections."""
    rejected = 0
    if isinstance(system, PartitionedMap) and system.dyadic:
        if init_measure == "point-mass":
            raise CapabilityError("point-mass starts need float orbits (n <= 40)")
        vals = np.stack([_tape_values(c, n) for c in children])
        np.clip(vals, 1e-300, None, out=vals)  # zero windows have measure ~2^-64
        series = observe_batch(obs, vals.ravel()).reshape(vals.shape)
        return series, rejected
    if isinstance(system, PartitionedMap):
        b = len(children)
        starts = np.empty(b)
        for bi, c in enumerate(children):
            rng = np.random.Generator(np.random.PCG64(c))
            if init_measure == "point-mass":
                starts[bi] = x0
            elif init_measure == "invariant-ulam":
                cell = np.searchsorted(inv_cdf_cells, rng.random())
                starts[bi] = (cell + rng.random()) / len(inv_cdf_cells)
            else:  # lebesgue-on-I
                starts[bi] = rng.random()
        x = starts
        series = np.empty((b, n))
        for kstep in range(n):
            series[:, kstep] = x
            x = apply_map_array(system, x)
        flat = np.clip(series.ravel(), 1e-300, 1 - 1e-16)
        return observe_batch(obs, flat).reshape(series.shape), rejected
    # Boolean-type transformation on R, iterated for the whole block at once
    b = len(children)

    def _orbits(seqs):
        x = np.empty(len(seqs))
        for bi, sq in enumerate(seqs):
            rng = np.random.Generator(np.random.PCG64(sq))
            x[bi] = x0 if init_measure == "point-mass" else rng.standard_cauchy()
        out = np.empty((len(seqs), n))
        for kstep in range(n):
            out[:, kstep] = x
            with np.errstate(divide="ignore"):
                x = np.where(x != 0.0, 0.5 * (x - 1.0 / np.where(x != 0.0, x, 1.0)), 0.0)
        return out

    series = _orbits(children)
    pending = np.flatnonzero(np.max(np.abs(series), axis=1) > obs.t_max)
    retry_seqs = {bi: children[bi] for bi in pending}
    while pending.size:
        rejected += pending.size
        retry_seqs = {bi: retry_seqs[bi].spawn(1)[0] for bi in pending}
        fresh = _orbits([retry_seqs[bi] for bi in pending])
        series[pending] = fresh
        ok = np.max(np.abs(fresh), axis=1) <= obs.t_max
        pending = pending[~ok]
    flat = observe_batch(obs, series.reshape(-1)).reshape(series.shape)
    return flat, rejected


def sample_birkhoff_checkpoints(
    system,
    obs: Observable,
    checkpoints,
    m: int,
    init_measure: str = "invariant-ulam",
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    x0: float | None = None,
    threads: int = 1,
):
    """Birkhoff sums at several lengths sharing the same m orbits.

    Returns (dict n -> samples array of shape (m,), rejected_draws).  Orbit
    blocks carry independent spawned seeds, so results are bit-identical for
    any thread count.
    """
    checkpoints = sorted(int(c) for c in checkpoints)
    n = checkpoints[-1]
    if n < 1 or m < 1:
        raise PreconditionError("need n >= 1 and m >= 1")
    if n * m > budget:
        raise BudgetError(f"n*m = {n * m:g} exceeds the budget {budget:g}")
    if isinstance(system, BooleanMap) and obs.domain != "R":
        raise PreconditionError("Boolean orbits need a real-line observable")
    if isinstance(system, PartitionedMap) and obs.domain != "I":
        raise PreconditionError("interval orbits need an interval observable")
    inv_cdf_cells = None
    if init_measure == "invariant-ulam" and isinstance(system, PartitionedMap):
        dens = invariant_density(system, N=512).values
        inv_cdf_cells = np.cumsum(dens) / dens.sum()
    root = np.random.SeedSequence(seed)
    children = root.spawn(m)
    sums = {c: np.empty(m) for c in checkpoints}
    rejected = 0

    def _one_block(lo):
        chunk = children[lo : lo + _BLOCK_ORBITS]
        series, rej = _observable_block(
            system, obs, chunk, n, init_measure, x0, inv_cdf_cells
        )
        csum = np.cumsum(series, axis=1)
        return lo, len(chunk), csum, rej

    block_starts = range(0, m, _BLOCK_ORBITS)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_one_block, block_starts))
    else:
        results = (_one_block(lo) for lo in block_starts)
    for lo, size, csum, rej in results:
        rejected += rej
        for c in checkpoints:
            sums[c][lo : lo + size] = csum[:, c - 1]
    rate = rejected / (m + rejected) if rejected else 0.0
    if rate > _REJECT_FAIL:
        raise TailBiasError(
            f"zeta tail rejection rate {rate:.1%} exceeds 5%; raise t_max"
        )
    if rate > _REJECT_WARN:
        import warnings

        warnings.warn(
            f"zeta tail rejection rate {rate:.1%} may bias the run; consider a larger t_max",
            stacklevel=2,
        )
    return sums, rejected


def sample_birkhoff(
    system,
    obs: Observable,
    n: int,
    m: int,
    init_measure: str = "invariant-ulam",
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    x0: float | None = None,
    threads: int = 1,
) -> BirkhoffSampleSet:
    """m independent Birkhoff sums S_n(chi) with reproducible seeding."""
    sums, rejected = sample_birkhoff_checkpoints(
        system, obs, [n], m, init_measure, seed, budget, x0, threads
    )
    system_id = system.name if hasattr(system, "name") else type(system).__name__
    return BirkhoffSampleSet(
        n=int(n),
        samples=sums[int(n)],
        m=int(m),
        init_measure=init_measure,
        seed=int(seed),
        rejected_draws=int(rejected),
        system_id=system_id,
        observable_id=obs.label,
    )


# -- moment estimation ----------------------------------------------------------


@dataclass(frozen=True)
class MomentParams:
    orbit_len: int = 20_000
    n_orbits: int = 128
    k_max: int = 200
    kappa3_orbits: int = 4096
    kappa3_grid: tuple = tuple(2**j for j in range(7, 15))
    seed: int = 0
    init_measure: str = "invariant-ulam"


def estimate_moments(system, obs: Observable, params: MomentParams = MomentParams()) -> MomentEstimates:
    """Asymptotic mean, Green-Kubo variance, and third-cumulant slope.

    The variance series sigma^2 = c_0 + 2 sum_k c_k is truncated at the first
    lag where three consecutive autocovariances are statistically zero
    (plateau rule); a geometric-decay fit provides a cross-estimate.  kappa3
    is the weighted regression slope of the third central moment of S_n
    against n over a geometric n grid.
    """
    if obs.kind != "custom":
        from .zeta import envelope_exponents

        env = envelope_exponents(obs)
        square_ok = env.lower < 0.5 if env.side == "interval" else 2.0 * env.u < 1.0
        if not square_ok:
            raise PreconditionError("observable not square-integrable by its envelope")
    root = np.random.SeedSequence(params.seed)
    children = root.spawn(params.n_orbits)
    t_len = params.orbit_len
    k_max = min(params.k_max, t_len // 4)
    inv_cdf = None
    if params.init_measure == "invariant-ulam" and isinstance(system, PartitionedMap):
        dens = invariant_density(system, N=512).values
        inv_cdf = np.cumsum(dens) / dens.sum()
    means = np.empty(params.n_orbits)
    covs = np.empty((params.n_orbits, k_max + 1))
    for lo in range(0, params.n_orbits, _BLOCK_ORBITS):
        chunk = children[lo : lo + _BLOCK_ORBITS]
        series, _ = _observable_block(
            system, obs, chunk, t_len, params.init_measure, None, inv_cdf
        )
        mu = series.mean(axis=1)
        means[lo : lo + len(chunk)] = mu
        centered = series - mu[:, None]
        for k in range(k_max + 1):
            a = centered[:, : t_len - k] if k else centered
            bb = centered[:, k:] if k else centered
            covs[lo : lo + len(chunk), k] = (a * bb).mean(axis=1)
    a_hat = float(means.mean())
    a_se = float(means.std(ddof=1) / math.sqrt(params.n_orbits))
    c_hat = covs.mean(axis=0)
    c_se = covs.std(axis=0, ddof=1) / math.sqrt(params.n_orbits)
    trunc_k = None
    for k in range(1, k_max - 1):
        if np.all(np.abs(c_hat[k : k + 3]) < 2.0 * c_se[k : k + 3]):
            trunc_k = k
            break
    if trunc_k is None:
        partial = c_hat[0] + 2.0 * np.cumsum(c_hat[1:])
        raise TruncationError(
            f"no autocovariance plateau within {k_max} lags", partial_sums=partial
        )
    per_orbit_var = covs[:, 0] + 2.0 * covs[:, 1:trunc_k].sum(axis=1)
    sigma2 = float(per_orbit_var.mean())
    sigma2_se = float(per_orbit_var.std(ddof=1) / math.sqrt(params.n_orbits))
    sig_lags = np.arange(1, trunc_k)
    sigma2_geo = float("nan")
    if sig_lags.size >= 3 and np.all(np.abs(c_hat[sig_lags]) > 0):
        slope, intercept = np.polyfit(sig_lags, np.log(np.abs(c_hat[sig_lags])), 1)
        r = math.exp(slope)
        if 0 < r < 1:
            sigma2_geo = float(c_hat[0] + 2.0 * c_hat[1] / (1.0 - r))
    kappa3, kappa3_se = _third_cumulant_slope(system, obs, params, a_hat)
    return MomentEstimates(
        A=a_hat,
        A_se=a_se,
        sigma2=sigma2,
        sigma2_se=sigma2_se,
        kappa3=kappa3,
        kappa3_se=kappa3_se,
        gk_truncation_K=int(trunc_k),
        gk_plateau_ok=True,
        sigma2_geometric=sigma2_geo,
    )


def _third_cumulant_slope(system, obs, params: MomentParams, a_hat: float):
    grid = sorted(params.kappa3_grid)
    sums, _ = sample_birkhoff_checkpoints(
        system,
        obs,
        grid,
        params.kappa3_orbits,
        init_measure=params.init_measure,
        seed=params.seed + 1,
    )
    ns = np.array(grid, dtype=float)
    m3 = np.empty(len(grid))
    var3 = np.empty(len(grid))
    mm = params.kappa3_orbits
    for idx, n in enumerate(grid):
        d = sums[n] - n * a_hat
        d = d - d.mean()
        m3[idx] = np.mean(d**3)
        # asymptotic variance of the sample third central moment
        mu2 = np.mean(d**2)
        mu4 = np.mean(d**4)
        mu6 = np.mean(d**6)
        var3[idx] = max((mu6 - m3[idx] ** 2 - 6.0 * mu4 * mu2 + 9.0 * mu2**3) / mm, 1e-30)
    w = 1.0 / var3
    sw = w.sum()
    nbar = (w * ns).sum() / sw
    m3bar = (w * m3).sum() / sw
    denom = (w * (ns - nbar) ** 2).sum()
    slope = (w * (ns - nbar) * (m3 - m3bar)).sum() / denom
    slope_se = math.sqrt(1.0 / denom)
    return float(slope), float(slope_se)


# -- distributional tests --------------------------------------------------------


@dataclass(frozen=True)
class KSReport:
    ks: float
    n: int
    m: int
    mean_used: float
    sigma_used: float
    trajectory: tuple = ()
    mc_noise: float = 0.0


def clt_test(sample_sets, sigma2: float | None = None, mean: float | None = None,
             strict: bool = True) -> KSReport:
    """KS distance of normalized Birkhoff sums to the standard normal.

    `sample_sets` is one BirkhoffSampleSet or a list over increasing n (the
    trajectory).  Normalization uses the supplied asymptotic mean/variance,
    falling back to sample estimates at the largest n.  `strict=False` lifts
    the m >= 1000 requirement for pipeline diagnostics at small m.
    """
    sets = sample_sets if isinstance(sample_sets, (list, tuple)) else [sample_sets]
    sets = sorted(sets, key=lambda s: s.n)
    final = sets[-1]
    if strict and final.m < 1000:
        raise PreconditionError("clt_test needs at least 1000 orbits")
    a_hat = mean if mean is not None else float(final.samples.mean() / final.n)
    s2 = sigma2 if sigma2 is not None else float(final.samples.var(ddof=1) / final.n)
    if s2 <= 0:
        raise DegenerateError("variance estimate <= 0: coboundary suspected")
    sig = math.sqrt(s2)
    traj = []
    for s in sets:
        z = (s.samples - s.n * a_hat) / (sig * math.sqrt(s.n))
        traj.append((s.n, ks_statistic(z)))
    return KSReport(
        ks=traj[-1][1],
        n=final.n,
        m=final.m,
        mean_used=a_hat,
        sigma_used=sig,
        trajectory=tuple(traj),
        mc_noise=1.0 / math.sqrt(final.m),
    )


def edgeworth_eval(model: EdgeworthModel, x, n: int):
    """First-order Edgeworth CDF: Phi(x) + P(x) phi(x) / sqrt(n)."""
    if n < 100:
        raise PreconditionError("edgeworth_eval needs n >= 100")
    x = np.asarray(x, dtype=float)
    v = _gaussian_cdf(x) + model.correction(x) * _gaussian_pdf(x) / math.sqrt(n)
    return v if v.ndim else float(v)


def edgeworth_test(sample_set: BirkhoffSampleSet, model: EdgeworthModel,
                   mean: float | None = None):
    """Sup-error of the Gaussian and Edgeworth CDFs against the empirical CDF.

    Returns (gaussian_sup_error, edgeworth_sup_error).
    """
    n = sample_set.n
    a_hat = mean if mean is not None else float(sample_set.samples.mean() / n)
    z = np.sort((sample_set.samples - n * a_hat) / (model.sigma * math.sqrt(n)))
    m = z.size
    grid_hi = np.arange(1, m + 1) / m
    grid_lo = np.arange(0, m) / m
    gauss = _gaussian_cdf(z)
    edge = edgeworth_eval(model, z, n)
    g_err = max(np.max(grid_hi - gauss), np.max(gauss - grid_lo))
    e_err = max(np.max(grid_hi - edge), np.max(edge - grid_lo))
    return float(g_err), float(e_err)


@dataclass(frozen=True)
class MlcltRow:
    n: int
    sup_deviation: float
    deviations: tuple
    ells: tuple
    mc_se: float


def mlclt_test(
    system,
    obs: Observable,
    n_grid,
    m: int,
    V: BumpV = BumpV(),
    ell_rhos=(0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0),
    ell_grid=None,
    mean: float | None = None,
    sigma: float | None = None,
    seed: int = 0,
    init_measure: str = "invariant-ulam",
    min_effective: int = 100,
    precomputed_sums: dict | None = None,
    m_per_n: dict | None = None,
):
    """Local-CLT check: sup over levels of
    |sigma sqrt(2 pi n) E[V(S_n - nA - ell)] - e^{-ell^2/(2 n sigma^2)} int V|.

    Levels default to ell = rho sigma sqrt(n); test functions U, W are the
    constant 1 (general grid weights reduce to reweighted draws and are out
    of scope here).  Raises VarianceError when fewer than `min_effective`
    samples land inside the bump window at some level.  `precomputed_sums`
    reuses Birkhoff sums from an earlier run; `m_per_n` restricts each n to
    its own orbit count (noise then shrinks with n, keeping the deviation
    trajectory monotone in expectation).
    """
    n_grid = sorted(int(v) for v in n_grid)
    if precomputed_sums is None:
        sums, _ = sample_birkhoff_checkpoints(
            system, obs, n_grid, m, init_measure=init_measure, seed=seed
        )
    else:
        sums = precomputed_sums
    nmax = n_grid[-1]
    a_hat = mean if mean is not None else float(sums[nmax].mean() / nmax)
    sig = sigma if sigma is not None else math.sqrt(max(sums[nmax].var(ddof=1) / nmax, 1e-300))
    rows = []
    for n in n_grid:
        m_here = int(m_per_n.get(n, m)) if m_per_n else m
        centered = sums[n][:m_here] - n * a_hat
        scale = sig * math.sqrt(2.0 * math.pi * n)
        ells = (
            tuple(float(e) for e in ell_grid)
            if ell_grid is not None
            else tuple(r * sig * math.sqrt(n) for r in ell_rhos)
        )
        devs = []
        worst_se = 0.0
        for ell in ells:
            vals = V(centered - ell)
            inside = int(np.sum(vals > 0))
            if inside < min_effective:
                raise VarianceError(
                    f"only {inside} samples inside the V-window at ell = {ell:g}; increase m"
                )
            est = scale * float(vals.mean())
            target = math.exp(-(ell**2) / (2.0 * n * sig**2)) * V.integral
            devs.append(abs(est - target))
            worst_se = max(worst_se, scale * float(vals.std(ddof=1)) / math.sqrt(m_here))
        rows.append(
            MlcltRow(
                n=n,
                sup_deviation=float(max(devs)),
                deviations=tuple(devs),
                ells=ells,
                mc_se=worst_se,
            )
        )
    return rows


# -- coboundary / arithmeticity heuristics ---------------------------------------


@dataclass(frozen=True)
class CoboundaryReport:
    verdict: str
    arithmetic_verdict: str
    cycles: tuple  # (period, representative, sum, normalized)
    candidate_constant: float
    lattice_spacing: float
    skipped_cycles: int = 0


def _approx_gcd(values, floor=1e-12):
    """Float Euclid descent: the largest near-common divisor above `floor`."""
    g = 0.0
    for v in values:
        a, b = max(g, abs(v)), min(g, abs(v))
        while b > floor:
            a, b = b, a % b
        g = a
    return g


def coboundary_heuristic(pmap: PartitionedMap, chi, max_period: int,
                         tol: float = 1e-9, lattice_tol: float = 1e-6) -> CoboundaryReport:
    """Periodic-orbit test for cohomology to a constant and arithmeticity.

    Sums chi over every doubling-map cycle of period <= max_period (exact
    rational arithmetic whenever chi maps Fractions to Fractions).  Distinct
    period-normalized sums rule out cohomology to a constant; the pairwise
    differences of the cycle deviations feed an approximate-gcd search, and
    the absence of a common divisor is reported as "non-arithmetic
    (heuristic)".
    """
    if callable(chi):
        fn = chi
    else:
        fn = lambda x: observe_batch(chi, np.array([float(x)]))[0]  # noqa: E731
    rows = []
    skipped = 0
    for period in range(1, max_period + 1):
        for cyc in periodic_points(pmap, period):
            try:
                total = sum(fn(p) for p in cyc)
                float(total)
            except (TypeError, ZeroDivisionError, ValueError):
                try:
                    total = sum(fn(float(p)) for p in cyc)
                except BirkhoffLabError:
                    skipped += 1  # cycle passes through a singular point
                    continue
            except BirkhoffLabError:
                skipped += 1
                continue
            rows.append((period, cyc[0], total, total / period))
    if not rows:
        raise CapabilityError(
            "every periodic orbit hits a singularity of the observable"
        )
    normalized = np.array([float(r[3]) for r in rows])
    candidate = float(normalized[0])
    spread = float(np.max(np.abs(normalized - candidate)))
    if spread < tol:
        verdict = (
            "coboundary-consistent" if abs(candidate) < tol else "cohomologous to a constant"
        )
        arithmetic = "lattice-consistent (all cycle sums equal)"
        spacing = 0.0
    else:
        verdict = "not cohomologous to a constant"
        # differences within equal periods cancel the theta part of any
        # cohomology chi ~ theta + B exactly, leaving lattice elements of B
        diffs = []
        by_period = {}
        for p, _, s, _ in rows:
            by_period.setdefault(p, []).append(float(s))
        for vals in by_period.values():
            v = np.asarray(vals)
            d = np.abs(v[:, None] - v[None, :])[np.triu_indices(len(v), 1)]
            diffs.extend(d[d > tol])
        diffs = np.asarray(diffs)
        if diffs.size >= 20:
            spacing = _approx_gcd(diffs)
            arithmetic = (
                "non-arithmetic (heuristic)"
                if spacing <= lattice_tol
                else f"possible lattice of spacing {spacing:g}"
            )
        else:
            spacing = float("nan")
            arithmetic = "inconclusive (fewer than 20 cycle differences)"
    return CoboundaryReport(
        verdict=verdict,
        arithmetic_verdict=arithmetic,
        cycles=tuple(rows),
        candidate_constant=candidate,
        lattice_spacing=float(spacing) if spacing == spacing else spacing,
        skipped_cycles=skipped,
    )
