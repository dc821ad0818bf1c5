"""Ulam discretization of the twisted transfer operators and spectral checks.

The matrix acts on density values over the uniform cell partition:
(M v)_i = N * sum_branches int_{cell_i} e^{is chi(psi^{-1} y)} v(cell of
psi^{-1} y) / psi'(psi^{-1} y) dy.  Assembly substitutes x = psi^{-1} y, which
absorbs the 1/psi' Jacobian and turns the cell indicator into an exact
interval intersection; only the twist factor e^{is chi} needs quadrature.
At s = 0 this makes the matrix exactly mass conserving (columns sum to 1 to
roundoff), which the literal midpoint-binning reading of the Ulam projection
cannot achieve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import banach
from .banach import GridFunction
from .errors import (
    HypothesisError,
    IterationError,
    NumericalError,
    PerturbationRangeError,
    PreconditionError,
    QuadratureError,
    SamplingError,
)
from .maps import PartitionedMap, apply_map_array
from .zeta import Observable, interval_envelope, observe_batch

MASS_TOL = 1e-10


@dataclass(frozen=True)
class TwistedOperatorMatrix:
    """Dense N x N Ulam discretization of the twisted operator at one s."""

    entries: np.ndarray
    s: float
    map_id: str
    observable_id: str
    N: int
    quadrature_points_per_cell: int
    nudged_nodes: int = 0

    def __post_init__(self):
        if self.s == 0.0:
            ent = self.entries.real if np.iscomplexobj(self.entries) else self.entries
            if np.iscomplexobj(self.entries) and np.max(np.abs(self.entries.imag)) > MASS_TOL:
                raise NumericalError("untwisted matrix has nonreal entries")
            if np.min(ent) < -MASS_TOL:
                raise NumericalError("untwisted matrix has negative entries")
            cols = ent.sum(axis=0)
            if np.max(np.abs(cols - 1.0)) > MASS_TOL:
                raise NumericalError("untwisted matrix does not conserve mass")
            object.__setattr__(self, "entries", np.ascontiguousarray(ent))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.entries @ np.asarray(v)

    def apply_power(self, v: np.ndarray, n: int) -> np.ndarray:
        out = np.asarray(v)
        for _ in range(n):
            out = self.entries @ out
        return out


@dataclass(frozen=True)
class SpectralData:
    """Leading eigenvalue, spectral gap and eigenfunction of one Ulam matrix."""

    lambda_: complex
    gap: float
    eigenfunction: GridFunction
    iterations: int
    residual: float

    def __post_init__(self):
        if abs(self.lambda_) > 1.0 + 1e-8:
            raise NumericalError(
                f"leading eigenvalue {self.lambda_} exceeds the unit disc"
            )


def ulam_matrix(
    pmap: PartitionedMap,
    obs: Observable | None,
    s: float,
    N: int,
    quadrature_points_per_cell: int = 8,
) -> TwistedOperatorMatrix:
    """Assemble the N x N twisted Ulam matrix.

    obs may be None (or s = 0) for the untwisted operator.  A quadrature node
    landing on an observable singularity is nudged half a sub-cell inward and
    counted; more than 1% nudged nodes raises QuadratureError.
    """
    if N < 2:
        raise PreconditionError("ulam_matrix needs N >= 2")
    q = int(quadrature_points_per_cell)
    if q < 1:
        raise PreconditionError("need at least one quadrature point per cell")
    twist = s != 0.0 and obs is not None
    edges = np.arange(N + 1) / N
    mat = np.zeros((N, N), dtype=complex if twist else float)
    offsets = (np.arange(q) + 0.5) / q
    rows, cols, xlos, lengths = [], [], [], []
    for br_idx, br in enumerate(pmap.branches):
        lo, hi = pmap.breakpoints[br_idx], pmap.breakpoints[br_idx + 1]
        # x-interval of source cell j clipped to the branch domain
        j_lo = int(np.floor(lo * N))
        j_hi = min(int(np.ceil(hi * N)), N)
        for j in range(j_lo, j_hi):
            xa, xb = max(edges[j], lo), min(edges[j + 1], hi)
            if xb <= xa:
                continue
            ya, yb = float(br.forward(xa)), float(br.forward(xb))
            ya, yb = max(0.0, min(ya, yb)), min(1.0, max(ya, yb))
            i_lo = max(int(np.floor(ya * N)), 0)
            i_hi = min(int(np.ceil(yb * N)), N)
            for i in range(i_lo, i_hi):
                ca, cb = max(ya, edges[i]), min(yb, edges[i + 1])
                if cb - ca <= 1e-15:
                    continue
                xlo = float(br.inverse(ca))
                length = float(br.inverse(cb)) - xlo
                if length <= 0:
                    continue
                rows.append(i)
                cols.append(j)
                xlos.append(xlo)
                lengths.append(length)
    rows = np.asarray(rows)
    cols = np.asarray(cols)
    xlos = np.asarray(xlos)
    lengths = np.asarray(lengths)
    nudged = 0
    if twist:
        nodes = xlos[:, None] + offsets[None, :] * lengths[:, None]
        bad = (nodes <= 0.0) | (nodes >= 1.0)
        nudged = int(np.sum(bad))
        if nudged:
            nudge = 0.5 * lengths[:, None] / q
            nodes = np.clip(nodes, nudge, 1.0 - nudge)
        if nudged > 0.01 * nodes.size:
            raise QuadratureError(
                f"{nudged} of {nodes.size} quadrature nodes sat on singularities"
            )
        chi = observe_batch(obs, nodes.ravel()).reshape(nodes.shape)
        weights = np.exp(1j * s * chi).mean(axis=1)
    else:
        weights = np.ones_like(lengths)
    np.add.at(mat, (rows, cols), N * lengths * weights)
    return TwistedOperatorMatrix(
        entries=mat,
        s=float(s),
        map_id=pmap.name,
        observable_id=obs.label if obs is not None else "none",
        N=N,
        quadrature_points_per_cell=q,
        nudged_nodes=nudged,
    )


def _power_iterate(matvec, n, tol, max_iter, rng, deflate=None):
    v = rng.standard_normal(n) + 0.0j
    v /= np.linalg.norm(v)
    lam = 0.0 + 0.0j
    for it in range(1, max_iter + 1):
        w = matvec(v)
        if deflate is not None:
            w = deflate(w)
        lam = np.vdot(v, w)
        resid = float(np.linalg.norm(w - lam * v))
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0 + 0.0j, v, it, 0.0
        v = w / nw
        if resid < tol:
            return complex(lam), v, it, resid
    raise IterationError(
        f"power iteration stalled at residual {resid:.3e}",
        residual=resid,
        iterations=max_iter,
    )


def _secondary_decay_rate(a, deflate, n, rng, warmup=40, steps=120):
    """Geometric-mean growth rate of deflated iterates, an upper proxy for
    |lambda_2| when the secondary spectrum is clustered."""
    w = deflate(rng.standard_normal(n) + 0.0j)
    nw = np.linalg.norm(w)
    if nw == 0:
        return 0.0
    w /= nw
    for _ in range(warmup):
        w = deflate(a @ w)
        nw = np.linalg.norm(w)
        if nw < 1e-280:
            return 0.0
        w /= nw
    log_growth = 0.0
    for _ in range(steps):
        w = deflate(a @ w)
        nw = np.linalg.norm(w)
        if nw < 1e-280:
            return 0.0
        log_growth += math.log(nw)
        w /= nw
    return float(math.exp(log_growth / steps))


def leading_eigen(mat: TwistedOperatorMatrix, tol: float = 1e-9,
                  max_iter: int = 100_000, seed: int = 5) -> SpectralData:
    """Leading eigenvalue and eigenfunction by deflated power iteration.

    The second eigenvalue (for the gap) comes from power iteration on the
    complement of the leading right/left eigenpair.  When the secondary
    spectrum is a cluster the deflated iteration cannot settle on a single
    eigenvalue; the observed decay rate of the deflated iterates then bounds
    |lambda_2| from above, which is what the gap needs.
    """
    a = mat.entries
    rng = np.random.Generator(np.random.PCG64(seed))
    lam1, v1, it1, res1 = _power_iterate(lambda x: a @ x, mat.N, tol, max_iter, rng)
    lamL, u1, *_ = _power_iterate(lambda x: a.conj().T @ x, mat.N, tol, max_iter, rng)
    denom = np.vdot(u1, v1)
    if abs(denom) < 1e-13:
        raise IterationError("left/right eigenvectors nearly orthogonal", residual=res1)

    def deflate(w):
        return w - lam1 * v1 * (np.vdot(u1, w) / denom)

    try:
        lam2, _, it2, _ = _power_iterate(
            lambda x: a @ x, mat.N, max(tol, 1e-8), 600, rng, deflate=deflate
        )
        lam2_mag = abs(lam2)
    except IterationError:
        lam2_mag, it2 = _secondary_decay_rate(a, deflate, mat.N, rng), 600
    gap = 1.0 - lam2_mag / abs(lam1)
    fn = v1
    if mat.s == 0.0:
        fn = np.real(fn * np.exp(-1j * np.angle(fn[np.argmax(np.abs(fn))])))
        if fn.sum() < 0:
            fn = -fn
        fn = np.clip(fn, 0.0, None)
        fn = fn / fn.mean()  # integral-one density
    return SpectralData(
        lambda_=complex(lam1),
        gap=float(gap),
        eigenfunction=GridFunction(fn),
        iterations=it1 + it2,
        residual=float(res1),
    )


def invariant_density(pmap: PartitionedMap, N: int = 1024) -> GridFunction:
    """Invariant density from the untwisted Ulam matrix at resolution N."""
    mat = ulam_matrix(pmap, None, 0.0, N)
    return leading_eigen(mat).eigenfunction


@dataclass(frozen=True)
class EigenCurve:
    """lambda(s) samples plus derivative-based mean and variance estimates."""

    s_values: tuple
    lambdas: tuple
    gaps: tuple
    mean: float
    mean_error: float
    variance: float
    variance_error: float


def eigenvalue_curve(
    pmap: PartitionedMap,
    obs: Observable,
    s_grid,
    N: int = 1024,
    fd_steps=(0.02, 0.01, 0.005),
) -> EigenCurve:
    """lambda(s) along s_grid with asymptotic mean/variance from lambda at 0.

    mean = Im (log lambda)'(0) and variance = -Re (log lambda)''(0), both by
    central differences at the configured steps with one Richardson
    extrapolation; the reported errors are the step-halving differences.
    """
    s_grid = np.asarray(sorted(s_grid), dtype=float)
    if s_grid.size and np.max(np.abs(s_grid + s_grid[::-1])) > 1e-12:
        raise PreconditionError("s_grid must be symmetric around 0")
    needed = sorted(set(np.concatenate([s_grid, [h for h in fd_steps], [-h for h in fd_steps], [0.0]])))
    lam = {}
    gap = {}
    for s in needed:
        mat = ulam_matrix(pmap, obs, float(s), N)
        spec = leading_eigen(mat)
        if spec.gap <= 0:
            raise PerturbationRangeError(
                f"no spectral gap at s = {s:g}: |lambda_2| >= |lambda|"
            )
        lam[float(s)] = spec.lambda_
        gap[float(s)] = spec.gap
    log_lam = {s: complex(np.log(v)) for s, v in lam.items()}

    def d1(h):
        return (log_lam[h] - log_lam[-h]) / (2.0 * h)

    def d2(h):
        return (log_lam[h] - 2.0 * log_lam[0.0] + log_lam[-h]) / h**2

    h0, h1, h2 = fd_steps
    rich1 = [(4.0 * d1(hb) - d1(ha)) / 3.0 for ha, hb in ((h0, h1), (h1, h2))]
    rich2 = [(4.0 * d2(hb) - d2(ha)) / 3.0 for ha, hb in ((h0, h1), (h1, h2))]
    mean = float(np.imag(rich1[-1]))
    var = float(-np.real(rich2[-1]))
    return EigenCurve(
        s_values=tuple(float(s) for s in s_grid),
        lambdas=tuple(complex(lam[float(s)]) for s in s_grid),
        gaps=tuple(float(gap[float(s)]) for s in s_grid),
        mean=mean,
        mean_error=float(abs(np.imag(rich1[-1] - rich1[0]))) + 1e-14,
        variance=var,
        variance_error=float(abs(np.real(rich2[-1] - rich2[0]))) + 1e-12,
    )


def duality_check(pmap: PartitionedMap, f: GridFunction, fstar: GridFunction,
                  mat: TwistedOperatorMatrix | None = None) -> float:
    """Residual |int (M f) f* - int f (f* o psi)| by grid quadrature."""
    if f.N != fstar.N:
        raise PreconditionError("grids must share a resolution")
    if mat is None:
        mat = ulam_matrix(pmap, None, 0.0, f.N)
    lhs = np.mean(mat.apply(f.values) * fstar.values)
    y = apply_map_array(pmap, f.midpoints())
    idx = np.minimum((y * f.N).astype(int), f.N - 1)
    rhs = np.mean(f.values * fstar.values[idx])
    return float(abs(lhs - rhs))


def char_fn_check(
    pmap: PartitionedMap,
    obs: Observable,
    density: GridFunction,
    s: float,
    n: int,
    n_orbits: int = 100_000,
    seed: int = 11,
    tolerance: float | None = None,
    N: int | None = None,
) -> dict:
    """Compare E[e^{is S_n}] by Monte Carlo with the twisted-matrix route.

    Starts are drawn from `density` by inverse CDF; the spectral side is the
    grid quadrature of M_{is}^n applied to the density values.
    """
    if n > 20:
        raise PreconditionError("char_fn_check supports n <= 20")
    N = N or density.N
    rng = np.random.Generator(np.random.PCG64(seed))
    cdf = np.cumsum(density.values) / density.values.sum()
    u = rng.random(n_orbits)
    cells = np.searchsorted(cdf, u)
    x = (cells + rng.random(n_orbits)) / density.N
    total = np.zeros(n_orbits)
    for _ in range(n):
        total += observe_batch(obs, np.clip(x, 1e-12, 1 - 1e-12))
        x = apply_map_array(pmap, x)
    mc_vals = np.exp(1j * s * total)
    mc = mc_vals.mean()
    mc_se = float(np.std(mc_vals.real) + np.std(mc_vals.imag)) / math.sqrt(n_orbits)
    if tolerance is not None and mc_se > tolerance:
        raise SamplingError(
            f"Monte Carlo standard error {mc_se:.2e} above tolerance", standard_error=mc_se
        )
    mat = ulam_matrix(pmap, obs, s, N)
    spectral = np.mean(mat.apply_power(density.values.astype(complex), n))
    return {
        "residual": float(abs(mc - spectral)),
        "mc": complex(mc),
        "mc_se": mc_se,
        "spectral": complex(spectral),
    }


@dataclass(frozen=True)
class DflyReport:
    kappa: float
    c_tilde: float
    c_weak: float
    rows: tuple  # (s, function index, n, strong norm, bound parts)


def dfly_check(
    pmap: PartitionedMap,
    obs: Observable,
    alpha: float,
    beta: float,
    gamma: float,
    sample_functions,
    n_max: int,
    s_values=(0.0,),
    N: int = 1024,
    gamma_bar: float | None = None,
    epsilon0: float = banach.DEFAULT_EPSILON0,
) -> DflyReport:
    """Fit constants of the two-norm inequality
    ||M^n h|| <= C~ (kappa^n ||h|| + C^n ||h||_gamma_bar) across a sample.

    kappa = eta_plus^alpha / eta_minus^beta must be below 1; gamma_bar
    defaults to the midpoint of (gamma, 1/alpha).  The weak-growth constant C
    is the largest observed per-step growth of the weak norm, and C~ is the
    smallest prefactor making the inequality hold across all samples.
    """
    env = interval_envelope(obs)
    kappa = pmap.eta_plus**alpha / pmap.eta_minus**beta
    if kappa >= 1.0:
        raise HypothesisError(f"kappa = {kappa:g} >= 1; shrink alpha or grow beta")
    if not (alpha < beta < min(0.5, pmap.theta, 1.0 / env.b)):
        raise PreconditionError("need alpha < beta < min(1/2, theta, 1/b)")
    if not (1.0 <= gamma < 1.0 / alpha):
        raise PreconditionError("need 1 <= gamma < 1/alpha")
    if gamma_bar is None:
        gamma_bar = 0.5 * (gamma + 1.0 / alpha)
    rows = []
    growth = 1.0
    for s in s_values:
        mat = ulam_matrix(pmap, obs, float(s), N)
        for hi, h in enumerate(sample_functions):
            strong0 = banach.norm(h, alpha, beta, gamma, epsilon0)
            weak0 = h.lp_norm(gamma_bar)
            v = h.values.astype(complex)
            for n in range(1, n_max + 1):
                v = mat.apply(v)
                gf = GridFunction(v)
                strong = banach.norm(gf, alpha, beta, gamma, epsilon0)
                weak = gf.lp_norm(gamma_bar)
                if weak0 > 0:
                    growth = max(growth, (weak / weak0) ** (1.0 / n))
                rows.append((float(s), hi, n, strong, strong0, weak0))
    c_tilde = 0.0
    for s, hi, n, strong, strong0, weak0 in rows:
        denom = kappa**n * strong0 + growth**n * weak0
        if denom > 0:
            c_tilde = max(c_tilde, strong / denom)
    return DflyReport(kappa=float(kappa), c_tilde=float(c_tilde), c_weak=float(growth),
                      rows=tuple(rows))


def lp_bound_check(pmap: PartitionedMap, s: float, gamma: float, sample_functions,
                   obs: Observable | None = None, N: int = 1024) -> dict:
    """Max ratio ||M_is h||_gamma / ||h||_gamma against the bound k eta_minus^{gamma-1}."""
    if gamma <= 1.0:
        raise PreconditionError("lp_bound_check needs gamma > 1")
    mat = ulam_matrix(pmap, obs, s, N)
    ratios = []
    for h in sample_functions:
        denom = h.lp_norm(gamma)
        if denom == 0:
            continue
        ratios.append(GridFunction(mat.apply(h.values.astype(complex))).lp_norm(gamma) / denom)
    bound = pmap.k * pmap.eta_minus ** (gamma - 1.0)
    return {"max_ratio": float(max(ratios)), "bound": float(bound)}


def dense_spectrum_oracle(mat: TwistedOperatorMatrix):
    """Full dense eigensolve, test oracle for N <= 256."""
    if mat.N > 256:
        raise PreconditionError("dense oracle restricted to N <= 256")
    w = np.linalg.eigvals(mat.entries)
    return w[np.argsort(-np.abs(w))]
