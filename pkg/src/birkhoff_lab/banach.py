"""Weighted oscillation spaces on the unit interval, realized numerically.

Functions live on uniform midpoint grids.  The oscillation seminorm

    |f|_{alpha,beta} = sup_{eps <= eps0} eps^{-beta} int osc(R_alpha f, B_eps(x)) dx

is evaluated with sliding-window max/min filters (O(N) per epsilon) over a
log-spaced epsilon grid; the damping R_alpha multiplies by x^alpha (1-x)^alpha.
The module also hosts the inequality checkers of the limit theorems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .errors import DomainError, PreconditionError, ResolutionError
from .maps import PartitionedMap
from .zeta import Observable, observe_batch

DEFAULT_EPSILON0 = 0.1
DEFAULT_GRID_N = 4096
DEFAULT_EPS_POINTS = 40


@dataclass(frozen=True)
class GridFunction:
    """Values of a function at the midpoints x_i = (i + 1/2)/N of [0, 1]."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or v.size < 16:
            raise PreconditionError("grid functions need at least N = 16 values")
        if not np.all(np.isfinite(v)):
            raise PreconditionError("grid function values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def N(self):
        return self.values.size

    def midpoints(self):
        return (np.arange(self.N) + 0.5) / self.N

    @classmethod
    def from_callable(cls, fn, N=DEFAULT_GRID_N):
        x = (np.arange(N) + 0.5) / N
        return cls(np.asarray(fn(x)))

    @classmethod
    def from_observable(cls, obs: Observable, N=DEFAULT_GRID_N):
        x = (np.arange(N) + 0.5) / N
        return cls(observe_batch(obs, x))

    def mean(self):
        """Midpoint-rule integral over [0, 1]."""
        return self.values.mean()

    def lp_norm(self, gamma):
        if gamma < 1:
            raise PreconditionError("L^gamma norms need gamma >= 1")
        return float(np.mean(np.abs(self.values) ** gamma) ** (1.0 / gamma))


@dataclass(frozen=True)
class SeminormEstimate:
    """Grid estimate of |f|_{alpha,beta} with the attaining epsilon."""

    value: float
    argmax_epsilon: float
    epsilon_grid: tuple
    grid_N: int
    converged: bool


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one theorem-hypothesis inequality lhs < rhs."""

    theorem: str
    inputs: dict
    lhs: float
    rhs: float

    @property
    def margin(self):
        return self.rhs - self.lhs

    @property
    def satisfied(self):
        return self.margin > 0


def damp(f: GridFunction, alpha: float) -> GridFunction:
    """R_alpha f: multiply by x^alpha (1-x)^alpha; non-finite values become 0."""
    if not (0.0 <= alpha <= 2.0):
        raise PreconditionError("damping exponent alpha must lie in [0, 2]")
    x = f.midpoints()
    v = np.asarray(f.values, dtype=complex if np.iscomplexobj(f.values) else float)
    v = np.where(np.isfinite(v), v, 0.0)
    return GridFunction(v * (x * (1.0 - x)) ** alpha)


def osc(f: GridFunction, window) -> float:
    """(max - min of Re f) + (max - min of Im f) over grid points in `window`.

    Empty intersections give 0, matching osc(f, empty set) = 0.
    """
    lo, hi = window
    if hi < lo:
        raise PreconditionError("window must be a nondegenerate interval")
    x = f.midpoints()
    sel = (x >= lo) & (x <= hi)
    if not np.any(sel):
        return 0.0
    v = f.values[sel]
    total = float(np.max(v.real) - np.min(v.real))
    if np.iscomplexobj(v):
        total += float(np.max(v.imag) - np.min(v.imag))
    return total


def _osc_profile(values: np.ndarray, half_width: int) -> np.ndarray:
    """Pointwise oscillation over the window of +-half_width grid steps.

    Nearest-padding replicates the boundary value, which coincides with the
    truncated-window max/min because the boundary point always lies inside
    a window that overhangs the edge.
    """
    size = 2 * half_width + 1
    re = np.ascontiguousarray(values.real)
    out = maximum_filter1d(re, size, mode="nearest") - minimum_filter1d(
        re, size, mode="nearest"
    )
    if np.iscomplexobj(values):
        im = np.ascontiguousarray(values.imag)
        out = out + maximum_filter1d(im, size, mode="nearest") - minimum_filter1d(
            im, size, mode="nearest"
        )
    return out


def _seminorm_on_values(values, alpha, beta, eps_grid, N):
    x = (np.arange(N) + 0.5) / N
    damped = np.where(np.isfinite(values), values, 0.0) * (x * (1.0 - x)) ** alpha
    best = -math.inf
    best_eps = eps_grid[0]
    for eps in eps_grid:
        half = int(eps * N + 1e-9)
        integral = float(np.mean(_osc_profile(damped, half)))
        val = integral / eps**beta
        if val > best:
            best, best_eps = val, eps
    return best, best_eps


def seminorm(
    f: GridFunction,
    alpha: float,
    beta: float,
    epsilon0: float = DEFAULT_EPSILON0,
    eps_points: int = DEFAULT_EPS_POINTS,
    eps_grid=None,
    check_convergence: bool = True,
) -> SeminormEstimate:
    """Estimate |f|_{alpha,beta} on the grid.

    The sup over ball radii runs over a log-spaced grid of `eps_points`
    values in [2/N, epsilon0] (the small-eps regime is where the sup
    typically lives).  Convergence is judged by recomputing on the
    half-resolution grid: a relative change below 1% flags `converged`.
    """
    if not (0.0 <= alpha < 1.0):
        raise PreconditionError("seminorm needs alpha in [0, 1)")
    if not (0.0 < beta <= 1.0):
        raise PreconditionError("seminorm needs beta in (0, 1]")
    if not (0.0 < epsilon0 < 0.25):
        raise PreconditionError("seminorm needs epsilon0 in (0, 1/4)")
    N = f.N
    if eps_grid is None:
        eps_grid = np.geomspace(2.0 / N, epsilon0, eps_points)
    else:
        eps_grid = np.asarray(eps_grid, dtype=float)
        if np.min(eps_grid) < 2.0 / N:
            raise ResolutionError(
                f"epsilon grid reaches below 2/N = {2.0 / N:g}; refine the x grid"
            )
        if np.max(eps_grid) > epsilon0:
            raise PreconditionError("epsilon grid exceeds epsilon0")
    value, arg_eps = _seminorm_on_values(f.values, alpha, beta, eps_grid, N)
    converged = False
    if check_convergence and N >= 64:
        coarse_vals = f.values[::2]
        nc = coarse_vals.size
        coarse_grid = np.geomspace(2.0 / nc, epsilon0, len(eps_grid))
        coarse, _ = _seminorm_on_values(coarse_vals, alpha, beta, coarse_grid, nc)
        if value != 0 and abs(value - coarse) / abs(value) < 0.01:
            converged = True
        elif value == 0 and coarse == 0:
            converged = True
    return SeminormEstimate(
        value=float(value),
        argmax_epsilon=float(arg_eps),
        epsilon_grid=tuple(float(e) for e in eps_grid),
        grid_N=N,
        converged=converged,
    )


def norm(
    f: GridFunction,
    alpha: float,
    beta: float,
    gamma: float,
    epsilon0: float = DEFAULT_EPSILON0,
) -> float:
    """The full norm ||f||_{alpha,beta,gamma} = ||f||_gamma + |f|_{alpha,beta}."""
    if gamma < 1:
        raise PreconditionError("norm needs gamma >= 1")
    return f.lp_norm(gamma) + seminorm(f, alpha, beta, epsilon0, check_convergence=False).value


@dataclass(frozen=True)
class ProductNormReport:
    ratio: float
    product_norm: float
    left_norm: float
    right_norm: float
    indices: tuple


def product_norm_check(g: GridFunction, h: GridFunction, idx_g, idx_h, idx_out=None,
                       epsilon0: float = DEFAULT_EPSILON0) -> ProductNormReport:
    """Ratio ||g h|| / (||g|| ||h||) across compatible index triples.

    The output indices default to the extremal admissible choice
    alpha3 = alpha1 + alpha2, beta3 = min(beta1, beta2),
    1/gamma3 = 1/gamma1 + 1/gamma2; supplied indices must obey those
    constraints (PreconditionError otherwise).
    """
    a1, b1, g1 = idx_g
    a2, b2, g2 = idx_h
    if idx_out is None:
        idx_out = (a1 + a2, min(b1, b2), 1.0 / (1.0 / g1 + 1.0 / g2))
    a3, b3, g3 = idx_out
    if abs(a3 - (a1 + a2)) > 1e-12 or b3 > min(b1, b2) + 1e-12 or 1.0 / g3 < 1.0 / g1 + 1.0 / g2 - 1e-12:
        raise PreconditionError(
            "product norm indices must satisfy alpha3 = alpha1+alpha2, "
            "beta3 <= min(beta1,beta2), 1/gamma3 >= 1/gamma1 + 1/gamma2"
        )
    if g.N != h.N:
        raise PreconditionError("grids must share a resolution")
    prod = GridFunction(g.values * h.values)
    num = norm(prod, a3, b3, g3, epsilon0)
    ng = norm(g, a1, b1, g1, epsilon0)
    nh = norm(h, a2, b2, g2, epsilon0)
    denom = ng * nh
    ratio = 0.0 if num == 0 else (math.inf if denom == 0 else num / denom)
    return ProductNormReport(ratio, num, ng, nh, (idx_g, idx_h, (a3, b3, g3)))


def random_piecewise_smooth(N: int, count: int, seed: int = 0, complex_valued=False):
    """Random test functions: low-order trig + polynomial mixtures with jumps.

    The family exercises both the smooth and the discontinuous behaviour the
    oscillation seminorm is sensitive to.
    """
    rng = np.random.default_rng(seed)
    x = (np.arange(N) + 0.5) / N
    out = []
    for _ in range(count):
        coeff = rng.normal(size=4)
        freq = rng.integers(1, 6, size=2)
        v = (
            coeff[0]
            + coeff[1] * x
            + coeff[2] * np.sin(2 * np.pi * freq[0] * x)
            + coeff[3] * np.cos(2 * np.pi * freq[1] * x)
        )
        for _ in range(rng.integers(0, 3)):
            v = v + rng.normal() * (x > rng.random())
        if complex_valued:
            v = v + 1j * (rng.normal() * np.cos(2 * np.pi * freq[0] * x))
        out.append(GridFunction(v))
    return out


# -- theorem hypothesis checkers ----------------------------------------------


def clt_condition(a, b, theta, eta_minus, eta_plus) -> ConditionReport:
    """CLT/MLCLT hypothesis a < min(theta, 1/b, 1/2) min(1, log eta-/log eta+)."""
    _check_condition_inputs(a, b, theta, eta_minus, eta_plus)
    rhs = min(theta, 1.0 / b, 0.5) * min(1.0, math.log(eta_minus) / math.log(eta_plus))
    return ConditionReport(
        "CLT",
        {"a": a, "b": b, "theta": theta, "eta_minus": eta_minus, "eta_plus": eta_plus},
        lhs=float(a),
        rhs=float(rhs),
    )


def edgeworth_condition(a, b, theta, eta_minus, eta_plus) -> ConditionReport:
    """First-order Edgeworth hypothesis
    3 min(2a, max(a, a+b-2)) < min(theta, 1/b, 1/2) min(1, log eta+/log eta-)."""
    _check_condition_inputs(a, b, theta, eta_minus, eta_plus)
    lhs = 3.0 * min(2.0 * a, max(a, a + b - 2.0))
    rhs = min(theta, 1.0 / b, 0.5) * min(1.0, math.log(eta_plus) / math.log(eta_minus))
    return ConditionReport(
        "Edgeworth",
        {"a": a, "b": b, "theta": theta, "eta_minus": eta_minus, "eta_plus": eta_plus},
        lhs=float(lhs),
        rhs=float(rhs),
    )


def boole_condition(kind: str, u, v) -> ConditionReport:
    """Real-line hypotheses: CLT needs u(2+v) < 1, Edgeworth needs
    min(2u(2+v), (u+v)(2+v)) < 1/3."""
    if u < 0 or v < 0:
        raise PreconditionError("envelope exponents must be nonnegative")
    if kind.lower() in ("clt", "mlclt"):
        lhs, rhs, tag = u * (2.0 + v), 1.0, "BooleCLT"
    elif kind.lower() == "edgeworth":
        lhs, rhs, tag = min(2.0 * u * (2.0 + v), (u + v) * (2.0 + v)), 1.0 / 3.0, "BooleEdgeworth"
    else:
        raise PreconditionError(f"unknown Boole condition kind {kind!r}")
    return ConditionReport(tag, {"u": u, "v": v}, lhs=float(lhs), rhs=float(rhs))


def _check_condition_inputs(a, b, theta, eta_minus, eta_plus):
    if a < 0 or b <= 0:
        raise PreconditionError("need a >= 0 and b > 0")
    if not (0 < theta <= 1):
        raise PreconditionError("need theta in (0, 1]")
    if not (1.0 < eta_minus <= eta_plus):
        raise PreconditionError("need eta_plus >= eta_minus > 1")


def zeta_line_clt_boundary() -> float:
    """Critical sigma where the line-sigma CLT condition flips (delta -> 0).

    Solved by bisection on the margin of u(2+v) < 1 with u = v = (1-s)/2;
    the closed form is 3 - 2 sqrt(2).
    """
    from scipy.optimize import brentq

    def margin(s):
        u = (1.0 - s) / 2.0
        return 1.0 - u * (2.0 + u)

    return float(brentq(margin, 1e-6, 1.0 - 1e-9, xtol=1e-13, rtol=8.9e-16))


def zeta_power_clt_boundary() -> float:
    """Critical power a where the |zeta_1/2|^a CLT condition flips (delta -> 0).

    Closed form 84 (sqrt(2) - 1) / 13.
    """
    from scipy.optimize import brentq

    from .zeta import BOURGAIN_EXPONENT

    def margin(a):
        u = BOURGAIN_EXPONENT * a
        return 1.0 - u * (2.0 + u)

    return float(brentq(margin, 1.0, 6.0, xtol=1e-13, rtol=8.9e-16))


# -- damping-ratio diagnostics -------------------------------------------------


def rbar(pmap: PartitionedMap, branch: int, alpha: float, x) -> float:
    """Damping ratio (R_alpha 1)(psi_{j+1} x) / (R_alpha 1)(x) on one branch."""
    if not (0.0 < alpha < 1.0):
        raise PreconditionError("rbar needs alpha in (0, 1)")
    lo, hi = pmap.breakpoints[branch], pmap.breakpoints[branch + 1]
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= lo) or np.any(xs >= hi):
        raise DomainError(f"x must lie strictly inside branch ({lo:g}, {hi:g})")
    y = pmap.branches[branch].forward(xs)
    vals = ((y * (1.0 - y)) / (xs * (1.0 - xs))) ** alpha
    return vals if vals.size > 1 else float(vals[0])


@dataclass(frozen=True)
class HoelderReport:
    sup_value: float
    hoelder_constant: float
    theoretical_sup_bound: float


def hoelder_report(pmap: PartitionedMap, branch: int, alpha: float, n_grid=512) -> HoelderReport:
    """Empirical sup of R-bar over a branch and a fitted Hoelder-alpha constant.

    The sup is bounded by eta_plus^alpha; the constant is
    max |Rbar(x)-Rbar(y)| / |x-y|^alpha over all grid pairs.
    """
    lo, hi = pmap.breakpoints[branch], pmap.breakpoints[branch + 1]
    pad = (hi - lo) * 1e-9
    xs = np.linspace(lo + pad, hi - pad, n_grid)
    vals = rbar(pmap, branch, alpha, xs)
    diff = np.abs(vals[:, None] - vals[None, :])
    dist = np.abs(xs[:, None] - xs[None, :]) ** alpha
    np.fill_diagonal(dist, np.inf)
    const = float(np.max(diff / dist))
    return HoelderReport(
        sup_value=float(np.max(vals)),
        hoelder_constant=const,
        theoretical_sup_bound=pmap.eta_plus**alpha,
    )
