"""Full-branch expanding interval maps, the Boolean-type transformation on the
real line, and the cotangent conjugacy between them.

Orbits of the doubling map are never iterated in floating point beyond a few
dozen steps: a float collapses to 0 after at most 53 doublings.  Long doubling
orbits are generated on a lazy random bit tape (the shift on binary digits),
each emitted point being the real number whose binary expansion starts at the
tape cursor, truncated at 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import (
    CapabilityError,
    ConfigError,
    DomainError,
    PoleError,
    PrecisionError,
)

# A float orbit of a dyadic-collapse map is trusted for at most this many steps.
FLOAT_ORBIT_LIMIT = 40

_ONTO_TOL = 1e-12
_INVERSE_TOL = 1e-10


@dataclass(frozen=True)
class Branch:
    """One full branch: an increasing C^2 bijection of [lo, hi] onto [0, 1]."""

    lo: float
    hi: float
    forward: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]
    inverse_derivative: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class PartitionedMap:
    """A piecewise-C^2 uniformly expanding interval map with onto branches.

    Parameters
    ----------
    breakpoints : increasing floats c_0 = 0 < c_1 < ... < c_k = 1.
    branches : one Branch per partition cell, each onto [0, 1].
    eta_minus, eta_plus : uniform expansion bounds 1 < eta_minus <= |psi'| <= eta_plus.
    theta : Hoelder exponent of the inverse derivative, in (0, 1].
    dyadic : True when float iteration collapses (doubling map); long orbits
        must then come from a bit tape or exact rationals.
    """

    name: str
    breakpoints: tuple
    branches: tuple
    eta_minus: float
    eta_plus: float
    theta: float = 1.0
    dyadic: bool = False

    def __post_init__(self):
        self.validate()

    @property
    def k(self):
        """Number of branches."""
        return len(self.branches)

    def validate(self, grid_points=1000):
        """Check the structural invariants on a sample grid.

        Raises ConfigError when a branch fails to be onto [0, 1], the
        expansion bounds are violated, or a branch inverse does not invert.
        """
        bp = np.asarray(self.breakpoints, dtype=float)
        if bp[0] != 0.0 or bp[-1] != 1.0 or np.any(np.diff(bp) <= 0):
            raise ConfigError("breakpoints must increase from 0 to 1")
        if len(self.branches) != len(bp) - 1:
            raise ConfigError("need exactly one branch per partition cell")
        if not (1.0 < self.eta_minus <= self.eta_plus):
            raise ConfigError("require 1 < eta_minus <= eta_plus")
        if not (0.0 < self.theta <= 1.0):
            raise ConfigError("theta must lie in (0, 1]")
        ys = np.linspace(0.0, 1.0, grid_points)
        for j, br in enumerate(self.branches):
            lo, hi = bp[j], bp[j + 1]
            if abs(br.forward(lo) - round(br.forward(lo))) > _ONTO_TOL or abs(
                br.forward(hi) - round(br.forward(hi))
            ) > _ONTO_TOL:
                raise ConfigError(f"branch {j + 1} endpoint values not in {{0,1}}")
            if {round(float(br.forward(lo))), round(float(br.forward(hi)))} != {0, 1}:
                raise ConfigError(f"branch {j + 1} is not onto [0,1]")
            xs = lo + (hi - lo) * ys
            d = np.abs(br.derivative(xs))
            if np.any(d < self.eta_minus - 1e-9) or np.any(d > self.eta_plus + 1e-9):
                raise ConfigError(f"branch {j + 1} derivative leaves [eta-, eta+]")
            back = br.forward(br.inverse(ys))
            if np.max(np.abs(back - ys)) > _INVERSE_TOL:
                raise ConfigError(f"branch {j + 1} inverse fails round trip")

    def branch_index(self, x):
        """Cell index of x with the right-branch convention at breakpoints.

        Interior breakpoints use the branch to their right; x = 1 uses the
        last branch (measure-zero tie-breaking, any fixed rule works).
        """
        j = int(np.searchsorted(self.breakpoints, x, side="right")) - 1
        return min(max(j, 0), self.k - 1)


def apply_map(pmap: PartitionedMap, x: float) -> float:
    """Evaluate psi(x), clamped to [0, 1]."""
    if not np.isfinite(x):
        raise DomainError(f"apply_map needs finite x, got {x!r}")
    if x < 0.0 or x > 1.0:
        raise DomainError(f"apply_map needs x in [0,1], got {x!r}")
    y = float(pmap.branches[pmap.branch_index(x)].forward(x))
    return min(max(y, 0.0), 1.0)


def apply_map_array(pmap: PartitionedMap, x: np.ndarray) -> np.ndarray:
    """Vectorized apply_map for x already known to lie in [0, 1]."""
    x = np.asarray(x, dtype=float)
    idx = np.clip(np.searchsorted(pmap.breakpoints, x, side="right") - 1, 0, pmap.k - 1)
    y = np.empty_like(x)
    for j, br in enumerate(pmap.branches):
        sel = idx == j
        if np.any(sel):
            y[sel] = br.forward(x[sel])
    return np.clip(y, 0.0, 1.0)


def _doubling_exact(q: Fraction) -> Fraction:
    y = 2 * q
    return y - 1 if y >= 1 else y


class BitTapeState:
    """Lazily generated stream of i.i.d. uniform bits with a forward-only cursor.

    Bits are packed MSB-first into uint64 words drawn from a PCG64 generator,
    so the whole tape is reproducible from the 64-bit seed.  ``point()`` reads
    the 64 bits starting at the cursor as a dyadic real in [0, 1).
    """

    WINDOW = 64

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.cursor = 0
        self._words = np.empty(0, dtype=np.uint64)
        self._rng = np.random.Generator(np.random.PCG64(self.seed))

    def _ensure_bits(self, nbits: int):
        need_words = (nbits + 63) // 64 + 1
        if need_words > self._words.size:
            grow = max(need_words - self._words.size, 256)
            fresh = self._rng.integers(0, 2**64, size=grow, dtype=np.uint64)
            self._words = np.concatenate([self._words, fresh])

    def _window_word(self, k: int) -> int:
        i, s = divmod(k, 64)
        w = int(self._words[i])
        if s:
            w = ((w << s) & 0xFFFFFFFFFFFFFFFF) | (int(self._words[i + 1]) >> (64 - s))
        return w

    def point(self) -> float:
        """Dyadic real read from the 64 bits at the cursor."""
        self._ensure_bits(self.cursor + self.WINDOW)
        return self._window_word(self.cursor) / 2.0**64

    def advance(self, steps: int = 1):
        if steps < 0:
            raise DomainError("bit-tape cursor never rewinds")
        self.cursor += steps

    def points(self, n: int) -> np.ndarray:
        """The next n shifted tape points (vectorized); advances the cursor."""
        self._ensure_bits(self.cursor + n + self.WINDOW)
        k = self.cursor + np.arange(n)
        i, s = np.divmod(k, 64)
        w = self._words[i] << (s.astype(np.uint64))
        carry = self._words[i + 1] >> ((64 - s) % 64).astype(np.uint64)
        w = np.where(s > 0, w | carry, w)
        self.cursor += n
        return w / 2.0**64


def orbit(pmap: PartitionedMap, x0, n: int):
    """First n points (x0, psi x0, ..., psi^{n-1} x0) of an orbit.

    x0 may be a float, an exact Fraction (doubling map only), or a
    BitTapeState supplying exact doubling-map dynamics of arbitrary length.
    """
    if n < 1:
        raise DomainError("orbit needs n >= 1")
    if isinstance(x0, BitTapeState):
        if not pmap.dyadic:
            raise CapabilityError("bit-tape orbits are defined for the doubling map")
        return x0.points(n)
    if isinstance(x0, Fraction):
        if pmap.name != "doubling":
            raise CapabilityError("exact rational orbits supported for the doubling map only")
        pts = [x0]
        for _ in range(n - 1):
            pts.append(_doubling_exact(pts[-1]))
        return pts
    if pmap.dyadic and n > FLOAT_ORBIT_LIMIT:
        raise PrecisionError(
            f"float orbit of a dyadic-collapse map limited to {FLOAT_ORBIT_LIMIT} steps; "
            "use a BitTapeState or exact rationals"
        )
    pts = np.empty(n)
    pts[0] = x0
    for i in range(1, n):
        pts[i] = apply_map(pmap, pts[i - 1])
    return pts


class BooleanMap:
    """The Boolean-type transformation x -> (x - 1/x)/2, fixing 0.

    Preserves the standard Cauchy law, whose density is 1/(pi (1 + x^2)).
    """

    name = "boolean"

    @staticmethod
    def apply(x):
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)):
            raise DomainError("boolean map needs finite input")
        with np.errstate(divide="ignore", invalid="ignore"):
            y = np.where(x != 0.0, 0.5 * (x - 1.0 / np.where(x != 0.0, x, 1.0)), 0.0)
        return y if y.ndim else float(y)

    @staticmethod
    def invariant_density(x):
        x = np.asarray(x, dtype=float)
        return 1.0 / (np.pi * (1.0 + x * x))

    @staticmethod
    def invariant_cdf(x):
        x = np.asarray(x, dtype=float)
        return 0.5 + np.arctan(x) / np.pi

    @staticmethod
    def sample_invariant(rng, size):
        return rng.standard_cauchy(size)


def boolean_apply(x: float) -> float:
    """phi(x) = (x - 1/x)/2 for x != 0, and phi(0) = 0."""
    return BooleanMap.apply(x)


def conjugacy_xi(x):
    """xi(x) = cot(pi x), the measure isomorphism (0,1) -> R."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise PoleError("xi has poles at 0 and 1; x must lie strictly inside (0,1)")
    v = np.cos(np.pi * x) / np.sin(np.pi * x)
    return v if v.ndim else float(v)


def conjugacy_xi_inv(y):
    """Inverse conjugacy arccot(y)/pi with arccot valued in (0, pi)."""
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise DomainError("xi inverse needs finite input")
    v = (0.5 * np.pi - np.arctan(y)) / np.pi
    return v if v.ndim else float(v)


def periodic_points(pmap: PartitionedMap, period: int, limit: int = 64):
    """Exact rational cycles of the doubling map with the given primitive period.

    Returns up to `limit` cycles, each a tuple of Fractions p/(2^period - 1)
    in orbit order, one representative cycle per orbit, sorted by smallest
    element.  Period is capped at 24 to bound denominators.
    """
    if pmap.name != "doubling":
        raise CapabilityError("periodic_points supports the doubling map only")
    if not (1 <= period <= 24):
        raise DomainError("period must lie in 1..24")
    den = 2**period - 1
    if den == 0:
        return [(Fraction(0, 1),)]
    seen = np.zeros(den, dtype=bool)
    cycles = []
    for a in range(den):
        if seen[a]:
            continue
        cyc = []
        b = a
        while not seen[b]:
            seen[b] = True
            cyc.append(b)
            b = (2 * b) % den
        if b == a and len(cyc) == period:
            cycles.append(tuple(Fraction(c, den) for c in cyc))
    cycles.sort(key=lambda c: min(c))
    return cycles[:limit]


def _linear_branch(lo: float, hi: float) -> Branch:
    slope = 1.0 / (hi - lo)
    return Branch(
        lo=lo,
        hi=hi,
        forward=lambda x, lo=lo, s=slope: (x - lo) * s,
        derivative=lambda x, s=slope: np.full_like(np.asarray(x, dtype=float), s),
        inverse=lambda y, lo=lo, s=slope: lo + np.asarray(y, dtype=float) / s,
        inverse_derivative=lambda y, s=slope: np.full_like(
            np.asarray(y, dtype=float), 1.0 / s
        ),
    )


def make_doubling() -> PartitionedMap:
    """The doubling map 2x mod 1 as a two-branch partitioned map."""
    return PartitionedMap(
        name="doubling",
        breakpoints=(0.0, 0.5, 1.0),
        branches=(_linear_branch(0.0, 0.5), _linear_branch(0.5, 1.0)),
        eta_minus=2.0,
        eta_plus=2.0,
        theta=1.0,
        dyadic=True,
    )


def make_piecewise_linear(breakpoints: Sequence[float], slopes=None) -> PartitionedMap:
    """Full-branch piecewise-linear map: each cell mapped affinely onto [0, 1].

    The slope of each branch is forced to 1/width by the onto requirement;
    declared `slopes` are validated against that and otherwise ignored.
    """
    bp = tuple(float(b) for b in breakpoints)
    widths = np.diff(bp)
    if np.any(widths <= 0):
        raise ConfigError("breakpoints must be strictly increasing")
    implied = 1.0 / widths
    if slopes is not None:
        slopes = np.asarray(slopes, dtype=float)
        if slopes.shape != implied.shape or np.max(np.abs(np.abs(slopes) - implied)) > 1e-9:
            raise ConfigError("declared slopes inconsistent with onto branches")
    if np.any(implied <= 1.0):
        raise ConfigError("every branch must expand: all widths < 1 required")
    branches = tuple(_linear_branch(bp[j], bp[j + 1]) for j in range(len(bp) - 1))
    dyadic = len(bp) == 3 and abs(bp[1] - 0.5) == 0.0
    return PartitionedMap(
        name="doubling" if dyadic else "piecewise-linear",
        breakpoints=bp,
        branches=branches,
        eta_minus=float(np.min(implied)),
        eta_plus=float(np.max(implied)),
        theta=1.0,
        dyadic=dyadic,
    )
