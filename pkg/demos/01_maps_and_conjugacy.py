"""Expanding maps, exact doubling orbits, and the cotangent conjugacy.

Floating-point iteration of 2x mod 1 collapses to 0 within 53 steps; the bit
tape keeps the dynamics exact forever.  The conjugacy xi(x) = cot(pi x)
transports Lebesgue measure on (0,1) to the standard Cauchy law on R and
intertwines the doubling map with the Boolean-type transformation.
"""

import numpy as np

from birkhoff_lab import (
    BitTapeState,
    BooleanMap,
    apply_map,
    conjugacy_xi,
    make_doubling,
    orbit,
    periodic_points,
)

doubling = make_doubling()

print("== float orbits die, tape orbits do not ==")
x = 0.3
for k in range(60):
    x = apply_map(doubling, x)
print(f"float orbit of 0.3 after 60 steps: {x}  (collapsed to a fixed point)")

tape_orbit = orbit(doubling, BitTapeState(seed=7), 60)
print(f"bit-tape orbit after 60 steps:     {tape_orbit[-1]:.6f}  (still wandering)")

print("\n== exact periodic orbits ==")
for period in (1, 2, 3):
    cycles = periodic_points(doubling, period)
    print(f"period {period}: {[tuple(str(p) for p in c) for c in cycles]}")

print("\n== conjugacy with the Boolean-type transformation ==")
xs = np.linspace(0.05, 0.95, 7)
lhs = BooleanMap.apply(conjugacy_xi(xs))
rhs = conjugacy_xi(np.array([apply_map(doubling, float(v)) for v in xs]))
print("max |phi(xi(x)) - xi(psi(x))| =", np.max(np.abs(lhs - rhs)))

rng = np.random.default_rng(0)
u = rng.uniform(1e-9, 1 - 1e-9, 200_000)
t = conjugacy_xi(u)
print("pushforward of uniform through xi: median |t| =",
      f"{np.median(np.abs(t)):.4f}  (Cauchy median is 1)")
