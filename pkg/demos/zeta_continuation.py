"""Epstein zeta values: direct sums vs analytic continuation.

zeta(Q, s) = sum over nonzero integer vectors of <Qw, w>^-s converges only
for Re(s) > n/2.  Splitting the Mellin integral of the theta series at t = 1
turns every term into an upper incomplete gamma and yields an expression
valid in the whole plane minus the single pole at s = n/2, with the pole and
the special value at s = 0 sitting in explicit rational terms.
"""

import numpy as np

from zetasolve import (
    Lattice,
    epstein_continued,
    epstein_direct,
    lattice_zeta,
    weighted_continued,
)

I2 = np.eye(2)

# ---------------------------------------------------------------------------
# Agreement where both routes exist
# ---------------------------------------------------------------------------
print("direct vs continued inside the convergence region (Q = I2):")
# the closer s sits to the abscissa n/2, the slower the sum: pick feasible
# tolerances per point (the evaluator refuses hopeless combinations)
for s, tol in ((2.5, 1e-8), (3.0, 1e-12), (4.0, 1e-12), (3.0 + 2.0j, 1e-12)):
    d = epstein_direct(I2, s, tol)
    c = epstein_continued(I2, s)
    print(f"  s = {s}:  direct {d.value:.15g}  (tail bound {d.abs_error:.1e})")
    print(f"            continued {c.value:.15g}   diff {abs(d.value - c.value):.2e}")

# classical cross-check: zeta_{Z^2}(3) = 4 zeta(3) beta(3)
zeta3 = 1.2020569031595942854
beta3 = np.pi ** 3 / 32
print(f"\n  4 zeta(3) beta(3) = {4 * zeta3 * beta3:.15f}")

# ---------------------------------------------------------------------------
# Values the sum can never reach
# ---------------------------------------------------------------------------
print("\ncontinued values outside the convergence region:")
for s in (0.5, 0.0, -1.0, -2.0, -0.75 + 0.4j):
    c = epstein_continued(I2, s)
    print(f"  s = {s}:  {c.value:.15g}")
print("  (s = 0 gives exactly -1; negative integers are the trivial zeros)")

# ---------------------------------------------------------------------------
# Weighted and lattice variants reduce to the same engine
# ---------------------------------------------------------------------------
print("\nshift identity zeta(Q, Q, s) = zeta(Q, s-1):")
for s in (3.5, 0.4, -0.7):
    a = weighted_continued(I2, I2, s).value
    b = epstein_continued(I2, s - 1.0).value
    print(f"  s = {s}:  weighted {a:.12g}   plain(s-1) {b:.12g}")

gen = np.array([[1.0, 1.0], [0.0, 1.0]])
print("\nlattice reduction (sheared lattice = Gram form):")
a = lattice_zeta(Lattice(gen), I2, 3.0).value
b = epstein_continued(np.array([[1.0, 1.0], [1.0, 2.0]]), 3.0).value
print(f"  zeta_L(I2, 3) = {a:.15g}")
print(f"  zeta(Gram, 3) = {b:.15g}")
