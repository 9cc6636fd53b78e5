"""Fixed numerical tolerances used across the package.

Every hard-coded threshold lives here so the choices are auditable in one
place.  None of these are meant to be tuned per call; operations that accept
a user tolerance take it as an explicit argument instead.
"""

# Matrix acceptance ----------------------------------------------------------
SYMMETRY_TOL = 1e-12        # max |Q - Q^T| (relative to max(1, |Q|)) accepted
CHOLESKY_PIVOT_REL = 1e-14  # pivot <= n * this * max|Q_ij|  ->  not SPD
SINGULAR_DET_MIN = 1e-300   # |det| at or below this counts as singular

# Special functions ----------------------------------------------------------
GAMMA_POLE_TOL = 1e-12      # distance to a non-positive integer that is a pole
IGAMMA_NEAR_POLE = 0.4      # switch to the pole-factored series inside this
IGAMMA_TAYLOR_WINDOW = 1e-2  # switch to the Taylor-coefficient path inside this
IGAMMA_UNDERFLOW_LOG = -708.0  # log magnitude below which Gamma(a,x) is flushed to 0

# Lattice sums ---------------------------------------------------------------
POINT_CAP = 10 ** 8         # enumeration refuses to produce more points
TERM_STOP_REL = 1e-16       # continued sums truncated below this * (|sum| + 1)
SPLIT_TAIL_TARGET = 1e-17   # absolute tail target for the split Mellin sums

# Zeta evaluation ------------------------------------------------------------
POLE_EXCLUSION = 1e-6       # no evaluation closer than this to a zeta pole
RESIDUE_RHO = 0.25          # default contour radius for numeric residues
RESIDUE_NODES = 16          # default trapezoid node count on the contour

# Solver ---------------------------------------------------------------------
CONDITION_WARN = 1e6        # warn (not fail) above this 1-norm condition number
CRAMER_CHECK_REL = 1e-12    # LU vs Cramer cross-check tolerance for n <= 3
