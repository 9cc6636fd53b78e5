"""Epstein, weighted, lattice, and vector zeta functions.

Direct route (inside the convergence half-plane): truncated Dirichlet sums

    zeta(Q, s)    = sum_{w != 0} q_Q(w)^(-s),          Re s > n/2,
    zeta(Q, B, s) = sum_{w != 0} q_B(w) q_Q(w)^(-s),   Re s > n/2 + 1,

with rigorous integral-comparison tail bounds.

Continued route (everywhere except the single pole): the Mellin integral of
the matching theta series is split at t = 1 and each tail integral is an
upper incomplete gamma, giving

    zeta(Q, s) = pi^s / Gamma(s) * [  sum' (pi q_Q)^(-s)  Gamma(s, pi q_Q)
        + det(Q)^(-1/2) sum' (pi q')^(s - n/2) Gamma(n/2 - s, pi q')
        + det(Q)^(-1/2) / (s - n/2)  -  1/s ],

where q' runs over the inverse form.  The -1/s term is folded into the
prefactor through 1/(s Gamma(s)) = 1/Gamma(s+1), so the expression is
manifestly regular at s = 0 (value exactly -1) and at the negative integers
(trivial zeros).  The weighted variant uses the two-term Fourier transform
of the weighted Gaussian and carries its pole at s = n/2 + 1.

The vector-valued zeta of an invertible matrix A and vector b,

    zeta(A, b, s) = sum' |A w|^(-2s) <b, w> A w,

is evaluated componentwise through the identity
``<zeta(A, b, s), e_j> = zeta(A^T A, sym_outer(b, A^T e_j), s)``.

Lattice variants reduce through the congruence transform of the generator.
Truncation of the split sums follows the term-magnitude rule in
:mod:`zetasolve.tolerances` (radii are rounded up to integers so repeated
evaluations share enumerations).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EvaluationFailure,
    OutsideConvergence,
    SingularMatrix,
    TooCloseToPole,
)
from .quadforms import (
    Lattice,
    SPDForm,
    as_square,
    as_symmetric,
    as_vector,
    dual_lattice,
    gram_transform,
    qeval_many,
    sym_outer,
    trace_product,
)
from .specfun import gamma_complex, reciprocal_gamma, upper_incomplete_gamma
from .theta import enumerate_ellipsoid
from .tolerances import (
    POLE_EXCLUSION,
    RESIDUE_NODES,
    RESIDUE_RHO,
    SINGULAR_DET_MIN,
    SPLIT_TAIL_TARGET,
)

_LOG_PI = math.log(math.pi)
_DIRECT_CAP = 40_000_000


@dataclass(frozen=True)
class ZetaValue:
    """A zeta evaluation together with a rigorous truncation bound."""

    value: complex
    abs_error: float


@dataclass(frozen=True)
class GammaFactorSpec:
    """The factor ``G(s) = scalar * pi^-(s + pi_shift) * Gamma(s + gamma_shift)``.

    Covers the completed-zeta prefactors ``pi^-s Gamma(s)`` (shifts 0, 0) and
    ``pi^-(s+1) Gamma(s+1)`` (shifts 1, 1).
    """

    scalar: float
    pi_shift: float
    gamma_shift: float

    def value(self, s) -> complex:
        s = complex(s)
        return (self.scalar * cmath.exp(-(s + self.pi_shift) * _LOG_PI)
                * gamma_complex(s + self.gamma_shift))

    def pole_location(self, j: int = 0) -> float:
        """Location of the j-th gamma pole (j = 0 is the rightmost)."""
        return -self.gamma_shift - j

    def residue_at_gamma_pole(self, j: int = 0) -> float:
        """Residue of G at ``s = -gamma_shift - j``."""
        s0 = self.pole_location(j)
        sign = -1.0 if j % 2 else 1.0
        return (self.scalar * math.pi ** (-(s0 + self.pi_shift))
                * sign / math.factorial(j))


@dataclass(frozen=True)
class PoleReport:
    """A simple pole: location, residue (scalar or vector), provenance."""

    location: float
    residue: complex | np.ndarray
    source: str


@dataclass(frozen=True)
class FuncEqResidual:
    """Two sides of a functional equation evaluated at one point."""

    s: complex
    lhs: complex
    rhs: complex
    residual: float


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

_SPD_CACHE: dict[bytes, SPDForm] = {}


def _as_spd(Q) -> SPDForm:
    if isinstance(Q, SPDForm):
        return Q
    m = as_symmetric(Q)
    key = m.tobytes()
    form = _SPD_CACHE.get(key)
    if form is None:
        if len(_SPD_CACHE) > 64:
            _SPD_CACHE.clear()
        form = SPDForm(m)
        _SPD_CACHE[key] = form
    return form


def _as_lattice(L) -> Lattice:
    return L if isinstance(L, Lattice) else Lattice(L)


def _csum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def _pi_pow(s: complex) -> complex:
    return cmath.exp(s * _LOG_PI)


def _split_tail_bound(form: SPDForm, sigma: float, R: float, coef: float) -> float:
    """Upper bound on the dropped part of a split-Mellin sum beyond radius R.

    Terms are bounded by ``coef-weight * (pi q)^-sigma Gamma(sigma, pi q)``;
    with |Gamma(sigma, x)| <= C x^(sigma-1) e^-x this telescopes to
    ``C * e^(-pi R / 2) * cover / (pi R)`` for unit weights and to
    ``C * coef / pi * e^(-pi R / 2) * cover`` for weights below ``coef * q``.
    """
    x = math.pi * R
    corr = 1.0 / (1.0 - (sigma - 1.0) / x) if sigma > 1.0 else 1.0
    log_cover = form.n * math.log1p(math.sqrt(2.0 / form.min_eigenvalue))
    if coef == 0.0:
        log_base = -math.log(x)
    else:
        log_base = math.log(coef / math.pi)
    log_b = math.log(corr) + log_base - 0.5 * x + log_cover
    return math.exp(log_b) if log_b < 700.0 else math.inf


def _split_radius(form: SPDForm, sigma: float, coef: float) -> float:
    """Integer radius making the split-sum tail bound < SPLIT_TAIL_TARGET."""
    R = max(2.0, 2.0 * (sigma - 1.0) / math.pi + 1.0)
    while _split_tail_bound(form, sigma, R, coef) >= SPLIT_TAIL_TARGET:
        R *= 2.0
    return float(math.ceil(R))


def _unique_gamma_terms(ep, a: complex):
    """Per-unique-q values of ``(pi q)^-a Gamma(a, pi q)`` plus shell index."""
    uq, inv_idx = np.unique(ep.qvals, return_inverse=True)
    x = math.pi * uq
    gam = np.fromiter(
        (upper_incomplete_gamma(a, xi) for xi in x), dtype=complex, count=x.size
    )
    vals = np.exp(-a * np.log(x)) * gam
    return inv_idx, vals


def _half_sum(form: SPDForm, a: complex, weight: np.ndarray | None = None):
    """One side of a split-Mellin sum; returns (value, tail bound)."""
    sigma = a.real
    if weight is None:
        coef = 0.0
    else:
        coef = float(np.linalg.norm(weight, 2)) / form.min_eigenvalue
        if coef == 0.0:
            return 0.0 + 0.0j, 0.0
    R = _split_radius(form, sigma, coef)
    ep = enumerate_ellipsoid(form, R)
    tail = _split_tail_bound(form, sigma, R, coef)
    if len(ep) == 0:
        return 0.0 + 0.0j, tail
    inv_idx, vals = _unique_gamma_terms(ep, a)
    if weight is None:
        mult = np.bincount(inv_idx, minlength=vals.size).astype(float)
    else:
        w = qeval_many(weight, ep.points)
        mult = np.bincount(inv_idx, weights=w, minlength=vals.size)
    return _csum(mult * vals), tail


# ---------------------------------------------------------------------------
# direct Dirichlet sums
# ---------------------------------------------------------------------------

def _direct_tail_bound(form: SPDForm, sigma: float, R: float) -> float:
    """Covering bound on ``sum_{q(w) > R} q(w)^-sigma`` (sigma > n/2)."""
    n = form.n
    lam_max = float(np.linalg.eigvalsh(form.matrix)[-1])
    h = 0.5 * math.sqrt(lam_max * n)
    root = math.sqrt(R)
    if root <= 2.0 * h + 1.0:
        return math.inf
    kappa = 1.0 + h / (root - 2.0 * h)
    surface = 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)
    return (surface / form.sqrt_det * kappa ** (n - 1)
            * (root - 2.0 * h) ** (n - 2.0 * sigma) / (2.0 * sigma - n))


def _direct_radius(form: SPDForm, sigma: float, tol: float) -> float:
    R = 16.0
    while _direct_tail_bound(form, sigma, R) > tol:
        R *= 2.0
        est = (math.pi ** (form.n / 2.0) / math.gamma(form.n / 2.0 + 1.0)
               * R ** (form.n / 2.0) / form.sqrt_det)
        if est > _DIRECT_CAP:
            raise OutsideConvergence(
                f"tolerance {tol:.2e} at Re(s)={sigma + 0:.3g} needs ~{est:.2g} "
                f"lattice points; move s deeper into the convergence region"
            )
    return float(math.ceil(R))


def epstein_direct(Q, s, tol: float) -> ZetaValue:
    """Truncated sum ``sum' q_Q(w)^-s`` with tail bound below ``tol``.

    Requires Re(s) >= n/2 + 0.5.
    """
    Qf = _as_spd(Q)
    s = complex(s)
    tol = float(tol)
    if s.real < Qf.n / 2.0 + 0.5:
        raise OutsideConvergence(f"need Re(s) >= {Qf.n / 2 + 0.5}, got {s.real}")
    R = _direct_radius(Qf, s.real, tol)
    ep = enumerate_ellipsoid(Qf, R, cap=_DIRECT_CAP)
    value = complex(np.sum(np.power(ep.qvals, -s)))
    return ZetaValue(value, _direct_tail_bound(Qf, s.real, R))


def weighted_direct(Q, B, s, tol: float) -> ZetaValue:
    """Truncated sum ``sum' q_B(w) q_Q(w)^-s``; needs Re(s) >= n/2 + 1.5."""
    Qf = _as_spd(Q)
    Bm = as_symmetric(B, Qf.n)
    s = complex(s)
    tol = float(tol)
    if s.real < Qf.n / 2.0 + 1.5:
        raise OutsideConvergence(f"need Re(s) >= {Qf.n / 2 + 1.5}, got {s.real}")
    b_norm = float(np.linalg.norm(Bm, 2))
    if b_norm == 0.0:
        return ZetaValue(0.0 + 0.0j, 0.0)
    coef = b_norm / Qf.min_eigenvalue
    R = _direct_radius(Qf, s.real - 1.0, tol / coef)
    ep = enumerate_ellipsoid(Qf, R, cap=_DIRECT_CAP)
    w = qeval_many(Bm, ep.points)
    value = complex(np.sum(w * np.power(ep.qvals, -s)))
    return ZetaValue(value, coef * _direct_tail_bound(Qf, s.real - 1.0, R))


# ---------------------------------------------------------------------------
# analytic continuation
# ---------------------------------------------------------------------------

def epstein_continued(Q, s) -> ZetaValue:
    """``zeta(q_Q, s)`` everywhere except the pole at s = n/2.

    At s = 0 the folded prefactor gives the exact special value -1; at the
    negative integers it produces the trivial zeros.
    """
    Qf = _as_spd(Q)
    s = complex(s)
    n = Qf.n
    if abs(s - n / 2.0) <= POLE_EXCLUSION:
        raise TooCloseToPole(f"s={s} is within {POLE_EXCLUSION} of the pole n/2")
    inv_f = Qf.inverse_form()
    s_dual = n / 2.0 - s
    sum_main, tail_main = _half_sum(Qf, s)
    sum_dual, tail_dual = _half_sum(inv_f, s_dual)
    droot = 1.0 / Qf.sqrt_det
    bracket = sum_main + droot * sum_dual + droot / (s - n / 2.0)
    rg = reciprocal_gamma(s)
    pis = _pi_pow(s)
    value = pis * (rg * bracket - reciprocal_gamma(s + 1.0))
    err = abs(pis) * abs(rg) * (tail_main + droot * tail_dual)
    err += 1e-15 * (1.0 + abs(value))
    return ZetaValue(value, err)


def _weighted_many(Qf: SPDForm, mats: list[np.ndarray], s: complex) -> list[ZetaValue]:
    """weighted_continued for several weights sharing all lattice data."""
    n = Qf.n
    if abs(s - (n / 2.0 + 1.0)) <= POLE_EXCLUSION:
        raise TooCloseToPole(f"s={s} is within {POLE_EXCLUSION} of the pole n/2+1")
    sig = s - 1.0
    inv_f = Qf.inverse_form()
    droot = 1.0 / Qf.sqrt_det
    cs = []
    trs = []
    for Bm in mats:
        c = Qf.inv @ Bm @ Qf.inv
        cs.append((c + c.T) / 2.0)
        trs.append(trace_product(Qf, Bm))

    a_main = s
    a_poly = n / 2.0 - sig + 1.0
    a_gauss = n / 2.0 - sig

    lam_q = Qf.min_eigenvalue
    lam_i = inv_f.min_eigenvalue
    coef_main = max(float(np.linalg.norm(B, 2)) for B in mats) / lam_q
    coef_poly = max(float(np.linalg.norm(C, 2)) for C in cs) / lam_i
    if coef_main == 0.0:
        return [ZetaValue(0.0 + 0.0j, 0.0) for _ in mats]

    ep_main = enumerate_ellipsoid(Qf, _split_radius(Qf, a_main.real, coef_main))
    ep_poly = enumerate_ellipsoid(inv_f, _split_radius(inv_f, a_poly.real, coef_poly))
    ep_gauss = enumerate_ellipsoid(inv_f, _split_radius(inv_f, a_gauss.real, 0.0))

    idx_main, val_main = _unique_gamma_terms(ep_main, a_main)
    idx_poly, val_poly = _unique_gamma_terms(ep_poly, a_poly)
    idx_gauss, val_gauss = _unique_gamma_terms(ep_gauss, a_gauss)
    mult_gauss = np.bincount(idx_gauss, minlength=val_gauss.size).astype(float)
    sum_gauss = _csum(mult_gauss * val_gauss)

    tail_main = _split_tail_bound(Qf, a_main.real, ep_main.radius, coef_main)
    tail_poly = _split_tail_bound(inv_f, a_poly.real, ep_poly.radius, coef_poly)
    tail_gauss = _split_tail_bound(inv_f, a_gauss.real, ep_gauss.radius, 0.0)

    rg = reciprocal_gamma(s)
    pis = _pi_pow(s)
    pref = pis * rg
    two_pi = 2.0 * math.pi
    out = []
    for Bm, c, tr in zip(mats, cs, trs):
        w1 = np.bincount(idx_main, weights=qeval_many(Bm, ep_main.points),
                         minlength=val_main.size)
        w2 = np.bincount(idx_poly, weights=qeval_many(c, ep_poly.points),
                         minlength=val_poly.size)
        s1 = _csum(w1 * val_main)
        s2 = _csum(w2 * val_poly)
        bracket = (s1 - droot * s2 + (tr / two_pi) * droot * sum_gauss
                   + (tr / two_pi) * droot / (sig - n / 2.0))
        value = pref * bracket
        err = abs(pref) * (tail_main + droot * tail_poly
                           + abs(tr / two_pi) * droot * tail_gauss)
        err += 1e-15 * (1.0 + abs(value))
        out.append(ZetaValue(value, err))
    return out


def weighted_continued(Q, B, s) -> ZetaValue:
    """``zeta(q_Q, q_B, s)`` everywhere except the pole at s = n/2 + 1."""
    Qf = _as_spd(Q)
    Bm = as_symmetric(B, Qf.n)
    return _weighted_many(Qf, [Bm], complex(s))[0]


def lattice_zeta(L, Q, s) -> ZetaValue:
    """``zeta_L(q_Q, s)`` via the congruence reduction to the standard lattice."""
    Lat = _as_lattice(L)
    Qf = _as_spd(Q)
    return epstein_continued(_as_spd(gram_transform(Qf, Lat.gen)), s)


def lattice_weighted_zeta(L, Q, B, s) -> ZetaValue:
    """``zeta_L(q_Q, q_B, s)`` via the congruence reduction."""
    Lat = _as_lattice(L)
    Qf = _as_spd(Q)
    Bm = as_symmetric(B, Qf.n)
    return weighted_continued(
        _as_spd(gram_transform(Qf, Lat.gen)),
        gram_transform(Bm, Lat.gen),
        s,
    )


def vector_zeta(A, b, s) -> list[ZetaValue]:
    """Vector zeta ``sum' |A w|^(-2s) <b, w> A w``, one ZetaValue per component.

    Component j reduces to a weighted zeta of the Gram form A^T A with the
    rank-two weight ``sym_outer(b, A^T e_j)``.
    """
    Am = as_square(A)
    n = Am.shape[0]
    bv = as_vector(b, n)
    det = float(np.linalg.det(Am))
    if not math.isfinite(det) or abs(det) <= SINGULAR_DET_MIN:
        raise SingularMatrix("vector zeta needs an invertible matrix")
    s = complex(s)
    gram = _as_spd(gram_transform(np.eye(n), Am))
    if not bv.any():
        if abs(s - (n / 2.0 + 1.0)) <= POLE_EXCLUSION:
            raise TooCloseToPole(f"s={s} is within {POLE_EXCLUSION} of the pole")
        return [ZetaValue(0.0 + 0.0j, 0.0) for _ in range(n)]
    mats = [sym_outer(bv, Am[j, :]) for j in range(n)]
    return _weighted_many(gram, mats, s)


# ---------------------------------------------------------------------------
# residues
# ---------------------------------------------------------------------------

def residue_epstein(L, Q) -> PoleReport:
    """Residue of ``zeta_L(q_Q, s)`` at its pole s = n/2 (closed form)."""
    Lat = _as_lattice(L)
    Qf = _as_spd(Q)
    n = Qf.n
    res = (n / 2.0) * math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
    res /= Lat.volume * Qf.sqrt_det
    return PoleReport(location=n / 2.0, residue=complex(res), source="analytic")


def residue_weighted(L, Q, B) -> PoleReport:
    """Residue of ``zeta_L(q_Q, q_B, s)`` at s = n/2 + 1 (closed form)."""
    Lat = _as_lattice(L)
    Qf = _as_spd(Q)
    Bm = as_symmetric(B, Qf.n)
    n = Qf.n
    res = 0.5 * math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
    res *= trace_product(Qf, Bm) / (Lat.volume * Qf.sqrt_det)
    return PoleReport(location=n / 2.0 + 1.0, residue=complex(res), source="analytic")


def residue_vector(A, b) -> PoleReport:
    """Vector residue of ``zeta(A, b, s)`` at s = n/2 + 1 (closed form)."""
    Am = as_square(A)
    n = Am.shape[0]
    bv = as_vector(b, n)
    det = float(np.linalg.det(Am))
    if not math.isfinite(det) or abs(det) <= SINGULAR_DET_MIN:
        raise SingularMatrix("vector residue needs an invertible matrix")
    dual_b = np.linalg.solve(Am.T, bv)
    res = 0.5 * math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0) / abs(det) * dual_b
    return PoleReport(location=n / 2.0 + 1.0, residue=res, source="analytic")


def residue_numeric(evaluator, s0: float, rho: float = RESIDUE_RHO,
                    m: int = RESIDUE_NODES) -> PoleReport:
    """Cauchy-integral residue on a circle around ``s0`` (trapezoid rule).

    ``residue ~ (rho/m) sum_k f(s0 + rho e^(i theta_k)) e^(i theta_k)`` with
    equispaced nodes; exponentially accurate in ``m`` for a simple pole.
    """
    total = 0.0 + 0.0j
    for k in range(m):
        theta = 2.0 * math.pi * k / m
        z = s0 + rho * cmath.exp(1j * theta)
        try:
            val = evaluator(z)
        except Exception as exc:  # noqa: BLE001 - reported as EvaluationFailure
            raise EvaluationFailure(f"evaluator failed at node {z}: {exc}") from exc
        val = getattr(val, "value", val)
        total += complex(val) * cmath.exp(1j * theta)
    return PoleReport(location=float(s0), residue=total * rho / m, source="numeric")


# ---------------------------------------------------------------------------
# functional equations
# ---------------------------------------------------------------------------

def funceq_residual_lattice(L, Q, s) -> FuncEqResidual:
    """Defect of the lattice functional equation at ``s``.

    lhs = pi^-(n/2-s) Gamma(n/2-s) zeta_L(q_Q, n/2-s),
    rhs = pi^-s Gamma(s) zeta_L'(q_{Q^-1}, s) / (|L| sqrt(det Q)).
    """
    Lat = _as_lattice(L)
    Qf = _as_spd(Q)
    n = Qf.n
    s = complex(s)
    lhs = (_pi_pow(-(n / 2.0 - s)) * gamma_complex(n / 2.0 - s)
           * lattice_zeta(Lat, Qf, n / 2.0 - s).value)
    rhs = (_pi_pow(-s) * gamma_complex(s)
           * lattice_zeta(dual_lattice(Lat), Qf.inverse_form(), s).value
           / (Lat.volume * Qf.sqrt_det))
    return FuncEqResidual(s=s, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs))


def funceq_residual_weighted(L, Q, B, s) -> FuncEqResidual:
    """Defect of the weighted functional equation at ``s``.

    lhs = pi^-(n/2-s) Gamma(n/2+1-s) zeta_L(q_Q, q_B, n/2+1-s)
          + pi^-s Gamma(s+1) zeta_L'(q_{Q^-1}, q_C, s+1) / (|L| sqrt(det Q)),
    rhs = Tr(Q^-1 B) pi^-s Gamma(s) zeta_L'(q_{Q^-1}, s) / (2 |L| sqrt(det Q)),
    with C = Q^-1 B Q^-1.
    """
    Lat = _as_lattice(L)
    Qf = _as_spd(Q)
    Bm = as_symmetric(B, Qf.n)
    n = Qf.n
    s = complex(s)
    c = Qf.inv @ Bm @ Qf.inv
    c = (c + c.T) / 2.0
    dual = dual_lattice(Lat)
    inv_f = Qf.inverse_form()
    norm = Lat.volume * Qf.sqrt_det
    lhs = (_pi_pow(-(n / 2.0 - s)) * gamma_complex(n / 2.0 + 1.0 - s)
           * lattice_weighted_zeta(Lat, Qf, Bm, n / 2.0 + 1.0 - s).value)
    lhs += (_pi_pow(-s) * gamma_complex(s + 1.0)
            * lattice_weighted_zeta(dual, inv_f, c, s + 1.0).value / norm)
    rhs = (trace_product(Qf, Bm) / (2.0 * norm) * _pi_pow(-s) * gamma_complex(s)
           * lattice_zeta(dual, inv_f, s).value)
    return FuncEqResidual(s=s, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs))


def funceq_residual_vector(A, b, c, s) -> FuncEqResidual:
    """Defect of the vector functional equation at ``s``.

    lhs = pi^-(n/2-s) Gamma(n/2+1-s) <zeta(A, b, n/2+1-s), A c>
          + pi^-s Gamma(s+1) <A'b, zeta(A', c, s+1)> / |det A|,
    rhs = <b, c> pi^-s Gamma(s) zeta(A', s) / (2 |det A|),
    where A' is the inverse transpose.
    """
    Am = as_square(A)
    n = Am.shape[0]
    bv = as_vector(b, n)
    cv = as_vector(c, n)
    det = float(np.linalg.det(Am))
    if not math.isfinite(det) or abs(det) <= SINGULAR_DET_MIN:
        raise SingularMatrix("functional equation needs an invertible matrix")
    s = complex(s)
    a_dual = np.linalg.inv(Am.T)
    db = a_dual @ bv
    ac = Am @ cv
    lat = Lattice(Am)
    lat_dual = Lattice(a_dual)
    eye = np.eye(n)
    weight = sym_outer(db, ac)
    lhs = (_pi_pow(-(n / 2.0 - s)) * gamma_complex(n / 2.0 + 1.0 - s)
           * lattice_weighted_zeta(lat, eye, weight, n / 2.0 + 1.0 - s).value)
    lhs += (_pi_pow(-s) * gamma_complex(s + 1.0)
            * lattice_weighted_zeta(lat_dual, eye, sym_outer(ac, db), s + 1.0).value
            / abs(det))
    rhs = (float(bv @ cv) / (2.0 * abs(det)) * _pi_pow(-s) * gamma_complex(s)
           * lattice_zeta(lat_dual, eye, s).value)
    return FuncEqResidual(s=s, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs))
