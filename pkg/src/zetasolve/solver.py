"""Solving A x = b through residues of zeta functions and sphere integrals.

Three routes, each cross-checked against an LU direct solve:

* ``solve_via_residues``: closed-form residues.  With L = A^T Z^n,

      R   = 2 Res_{s=n/2} zeta_L(q_I, s)            (= n pi^(n/2) / (Gamma(n/2+1) |det A|))
      R_i = 2 n <Res_{s=n/2+1} zeta(A^T, b, s), e_i>

  and ``x_i = R_i / R`` (the factor 2 is the Jacobian of evaluating the
  residues in the variable s/2, validated against the direct solve).

* ``solve_via_integrals``: the same quantities as sphere integrals

      R   = int_{S^(n-1)} |A^T u|^-n du
      R_i = n int_{S^(n-1)} |A^T u|^(-n-2) <b, u> <A^T u, e_i> du

  evaluated on *shared* quadrature nodes so that correlated errors cancel
  in the ratio.  Monte Carlo runs report delta-method 3-sigma error bars
  per solution component.

* ``numeric_residue_solve``: contour residues of the *continued* zeta
  evaluators (an end-to-end check of the continuation machinery, n <= 3).

Every report carries the reference solution, per-component errors relative
to ``max |x_ref|``, and a 1-norm condition estimate (a warning is emitted
above 1e6, where the integrand dynamic range makes quadrature hopeless).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateQuadrature,
    EvaluationFailure,
    SingularMatrix,
    ValidationError,
)
from .quadforms import (
    Lattice,
    as_square,
    as_vector,
    gram_transform,
    matrix_to_json,
    vector_to_json,
)
from .spherequad import (
    QuadratureSpec,
    _block_sums,
    sample_directions,
    sphere_integrate,
    sphere_quadrature_nodes,
    sphere_surface_measure,
)
from .tolerances import (
    CONDITION_WARN,
    CRAMER_CHECK_REL,
    RESIDUE_NODES,
    RESIDUE_RHO,
    SINGULAR_DET_MIN,
)
from .zeta import (
    epstein_continued,
    residue_epstein,
    residue_numeric,
    residue_vector,
    vector_zeta,
)


@dataclass(frozen=True)
class LinearSystem:
    """A square nonsingular system A x = b."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = as_square(self.A)
        v = as_vector(self.b, a.shape[0])
        det = float(np.linalg.det(a))
        if not math.isfinite(det) or abs(det) <= SINGULAR_DET_MIN:
            raise SingularMatrix("matrix is singular to working precision")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", v)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class SolveReport:
    """Solution of one route plus the data needed to judge it."""

    x: np.ndarray
    x_reference: np.ndarray
    R: float
    Ri: np.ndarray
    per_component_rel_err: np.ndarray
    method: dict
    condition_estimate: float
    x_error3sigma: np.ndarray | None = field(default=None)

    @property
    def max_rel_err(self) -> float:
        return float(np.max(self.per_component_rel_err))

    def to_json(self) -> dict:
        out = {
            "x": vector_to_json(self.x),
            "x_reference": vector_to_json(self.x_reference),
            "R": float(self.R),
            "Ri": vector_to_json(self.Ri),
            "per_component_rel_err": vector_to_json(self.per_component_rel_err),
            "method": self.method,
            "condition_estimate": float(self.condition_estimate),
            "x_error3sigma": (None if self.x_error3sigma is None
                              else vector_to_json(self.x_error3sigma)),
        }
        return out


def _cramer_dets(a: np.ndarray) -> float:
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    return float(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def solve_direct(A, b) -> np.ndarray:
    """LU (partial pivoting) solve; for n <= 3 cross-checked against Cramer."""
    system = LinearSystem(A, b)
    try:
        x = np.linalg.solve(system.A, system.b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from exc
    if system.n <= 3:
        d = _cramer_dets(system.A)
        scale = max(float(np.max(np.abs(x))), 1e-300)
        for i in range(system.n):
            ai = np.array(system.A)
            ai[:, i] = system.b
            xi = _cramer_dets(ai) / d
            if abs(xi - x[i]) > CRAMER_CHECK_REL * max(scale, abs(xi)):
                raise EvaluationFailure(
                    f"LU and Cramer disagree at component {i}: {x[i]} vs {xi}"
                )
    return x


def _condition_1norm(a: np.ndarray) -> float:
    try:
        inv = np.linalg.inv(a)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from exc
    return float(np.linalg.norm(a, 1) * np.linalg.norm(inv, 1))


def _rel_err(x: np.ndarray, ref: np.ndarray) -> np.ndarray:
    scale = max(float(np.max(np.abs(ref))), 1e-300)
    return np.abs(x - ref) / scale


def _row_norm_sq(u: np.ndarray, a: np.ndarray) -> np.ndarray:
    v = u @ a
    return np.einsum("ij,ij->i", v, v)


def cimmino_R_integral(A, spec: QuadratureSpec) -> float:
    """Sphere integral of ``|A^T u|^-n`` (the solution denominator)."""
    a = as_square(A)
    n = a.shape[0]
    LinearSystem(a, np.zeros(n))  # singularity validation
    result = sphere_integrate(
        lambda u: np.power(_row_norm_sq(u, a), -n / 2.0), n, spec
    )
    return float(result.value)


def cimmino_Ri_integral(A, b, i: int, spec: QuadratureSpec) -> float:
    """n times the sphere integral of ``|A^T u|^(-n-2) <b, u> <A^T u, e_i>``.

    ``i`` is 1-based.
    """
    a = as_square(A)
    n = a.shape[0]
    bv = as_vector(b, n)
    LinearSystem(a, bv)
    if not 1 <= i <= n:
        raise ValidationError(f"component index must be in 1..{n}, got {i}")

    def integrand(u):
        v = u @ a
        q = np.einsum("ij,ij->i", v, v)
        return np.power(q, -(n + 2) / 2.0) * (u @ bv) * v[:, i - 1]

    return n * float(sphere_integrate(integrand, n, spec).value)


def solve_via_integrals(A, b, spec: QuadratureSpec) -> SolveReport:
    """Cimmino solve: x_i = R_i / R with R and all R_i sharing the same nodes."""
    system = LinearSystem(A, b)
    a, bv, n = system.A, system.b, system.n
    x_ref = solve_direct(a, bv)
    cond = _condition_1norm(a)
    if cond > CONDITION_WARN:
        warnings.warn(
            f"condition estimate {cond:.3g} above {CONDITION_WARN:.0e}; "
            f"quadrature accuracy is unreliable", stacklevel=2
        )

    method = {"route": "integrals", "quadrature": spec.method,
              "nodes": spec.nodes, "seed": spec.seed}
    err3 = None

    if spec.method == "monte_carlo":
        m = spec.nodes
        u = sample_directions(n, m, spec.seed)
        v = u @ a
        q = np.einsum("ij,ij->i", v, v)
        p_vals = np.power(q, -n / 2.0)
        base = np.power(q, -(n + 2) / 2.0) * (u @ bv)
        q_vals = n * base[:, None] * v  # column j: R_j integrand (even in u)
        mean_p = _block_sums(p_vals) / m
        mean_q = np.array([_block_sums(q_vals[:, j]) for j in range(n)]) / m
        if mean_p <= 0.0:
            raise DegenerateQuadrature("nonpositive denominator estimate")
        surface = sphere_surface_measure(n)
        r_value = surface * mean_p
        ri_value = surface * mean_q
        x = ri_value / r_value
        if m > 1:
            var_p = max(_block_sums(p_vals * p_vals) - m * mean_p ** 2, 0.0) / (m - 1)
            err3 = np.empty(n)
            for j in range(n):
                qj = q_vals[:, j]
                var_q = max(_block_sums(qj * qj) - m * mean_q[j] ** 2, 0.0) / (m - 1)
                cov = (_block_sums(qj * p_vals) - m * mean_q[j] * mean_p) / (m - 1)
                var_x = (var_q - 2.0 * x[j] * cov + x[j] ** 2 * var_p) / (m * mean_p ** 2)
                err3[j] = 3.0 * math.sqrt(max(var_x, 0.0))
        else:
            err3 = np.full(n, math.inf)
    else:
        nodes, w = sphere_quadrature_nodes(n, spec)
        v = nodes @ a
        q = np.einsum("ij,ij->i", v, v)
        r_value = float(w @ np.power(q, -n / 2.0))
        base = w * np.power(q, -(n + 2) / 2.0) * (nodes @ bv)
        ri_value = n * (base @ v)
        if r_value <= 0.0:
            raise DegenerateQuadrature("nonpositive denominator estimate")
        x = ri_value / r_value

    return SolveReport(
        x=x,
        x_reference=x_ref,
        R=float(r_value),
        Ri=np.asarray(ri_value, dtype=float),
        per_component_rel_err=_rel_err(x, x_ref),
        method=method,
        condition_estimate=cond,
        x_error3sigma=err3,
    )


def solve_via_residues(A, b) -> SolveReport:
    """Cimmino solve through the closed-form residues (fully analytic)."""
    system = LinearSystem(A, b)
    a, bv, n = system.A, system.b, system.n
    x_ref = solve_direct(a, bv)
    r_value = 2.0 * complex(residue_epstein(Lattice(a.T), np.eye(n)).residue).real
    ri_value = 2.0 * n * np.asarray(residue_vector(a.T, bv).residue, dtype=float)
    x = ri_value / r_value
    return SolveReport(
        x=x,
        x_reference=x_ref,
        R=r_value,
        Ri=ri_value,
        per_component_rel_err=_rel_err(x, x_ref),
        method={"route": "residues"},
        condition_estimate=_condition_1norm(a),
    )


def numeric_residue_solve(A, b, rho: float = RESIDUE_RHO,
                          m: int = RESIDUE_NODES) -> SolveReport:
    """Cimmino solve with residues extracted numerically from the continued
    zeta evaluators (contour trapezoid); limited to n <= 3 for cost."""
    system = LinearSystem(A, b)
    a, bv, n = system.A, system.b, system.n
    if n > 3:
        raise ValidationError(f"numeric residue solve supports n <= 3, got n={n}")
    x_ref = solve_direct(a, bv)

    gram = gram_transform(np.eye(n), a.T)
    r_hat = residue_numeric(
        lambda s: epstein_continued(gram, s / 2.0), float(n), rho, m
    ).residue.real
    if r_hat <= 0.0:
        raise DegenerateQuadrature("nonpositive residue estimate")

    vz_cache: dict[complex, list] = {}

    def component(j):
        def evaluator(s):
            vals = vz_cache.get(s)
            if vals is None:
                vals = vector_zeta(a.T, bv, s / 2.0)
                vz_cache[s] = vals
            return vals[j].value
        return evaluator

    ri_hat = np.array([
        residue_numeric(component(j), float(n + 2), rho, m).residue.real
        for j in range(n)
    ])
    r_value = 2.0 * r_hat
    ri_value = 2.0 * n * ri_hat
    x = ri_value / r_value
    return SolveReport(
        x=x,
        x_reference=x_ref,
        R=r_value,
        Ri=ri_value,
        per_component_rel_err=_rel_err(x, x_ref),
        method={"route": "numeric_residue", "rho": rho, "contour_nodes": m},
        condition_estimate=_condition_1norm(a),
    )


def system_to_json(system: LinearSystem) -> dict:
    return {"A": matrix_to_json(system.A), "b": vector_to_json(system.b)}
