import math

import numpy as np
import pytest

from zetasolve.errors import SingularMatrix, ValidationError
from zetasolve.solver import (
    LinearSystem,
    cimmino_R_integral,
    cimmino_Ri_integral,
    numeric_residue_solve,
    solve_direct,
    solve_via_integrals,
    solve_via_residues,
)
from zetasolve.spherequad import QuadratureSpec

A22 = np.array([[2.0, 1.0], [1.0, 3.0]])
B22 = np.array([5.0, 10.0])


def random_system(rng, n, max_cond):
    """Well-conditioned random system with condition number below max_cond."""
    u, _ = np.linalg.qr(rng.standard_normal((n, n)))
    v, _ = np.linalg.qr(rng.standard_normal((n, n)))
    cond = rng.uniform(1.0, max_cond)
    sing = np.geomspace(1.0, 1.0 / cond, n) * rng.uniform(0.5, 2.0)
    a = u @ np.diag(sing) @ v.T
    return a, rng.standard_normal(n)


def test_solve_direct_examples():
    assert np.allclose(solve_direct(np.eye(3), [1.0, 2.0, 3.0]), [1, 2, 3])
    assert np.allclose(solve_direct(np.diag([2.0, 3.0]), [2.0, 3.0]), [1, 1])
    assert np.allclose(solve_direct(A22, B22), [1.0, 3.0], atol=1e-12)


def test_solve_direct_singular():
    with pytest.raises(SingularMatrix):
        solve_direct([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])
    with pytest.raises(SingularMatrix):
        LinearSystem(np.zeros((2, 2)), np.ones(2))


def test_cimmino_r_integral_values():
    spec = QuadratureSpec("circle_trapezoid", 256)
    assert cimmino_R_integral(np.eye(2), spec) == pytest.approx(2 * math.pi, rel=1e-13)
    assert cimmino_R_integral(np.diag([2.0, 3.0]), spec) == pytest.approx(math.pi / 3, rel=1e-12)
    g3 = QuadratureSpec("product_gauss", 24)
    assert cimmino_R_integral(np.eye(3), g3) == pytest.approx(4 * math.pi, rel=1e-13)


def test_cimmino_ri_integral_values():
    spec = QuadratureSpec("circle_trapezoid", 256)
    assert cimmino_Ri_integral(np.eye(2), [1.0, 0.0], 1, spec) == pytest.approx(2 * math.pi, rel=1e-13)
    assert abs(cimmino_Ri_integral(np.eye(2), [1.0, 0.0], 2, spec)) < 1e-14
    got = cimmino_Ri_integral(np.diag([2.0, 3.0]), [2.0, 3.0], 1,
                              QuadratureSpec("circle_trapezoid", 1024))
    assert got == pytest.approx(math.pi / 3, rel=1e-11)
    with pytest.raises(ValidationError):
        cimmino_Ri_integral(np.eye(2), [1.0, 0.0], 3, spec)


def test_solve_via_integrals_deterministic():
    spec = QuadratureSpec("circle_trapezoid", 256)
    r = solve_via_integrals(np.eye(2), [3.0, -4.0], spec)
    assert r.max_rel_err < 1e-12
    assert np.array_equal(r.x, r.Ri / r.R)
    r = solve_via_integrals(A22, B22, QuadratureSpec("circle_trapezoid", 1024))
    assert np.allclose(r.x, [1.0, 3.0], atol=1e-8)
    a3 = np.array([[3.0, 1.0, 0.0], [1.0, 4.0, 1.0], [0.0, 1.0, 5.0]])
    r = solve_via_integrals(a3, np.array([1.0, 2.0, 3.0]),
                            QuadratureSpec("product_gauss", 48))
    assert r.max_rel_err < 1e-10


def test_solve_via_integrals_monte_carlo():
    rng = np.random.default_rng(11)
    a = np.eye(4) + 0.2 * rng.standard_normal((4, 4))
    b = rng.standard_normal(4)
    r = solve_via_integrals(a, b, QuadratureSpec("monte_carlo", 10 ** 6, seed=42))
    assert r.max_rel_err < 1e-2
    assert r.x_error3sigma is not None
    assert np.all(np.abs(r.x - r.x_reference) <= r.x_error3sigma)
    assert r.method["seed"] == 42
    assert np.array_equal(r.x, r.Ri / r.R)


def test_solve_via_residues_examples():
    r = solve_via_residues(np.diag([2.0, 3.0]), [2.0, 3.0])
    assert np.allclose(r.x, [1.0, 1.0], atol=1e-14)
    assert r.R == pytest.approx(math.pi / 3, rel=1e-13)
    assert np.allclose(r.Ri, [math.pi / 3, math.pi / 3], rtol=1e-13)
    r = solve_via_residues(np.eye(2), [7.0, -4.0])
    assert np.allclose(r.x, [7.0, -4.0], atol=1e-13)
    r = solve_via_residues(A22, B22)
    assert np.allclose(r.x, [1.0, 3.0], atol=1e-12)


def test_numeric_residue_solve_examples():
    r = numeric_residue_solve(np.eye(2), [1.0, 0.0])
    assert np.allclose(r.x, [1.0, 0.0], atol=1e-8)
    r = numeric_residue_solve(np.diag([2.0, 3.0]), [2.0, 3.0])
    assert np.allclose(r.x, [1.0, 1.0], atol=1e-8)
    r = numeric_residue_solve(A22, B22)
    assert np.allclose(r.x, [1.0, 3.0], atol=1e-7)
    with pytest.raises(ValidationError):
        numeric_residue_solve(np.eye(4), np.ones(4))


def test_route_agreement_random_suite():
    rng = np.random.default_rng(500)
    for n in (2, 3, 4, 5, 6):
        a, b = random_system(rng, n, max_cond=100.0)
        res = solve_via_residues(a, b)
        assert res.max_rel_err < 1e-12
    for n in (2, 3):
        a, b = random_system(rng, n, max_cond=20.0)
        spec = (QuadratureSpec("circle_trapezoid", 4096) if n == 2
                else QuadratureSpec("product_gauss", 96))
        r = solve_via_integrals(a, b, spec)
        assert r.max_rel_err < 1e-8
        r = numeric_residue_solve(a, b)
        assert r.max_rel_err < 1e-7


def test_scale_equivariance():
    rng = np.random.default_rng(42)
    a, b = random_system(rng, 3, max_cond=10.0)
    base = solve_via_residues(a, b).x
    for c in (0.5, 3.0):
        scaled = solve_via_residues(c * a, c * b).x
        assert np.max(np.abs(scaled - base)) < 1e-10 * max(1.0, np.max(np.abs(base)))


def test_permutation_equivariance():
    rng = np.random.default_rng(43)
    a, b = random_system(rng, 4, max_cond=10.0)
    perm = np.eye(4)[[2, 0, 3, 1]]
    base = solve_via_residues(a, b).x
    permuted = solve_via_residues(perm @ a, perm @ b).x
    assert np.max(np.abs(permuted - base)) < 1e-10


def test_monte_carlo_error_honesty_small():
    rng = np.random.default_rng(77)
    a = np.eye(4) + 0.15 * rng.standard_normal((4, 4))
    b = rng.standard_normal(4)
    covered = 0
    for seed in range(10):
        r = solve_via_integrals(a, b, QuadratureSpec("monte_carlo", 40000, seed=seed))
        if np.all(np.abs(r.x - r.x_reference) <= r.x_error3sigma):
            covered += 1
    assert covered >= 9


def test_condition_warning():
    a = np.diag([1.0, 1e-7])
    with pytest.warns(UserWarning):
        solve_via_integrals(a, [1.0, 1.0], QuadratureSpec("circle_trapezoid", 64))


def test_report_json_round_trip():
    import json
    r = solve_via_residues(A22, B22)
    blob = json.dumps(r.to_json(), sort_keys=True)
    back = json.loads(blob)
    assert back["x"]["v"] == [1.0, 3.0]
    assert back["method"]["route"] == "residues"
