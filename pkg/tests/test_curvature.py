import itertools

import numpy as np
import pytest

from jordan_osserman.curvature import (
    AlgebraicCurvatureTensor,
    constant_curvature_tensor,
    from_symmetric_form,
    jacobi_operator,
    perturbed_constant_curvature,
    reduced_jacobi,
    sectional_curvature,
    stabilize,
    validate_symmetries,
)
from jordan_osserman.errors import NullVectorError, SymmetryError
from jordan_osserman.fixtures import random_symmetric_form_tensor
from jordan_osserman.indefinite import SignatureSpace, inner, is_self_adjoint, sample_unit_spacelike

E2 = SignatureSpace.standard(0, 2)
E3 = SignatureSpace.standard(0, 3)
L3 = SignatureSpace.standard(1, 2)


def formula_value(space, kappa, x, y, z, w):
    """Constant curvature evaluated from inner products, no tensor involved."""
    return kappa * (inner(space, x, w) * inner(space, y, z) - inner(space, x, z) * inner(space, y, w))


def brute_jacobi(R, x):
    """Solve (M e_b, e_c) = R(e_b, x, x, e_c) entry by entry."""
    m = R.space.dim
    eye = np.eye(m)
    K = np.array([[R(eye[b], x, x, eye[c]) for b in range(m)] for c in range(m)])
    return np.linalg.inv(R.space.gram) @ K


class TestValidation:
    def test_constant_curvature_passes(self):
        assert validate_symmetries(constant_curvature_tensor(L3, 1.0)).passed

    def test_single_entry_fails(self):
        E = np.zeros((2,) * 4)
        E[0, 1, 0, 1] = 1.0
        rep = validate_symmetries(AlgebraicCurvatureTensor(E2, E))
        assert not rep.passed
        # R(e2,e1,e1,e2) should be -1 but is 0; the Bianchi sum at (0,1,0,1) is 1.
        assert rep.antisymmetry == 1.0
        assert rep.bianchi == 1.0

    def test_zero_passes(self):
        assert validate_symmetries(AlgebraicCurvatureTensor(E3, np.zeros((3,) * 4))).passed

    def test_checked_rejects(self):
        E = np.zeros((2,) * 4)
        E[0, 1, 0, 1] = 1.0
        with pytest.raises(SymmetryError) as info:
            AlgebraicCurvatureTensor.checked(E2, E)
        assert info.value.report.max_violation == 1.0

    def test_shape(self):
        with pytest.raises(ValueError):
            AlgebraicCurvatureTensor(E2, np.zeros((3,) * 4))


class TestConstructors:
    def test_zero_curvature(self):
        assert not np.any(constant_curvature_tensor(L3, 0.0).entries)

    def test_riemannian_plane(self):
        e1, e2 = np.eye(2)
        assert constant_curvature_tensor(E2, 1.0)(e1, e2, e2, e1) == 1.0

    def test_lorentz_plane(self):
        e1, e2 = np.eye(2)
        assert constant_curvature_tensor(SignatureSpace.standard(1, 1), 1.0)(e1, e2, e2, e1) == -1.0

    def test_matches_formula_on_random_vectors(self):
        rng = np.random.default_rng(0)
        space = SignatureSpace.standard(2, 3)
        R = constant_curvature_tensor(space, -1.5)
        for _ in range(20):
            x, y, z, w = rng.standard_normal((4, 5))
            assert R(x, y, z, w) == pytest.approx(formula_value(space, -1.5, x, y, z, w), abs=1e-10)

    def test_symmetric_form_gram_is_unit_curvature(self):
        a = from_symmetric_form(L3, np.array(L3.gram)).entries
        assert np.array_equal(a, constant_curvature_tensor(L3, 1.0).entries)

    def test_symmetric_form_zero(self):
        assert not np.any(from_symmetric_form(L3, np.zeros((3, 3))).entries)

    def test_symmetric_form_diag(self):
        e1, e2 = np.eye(2)
        assert from_symmetric_form(E2, np.diag([1.0, 2.0]))(e1, e2, e2, e1) == 2.0

    def test_symmetric_form_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            from_symmetric_form(E2, np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rank_one_form_generates_nothing(self):
        u = np.array([1.0, 2.0, -1.0])
        assert np.max(np.abs(from_symmetric_form(L3, np.outer(u, u)).entries)) < 1e-14

    def test_perturbation_equals_shifted_form(self):
        space = SignatureSpace.standard(1, 3)
        u = np.array([0.0, 0.0, 0.0, 1.0])
        eps = 1e-2
        a = perturbed_constant_curvature(space, 1.0, eps, u)
        b = from_symmetric_form(space, space.gram + eps * np.outer(u, u))
        assert np.allclose(a.entries, b.entries, atol=1e-15)
        assert validate_symmetries(a, 1e-12).passed


class TestStabilize:
    def test_examples(self):
        assert np.array_equal(stabilize([[2.0]], 3), np.diag([2.0, 0, 0]))
        assert np.array_equal(stabilize(np.eye(2), 2), np.eye(2))
        out = stabilize([[0.0, 1.0], [0.0, 0.0]], 4)
        expected = np.zeros((4, 4))
        expected[0, 1] = 1.0
        assert np.array_equal(out, expected)

    def test_too_small(self):
        with pytest.raises(ValueError):
            stabilize(np.eye(3), 2)


class TestJacobi:
    def test_riemannian_axis(self):
        M = jacobi_operator(constant_curvature_tensor(E3, 2.0), [0, 0, 1]).matrix
        assert np.allclose(M, np.diag([2.0, 2.0, 0.0]), atol=1e-15)

    def test_zero_point(self):
        R = random_symmetric_form_tensor(L3, np.random.default_rng(0))
        assert not np.any(jacobi_operator(R, np.zeros(3)).matrix)

    def test_lorentz_axis(self):
        x = np.array([0.0, 0.0, 1.0])
        M = jacobi_operator(constant_curvature_tensor(L3, 1.0), x).matrix
        assert np.allclose(np.sort(np.linalg.eigvals(M).real), [0, 1, 1], atol=1e-14)
        assert np.allclose(M @ x, 0.0)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(1)
        space = SignatureSpace.standard(2, 3)
        R = random_symmetric_form_tensor(space, rng)
        x = rng.standard_normal(5)
        assert np.allclose(jacobi_operator(R, x).matrix, brute_jacobi(R, x), atol=1e-10)

    def test_defining_identity(self):
        rng = np.random.default_rng(2)
        space = SignatureSpace.standard(1, 3)
        R = random_symmetric_form_tensor(space, rng)
        for _ in range(10):
            x, y, z = rng.standard_normal((3, 4))
            M = jacobi_operator(R, x).matrix
            assert inner(space, M @ y, z) == pytest.approx(R(y, x, x, z), abs=1e-10)

    @pytest.mark.parametrize("p, q", [(0, 3), (1, 2), (2, 3), (3, 5)])
    def test_invariants(self, p, q):
        rng = np.random.default_rng(p * 10 + q)
        space = SignatureSpace.standard(p, q)
        R1 = random_symmetric_form_tensor(space, rng)
        R2 = random_symmetric_form_tensor(space, rng)
        for x in sample_unit_spacelike(space, 0, 10):
            M = jacobi_operator(R1, x).matrix
            assert is_self_adjoint(space, M, 1e-10)
            assert np.max(np.abs(M @ x)) < 1e-10 * max(1, np.max(np.abs(M)))
            t = rng.normal()
            assert np.allclose(jacobi_operator(R1, t * x).matrix, t * t * M, atol=1e-10)
            a, b = rng.normal(size=2)
            lhs = jacobi_operator(a * R1 + b * R2, x).matrix
            rhs = a * M + b * jacobi_operator(R2, x).matrix
            assert np.allclose(lhs, rhs, atol=1e-10)


class TestReducedJacobi:
    def test_riemannian(self):
        comp, red = reduced_jacobi(constant_curvature_tensor(E3, 2.0), np.array([0, 0, 1.0]))
        assert np.allclose(red, 2 * np.eye(2), atol=1e-15)
        assert np.linalg.matrix_rank(np.column_stack([comp.basis, np.eye(3)[:, :2]])) == 2

    def test_zero_tensor(self):
        R = AlgebraicCurvatureTensor(L3, np.zeros((3,) * 4))
        assert not np.any(reduced_jacobi(R, np.array([0.0, 1.0, 0.0]))[1])

    def test_lorentz(self):
        comp, red = reduced_jacobi(constant_curvature_tensor(L3, 1.0), np.array([0, 0, 1.0]))
        assert np.allclose(red, np.eye(2), atol=1e-15)
        assert comp.signature() == (1, 1, 0)

    def test_null_point(self):
        with pytest.raises(NullVectorError):
            reduced_jacobi(constant_curvature_tensor(L3, 1.0), np.array([1.0, 1.0, 0.0]))

    def test_block_form(self):
        rng = np.random.default_rng(4)
        space = SignatureSpace.standard(2, 3)
        R = random_symmetric_form_tensor(space, rng)
        x = sample_unit_spacelike(space, 1, 1)[0]
        comp, red = reduced_jacobi(R, x)
        M = jacobi_operator(R, x).matrix
        B = comp.basis
        assert np.allclose(M @ B, B @ red, atol=1e-10)

    @pytest.mark.parametrize("kappa", [-2.0, 0.5, 3.0])
    def test_constant_curvature_is_scalar(self, kappa):
        space = SignatureSpace.standard(2, 4)
        R = constant_curvature_tensor(space, kappa)
        for x in sample_unit_spacelike(space, 9, 10):
            _, red = reduced_jacobi(R, x)
            assert np.allclose(red, kappa * np.eye(5), atol=1e-10 * max(1, np.max(np.abs(red))))


class TestSectional:
    def test_constant(self):
        rng = np.random.default_rng(5)
        space = SignatureSpace.standard(2, 3)
        R = constant_curvature_tensor(space, 3.0)
        for _ in range(20):
            x, y = rng.standard_normal((2, 5))
            assert sectional_curvature(R, x, y) == pytest.approx(3.0, abs=1e-9)

    def test_zero(self):
        R = AlgebraicCurvatureTensor(E2, np.zeros((2,) * 4))
        assert sectional_curvature(R, [1, 0], [0, 1]) == 0.0

    def test_symmetric_form(self):
        R = from_symmetric_form(E2, np.diag([1.0, 2.0]))
        assert sectional_curvature(R, [1, 0], [0, 1]) == 2.0

    def test_degenerate_plane(self):
        R = constant_curvature_tensor(L3, 1.0)
        with pytest.raises(NullVectorError):
            sectional_curvature(R, [1, 1, 0], [0, 0, 1e-20])


def test_index_symmetries_brute_force():
    """Loop over every index tuple once, as an independent check of the vectorized report."""
    R = perturbed_constant_curvature(SignatureSpace.standard(1, 2), 2.0, 0.3)
    E = R.entries
    worst = 0.0
    for a, b, c, d in itertools.product(range(3), repeat=4):
        worst = max(worst, abs(E[a, b, c, d] - E[c, d, a, b]),
                    abs(E[a, b, c, d] + E[b, a, c, d]),
                    abs(E[a, b, c, d] + E[b, c, a, d] + E[c, a, b, d]))
    assert worst < 1e-14
    assert validate_symmetries(R).max_violation < 1e-14
