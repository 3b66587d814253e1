import numpy as np
import pytest

from mixedcurv.algebra import (
    FrameKind,
    HermitianLieAlgebra,
    RealPresentation,
    change_frame,
    check_real_presentation,
    classify,
    from_real_presentation,
    jacobi_residual,
    permute_frame,
    random_unitary,
    to_real_presentation,
    unimodularity_defect,
    validate,
)
from mixedcurv.curvature import chern_curvature, chern_torsion
from mixedcurv.errors import InputError
from mixedcurv.families import AlmostAbelianParams, almost_abelian_build, fixture

from generators import random_structure_constants, random_valid_algebra
import oracles


def _broken():
    C = np.zeros((3, 3, 3), dtype=complex)
    D = np.zeros_like(C)
    C[0, 1, 2], C[0, 2, 1] = 1, -1
    D[0, 1, 0] = 1
    return HermitianLieAlgebra(3, C, D)


class TestConstruction:
    def test_shape_mismatch(self):
        with pytest.raises(InputError, match="shape"):
            HermitianLieAlgebra(2, np.zeros((2, 2, 3)), np.zeros((2, 2, 2)))

    def test_non_finite(self):
        D = np.zeros((2, 2, 2), dtype=complex)
        D[0, 0, 0] = np.nan
        with pytest.raises(InputError, match="non-finite"):
            HermitianLieAlgebra(2, np.zeros((2, 2, 2)), D)

    def test_antisymmetry_rejected_beyond_tol(self):
        C = np.zeros((2, 2, 2), dtype=complex)
        C[0, 0, 1] = 1
        with pytest.raises(InputError, match="antisymmetric"):
            HermitianLieAlgebra(2, C, np.zeros_like(C))

    def test_small_asymmetry_is_removed(self):
        C = np.zeros((2, 2, 2), dtype=complex)
        C[0, 0, 1], C[0, 1, 0] = 1, -1 + 1e-12
        alg = HermitianLieAlgebra(2, C, np.zeros_like(C))
        assert np.array_equal(alg.C, -alg.C.transpose(0, 2, 1))

    def test_immutable(self):
        alg = fixture("sl2c").algebra
        with pytest.raises(ValueError):
            alg.C[0, 0, 0] = 1

    def test_nonpositive_dimension(self):
        with pytest.raises(InputError):
            HermitianLieAlgebra(0, np.zeros((0, 0, 0)), np.zeros((0, 0, 0)))


class TestValidate:
    def test_abelian(self):
        rep = validate(HermitianLieAlgebra.zeros(3))
        assert rep.passed
        assert rep.antisymmetry_residual == rep.jacobi_residual == rep.pattern_residual == 0

    def test_sl2c(self):
        assert validate(fixture("sl2c").algebra).passed

    def test_broken_jacobi(self):
        rep = validate(_broken())
        assert not rep.passed
        assert rep.jacobi_residual == pytest.approx(1.0)


class TestJacobi:
    def test_examples(self):
        assert jacobi_residual(HermitianLieAlgebra.zeros(3)) == 0
        assert jacobi_residual(fixture("heisenberg").algebra) == 0
        assert jacobi_residual(_broken()) == pytest.approx(1.0)

    def test_matches_bracket_oracle_on_arbitrary_data(self, rng):
        for n in (1, 2, 3):
            alg = random_structure_constants(rng, n)
            assert jacobi_residual(alg) == pytest.approx(oracles.jacobi_brackets(alg.C, alg.D), rel=1e-12, abs=1e-12)

    def test_zero_on_valid_algebras(self, rng):
        for _ in range(20):
            alg = random_valid_algebra(rng)
            assert jacobi_residual(alg) <= 1e-12


class TestUnimodularity:
    @pytest.mark.parametrize("A, expected", [(-0.5, 0.0), (0.0, 1.0)])
    def test_almost_abelian(self, A, expected):
        alg = almost_abelian_build(AlmostAbelianParams(2, 1.0, [0], [[A]]))
        assert unimodularity_defect(alg) == pytest.approx(expected)

    def test_abelian(self):
        assert unimodularity_defect(HermitianLieAlgebra.zeros(2)) == 0


class TestFrames:
    def test_change_frame_rejects_non_unitary(self):
        with pytest.raises(InputError, match="unitary"):
            change_frame(HermitianLieAlgebra.zeros(2), np.array([[2, 0], [0, 1]]))

    def test_identity_frame(self, rng):
        alg = random_valid_algebra(rng, rotate=False)
        same = change_frame(alg, np.eye(alg.n))
        assert np.allclose(same.C, alg.C, atol=1e-15) and np.allclose(same.D, alg.D, atol=1e-15)

    def test_permutation_moves_kodaira_index(self):
        swapped = permute_frame(fixture("kodaira").algebra, [1, 0])
        assert swapped.D[1, 0, 1] == pytest.approx(-1)

    def test_composition(self, rng):
        alg = random_valid_algebra(rng, n=3, rotate=False)
        U, V = random_unitary(rng, 3), random_unitary(rng, 3)
        two_steps = change_frame(change_frame(alg, U), V)
        one_step = change_frame(alg, V @ U)
        assert np.allclose(two_steps.C, one_step.C, atol=1e-12)
        assert np.allclose(two_steps.D, one_step.D, atol=1e-12)


class TestRealPresentation:
    def test_abelian_rotation(self):
        J = np.array([[0.0, -1.0], [1.0, 0.0]])
        alg = from_real_presentation(RealPresentation(np.zeros((2, 2, 2)), J, np.eye(2)))
        assert alg.n == 1 and alg.max_abs() == 0

    def test_round_trip_preserves_invariants(self, rng):
        for _ in range(10):
            alg = random_valid_algebra(rng)
            back = from_real_presentation(to_real_presentation(alg))
            assert jacobi_residual(back) <= 1e-10
            for f in (lambda a: np.linalg.norm(chern_torsion(a)), lambda a: np.linalg.norm(chern_curvature(a))):
                assert f(back) == pytest.approx(f(alg), abs=1e-9)

    def test_expansion_satisfies_axioms(self, rng):
        rp = to_real_presentation(random_valid_algebra(rng))
        assert max(check_real_presentation(rp).values()) <= 1e-10

    def test_heisenberg_real(self):
        # real Heisenberg-type presentation of the complex Heisenberg group, brackets
        # [x2, x4] = x0, [x2, x5] = x1, [x3, x4] = x1, [x3, x5] = -x0
        f = np.zeros((6, 6, 6))
        for c, a, b, val in ((0, 2, 4, 1), (1, 2, 5, 1), (1, 3, 4, 1), (0, 3, 5, -1)):
            f[c, a, b], f[c, b, a] = val, -val
        J = np.zeros((6, 6))
        for i in range(3):
            J[2 * i + 1, 2 * i], J[2 * i, 2 * i + 1] = 1, -1
        alg = from_real_presentation(RealPresentation(f, J, np.eye(6)))
        assert jacobi_residual(alg) <= 1e-12
        assert np.max(np.abs(alg.D)) <= 1e-12
        assert np.max(np.abs(chern_curvature(alg))) <= 1e-12
        assert np.linalg.norm(chern_torsion(alg)) > 0.1
        assert classify(alg).is_nilpotent

    def test_gram_not_positive_definite(self):
        J = np.array([[0.0, -1.0], [1.0, 0.0]])
        with pytest.raises(InputError, match="positive definite"):
            from_real_presentation(RealPresentation(np.zeros((2, 2, 2)), J, -np.eye(2)))

    def test_bad_J(self):
        with pytest.raises(InputError, match="J\\^2"):
            from_real_presentation(RealPresentation(np.zeros((2, 2, 2)), np.eye(2), np.eye(2)))

    def test_non_integrable(self):
        # [x0, x2] = x2 with x1 = J x0 central breaks integrability
        f = np.zeros((4, 4, 4))
        f[2, 0, 2], f[2, 2, 0] = 1, -1
        J = np.zeros((4, 4))
        for i in range(2):
            J[2 * i + 1, 2 * i], J[2 * i, 2 * i + 1] = 1, -1
        res = check_real_presentation(RealPresentation(f, J, np.eye(4)))
        assert res["integrability"] > 0
        with pytest.raises(InputError, match="integrability"):
            from_real_presentation(RealPresentation(f, J, np.eye(4)))


class TestClassify:
    def test_abelian(self):
        f = classify(HermitianLieAlgebra.zeros(3))
        assert f.is_nilpotent and f.is_solvable and f.commutator_J_invariant and f.commutator_plus_J_nilpotent
        assert f.is_unimodular

    def test_sl2c(self):
        f = classify(fixture("sl2c").algebra)
        assert not f.is_nilpotent and not f.is_solvable

    def test_heisenberg(self):
        f = classify(fixture("heisenberg").algebra)
        assert f.is_nilpotent and f.commutator_plus_J_nilpotent
        assert f.lower_central_dims[-1] == 0

    def test_frame_invariance(self, rng):
        for _ in range(10):
            alg = random_valid_algebra(rng, rotate=False)
            rot = change_frame(alg, random_unitary(rng, alg.n))
            a, b = classify(alg), classify(rot)
            assert (a.is_nilpotent, a.is_solvable, a.commutator_J_invariant,
                    a.commutator_plus_J_nilpotent, a.is_unimodular) == (
                b.is_nilpotent, b.is_solvable, b.commutator_J_invariant,
                b.commutator_plus_J_nilpotent, b.is_unimodular)

    def test_frame_kind_enum(self):
        assert FrameKind("salamon") is FrameKind.SALAMON
