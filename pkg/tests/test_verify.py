from fractions import Fraction

import numpy as np
import pytest

from mixedcurv.algebra import HermitianLieAlgebra
from mixedcurv.curvature import MixedParams, mixed_value
from mixedcurv.errors import InputError
from mixedcurv.families import AlmostAbelianParams, almost_abelian_build, fixture
from mixedcurv.verify import (
    WALLACH_WITNESSES,
    MiddleTypeState,
    NonBalancedBTPFrameData,
    VerificationReport,
    middle_type_feasibility,
    middle_type_residuals,
    nonbalanced_btp_check,
    random_admissible_torsion,
    theorem1_hypotheses,
    verify_lemma_cd0,
    verify_theorem1,
    wallach_coefficient_system,
    wallach_nonconstancy,
)


def test_report_semantics():
    rep = VerificationReport("x")
    assert rep.passed
    rep.require("a", 0.5, 1.0)
    assert rep.passed
    rep.require("b", 2.0, 1.0)
    assert not rep.passed


class TestConstancyForcesFlatness:
    def test_heisenberg(self):
        rep = verify_theorem1(fixture("heisenberg").algebra, MixedParams(2, 3))
        assert rep.passed and not rep.informational
        assert rep.data["is_constant"] and rep.data["c"] == 0 and rep.data["R_max"] == 0

    def test_almost_abelian_not_constant(self):
        alg = almost_abelian_build(AlmostAbelianParams(2, 1.0, [0], [[-0.5]]))
        rep = verify_theorem1(alg, MixedParams(0, 1))
        assert "almost abelian" in theorem1_hypotheses(alg)
        assert rep.passed and not rep.data["is_constant"]

    def test_kodaira_beta_zero(self):
        rep = verify_theorem1(fixture("kodaira").algebra, MixedParams(1, 0))
        assert rep.passed and rep.data["is_constant"] and rep.data["c"] == 0
        assert "max |R|" not in rep.residuals
        assert any("beta = 0" in line for line in rep.lines)

    def test_non_unimodular_is_informational(self):
        alg = almost_abelian_build(AlmostAbelianParams(2, 1.0, [0], [[0]]))
        assert theorem1_hypotheses(alg) == []
        assert verify_theorem1(alg, MixedParams(0, 1)).informational

    def test_reports_a_counterexample(self, monkeypatch):
        from mixedcurv import verify
        from mixedcurv.curvature import ConstantMixedResult

        monkeypatch.setattr(verify, "constant_mixed_test", lambda *a, **k: ConstantMixedResult(True, 1.0, 0.0, 0.0))
        rep = verify.verify_theorem1(fixture("kodaira").algebra, MixedParams(0, 1))
        assert not rep.passed
        assert rep.residuals["|c|"][0] == 1.0 and rep.residuals["max |R|"][0] == 1.0


class TestLemmaCD0:
    def test_abelian(self):
        rep = verify_lemma_cd0(HermitianLieAlgebra.zeros(3), MixedParams(0.5, 1))
        assert rep.passed and not rep.informational

    def test_heisenberg(self):
        rep = verify_lemma_cd0(fixture("heisenberg").algebra, MixedParams(0, 1))
        assert rep.passed and not rep.informational

    def test_kodaira_informational(self):
        rep = verify_lemma_cd0(fixture("kodaira").algebra, MixedParams(0, 1))
        assert rep.informational
        assert any("not constant" in line for line in rep.lines)

    def test_beta_zero_informational(self):
        assert verify_lemma_cd0(HermitianLieAlgebra.zeros(2), MixedParams(1, 0)).informational


class TestWallach:
    def test_witness_values(self):
        fx = fixture("wallach")
        for a, b in [(1, 0), (0, 1), (0.3, -0.8)]:
            mp = MixedParams(a, b)
            vals = [mixed_value(fx.curvature, fx.ricci, mp, X) for _, X in WALLACH_WITNESSES]
            assert vals == pytest.approx([2 * a + 2 * b, 4 * a + 2 * b, 2 * a + b / 2, 3 * a + 1.75 * b], abs=1e-12)

    def test_holomorphic(self):
        rep = wallach_nonconstancy(MixedParams(0, 1))
        assert rep.passed and rep.data["spread"] >= 1.5

    def test_ricci(self):
        rep = wallach_nonconstancy(MixedParams(1, 0))
        assert rep.passed and rep.data["spread"] >= 2

    def test_borderline_ratio(self):
        rep = wallach_nonconstancy(MixedParams(-2, 1))
        assert rep.passed and not rep.data["coefficient_system_solvable"]

    def test_zero_params(self):
        with pytest.raises(InputError):
            wallach_nonconstancy(MixedParams(0, 0))

    def test_coefficient_system_exact(self):
        assert wallach_coefficient_system(Fraction(0), Fraction(0)) == (0, [0, 0, 0])
        for a, b in [(1, 0), (0, 1), (-2, 1), (Fraction(1, 3), Fraction(-2, 7))]:
            _, rest = wallach_coefficient_system(Fraction(a), Fraction(b))
            assert any(x != 0 for x in rest)


class TestMiddleType:
    def test_reference_state_infeasible(self):
        rep = middle_type_feasibility(MiddleTypeState(1.0, 0.0, 1.0, MixedParams(1, -2)))
        assert not rep.passed and not rep.data["feasible"]

    def test_ricci_flat_case(self):
        assert middle_type_feasibility(MiddleTypeState(0, 0, 1.0, MixedParams(1, 0), 0.0)).data["feasible"]
        assert middle_type_feasibility(MiddleTypeState(0, 5.0, 1.0, MixedParams(1, 0), 0.0)).data["feasible"]
        assert not middle_type_feasibility(MiddleTypeState(0.1, 0, 1.0, MixedParams(1, 0))).data["feasible"]

    def test_holomorphic_case(self):
        for x in (-1.0, 0.0, 2.0):
            assert not middle_type_feasibility(MiddleTypeState(x, 0, 1.0, MixedParams(0, 1))).data["feasible"]

    def test_bad_a1(self):
        for a1 in (0.0, -1.0, np.nan):
            with pytest.raises(InputError):
                MiddleTypeState(0, 0, a1, MixedParams(0, 1))

    def test_vectorized_matches_scalar(self, rng):
        x, y = rng.uniform(-3, 3, size=(2, 5))
        res = middle_type_residuals(0.2, -0.7, x, y, 1.5, 0.1)
        for k in range(5):
            rep = middle_type_feasibility(MiddleTypeState(x[k], y[k], 1.5, MixedParams(0.2, -0.7), 0.1))
            assert [v for v, _ in rep.residuals.values()] == list(res[k])


class TestNonBalanced:
    def test_surface_case(self):
        T = np.zeros((2, 2, 2))
        T[0, 0, 1], T[0, 1, 0] = 1, -1
        rep = nonbalanced_btp_check(NonBalancedBTPFrameData(2, 1.0, [1.0, 0.0], T))
        assert rep.passed and rep.data["identity"] == 0 and rep.data["c"] == 0

    def test_random(self, rng):
        rep = nonbalanced_btp_check(random_admissible_torsion(rng, 4), MixedParams(0.3, 0.4))
        assert rep.passed and rep.data["identity"] == 0.0

    def test_invariants(self, rng):
        fd = random_admissible_torsion(rng, 3)
        a = fd.a.copy()
        a[-1] = 0.5
        with pytest.raises(InputError, match="a_n"):
            NonBalancedBTPFrameData(3, fd.lam, a, fd.T)
        with pytest.raises(InputError, match="sum|equal lambda"):
            NonBalancedBTPFrameData(3, fd.lam + 1, fd.a, fd.T)
        T = fd.T.copy()
        T[-1, 0, 1], T[-1, 1, 0] = 1, -1
        with pytest.raises(InputError, match="T\\^n"):
            NonBalancedBTPFrameData(3, fd.lam, fd.a, T)
        with pytest.raises(InputError, match="positive"):
            NonBalancedBTPFrameData(3, -1.0, fd.a, fd.T)
