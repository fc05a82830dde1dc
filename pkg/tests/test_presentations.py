#!/usr/bin/env python3
"""Tests for projectives, presentations and the F-bar-theta oracle (core.presentations)."""

import pytest

from tests.helpers import F2, F3, build, kronecker, module, quiver
from core.algebra import DimVector, ThetaVector, iota, iota_inverse
from core.config import EXHAUSTIVE_POINT_LIMIT
from core.decompose import find_brick
from core.errors import OracleInfeasibleError, ScopeError
from core.homology import is_brick
from core.modrep import random_module
from core.presentations import (
    _gaussian_binomial_total, cokernel, exhaustive_feasible, fbar_hypothesis, fbar_theta_check,
    fei_generic_perp_search, in_fbar_theta_oracle, is_injective, projective_module,
    projective_sum, sample_presentation, stable_subspace_tuples, submodule_count_bound, subspaces,
    theta_identity, theta_value,
)


# =====================================================================
#  Projectives
# =====================================================================

class TestProjectives:
    def test_kronecker_projective_matches_fixture(self):
        P1 = projective_module(quiver("k2"), "1")
        assert P1 == module("k2_p1")
        assert P1.name == "P1"

    def test_sink_projective_is_simple(self):
        assert projective_module(quiver("a2"), "2").dim == DimVector((0, 1))

    def test_projective_sum_dimension(self):
        P = projective_sum(quiver("k3"), (1, 2))
        assert P.dim == DimVector((1, 5))

    def test_empty_projective_sum_is_zero(self):
        assert projective_sum(quiver("k2"), (0, 0)).dim.is_zero()

    def test_needs_path_algebra(self):
        with pytest.raises(ScopeError):
            projective_module(quiver("loop"), "1")


# =====================================================================
#  Presentations
# =====================================================================

class TestPresentations:
    def test_kronecker_presentation(self):
        theta = ThetaVector((1, -1))
        pres = sample_presentation(quiver("k2"), theta, seed=0)
        assert pres.hom_space_dim == 2
        assert is_injective(pres)
        C = cokernel(pres)
        assert C.dim.entries == iota(quiver("k2"), theta)
        assert is_brick(C)

    def test_theta_identity_on_injective_presentation(self):
        theta = ThetaVector((1, -1))
        pres = sample_presentation(quiver("k2"), theta, seed=3)
        ident = theta_identity(pres, kronecker(1))
        assert ident.injective
        assert ident.theta_value == 0
        assert ident.holds

    def test_theta_identity_undetermined_without_injectivity(self):
        pres = sample_presentation(quiver("k2"), ThetaVector((0, -1)), seed=0)
        assert not is_injective(pres)
        assert theta_identity(pres, kronecker(1)).holds is None

    def test_theta_value(self):
        assert theta_value(quiver("k2"), ThetaVector((1, -1)), module("k2_p1")) == -1


# =====================================================================
#  Submodule enumeration
# =====================================================================

class TestSubspaces:
    def test_subspace_counts(self):
        assert len(list(subspaces(2, 2))) == 5
        assert len(list(subspaces(3, 2))) == 16
        assert _gaussian_binomial_total(2, 3) == 6
        assert _gaussian_binomial_total(3, 2) == 16

    def test_submodules_of_regular_brick(self):
        tuples = list(stable_subspace_tuples(kronecker(1, F3)))
        assert [tuple(U.shape[1] for U in us) for us in tuples] == [(0, 0), (0, 1), (1, 1)]

    def test_subspaces_of_one_dimension(self):
        assert len(list(subspaces(3, 2, 1))) == 7
        assert all(U.shape == (3, 2) for U in subspaces(3, 2, 2))

    def test_enumeration_is_lazy(self):
        m = build(quiver("a1"), (8,), F3)
        first = next(stable_subspace_tuples(m))
        assert first[0].shape == (8, 0)

    def test_submodules_of_projective(self):
        # P1 over F_3: any subspace at the sink, or everything
        m = build(quiver("k2"), (1, 2), F3, a=[[1], [0]], b=[[0], [1]])
        dims = [tuple(U.shape[1] for U in us) for us in stable_subspace_tuples(m)]
        assert dims == [(0, 0)] + [(0, 1)] * 4 + [(0, 2), (1, 2)]


# =====================================================================
#  F-bar-theta oracle
# =====================================================================

class TestFbarOracle:
    def test_member_by_exhaustion(self):
        verdict = fbar_theta_check(kronecker(1, F3), ThetaVector((1, -1)))
        assert verdict.member
        assert verdict.rule == "exhaustive"
        assert max(verdict.values) == 0

    def test_violation_names_submodule(self):
        verdict = fbar_theta_check(kronecker(1, F3), ThetaVector((-1, 1)))
        assert not verdict.member
        assert verdict.violating == DimVector((0, 1))

    def test_brick_rule(self):
        verdict = fbar_theta_check(kronecker(1), ThetaVector((1, -1)), mode="brick")
        assert verdict.member
        assert verdict.rule == "brick"

    def test_exhaustive_and_brick_rule_agree(self):
        for lam in range(3):
            m = kronecker(lam, F2)
            theta = ThetaVector((1, -1))
            if fbar_theta_check(m, theta, mode="exhaustive").member:
                assert in_fbar_theta_oracle(m, theta)

    def test_large_subspace_count_is_refused(self):
        m = build(quiver("a1"), (8,), F3)
        assert submodule_count_bound(m) > EXHAUSTIVE_POINT_LIMIT
        assert not exhaustive_feasible(m)
        with pytest.raises(OracleInfeasibleError, match="oracle infeasible"):
            fbar_theta_check(m, ThetaVector((1,)), mode="exhaustive")
        with pytest.raises(OracleInfeasibleError):
            fbar_theta_check(m, ThetaVector((1,)))

    def test_large_brick_falls_back_to_brick_rule(self):
        q = quiver("k3")
        outcome = find_brick(q, (4, 4), seed=0, trials=20, field=F3)
        assert outcome.found
        B = outcome.result
        assert not exhaustive_feasible(B)
        verdict = fbar_theta_check(B, iota_inverse(q, B.dim))
        assert verdict.member
        assert verdict.rule == "brick"

    def test_infeasible(self):
        big = random_module(quiver("k3"), (5, 5), 0)
        with pytest.raises(OracleInfeasibleError, match="oracle infeasible"):
            fbar_theta_check(big, ThetaVector((1, 0)))
        assert fbar_hypothesis(big, ThetaVector((1, 0))) == "assumed"


# =====================================================================
#  Generic perpendicular search
# =====================================================================

class TestFeiSearch:
    def test_kronecker_brick(self):
        r1 = kronecker(1)
        result = fei_generic_perp_search(quiver("k2"), ThetaVector((1, -1)), r1,
                                         l_max=3, trials=10, seed=0)
        assert result.found
        assert result.l == 1
        assert result.hypothesis == "verified"
        assert result.cokernel.dim == DimVector((1, 1))
        assert result.attempts[1] == result.trial + 1

    def test_wild_brick(self):
        b = module("k3_r111")
        result = fei_generic_perp_search(quiver("k3"), ThetaVector((1, -2)), b,
                                         l_max=2, trials=10, seed=1)
        assert result.found
        assert result.l == 1

    def test_violated_hypothesis_exhausts(self):
        s1 = module("a2_s1")
        result = fei_generic_perp_search(quiver("a2"), ThetaVector((1, -1)), s1,
                                         l_max=2, trials=4, seed=0)
        assert not result.found
        assert result.hypothesis == "violated"
        assert result.attempts == {1: 4, 2: 4}

    def test_worker_count_does_not_change_result(self):
        args = (quiver("k3"), ThetaVector((1, -2)), module("k3_r111"))
        one = fei_generic_perp_search(*args, l_max=2, trials=6, seed=5, workers=1)
        three = fei_generic_perp_search(*args, l_max=2, trials=6, seed=5, workers=3)
        assert (one.l, one.trial) == (three.l, three.trial)
        assert one.cokernel == three.cokernel
