#!/usr/bin/env python3
"""Tests for module decomposition, canonical decomposition and Schur roots (core.decompose)."""

from dataclasses import replace

import numpy as np
import pytest

from tests.helpers import F7, kronecker, module, quiver
from core.algebra import DimVector
from core.decompose import (
    brick_component_report, canonical_decomposition, classify_schur_root, decompose_indec,
    exhaustive_brick_search, find_brick, verify_decomposition,
)
from core.errors import BudgetError, OracleInfeasibleError, ScopeError
from core.homology import is_brick
from core.modrep import direct_sum, direct_sum_all, random_basis_change, zero_module


def dims(*vectors):
    return tuple(DimVector(v) for v in vectors)


# =====================================================================
#  Decomposition of a module
# =====================================================================

class TestDecomposeIndec:
    def test_brick_is_one_exact_block(self):
        dec = decompose_indec(kronecker(1))
        assert len(dec.blocks) == 1
        assert dec.certificates[0].exact
        assert dec.certificates[0].end_dim == 1

    def test_two_regular_modules(self):
        m = random_basis_change(direct_sum(kronecker(1, F7), kronecker(2, F7)), 3)
        dec = decompose_indec(m, seed=1)
        assert dec.dim_multiset() == dims((1, 1), (1, 1))
        assert len(dec.summands) == 2
        assert verify_decomposition(m, dec)

    def test_repeated_summand_is_grouped(self):
        m = random_basis_change(direct_sum(kronecker(4), kronecker(4)), 5)
        dec = decompose_indec(m, seed=2)
        assert len(dec.blocks) == 2
        assert [c for _, c in dec.summands] == [2]
        assert verify_decomposition(m, dec)

    def test_three_summands_of_different_dimensions(self):
        parts = [module("a2_s1"), module("a2_s2"), module("a2_p1")]
        m = random_basis_change(direct_sum_all(parts), 7)
        dec = decompose_indec(m, seed=3)
        assert dec.dim_multiset() == dims((0, 1), (1, 0), (1, 1))
        assert verify_decomposition(m, dec)

    def test_local_non_brick_is_not_split(self):
        dec = decompose_indec(module("loop_n"), trials=5)
        assert len(dec.blocks) == 1
        cert = dec.certificates[0]
        assert not cert.exact
        assert cert.end_dim == 2
        assert cert.non_splitting_trials == 5

    def test_zero_module(self):
        z = zero_module(quiver("k2"))
        dec = decompose_indec(z)
        assert dec.blocks == ()
        assert verify_decomposition(z, dec)

    def test_blocks_named_after_module(self):
        dec = decompose_indec(direct_sum(kronecker(1), kronecker(2)).renamed("M"))
        assert [b.name for b in dec.blocks] == ["M[0]", "M[1]"]

    def test_wrong_basis_fails_verification(self):
        m = random_basis_change(direct_sum(kronecker(1), kronecker(2)), 11)
        dec = decompose_indec(m)
        bad = replace(dec, basis=tuple(np.eye(2, dtype=np.int64) for _ in range(2)))
        assert not verify_decomposition(m, bad)

    def test_budget_must_be_positive(self):
        with pytest.raises(BudgetError):
            decompose_indec(kronecker(1), trials=0)


# =====================================================================
#  Canonical decomposition
# =====================================================================

class TestCanonicalDecomposition:
    @pytest.mark.parametrize("quiver_name, d, expected", [
        ("k2", (1, 1), [(1, 1)]),
        ("k2", (2, 2), [(1, 1), (1, 1)]),
        ("k2", (1, 2), [(1, 2)]),
        ("k2", (2, 4), [(1, 2), (1, 2)]),
        ("a2", (2, 1), [(1, 0), (1, 1)]),
        ("k3", (2, 2), [(2, 2)]),
    ])
    def test_known_decompositions(self, quiver_name, d, expected):
        result = canonical_decomposition(quiver(quiver_name), d, seed=0, samples=5)
        assert result.summands == dims(*expected)
        assert result.agreement == 1.0
        assert not result.disagreement

    def test_scaling_of_tame_root(self):
        result = canonical_decomposition(quiver("k2"), (3, 3), seed=0, samples=3)
        assert result.summands == dims((1, 1), (1, 1), (1, 1))

    def test_needs_path_algebra(self):
        with pytest.raises(ScopeError):
            canonical_decomposition(quiver("loop"), (1,))

    def test_workers_do_not_change_result(self):
        a = canonical_decomposition(quiver("k3"), (1, 2), seed=3, samples=4, workers=1)
        b = canonical_decomposition(quiver("k3"), (1, 2), seed=3, samples=4, workers=3)
        assert a == b


# =====================================================================
#  Schur roots
# =====================================================================

class TestClassifySchurRoot:
    def test_real(self):
        c = classify_schur_root(quiver("k2"), (1, 2), trials=10, samples=3)
        assert c.verdict == "real"
        assert c.q_value == 1
        assert c.first_brick_trial == 0
        assert c.mismatches == ()

    def test_tame(self):
        c = classify_schur_root(quiver("k2"), (1, 1), trials=10, samples=3)
        assert c.verdict == "tame"
        assert c.expected_doubled == dims((1, 1), (1, 1))

    def test_wild(self):
        c = classify_schur_root(quiver("k3"), (1, 1), trials=10, samples=3)
        assert c.verdict == "wild"
        assert c.q_value == -1
        assert c.doubled.summands == dims((2, 2))

    def test_not_schur(self):
        c = classify_schur_root(quiver("k2"), (2, 2), trials=10, samples=3)
        assert c.verdict == "probably-not-schur"
        assert not c.is_schur
        assert c.first_brick_trial is None

    @pytest.mark.slow
    def test_not_schur_agrees_with_exhaustive_search(self):
        c = classify_schur_root(quiver("k2"), (2, 2), trials=10, samples=3,
                                exhaustive_primes=(2, 3))
        assert [e.found for e in c.exhaustive] == [False, False]
        assert c.mismatches == ()

    def test_find_brick_reports_index(self):
        outcome = find_brick(quiver("k3"), (1, 1), seed=0, trials=5)
        assert outcome.found
        assert is_brick(outcome.result)


class TestExhaustiveSearch:
    def test_finds_brick(self):
        r = exhaustive_brick_search(quiver("k2"), (1, 1), 2)
        assert r.found
        assert r.example is not None and is_brick(r.example)

    def test_no_brick_in_non_schur_dimension(self):
        r = exhaustive_brick_search(quiver("k2"), (2, 2), 2)
        assert not r.found
        assert r.points == 2**8

    def test_too_many_points(self):
        with pytest.raises(OracleInfeasibleError):
            exhaustive_brick_search(quiver("k3"), (2, 2), 3)


# =====================================================================
#  Brick components
# =====================================================================

class TestBrickComponentReport:
    def test_real_root_has_unique_open_brick(self):
        r = brick_component_report(quiver("k2"), (1, 2), samples=4)
        assert r.verdict == "unique open brick"
        assert r.orbit_codim_one
        assert r.ext1_self == 0

    def test_tame_root_has_a_family(self):
        r = brick_component_report(quiver("k2"), (1, 1), samples=4)
        assert r.verdict == "infinitely many non-open bricks"
        assert r.pairwise_isomorphic is False

    def test_no_bricks(self):
        r = brick_component_report(quiver("k2"), (2, 2), samples=3)
        assert r.verdict == "no bricks sampled"
        assert r.brick_count == 0
