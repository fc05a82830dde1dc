#!/usr/bin/env python3
"""Tests for quivers, vectors and the Grothendieck-group maps (core.algebra)."""

import pytest

from tests.helpers import cyclic_quiver, quiver
from core.algebra import (
    DimVector, Quiver, ThetaVector, euler_form_mod, euler_pairing, euler_quadratic, iota,
    iota_inverse, load_quiver, parse_quiver, projective_dim_vectors, random_acyclic_quiver,
    random_dim_vector, root_type,
)
from core.errors import QuiverSyntaxError, ScopeError


# =====================================================================
#  Quiver structure
# =====================================================================

class TestQuiver:
    def test_bundled_names_from_file_stem(self):
        assert quiver("k3").name == "k3"
        assert len(quiver("k3").arrows) == 3

    def test_topological_order_follows_arrows(self):
        q = parse_quiver("vertices: 3 1 2\narrow a: 3 -> 1\narrow b: 1 -> 2\n")
        order = q.topological_order()
        assert [q.vertices[i] for i in order] == ["3", "1", "2"]

    def test_cycle_has_no_order(self):
        q = cyclic_quiver()
        assert q.topological_order() is None
        assert not q.acyclic

    def test_loop_is_cyclic(self):
        assert not quiver("loop").acyclic

    def test_require_path_algebra(self):
        with pytest.raises(ScopeError, match="requires path algebra"):
            quiver("loop").require_path_algebra("projectives")
        with pytest.raises(ScopeError, match="acyclic"):
            cyclic_quiver().require_path_algebra("projectives")
        quiver("k2").require_path_algebra("projectives")

    def test_dim_vector_from_mapping(self):
        q = quiver("a2")
        assert q.dim_vector({"2": 3}) == DimVector((0, 3))

    def test_dim_vector_wrong_length(self):
        with pytest.raises(QuiverSyntaxError, match="2 vertices"):
            quiver("k2").dim_vector((1, 2, 3))

    def test_negative_dimension_rejected(self):
        with pytest.raises(ValueError):
            DimVector((1, -1))

    def test_dict_round_trip(self):
        q = quiver("loop")
        assert Quiver.from_dict(q.to_dict()) == q

    def test_text_round_trip(self):
        q = quiver("k3")
        assert parse_quiver(q.to_text(), "k3") == q

    def test_load_quiver_from_path(self, tmp_path):
        path = tmp_path / "mine.q"
        path.write_text("vertices: x y\narrow f: x -> y\n", encoding="utf-8")
        q = load_quiver(path)
        assert q.name == "mine"
        assert q.src(q.arrow("f")) == 0 and q.tgt(q.arrow("f")) == 1


class TestVectors:
    def test_dim_vector_arithmetic(self):
        d = DimVector((1, 2))
        assert d + d == DimVector((2, 4))
        assert d.scale(3) == DimVector((3, 6))
        assert d.total == 3
        assert str(d) == "(1,2)"
        assert DimVector((0, 0)).is_zero()

    def test_theta_parts(self):
        t = ThetaVector((2, -1, 0))
        assert t.positive_part() == (2, 0, 0)
        assert t.negative_part() == (0, 1, 0)
        assert (-t).coeffs == (-2, 1, 0)
        assert t.scale(2) + t == ThetaVector((6, -3, 0))


# =====================================================================
#  Projectives, iota and Euler forms
# =====================================================================

class TestGrothendieck:
    def test_projectives_of_kronecker(self):
        assert projective_dim_vectors(quiver("k2")) == [DimVector((1, 2)), DimVector((0, 1))]

    def test_projectives_of_a2(self):
        assert projective_dim_vectors(quiver("a2")) == [DimVector((1, 1)), DimVector((0, 1))]

    def test_iota_kronecker(self):
        q = quiver("k2")
        assert iota(q, ThetaVector((1, -1))) == (1, 1)
        assert iota(q, ThetaVector((0, -1))) == (0, -1)

    def test_iota_inverse_kronecker(self):
        assert iota_inverse(quiver("k2"), (1, 1)) == ThetaVector((1, -1))
        assert iota_inverse(quiver("k3"), (1, 1)) == ThetaVector((1, -2))

    def test_iota_inverse_rejects_relations(self):
        with pytest.raises(ScopeError):
            iota_inverse(quiver("loop"), (1,))

    @pytest.mark.parametrize("seed", range(5))
    def test_iota_round_trip_random(self, seed):
        q = random_acyclic_quiver(5, 7, seed)
        for k in range(10):
            d = random_dim_vector(q, 4, seed * 100 + k, min_total=0)
            assert iota(q, iota_inverse(q, d)) == d.entries

    def test_euler_pairing_is_dual(self):
        q = quiver("a2")
        assert euler_pairing(q, ThetaVector((1, 0)), (1, 0)) == 1
        assert euler_pairing(q, ThetaVector((1, 0)), (0, 1)) == 0

    def test_euler_quadratic_kronecker(self):
        assert euler_quadratic(quiver("k2"), (1, 2)) == 1
        assert euler_quadratic(quiver("k2"), (1, 1)) == 0
        assert euler_quadratic(quiver("k3"), (1, 1)) == -1

    def test_euler_form_is_not_symmetric(self):
        q = quiver("a2")
        assert euler_form_mod(q, (1, 0), (0, 1)) == -1
        assert euler_form_mod(q, (0, 1), (1, 0)) == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_euler_form_matches_pairing(self, seed):
        q = random_acyclic_quiver(4, 6, seed)
        for k in range(10):
            d = random_dim_vector(q, 4, 1000 + seed * 50 + k, min_total=0)
            e = random_dim_vector(q, 4, 2000 + seed * 50 + k, min_total=0)
            assert euler_form_mod(q, d, e) == euler_pairing(q, iota_inverse(q, d), e)

    def test_root_type(self):
        assert root_type(quiver("k2"), (1, 2)) == "real"
        assert root_type(quiver("k2"), (1, 1)) == "tame"
        assert root_type(quiver("k3"), (1, 1)) == "wild"
        assert root_type(quiver("a2"), (2, 0)) == "not-schur"


class TestEulerBilinearity:
    @staticmethod
    def _triples(seed: int):
        q = random_acyclic_quiver(4, 6, seed)
        for k in range(10):
            a, b, c = (random_dim_vector(q, 4, 3000 + seed * 50 + 3 * k + j, min_total=0)
                       for j in range(3))
            yield q, a, b, c

    @pytest.mark.parametrize("seed", range(5))
    def test_pairing_is_additive_in_weight(self, seed):
        for q, a, b, c in self._triples(seed):
            ta, tb = iota_inverse(q, a), iota_inverse(q, b)
            assert euler_pairing(q, ta + tb, c) == euler_pairing(q, ta, c) + euler_pairing(q, tb, c)
            assert euler_pairing(q, ta.scale(3), c) == 3 * euler_pairing(q, ta, c)

    @pytest.mark.parametrize("seed", range(5))
    def test_pairing_is_additive_in_dimension(self, seed):
        for q, a, b, c in self._triples(seed):
            ta = iota_inverse(q, a)
            assert euler_pairing(q, ta, b + c) == euler_pairing(q, ta, b) + euler_pairing(q, ta, c)

    @pytest.mark.parametrize("seed", range(5))
    def test_form_is_bilinear(self, seed):
        for q, a, b, c in self._triples(seed):
            assert euler_form_mod(q, a + b, c) == euler_form_mod(q, a, c) + euler_form_mod(q, b, c)
            assert euler_form_mod(q, a, b + c) == euler_form_mod(q, a, b) + euler_form_mod(q, a, c)

    @pytest.mark.parametrize("seed", range(5))
    def test_symmetrisation_polarises_quadratic_form(self, seed):
        for q, a, b, _ in self._triples(seed):
            symmetric = euler_form_mod(q, a, b) + euler_form_mod(q, b, a)
            assert symmetric == euler_quadratic(q, a + b) - euler_quadratic(q, a) - euler_quadratic(q, b)
            assert euler_form_mod(q, a, a) + euler_form_mod(q, a, a) == 2 * euler_quadratic(q, a)


class TestRandomQuivers:
    def test_deterministic(self):
        assert random_acyclic_quiver(4, 5, 11) == random_acyclic_quiver(4, 5, 11)

    def test_arrows_go_forward(self):
        q = random_acyclic_quiver(5, 9, 3)
        assert q.acyclic
        assert all(q.src(a) < q.tgt(a) for a in q.arrows)

    def test_single_vertex_has_no_arrows(self):
        assert random_acyclic_quiver(1, 4, 0).arrows == ()

    def test_min_total_respected(self):
        q = quiver("k2")
        assert all(random_dim_vector(q, 1, s, min_total=1).total >= 1 for s in range(20))
