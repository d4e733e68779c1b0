"""
Tests for verlindepy.lattice.weights module.
"""

from math import comb

import pytest

from verlindepy.core.validation import ValidationError
from verlindepy.lattice.weights import (
    DominantWeight,
    LevelContext,
    OrbitPoint,
    canonicalize,
    center_action,
    center_orbits_on_Pk_prime,
    describe_orbits,
    enumerate_Pk,
    enumerate_Tk,
    enumerate_Tk_prime,
    fixed_point_weight,
    gaps,
    is_root_lattice,
    orbit_to_weight,
    rotate_weight,
    weight_to_orbit,
)


@pytest.fixture
def rank_two_level_four():
    return LevelContext(2, 4)


class TestLevelContext:
    """Tests for LevelContext."""

    def test_derived_values(self, rank_two_level_four):
        ctx = rank_two_level_four
        assert ctx.N == 12
        assert ctx.M == 6
        assert ctx.target_class == 1
        assert ctx.count == 5

    def test_target_class_odd_rank(self):
        assert LevelContext(3, 3).target_class == 0

    def test_order_mismatch(self):
        with pytest.raises(ValidationError):
            LevelContext(2, 4, N=10)

    def test_invalid_inputs(self):
        with pytest.raises(ValidationError):
            LevelContext(1, 4)
        with pytest.raises(ValidationError):
            LevelContext(2, -1)


class TestWeightsAndOrbits:
    """Tests for enumeration and the weight/orbit correspondence."""

    def test_enumeration_order(self):
        marks = [w.marks for w in enumerate_Pk(LevelContext(3, 2))]
        assert marks == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]

    @pytest.mark.parametrize("r,k", [(2, 0), (2, 7), (3, 4), (4, 3), (5, 2)])
    def test_counts(self, r, k):
        ctx = LevelContext(r, k)
        points = enumerate_Tk(ctx)
        assert len(points) == comb(k + r - 1, r - 1)
        assert len(set(points)) == len(points)

    def test_gaps(self):
        assert gaps(DominantWeight((0,))) == (1, 0)
        assert gaps(DominantWeight((0, 0))) == (2, 1, 0)
        assert gaps(DominantWeight((2, 1))) == (5, 2, 0)

    def test_weight_to_orbit_rank_two(self, rank_two_level_four):
        p = weight_to_orbit(rank_two_level_four, DominantWeight((0,)))
        assert p.exponents == (1, -1)
        assert p.center_class == 1
        q = weight_to_orbit(rank_two_level_four, DominantWeight((1,)))
        assert q.exponents == (2, -2)
        assert q.center_class == 0

    @pytest.mark.parametrize("r,k", [(2, 5), (3, 4), (4, 4)])
    def test_round_trip(self, r, k):
        ctx = LevelContext(r, k)
        for w in enumerate_Pk(ctx):
            assert orbit_to_weight(ctx, weight_to_orbit(ctx, w)) == w

    def test_weight_checks(self, rank_two_level_four):
        with pytest.raises(ValidationError):
            weight_to_orbit(rank_two_level_four, DominantWeight((5,)))
        with pytest.raises(ValidationError):
            weight_to_orbit(rank_two_level_four, DominantWeight((1, 1)))
        with pytest.raises(ValidationError):
            DominantWeight((-1, 2))

    @pytest.mark.parametrize("marks", [(1.5,), (1, "2"), (True, 0)])
    def test_marks_must_be_integers(self, marks):
        with pytest.raises(ValidationError):
            DominantWeight(marks)

    def test_marks_from_list(self):
        assert DominantWeight([2, 1]).marks == (2, 1)

    def test_root_lattice_matches_prime_orbits(self):
        ctx = LevelContext(3, 4)
        prime = set(enumerate_Tk_prime(ctx))
        for w in enumerate_Pk(ctx):
            assert is_root_lattice(ctx, w) == (weight_to_orbit(ctx, w) in prime)

    def test_prime_orbits_rank_two(self, rank_two_level_four):
        assert len(enumerate_Tk_prime(rank_two_level_four)) == 3

    def test_describe_orbits(self):
        rows = describe_orbits(LevelContext(2, 1))
        assert len(rows) == 2
        assert rows[0]["marks"] == [0]
        assert rows[0]["in_root_lattice"] is True
        assert rows[1]["in_root_lattice"] is False


class TestOrbitPoint:
    """Tests for canonical exponent tuples."""

    def test_canonicalize(self):
        assert canonicalize((11, 1), 12) == (1, -1)
        assert canonicalize((6, 0), 12) == (6, 0)
        with pytest.raises(ValidationError):
            canonicalize((1, 13), 12)

    def test_rejects_non_canonical(self):
        with pytest.raises(ValidationError):
            OrbitPoint((-1, 1), 12)

    def test_rejects_nonzero_sum(self):
        with pytest.raises(ValidationError):
            OrbitPoint((3, 1), 12)

    def test_rejects_mixed_classes(self):
        with pytest.raises(ValidationError):
            OrbitPoint((5, 0, -5), 15)

    def test_center_class_must_match(self):
        with pytest.raises(ValidationError):
            OrbitPoint((1, -1), 12, center_class=0)

    def test_from_exponents(self):
        p = OrbitPoint.from_exponents((11, 1), 12)
        assert p.exponents == (1, -1)
        assert p.to_dict() == {"exponents": [1, -1], "N": 12, "center_class": 1}


class TestCenterAction:
    """Tests for the centre action and its orbits."""

    def test_action_matches_rotation(self, rank_two_level_four):
        ctx = rank_two_level_four
        moved = center_action(ctx, weight_to_orbit(ctx, DominantWeight((0,))))
        assert moved.exponents == (5, -5)
        assert moved == weight_to_orbit(ctx, DominantWeight((4,)))

    @pytest.mark.parametrize("r,k", [(2, 4), (3, 5), (4, 2)])
    def test_rotation_is_centre_action(self, r, k):
        ctx = LevelContext(r, k)
        for w in enumerate_Pk(ctx):
            assert center_action(ctx, weight_to_orbit(ctx, w)) == weight_to_orbit(
                ctx, rotate_weight(ctx, w)
            )

    def test_rotation_order(self):
        ctx = LevelContext(3, 4)
        for w in enumerate_Pk(ctx):
            v = w
            for _ in range(3):
                v = rotate_weight(ctx, v)
            assert v == w

    def test_rotate_weight(self):
        assert rotate_weight(LevelContext(3, 3), DominantWeight((1, 0))).marks == (0, 2)

    def test_fixed_point(self):
        ctx = LevelContext(3, 3)
        fixed = fixed_point_weight(ctx)
        assert fixed.marks == (1, 1)
        assert rotate_weight(ctx, fixed) == fixed
        with pytest.raises(ValidationError):
            fixed_point_weight(LevelContext(3, 4))

    def test_orbits_rank_two(self, rank_two_level_four):
        orbits = center_orbits_on_Pk_prime(rank_two_level_four)
        assert orbits.fixed.marks == (2,)
        assert [tuple(w.marks for w in o) for o in orbits.orbits] == [((0,), (4,))]
        assert orbits.size == 3

    def test_orbits_rank_three(self):
        orbits = center_orbits_on_Pk_prime(LevelContext(3, 3))
        assert orbits.fixed.marks == (1, 1)
        assert len(orbits.orbits) == 1
        assert set(w.marks for w in orbits.orbits[0]) == {(0, 0), (0, 3), (3, 0)}
        assert orbits.size == 4

    def test_orbits_need_descent(self):
        with pytest.raises(ValidationError):
            center_orbits_on_Pk_prime(LevelContext(2, 2))
        with pytest.raises(ValidationError):
            center_orbits_on_Pk_prime(LevelContext(4, 8))
