"""
Tests for the exact polytope-family transform, cycle detection and random search.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.errors import BudgetExhaustedError, InputError, UnsupportedModeError
from src.geometry import is_in_convex_hull
from src.transform import (
    Direction,
    Family,
    FamilyDocument,
    FamilyGenerator,
    RationalPolytope,
    TransformMode,
    build_C,
    critical_directions,
    detect_cycle,
    random_family_search,
    replay_period,
    sampled_directions,
    support_vertices,
    transform,
    vertex_absorption_holds,
)

SEGMENT = Family.from_point_lists([[(0,), (1,)]])
ENDPOINTS = Family.from_point_lists([[(0,)], [(1,)]])


def _translate(family: Family, shift) -> Family:
    return Family.from_members(
        RationalPolytope.from_points(tuple(c + s for c, s in zip(v, shift)) for v in m.vertices)
        for m in family.members
    )


class TestFamilyCanonicalForm:
    """Test canonical ordering and serialization of families."""

    def test_interior_points_dropped(self):
        """Test members keep only their extreme points."""
        family = Family.from_point_lists([[(0, 0), (2, 0), (1, 0), (0, 2), ("1/2", "1/2")]])
        assert family.members[0].vertices == ((0, 0), (0, 2), (2, 0))

    def test_order_independent(self):
        """Test member and vertex order do not change the canonical text."""
        a = Family.from_point_lists([[(0, 0), (1, 0)], [(3, 3)]])
        b = Family.from_point_lists([[(3, 3)], [(1, 0), (0, 0)]])
        assert a == b
        assert a.canonical_text() == b.canonical_text()
        assert a.digest() == b.digest()

    def test_duplicates_merge(self):
        """Test equal members collapse to one."""
        family = Family.from_point_lists([[(0, 0), (1, 1)], [(1, 1), (0, 0)]])
        assert len(family.members) == 1

    def test_document_round_trip(self, unit_square_family):
        """Test the JSON document rebuilds the same family."""
        document = unit_square_family.to_document()
        assert document.polytopes == [[["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]]
        assert document.to_family() == unit_square_family

    def test_document_dimension_mismatch(self):
        """Test a declared dimension must match the points."""
        with pytest.raises(InputError):
            FamilyDocument(dimension=3, polytopes=[[["0", "0"]]]).to_family()

    def test_mixed_dimensions(self):
        """Test members of different dimension are rejected."""
        with pytest.raises(InputError):
            Family.from_point_lists([[(0, 0)], [(1,)]])

    def test_empty_family(self):
        """Test a family needs at least one member."""
        with pytest.raises(InputError):
            Family.from_point_lists([])


class TestSupport:
    """Test support faces and C(g)."""

    def test_square_support(self, unit_square_family):
        """Test the support of the unit square in direction (1, 0) is its right edge."""
        square = unit_square_family.members[0]
        assert support_vertices(square, Direction.of((1, 0))) == [(1, 0), (1, 1)]

    def test_direction_is_primitive(self):
        """Test directions are stored as coprime integer vectors."""
        assert Direction.of(("2/3", "4/3")).vector == (1, 2)

    def test_build_C_union(self):
        """Test C(g) is the hull of the union of member supports."""
        family = Family.from_point_lists([[(0, 0), (0, 1)], [(2, 0), (2, 3)]])
        C = build_C(family, Direction.of((0, 1)))
        assert C.vertices == ((0, 1), (2, 3))

    def test_dimension_mismatch(self, unit_square_family):
        """Test a 3-D direction against a planar polytope."""
        with pytest.raises(InputError):
            support_vertices(unit_square_family.members[0], Direction.of((1, 0, 0)))


class TestTransform:
    """Test F in exact and sampled modes."""

    def test_segment(self):
        """Test F([0, 1]) is its two endpoints and F of those is the segment."""
        assert transform(SEGMENT) == ENDPOINTS
        assert transform(ENDPOINTS) == SEGMENT

    def test_single_point_fixed(self):
        """Test a one-point family is fixed."""
        point = Family.from_point_lists([[(3, -2)]])
        assert transform(point) == point

    def test_square(self, unit_square_family):
        """Test F of the unit square is its four vertices and four edges."""
        result = transform(unit_square_family)
        sizes = sorted(len(m.vertices) for m in result.members)
        assert sizes == [1, 1, 1, 1, 2, 2, 2, 2]

    def test_vertex_absorption(self, rng):
        """Test every vertex of F(Omega) is a vertex of Omega."""
        generator = FamilyGenerator(max_members=3, max_vertices=5, coord_bound=4)
        for _ in range(20):
            family = generator.sample(rng)
            assert vertex_absorption_holds(family, transform(family))

    def test_translation_commutes(self, rng):
        """Test F(Omega + t) == F(Omega) + t."""
        generator = FamilyGenerator(max_members=3, max_vertices=5, coord_bound=4)
        shift = (Fraction(7, 3), Fraction(-5, 2))
        for _ in range(10):
            family = generator.sample(rng)
            assert transform(_translate(family, shift)) == _translate(transform(family), shift)

    def test_critical_directions_symmetric(self, unit_square_family):
        """Test the ray set is closed under negation."""
        vectors = {d.vector for d in critical_directions(unit_square_family)}
        assert all((-x, -y) in vectors for x, y in vectors)

    def test_sampled_subset_of_exact(self, rng):
        """Test sampled mode only finds values that exact mode finds."""
        generator = FamilyGenerator(max_members=2, max_vertices=5, coord_bound=3)
        for _ in range(5):
            family = generator.sample(rng)
            exact = set(transform(family).members)
            sampled = set(transform(family, mode=TransformMode.SAMPLED, samples=200, seed=1).members)
            assert sampled <= exact

    def test_exact_rejects_three_dimensions(self):
        """Test exact mode raises for 3-D families."""
        cube = Family.from_point_lists([[(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]])
        with pytest.raises(UnsupportedModeError):
            transform(cube)

    def test_sampled_three_dimensions(self):
        """Test sampled mode on the 3-cube finds its vertices."""
        cube = Family.from_point_lists([[(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]])
        result = transform(cube, mode=TransformMode.SAMPLED, samples=100, seed=0)
        points = [m for m in result.members if len(m.vertices) == 1]
        assert len(points) == 8
        assert vertex_absorption_holds(cube, result)

    def test_sampled_directions_deterministic(self):
        """Test the same seed gives the same directions."""
        assert sampled_directions(3, 50, seed=4) == sampled_directions(3, 50, seed=4)
        assert len(sampled_directions(3, 50, seed=4)) == 56

    def test_sampled_one_dimension_terminates(self):
        """Test sampled mode on the line uses its two rays and matches exact mode."""
        directions = sampled_directions(1, 2000, seed=0)
        assert sorted(d.vector for d in directions) == [(-1,), (1,)]
        assert transform(SEGMENT, mode=TransformMode.SAMPLED, samples=2000) == ENDPOINTS

    def test_sampled_cycle_one_dimension(self):
        """Test cycle detection in sampled mode finishes on the segment."""
        report = detect_cycle(SEGMENT, mode=TransformMode.SAMPLED, samples=50)
        assert (report.preperiod, report.period) == (0, 2)
        assert not report.complete


class TestCriticalDirections:
    """Test the enumerated directions reach every value of C."""

    @staticmethod
    def _generic_values(family: Family) -> set:
        values = set()
        for g in critical_directions(family):
            if all(len(support_vertices(m, g)) == 1 for m in family.members):
                values.add(build_C(family, g))
        return values

    @staticmethod
    def _random_values(family: Family, directions: np.ndarray) -> set:
        choices = []
        for member in family.members:
            vertices = np.array([[float(c) for c in v] for v in member.vertices])
            choices.append(np.argmax(vertices @ directions.T, axis=0))
        combos = np.unique(np.stack(choices, axis=1), axis=0)
        return {
            RationalPolytope.from_points(m.vertices[i] for m, i in zip(family.members, combo))
            for combo in combos
        }

    @pytest.mark.slow
    def test_matches_million_random_directions(self):
        """Test C over the arcs between critical rays equals C over random unit directions."""
        rng = np.random.default_rng(8)
        angles = rng.uniform(0.0, 2.0 * np.pi, size=1_000_000)
        directions = np.column_stack([np.cos(angles), np.sin(angles)])
        generator = FamilyGenerator(max_members=4, max_vertices=6, coord_bound=5)
        for _ in range(25):
            family = generator.sample(rng)
            assert self._generic_values(family) == self._random_values(family, directions)

    def test_rays_add_only_larger_values(self, rng):
        """Test every value of C on a critical ray contains a generic neighbour's value."""
        generator = FamilyGenerator(max_members=3, max_vertices=5, coord_bound=4)
        for _ in range(10):
            family = generator.sample(rng)
            generic = self._generic_values(family)
            for g in critical_directions(family):
                value = build_C(family, g)
                assert any(
                    all(is_in_convex_hull(p, list(value.vertices)) for p in v.vertices) for v in generic
                )


class TestDetectCycle:
    """Test orbit iteration with exact repeat detection."""

    def test_segment_period_two(self):
        """Test [0, 1] has preperiod 0 and period 2."""
        report = detect_cycle(SEGMENT)
        assert (report.preperiod, report.period) == (0, 2)
        assert report.summary() == "preperiod=0 period=2"
        assert report.witness[0] == report.witness[1]
        assert report.complete and report.absorption_held

    def test_point_period_one(self):
        """Test a point is a fixed point of the orbit."""
        report = detect_cycle(Family.from_point_lists([[(1, 1)]]))
        assert (report.preperiod, report.period) == (0, 1)

    def test_square_reaches_cycle(self, unit_square_family):
        """Test the unit square orbit closes and replays."""
        report = detect_cycle(unit_square_family, max_steps=100)
        assert report.period >= 1
        assert len(report.family_sequence) == report.preperiod + report.period + 1
        assert report.family_sequence[report.preperiod] == report.family_sequence[-1]
        assert replay_period(report)

    def test_replay_rejects_tampered_period(self):
        """Test replay detects a wrong period."""
        report = detect_cycle(SEGMENT)
        tampered = report.model_copy(update={"period": 4})
        assert not replay_period(tampered)

    def test_budget_exhausted(self):
        """Test the partial orbit is attached when no repeat is found."""
        with pytest.raises(BudgetExhaustedError) as excinfo:
            detect_cycle(SEGMENT, max_steps=1)
        assert len(excinfo.value.partial) == 2
        assert excinfo.value.exit_code == 2

    def test_invalid_budget(self):
        """Test max_steps must be at least 1."""
        with pytest.raises(InputError):
            detect_cycle(SEGMENT, max_steps=0)


class TestRandomSearch:
    """Test the seeded random family search."""

    def test_points_have_period_one(self):
        """Test single-point families are all fixed."""
        params = FamilyGenerator(max_members=1, max_vertices=1)
        stats = random_family_search(params, trials=100, seed=3)
        assert stats.period_histogram == {1: 100}
        assert stats.long_cycles == []
        assert stats.unverified == 0

    def test_one_dimensional_periods(self):
        """Test 1-D families never exceed period 2."""
        params = FamilyGenerator(dimension=1, max_members=4, max_vertices=3, coord_bound=6)
        stats = random_family_search(params, trials=50, max_steps=200, seed=0)
        assert stats.budget_exhausted == 0
        assert set(stats.period_histogram) <= {1, 2}
        assert sum(stats.period_histogram.values()) == 50

    def test_deterministic_across_jobs(self):
        """Test the histogram depends only on the seed."""
        params = FamilyGenerator(max_members=2, max_vertices=4, coord_bound=3)
        serial = random_family_search(params, trials=8, max_steps=200, seed=11)
        parallel = random_family_search(params, trials=8, max_steps=200, seed=11, jobs=2)
        assert serial.period_histogram == parallel.period_histogram
        assert serial.preperiod_histogram == parallel.preperiod_histogram

    def test_exact_mode_dimension_limit(self):
        """Test exact search in dimension 3 is rejected."""
        with pytest.raises(InputError):
            random_family_search(FamilyGenerator(dimension=3), trials=1)

    def test_generator_ranges(self):
        """Test min above max is rejected."""
        with pytest.raises(ValueError):
            FamilyGenerator(min_members=3, max_members=2)
