"""隨機起始設計的測試"""
import numpy as np
import pytest

from errors import DomainError, GridExhaustedError
from models import DomainSpec, Restriction
from doe.core import has_uniform_occupancy, is_latin_hypercube, level_occupancy, project, redundant_count
from doe.sampling import mixed_lh, random_design, random_free, random_lh, replicated_lh, round_levels


def test_random_free_distinct_points(rng):
    domain = DomainSpec(levels=(4, 5))
    design = random_free(domain, 20, rng)
    assert design.n == 20
    assert not design.has_duplicates()
    design.validate(domain)


def test_random_free_grid_exhausted(rng):
    with pytest.raises(GridExhaustedError):
        random_free(DomainSpec.square(3, 2), 10, rng)


def test_random_lh_invariants(rng):
    domain = DomainSpec.square(10, 2)
    for _ in range(1000):
        design = random_lh(domain, rng)
        assert design.lh_constrained
        assert is_latin_hypercube(design, domain)
        assert all(redundant_count(project(design, [d])) == 0 for d in range(domain.k))


def test_random_lh_needs_square_domain(rng):
    with pytest.raises(DomainError):
        random_lh(DomainSpec(levels=(7, 10)), rng)


def test_round_levels():
    assert round_levels(np.arange(7), 7, 10).tolist() == [0, 2, 3, 5, 6, 8, 9]
    assert round_levels(np.arange(5), 5, 5).tolist() == [0, 1, 2, 3, 4]


def test_mixed_lh_seven_by_ten(rng):
    domain = DomainSpec(levels=(7, 10))
    design = mixed_lh(domain, rng)
    assert design.n == 7
    assert sorted(design.points[:, 0].tolist()) == list(range(7))
    assert sorted(design.points[:, 1].tolist()) == [0, 2, 3, 5, 6, 8, 9]
    design.validate(domain)


def test_mixed_lh_more_points_than_levels(rng):
    domain = DomainSpec(levels=(13, 10))
    design = mixed_lh(domain, rng)
    assert design.n == 13
    assert not design.has_duplicates()
    assert redundant_count(project(design, [1])) == 3


def test_mixed_lh_bad_master(rng):
    with pytest.raises(DomainError):
        mixed_lh(DomainSpec(levels=(7, 10)), rng, master=2)


def test_replicated_lh(rng):
    domain = DomainSpec.square(10, 2)
    design = replicated_lh(domain, 2, rng)
    assert design.n == 20
    assert design.lh_constrained
    assert not design.has_duplicates()
    assert all(np.all(counts == 2) for counts in level_occupancy(design, domain))
    assert has_uniform_occupancy(design, domain)


def test_replicated_lh_errors(rng):
    with pytest.raises(DomainError):
        replicated_lh(DomainSpec(levels=(7, 10)), 2, rng)
    with pytest.raises(DomainError):
        replicated_lh(DomainSpec.square(10, 2), 0, rng)


def test_random_design_dispatch(rng):
    square = DomainSpec.square(10, 2)
    assert random_design(square, Restriction.FREE, rng).n == 10
    assert is_latin_hypercube(random_design(square, Restriction.LH, rng), square)
    assert random_design(square, Restriction.LH, rng, n=20).n == 20
    mixed = random_design(DomainSpec(levels=(7, 10)), Restriction.MIXED, rng)
    assert mixed.n == 7 and mixed.lh_constrained
    with pytest.raises(DomainError):
        random_design(square, Restriction.LH, rng, n=15)


def test_same_seed_same_design():
    domain = DomainSpec.square(10, 3)
    first = random_lh(domain, np.random.default_rng(99))
    second = random_lh(domain, np.random.default_rng(99))
    assert np.array_equal(first.points, second.points)
