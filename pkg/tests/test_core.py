"""Domain / Design 與 doe.core 的測試"""
import numpy as np
import pytest

from errors import DegenerateDesignError, DomainError
from models import Design, DistanceScale, DomainSpec
from doe.core import (
    center_scale, code_symmetric, has_uniform_occupancy, is_latin_hypercube,
    level_occupancy, min_distance_sum, min_distances, normalize_unit,
    pairwise_sq_distances, project, ranks, redundant_count
)


# ==================== DomainSpec / Design ====================

def test_domain_parse_and_label():
    spec = DomainSpec.parse("7x10")
    assert spec.levels == (7, 10)
    assert spec.label == "7x10"
    assert spec.cell_count == 70
    assert not spec.is_square
    assert DomainSpec.parse("10X10").is_square


@pytest.mark.parametrize("text", ["7x", "axb", "1x10"])
def test_domain_parse_rejects_bad_input(text):
    with pytest.raises(DomainError):
        DomainSpec.parse(text)


def test_domain_values_must_increase():
    with pytest.raises(DomainError):
        DomainSpec(levels=(3,), values=((1.0, 1.0, 2.0),))


def test_full_grid_enumerates_every_cell():
    grid = DomainSpec(levels=(2, 3)).full_grid()
    assert grid.shape == (6, 2)
    assert grid.tolist()[:3] == [[0, 0], [0, 1], [0, 2]]


def test_physical_uses_values_or_unit_coordinates():
    spec = DomainSpec(levels=(3,), values=((1.5, 2.0, 4.0),))
    assert spec.physical(np.array([[2], [0]])).ravel().tolist() == [4.0, 1.5]
    assert DomainSpec(levels=(5,)).physical(np.array([[4]])).item() == 1.0


def test_design_points_are_read_only():
    design = Design(points=[[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        design.points[0, 0] = 5


def test_design_rejects_fractional_indices():
    with pytest.raises(DomainError):
        Design(points=[[0.5, 1.0]])


def test_design_validate():
    domain = DomainSpec.square(3, 2)
    Design(points=[[0, 0], [2, 2]]).validate(domain)
    with pytest.raises(DomainError):
        Design(points=[[0, 3]]).validate(domain)
    with pytest.raises(DomainError):
        Design(points=[[1, 1], [1, 1]]).validate(domain)
    Design(points=[[1, 1], [1, 1]], allow_duplicates=True).validate(domain)
    with pytest.raises(DomainError):
        Design(points=[[0, 0], [0, 1], [2, 2]], lh_constrained=True).validate(domain)


def test_design_to_dict_keeps_tags():
    design = Design(points=[[0, 1], [1, 0]], tags=[0, 1])
    restored = Design.from_dict(design.to_dict())
    assert restored.points.tolist() == [[0, 1], [1, 0]]
    assert restored.tags.tolist() == [0, 1]


# ==================== 正規化 ====================

def test_normalize_unit_and_symmetric_coding():
    domain = DomainSpec.square(10, 2)
    design = Design(points=[[9, 0]])
    assert normalize_unit(design, domain).tolist() == [[1.0, 0.0]]
    assert code_symmetric(design, domain).tolist() == [[1.0, -1.0]]


def test_normalize_unit_dimension_mismatch():
    with pytest.raises(DomainError):
        normalize_unit(Design(points=[[0, 0]]), DomainSpec(levels=(3,)))


def test_center_scale():
    scaled = center_scale(Design(points=[[0, 0], [1, 2], [2, 4]]))
    np.testing.assert_allclose(scaled, [[-1, -1], [0, 0], [1, 1]])
    np.testing.assert_allclose(scaled.sum(axis=0), 0.0)


def test_center_scale_constant_column():
    with pytest.raises(DegenerateDesignError):
        center_scale(Design(points=[[0, 1], [1, 1], [2, 1]]))


def test_ranks_use_mid_ranks():
    assert ranks([10, 20, 20, 30]).tolist() == [1.0, 2.5, 2.5, 4.0]
    with pytest.raises(DomainError):
        ranks([])


# ==================== 距離 ====================

def test_pairwise_distances_in_pair_order():
    d2 = pairwise_sq_distances(Design(points=[[0, 0], [1, 0], [0, 1]]))
    assert d2.tolist() == [1.0, 1.0, 2.0]


def test_pairwise_distances_need_two_points():
    with pytest.raises(DomainError):
        pairwise_sq_distances(Design(points=[[0, 0]]))


def test_min_distances(corners):
    assert min_distances(corners).tolist() == [1.0, 1.0, 1.0, 1.0]
    assert min_distance_sum(corners) == 4.0


def test_unit_scale_distances():
    domain = DomainSpec.square(5, 2)
    design = Design(points=[[0, 0], [4, 0]])
    assert min_distances(design, domain, DistanceScale.UNIT).tolist() == [1.0, 1.0]
    assert min_distances(design, domain, DistanceScale.INDEX).tolist() == [4.0, 4.0]
    with pytest.raises(DomainError):
        min_distances(design, None, DistanceScale.UNIT)


# ==================== 投影 / LH ====================

def test_project_counts_redundant_points(corners):
    projected = project(corners, [0])
    assert projected.k == 1
    assert projected.allow_duplicates
    assert redundant_count(projected) == 2
    assert redundant_count(corners) == 0


def test_project_rejects_bad_dims(corners):
    with pytest.raises(DomainError):
        project(corners, [])
    with pytest.raises(DomainError):
        project(corners, [2])


def test_latin_hypercube_checks():
    domain = DomainSpec.square(3, 2)
    lh = Design(points=[[0, 1], [1, 2], [2, 0]])
    assert is_latin_hypercube(lh, domain)
    assert not is_latin_hypercube(Design(points=[[0, 1], [1, 1], [2, 0]]), domain)
    assert [c.tolist() for c in level_occupancy(lh, domain)] == [[1, 1, 1], [1, 1, 1]]


def test_uniform_occupancy_of_doubled_lh():
    domain = DomainSpec.square(2, 2)
    design = Design(points=[[0, 0], [1, 1], [0, 1], [1, 0]])
    assert has_uniform_occupancy(design, domain)
    assert not is_latin_hypercube(design, domain)
