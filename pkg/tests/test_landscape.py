"""Landscape 掃描的測試（21×21 網格，固定角點）"""
import numpy as np
import pytest

from errors import DomainError
from models import CriterionId, Design, DomainSpec, DoptConfig
from doe.criteria import landscape_scan
from studies.landscape import dopt_variants, scenarios

GRID = 21
LAST = GRID - 1


@pytest.fixture(scope="module")
def domain():
    return DomainSpec.square(GRID, 2)


@pytest.fixture(scope="module")
def fixed():
    return {name: Design(points=points) for name, points in scenarios(GRID).items()}


def test_scenarios():
    points = scenarios(5)
    assert points["three-corners"].tolist() == [[0, 0], [4, 0], [0, 4]]
    assert points["four-corners"].tolist() == [[0, 0], [4, 0], [0, 4], [4, 4]]


def test_scan_shape_and_occupied(domain, fixed):
    scan = landscape_scan(CriterionId.AE, fixed["three-corners"], domain)
    assert scan.values.shape == (GRID, GRID)
    assert scan.occupied.sum() == 3
    assert scan.values[0, 0] == np.inf
    assert np.isfinite(scan.values[LAST, LAST])
    assert scan.as_table().shape == (GRID, GRID)


def test_linear_dopt_prefers_duplicate_corner(domain, fixed):
    cfg = dopt_variants()["DOPT-linear"]
    scan = landscape_scan(CriterionId.DOPT, fixed["four-corners"], domain, cfg)
    assert scan.occupied[scan.argmin()]


def test_bayesian_dopt_avoids_occupied_corners(domain, fixed):
    cfg = DoptConfig(base_degree=1, bayes_terms=1, tau=1.0)
    scan = landscape_scan(CriterionId.DOPT, fixed["four-corners"], domain, cfg)
    assert not scan.occupied[scan.argmin()]


def test_ml2_minimum_inside_free_quadrant(domain, fixed):
    scan = landscape_scan(CriterionId.ML2, fixed["three-corners"], domain)
    x, y = scan.argmin()
    assert x > LAST // 2 and y > LAST // 2
    assert (x, y) != (LAST, LAST)


def test_cn_duplicate_corner_equals_free_corner(domain, fixed):
    scan = landscape_scan(CriterionId.CN, fixed["three-corners"], domain)
    assert scan.values[0, 0] == pytest.approx(scan.values[LAST, LAST], abs=1e-10)


def test_dopt_variants_are_valid():
    variants = dopt_variants(tau=0.5)
    assert set(variants) == {"DOPT-linear", "DOPT-cross", "DOPT-anisotropic", "DOPT-isotropic"}
    assert variants["DOPT-cross"].extra_terms == ((1, 1),)
    assert all(cfg.tau == 0.5 for cfg in variants.values())


def test_scan_dimension_mismatch(domain):
    with pytest.raises(DomainError):
        landscape_scan(CriterionId.AE, Design(points=[[0]]), domain)
