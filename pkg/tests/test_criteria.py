"""品質準則的測試"""
import math
from itertools import combinations

import numpy as np
import pytest
from scipy.stats import kendalltau, spearmanr

from errors import DegenerateDesignError, DomainError
from models import CriterionId, Design, DomainSpec, DoptConfig
from doe.criteria import (
    auto_degree, build_regression_matrix, eval_ae, eval_cn, eval_dopt, eval_emm,
    eval_krcc, eval_ml2, eval_pmcc, eval_srcc, evaluate, kendall_tau, list_criteria,
    pearson, polynomial_exponents, safe_evaluate, spearman
)


# ==================== 相關係數 ====================

def test_spearman_hand_case():
    assert spearman([1, 2, 3], [3, 1, 2]) == -0.5


def test_kendall_hand_case():
    assert kendall_tau([1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3, abs=1e-15)


def test_estimators_match_reference_implementations():
    rng = np.random.default_rng(7)
    for _ in range(100):
        x, y = rng.random(20), rng.random(20)
        assert spearman(x, y) == pytest.approx(spearmanr(x, y)[0], abs=1e-12)
        assert kendall_tau(x, y) == pytest.approx(kendalltau(x, y)[0], abs=1e-12)
        assert pearson(x, y) == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-12)


def test_spearman_with_ties_uses_mid_ranks():
    x = [1, 2, 2, 3]
    y = [1, 2, 3, 4]
    assert spearman(x, y) == pytest.approx(spearmanr(x, y)[0], abs=1e-12)


def test_correlation_length_checks():
    with pytest.raises(DomainError):
        spearman([1, 2], [1, 2, 3])
    with pytest.raises(DomainError):
        kendall_tau([1], [1])


# ==================== 單一準則 ====================

def test_square_corner_values(square2, corners):
    assert evaluate(CriterionId.AE, corners, square2) == 5.0
    assert evaluate(CriterionId.EMM, corners, square2) == -1.0
    assert evaluate(CriterionId.PMCC, corners, square2) == 0.0
    assert evaluate(CriterionId.CN, corners, square2) == pytest.approx(1.0)


def test_ae_duplicates(square2):
    design = Design(points=[[0, 0], [0, 0], [1, 1]], allow_duplicates=True)
    assert eval_ae(design, square2) == math.inf
    with pytest.raises(DegenerateDesignError):
        eval_ae(design, square2, strict=True)


def test_emm_duplicates_score_zero(square2):
    design = Design(points=[[0, 0], [0, 0]], allow_duplicates=True)
    assert eval_emm(design, square2) == 0.0


def test_ml2_single_point():
    # (4/3) − 3 + 2
    assert eval_ml2(Design(points=[[0]]), DomainSpec(levels=(2,))) == pytest.approx(1 / 3)


def test_krcc_identical_and_reversed_columns():
    assert eval_krcc(Design(points=[[0, 0], [1, 1], [2, 2]])) == pytest.approx(1.0)
    assert eval_krcc(Design(points=[[0, 2], [1, 1], [2, 0]])) == pytest.approx(1.0)


def test_rank_criteria_ignore_monotone_transforms():
    base = np.array([[0, 3], [1, 1], [2, 0], [3, 2], [4, 4]])
    cubed = np.column_stack([base[:, 0] ** 3, base[:, 1]])
    assert eval_srcc(Design(points=cubed)) == pytest.approx(eval_srcc(Design(points=base)), abs=1e-12)
    assert eval_krcc(Design(points=cubed)) == pytest.approx(eval_krcc(Design(points=base)), abs=1e-12)


def test_pmcc_constant_column():
    with pytest.raises(DegenerateDesignError):
        eval_pmcc(Design(points=[[0, 1], [1, 1], [2, 1]]))
    assert safe_evaluate(CriterionId.PMCC, Design(points=[[0, 1], [1, 1], [2, 1]])) == math.inf


def test_cn_singular_design():
    domain = DomainSpec.square(3, 2)
    line = Design(points=[[0, 0], [1, 1], [2, 2]])
    with pytest.raises(DegenerateDesignError):
        eval_cn(line, domain)
    assert safe_evaluate(CriterionId.CN, line, domain) == math.inf


def test_cn_column_coding(corners):
    assert eval_cn(corners, coding="column") == pytest.approx(1.0)
    with pytest.raises(DomainError):
        eval_cn(corners, coding="other")


# ==================== D-optimality ====================

def test_polynomial_exponents_order():
    assert polynomial_exponents(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]


@pytest.mark.parametrize("n, degree", [(2, 0), (3, 1), (5, 1), (6, 2), (10, 3)])
def test_auto_degree(n, degree):
    assert auto_degree(2, n) == degree


def test_dopt_linear_corners(square2, corners):
    cfg = DoptConfig(base_degree=1, bayes_terms=0)
    assert eval_dopt(corners, cfg, square2) == pytest.approx(-64.0)


def test_regression_matrix_augmented_columns(square2, corners):
    z, augmented = build_regression_matrix(corners, DoptConfig(base_degree=1, bayes_terms=1), square2)
    assert z.shape == (4, 5)
    assert augmented.tolist() == [3, 4]
    np.testing.assert_allclose(z[:, 3], 1.0)


def test_dopt_basis_larger_than_design(square2):
    with pytest.raises(DomainError):
        eval_dopt(Design(points=[[0, 0], [1, 1]]), DoptConfig(base_degree=1), square2)


def test_dopt_config_validation():
    with pytest.raises(DomainError):
        DoptConfig(tau=0.0)
    with pytest.raises(DomainError):
        DoptConfig(coding="raw")


# ==================== 分派 / 性質 ====================

def test_every_criterion_registered():
    assert list_criteria() == list(CriterionId)


@pytest.mark.parametrize("cid", list(CriterionId))
def test_row_permutation_invariance(cid, rng):
    domain = DomainSpec.square(6, 3)
    design = Design(points=np.column_stack([rng.permutation(6) for _ in range(3)]))
    shuffled = Design(points=design.points[rng.permutation(6)])
    assert safe_evaluate(cid, shuffled, domain) == pytest.approx(safe_evaluate(cid, design, domain), rel=1e-9)


def test_correlation_criteria_bounds(rng):
    domain = DomainSpec.square(8, 3)
    upper = math.sqrt(3)
    for _ in range(20):
        design = Design(points=np.column_stack([rng.permutation(8) for _ in range(3)]))
        for cid in (CriterionId.PMCC, CriterionId.SRCC, CriterionId.KRCC):
            assert 0.0 <= evaluate(cid, design, domain) <= upper + 1e-12
        assert safe_evaluate(CriterionId.CN, design, domain) >= 1.0 - 1e-12


def test_emm_scales_linearly(rng):
    design = Design(points=np.column_stack([rng.permutation(5) for _ in range(2)]))
    scaled = Design(points=design.points * 3)
    assert eval_emm(scaled) == pytest.approx(3 * eval_emm(design))


def test_enumerated_optimum_is_reproduced():
    domain = DomainSpec.square(4, 2)
    cells = domain.full_grid()
    designs = [Design(points=cells[list(combo)]) for combo in combinations(range(16), 4)]
    assert len(designs) == 1820
    for cid in list(CriterionId):
        values = [safe_evaluate(cid, d, domain) for d in designs]
        best = int(np.argmin(values))
        assert evaluate(cid, designs[best], domain) == values[best]
        if cid is CriterionId.EMM:
            assert values[best] == -3.0
