"""序列擴充的測試"""
import numpy as np
import pytest

from errors import DomainError
from models import CriterionId, Design, DomainSpec, ExtensionPlan, ExtensionStrategy
from doe.core import has_uniform_occupancy, level_occupancy
from doe.criteria import safe_evaluate
from doe.sampling import random_free, random_lh
from doe.sequential import _random_free_batch, design_at_stage, extend, extend_free, extend_lh

DOMAIN = DomainSpec.square(10, 2)


def test_extend_free_keeps_seed_rows(rng, quick_sa):
    seed = random_free(DOMAIN, 10, rng)
    plan = ExtensionPlan(batch_size=10, iterations=1)
    design = extend_free(seed, DOMAIN, plan, CriterionId.AE, quick_sa, rng)
    assert design.n == 20
    assert np.array_equal(design.points[:10], seed.points)
    assert design.tags.tolist() == [0] * 10 + [1] * 10
    assert not design.has_duplicates()


def test_extend_zero_iterations_returns_seed(rng, quick_sa):
    seed = random_free(DOMAIN, 10, rng)
    design = extend_free(seed, DOMAIN, ExtensionPlan(batch_size=10, iterations=0), CriterionId.AE, quick_sa, rng)
    assert np.array_equal(design.points, seed.points)


def test_extend_free_not_worse_than_random_batch(quick_sa):
    plan = ExtensionPlan(batch_size=10, iterations=1)
    for trial in range(5):
        seed = random_free(DOMAIN, 10, np.random.default_rng(trial))
        occupied = {tuple(row) for row in seed.points.tolist()}
        batch = _random_free_batch(occupied, DOMAIN, 10, np.random.default_rng(100 + trial))
        baseline = Design(points=np.vstack([seed.points, batch]))
        design = extend_free(seed, DOMAIN, plan, CriterionId.ML2, quick_sa, np.random.default_rng(100 + trial))
        assert safe_evaluate(CriterionId.ML2, design, DOMAIN) <= safe_evaluate(CriterionId.ML2, baseline, DOMAIN)


def test_extend_lh_occupancy(rng, quick_sa):
    seed = random_lh(DOMAIN, rng)
    plan = ExtensionPlan(batch_size=10, iterations=2, strategy=ExtensionStrategy.LH_PRESERVING)
    design = extend(seed, DOMAIN, plan, CriterionId.EMM, quick_sa, rng)
    assert design.n == 30
    assert design.lh_constrained
    assert not design.has_duplicates()
    assert all(np.all(counts == 3) for counts in level_occupancy(design, DOMAIN))
    assert np.array_equal(design.points[:10], seed.points)

    first_stage = design_at_stage(design, 1)
    assert first_stage.n == 20
    assert has_uniform_occupancy(first_stage, DOMAIN)


def test_extend_lh_errors(rng, quick_sa):
    plan = ExtensionPlan(batch_size=10, iterations=1, strategy=ExtensionStrategy.LH_PRESERVING)
    with pytest.raises(DomainError):
        extend_lh(Design(points=[[0, 0]]), DomainSpec(levels=(7, 10)), plan, CriterionId.AE, quick_sa, rng)
    with pytest.raises(DomainError):
        extend_lh(
            random_lh(DOMAIN, rng), DOMAIN, ExtensionPlan(batch_size=5, iterations=1),
            CriterionId.AE, quick_sa, rng,
        )
    uneven = Design(points=[[i, 0] for i in range(10)])
    with pytest.raises(DomainError):
        extend_lh(uneven, DOMAIN, plan, CriterionId.AE, quick_sa, rng)


def test_extend_rejects_duplicate_seed(rng, quick_sa):
    seed = Design(points=[[0, 0], [0, 0]], allow_duplicates=True)
    with pytest.raises(DomainError):
        extend_free(seed, DOMAIN, ExtensionPlan(batch_size=2, iterations=1), CriterionId.AE, quick_sa, rng)


def test_design_at_stage():
    design = Design(points=[[0, 0], [1, 1], [2, 2], [3, 3]], tags=[0, 0, 1, 2])
    assert design_at_stage(design, 0).n == 2
    assert design_at_stage(design, 1).points.tolist() == [[0, 0], [1, 1], [2, 2]]
    with pytest.raises(DomainError):
        design_at_stage(Design(points=[[0, 0]]), 0)


def test_extension_plan_validation():
    with pytest.raises(DomainError):
        ExtensionPlan(batch_size=0, iterations=1)
    with pytest.raises(DomainError):
        ExtensionPlan(batch_size=1, iterations=-1)
