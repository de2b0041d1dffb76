"""SRCC 敏感度分析的測試"""
import numpy as np
import pytest

from errors import DomainError
from models import Design, DomainSpec, SensitivityReport
from benchmarks.analytical import analytical_suite, get_model
from doe.sensitivity import (
    correlation_error, estimate_report, full_design_reference, monte_carlo_reference,
    index_dtype, param_response_srcc, response_srcc, sample_levels
)

DOMAIN = DomainSpec.square(10, 2)


def test_identity_and_reversed_response():
    x = np.arange(8, dtype=float).reshape(-1, 1)
    assert param_response_srcc(x, x.ravel()).tolist() == [1.0]
    assert param_response_srcc(x, -x.ravel()).tolist() == [-1.0]


def test_hand_case():
    assert param_response_srcc(np.array([[1], [2], [3]]), np.array([3, 1, 2])).tolist() == [-0.5]


def test_monotone_transform_invariance(rng):
    x = rng.random((30, 3))
    z = x[:, 0] + 2 * x[:, 1]
    base = param_response_srcc(x, z)
    transformed = param_response_srcc(np.column_stack([np.exp(x[:, 0]), x[:, 1], x[:, 2] ** 3]), z ** 3)
    np.testing.assert_allclose(transformed, base, atol=1e-12)


def test_constant_response_gives_zero():
    x = np.arange(6).reshape(-1, 1)
    assert param_response_srcc(x, np.ones(6)).tolist() == [0.0]


def test_param_response_errors():
    with pytest.raises(DomainError):
        param_response_srcc(np.array([[1], [2]]), np.array([1, 2]))
    with pytest.raises(DomainError):
        param_response_srcc(np.array([[1], [2], [3]]), np.array([1, 2]))


def test_response_srcc_shape(rng):
    x = rng.random((10, 2))
    assert response_srcc(x, np.column_stack([x[:, 0], x[:, 1], x.sum(axis=1)])).shape == (3, 2)


def test_correlation_error_examples():
    assert correlation_error([0.5, 0.5], [0.5, 0.5]) == 0.0
    assert correlation_error([0.1, 0.9], [0.3, 0.5]) == pytest.approx(0.3)
    assert correlation_error([-1.0], [1.0]) == 2.0
    with pytest.raises(DomainError):
        correlation_error([0.1], [0.1, 0.2])


def test_correlation_error_triangle_bound(rng):
    for _ in range(50):
        a, b, c = rng.uniform(-1, 1, (3, 4))
        assert correlation_error(a, c) <= correlation_error(a, b) + correlation_error(b, c) + 1e-15


def test_full_design_reference_linear_model():
    reference = full_design_reference(DOMAIN, get_model("linear"))
    assert reference.shape == (1, 2)
    assert reference[0, 0] == pytest.approx(reference[0, 1], abs=1e-12)


def test_full_design_reference_grid_limit():
    with pytest.raises(DomainError):
        full_design_reference(DOMAIN, get_model("linear"), max_cells=50)


def test_monte_carlo_converges_to_full_reference():
    model = get_model("exp-sum")
    samples = 20_000
    mc = monte_carlo_reference(DOMAIN, model, samples, np.random.default_rng(5))
    full = full_design_reference(DOMAIN, model)
    assert np.max(np.abs(mc - full)) <= 3 / np.sqrt(samples)


@pytest.mark.parametrize("levels, itemsize", [((42,) * 10, 1), ((30,) * 8, 1), ((128, 5), 2), ((40_000, 3), 4)])
def test_sampled_levels_use_small_integers(levels, itemsize, rng):
    domain = DomainSpec(levels=levels)
    assert index_dtype(domain).itemsize == itemsize
    points = sample_levels(domain, 5000, rng)
    assert points.dtype == index_dtype(domain)
    assert points.shape == (5000, len(levels))
    assert points.min() >= 0
    assert np.all(points.max(axis=0) < np.asarray(levels))


def test_srcc_ignores_integer_width(rng):
    x = rng.integers(0, 42, size=(500, 3)).astype(np.int8)
    z = x[:, 0] * 2.0 - x[:, 2] + rng.normal(size=500)
    np.testing.assert_allclose(param_response_srcc(x, z), param_response_srcc(x.astype(float), z), rtol=1e-12)


def test_monte_carlo_needs_enough_samples(rng):
    with pytest.raises(DomainError):
        monte_carlo_reference(DOMAIN, get_model("linear"), 999, rng)


def test_full_design_has_zero_error():
    full = Design(points=DOMAIN.full_grid())
    for model in analytical_suite(DOMAIN):
        report = estimate_report(full, DOMAIN, model, full_design_reference(DOMAIN, model))
        assert report.mean_error == pytest.approx(0.0, abs=1e-12)


def test_report_rows_and_shape_check():
    report = SensitivityReport(
        estimates=[[0.1, 0.9], [0.0, 0.0]],
        reference=[[0.3, 0.5], [0.0, 1.0]],
        response_names=["w", "d"],
        design_id="AE#0",
        model_id="demo",
        n=10,
    )
    assert report.errors.tolist() == pytest.approx([0.3, 0.5])
    assert report.mean_error == pytest.approx(0.4)
    rows = report.to_rows(criterion="AE")
    assert [row["response"] for row in rows] == ["w", "d"]
    assert rows[0]["criterion"] == "AE"
    with pytest.raises(DomainError):
        SensitivityReport(
            estimates=[[0.1]], reference=[[0.1, 0.2]], response_names=["z"],
            design_id="x", model_id="y", n=1,
        )
