"""分析函數與桁架模型的測試"""
import math

import numpy as np
import pytest

from errors import DomainError, MechanismError
from benchmarks.analytical import (
    analytical_reference_table, analytical_suite, get_model, load_fixtures, write_fixtures
)
from benchmarks.truss import (
    TrussModel, assemble_stiffness, get_truss, resolve_truss, solve_displacements, ten_bar,
    truss_solve, truss_solve_batch, twenty_five_bar
)
from models import DomainSpec

DOMAIN = DomainSpec.square(10, 2)


def single_bar(vertical_support: bool = True) -> TrussModel:
    """L = 100 in，尾端受 1000 lb 軸向拉力"""
    return TrussModel(
        model_id="single-bar",
        nodes=np.array([[0.0, 0.0], [100.0, 0.0]]),
        elements=np.array([[0, 1]]),
        supports=np.array([[True, True], [False, vertical_support]]),
        loads=np.array([[0.0, 0.0], [1000.0, 0.0]]),
        groups=np.array([0]),
        area_levels=((1.0, 2.0),),
    )


# ==================== 分析函數 ====================

def test_suite_has_fifteen_models():
    suite = analytical_suite()
    assert len(suite) == 15
    assert [m.index for m in suite] == list(range(1, 16))
    assert len({m.model_id for m in suite}) == 15


def test_models_are_monotone_on_the_grid():
    grid = DOMAIN.full_grid()
    for model in analytical_suite(DOMAIN):
        z = model.evaluate_indices(grid).reshape(10, 10)
        for axis, direction in enumerate(model.directions):
            assert np.all(direction * np.diff(z, axis=axis) > 0), model.model_id


def test_reference_correlations():
    table = analytical_reference_table(DOMAIN)
    assert table["linear"][0, 0] == pytest.approx(table["linear"][0, 1], abs=1e-12)
    rho1, rho2 = table["x1-dominant"][0]
    assert rho1 > 0.9 and rho2 >= 0
    assert table["decreasing-x2"][0, 1] < 0


def test_fixtures_round_trip(tmp_path):
    path = write_fixtures(tmp_path, DOMAIN)
    assert path.name == "analytical_10x10.json"
    loaded = load_fixtures(tmp_path, DOMAIN)
    for model_id, reference in analytical_reference_table(DOMAIN).items():
        np.testing.assert_allclose(loaded[model_id], reference, atol=1e-12)


def test_missing_fixtures_are_computed(tmp_path):
    assert set(load_fixtures(tmp_path / "none", DOMAIN)) == {m.model_id for m in analytical_suite()}


def test_analytical_suite_is_two_dimensional():
    with pytest.raises(DomainError):
        analytical_suite(DomainSpec.square(4, 3))
    with pytest.raises(KeyError):
        get_model("unknown")


# ==================== 桁架 ====================

def test_single_bar_closed_form():
    response = truss_solve(single_bar(), [1.0])
    assert response.d == pytest.approx(0.01, rel=1e-10)
    assert response.s == pytest.approx(1000.0, rel=1e-10)
    assert response.w == pytest.approx(10.0)


def test_single_bar_mechanism():
    with pytest.raises(MechanismError):
        truss_solve(single_bar(vertical_support=False), [1.0])


def test_ten_bar_weight():
    model = ten_bar()
    area = 5.0
    expected = 0.1 * area * (6 * 360 + 4 * 360 * math.sqrt(2))
    assert truss_solve(model, [area] * 10).w == pytest.approx(expected, rel=1e-9)


def test_benchmark_domains():
    assert ten_bar().domain.levels == (42,) * 10
    assert twenty_five_bar().domain.levels == (30,) * 8
    assert ten_bar().domain.names[0] == "A1"
    with pytest.raises(KeyError):
        get_truss("three-bar")


@pytest.mark.parametrize("factory", [ten_bar, twenty_five_bar])
def test_equilibrium_residual(factory, rng):
    model = factory()
    free = model.free_dofs
    forces = model.loads.ravel()[free]
    for _ in range(5):
        areas = [rng.choice(levels) for levels in model.area_levels]
        k = assemble_stiffness(model, areas)[np.ix_(free, free)]
        u = solve_displacements(model, areas)[free]
        assert np.linalg.norm(k @ u - forces) <= 1e-8 * np.linalg.norm(forces)


@pytest.mark.parametrize("factory", [ten_bar, twenty_five_bar])
def test_doubling_areas(factory):
    model = factory()
    areas = np.array([levels[len(levels) // 2] for levels in model.area_levels])
    single = truss_solve(model, areas)
    double = truss_solve(model, 2 * areas)
    assert double.d == pytest.approx(single.d / 2, rel=1e-10)
    assert double.w == pytest.approx(2 * single.w, rel=1e-12)
    assert double.s == pytest.approx(single.s / 2, rel=1e-9)


def test_batch_matches_single_solve(rng):
    model = twenty_five_bar()
    areas = np.array([[rng.choice(levels) for levels in model.area_levels] for _ in range(4)])
    batch = truss_solve_batch(model, areas)
    for row, area in zip(batch, areas):
        np.testing.assert_allclose(row, truss_solve(model, area).as_array(), rtol=1e-9)


def test_truss_rejects_bad_areas():
    with pytest.raises(DomainError):
        truss_solve(ten_bar(), [1.0] * 9)
    with pytest.raises(DomainError):
        truss_solve(ten_bar(), [0.0] * 10)


@pytest.mark.parametrize("factory", [ten_bar, twenty_five_bar])
def test_truss_json_round_trip(factory, tmp_path, rng):
    model = factory()
    path = model.save(tmp_path / f"{model.model_id}.json")
    loaded = resolve_truss(str(path))
    assert loaded.model_id == model.model_id
    assert loaded.domain.levels == model.domain.levels
    for _ in range(3):
        areas = [rng.choice(levels) for levels in model.area_levels]
        assert truss_solve(loaded, areas).as_array() == pytest.approx(
            truss_solve(model, areas).as_array(), rel=1e-12
        )


def test_resolve_truss(tmp_path):
    assert resolve_truss("ten-bar").domain.levels == (42,) * 10
    with pytest.raises(KeyError):
        resolve_truss("three-bar")
    with pytest.raises(DomainError):
        resolve_truss(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text('{"model_id": "x"}', encoding="utf-8")
    with pytest.raises(DomainError):
        resolve_truss(str(broken))
