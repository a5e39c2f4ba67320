import numpy as np
import pytest

from ladscore.data import bundled
from ladscore.errors import DataError, DegenerateDataError
from ladscore.models import Dataset, LadFit
from ladscore.services.lad import brute_force_lad, fit_lad, max_abs_residual_index, zero_tolerance


def _fit_with_residuals(residuals, basis):
    n = len(residuals)
    data = Dataset(x=np.arange(float(n)), y=np.zeros(n))
    fit = LadFit(
        beta=np.zeros(2),
        residuals=np.array(residuals, dtype=float),
        basis=tuple(basis),
        objective=float(np.sum(np.abs(residuals))),
        degenerate=False,
        labels=data.labels,
        zero_tol=1e-8,
    )
    return fit, data


def test_three_points_best_pair(line_points):
    # pairs give F = 0.5 (1,2), 0.25 (1,3), 0.5 (2,3)
    fit = fit_lad(line_points)
    assert sorted(fit.basis) == [1, 3]
    assert fit.objective == pytest.approx(0.25, abs=1e-12)
    np.testing.assert_allclose(fit.beta, [0.0, 1.25], atol=1e-12)
    assert not fit.degenerate


def test_collinear_points_are_degenerate():
    data = Dataset(x=[0.0, 1.0, 2.0], y=[0.0, 1.0, 2.0])
    fit = fit_lad(data)
    assert fit.objective == pytest.approx(0.0, abs=1e-12)
    assert fit.degenerate
    with pytest.raises(DegenerateDataError):
        max_abs_residual_index(fit, data)


def test_two_observations_rejected():
    with pytest.raises(DataError):
        Dataset(x=[0.0, 1.0], y=[0.0, 1.0])


def test_brute_force_enumerates_all_lines():
    data = Dataset(x=[0.0, 1.0, 2.0, 3.0], y=[0.0, 1.0, 2.5, 2.9])
    # lines through (1,2), (1,4) and (2,4) all reach F = 0.6; the smallest index set wins
    oracle = brute_force_lad(data)
    assert oracle.basis == (1, 2)
    assert oracle.objective == pytest.approx(0.6, abs=1e-12)

    fit = fit_lad(data)
    assert fit.objective == pytest.approx(0.6, rel=1e-9)
    assert fit.degenerate


def test_brute_force_on_three_points(line_points):
    oracle = brute_force_lad(line_points)
    assert oracle.basis == (1, 3)
    assert oracle.objective == pytest.approx(0.25, abs=1e-12)
    np.testing.assert_allclose(oracle.beta, [0.0, 1.25], atol=1e-12)


def test_brute_force_guard():
    data = Dataset(x=np.arange(16.0), y=np.sin(np.arange(16.0)))
    with pytest.raises(DataError):
        brute_force_lad(data)


def test_objective_is_sum_of_absolute_residuals(make_random):
    data = make_random(7, 11, 2)
    fit = fit_lad(data)
    assert fit.objective == pytest.approx(np.sum(np.abs(data.y - data.design() @ fit.beta)))
    basis_rows = [data.position(k) for k in fit.basis]
    assert np.all(np.abs(fit.residuals[basis_rows]) <= fit.zero_tol)


@pytest.mark.parametrize("seed", range(200))
def test_matches_brute_force(make_random, seed):
    rng = np.random.default_rng(10_000 + seed)
    p = int(rng.integers(1, 3))
    n = int(rng.integers(p + 2, 13))
    data = make_random(seed, n, p)

    fit = fit_lad(data)
    oracle = brute_force_lad(data)
    assert fit.objective == pytest.approx(oracle.objective, rel=1e-9, abs=1e-12)
    if not fit.degenerate:
        assert sorted(fit.basis) == sorted(oracle.basis)
        np.testing.assert_allclose(fit.beta, oracle.beta, rtol=1e-7, atol=1e-9)


def test_generic_fit_interpolates_p_plus_one(make_random):
    for seed in range(20):
        data = make_random(seed, 25, 2)
        fit = fit_lad(data)
        assert not fit.degenerate
        assert len(fit.basis) == data.p + 1
        assert int(np.sum(np.abs(fit.residuals) <= fit.zero_tol)) == data.p + 1


def test_deterministic(make_random):
    data = make_random(3, 30, 3)
    first, second = fit_lad(data), fit_lad(data)
    assert first.basis == second.basis
    assert np.array_equal(first.beta, second.beta)


def test_adding_a_hyperplane_keeps_basis(make_random):
    data = make_random(11, 20, 2)
    shifted = Dataset(x=data.x, y=data.y + 3.0 - 2.0 * data.x[:, 0] + 0.5 * data.x[:, 1])
    fit, moved = fit_lad(data), fit_lad(shifted)
    assert sorted(fit.basis) == sorted(moved.basis)
    np.testing.assert_allclose(moved.beta, fit.beta + [3.0, -2.0, 0.5], atol=1e-9)


@pytest.mark.parametrize("seed", range(50))
def test_huge_response_at_interior_point_stays_out_of_basis(make_random, seed):
    base = make_random(seed, 12, 1)
    xs = np.sort(base.x[:, 0])
    x_new = 0.5 * (xs[5] + xs[6])
    sign = 1.0 if seed % 2 == 0 else -1.0
    y_new = sign * 1e6 * np.max(np.abs(base.y))
    data = Dataset(x=np.append(base.x[:, 0], x_new), y=np.append(base.y, y_new))

    assert 13 not in fit_lad(data).basis


@pytest.mark.parametrize("seed", range(50))
def test_far_predictor_enters_basis(make_random, seed):
    base = make_random(seed, 12, 1)
    x_new = 1e6 * np.max(np.abs(base.x))
    data = Dataset(x=np.append(base.x[:, 0], x_new), y=np.append(base.y, np.mean(base.y)))

    assert 13 in fit_lad(data).basis


def test_max_abs_residual_unique():
    fit, data = _fit_with_residuals([0.0, 0.0, 3.0, -1.0], basis=(1, 2))
    assert max_abs_residual_index(fit, data) == 3


def test_max_abs_residual_tie_goes_to_smallest_label():
    fit, data = _fit_with_residuals([0.0, 0.0, 2.0, -2.0], basis=(1, 2))
    assert max_abs_residual_index(fit, data) == 3


def test_max_abs_residual_rejects_foreign_fit(make_random):
    data = make_random(1, 10, 1)
    fit = fit_lad(data)
    with pytest.raises(DataError):
        max_abs_residual_index(fit, data.without(4))


def test_telephone_largest_residual_in_contaminated_block():
    data = bundled("telephone")
    fit = fit_lad(data)
    assert max_abs_residual_index(fit, data) in range(15, 21)


def test_zero_tolerance_scales_with_response():
    assert zero_tolerance(np.array([1.0, -3.0])) == pytest.approx(4e-8)
