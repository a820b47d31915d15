import pytest

import mlop


EXAMPLE1 = mlop.PreferenceMatrix(4, [0.9, 0.9, 0.9, 0.5, 0.9, 0.9])


def test_lop_value_and_exact():
    assert mlop.lop_value([0, 1, 2, 3], EXAMPLE1) == pytest.approx(5.0)
    b = [[EXAMPLE1(r, s) if r != s else 0.0 for s in range(4)] for r in range(4)]
    res = mlop.lop_exact(b)
    assert res["order"] == [0, 1, 2, 3]
    assert res["value"] == pytest.approx(5.0)
    assert res["proven"]


def test_solve_exact_example():
    res = mlop.solve_exact(EXAMPLE1, 3)
    assert res["objective"] == pytest.approx(0.0, abs=1e-12)
    assert mlop.solve_exact(EXAMPLE1, 1)["objective"] == pytest.approx(1.0)
    curve = mlop.opt_curve(mlop.PreferenceMatrix(3, [0.7, 0.8, 0.4]), 4, max_g=4)
    assert curve == pytest.approx([0.9, 0.2, 0.1, 0.0], abs=1e-9)


def test_size_guard():
    c = mlop.PreferenceMatrix(7, [0.5] * 21)
    with pytest.raises(mlop.SizeGuardError):
        mlop.solve_exact(c, 2)


def test_heuristic_reaches_zero():
    res = mlop.solve_heuristic(EXAMPLE1, 3, seed=7)
    assert res["objective"] == pytest.approx(0.0, abs=1e-9)
    assert len(res["start_objectives"]) == 10
    again = mlop.solve_heuristic(EXAMPLE1, 3, seed=7)
    assert again["orders"] == res["orders"]


def test_fit_weights_example5():
    weights, objective = mlop.fit_weights([[1, 1, 0], [0, 0, 1]], [0.7, 0.8, 0.4])
    assert weights == pytest.approx([0.7, 0.3])
    assert objective == pytest.approx(0.2)


def test_geometry():
    (triple, residual), = mlop.cycle_residuals([0.3, 0.9, 0.2], 3)
    assert triple == (0, 1, 2)
    assert residual == pytest.approx(-0.4)
    assert not mlop.polytope_membership([0.3, 0.9, 0.2], 3)
    assert mlop.l1_projection([0.3, 0.9, 0.2], 3)[1] == pytest.approx(0.4)
    assert mlop.caratheodory_saturation([0.3, 0.9, 0.2], 3) == 3


def test_generator_and_ingest():
    a = mlop.generate_instance(6, g_true=2, weights=[0.667, 0.333], D=1, num_rankings=300, seed=3)
    b = mlop.generate_instance(6, g_true=2, weights=[0.667, 0.333], D=1, num_rankings=300, seed=3)
    assert a["matrix"] == b["matrix"]
    assert a["counts"] == [200, 100]
    text = "\n".join(" ".join(str(i + 1) for i in r) for r in a["rankings"])
    matrix, count = mlop.ingest_rankings(text)
    assert count == 300
    assert matrix.upper == pytest.approx(a["matrix"].upper)
    assert mlop.mahonian_counts(5)[:3] == [1, 4, 9]


def test_sweep_and_arithmetic():
    rows = mlop.sweep(mlop.PreferenceMatrix(3, [0.3, 0.9, 0.2]), 3)["rows"]
    assert [r["objective"] for r in rows] == pytest.approx([1.0, 0.6, 0.4])
    assert rows[0]["relative_drop"] is None
    assert mlop.fit_from_objective(12.144, 12) == pytest.approx(0.816)
    assert mlop.relative_drop(15.390, 4.253) == pytest.approx(0.72365, abs=1e-5)
