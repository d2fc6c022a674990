import math

import pytest

import spreadnet as sn


def test_generators_are_deterministic():
    a = sn.gen_er(300, 2.0, seed=42)
    b = sn.gen_er(300, 2.0, seed=42)
    assert a.edges() == b.edges()
    assert a.node_count() == 300

    g = sn.gen_dregular(100, 3, seed=7)
    assert all(g.degree(j) == 3 for j in range(100))

    torus = sn.gen_cartesian_torus(2, 5)
    assert torus.node_count() == 25
    assert torus.edge_count() == 50


def test_generator_errors():
    with pytest.raises(ValueError):
        sn.gen_dregular(5, 3, seed=1)  # parity
    with pytest.raises(ValueError):
        sn.gen_er(4, 5.0, seed=1)  # lambda > M


def test_er_solution_shapes():
    grid = [0.0, 100.0, 200.0, 400.0]
    sol = sn.solve_er(p=0.001, q=0.05, i0=0.0, lambda_=3.0, grid=grid)
    assert sol["f"]["values"][0] == pytest.approx(0.0, abs=1e-12)
    assert sol["y"]["values"][0] == pytest.approx(1.0)
    assert all(0.0 <= v <= 1.0 + 1e-9 for v in sol["f"]["values"])
    # monotone growth toward full adoption
    values = sol["f"]["values"]
    assert values == sorted(values)


def test_fixed_points():
    f_inf = sn.final_infection_level(3.0, 1e-4)
    giant = sn.giant_component(3.0)
    assert giant == pytest.approx(0.9404797907, abs=1e-8)
    assert f_inf == pytest.approx(giant, abs=1e-2)
    assert sn.ysi_infinity(2.0, 0.05) == pytest.approx(1.0 - sn.final_infection_level(2.0, 0.05), abs=1e-12)


def test_ensemble_matches_isolated_closed_form():
    res = sn.ensemble("isolated", nodes=500, p=0.01, q=1e-9, i0=0.0,
                      runs=20, horizon=100.0, grid_points=11, seed=5)
    times = res["grid"]["times"]
    means = res["grid"]["values"]
    errs = res["grid"]["stderr"]
    for t, m, s in zip(times, means, errs):
        expected = 1.0 - math.exp(-0.01 * t)
        assert abs(m - expected) <= 4.0 * s + 0.01


def test_simulate_dyad():
    g = sn.gen_path(2)
    inst = sn.NetworkInstance(g, node_weight=0.5, edge_weight=1.0, i0=0.0)
    run = sn.simulate(inst, horizon=5.0, seed=11)
    assert len(run["adoption_times"]) == 2
    assert all(t > 0 for t in run["adoption_times"])


def test_oracle_and_funnel():
    g = sn.gen_path(3)
    inst = sn.NetworkInstance(g, node_weight=1.0, edge_weight=1.0, i0=0.0)
    report = sn.funnel_check(inst, 1, [0.5, 1.0, 2.0])
    assert max(abs(gap) for gap in report["gap"]) <= 1e-7

    tri = sn.NetworkInstance(sn.gen_complete(3), node_weight=1.0, edge_weight=1.0, i0=0.0)
    tri_report = sn.funnel_check(tri, 0, [1.0])
    assert tri_report["gap"][0] > 0.0
    assert tri_report["gap"][0] <= tri_report["bound"][0]

    marginals = sn.exact_marginals(inst, [0.5, 1.0])
    assert len(marginals) == 3
    with pytest.raises(RuntimeError):
        sn.exact_marginals(sn.NetworkInstance(sn.gen_isolated(21), 0.1, 0.0, 0.0), [1.0])


def test_half_life():
    assert sn.half_life("isolated", p=0.001, q=1e-9, i0=0.0) == pytest.approx(math.log(2) / 0.001)
    t_er = sn.half_life("er", p=0.001, q=0.05, i0=0.0, lambda_=3.0)
    t_er_dense = sn.half_life("er", p=0.001, q=0.05, i0=0.0, lambda_=8.0)
    assert t_er_dense < t_er
    with pytest.raises(RuntimeError):
        sn.half_life("er", p=0.0, q=0.05, i0=0.1, lambda_=0.5)  # plateaus below 1/2


def test_cycle_census():
    counts = sn.count_cycles_through(sn.gen_complete(4), 0, 3)
    assert counts == {3: 3}
    assert sn.expected_cycles_dreg(3, 3, 1000) == pytest.approx(0.004)
    assert sn.degree_pmf_poisson(0, 0.5) == pytest.approx(math.exp(-0.5))
