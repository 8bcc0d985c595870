import numpy as np
import pytest

from vexspaces import Grid
from vexspaces.weights import (
    WeightSequence,
    verify_admissible,
    make_2microlocal,
    make_variable_smoothness,
    make_generalized,
    make_weighted,
)


def brute_force_condition_i(w, j):
    """O(N^2) oracle for the worst spatial ratio at level j."""
    grid = w.grid
    vals = w.levels[j].ravel()
    if grid.dim == 1:
        pts = [(x,) for x in grid.coords[0]]
    else:
        pts = list(zip(grid.coords[0].ravel(), grid.coords[1].ravel()))
    worst_c = 0.0
    for a in range(len(vals)):
        for b in range(len(vals)):
            if a == b:
                continue
            d = np.sqrt(
                sum(min(abs(u - v) % 1.0, 1.0 - abs(u - v) % 1.0) ** 2 for u, v in zip(pts[a], pts[b]))
            )
            c = (vals[a] / vals[b]) / (1.0 + 2.0**j * d) ** w.declared_alpha
            worst_c = max(worst_c, c)
    return worst_c


def test_2microlocal_class_parameters_and_pass():
    g = Grid(1, 64)
    for s, sp in [(0.0, 1.5), (1.0, -0.75), (-0.5, 0.0)]:
        w = make_2microlocal(g, J=6, s=s, s_prime=sp, anchor_points=[[0.5]])
        assert w.declared_alpha == abs(sp)
        assert w.declared_alpha1 == pytest.approx(s + min(0.0, sp))
        assert w.declared_alpha2 == pytest.approx(s + max(0.0, sp))
        rep = verify_admissible(w)
        assert rep.passes, (s, sp, rep)


def test_2microlocal_spatial_scan_matches_brute_force():
    g = Grid(1, 16)
    w = make_2microlocal(g, J=3, s=0.0, s_prime=1.0, anchor_points=[[0.25]])
    rep = verify_admissible(w)
    oracle = max(brute_force_condition_i(w, j) for j in range(w.J + 1))
    assert rep.measured_c == pytest.approx(max(oracle, 1.0), rel=1e-12)


def test_variable_smoothness_class():
    g = Grid(1, 64)
    w = make_variable_smoothness(g, J=6, s=lambda x: 0.5 + 0.4 * np.sin(2 * np.pi * x))
    sampled = 0.5 + 0.4 * np.sin(2 * np.pi * g.coords[0])
    assert w.declared_alpha1 == pytest.approx(float(sampled.min()), abs=1e-12)
    assert w.declared_alpha2 == pytest.approx(float(sampled.max()), abs=1e-12)
    rep = verify_admissible(w)
    assert rep.passes
    # alpha follows the measured log-Holder constant of s
    from vexspaces import GridFunction, log_holder_estimate

    s_vals = 0.5 + 0.4 * np.sin(2 * np.pi * g.coords[0])
    assert w.declared_alpha == pytest.approx(
        log_holder_estimate(GridFunction(g, s_vals)).c_log_local
    )


def test_generalized_class():
    g = Grid(1, 32)
    sigma = [1.0, 1.5, 2.0, 3.5, 4.0, 4.2, 5.0]
    w = make_generalized(g, J=6, sigma=sigma)
    assert w.declared_alpha == 0.0
    ratios = np.array(sigma[1:]) / np.array(sigma[:-1])
    assert w.declared_alpha1 == pytest.approx(np.log2(ratios.min()))
    assert w.declared_alpha2 == pytest.approx(np.log2(ratios.max()))
    rep = verify_admissible(w)
    assert rep.passes
    assert rep.measured_c == 1.0  # constant in x
    with pytest.raises(ValueError):
        make_generalized(g, J=2, sigma=[1.0, -1.0, 2.0])


def test_weighted_family_measures_c():
    g = Grid(1, 64)
    w = make_weighted(g, J=5, rho=lambda x: 1.0 + np.cos(2 * np.pi * x) ** 2, s=1.0, beta=2.0)
    rep = verify_admissible(w)
    assert rep.passes
    assert rep.measured_alpha1 == pytest.approx(1.0, abs=1e-12)
    assert rep.measured_alpha2 == pytest.approx(1.0, abs=1e-12)


def test_weighted_rejects_bad_rho():
    g = Grid(1, 32)
    with pytest.raises(ValueError, match="positive"):
        make_weighted(g, J=2, rho=lambda x: np.cos(2 * np.pi * x), s=0.0, beta=1.0)
    # declared constant too small for a spiky rho
    with pytest.raises(ValueError, match="measured"):
        make_weighted(
            g, J=2, rho=lambda x: 1.0 + 100.0 * np.exp(-200 * (x - 0.5) ** 2), s=0.0, beta=0.5, c=1.0
        )


def test_verify_rejects_wrong_declaration():
    g = Grid(1, 32)
    good = make_2microlocal(g, J=4, s=1.0, s_prime=0.5, anchor_points=[[0.5]])
    bad = WeightSequence(
        g,
        good.levels,
        declared_alpha=abs(0.5),
        declared_alpha1=1.2,  # claims faster growth than actual
        declared_alpha2=1.5,
        declared_c=1.0,
    )
    rep = verify_admissible(bad)
    assert not rep.passes
    j, idx, ratio = rep.witness_levels
    assert ratio < 2.0**1.2


def test_shift_is_exact_for_integer_sigma():
    g = Grid(1, 64)
    w = make_2microlocal(g, J=6, s=0.5, s_prime=-1.0, anchor_points=[[0.3]])
    base = verify_admissible(w)
    for sigma in (-2, 1, 3):
        ws = w.shifted(sigma)
        assert ws.declared_alpha1 == base.measured_alpha1 * 0 + w.declared_alpha1 + sigma
        rep = verify_admissible(ws)
        assert rep.passes
        assert abs(rep.measured_alpha1 - (base.measured_alpha1 + sigma)) <= 1e-12
        assert abs(rep.measured_alpha2 - (base.measured_alpha2 + sigma)) <= 1e-12
        assert rep.measured_c == base.measured_c  # spatial shape untouched


def test_truncated():
    g = Grid(1, 32)
    w = make_generalized(g, J=6, sigma=2.0 ** np.arange(7))
    w3 = w.truncated(3)
    assert w3.J == 3
    with pytest.raises(ValueError):
        w.truncated(9)


def test_refine_recipe():
    g = Grid(1, 32)
    w = make_variable_smoothness(g, J=4, s=lambda x: 0.2 + 0.1 * np.cos(2 * np.pi * x))
    w2 = w.refine(Grid(1, 64))
    assert w2.grid.n == 64 and w2.J == 4
    assert verify_admissible(w2).passes


def test_2d_scan():
    g = Grid(2, 16)
    w = make_2microlocal(g, J=3, s=0.5, s_prime=1.0, anchor_points=[[0.5, 0.5]])
    rep = verify_admissible(w)
    assert rep.passes and rep.exhaustive
