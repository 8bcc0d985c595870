import numpy as np
import pytest

from vexspaces import (
    FunctionSequence,
    Grid,
    GridFunction,
    VariableExponent,
    modular,
)
from vexspaces import norm as lebesgue_norm
from vexspaces.mixed import (
    convolution_inequality_report,
    eta_integrability_probe,
    eta_kernel,
    iterated_constant_q_norm,
    lp_lq_norm,
    lq_lp_modular,
    lq_lp_norm,
    mixed_embedding_check,
    smooth_sequence,
    smoothing_constants,
)

from conftest import random_band_limited


def random_sequence(grid, rng, levels=4, kmax=6, positive=False):
    entries = []
    for _ in range(levels + 1):
        f = random_band_limited(grid, rng, kmax=kmax)
        if positive:
            f = GridFunction(grid, np.abs(f.samples) + 0.1)
        entries.append(f)
    return FunctionSequence(entries)


def varying_p(grid):
    return VariableExponent.from_function(
        grid, lambda *x: 1.5 + 0.4 * np.sin(2 * np.pi * x[0])
    )


def varying_q(grid):
    return VariableExponent.from_function(
        grid, lambda *x: 2.0 + 0.5 * np.cos(2 * np.pi * x[0])
    )


# ---------------------------------------------------------------- eta kernels


def brute_force_eta_1d(grid, level, decay, radius=300):
    x = grid.coords[0]
    c = 2.0 ** (-level)
    pref = 2.0 ** (level * (1.0 - decay))
    total = np.zeros(grid.shape)
    for k in range(-radius, radius + 1):
        total += pref * (c + np.abs(x + k)) ** (-decay)
    return total


def test_eta_1d_matches_truncated_image_sum(grid64):
    ker = eta_kernel(grid64, level=3, decay=8.0)
    brute = brute_force_eta_1d(grid64, 3, 8.0)
    assert ker.truncation_radius == -1  # closed form
    assert np.max(np.abs(ker.samples.samples - brute)) <= 1e-12 * np.max(brute)


def test_eta_mass_matches_analytic(grid256):
    # total mass survives periodization: integral over the torus equals
    # int_R 2^nu (1 + 2^nu |x|)^(-R) dx = 2 / (R - 1); the kink at the
    # origin limits midpoint quadrature to O(h^2), so check the rate too
    mass = 2.0 / 3.0
    err_coarse = abs(eta_kernel(grid256, level=2, decay=4.0).l1_norm() - mass)
    err_fine = abs(eta_kernel(Grid(1, 1024), level=2, decay=4.0).l1_norm() - mass)
    assert err_coarse < 5e-4 * mass
    assert err_fine < err_coarse / 3.0


def test_eta_2d_ring_sum_vs_brute_force():
    grid = Grid(2, 16)
    ker = eta_kernel(grid, level=1, decay=8.0)
    x, y = grid.coords
    c, pref = 0.5, 2.0 ** (1 * (2.0 - 8.0))
    brute = np.zeros(grid.shape)
    for ox in range(-80, 81):
        for oy in range(-80, 81):
            brute += pref * (c + np.sqrt((x + ox) ** 2 + (y + oy) ** 2)) ** (-8.0)
    # the ring sum stops early; everything it dropped is covered by tail_bound
    assert np.max(np.abs(ker.samples.samples - brute)) <= ker.tail_bound + 1e-15
    assert ker.tail_bound < 1e-8


def test_eta_rejects_nonintegrable_decay(grid64):
    with pytest.raises(ValueError, match="not integrable"):
        eta_kernel(grid64, level=0, decay=1.0)
    with pytest.raises(ValueError, match="not integrable"):
        eta_kernel(Grid(2, 16), level=0, decay=2.0)
    # the probe documents the divergence instead: mass keeps growing
    m8, m64 = eta_integrability_probe(grid64, level=0, decay=1.0)
    assert m64 > 1.3 * m8


def test_eta_convolution_of_constant_is_mass(grid64):
    ker = eta_kernel(grid64, level=2, decay=6.0)
    one = GridFunction(grid64, np.ones(grid64.shape))
    out = ker.convolve(one)
    assert np.allclose(np.real(out.samples), ker.l1_norm(), rtol=1e-12)
    assert np.max(np.abs(np.imag(out.samples))) < 1e-12


# ------------------------------------------------------------- mixed modulars


def test_inner_infimum_dual_route(grid64):
    rng = np.random.default_rng(11)
    F = random_sequence(grid64, rng, levels=3)
    p, q = varying_p(grid64), varying_q(grid64)
    fast = lq_lp_modular(F, p, q)
    general = lq_lp_modular(F, p, q, force_general=True)
    assert general == pytest.approx(fast, rel=1e-8)


def test_iterated_identity_constant_q(grid64):
    rng = np.random.default_rng(12)
    F = random_sequence(grid64, rng, levels=4)
    p = varying_p(grid64)
    for q_const in (1.0, 2.0, np.inf):
        q = VariableExponent.constant(grid64, q_const)
        direct = lq_lp_norm(F, p, q)
        factored = iterated_constant_q_norm(F, p, q_const)
        assert direct == pytest.approx(factored, rel=1e-9)


def test_same_exponent_routes_agree(grid64):
    # q = p collapses both scales to the same modular, hence the same norm
    rng = np.random.default_rng(13)
    F = random_sequence(grid64, rng, levels=3)
    p = varying_p(grid64)
    assert lp_lq_norm(F, p, p) == pytest.approx(lq_lp_norm(F, p, p), rel=1e-10)


def test_power_reduction_identity(grid64):
    rng = np.random.default_rng(14)
    F = random_sequence(grid64, rng, levels=3)
    p, q = varying_p(grid64), varying_q(grid64)
    r = 0.5
    Fr = FunctionSequence.from_stack(grid64, F.abs_stack() ** r)
    lhs = lq_lp_norm(F, p, q) ** r
    rhs = lq_lp_norm(Fr, p.divided_by(r), q.divided_by(r))
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_unit_ball_normalization(grid64):
    rng = np.random.default_rng(15)
    F = random_sequence(grid64, rng, levels=3)
    p, q = varying_p(grid64), varying_q(grid64)
    mu = lq_lp_norm(F, p, q)
    value = lq_lp_modular(F.scaled(1.0 / mu), p, q)
    assert 1.0 - 1e-8 <= value <= 1.0 + 1e-12


def test_single_level_reduces_to_lebesgue(grid64):
    rng = np.random.default_rng(16)
    f = random_band_limited(grid64, rng)
    zero = grid64.zeros()
    F = FunctionSequence([zero, zero, f, zero])
    p, q = varying_p(grid64), varying_q(grid64)
    target = lebesgue_norm(f, p)
    assert lq_lp_norm(F, p, q) == pytest.approx(target, rel=1e-11)
    assert lp_lq_norm(F, p, q) == pytest.approx(target, rel=1e-11)


def test_homogeneity(grid64):
    rng = np.random.default_rng(17)
    F = random_sequence(grid64, rng, levels=2)
    p, q = varying_p(grid64), varying_q(grid64)
    base = lq_lp_norm(F, p, q)
    assert lq_lp_norm(F.scaled(7.5), p, q) == pytest.approx(7.5 * base, rel=1e-10)


def test_infinite_q_region_case_split(grid64):
    # q = inf on half the torus: a level supported there with small values
    # contributes 0 to the modular, large values make it infinite
    x = grid64.coords[0]
    q = VariableExponent(grid64, np.where(x < 0.5, np.inf, 2.0))
    p = VariableExponent.constant(grid64, 2.0)
    left = GridFunction(grid64, np.where(x < 0.5, 0.5, 0.0))
    F = FunctionSequence([left])
    assert lq_lp_modular(F, p, q) == 0.0
    assert lq_lp_modular(F.scaled(10.0), p, q) == np.inf
    # the norm still resolves: scaling until the ess-sup constraint binds
    assert lq_lp_norm(F, p, q) > 0.0


# ------------------------------------------------------------------ couplings


def test_smooth_sequence_geometric_oracle(grid64):
    ones = GridFunction(grid64, np.ones(grid64.shape))
    F = FunctionSequence([ones] * 6)
    G = smooth_sequence(F, 1.0)
    for nu in range(6):
        expected = sum(2.0 ** (-abs(k - nu)) for k in range(6))
        assert np.allclose(G[nu].samples, expected, rtol=1e-13)


def test_smooth_sequence_rejects_bad_input(grid64):
    f = GridFunction(grid64, -np.ones(grid64.shape))
    with pytest.raises(ValueError, match="nonnegative"):
        smooth_sequence(FunctionSequence([f]), 1.0)
    g = GridFunction(grid64, np.ones(grid64.shape))
    with pytest.raises(ValueError, match="delta"):
        smooth_sequence(FunctionSequence([g]), 0.0)


def test_coupling_respects_minkowski_bound(grid64):
    rng = np.random.default_rng(18)
    p = VariableExponent.constant(grid64, 2.0)
    q = VariableExponent.constant(grid64, 2.0)
    for delta in (0.5, 1.0, 2.0):
        bound, _ = smoothing_constants(delta)
        for _ in range(5):
            F = random_sequence(grid64, rng, levels=5, positive=True)
            ratio = lp_lq_norm(smooth_sequence(F, delta), p, q) / lp_lq_norm(F, p, q)
            assert ratio <= bound * (1.0 + 1e-9)


def test_modular_bound_with_proof_constant(grid64):
    rng = np.random.default_rng(19)
    p, q = varying_p(grid64), varying_q(grid64)  # both >= 1 pointwise
    _, c_mod = smoothing_constants(1.0)
    for _ in range(5):
        F = random_sequence(grid64, rng, levels=5, positive=True)
        G = smooth_sequence(F, 1.0)
        mu = lq_lp_norm(F, p, q)
        assert lq_lp_modular(G.scaled(1.0 / (c_mod * mu)), p, q) <= 1.0 + 1e-9


# ----------------------------------------------------------------- embeddings


def test_monotone_embeddings_have_constant_one(grid64):
    rng = np.random.default_rng(20)
    p = varying_p(grid64)
    q0 = VariableExponent.from_function(
        grid64, lambda x: 1.2 + 0.5 * np.sin(2 * np.pi * x) ** 2
    )
    q1 = VariableExponent(grid64, q0.values + 1.0)
    for _ in range(5):
        F = random_sequence(grid64, rng, levels=3)
        rep = mixed_embedding_check(F, p, q0, q1)
        assert rep.c_lp_lq_monotone <= 1.0 + 1e-9
        assert rep.c_lq_lp_monotone <= 1.0 + 1e-9


def test_sandwich_constant_exponents(grid64):
    # for constant p, q both sandwich embeddings hold with constant 1
    rng = np.random.default_rng(21)
    p = VariableExponent.constant(grid64, 2.5)
    q = VariableExponent.constant(grid64, 1.5)
    for _ in range(3):
        F = random_sequence(grid64, rng, levels=3)
        rep = mixed_embedding_check(F, p, q, q)
        assert rep.c_sandwich_in <= 1.0 + 1e-9
        assert rep.c_sandwich_out <= 1.0 + 1e-9


def test_embedding_check_rejects_unordered_q(grid64):
    rng = np.random.default_rng(22)
    F = random_sequence(grid64, rng, levels=2)
    p = varying_p(grid64)
    q0 = VariableExponent.constant(grid64, 2.0)
    q1 = VariableExponent.constant(grid64, 1.5)
    with pytest.raises(ValueError, match="q0 <= q1"):
        mixed_embedding_check(F, p, q0, q1)


# -------------------------------------------------------------------- reports


def test_convolution_inequality_report(grid64):
    rng = np.random.default_rng(23)
    F = random_sequence(grid64, rng, levels=4, positive=True)
    p, q = varying_p(grid64), varying_q(grid64)
    rep = convolution_inequality_report(F, p, q, delta=1.0, decay=4.0)
    assert rep.modular_applicable  # p, q >= 1 pointwise
    assert not rep.minkowski_applicable  # q varies
    assert rep.modular_value <= 1.0 + 1e-9
    assert 0.0 < rep.c_coupling_lp_lq < np.inf
    assert 0.0 < rep.c_eta_lq_lp < np.inf
    assert rep.eta_b_applicable  # decay 4 > 1 + c_log(1/q)
    assert rep.eta_f_applicable  # 1 < 1.1 <= p <= 1.9 < inf, same shape for q
    assert rep.clog_inv_q > 0.0


def test_report_minkowski_flag_constant_q(grid64):
    rng = np.random.default_rng(24)
    F = random_sequence(grid64, rng, levels=3, positive=True)
    p = VariableExponent.constant(grid64, 2.0)
    q = VariableExponent.constant(grid64, 3.0)
    rep = convolution_inequality_report(F, p, q, delta=1.0, decay=4.0)
    assert rep.minkowski_applicable
    assert rep.c_coupling_lp_lq <= rep.minkowski_bound * (1.0 + 1e-9)
    assert rep.eta_f_applicable


def test_mixed_norms_2d_smoke(grid2d):
    rng = np.random.default_rng(25)
    F = random_sequence(grid2d, rng, levels=2, kmax=3)
    p = VariableExponent.from_function(
        grid2d, lambda x, y: 2.0 + 0.5 * np.sin(2 * np.pi * x) * np.cos(2 * np.pi * y)
    )
    q = VariableExponent.constant(grid2d, 2.0)
    direct = lq_lp_norm(F, p, q)
    assert direct == pytest.approx(iterated_constant_q_norm(F, p, 2.0), rel=1e-9)
    assert lp_lq_norm(F, p, q) > 0.0
