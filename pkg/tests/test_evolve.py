import math

import numpy as np
import pytest

from modlab import (
    PacketSpec,
    PotentialSpec,
    PropagatorConfig,
    WaveFunction,
    free_far_field,
    make_grid,
    make_packet,
    make_two_slit,
    product_state,
    propagate,
    propagate_two,
    to_momentum,
    translate,
    translation_expect,
    translation_expect_two,
)
from modlab.errors import (
    GridMismatch,
    NonFiniteAmplitude,
    OffLatticeL,
    PhaseWrapWarning,
)


def test_free_particle_drift():
    g = make_grid(1024, -64.0, 128.0)
    p0, mass = 1.0, 1.0
    psi = make_packet(g, PacketSpec("gaussian", -4.0, 2.0, p0=p0))
    cfg = PropagatorConfig(dt=0.005, steps=400, mass=mass)
    snaps = propagate(psi, PotentialSpec.zero(), cfg, snapshot_every=100)
    for i, wf in enumerate(snaps):
        t = i * 100 * cfg.dt
        x_mean = float(np.sum(wf.position_density() * g.x) * g.dx)
        assert x_mean == pytest.approx(-4.0 + p0 * t / mass, abs=1e-8)


def test_free_particle_momentum_density_static():
    g = make_grid(512, -32.0, 64.0)
    psi = make_packet(g, PacketSpec("gaussian", 0.0, 1.5, p0=0.8))
    d0 = to_momentum(psi).density()
    snaps = propagate(psi, PotentialSpec.zero(), PropagatorConfig(dt=0.004, steps=200))
    d1 = to_momentum(snaps[-1]).density()
    assert np.max(np.abs(d1 - d0)) < 1e-12


def test_harmonic_oscillator_period():
    k, mass = 1.0, 1.0
    period = 2.0 * math.pi * math.sqrt(mass / k)
    g = make_grid(512, -32.0, 64.0)
    psi = make_packet(g, PacketSpec("gaussian", 4.0, 1.0))
    dt = period / 1000.0
    snaps = propagate(psi, PotentialSpec.harmonic(k), PropagatorConfig(dt=dt, steps=1100))
    x_means = np.array([float(np.sum(s.position_density() * g.x) * g.dx) for s in snaps])
    # locate the first return maximum of <x>(t) by quadratic interpolation
    window = np.arange(900, 1100)
    j = window[np.argmax(x_means[window])]
    denom = x_means[j - 1] - 2.0 * x_means[j] + x_means[j + 1]
    delta = 0.5 * (x_means[j - 1] - x_means[j + 1]) / denom
    measured = (j + delta) * dt
    assert abs(measured - period) / period < 1e-3


def test_norm_preserved_per_1000_steps():
    g = make_grid(512, -32.0, 64.0)
    psi = make_packet(g, PacketSpec("gaussian", -5.0, 1.5, p0=1.0))
    barrier = PotentialSpec.barrier(1.5, 0.0, 2.0)
    snaps = propagate(psi, barrier, PropagatorConfig(dt=0.002, steps=1000), snapshot_every=500)
    assert abs(snaps[-1].norm() - 1.0) < 1e-12


def test_second_order_convergence():
    g = make_grid(512, -32.0, 64.0)
    psi = make_packet(g, PacketSpec("gaussian", 2.0, 1.0))
    v = PotentialSpec.harmonic(1.0)
    total = 0.5

    def final_state(steps):
        cfg = PropagatorConfig(dt=total / steps, steps=steps)
        return propagate(psi, v, cfg, snapshot_every=steps)[-1].amps

    ref = final_state(1024)
    err_coarse = np.max(np.abs(final_state(128) - ref))
    err_fine = np.max(np.abs(final_state(256) - ref))
    assert 3.5 < err_coarse / err_fine < 4.5


def test_free_evolution_preserves_modular_coefficients():
    g = make_grid(2048, -64.0, 128.0)
    L = 8.0
    psi = make_two_slit(g, L, PacketSpec("bump", -4.0, 1.5), 0.6)
    before = [translation_expect(psi, L, k) for k in (1, 2, 3)]
    snaps = propagate(psi, PotentialSpec.zero(), PropagatorConfig(dt=0.002, steps=250), snapshot_every=250)
    after = [translation_expect(snaps[-1], L, k) for k in (1, 2, 3)]
    for b, a in zip(before, after):
        assert abs(a - b) < 1e-12


def test_phase_wrap_warning():
    g = make_grid(256, -16.0, 32.0)
    psi = make_packet(g, PacketSpec("gaussian", 0.0, 1.0))
    with pytest.warns(PhaseWrapWarning):
        propagate(psi, PotentialSpec.zero(), PropagatorConfig(dt=1.0, steps=1))


def test_non_finite_amplitude_detected():
    g = make_grid(256, -16.0, 32.0)
    amps = np.full(g.n, np.nan, dtype=complex)
    bad = WaveFunction(g, amps)
    with pytest.raises(NonFiniteAmplitude):
        propagate(bad, PotentialSpec.zero(), PropagatorConfig(dt=1e-3, steps=1))


def test_snapshot_cadence_must_divide():
    g = make_grid(256, -16.0, 32.0)
    psi = make_packet(g, PacketSpec("gaussian", 0.0, 1.0))
    with pytest.raises(ValueError):
        propagate(psi, PotentialSpec.zero(), PropagatorConfig(dt=1e-3, steps=10), snapshot_every=3)


def test_potential_spec_values():
    g = make_grid(64, -8.0, 16.0)
    assert np.all(PotentialSpec.zero().values(g) == 0.0)
    vh = PotentialSpec.harmonic(2.0).values(g)
    assert vh[0] == pytest.approx(0.5 * 2.0 * 64.0)
    vb = PotentialSpec.barrier(3.0, 0.0, 1.0).values(g)
    assert vb[(g.x >= 0.0) & (g.x < 1.0)].min() == 3.0
    assert vb[g.x < 0].max() == 0.0
    with pytest.raises(ValueError):
        PotentialSpec.sampled([np.inf] * g.n)
    with pytest.raises(GridMismatch):
        PotentialSpec.sampled([0.0] * 32).values(g)


def two_particle_setup(p0=2.0, depth=4.0):
    g = make_grid(256, -16.0, 32.0)
    a = make_packet(g, PacketSpec("gaussian", -3.0, 1.0, p0))
    b = make_packet(g, PacketSpec("gaussian", 3.0, 1.0, -p0))
    well = PotentialSpec.sampled(-depth * np.exp(-(g.x**2) / 2.0))
    return g, product_state(a, b), well


def test_two_particle_free_marginals_static():
    g, state, _ = two_particle_setup()
    snaps = propagate_two(state, PotentialSpec.zero(), PropagatorConfig(dt=0.005, steps=60), snapshot_every=30)

    def marginal(s):
        spec = np.abs(np.fft.fft2(s.amps)) ** 2
        return np.sum(spec, axis=1) / np.sum(spec)

    assert np.max(np.abs(marginal(snaps[-1]) - marginal(snaps[0]))) < 1e-12


def test_two_particle_total_momentum_conserved():
    g, state, well = two_particle_setup()
    snaps = propagate_two(state, well, PropagatorConfig(dt=0.005, steps=200), snapshot_every=100)

    def p_total_mean(s):
        spec = np.abs(np.fft.fft2(s.amps)) ** 2
        w = spec / np.sum(spec)
        return float(np.sum(w * (g.p_raw[:, None] + g.p_raw[None, :])))

    assert abs(p_total_mean(snaps[-1]) - p_total_mean(snaps[0])) < 1e-10


def test_two_particle_total_translation_conserved():
    g, state, well = two_particle_setup()
    L = 2.0
    snaps = propagate_two(state, well, PropagatorConfig(dt=0.005, steps=200), snapshot_every=50)
    t0 = translation_expect_two(snaps[0], L, 1, 1)
    for s in snaps[1:]:
        assert abs(translation_expect_two(s, L, 1, 1) - t0) < 1e-10
    assert abs(snaps[-1].norm() - 1.0) < 1e-11


def test_two_particle_grid_cap():
    g = make_grid(1024, -64.0, 128.0)
    a = make_packet(g, PacketSpec("gaussian", 0.0, 1.0))
    state = product_state(a, a)
    with pytest.raises(GridMismatch):
        propagate_two(state, PotentialSpec.zero(), PropagatorConfig(dt=1e-3, steps=1))


def test_translation_expect_two_matches_roll_oracle():
    g, state, _ = two_particle_setup()
    L = 2.0
    m = round(L / g.dx)
    rolled = np.roll(np.roll(state.amps, -m, axis=0), -m, axis=1)
    oracle = np.sum(np.conj(state.amps) * rolled) * g.dx**2
    got = translation_expect_two(state, L, 1, 1)
    assert abs(got - oracle) < 1e-12
    rolled1 = np.roll(state.amps, -m, axis=0)
    oracle1 = np.sum(np.conj(state.amps) * rolled1) * g.dx**2
    assert abs(translation_expect_two(state, L, 1, 0) - oracle1) < 1e-12


def test_two_particle_off_lattice_origin_rejected():
    g = make_grid(128, -8.1234, 16.0)
    a = make_packet(g, PacketSpec("gaussian", -0.1234, 1.0))
    state = product_state(a, a)
    with pytest.raises(OffLatticeL):
        propagate_two(state, PotentialSpec.zero(), PropagatorConfig(dt=1e-3, steps=1))


def test_far_field_is_momentum_distribution():
    g = make_grid(512, -32.0, 64.0)
    psi = make_packet(g, PacketSpec("gaussian", 0.0, 1.0, p0=1.0))
    far = free_far_field(psi)
    mom = to_momentum(psi)
    assert np.max(np.abs(far.amps - mom.amps)) == 0.0


def test_translate_then_propagate_commutes_for_free_flight():
    # free evolution commutes with translations
    g = make_grid(512, -32.0, 64.0)
    psi = make_packet(g, PacketSpec("gaussian", -2.0, 1.0, p0=0.3))
    cfg = PropagatorConfig(dt=0.004, steps=50)
    a = translate(propagate(psi, PotentialSpec.zero(), cfg, snapshot_every=50)[-1], 3.0)
    b = propagate(translate(psi, 3.0), PotentialSpec.zero(), cfg, snapshot_every=50)[-1]
    assert np.max(np.abs(a.amps - b.amps)) < 1e-12
