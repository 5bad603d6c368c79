"""Time evolution: second-order split-operator propagation for one particle in
a potential, the exact free far-field map, and two-particle evolution with a
translation-invariant interaction V(x1 - x2).

The far field of free evolution is computed exactly as the momentum
distribution of the state rather than by long propagation: for detection
statistics the two are identical, and the spectral route has no domain-size
artifacts.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    GridMismatch,
    NonFiniteAmplitude,
    OffLatticeL,
    PhaseWrapWarning,
)
from .grid import Grid, MomentumAmplitudes, WaveFunction, to_momentum

_POTENTIAL_KINDS = ("zero", "harmonic", "barrier", "sampled")


@dataclass(frozen=True)
class PotentialSpec:
    """A static potential: zero, harmonic (0.5*k_spring*x^2), a rectangular
    barrier of the given height on [x_lo, x_hi), or explicit samples on the
    grid lattice."""

    kind: str
    k_spring: float = 0.0
    height: float = 0.0
    x_lo: float = 0.0
    x_hi: float = 0.0
    samples: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in _POTENTIAL_KINDS:
            raise ValueError(f"kind must be one of {_POTENTIAL_KINDS}, got {self.kind!r}")
        if self.kind == "sampled":
            if self.samples is None:
                raise ValueError("sampled potential needs samples")
            if not np.all(np.isfinite(self.samples)):
                raise ValueError("potential samples must be finite")

    @classmethod
    def zero(cls) -> "PotentialSpec":
        return cls(kind="zero")

    @classmethod
    def harmonic(cls, k_spring: float) -> "PotentialSpec":
        return cls(kind="harmonic", k_spring=float(k_spring))

    @classmethod
    def barrier(cls, height: float, x_lo: float, x_hi: float) -> "PotentialSpec":
        return cls(kind="barrier", height=float(height), x_lo=float(x_lo), x_hi=float(x_hi))

    @classmethod
    def sampled(cls, values) -> "PotentialSpec":
        return cls(kind="sampled", samples=tuple(float(v) for v in values))

    def values(self, grid: Grid) -> np.ndarray:
        if self.kind == "zero":
            return np.zeros(grid.n)
        if self.kind == "harmonic":
            return 0.5 * self.k_spring * grid.x**2
        if self.kind == "barrier":
            return np.where((grid.x >= self.x_lo) & (grid.x < self.x_hi), self.height, 0.0)
        vals = np.asarray(self.samples, dtype=float)
        if vals.shape != (grid.n,):
            raise GridMismatch(f"sampled potential has {vals.shape} values, grid has {grid.n}")
        return vals


@dataclass(frozen=True)
class PropagatorConfig:
    dt: float
    steps: int
    mass: float = 1.0

    def __post_init__(self):
        if not (self.dt > 0.0) or self.steps < 1 or not (self.mass > 0.0):
            raise ValueError(
                f"need dt > 0, steps >= 1, mass > 0; got dt={self.dt} "
                f"steps={self.steps} mass={self.mass}"
            )


def _check_phase_wrap(grid: Grid, cfg: PropagatorConfig) -> None:
    advance = cfg.dt * float(np.max(grid.p_raw**2)) / (2.0 * cfg.mass * grid.hbar)
    if advance >= math.pi:
        warnings.warn(
            f"kinetic phase advance {advance:.3g} rad/step exceeds the pi wrap guard",
            PhaseWrapWarning,
            stacklevel=3,
        )


def propagate(
    psi: WaveFunction,
    V: PotentialSpec,
    cfg: PropagatorConfig,
    snapshot_every: int = 1,
) -> list[WaveFunction]:
    """Strang-split evolution exp(-iV dt/2h) exp(-ip^2 dt/2mh) exp(-iV dt/2h).

    Returns snapshots at steps 0, snapshot_every, 2*snapshot_every, ..., steps;
    steps must be a multiple of snapshot_every so the cadence is uniform.
    """
    if cfg.steps % snapshot_every != 0:
        raise ValueError("steps must be a multiple of snapshot_every")
    g = psi.grid
    _check_phase_wrap(g, cfg)
    half_v = np.exp(-0.5j * V.values(g) * cfg.dt / g.hbar)
    kinetic = np.exp(-0.5j * g.p_raw**2 * cfg.dt / (cfg.mass * g.hbar))
    amps = psi.amps.copy()
    snapshots = [WaveFunction(g, amps.copy())]
    _check_finite(amps)
    for step in range(1, cfg.steps + 1):
        amps *= half_v
        amps = np.fft.ifft(kinetic * np.fft.fft(amps))
        amps *= half_v
        if step % snapshot_every == 0:
            _check_finite(amps)
            snapshots.append(WaveFunction(g, amps.copy()))
    return snapshots


def _check_finite(amps: np.ndarray) -> None:
    if not np.all(np.isfinite(amps.view(float))):
        raise NonFiniteAmplitude("non-finite amplitude encountered during propagation")


def free_far_field(psi: WaveFunction) -> MomentumAmplitudes:
    """Detection-screen distribution after free flight to the far field:
    exactly the momentum distribution of the state."""
    return to_momentum(psi)


@dataclass(frozen=True, eq=False)
class TwoParticleState:
    """Two-particle amplitudes Psi(x1, x2) on the square of a common Grid."""

    grid: Grid
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=np.complex128)
        if a.shape != (self.grid.n, self.grid.n):
            raise GridMismatch(f"expected shape {(self.grid.n,) * 2}, got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.amps) ** 2)) * self.grid.dx**2)

    def normalized(self) -> "TwoParticleState":
        return TwoParticleState(self.grid, self.amps / self.norm())


def product_state(psi1: WaveFunction, psi2: WaveFunction) -> TwoParticleState:
    if psi1.grid != psi2.grid:
        raise GridMismatch("factors live on different grids")
    return TwoParticleState(psi1.grid, np.outer(psi1.amps, psi2.amps)).normalized()


def _difference_potential(grid: Grid, v12: PotentialSpec) -> np.ndarray:
    """V(x1 - x2) with the periodic difference wrapped back onto the lattice."""
    s0 = grid.x0 / grid.dx
    if abs(s0 - round(s0)) > 1e-9:
        raise OffLatticeL(
            "x0 must be an integer multiple of dx so differences land on the lattice"
        )
    vals = v12.values(grid)
    n = grid.n
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :] - int(round(s0))) % n
    return vals[idx]


TWO_PARTICLE_N_CAP = 512  # dense n x n amplitudes; keeps memory bounded


def propagate_two(
    state: TwoParticleState,
    v12: PotentialSpec,
    cfg: PropagatorConfig,
    snapshot_every: int = 1,
) -> list[TwoParticleState]:
    """Strang-split two-particle evolution under H = (p1^2 + p2^2)/2m + V(x1 - x2)."""
    if cfg.steps % snapshot_every != 0:
        raise ValueError("steps must be a multiple of snapshot_every")
    g = state.grid
    if g.n > TWO_PARTICLE_N_CAP:
        raise GridMismatch(
            f"two-particle grids are capped at n <= {TWO_PARTICLE_N_CAP} per axis"
        )
    _check_phase_wrap(g, cfg)
    half_v = np.exp(-0.5j * _difference_potential(g, v12) * cfg.dt / g.hbar)
    p2 = g.p_raw**2
    kinetic = np.exp(-0.5j * (p2[:, None] + p2[None, :]) * cfg.dt / (cfg.mass * g.hbar))
    amps = state.amps.copy()
    snapshots = [TwoParticleState(g, amps.copy())]
    _check_finite(amps)
    for step in range(1, cfg.steps + 1):
        amps *= half_v
        amps = np.fft.ifft2(kinetic * np.fft.fft2(amps))
        amps *= half_v
        if step % snapshot_every == 0:
            _check_finite(amps)
            snapshots.append(TwoParticleState(g, amps.copy()))
    return snapshots


def translation_expect_two(
    state: TwoParticleState, L: float, k1: int = 1, k2: int = 1
) -> complex:
    """<exp(i (k1 p1 + k2 p2) L / hbar)> from the joint momentum density."""
    g = state.grid
    spectrum = np.fft.fft2(state.amps)
    weights = np.abs(spectrum) ** 2
    ph1 = np.exp(1j * g.p_raw * k1 * L / g.hbar)
    ph2 = np.exp(1j * g.p_raw * k2 * L / g.hbar)
    return complex((ph1 @ weights @ ph2) / np.sum(weights))
