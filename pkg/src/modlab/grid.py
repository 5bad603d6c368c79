"""Uniform periodic 1-D lattices and the position <-> momentum transform.

The transform follows the unitary convention

    psi_tilde(p_j) = dx / sqrt(2*pi*hbar) * sum_m psi(x_m) exp(-i p_j x_m / hbar)

with momentum lattice p_j = (2*pi*hbar/length) * j for j in [-n/2, n/2),
so Parseval holds to machine precision on power-of-two grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GridMismatch, NonPositiveDomain, NonPowerOfTwo


@dataclass(frozen=True)
class Grid:
    """Periodic spatial lattice x_j = x0 + j*dx with its conjugate lattice.

    hbar is a grid parameter (natural units, default 1) so experiments can
    sweep it; it is never a global constant.
    """

    n: int
    x0: float
    length: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise NonPowerOfTwo(f"n must be a power of two >= 8, got {self.n}")
        if not (self.length > 0.0) or not (self.hbar > 0.0):
            raise NonPositiveDomain(
                f"length and hbar must be positive, got length={self.length} hbar={self.hbar}"
            )

    @cached_property
    def dx(self) -> float:
        return self.length / self.n

    @cached_property
    def dp(self) -> float:
        return 2.0 * math.pi * self.hbar / self.length

    @cached_property
    def x(self) -> np.ndarray:
        xs = self.x0 + self.dx * np.arange(self.n)
        xs.setflags(write=False)
        return xs

    @cached_property
    def p(self) -> np.ndarray:
        """Momentum lattice in increasing order, symmetric up to the Nyquist point."""
        ps = self.dp * (np.arange(self.n) - self.n // 2)
        ps.setflags(write=False)
        return ps

    @cached_property
    def p_raw(self) -> np.ndarray:
        """Momentum lattice in FFT (unshifted) order."""
        ps = 2.0 * math.pi * self.hbar * np.fft.fftfreq(self.n, d=self.dx)
        ps.setflags(write=False)
        return ps


def make_grid(n: int, x0: float, length: float, hbar: float = 1.0) -> Grid:
    return Grid(n=n, x0=float(x0), length=float(length), hbar=float(hbar))


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex amplitudes in the position representation on a Grid."""

    grid: Grid
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=np.complex128)
        if a.shape != (self.grid.n,):
            raise GridMismatch(f"expected {self.grid.n} amplitudes, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.amps) ** 2)) * self.grid.dx)

    def normalized(self) -> "WaveFunction":
        n = self.norm()
        if n == 0.0:
            raise GridMismatch("cannot normalize the zero state")
        return WaveFunction(self.grid, self.amps / n)

    def position_density(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True, eq=False)
class MomentumAmplitudes:
    """Complex amplitudes in the momentum representation, ordered by increasing p."""

    grid: Grid
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=np.complex128)
        if a.shape != (self.grid.n,):
            raise GridMismatch(f"expected {self.grid.n} amplitudes, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def density(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def to_momentum(psi: WaveFunction) -> MomentumAmplitudes:
    g = psi.grid
    raw = np.fft.fft(psi.amps)
    phase = np.exp(-1j * g.p * g.x0 / g.hbar)
    amps = np.fft.fftshift(raw) * phase * (g.dx / math.sqrt(2.0 * math.pi * g.hbar))
    return MomentumAmplitudes(g, amps)


def from_momentum(mom: MomentumAmplitudes) -> WaveFunction:
    g = mom.grid
    phase = np.exp(1j * g.p * g.x0 / g.hbar)
    raw = np.fft.ifftshift(mom.amps * phase) / (g.dx / math.sqrt(2.0 * math.pi * g.hbar))
    return WaveFunction(g, np.fft.ifft(raw))


def inner(psi: WaveFunction, phi: WaveFunction) -> complex:
    """Discrete inner product sum(conj(psi) * phi) * dx."""
    if psi.grid != phi.grid:
        raise GridMismatch("states live on different grids")
    return complex(np.vdot(psi.amps, phi.amps) * psi.grid.dx)


def _translate_spectral(psi: WaveFunction, a: float) -> WaveFunction:
    g = psi.grid
    phase = np.exp(2j * math.pi * np.fft.fftfreq(g.n, d=g.dx) * a)
    return WaveFunction(g, np.fft.ifft(np.fft.fft(psi.amps) * phase))


def translate(psi: WaveFunction, a: float) -> WaveFunction:
    """Shift the state: (translate(psi, a))(x) = psi(x + a), periodic wrap.

    Spectrally this multiplies momentum amplitudes by exp(i p a / hbar); when
    a is an integer multiple of dx the result is an exact circular index roll.
    A packet centered at c moves to c - a.
    """
    g = psi.grid
    m = a / g.dx
    if abs(m - round(m)) < 1e-9:
        return WaveFunction(g, np.roll(psi.amps, -int(round(m))))
    return _translate_spectral(psi, a)
