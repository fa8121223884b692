"""Classical reference propagator: FFT, transfer-function multiply, inverse FFT.

Also owns the grid bookkeeping shared by the quantum and classical paths,
and the normalized root-mean-square intensity error used to compare them
against analytic references.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``n_points = 2**n`` samples with spacing ``dx``.

    Array slot ``b`` holds the sample at ``x = gamma * dx`` where ``gamma``
    is the two's-complement value of ``b``: slots ``0 .. N/2-1`` cover
    ``x >= 0`` and slots ``N/2 .. N-1`` cover the negative half.  The
    frequency axis uses the same layout with spacing ``d_alpha``, so real
    and Fourier space never need reshuffling.
    """

    n_points: int
    dx: float

    def __post_init__(self) -> None:
        if not is_power_of_two(self.n_points) or self.n_points < 2:
            raise ValueError(f"n_points must be a power of two >= 2, got {self.n_points}")
        if not (self.dx > 0.0):
            raise ValueError(f"dx must be positive, got {self.dx}")

    @classmethod
    def from_qubits(cls, n_qubits: int, length: float) -> "GridSpec":
        """Grid of ``2**n_qubits`` points spanning ``length`` meters."""
        n_points = 1 << n_qubits
        return cls(n_points, length / n_points)

    @property
    def n_qubits(self) -> int:
        return self.n_points.bit_length() - 1

    @property
    def length(self) -> float:
        return self.n_points * self.dx

    @property
    def d_alpha(self) -> float:
        return 2.0 * math.pi / (self.n_points * self.dx)

    def signed_indices(self) -> np.ndarray:
        """Two's-complement value of every array slot, in slot order."""
        idx = np.arange(self.n_points, dtype=np.int64)
        return np.where(idx < self.n_points // 2, idx, idx - self.n_points)

    def coordinates(self) -> np.ndarray:
        """Physical coordinate of every array slot (meters)."""
        return self.signed_indices() * self.dx

    def frequencies(self) -> np.ndarray:
        """Transverse wavenumber of every array slot (rad/m)."""
        return self.signed_indices() * self.d_alpha


@dataclass(frozen=True)
class Field:
    """Complex field samples on one grid (1D) or two grids (2D).

    For 2D fields ``grids = (grid_x, grid_y)`` and ``values[iy, ix]``
    stores the sample at ``(x[ix], y[iy])``; flattening row-major therefore
    puts the x index in the low bits, matching the qubit layout of the
    two-axis quantum register.
    """

    grids: tuple[GridSpec, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        if len(self.grids) not in (1, 2):
            raise ValueError("Field supports one or two axes")
        values = np.asarray(self.values, dtype=np.complex128)
        expected = tuple(g.n_points for g in reversed(self.grids))
        if values.shape != expected:
            raise ValueError(f"values shape {values.shape} does not match grids {expected}")
        object.__setattr__(self, "values", values)

    @property
    def ndim(self) -> int:
        return len(self.grids)

    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def power(self) -> float:
        return float(np.sum(self.intensity()))


def _check_propagation_args(wavelength: float, z: float) -> float:
    if not (wavelength > 0.0):
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    if z < 0.0:
        raise ValueError(f"propagation distance must be non-negative, got {z}")
    return 2.0 * math.pi / wavelength


def propagate_1d(field: Field, wavelength: float, z: float) -> Field:
    """Paraxial free-space propagation of a 1D field by distance ``z``.

    Forward transform uses the ``exp(-i alpha x)`` convention, each
    frequency is multiplied by ``exp(-i alpha**2 z / (2 k))``, and the
    inverse transform returns to real space.  The constant longitudinal
    phase ``exp(i k z)`` is dropped; total power is conserved.
    """
    if field.ndim != 1:
        raise ValueError("propagate_1d expects a 1D field")
    k = _check_propagation_args(wavelength, z)
    grid = field.grids[0]
    alpha = grid.frequencies()
    spectrum = np.fft.fft(field.values, norm="ortho")
    spectrum *= np.exp(-1j * alpha**2 * z / (2.0 * k))
    return Field(field.grids, np.fft.ifft(spectrum, norm="ortho"))


def propagate_2d(field: Field, wavelength: float, z: float) -> Field:
    """Paraxial propagation of a 2D field; transfer phase uses alpha**2 + beta**2."""
    if field.ndim != 2:
        raise ValueError("propagate_2d expects a 2D field")
    k = _check_propagation_args(wavelength, z)
    grid_x, grid_y = field.grids
    alpha = grid_x.frequencies()[np.newaxis, :]
    beta = grid_y.frequencies()[:, np.newaxis]
    spectrum = np.fft.fft2(field.values, norm="ortho")
    spectrum *= np.exp(-1j * (alpha**2 + beta**2) * z / (2.0 * k))
    return Field(field.grids, np.fft.ifft2(spectrum, norm="ortho"))


def rmse(i_ref, i_num) -> float:
    """Root-mean-square error between two intensity distributions.

    Both inputs are first normalized to unit total intensity so that
    sampled histograms and analytic curves with arbitrary scale are
    comparable; the result is ``sqrt(sum((ref - num)**2) / sum(ref))``.
    """
    ref = np.asarray(i_ref, dtype=float).ravel()
    num = np.asarray(i_num, dtype=float).ravel()
    if ref.shape != num.shape:
        raise ValueError(f"length mismatch: {ref.shape} vs {num.shape}")
    ref_total = ref.sum()
    num_total = num.sum()
    if not (ref_total > 0.0):
        raise ValueError("reference intensity must have positive total")
    if not (num_total > 0.0):
        raise ValueError("numerical intensity must have positive total")
    ref = ref / ref_total
    num = num / num_total
    return float(np.sqrt(np.sum((ref - num) ** 2) / np.sum(ref)))
