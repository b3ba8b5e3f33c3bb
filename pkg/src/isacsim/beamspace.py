"""Steering vectors, wavenumber mapping, and the multi-resolution beam codebook.

Angles follow the uniform-planar-array convention: azimuth theta and
elevation phi are boresight-relative, the wavenumber (beamspace) coordinates
are psi_h = pi*sin(theta)*cos(phi) and psi_v = pi*sin(phi).  A codebook at
level ``s`` tiles a rectangular wavenumber coverage into 2^s x 2^s cells,
one beam per cell, 4^s beams total.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .exceptions import OutOfCoverage

# Default coverage: full azimuth beamspace, upper elevation quadrant.
FULL_AZIMUTH = (-math.pi, math.pi)
UPPER_ELEVATION = (0.0, math.pi / 2)


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform planar array with half-wavelength element spacing."""

    n_h: int
    n_v: int
    spacing: float = 0.5

    def __post_init__(self):
        if self.n_h < 1 or self.n_v < 1:
            raise ValueError("element counts must be >= 1")

    @property
    def n_elements(self) -> int:
        return self.n_h * self.n_v


class BeamIndex(NamedTuple):
    """Beam identifier at codebook level ``s``; 1-based indices in [1, 2^s]."""

    s: int
    m_h: int
    m_v: int


def subregion_of(m: int) -> tuple[int, int]:
    """Split a 1-based beam index into (subregion k, within-subregion b)."""
    k = (m + 1) // 2
    b = m - 2 * (k - 1)
    return k, b


def index_of(k: int, b: int) -> int:
    """Inverse of :func:`subregion_of`: m = 2(k-1)+b with b in {1, 2}."""
    return 2 * (k - 1) + b


def to_wavenumber(theta: float, phi: float) -> tuple[float, float]:
    """Map physical angles (rad) to beamspace coordinates (rad)."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("angles must be finite")
    return math.pi * math.sin(theta) * math.cos(phi), math.pi * math.sin(phi)


def steering_from_wavenumber(geometry: ArrayGeometry, psi_h: float, psi_v: float) -> np.ndarray:
    """Unit-norm array response for a beamspace direction.

    Element (i_h, i_v), 0-based, carries phase i_h*psi_h + i_v*psi_v; the
    flattened order is the Kronecker product of the horizontal and vertical
    component vectors (horizontal index varies slowest).
    """
    ph = np.exp(1j * psi_h * np.arange(geometry.n_h))
    pv = np.exp(1j * psi_v * np.arange(geometry.n_v))
    return np.kron(ph, pv) / math.sqrt(geometry.n_elements)


def steering_vector(geometry: ArrayGeometry, theta: float, phi: float) -> np.ndarray:
    """Unit-norm steering vector for physical angles (rad).

    Both angles must lie in [-pi/2, pi/2]; outside that range the
    sin-based phase map is ambiguous and the input is rejected.
    """
    half = math.pi / 2
    if not (-half <= theta <= half and -half <= phi <= half):
        raise ValueError(f"angles out of range: theta={theta}, phi={phi}")
    psi_h, psi_v = to_wavenumber(theta, phi)
    return steering_from_wavenumber(geometry, psi_h, psi_v)


def default_geometry(s: int) -> ArrayGeometry:
    """Per-level array size: 2^(s+1) elements per dimension (8x8 at s=2)."""
    n = 2 ** (s + 1)
    return ArrayGeometry(n, n)


@dataclass
class Codebook:
    """Level-``s`` beam codebook over a rectangular wavenumber coverage.

    Beam weights are steering vectors evaluated at cell midpoints and are
    materialized lazily (large arrays at high levels make eager storage
    wasteful).  A built codebook is immutable apart from the weight cache
    and can be shared across threads.
    """

    geometry: ArrayGeometry
    s: int
    psi_h_range: tuple[float, float]
    psi_v_range: tuple[float, float]
    _weights: dict[BeamIndex, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("codebook level must be >= 1")
        for lo, hi in (self.psi_h_range, self.psi_v_range):
            if not hi > lo:
                raise ValueError("coverage interval must have positive width")

    @property
    def n_per_axis(self) -> int:
        return 2**self.s

    @property
    def n_beams(self) -> int:
        return 4**self.s

    @property
    def beamwidths(self) -> tuple[float, float]:
        """(delta_psi_h, delta_psi_v): coverage width / 2^s per axis."""
        n = self.n_per_axis
        return (
            (self.psi_h_range[1] - self.psi_h_range[0]) / n,
            (self.psi_v_range[1] - self.psi_v_range[0]) / n,
        )

    def beams(self) -> Iterator[BeamIndex]:
        n = self.n_per_axis
        for m_v in range(1, n + 1):
            for m_h in range(1, n + 1):
                yield BeamIndex(self.s, m_h, m_v)

    def is_valid(self, beam: BeamIndex) -> bool:
        n = self.n_per_axis
        return beam.s == self.s and 1 <= beam.m_h <= n and 1 <= beam.m_v <= n

    def center(self, beam: BeamIndex) -> tuple[float, float]:
        """Beam-center wavenumber: cell midpoint, low edge + (m - 0.5)*width."""
        dh, dv = self.beamwidths
        return (
            self.psi_h_range[0] + (beam.m_h - 0.5) * dh,
            self.psi_v_range[0] + (beam.m_v - 0.5) * dv,
        )

    def cell(self, beam: BeamIndex) -> tuple[tuple[float, float], tuple[float, float]]:
        """((psi_h_lo, psi_h_hi), (psi_v_lo, psi_v_hi)) of the beam's cell."""
        dh, dv = self.beamwidths
        h0 = self.psi_h_range[0] + (beam.m_h - 1) * dh
        v0 = self.psi_v_range[0] + (beam.m_v - 1) * dv
        return (h0, h0 + dh), (v0, v0 + dv)

    def contains(self, beam: BeamIndex, psi_h: float, psi_v: float) -> bool:
        """Cell membership; cells are half-open except at the coverage top."""
        (h0, h1), (v0, v1) = self.cell(beam)
        n = self.n_per_axis
        in_h = h0 <= psi_h < h1 or (beam.m_h == n and psi_h == h1)
        in_v = v0 <= psi_v < v1 or (beam.m_v == n and psi_v == v1)
        return in_h and in_v

    def weight(self, beam: BeamIndex) -> np.ndarray:
        """Beamforming weights for a codebook entry (cached)."""
        if not self.is_valid(beam):
            raise ValueError(f"beam {beam} not in level-{self.s} codebook")
        w = self._weights.get(beam)
        if w is None:
            w = steering_from_wavenumber(self.geometry, *self.center(beam))
            w.setflags(write=False)
            self._weights[beam] = w
        return w

    @property
    def entries(self) -> dict[BeamIndex, np.ndarray]:
        """Full BeamIndex -> weights map (materializes every entry)."""
        return {beam: self.weight(beam) for beam in self.beams()}


def build_codebook(
    geometry: ArrayGeometry | None = None,
    s: int = 2,
    psi_h_range: tuple[float, float] = FULL_AZIMUTH,
    psi_v_range: tuple[float, float] = UPPER_ELEVATION,
) -> Codebook:
    """Construct the level-``s`` codebook; geometry defaults to 2^(s+1) per axis."""
    if geometry is None:
        geometry = default_geometry(s)
    return Codebook(geometry, s, tuple(psi_h_range), tuple(psi_v_range))


def _axis_index(psi: float, low: float, width: float, n: int) -> int:
    """Quantize one wavenumber axis to a 1-based cell index.

    A value on a shared cell boundary belongs to the upper cell; values
    within half a cell outside the coverage clamp to the edge beams.
    """
    slack = 0.5 * width
    if psi < low - slack or psi > low + n * width + slack:
        raise OutOfCoverage(f"psi={psi} outside coverage [{low}, {low + n * width}]")
    m = math.floor((psi - low) / width) + 1
    return min(max(m, 1), n)


def beam_of_wavenumber(codebook: Codebook, psi_h: float, psi_v: float) -> BeamIndex:
    """Central beam index for a beamspace direction."""
    dh, dv = codebook.beamwidths
    n = codebook.n_per_axis
    m_h = _axis_index(psi_h, codebook.psi_h_range[0], dh, n)
    m_v = _axis_index(psi_v, codebook.psi_v_range[0], dv, n)
    return BeamIndex(codebook.s, m_h, m_v)


def wavenumber_to_angles(psi_h: float, psi_v: float) -> tuple[float, float]:
    """Invert the wavenumber map; NaN where the direction is unphysical."""
    sin_phi = psi_v / math.pi
    if abs(sin_phi) > 1:
        return math.nan, math.nan
    phi = math.asin(sin_phi)
    cos_phi = math.cos(phi)
    if cos_phi == 0.0:
        return math.nan, phi
    sin_theta = psi_h / (math.pi * cos_phi)
    if abs(sin_theta) > 1:
        return math.nan, phi
    return math.asin(sin_theta), phi


def export_codebook_csv(codebook: Codebook, path) -> None:
    """Write beam centers as CSV: s, m_h, m_v, psi_h, psi_v, theta_deg, phi_deg."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "m_h", "m_v", "psi_h", "psi_v", "theta_deg", "phi_deg"])
        for beam in codebook.beams():
            psi_h, psi_v = codebook.center(beam)
            theta, phi = wavenumber_to_angles(psi_h, psi_v)
            writer.writerow(
                [
                    beam.s,
                    beam.m_h,
                    beam.m_v,
                    repr(psi_h),
                    repr(psi_v),
                    repr(math.degrees(theta)),
                    repr(math.degrees(phi)),
                ]
            )
