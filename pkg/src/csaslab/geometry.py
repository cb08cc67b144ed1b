"""Sonar acquisition geometry for a circular trajectory.

Conventions used throughout the package: x east, y north, z up, seafloor at
z = 0.  The sonar travels a circle of radius ``radius_m`` at height
``altitude_m`` above the floor, centred on ``center_xy``.  Trajectory angles
are measured counter-clockwise from +x.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SonarGeometry:
    """Circular acquisition geometry and waveform parameters.

    Attributes:
        radius_m: circle radius in metres.
        altitude_m: sonar height above the seafloor plane z=0.
        fc_hz: carrier frequency.
        bandwidth_hz: pulse bandwidth.
        c_mps: sound speed.
        n_pulses: number of pulses over the full 360 degrees.
        center_xy: scene centre the circle is drawn around.
    """

    radius_m: float = 75.0
    altitude_m: float = 15.0
    fc_hz: float = 100_000.0
    bandwidth_hz: float = 30_000.0
    c_mps: float = 1500.0
    n_pulses: int = 720
    center_xy: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.radius_m <= 0:
            raise ValueError(f"radius_m must be > 0, got {self.radius_m}")
        if self.altitude_m <= 0:
            raise ValueError(f"altitude_m must be > 0, got {self.altitude_m}")
        if not (self.fc_hz > self.bandwidth_hz / 2 > 0):
            raise ValueError(
                "need fc_hz > bandwidth_hz/2 > 0, got "
                f"fc_hz={self.fc_hz}, bandwidth_hz={self.bandwidth_hz}"
            )
        if self.c_mps <= 0:
            raise ValueError(f"c_mps must be > 0, got {self.c_mps}")
        if self.n_pulses < 3:
            raise ValueError(f"n_pulses must be >= 3, got {self.n_pulses}")

    @property
    def k0(self) -> float:
        """Wavenumber at the carrier frequency, 2*pi*fc/c."""
        return 2.0 * np.pi * self.fc_hz / self.c_mps

    @property
    def wavelength_m(self) -> float:
        return self.c_mps / self.fc_hz

    @property
    def grazing_rad(self) -> float:
        """Grazing angle at the scene centre (line of sight vs floor)."""
        return float(np.arctan2(self.altitude_m, self.radius_m))

    @property
    def max_image_pitch_m(self) -> float:
        """Largest alias-free image pixel pitch.

        The focused image's spatial spectrum reaches the two-way wavenumber
        of the upper band edge, 2*pi*(2*fc + bw)/c; sampling coarser than
        half that wavelength folds band-edge energy across the spectral
        Nyquist square into opposite-look sectors.
        """
        return self.c_mps / (2.0 * (2.0 * self.fc_hz + self.bandwidth_hz))

    def min_pulses(self, scene_radius_m: float) -> int:
        """Azimuth sampling bound: pulses needed for an alias-free circle.

        Adjacent pulses must advance the two-way phase to the scene edge by
        less than pi: n >= 8*pi*rho*cos(grazing)/lambda (band edge included).
        """
        lam_edge = self.c_mps / (self.fc_hz + self.bandwidth_hz / 2.0)
        n = 8.0 * np.pi * scene_radius_m * np.cos(self.grazing_rad) / lam_edge
        return int(np.ceil(n))

    @property
    def slant_range_center_m(self) -> float:
        """Slant range from any sonar position to the scene centre."""
        return float(np.hypot(self.radius_m, self.altitude_m))

    def pulse_angles_rad(self) -> np.ndarray:
        """Trajectory angles of the pulses, evenly spaced over [0, 2*pi)."""
        return np.linspace(0.0, 2.0 * np.pi, self.n_pulses, endpoint=False)

    def sonar_position(self, angle_rad) -> np.ndarray:
        """Sonar position(s) for trajectory angle(s), shape (..., 3)."""
        angle_rad = np.asarray(angle_rad, dtype=float)
        cx, cy = self.center_xy
        pos = np.stack(
            [
                cx + self.radius_m * np.cos(angle_rad),
                cy + self.radius_m * np.sin(angle_rad),
                np.broadcast_to(self.altitude_m, angle_rad.shape).copy(),
            ],
            axis=-1,
        )
        return pos

    def to_dict(self) -> dict:
        return {
            "radius_m": self.radius_m,
            "altitude_m": self.altitude_m,
            "fc_hz": self.fc_hz,
            "bandwidth_hz": self.bandwidth_hz,
            "c_mps": self.c_mps,
            "n_pulses": self.n_pulses,
            "center_xy": list(self.center_xy),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SonarGeometry":
        d = dict(d)
        if "center_xy" in d:
            d["center_xy"] = tuple(d["center_xy"])
        return cls(**d)
