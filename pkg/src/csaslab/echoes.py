"""Range-compressed echo simulation for a circular trajectory.

Each pulse yields one complex range line

    s_p(r) = sum_i v_i(p) * a_i * pc(r - d_i(p)) * exp(-j*2*k0*d_i(p))

where d_i(p) is the slant range from the pulse position to scatterer i,
pc is the band-limited range-compression kernel (real, peak 1, -3 dB width
about c / (2*bandwidth)) and v_i(p) is the geometric visibility factor:
``eps_shadow`` when the segment sonar->scatterer crosses an occupied target
voxel, else 1.

The synthesis runs in the wavenumber domain: the in-band spectral comb is
accumulated per pulse with a geometric phase progression and transformed to
range samples by a zero-padded inverse FFT, which evaluates the periodic
kernel exactly on the range grid.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import GeometryError
from .geometry import SonarGeometry
from .scene import Scene
from .shadows import segment_blocked


@dataclass
class EchoSet:
    """Range-compressed pulses on a common range axis.

    ``samples`` has shape (n_pulses, n_ranges); ``ranges_m`` is the slant
    range of each sample.  The range axis is periodic with period
    ``window_m`` (FFT synthesis), which also bounds the unambiguous window.
    """

    geometry: SonarGeometry
    pulse_angles_rad: np.ndarray
    ranges_m: np.ndarray
    samples: np.ndarray

    def __post_init__(self):
        self.pulse_angles_rad = np.asarray(self.pulse_angles_rad, dtype=float)
        self.ranges_m = np.asarray(self.ranges_m, dtype=float)
        ang = self.pulse_angles_rad
        if ang.ndim != 1 or (np.diff(ang) <= 0).any():
            raise ValueError("pulse_angles_rad must be strictly increasing")
        if ang.size and (ang[0] < 0 or ang[-1] >= 2 * np.pi):
            raise ValueError("pulse angles must lie in [0, 2*pi)")
        step = float(self.ranges_m[1] - self.ranges_m[0])
        nyq = self.geometry.c_mps / (2.0 * self.geometry.bandwidth_hz)
        if step > nyq * (1 + 1e-9):
            raise ValueError(
                f"range step {step:.4g} m exceeds c/(2*bandwidth) = {nyq:.4g} m"
            )
        if self.samples.shape != (ang.size, self.ranges_m.size):
            raise ValueError("samples shape must be (n_pulses, n_ranges)")

    @property
    def window_m(self) -> float:
        dr = float(self.ranges_m[1] - self.ranges_m[0])
        return dr * self.ranges_m.size


def _slant_span(scene: Scene, geom: SonarGeometry) -> tuple[float, float]:
    """Min/max slant range from the trajectory to any scene point."""
    hx, hy = scene.extent_m[0] / 2.0, scene.extent_m[1] / 2.0
    corners = np.array(
        [[sx * hx, sy * hy] for sx in (-1, 1) for sy in (-1, 1)]
    )
    ground_far = geom.radius_m + np.hypot(hx, hy)
    ground_near = max(0.0, geom.radius_m - np.hypot(hx, hy))
    zmax = scene.target.max_z() if scene.target is not None else 0.0
    for pos, _ in scene.point_scatterers:
        zmax = max(zmax, float(np.asarray(pos)[2]))
    d_min = np.hypot(ground_near, geom.altitude_m - zmax)
    d_min = min(d_min, np.hypot(ground_near, geom.altitude_m))
    d_max = np.hypot(ground_far, geom.altitude_m)
    # corner positions bound the ground range more tightly than the circle
    del corners
    return float(d_min), float(d_max)


def simulate_echoes(
    scene: Scene,
    geom: SonarGeometry,
    eps_shadow: float = 0.0,
    range_oversample: int = 4,
    window_margin_m: float = 1.5,
    range_window_m: float | None = None,
) -> EchoSet:
    """Simulate range-compressed echoes of the scene over the full circle.

    Raises GeometryError when the scene's slant-range span does not fit in
    the (explicitly requested) unambiguous range window.
    """
    if range_oversample < 2:
        raise ValueError("range_oversample must be >= 2")
    d_min, d_max = _slant_span(scene, geom)
    span = (d_max - d_min) + 2.0 * window_margin_m
    if range_window_m is None:
        window = span
    else:
        window = float(range_window_m)
        if window < span:
            raise GeometryError(
                f"scene slant span {span:.2f} m (incl. margin) exceeds the "
                f"unambiguous range window {window:.2f} m"
            )

    c, bw = geom.c_mps, geom.bandwidth_hz
    # in-band comb: kappa_q = q * 2*pi/window for |q| <= Q covers the
    # two-way wavenumber band +-2*pi*bw/c
    q_max = max(1, int(np.floor(bw * window / c)))
    n_band = 2 * q_max + 1
    dr = c / (2.0 * bw * range_oversample)
    n_ranges = int(np.ceil(window / dr))
    n_ranges = max(n_ranges, 2 * n_band)
    dr = window / n_ranges
    r0 = d_min - window_margin_m
    ranges = r0 + dr * np.arange(n_ranges)

    pos, amp = scene.all_scatterers()
    angles = geom.pulse_angles_rad()
    samples = np.zeros((geom.n_pulses, n_ranges), dtype=np.complex128)
    if pos.shape[0]:
        k0 = geom.k0
        dkap = 2.0 * np.pi / window
        spec = np.zeros(n_ranges, dtype=np.complex128)
        for p, ang in enumerate(angles):
            s_pos = geom.sonar_position(ang)
            delta = pos - s_pos[None, :]
            d = np.sqrt((delta * delta).sum(axis=1))
            vis = np.where(
                segment_blocked(s_pos, pos, scene.target), eps_shadow, 1.0
            )
            w = amp * vis * np.exp(-1j * (2.0 * k0) * d)
            if not w.any():
                continue
            # geometric progression over the comb: q from -Q to +Q
            g = np.exp(-1j * dkap * (d - r0))
            cur = w * np.exp(1j * dkap * q_max * (d - r0))
            spec[:] = 0.0
            for q in range(-q_max, q_max + 1):
                spec[q % n_ranges] = cur.sum()
                cur *= g
            samples[p] = np.fft.ifft(spec) * (n_ranges / n_band)
    return EchoSet(geom, angles, ranges, samples)


class EchoSimulator(BaseEstimator, TransformerMixin):
    """Transformer turning a Scene into an EchoSet for a fixed geometry."""

    def __init__(
        self,
        geometry=None,
        eps_shadow=0.0,
        range_oversample=4,
        window_margin_m=1.5,
        range_window_m=None,
    ):
        self.geometry = geometry
        self.eps_shadow = eps_shadow
        self.range_oversample = range_oversample
        self.window_margin_m = window_margin_m
        self.range_window_m = range_window_m

    def fit(self, X=None, y=None):
        return self

    def transform(self, X: Scene) -> EchoSet:
        geom = self.geometry if self.geometry is not None else SonarGeometry()
        return simulate_echoes(
            X,
            geom,
            eps_shadow=self.eps_shadow,
            range_oversample=self.range_oversample,
            window_margin_m=self.window_margin_m,
            range_window_m=self.range_window_m,
        )
