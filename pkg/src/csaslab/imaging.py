"""Coherent image formation and image-domain products.

Backprojection forms the full-circle complex image; sub-aperture images are
extracted from it by masking an angular sector of the 2D spatial spectrum.

Spectrum-angle convention (also recorded in container headers): the spectral
angle of a sample at wavenumber (kx, ky) is the direction of arrival
atan2(-ky, -kx), i.e. the horizontal direction pointing from the scene
toward the illuminator.  With that convention the energy contributed by the
sonar at trajectory angle phi sits at spectral angle phi, so the sector mask
for look angle theta0 is centred on theta0 itself.

All 2D rasters in this package are indexed [ix, iy] with
x = origin_x + ix*dx, y = origin_y + iy*dy.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .echoes import EchoSet
from .errors import GeometryError
from .geometry import SonarGeometry


@dataclass(frozen=True)
class ImageGrid:
    """Pixel raster on the seafloor plane; origin is the centre of pixel (0,0)."""

    nx: int
    ny: int
    dx_m: float
    dy_m: float
    origin_xy: tuple[float, float]

    def __post_init__(self):
        if self.nx <= 0 or self.ny <= 0:
            raise ValueError("nx, ny must be > 0")
        if self.dx_m <= 0 or self.dy_m <= 0:
            raise ValueError("dx_m, dy_m must be > 0")

    @classmethod
    def centered(cls, extent_m: float, n: int, center_xy=(0.0, 0.0)) -> "ImageGrid":
        d = extent_m / n
        return cls(
            n, n, d, d,
            (center_xy[0] - (n - 1) / 2.0 * d, center_xy[1] - (n - 1) / 2.0 * d),
        )

    def x_axis(self) -> np.ndarray:
        return self.origin_xy[0] + np.arange(self.nx) * self.dx_m

    def y_axis(self) -> np.ndarray:
        return self.origin_xy[1] + np.arange(self.ny) * self.dy_m

    def center_xy(self) -> tuple[float, float]:
        return (
            self.origin_xy[0] + (self.nx - 1) / 2.0 * self.dx_m,
            self.origin_xy[1] + (self.ny - 1) / 2.0 * self.dy_m,
        )

    def world_to_pixel(self, xy: np.ndarray) -> np.ndarray:
        """Fractional pixel coordinates (n, 2) for world points (n, 2)."""
        xy = np.atleast_2d(xy)
        return np.column_stack([
            (xy[:, 0] - self.origin_xy[0]) / self.dx_m,
            (xy[:, 1] - self.origin_xy[1]) / self.dy_m,
        ])


@dataclass
class ComplexImage:
    """Complex field over an ImageGrid, with optional aspect metadata.

    ``samples`` has shape (nx, ny), indexed [ix, iy].  ``aspect`` is None
    for the full-circle image and (theta0_deg, width_deg) for sub-aperture
    images.  ``y0_m`` annotates the target echo's down-range line (metres,
    relative to the image centre along the look direction) for shadow
    enhancement.
    """

    grid: ImageGrid
    samples: np.ndarray
    geom: SonarGeometry | None = None
    y0_m: float | None = None
    aspect: tuple[float, float] | None = None

    def __post_init__(self):
        self.samples = np.asarray(self.samples)
        if self.samples.shape != (self.grid.nx, self.grid.ny):
            raise ValueError(
                f"samples shape {self.samples.shape} != grid ({self.grid.nx}, {self.grid.ny})"
            )
        if self.aspect is not None and not self.aspect[1] > 0:
            raise ValueError("aspect width_deg must be > 0")

    @property
    def nx(self) -> int:
        return self.grid.nx

    @property
    def ny(self) -> int:
        return self.grid.ny

    def intensity(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    def with_samples(self, samples, **meta) -> "ComplexImage":
        out = replace(self, samples=samples)
        for k, v in meta.items():
            setattr(out, k, v)
        return out


@dataclass
class SubApertureStack:
    """Ordered per-aspect images on one common grid."""

    images: list[ComplexImage]
    angles_deg: np.ndarray
    width_deg: float
    enhanced: bool = False

    def __post_init__(self):
        self.angles_deg = np.asarray(self.angles_deg, dtype=float)
        if len(self.images) != self.angles_deg.size:
            raise ValueError("one image per angle required")
        if self.angles_deg.size:
            if (np.diff(self.angles_deg) <= 0).any():
                raise ValueError("angles_deg must be strictly increasing")
            if self.angles_deg[0] < 0 or self.angles_deg[-1] >= 360.0:
                raise ValueError("angles_deg must lie in [0, 360)")
        g0 = self.images[0].grid if self.images else None
        for im in self.images:
            if im.grid != g0:
                raise ValueError("all stack images must share one grid")

    @property
    def grid(self) -> ImageGrid:
        return self.images[0].grid

    def __len__(self) -> int:
        return len(self.images)

    def nearest_angle(self, angle_deg: float) -> int:
        """Index of the stack angle nearest to ``angle_deg`` (circular)."""
        d = np.abs((self.angles_deg - angle_deg + 180.0) % 360.0 - 180.0)
        return int(np.argmin(d))


# ---------------------------------------------------------------------------
# backprojection
# ---------------------------------------------------------------------------
def _upsample_profiles(samples: np.ndarray, factor: int) -> np.ndarray:
    """Band-limited upsampling of range profiles (rows) by FFT zero padding."""
    n = samples.shape[-1]
    spec = np.fft.fft(samples, axis=-1)
    half = n // 2
    out = np.zeros(samples.shape[:-1] + (n * factor,), dtype=np.complex128)
    out[..., :half] = spec[..., :half]
    out[..., -(n - half):] = spec[..., half:]
    return np.fft.ifft(out, axis=-1) * factor


def backproject(
    echoes: EchoSet,
    grid: ImageGrid,
    upsample: int = 8,
    y0_m: float | None = None,
) -> ComplexImage:
    """Time-domain backprojection of range-compressed echoes onto the grid.

    I(x, y) = sum_p s_p(d_p(x, y)) * exp(+j*2*k0*d_p(x, y)); the range
    profile is band-limited-upsampled then linearly interpolated.
    """
    geom = echoes.geometry
    k0 = geom.k0
    r = echoes.ranges_m
    dr = float(r[1] - r[0])
    up = _upsample_profiles(echoes.samples, upsample)
    dr_up = dr / upsample
    n_up = up.shape[-1]

    gx, gy = np.meshgrid(grid.x_axis(), grid.y_axis(), indexing="ij")
    pix = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(gx.size)])
    img = np.zeros(gx.size, dtype=np.complex128)
    two_k0 = 2.0 * k0
    for p, ang in enumerate(echoes.pulse_angles_rad):
        s_pos = geom.sonar_position(ang)
        delta = pix - s_pos[None, :]
        d = np.sqrt((delta * delta).sum(axis=1))
        f = (d - r[0]) / dr_up
        if f.min() < 0 or f.max() > n_up - 1:
            raise GeometryError(
                "image grid falls outside the simulated range window "
                f"(pulse {p}: slant range {d.min():.2f}..{d.max():.2f} m, "
                f"window {r[0]:.2f}..{r[0] + dr * len(r):.2f} m)"
            )
        i0 = f.astype(np.intp)
        frac = f - i0
        prof = up[p]
        val = prof[i0] * (1.0 - frac) + prof[np.minimum(i0 + 1, n_up - 1)] * frac
        img += val * np.exp(1j * two_k0 * d)
    return ComplexImage(grid, img.reshape(grid.nx, grid.ny), geom=geom, y0_m=y0_m)


# ---------------------------------------------------------------------------
# sub-aperture extraction by spectral masking
# ---------------------------------------------------------------------------
def spectrum_angles_deg(grid: ImageGrid) -> np.ndarray:
    """Direction-of-arrival angle of every 2D FFT sample, in [0, 360)."""
    kx = 2.0 * np.pi * np.fft.fftfreq(grid.nx, grid.dx_m)
    ky = 2.0 * np.pi * np.fft.fftfreq(grid.ny, grid.dy_m)
    kxg, kyg = np.meshgrid(kx, ky, indexing="ij")
    return np.degrees(np.arctan2(-kyg, -kxg)) % 360.0


def sector_mask(
    grid: ImageGrid,
    theta0_deg: float,
    width_deg: float,
    edge: str = "taper",
    taper_frac: float = 0.1,
) -> np.ndarray:
    """Angular sector weight over the FFT grid.

    ``edge='boxcar'`` gives a hard half-open sector [theta0 - w/2,
    theta0 + w/2), so sectors stepped by exactly ``width_deg`` tile the
    spectrum; ``edge='taper'`` applies a raised-cosine roll-off over
    ``taper_frac`` of the sector width inside its edges.  A width of 360
    or more keeps every sample (identity mask).
    """
    if width_deg <= 0:
        raise ValueError("width_deg must be > 0")
    if width_deg >= 360.0:
        return np.ones((grid.nx, grid.ny))
    ang = spectrum_angles_deg(grid)
    d = (ang - theta0_deg + 180.0) % 360.0 - 180.0
    half = width_deg / 2.0
    if edge == "boxcar":
        return ((d >= -half) & (d < half)).astype(float)
    if edge != "taper":
        raise ValueError(f"unknown edge mode {edge!r}")
    t = max(taper_frac, 0.0) * width_deg
    if t == 0.0:
        return ((d >= -half) & (d < half)).astype(float)
    a = np.abs(d)
    w = np.zeros_like(a)
    w[a <= half - t] = 1.0
    ramp = (a > half - t) & (a < half)
    w[ramp] = 0.5 * (1.0 + np.cos(np.pi * (a[ramp] - (half - t)) / t))
    return w


def extract_subaperture(
    full: ComplexImage,
    theta0_deg: float,
    width_deg: float,
    edge: str = "taper",
    taper_frac: float = 0.1,
    _spectrum: np.ndarray | None = None,
) -> ComplexImage:
    """Sub-aperture image for the sector of looks centred on ``theta0_deg``."""
    if full.aspect is not None:
        raise ValueError("input must be the full-circle image (aspect=None)")
    if not 0 < width_deg <= 360:
        raise ValueError("need 0 < width_deg <= 360")
    if not np.isfinite(full.samples).all():
        raise ValueError("input image contains non-finite samples")
    spec = np.fft.fft2(full.samples) if _spectrum is None else _spectrum
    mask = sector_mask(full.grid, theta0_deg, width_deg, edge, taper_frac)
    out = np.fft.ifft2(spec * mask)
    return ComplexImage(
        full.grid, out, geom=full.geom, y0_m=full.y0_m,
        aspect=(theta0_deg % 360.0, float(width_deg)),
    )


def build_stack(
    full: ComplexImage,
    step_deg: float,
    width_deg: float,
    edge: str = "taper",
    taper_frac: float = 0.1,
) -> SubApertureStack:
    """Per-aspect stack at angles 0, step, 2*step, ... covering the circle."""
    n = 360.0 / step_deg
    if abs(n - round(n)) > 1e-9:
        raise ValueError(f"step_deg must divide 360, got {step_deg}")
    n = int(round(n))
    spec = np.fft.fft2(full.samples)
    angles = step_deg * np.arange(n)
    images = [
        extract_subaperture(full, a, width_deg, edge, taper_frac, _spectrum=spec)
        for a in angles
    ]
    return SubApertureStack(images, angles, float(width_deg), enhanced=False)


# ---------------------------------------------------------------------------
# multi-look and colour-by-aspect
# ---------------------------------------------------------------------------
def multilook(stack: SubApertureStack) -> np.ndarray:
    """Pixelwise mean of |image|^2 across the stack."""
    if not len(stack):
        raise ValueError("empty stack")
    acc = np.zeros((stack.grid.nx, stack.grid.ny))
    for im in stack.images:
        acc += im.intensity()
    return acc / len(stack)


def _hsv_to_rgb(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorised HSV->RGB, all components in [0, 1]; returns (..., 3)."""
    i = np.floor(h * 6.0).astype(int) % 6
    f = h * 6.0 - np.floor(h * 6.0)
    p = v * (1.0 - s)
    q = v * (1.0 - f * s)
    t = v * (1.0 - (1.0 - f) * s)
    rgb = np.zeros(h.shape + (3,))
    for idx, comps in enumerate([(v, t, p), (q, v, p), (p, v, t), (p, q, v), (t, p, v), (v, p, q)]):
        m = i == idx
        for c in range(3):
            rgb[..., c][m] = comps[c][m]
    return rgb


def color_by_aspect(
    stack: SubApertureStack,
    sat_lo: float = 1.0,
    sat_hi: float | None = None,
) -> np.ndarray:
    """Hue = angle of the dominant look, value = normalised multilook
    intensity, saturation = affinely mapped dominance ratio.

    The dominance ratio max/mean is mapped from [sat_lo, sat_hi] (default
    [1, n_looks]) onto [0, 1] and clamped.  Returns (nx, ny, 3) RGB floats.
    """
    if not len(stack):
        raise ValueError("empty stack")
    mags = np.stack([np.abs(im.samples) for im in stack.images])
    arg = np.argmax(mags, axis=0)
    hue = stack.angles_deg[arg] / 360.0
    inten = np.mean(mags ** 2, axis=0)
    vmax = inten.max()
    value = inten / vmax if vmax > 0 else inten
    mean_mag2 = np.maximum(inten, 1e-300)
    dom = np.max(mags, axis=0) ** 2 / mean_mag2
    hi = float(len(stack)) if sat_hi is None else sat_hi
    sat = np.clip((dom - sat_lo) / max(hi - sat_lo, 1e-300), 0.0, 1.0)
    return _hsv_to_rgb(hue, sat, value)


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------
class Backprojector(BaseEstimator, TransformerMixin):
    """EchoSet -> ComplexImage on a fixed grid."""

    def __init__(self, grid=None, upsample=8, y0_m=None):
        self.grid = grid
        self.upsample = upsample
        self.y0_m = y0_m

    def fit(self, X=None, y=None):
        return self

    def transform(self, X: EchoSet) -> ComplexImage:
        if self.grid is None:
            raise ValueError("Backprojector requires a grid")
        return backproject(X, self.grid, upsample=self.upsample, y0_m=self.y0_m)


class SubApertureFilter(BaseEstimator, TransformerMixin):
    """ComplexImage -> one sub-aperture ComplexImage."""

    def __init__(self, theta0_deg=0.0, width_deg=12.0, edge="taper", taper_frac=0.1):
        self.theta0_deg = theta0_deg
        self.width_deg = width_deg
        self.edge = edge
        self.taper_frac = taper_frac

    def fit(self, X=None, y=None):
        return self

    def transform(self, X: ComplexImage) -> ComplexImage:
        return extract_subaperture(
            X, self.theta0_deg, self.width_deg, self.edge, self.taper_frac
        )


class StackBuilder(BaseEstimator, TransformerMixin):
    """ComplexImage -> SubApertureStack over the full circle."""

    def __init__(self, step_deg=1.0, width_deg=12.0, edge="taper", taper_frac=0.1):
        self.step_deg = step_deg
        self.width_deg = width_deg
        self.edge = edge
        self.taper_frac = taper_frac

    def fit(self, X=None, y=None):
        return self

    def transform(self, X: ComplexImage) -> SubApertureStack:
        return build_stack(X, self.step_deg, self.width_deg, self.edge, self.taper_frac)
