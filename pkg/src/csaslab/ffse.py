"""Fixed-focus shadow enhancement of complex sub-aperture images.

A sub-aperture image is rotated so the cross-range axis of its central look
becomes the transform axis, every range line beyond the focus range y0 is
multiplied in the cross-range spectral domain by the unit-magnitude filter

    exact:          h(kx, y) = exp(-j * dy * sqrt(4*k0^2 - kx^2))
    small_aperture: h(kx, y) = exp(-j * dy * kx^2 / (4*k0))

with dy = y - y0, and the image is rotated back.  The filter realigns the
shadow cast by each look of the aperture onto the central look's shadow, so
the coherent sum keeps a sharp, dark shadow.

Shadow-shift predictors for linear and circular trajectories are provided
for validation: dx = dy*tan(theta) (linear), dx ~ dy*sin(theta) and
dy_shift ~ dy*(1 - cos(theta)) (circular).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import map_coordinates
from sklearn.base import BaseEstimator, TransformerMixin

from .imaging import ComplexImage, SubApertureStack

APERTURE_VALIDITY_LIMIT_DEG = 15.0


@dataclass(frozen=True)
class FfseParams:
    """Shadow-enhancement parameters.

    ``y0_m`` is the focus (echo) range: the down-range coordinate of the
    target echo line, in metres relative to the image centre along the look
    direction.  ``variant`` selects the exact or the small-aperture filter.
    ``rotation_interp`` is the spline order used for the two rotations.
    """

    y0_m: float
    variant: str = "exact"
    rotation_interp: int = 1

    def __post_init__(self):
        if self.variant not in ("exact", "small_aperture"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if not np.isfinite(self.y0_m):
            raise ValueError("y0_m must be finite")


@dataclass(frozen=True)
class ShadowShift:
    """Predicted shadow displacement (metres) in the first look's frame."""

    dx_m: float
    dy_m: float

    def __post_init__(self):
        if not (np.isfinite(self.dx_m) and np.isfinite(self.dy_m)):
            raise ValueError("shadow shift must be finite")


def ffse_filter_gain(k_x, dy_m, k0: float, variant: str = "exact") -> np.ndarray:
    """Unit-magnitude spectral gain; zero in the evanescent region.

    The exact phase is -dy*sqrt(4*k0^2 - kx^2); samples with |k_x| >= 2*k0
    carry no propagating energy and are masked to zero.  The small-aperture
    variant is the quadratic expansion of the exact phase with the
    range-independent bulk term -2*k0*dy dropped, i.e. +dy*kx^2/(4*k0),
    which keeps the two variants within a bulk phase plus O((kx/k0)^4)
    of each other.
    """
    k_x = np.asarray(k_x, dtype=float)
    dy = np.asarray(dy_m, dtype=float)
    if variant == "exact":
        rad = 4.0 * k0 * k0 - k_x * k_x
        prop = rad > 0.0
        gain = np.where(
            prop,
            np.exp(-1j * dy * np.sqrt(np.where(prop, rad, 0.0))),
            0.0,
        )
        return gain
    if variant == "small_aperture":
        return np.exp(1j * dy * k_x * k_x / (4.0 * k0))
    raise ValueError(f"unknown variant {variant!r}")


def _rotation_basis(look_angle_deg: float) -> tuple[np.ndarray, np.ndarray]:
    """Cross-range (u) and down-range (v) unit vectors for a look angle.

    v points from the sonar at trajectory angle ``look_angle_deg`` through
    the scene centre (increasing v = increasing range); u completes a
    right-handed (u, v) frame.
    """
    t = np.radians(look_angle_deg)
    v_hat = np.array([-np.cos(t), -np.sin(t)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    return u_hat, v_hat


def _resample(samples: np.ndarray, px: np.ndarray, py: np.ndarray, order: int) -> np.ndarray:
    re = map_coordinates(samples.real, [px, py], order=order, cval=0.0)
    im = map_coordinates(samples.imag, [px, py], order=order, cval=0.0)
    return re + 1j * im


def image_carrier_wavenumber(img: ComplexImage) -> float:
    """Spatial carrier of the focused image: 2*k0*cos(grazing).

    A sub-aperture image is a narrowband field riding on the spectral
    annulus; interpolating it directly would sample that carrier near its
    Nyquist rate.  Rotations therefore demodulate to baseband, resample the
    slow envelope and remodulate.
    """
    if img.geom is None:
        raise ValueError("image carries no geometry (carrier unknown)")
    return 2.0 * img.geom.k0 * float(np.cos(img.geom.grazing_rad))


def rotate_to_look(img: ComplexImage, look_angle_deg: float, order: int = 1) -> np.ndarray:
    """Resample the image onto the (cross-range, down-range) frame of a look.

    The output array R[iu, iv] shares the input's pixel counts and pitch;
    (u, v) = 0 at the image centre and the returned field keeps its carrier
    (which is exp(+j*kc*v) in this frame).  Requires square pixels.
    """
    g = img.grid
    if abs(g.dx_m - g.dy_m) > 1e-12 * g.dx_m:
        raise ValueError("rotation requires square pixels (dx == dy)")
    kc = image_carrier_wavenumber(img)
    u_hat, v_hat = _rotation_basis(look_angle_deg)
    cx, cy = g.center_xy()
    # demodulate: carrier propagates along +v_hat in the world frame
    wx0, wy0 = np.meshgrid(g.x_axis(), g.y_axis(), indexing="ij")
    v_world = (wx0 - cx) * v_hat[0] + (wy0 - cy) * v_hat[1]
    env = img.samples * np.exp(-1j * kc * v_world)

    u = (np.arange(g.nx) - (g.nx - 1) / 2.0) * g.dx_m
    v = (np.arange(g.ny) - (g.ny - 1) / 2.0) * g.dy_m
    uu, vv = np.meshgrid(u, v, indexing="ij")
    wx = cx + uu * u_hat[0] + vv * v_hat[0]
    wy = cy + uu * u_hat[1] + vv * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    out = _resample(env, px, py, order)
    out *= np.exp(1j * kc * vv)
    return out


def rotate_from_look(
    rotated: np.ndarray, img: ComplexImage, look_angle_deg: float, order: int = 1
) -> np.ndarray:
    """Inverse of :func:`rotate_to_look` (up to interpolation loss)."""
    g = img.grid
    kc = image_carrier_wavenumber(img)
    u_hat, v_hat = _rotation_basis(look_angle_deg)
    cx, cy = g.center_xy()
    v = (np.arange(g.ny) - (g.ny - 1) / 2.0) * g.dy_m
    env = rotated * np.exp(-1j * kc * v)[None, :]

    wx, wy = np.meshgrid(g.x_axis(), g.y_axis(), indexing="ij")
    u_w = (wx - cx) * u_hat[0] + (wy - cy) * u_hat[1]
    v_w = (wx - cx) * v_hat[0] + (wy - cy) * v_hat[1]
    pu = u_w / g.dx_m + (g.nx - 1) / 2.0
    pv = v_w / g.dy_m + (g.ny - 1) / 2.0
    out = _resample(env, pu, pv, order)
    out *= np.exp(1j * kc * v_w)
    return out


def filter_rows_beyond_focus(
    rotated: np.ndarray,
    dx_m: float,
    dy_m: float,
    y0_m: float,
    k0: float,
    variant: str = "exact",
) -> np.ndarray:
    """Apply the range-dependent cross-range filter in the rotated frame.

    ``rotated`` is indexed [iu, iv] (cross-range, down-range); rows with
    down-range coordinate v <= y0 pass unchanged.
    """
    nu, nv = rotated.shape
    kx = 2.0 * np.pi * np.fft.fftfreq(nu, dx_m)
    v = (np.arange(nv) - (nv - 1) / 2.0) * dy_m
    dy = v - y0_m
    rows = dy > 0
    out = rotated.copy()
    if rows.any():
        spec = np.fft.fft(rotated[:, rows], axis=0)
        gain = ffse_filter_gain(kx[:, None], dy[None, rows], k0, variant)
        out[:, rows] = np.fft.ifft(spec * gain, axis=0)
    return out


def apply_ffse(
    img: ComplexImage, params: FfseParams, look_angle_deg: float | None = None
) -> ComplexImage:
    """Shadow-enhance one sub-aperture image.

    The look angle defaults to the image's own aspect centre; passing a
    different angle than the aspect metadata is rejected.
    """
    if img.aspect is None:
        raise ValueError("FFSE requires a sub-aperture image (aspect set)")
    if img.geom is None:
        raise ValueError("image carries no geometry (k0 unknown)")
    theta = img.aspect[0] if look_angle_deg is None else float(look_angle_deg)
    if abs((theta - img.aspect[0] + 180.0) % 360.0 - 180.0) > 1e-6:
        raise ValueError(
            f"look angle {theta} inconsistent with image aspect {img.aspect[0]}"
        )
    if params.y0_m is None:
        raise ValueError("missing focus range y0_m")
    rot = rotate_to_look(img, theta, params.rotation_interp)
    filt = filter_rows_beyond_focus(
        rot, img.grid.dx_m, img.grid.dy_m, params.y0_m, img.geom.k0, params.variant
    )
    back = rotate_from_look(filt, img, theta, params.rotation_interp)
    return ComplexImage(
        img.grid, back, geom=img.geom, y0_m=params.y0_m, aspect=img.aspect
    )


def predicted_shadow_shift(
    dy_m: float, theta_rad: float, trajectory: str = "circular"
) -> ShadowShift:
    """Shadow displacement after rotating the illuminator by ``theta_rad``.

    ``dy_m`` is the distance between the shadow sample and the echo along
    the down-range axis of the first look.
    """
    if trajectory == "linear":
        if not abs(theta_rad) < np.pi / 2:
            raise ValueError("linear trajectory requires |theta| < pi/2")
        return ShadowShift(dy_m * float(np.tan(theta_rad)), 0.0)
    if trajectory == "circular":
        return ShadowShift(
            dy_m * float(np.sin(theta_rad)),
            dy_m * float(1.0 - np.cos(theta_rad)),
        )
    raise ValueError(f"unknown trajectory {trajectory!r}")


def enhance_stack(stack: SubApertureStack, params: FfseParams) -> SubApertureStack:
    """Apply FFSE to every stack image with its own look angle."""
    if stack.enhanced:
        raise ValueError("stack is already shadow-enhanced (filter phases would accumulate)")
    if stack.width_deg > APERTURE_VALIDITY_LIMIT_DEG:
        warnings.warn(
            f"aperture width {stack.width_deg} deg exceeds the ~15 deg validity "
            "limit of fixed-focus shadow enhancement",
            stacklevel=2,
        )
    images = [apply_ffse(im, params) for im in stack.images]
    return SubApertureStack(images, stack.angles_deg.copy(), stack.width_deg, enhanced=True)


class ShadowEnhancer(BaseEstimator, TransformerMixin):
    """SubApertureStack -> shadow-enhanced SubApertureStack."""

    def __init__(self, y0_m=0.0, variant="exact", rotation_interp=1):
        self.y0_m = y0_m
        self.variant = variant
        self.rotation_interp = rotation_interp

    def fit(self, X=None, y=None):
        return self

    def transform(self, X: SubApertureStack) -> SubApertureStack:
        params = FfseParams(self.y0_m, self.variant, self.rotation_interp)
        return enhance_stack(X, params)
