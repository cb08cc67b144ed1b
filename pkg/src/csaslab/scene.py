"""Synthetic scene: seafloor speckle field, point scatterers, solid target.

The target is a voxel occupancy grid resting on the seafloor (z >= 0).  The
seafloor contributes one scatterer per floor cell with a Rayleigh-distributed
amplitude so that coherent imagery develops realistic speckle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError


def _edge_taper(coords: np.ndarray, extent: float, frac: float) -> np.ndarray:
    """Cosine amplitude ramp from the patch edge over ``frac`` of the extent."""
    half = extent / 2.0
    ramp = frac * extent
    dist = np.clip(half - np.abs(coords), 0.0, None)
    w = np.ones_like(dist)
    m = dist < ramp
    w[m] = 0.5 * (1.0 - np.cos(np.pi * dist[m] / ramp))
    return w


@dataclass
class OccupancyGrid:
    """Axis-aligned boolean voxel grid.

    ``origin_xyz`` is the centre of voxel (0, 0, 0); ``spacing_m`` is the
    per-axis pitch; ``occupied`` has shape (nx, ny, nz) indexed [ix, iy, iz].
    """

    origin_xyz: tuple[float, float, float]
    spacing_m: tuple[float, float, float]
    occupied: np.ndarray

    def __post_init__(self):
        self.occupied = np.asarray(self.occupied, dtype=bool)
        if self.occupied.ndim != 3:
            raise ValueError("occupied must be a 3D boolean array")
        if any(s <= 0 for s in self.spacing_m):
            raise ValueError(f"spacing_m must be > 0 per axis, got {self.spacing_m}")
        if any(d <= 0 for d in self.occupied.shape):
            raise ValueError(f"dims must be > 0, got {self.occupied.shape}")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.occupied.shape

    def voxel_centers(self, mask: np.ndarray | None = None) -> np.ndarray:
        """World coordinates of voxel centres, shape (n, 3).

        With ``mask=None`` the occupied voxels are returned.
        """
        sel = self.occupied if mask is None else mask
        idx = np.argwhere(sel)
        return self.origin_xyz + idx * np.asarray(self.spacing_m)

    @property
    def voxel_volume_m3(self) -> float:
        return float(np.prod(self.spacing_m))

    def max_z(self) -> float:
        """Largest z of any occupied voxel's top face (0.0 when empty)."""
        if not self.occupied.any():
            return 0.0
        iz = np.argwhere(self.occupied)[:, 2].max()
        return self.origin_xyz[2] + iz * self.spacing_m[2] + 0.5 * self.spacing_m[2]

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Outer AABB of the grid (voxel faces, not centres)."""
        lo = np.asarray(self.origin_xyz) - 0.5 * np.asarray(self.spacing_m)
        hi = lo + np.asarray(self.dims) * np.asarray(self.spacing_m)
        return lo, hi

    @classmethod
    def empty(cls, origin_xyz, spacing_m, dims) -> "OccupancyGrid":
        return cls(tuple(origin_xyz), tuple(spacing_m), np.zeros(dims, dtype=bool))


@dataclass
class Scene:
    """World description consumed by the echo simulator.

    ``extent_m`` is the (x, y) side length of the floor patch centred on the
    origin.  ``floor_cell_m`` sets the floor scatterer pitch.  Point
    scatterers are (position xyz, complex reflectivity) pairs.
    """

    extent_m: tuple[float, float] = (5.0, 5.0)
    floor_cell_m: float = 0.025
    floor_mean_amplitude: float = 1.0
    floor_jitter: float = 1.0
    floor_edge_taper: float = 0.12
    point_scatterers: list[tuple[np.ndarray, complex]] = field(default_factory=list)
    target: OccupancyGrid | None = None
    rng_seed: int = 0

    def __post_init__(self):
        hx, hy = self.extent_m[0] / 2.0, self.extent_m[1] / 2.0
        for pos, _ in self.point_scatterers:
            pos = np.asarray(pos, dtype=float)
            if abs(pos[0]) > hx or abs(pos[1]) > hy:
                raise GeometryError(
                    f"scatterer at {pos[:2]} outside scene extent {self.extent_m}"
                )
        if self.target is not None:
            centers = self.target.voxel_centers()
            if centers.size:
                if centers[:, 2].min() < 0:
                    raise GeometryError("target voxels must satisfy z >= 0")
                if (np.abs(centers[:, 0]) > hx).any() or (np.abs(centers[:, 1]) > hy).any():
                    raise GeometryError("target voxels outside scene extent")

    def floor_grid_xy(self) -> tuple[np.ndarray, np.ndarray]:
        """Floor-cell centre coordinates (x 1D, y 1D)."""
        nx = max(1, int(round(self.extent_m[0] / self.floor_cell_m)))
        ny = max(1, int(round(self.extent_m[1] / self.floor_cell_m)))
        x = (np.arange(nx) - (nx - 1) / 2.0) * self.floor_cell_m
        y = (np.arange(ny) - (ny - 1) / 2.0) * self.floor_cell_m
        return x, y

    def floor_reflectivity(self) -> np.ndarray:
        """Rayleigh-amplitude field over the floor grid, deterministic in seed.

        Shape (nx, ny), scaled so the mean amplitude is
        ``floor_mean_amplitude``.  The Rayleigh scale sigma relates to the
        mean by mean = sigma * sqrt(pi / 2).
        """
        x, y = self.floor_grid_xy()
        rng = np.random.default_rng(self.rng_seed)
        sigma = self.floor_mean_amplitude / np.sqrt(np.pi / 2.0)
        amp = rng.rayleigh(scale=sigma, size=(x.size, y.size))
        if self.floor_edge_taper > 0:
            # fade the insonified patch toward the scene boundary; a hard
            # cut behaves like a bright synthetic edge in the spectrum
            amp *= np.outer(
                _edge_taper(x, self.extent_m[0], self.floor_edge_taper),
                _edge_taper(y, self.extent_m[1], self.floor_edge_taper),
            )
        return amp

    def floor_scatterer_positions(self) -> np.ndarray:
        """Floor scatterer positions (n, 3), one per cell, x-major order.

        ``floor_jitter`` dithers each scatterer uniformly within its cell
        (fraction of the cell size, 0 = exact cell centres).  A regular
        lattice Bragg-matches the imaging wavenumber and behaves like a
        diffraction grating, so the jitter defaults to a full cell.
        """
        x, y = self.floor_grid_xy()
        gx, gy = np.meshgrid(x, y, indexing="ij")
        pos = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(gx.size)])
        if self.floor_jitter > 0:
            rng = np.random.default_rng(self.rng_seed)
            rng.rayleigh(size=(x.size, y.size))  # keep amplitude draw order
            jit = rng.uniform(-0.5, 0.5, size=(pos.shape[0], 2))
            pos[:, :2] += jit * (self.floor_jitter * self.floor_cell_m)
        return pos

    def all_scatterers(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened scatterer positions (n, 3) and complex amplitudes (n,).

        Floor scatterers first (x-major order), then point scatterers.
        """
        if self.floor_mean_amplitude > 0:
            pos = self.floor_scatterer_positions()
            amp = self.floor_reflectivity().ravel().astype(complex)
        else:
            pos = np.zeros((0, 3))
            amp = np.zeros(0, dtype=complex)
        if self.point_scatterers:
            ppos = np.array([np.asarray(p, dtype=float) for p, _ in self.point_scatterers])
            pamp = np.array([a for _, a in self.point_scatterers], dtype=complex)
            pos = np.vstack([pos, ppos])
            amp = np.concatenate([amp, pamp])
        return pos, amp


def box_target(
    size_m=(0.8, 0.8, 0.4),
    center_xy=(0.0, 0.0),
    voxel_m: float = 0.05,
) -> OccupancyGrid:
    """Solid rectangular block resting on the floor."""
    dims = tuple(max(1, int(round(s / voxel_m))) for s in size_m)
    occ = np.ones(dims, dtype=bool)
    origin = (
        center_xy[0] - (dims[0] - 1) / 2.0 * voxel_m,
        center_xy[1] - (dims[1] - 1) / 2.0 * voxel_m,
        voxel_m / 2.0,
    )
    return OccupancyGrid(origin, (voxel_m, voxel_m, voxel_m), occ)


def two_blocks_target(
    block_size_m=(0.4, 0.4, 0.4),
    gap_m: float = 0.4,
    center_xy=(0.0, 0.0),
    voxel_m: float = 0.05,
) -> OccupancyGrid:
    """Two blocks separated along x by an empty gap (lacunar target)."""
    bx = max(1, int(round(block_size_m[0] / voxel_m)))
    by = max(1, int(round(block_size_m[1] / voxel_m)))
    bz = max(1, int(round(block_size_m[2] / voxel_m)))
    gx = max(1, int(round(gap_m / voxel_m)))
    nx = 2 * bx + gx
    occ = np.zeros((nx, by, bz), dtype=bool)
    occ[:bx] = True
    occ[bx + gx:] = True
    origin = (
        center_xy[0] - (nx - 1) / 2.0 * voxel_m,
        center_xy[1] - (by - 1) / 2.0 * voxel_m,
        voxel_m / 2.0,
    )
    return OccupancyGrid(origin, (voxel_m, voxel_m, voxel_m), occ)


def torus_target(
    outer_m: float = 1.2,
    inner_m: float = 0.5,
    height_m: float = 0.4,
    center_xy=(0.0, 0.0),
    voxel_m: float = 0.05,
) -> OccupancyGrid:
    """Square-section ring: solid between the inner and outer radius."""
    n = max(3, int(round(outer_m / voxel_m)))
    nz = max(1, int(round(height_m / voxel_m)))
    ax = (np.arange(n) - (n - 1) / 2.0) * voxel_m
    gx, gy = np.meshgrid(ax, ax, indexing="ij")
    r = np.hypot(gx, gy)
    ring = (r <= outer_m / 2.0) & (r >= inner_m / 2.0)
    occ = np.repeat(ring[:, :, None], nz, axis=2)
    origin = (
        center_xy[0] + ax[0],
        center_xy[1] + ax[0],
        voxel_m / 2.0,
    )
    return OccupancyGrid(origin, (voxel_m, voxel_m, voxel_m), occ)


def gap_region_mask(target: OccupancyGrid) -> np.ndarray:
    """Voxels of the target grid's interior cavity (for lacunarity checks).

    A gap voxel is an empty voxel that has occupied voxels both below-x and
    above-x in its own (iy, iz) column span. The definition matches the
    two-block and torus presets where the cavity sits between solid walls
    along x.
    """
    occ = target.occupied
    nx = occ.shape[0]
    has_lo = np.zeros_like(occ)
    has_hi = np.zeros_like(occ)
    run = np.zeros(occ.shape[1:], dtype=bool)
    for ix in range(nx):
        run |= occ[ix]
        has_lo[ix] = run
    run = np.zeros(occ.shape[1:], dtype=bool)
    for ix in range(nx - 1, -1, -1):
        run |= occ[ix]
        has_hi[ix] = run
    return (~occ) & has_lo & has_hi
