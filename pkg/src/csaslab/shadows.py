"""Geometric shadow casting of a voxel target onto the seafloor plane.

Two independent formulations of the same region are provided:

* :func:`cast_shadow_mask` rasterises, for every occupied voxel, the exact
  perspective footprint its cube casts on z = 0 (convex hull of the eight
  projected corners).  A floor cell is shadow iff its centre falls inside
  the union of footprints.
* :func:`segment_blocked` walks the straight segment from the sonar to a
  query point through the voxel grid (Amanatides-Woo traversal) and reports
  whether it crosses an occupied voxel.

For a point light strictly above the target the two agree exactly: a floor
point is inside a cube's footprint iff the segment from the sonar to that
point intersects the cube.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .scene import OccupancyGrid


@dataclass(frozen=True)
class FloorGrid:
    """Regular raster over the seafloor plane z = 0.

    ``origin_xy`` is the centre of cell (0, 0); cells are indexed [ix, iy].
    """

    origin_xy: tuple[float, float]
    dx_m: float
    dy_m: float
    nx: int
    ny: int

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        x = self.origin_xy[0] + np.arange(self.nx) * self.dx_m
        y = self.origin_xy[1] + np.arange(self.ny) * self.dy_m
        return x, y

    def point_to_cell(self, xy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Fractional cell coordinates of world points, shape (n, 2) -> 2x(n,)."""
        xy = np.atleast_2d(xy)
        fx = (xy[:, 0] - self.origin_xy[0]) / self.dx_m
        fy = (xy[:, 1] - self.origin_xy[1]) / self.dy_m
        return fx, fy

    @classmethod
    def centered(cls, extent_m, cell_m: float) -> "FloorGrid":
        nx = max(1, int(round(extent_m[0] / cell_m)))
        ny = max(1, int(round(extent_m[1] / cell_m)))
        return cls(
            (-(nx - 1) / 2.0 * cell_m, -(ny - 1) / 2.0 * cell_m),
            cell_m, cell_m, nx, ny,
        )


def project_to_floor(sonar_pos: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Extend rays sonar -> point to the plane z = 0; return (n, 2) hits.

    Requires sonar strictly above every point (sonar_z > point_z >= 0).
    """
    sonar_pos = np.asarray(sonar_pos, dtype=float)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dz = sonar_pos[2] - points[:, 2]
    if np.any(dz <= 0):
        raise ValueError("sonar must be strictly above all projected points")
    t = sonar_pos[2] / dz
    return sonar_pos[None, :2] + t[:, None] * (points[:, :2] - sonar_pos[None, :2])


def _convex_hull_2d(pts: np.ndarray) -> np.ndarray:
    """Counter-clockwise convex hull (Andrew monotone chain), shape (h, 2)."""
    pts = np.unique(pts, axis=0)
    if len(pts) <= 2:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def half(points):
        out = []
        for p in points:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def cast_shadow_mask(
    target: OccupancyGrid,
    sonar_pos: np.ndarray,
    floor_grid: FloorGrid,
) -> np.ndarray:
    """Boolean shadow mask over ``floor_grid`` (True = cell centre in shadow).

    Footprint-projection formulation: every occupied voxel cube is projected
    through the sonar position onto z = 0 and its convex footprint is
    rasterised against cell centres.
    """
    sonar_pos = np.asarray(sonar_pos, dtype=float)
    mask = np.zeros((floor_grid.nx, floor_grid.ny), dtype=bool)
    if target is None or not target.occupied.any():
        return mask
    if sonar_pos[2] <= target.max_z():
        raise ValueError("sonar must be above the target's top")

    sp = np.asarray(target.spacing_m)
    centers = target.voxel_centers()
    corner_offsets = (
        np.array(np.meshgrid([-1, 1], [-1, 1], [-1, 1], indexing="ij"))
        .reshape(3, 8).T * 0.5 * sp
    )
    cx, cy = floor_grid.cell_centers()
    for c in centers:
        corners = c[None, :] + corner_offsets
        foot = project_to_floor(sonar_pos, corners)
        hull = _convex_hull_2d(foot)
        if len(hull) < 3:
            continue
        ix0 = max(0, int(np.ceil((hull[:, 0].min() - floor_grid.origin_xy[0]) / floor_grid.dx_m)))
        ix1 = min(floor_grid.nx - 1, int(np.floor((hull[:, 0].max() - floor_grid.origin_xy[0]) / floor_grid.dx_m)))
        iy0 = max(0, int(np.ceil((hull[:, 1].min() - floor_grid.origin_xy[1]) / floor_grid.dy_m)))
        iy1 = min(floor_grid.ny - 1, int(np.floor((hull[:, 1].max() - floor_grid.origin_xy[1]) / floor_grid.dy_m)))
        if ix1 < ix0 or iy1 < iy0:
            continue
        gx, gy = np.meshgrid(cx[ix0:ix1 + 1], cy[iy0:iy1 + 1], indexing="ij")
        inside = np.ones(gx.shape, dtype=bool)
        for k in range(len(hull)):
            a, b = hull[k], hull[(k + 1) % len(hull)]
            inside &= (b[0] - a[0]) * (gy - a[1]) - (b[1] - a[1]) * (gx - a[0]) >= 0
        mask[ix0:ix1 + 1, iy0:iy1 + 1] |= inside
    return mask


@njit(cache=True)
def _segments_blocked_kernel(
    start, ends, occ, origin, spacing, eps,
):  # pragma: no cover - exercised through segment_blocked
    n = ends.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    dims = occ.shape
    # outer faces of the voxel grid
    lo0 = origin[0] - 0.5 * spacing[0]
    lo1 = origin[1] - 0.5 * spacing[1]
    lo2 = origin[2] - 0.5 * spacing[2]
    hi0 = lo0 + dims[0] * spacing[0]
    hi1 = lo1 + dims[1] * spacing[1]
    hi2 = lo2 + dims[2] * spacing[2]
    for i in range(n):
        dx = ends[i, 0] - start[0]
        dy = ends[i, 1] - start[1]
        dz = ends[i, 2] - start[2]
        # clip the segment to the grid AABB (slab method)
        tmin = 0.0
        tmax = 1.0
        ok = True
        for axis in range(3):
            if axis == 0:
                d, s, lo, hi = dx, start[0], lo0, hi0
            elif axis == 1:
                d, s, lo, hi = dy, start[1], lo1, hi1
            else:
                d, s, lo, hi = dz, start[2], lo2, hi2
            if abs(d) < 1e-300:
                if s < lo or s > hi:
                    ok = False
                    break
            else:
                t0 = (lo - s) / d
                t1 = (hi - s) / d
                if t0 > t1:
                    t0, t1 = t1, t0
                if t0 > tmin:
                    tmin = t0
                if t1 < tmax:
                    tmax = t1
                if tmin > tmax:
                    ok = False
                    break
        if not ok:
            continue
        # Amanatides-Woo traversal from tmin to tmax
        t = tmin + eps
        px = start[0] + t * dx
        py = start[1] + t * dy
        pz = start[2] + t * dz
        ix = int(np.floor((px - lo0) / spacing[0]))
        iy = int(np.floor((py - lo1) / spacing[1]))
        iz = int(np.floor((pz - lo2) / spacing[2]))
        if ix < 0:
            ix = 0
        if iy < 0:
            iy = 0
        if iz < 0:
            iz = 0
        if ix >= dims[0]:
            ix = dims[0] - 1
        if iy >= dims[1]:
            iy = dims[1] - 1
        if iz >= dims[2]:
            iz = dims[2] - 1
        step_x = 1 if dx > 0 else -1
        step_y = 1 if dy > 0 else -1
        step_z = 1 if dz > 0 else -1
        if dx != 0.0:
            nxt = lo0 + (ix + (1 if dx > 0 else 0)) * spacing[0]
            t_max_x = (nxt - start[0]) / dx
            t_dx = abs(spacing[0] / dx)
        else:
            t_max_x = 1e300
            t_dx = 1e300
        if dy != 0.0:
            nxt = lo1 + (iy + (1 if dy > 0 else 0)) * spacing[1]
            t_max_y = (nxt - start[1]) / dy
            t_dy = abs(spacing[1] / dy)
        else:
            t_max_y = 1e300
            t_dy = 1e300
        if dz != 0.0:
            nxt = lo2 + (iz + (1 if dz > 0 else 0)) * spacing[2]
            t_max_z = (nxt - start[2]) / dz
            t_dz = abs(spacing[2] / dz)
        else:
            t_max_z = 1e300
            t_dz = 1e300
        while True:
            if occ[ix, iy, iz]:
                out[i] = 1
                break
            if t_max_x <= t_max_y and t_max_x <= t_max_z:
                if t_max_x > tmax:
                    break
                ix += step_x
                if ix < 0 or ix >= dims[0]:
                    break
                t_max_x += t_dx
            elif t_max_y <= t_max_z:
                if t_max_y > tmax:
                    break
                iy += step_y
                if iy < 0 or iy >= dims[1]:
                    break
                t_max_y += t_dy
            else:
                if t_max_z > tmax:
                    break
                iz += step_z
                if iz < 0 or iz >= dims[2]:
                    break
                t_max_z += t_dz
    return out


def segment_blocked(
    start: np.ndarray,
    ends: np.ndarray,
    target: OccupancyGrid | None,
) -> np.ndarray:
    """True per end point iff the segment start->end crosses an occupied voxel.

    Exact voxel traversal; independent of :func:`cast_shadow_mask`'s
    footprint rasterisation.
    """
    ends = np.atleast_2d(np.asarray(ends, dtype=float))
    if target is None or not target.occupied.any():
        return np.zeros(len(ends), dtype=bool)
    out = _segments_blocked_kernel(
        np.asarray(start, dtype=np.float64),
        np.ascontiguousarray(ends, dtype=np.float64),
        np.ascontiguousarray(target.occupied, dtype=np.uint8),
        np.asarray(target.origin_xyz, dtype=np.float64),
        np.asarray(target.spacing_m, dtype=np.float64),
        1e-9,
    )
    return out.astype(bool)


def cast_shadow_mask_by_rays(
    target: OccupancyGrid,
    sonar_pos: np.ndarray,
    floor_grid: FloorGrid,
) -> np.ndarray:
    """Segment-intersection formulation of :func:`cast_shadow_mask`."""
    sonar_pos = np.asarray(sonar_pos, dtype=float)
    if target is not None and target.occupied.any() and sonar_pos[2] <= target.max_z():
        raise ValueError("sonar must be above the target's top")
    cx, cy = floor_grid.cell_centers()
    gx, gy = np.meshgrid(cx, cy, indexing="ij")
    ends = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(gx.size)])
    blocked = segment_blocked(sonar_pos, ends, target)
    return blocked.reshape(floor_grid.nx, floor_grid.ny)
