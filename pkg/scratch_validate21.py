"""Round 21: geometric-mask displacement vs image-mask displacement."""
import time

import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, build_stack
from csaslab.shadows import FloorGrid, cast_shadow_mask
from csaslab.ffse import predicted_shadow_shift

t0 = time.time()
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1456)
grid = ImageGrid.centered(4.0, 336)
vox = 0.05
occ = np.zeros((6, 26, 9), dtype=bool)
occ[:, :8, :] = True
occ[:, 18:, :] = True
TC = np.array([0.9, 0.0])
V_FACE_OFF = 0.15
SEP = 10.0
tgt = OccupancyGrid((TC[0] - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)


def frame_axes(g, look_deg, dv0, half_band):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    du_ax = np.arange(-1.1, 1.1 + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band, dv0 + half_band + 1e-9, g.dy_m)
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + (vv + V_FACE_OFF) * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + (vv + V_FACE_OFF) * v_hat[1]
    return uu, vv, wx, wy


# --- geometric reference: oracle masks at angle 0 and 10 ---------------------
fg = FloorGrid.centered((4.0, 4.0), grid.dx_m)
m0 = cast_shadow_mask(tgt, geom.sonar_position(0.0), fg)
m10 = cast_shadow_mask(tgt, geom.sonar_position(np.radians(SEP)), fg)

for dv0 in (1.0, 1.4):
    uu, vv, wx, wy = frame_axes(grid, 0.0, dv0, 0.3)
    px = (wx - fg.origin_xy[0]) / fg.dx_m
    py = (wy - fg.origin_xy[1]) / fg.dy_m
    s0 = map_coordinates(m0.astype(float), [px, py], order=0) > 0.5
    s10 = map_coordinates(m10.astype(float), [px, py], order=0) > 0.5
    c0 = np.array([uu[s0].mean(), vv[s0].mean()])
    c10 = np.array([uu[s10].mean(), vv[s10].mean()])
    p = predicted_shadow_shift(dv0, np.radians(SEP), "circular")
    print(f"geometric dv0={dv0}: pred ({-p.dx_m:+.3f},{-p.dy_m:+.3f}) "
          f"mask centroid shift ({c10[0]-c0[0]:+.3f},{c10[1]-c0[1]:+.3f})")

print(f"geo took {time.time()-t0:.0f}s")

# --- image-mask displacement vs width ----------------------------------------
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
img = backproject(simulate_echoes(sc, geom), grid)


def patch(arr, g, look_deg, dv0, half_band):
    uu, vv, wx, wy = frame_axes(g, look_deg, dv0, half_band)
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    return uu, vv, map_coordinates(arr, [px, py], order=1, cval=np.nan)


def mask_centroid_shift(img_full, width, step, dv0, half_band):
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n, off = len(stack), int(round(SEP / step))
    mags = [np.abs(im.samples) ** 2 for im in stack.images]
    own = []
    for i in range(n):
        uu, vv, p = patch(mags[i], g, stack.angles_deg[i], dv0, half_band)
        own.append(p)
    T = np.nanmean(np.stack(own), axis=0)
    du_ax = uu[:, 0]
    floor_lvl = np.nanmedian(T[np.abs(du_ax) > 0.85, :])
    tau = 0.5 * floor_lvl
    d_sum = np.zeros(2)
    cnt = 0
    for i in range(n):
        pm = own[i] < tau
        _, _, q = patch(mags[(i + off) % n], g, stack.angles_deg[i], dv0, half_band)
        qm = q < tau
        if pm.sum() < 20 or qm.sum() < 20:
            continue
        d_sum += [uu[qm].mean() - uu[pm].mean(), vv[qm].mean() - vv[pm].mean()]
        cnt += 1
    return d_sum / max(cnt, 1), cnt


for width in (2.0, 4.0, 8.0):
    for dv0 in (1.4,):
        p = predicted_shadow_shift(dv0, np.radians(SEP), "circular")
        (su, sv), cnt = mask_centroid_shift(img, width, width, dv0, 0.3)
        print(f"image w={width} dv0={dv0}: pred ({-p.dx_m:+.3f},{-p.dy_m:+.3f}) "
              f"got ({su:+.3f},{sv:+.3f}) pairs={cnt}")
print(f"total {time.time()-t0:.0f}s")
