"""Round 20: binary-mask centroid shift oracle, fc=25k, w=2/4 deg."""
import time

import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, build_stack
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


def make_img(seed):
    tgt = OccupancyGrid((TC[0] - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
    sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
               target=tgt, rng_seed=seed)
    return backproject(simulate_echoes(sc, geom), grid)


def patch(mag, g, look_deg, du_ax, dv_ax):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + (vv + V_FACE_OFF) * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + (vv + V_FACE_OFF) * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    return map_coordinates(mag, [px, py], order=1, cval=np.nan)


def mask_centroid_shift(img_full, width, step, dv0, half_band):
    """Mean (du,dv) centroid difference of thresholded shadow masks."""
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n, off = len(stack), int(round(SEP / step))
    du_ax = np.arange(-1.1, 1.1 + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band, dv0 + half_band + 1e-9, g.dy_m)
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    mags = [np.abs(im.samples) ** 2 for im in stack.images]
    own = [patch(mags[i], g, stack.angles_deg[i], du_ax, dv_ax) for i in range(n)]
    # floor level from the outer columns of the averaged own-frame patch
    T = np.nanmean(np.stack(own), axis=0)
    floor_lvl = np.nanmedian(T[np.abs(du_ax) > 0.85, :])
    tau = 0.5 * floor_lvl
    d_sum = np.zeros(2)
    cnt = 0
    for i in range(n):
        pm = own[i] < tau
        qp = patch(mags[(i + off) % n], g, stack.angles_deg[i], du_ax, dv_ax)
        qm = qp < tau
        if pm.sum() < 20 or qm.sum() < 20:
            continue
        c_own = np.array([uu[pm].mean(), vv[pm].mean()])
        c_oth = np.array([uu[qm].mean(), vv[qm].mean()])
        d_sum += c_oth - c_own
        cnt += 1
    return d_sum / max(cnt, 1), cnt


for width, step in ((2.0, 2.0), (4.0, 4.0)):
    for seed in (7, 8):
        img = make_img(seed)
        for dv0 in (1.0, 1.4):
            p = predicted_shadow_shift(dv0, np.radians(SEP), "circular")
            (su, sv), cnt = mask_centroid_shift(img, width, step, dv0, 0.3)
            print(f"w={width} seed={seed} dv0={dv0}: pred ({-p.dx_m:+.3f},{-p.dy_m:+.3f}) "
                  f"got ({su:+.3f},{sv:+.3f}) err "
                  f"({abs(su+p.dx_m)/grid.dx_m:.2f},{abs(sv+p.dy_m)/grid.dy_m:.2f})px "
                  f"pairs={cnt}")
print(f"total {time.time()-t0:.0f}s")
