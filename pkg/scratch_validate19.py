"""Round 19: fc=50k @ 1-2deg widths, 2D restricted template CC."""
import time

import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, build_stack
from csaslab.ffse import predicted_shadow_shift

t0 = time.time()
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=50_000.0,
                     bandwidth_hz=12_500.0, n_pulses=2112)
grid = ImageGrid.centered(3.2, 480)
vox = 0.05
occ = np.zeros((6, 26, 8), dtype=bool)   # 0.3 x 1.3 x 0.4, two blocks
occ[:, :8, :] = True
occ[:, 18:, :] = True
TC = np.array([0.7, 0.0])
tgt = OccupancyGrid((TC[0] - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
sc = Scene(extent_m=(3.2, 3.2), floor_cell_m=0.025, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
img = backproject(simulate_echoes(sc, geom), grid)
print(f"setup {time.time()-t0:.0f}s  px={grid.dx_m*1000:.2f}mm "
      f"(max {geom.max_image_pitch_m*1000:.2f}mm) min_pulses={geom.min_pulses(2.26)}")

V_FACE_OFF = 0.15
SEP = 10.0


def patch(mag, g, look_deg, du_ax, dv_ax):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + (vv + V_FACE_OFF) * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + (vv + V_FACE_OFF) * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    return map_coordinates(mag, [px, py], order=1, cval=0.0)


def aggregated_shift_2d(img_full, width, step, dv0, half_band, su_max=0.42, sv_max=0.12):
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n, off = len(stack), int(round(SEP / step))
    pad_u, pad_v = su_max + 0.02, sv_max + 0.02
    du_ax = np.arange(-1.2 - pad_u, 1.2 + pad_u + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band - pad_v, dv0 + half_band + pad_v + 1e-9, g.dy_m)
    mags = [np.abs(im.samples) for im in stack.images]
    T = np.zeros((len(du_ax), len(dv_ax)))
    for i in range(n):
        T += patch(mags[i], g, stack.angles_deg[i], du_ax, dv_ax)
    T /= n
    T = T - T.mean()
    nu = int(round(su_max / g.dx_m))
    nv = int(round(sv_max / g.dy_m))
    mu = len(du_ax) - 2 * nu
    mv = len(dv_ax) - 2 * nv
    core = T[nu:nu + mu, nv:nv + mv]
    cc = np.zeros((2 * nu + 1, 2 * nv + 1))
    for i in range(n):
        P = patch(mags[(i + off) % n], g, stack.angles_deg[i], du_ax, dv_ax)
        P = P - P.mean()
        for a in range(2 * nu + 1):
            for b in range(2 * nv + 1):
                cc[a, b] += np.sum(core * P[a:a + mu, b:b + mv])
    ia, ib = np.unravel_index(np.argmax(cc), cc.shape)
    su, sv = float(ia - nu), float(ib - nv)
    if 0 < ia < cc.shape[0] - 1:
        den = cc[ia - 1, ib] - 2 * cc[ia, ib] + cc[ia + 1, ib]
        if den != 0:
            su += 0.5 * (cc[ia - 1, ib] - cc[ia + 1, ib]) / den
    if 0 < ib < cc.shape[1] - 1:
        den = cc[ia, ib - 1] - 2 * cc[ia, ib] + cc[ia, ib + 1]
        if den != 0:
            sv += 0.5 * (cc[ia, ib - 1] - cc[ia, ib + 1]) / den
    return su * g.dx_m, sv * g.dy_m


for width, step in ((1.0, 1.0), (2.0, 2.0)):
    for dv0 in (1.0, 1.4):
        p = predicted_shadow_shift(dv0, np.radians(SEP), "circular")
        t1 = time.time()
        su, sv = aggregated_shift_2d(img, width, step, dv0, 0.3)
        print(f"w={width} dv0={dv0}: pred ({-p.dx_m:+.3f},{-p.dy_m:+.3f}) "
              f"got ({su:+.3f},{sv:+.3f}) err "
              f"({abs(su+p.dx_m)/grid.dx_m:.2f},{abs(sv+p.dy_m)/grid.dy_m:.2f})px "
              f"({time.time()-t1:.0f}s)")
print(f"total {time.time()-t0:.0f}s")
