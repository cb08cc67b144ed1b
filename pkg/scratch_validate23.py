"""Round 23: normalized-profile restricted-lag aggregated CC."""
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


def u_profile(mag2, g, look_deg, dv0, half_band, umax):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    du_ax = np.arange(-umax, umax + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band, dv0 + half_band + 1e-9, g.dy_m)
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + (vv + V_FACE_OFF) * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + (vv + V_FACE_OFF) * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    p = map_coordinates(mag2, [px, py], order=1, cval=np.nan)
    prof = np.nanmean(p, axis=1)
    return du_ax, prof


def aggregated_shift(img_full, width, step, dv0, half_band=0.3, umax=1.1,
                     s_max=0.45):
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n, off = len(stack), int(round(SEP / step))
    mags = [np.abs(im.samples) ** 2 for im in stack.images]
    owns, others = [], []
    for i in range(n):
        du_ax, pa = u_profile(mags[i], g, stack.angles_deg[i], dv0, half_band, umax)
        _, pb = u_profile(mags[(i + off) % n], g, stack.angles_deg[i], dv0,
                          half_band, umax)
        owns.append(pa / np.nanmean(pa) - 1.0)
        others.append(pb / np.nanmean(pb) - 1.0)
    m = len(du_ax)
    n_lag = int(round(s_max / g.dx_m))
    lags = np.arange(-n_lag, n_lag + 1)
    cc = np.zeros(len(lags))
    for a, b in zip(owns, others):
        for j, l in enumerate(lags):
            aa = a[max(0, -l):m + min(0, -l)]
            bb = b[max(0, l):m + min(0, l)]
            cc[j] += np.nansum(aa * bb)
    i = int(np.argmax(cc))
    s = float(lags[i])
    if 0 < i < len(cc) - 1:
        den = cc[i - 1] - 2 * cc[i] + cc[i + 1]
        if den != 0:
            s += 0.5 * (cc[i - 1] - cc[i + 1]) / den
    return s * g.dx_m


for width, step in ((2.0, 2.0), (4.0, 4.0)):
    for seed in (7, 8, 9):
        img = make_img(seed)
        for dv0 in (1.0, 1.4):
            pred = -predicted_shadow_shift(dv0, np.radians(SEP), "circular").dx_m
            got = aggregated_shift(img, width, step, dv0)
            print(f"w={width} seed={seed} dv0={dv0}: pred {pred:+.3f} "
                  f"got {got:+.3f} err {abs(got-pred)/grid.dx_m:.2f}px")
print(f"total {time.time()-t0:.0f}s")
