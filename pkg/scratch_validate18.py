"""Round 18: template-matching shift oracle, aggregated over all pairs."""
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
tgt = OccupancyGrid((TC[0] - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
img = backproject(simulate_echoes(sc, geom), grid)
print(f"setup {time.time()-t0:.0f}s")

V_FACE_OFF = 0.15   # far face is 0.15 m beyond the target centre
SEP = 10.0


def patch(mag, g, look_deg, du_ax, dv_ax):
    """Sample |I| in the look frame at offsets (du, dv) from the target."""
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + (vv + V_FACE_OFF) * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + (vv + V_FACE_OFF) * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    return map_coordinates(mag, [px, py], order=1, cval=0.0)


def aggregated_shift(img_full, width, step, dv0, half_band):
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n, off = len(stack), int(round(SEP / step))
    du_ax = np.arange(-1.3, 1.3 + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band, dv0 + half_band + 1e-9, g.dy_m)
    mags = [np.abs(im.samples) for im in stack.images]
    T = None
    own = []
    for i in range(n):
        p = patch(mags[i], g, stack.angles_deg[i], du_ax, dv_ax)
        own.append(p)
        T = p if T is None else T + p
    T = T / n
    tmpl = (T - T.mean(axis=0, keepdims=True)).mean(axis=1)
    cc_sum = None
    for i in range(n):
        p = patch(mags[(i + off) % n], g, stack.angles_deg[i], du_ax, dv_ax)
        prof = (p - p.mean(axis=0, keepdims=True)).mean(axis=1)
        m = len(prof)
        lags = np.arange(-(m // 2), m // 2 + 1)
        cc = np.array([
            np.sum(tmpl[max(0, -l):m + min(0, -l)] * prof[max(0, l):m + min(0, l)])
            for l in lags
        ])
        cc_sum = cc if cc_sum is None else cc_sum + cc
    i = int(np.argmax(cc_sum))
    s = float(lags[i])
    if 0 < i < len(cc_sum) - 1:
        den = cc_sum[i - 1] - 2 * cc_sum[i] + cc_sum[i + 1]
        if den != 0:
            s += 0.5 * (cc_sum[i - 1] - cc_sum[i + 1]) / den
    # positive lag: prof pattern sits at template position + lag
    return s * g.dx_m


for width, step in ((1.0, 1.0), (2.0, 2.0), (4.0, 4.0)):
    for dv0 in (1.0, 1.4):
        pred = -predicted_shadow_shift(dv0, np.radians(SEP), "circular").dx_m
        got = aggregated_shift(img, width, step, dv0, 0.3)
        print(f"w={width} dv0={dv0}: pred {pred:+.3f} got {got:+.3f} "
              f"err {abs(got - pred)/grid.dx_m:.2f}px")
print(f"total {time.time()-t0:.0f}s")
