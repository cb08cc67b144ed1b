"""Round 25: centered thin panels, averaged-profile CC, 4.4 m scene."""
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
                     bandwidth_hz=12_500.0, n_pulses=1600)
grid = ImageGrid.centered(4.4, 368)
vox = 0.05
# two thin panels: 0.05 deep (x), 0.4 long (y), 0.45 high, at y = +-0.45
occ = np.zeros((1, 26, 9), dtype=bool)
occ[:, :8, :] = True
occ[:, 18:, :] = True
TC = np.array([0.0, 0.0])
tgt = OccupancyGrid((0.0, -0.625, vox / 2), (vox, vox, vox), occ)
sc = Scene(extent_m=(4.4, 4.4), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
img = backproject(simulate_echoes(sc, geom), grid)
print(f"setup {time.time()-t0:.0f}s px={grid.dx_m*1000:.2f}mm "
      f"(max {geom.max_image_pitch_m*1000:.2f}) pulses needed "
      f"{geom.min_pulses(2.2*np.sqrt(2))}")

SEP = 10.0


def u_profile(mag2, g, look_deg, dv0, half_band, umax):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    du_ax = np.arange(-umax, umax + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band, dv0 + half_band + 1e-9, g.dy_m)
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + vv * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + vv * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    p = map_coordinates(mag2, [px, py], order=1, cval=np.nan)
    return du_ax, np.nanmean(p, axis=1)


def averaged_profile_shift(img_full, width, step, dv0, half_band=0.25,
                           umax=1.05, s_max=0.45):
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n, off = len(stack), int(round(SEP / step))
    mags = [np.abs(im.samples) ** 2 for im in stack.images]
    own_sum = other_sum = None
    for i in range(n):
        du_ax, pa = u_profile(mags[i], g, stack.angles_deg[i], dv0, half_band, umax)
        _, pb = u_profile(mags[(i + off) % n], g, stack.angles_deg[i], dv0,
                          half_band, umax)
        pa = pa / np.nanmean(pa)
        pb = pb / np.nanmean(pb)
        own_sum = pa if own_sum is None else own_sum + pa
        other_sum = pb if other_sum is None else other_sum + pb
    a = own_sum / n - 1.0
    b = other_sum / n - 1.0
    m = len(a)
    n_lag = int(round(s_max / g.dx_m))
    lags = np.arange(-n_lag, n_lag + 1)
    cc = np.array([
        np.nansum(a[max(0, -l):m + min(0, -l)] * b[max(0, l):m + min(0, l)])
        for l in lags
    ])
    i = int(np.argmax(cc))
    s = float(lags[i])
    if 0 < i < len(cc) - 1:
        den = cc[i - 1] - 2 * cc[i] + cc[i + 1]
        if den != 0:
            s += 0.5 * (cc[i - 1] - cc[i + 1]) / den
    return s * g.dx_m


for width, step in ((1.0, 1.0), (2.0, 2.0), (4.0, 4.0)):
    for dv0 in (1.0, 1.4):
        pred = -predicted_shadow_shift(dv0, np.radians(SEP), "circular").dx_m
        got = averaged_profile_shift(img, width, step, dv0)
        print(f"w={width} dv0={dv0}: pred {pred:+.3f} got {got:+.3f} "
              f"err {abs(got-pred)/grid.dx_m:.2f}px")
print(f"total {time.time()-t0:.0f}s")
