"""Round 10b: pair-aggregated cross-correlation with fixed-offset band sampling."""
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
                     bandwidth_hz=12_500.0, n_pulses=1080)
vox = 0.05
occ = np.zeros((6, 26, 9), dtype=bool)
occ[:, :8, :] = True
occ[:, 18:, :] = True
tgt = OccupancyGrid((0.9 - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
sc = Scene(extent_m=(3.6, 3.6), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
grid = ImageGrid.centered(3.58, 256)
img = backproject(simulate_echoes(sc, geom), grid)
print(f"setup {time.time()-t0:.1f}s")

TC = np.array([0.9, 0.0])
SEP = 10.0


def band_profile(mag, g, look_deg, dv0, half_band, umax):
    """Mean |I| over the shadow band as a function of cross-range offset,
    sampled at fixed offsets in the look's frame around the target."""
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    cg = np.array(g.center_xy())
    base = TC + (0.15 + dv0) * np.array([v_hat[0], v_hat[1]])
    du = np.arange(-umax, umax + 1e-9, g.dx_m)
    dv = np.arange(-half_band, half_band + 1e-9, g.dy_m)
    uu, vv = np.meshgrid(du, dv, indexing="ij")
    wx = base[0] + uu * u_hat[0] + vv * v_hat[0]
    wy = base[1] + uu * u_hat[1] + vv * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    smp = map_coordinates(mag, [px, py], order=1, cval=np.nan)
    return du, np.nanmean(smp, axis=1)


def pair_aggregated_shift(img_full, width, step, dv0, half_band, umax):
    stack = build_stack(img_full, step, width)
    g = img_full.grid
    n = len(stack)
    off = int(round(SEP / step))
    mags = [np.abs(im.samples) for im in stack.images]
    cc_sum = None
    for i in range(n):
        look = stack.angles_deg[i]
        du, pa = band_profile(mags[i], g, look, dv0, half_band, umax)
        _, pb = band_profile(mags[(i + off) % n], g, look, dv0, half_band, umax)
        ok = ~(np.isnan(pa) | np.isnan(pb))
        a = np.where(ok, pa - pa[ok].mean(), 0.0)
        b = np.where(ok, pb - pb[ok].mean(), 0.0)
        m = len(a)
        lags = np.arange(-(m // 2), m // 2 + 1)
        cc = np.array([
            np.sum(a[max(0, l):m + min(0, l)] * b[max(0, -l):m + min(0, -l)])
            for l in lags
        ])
        cc_sum = cc if cc_sum is None else cc_sum + cc
    i = int(np.argmax(cc_sum))
    s = float(lags[i])
    if 0 < i < len(cc_sum) - 1:
        den = cc_sum[i - 1] - 2 * cc_sum[i] + cc_sum[i + 1]
        if den != 0:
            s += 0.5 * (cc_sum[i - 1] - cc_sum[i + 1]) / den
    return s * grid.dx_m


for width, step in ((1.0, 1.0), (2.0, 2.0), (4.0, 4.0)):
    for dv0 in (1.2, 1.6):
        pred = -predicted_shadow_shift(dv0, np.radians(SEP), "circular").dx_m
        t1 = time.time()
        got = pair_aggregated_shift(img, width, step, dv0, 0.25, 1.35)
        err = abs(got - pred) / grid.dx_m
        print(f"w={width} dv0={dv0}: pred {pred:+.3f} got {got:+.3f} "
              f"err {err:.2f}px  ({time.time()-t1:.0f}s)")
print(f"total {time.time()-t0:.1f}s")
