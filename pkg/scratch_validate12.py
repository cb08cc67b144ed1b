"""Round 12: floor edge taper + corrected cc sign; full recheck."""
import time

import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, build_stack, extract_subaperture
from csaslab.ffse import FfseParams, apply_ffse, rotate_to_look, predicted_shadow_shift

t0 = time.time()
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1456)
grid = ImageGrid.centered(4.0, 336)
TC = np.array([0.9, 0.0])

# --- FFSE / contrast scene (solid box) --------------------------------------
tgt = box_target(size_m=(0.5, 0.5, 0.45), center_xy=(0.9, 0.0), voxel_m=0.05)
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=2)
img = backproject(simulate_echoes(sc, geom), grid)
print(f"setup {time.time()-t0:.1f}s")


def look_zones(g, look_deg):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    cg = np.array(g.center_xy())
    ut = u_hat @ (TC - cg)
    vt = v_hat @ (TC - cg)
    u = (np.arange(g.nx) - (g.nx - 1) / 2.0) * g.dx_m
    v = (np.arange(g.ny) - (g.ny - 1) / 2.0) * g.dy_m
    uu, vv = np.meshgrid(u, v, indexing="ij")
    return uu - ut, vv - vt, vt


def zone_ratio(image, look_deg, lo=0.5, hi=2.0):
    du, dv, _ = look_zones(image.grid, look_deg)
    ii = np.abs(rotate_to_look(image, look_deg)) ** 2
    sh = (dv > lo) & (dv < hi) & (np.abs(du) < 0.18)
    bg = (dv > lo) & (dv < hi) & (np.abs(du) > 0.5) & (np.abs(du) < 0.95)
    return ii[sh].mean() / ii[bg].mean()


for look in (0.0, 37.0, 90.0):
    s12 = extract_subaperture(img, look, 12.0)
    _, _, vt = look_zones(grid, look)
    ex = apply_ffse(s12, FfseParams(y0_m=vt, variant="exact"))
    sa = apply_ffse(s12, FfseParams(y0_m=vt, variant="small_aperture"))
    print(f"look {look:5.1f}: plain {zone_ratio(s12, look):.4f} "
          f"exact {zone_ratio(ex, look):.4f} small {zone_ratio(sa, look):.4f}")

sweep = []
for w in (4, 6, 8, 10, 12):
    r = np.mean([zone_ratio(extract_subaperture(img, lk, w), lk, 1.3, 2.1)
                 for lk in (0.0, 90.0, 180.0, 270.0)])
    sweep.append((w, r))
print("width sweep far zone (mean over 4 looks):",
      [f"{w}:{r:.4f}" for w, r in sweep])

# --- shift oracle ------------------------------------------------------------
vox = 0.05
occ = np.zeros((6, 26, 9), dtype=bool)
occ[:, :8, :] = True
occ[:, 18:, :] = True
tgt2 = OccupancyGrid((0.9 - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
sc2 = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
            target=tgt2, rng_seed=7)
img2 = backproject(simulate_echoes(sc2, geom), grid)
SEP = 10.0


def band_profile(mag, g, look_deg, dv0, half_band, umax):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    base = TC + (0.15 + dv0) * v_hat
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
        # cc[l] = sum_k a[k] * b[k + l]  (positive lag = b shifted toward +u)
        cc = np.array([
            np.sum(a[max(0, -l):m + min(0, -l)] * b[max(0, l):m + min(0, l)])
            for l in lags
        ])
        cc_sum = cc if cc_sum is None else cc_sum + cc
    i = int(np.argmax(cc_sum))
    s = float(lags[i])
    if 0 < i < len(cc_sum) - 1:
        den = cc_sum[i - 1] - 2 * cc_sum[i] + cc_sum[i + 1]
        if den != 0:
            s += 0.5 * (cc_sum[i - 1] - cc_sum[i + 1]) / den
    return -s * g.dx_m   # displacement of the +SEP look's pattern along +u


for width, step in ((1.0, 1.0), (2.0, 2.0)):
    for dv0 in (1.2, 1.6):
        pred = -predicted_shadow_shift(dv0, np.radians(SEP), "circular").dx_m
        got = pair_aggregated_shift(img2, width, step, dv0, 0.25, 1.35)
        print(f"w={width} dv0={dv0}: pred {pred:+.3f} got {got:+.3f} "
              f"err {abs(got-pred)/grid.dx_m:.2f}px")
print(f"total {time.time()-t0:.1f}s")
