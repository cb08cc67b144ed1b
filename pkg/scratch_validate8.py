"""Round 8: shift measurement with cross-range-structured target."""
import time

import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture
from csaslab.ffse import rotate_to_look, predicted_shadow_shift

t0 = time.time()
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1080)

# two blocks separated in y (= cross-range for look 0), at x = 0.9
vox = 0.05
occ = np.zeros((6, 26, 9), dtype=bool)   # x-depth 0.3, y span 1.3, h 0.45
occ[:, :8, :] = True     # block 1: y in [-0.65, -0.25]
occ[:, 18:, :] = True    # block 2: y in [0.25, 0.65]
tgt = OccupancyGrid((0.9 - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
sc = Scene(extent_m=(3.6, 3.6), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
es = simulate_echoes(sc, geom)
grid = ImageGrid.centered(3.58, 256)
img = backproject(es, grid)
print(f"setup {time.time()-t0:.1f}s")

# shadow starts at the far face x = 0.9 - 0.15 = 0.75 -> v_face = -0.75
V_FACE = -0.75


def measure_du(image_a, image_b, look_deg, dv0, half_band, umax):
    g = image_a.grid
    th = np.radians(look_deg)
    ra = np.abs(rotate_to_look(image_a, look_deg))
    rb = np.abs(rotate_to_look(image_b, look_deg))
    u = (np.arange(g.nx) - (g.nx - 1) / 2.0) * g.dx_m
    v = (np.arange(g.ny) - (g.ny - 1) / 2.0) * g.dy_m
    cols = np.abs(v - (V_FACE + dv0)) < half_band
    rows = np.abs(u) < umax
    prof_a = ra[np.ix_(rows, cols)].mean(axis=1)
    prof_b = rb[np.ix_(rows, cols)].mean(axis=1)
    a = prof_a - prof_a.mean()
    b = prof_b - prof_b.mean()
    n = len(a)
    lags = np.arange(-(n // 2), n // 2 + 1)
    cc = np.array([
        np.sum(a[max(0, l):n + min(0, l)] * b[max(0, -l):n + min(0, -l)])
        for l in lags
    ])
    i = int(np.argmax(cc))
    s = float(lags[i])
    if 0 < i < len(cc) - 1:
        den = cc[i - 1] - 2 * cc[i] + cc[i + 1]
        if den != 0:
            s += 0.5 * (cc[i - 1] - cc[i + 1]) / den
    return s * g.dx_m    # displacement of b relative to a along +u


for width in (1.0, 2.0, 4.0):
    sA = extract_subaperture(img, 0.0, width)
    sB = extract_subaperture(img, 10.0, width)
    line = f"w={width}: "
    for dv0 in (0.8, 1.2, 1.6):
        pred = predicted_shadow_shift(dv0, np.radians(10.0), "circular")
        got = measure_du(sA, sB, 0.0, dv0, 0.25, 1.5)
        err_px = abs(got - (-pred.dx_m)) / grid.dx_m
        line += f" dv0={dv0}: pred_du={-pred.dx_m:+.3f} got={got:+.3f} ({err_px:.1f}px) |"
    print(line)
print(f"total {time.time()-t0:.1f}s")
