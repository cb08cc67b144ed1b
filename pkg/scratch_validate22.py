"""Round 22: single-pair direct displacement; visualize both shadows."""
import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture

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
es = simulate_echoes(sc, geom)
img = backproject(es, grid)

s0 = extract_subaperture(img, 0.0, 4.0)
s10 = extract_subaperture(img, 10.0, 4.0)

# sample intensity along u at dv0=1.4 band (frame 0: u=y, v=-x)
xg, yg = np.meshgrid(grid.x_axis(), grid.y_axis(), indexing="ij")
v = -(xg - TC[0])       # dv from target centre
u = yg
band = (v > 0.15 + 1.1) & (v < 0.15 + 1.7)

for name, s in (("look0", s0), ("look10", s10)):
    ii = np.abs(s.samples) ** 2
    prof = []
    us = np.arange(-1.1, 1.1, 0.044)
    for u0 in us:
        m = band & (np.abs(u - u0) < 0.022)
        prof.append(ii[m].mean())
    prof = np.array(prof)
    prof /= prof.max()
    print(f"{name}: " + "".join("#" if p > 0.6 else ("+" if p > 0.3 else
          ("." if p > 0.15 else " ")) for p in prof))
print("u axis: -1.1 .. +1.1 (expected bands at -0.65..-0.25, 0.25..0.65;"
      " look10 shifted by -0.28)")

# pulse-gated comparison
for label, c in (("gate0", 0.0), ("gate10", 10.0)):
    es2 = simulate_echoes(sc, geom)
    d = np.degrees(es2.pulse_angles_rad)
    keep = np.abs((d - c + 180) % 360 - 180) < 2
    es2.samples[~keep] = 0.0
    gimg = backproject(es2, grid)
    ii = np.abs(gimg.samples) ** 2
    prof = []
    us = np.arange(-1.1, 1.1, 0.044)
    for u0 in us:
        m = band & (np.abs(u - u0) < 0.022)
        prof.append(ii[m].mean())
    prof = np.array(prof)
    prof /= prof.max()
    print(f"{label}: " + "".join("#" if p > 0.6 else ("+" if p > 0.3 else
          ("." if p > 0.15 else " ")) for p in prof))
