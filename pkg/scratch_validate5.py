"""Round 5: properly sampled pulses (azimuth Nyquist) -> FFSE validation."""
import time

import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture
from csaslab.ffse import FfseParams, apply_ffse

t0 = time.time()
# lambda = 6 cm; scene 3.6 m => rho_max = 2.55 m; n >= 8*pi*2.55*0.981/0.06 = 1046
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1080)
tgt = box_target(size_m=(0.5, 0.5, 0.45), center_xy=(0.9, 0.0), voxel_m=0.05)
sc = Scene(extent_m=(3.6, 3.6), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=2)
t1 = time.time()
es = simulate_echoes(sc, geom)
print(f"sim {time.time()-t1:.1f}s, bins={len(es.ranges_m)}")
grid = ImageGrid.centered(3.58, 256)
t1 = time.time()
img = backproject(es, grid)
print(f"bp {time.time()-t1:.1f}s, pitch {grid.dx_m*1000:.1f} mm "
      f"(nyq {np.pi/(2*geom.k0)*1000:.1f} mm)")

xg, yg = np.meshgrid(grid.x_axis(), grid.y_axis(), indexing="ij")
v = -xg                      # down-range coordinate for look angle 0
y0 = -0.9                    # echo line: target centre x=0.9 -> v=-0.9
dyv = v - y0
# shadow: from box far face (x=0.65 -> dy=0.25) out to 2.25 m; measure 0.5..2.0
shadow_box = (dyv > 0.5) & (dyv < 2.0) & (np.abs(yg) < 0.18)
bg_box = (dyv > 0.5) & (dyv < 2.0) & (np.abs(yg) > 0.55) & (np.abs(yg) < 1.1)

def ratio(image):
    ii = np.abs(image.samples) ** 2
    return ii[shadow_box].mean() / ii[bg_box].mean()

for w in (4.0, 6.0, 8.0, 10.0, 12.0):
    sw = extract_subaperture(img, 0.0, w)
    print(f"plain {w:4.1f}: shadow/bg = {ratio(sw):.4f}")
s12 = extract_subaperture(img, 0.0, 12.0)
s4 = extract_subaperture(img, 0.0, 4.0)
t1 = time.time()
for variant in ("exact", "small_aperture"):
    e12 = apply_ffse(s12, FfseParams(y0_m=y0, variant=variant))
    print(f"FFSE-12 {variant}: shadow/bg = {ratio(e12):.4f}")
print(f"ffse {time.time()-t1:.2f}s for 2 images")

# check at another look angle too (90 deg): rotate zones
v90 = -yg
dy90 = v90 - (-0.0)   # target centre x=0.9,y=0 -> v90 = -y = 0... echo line at 0
# for look 90, shadow extends toward -y from the box; box at (0.9, 0)
sh90 = (dy90 > 0.5) & (dy90 < 1.8) & (np.abs(xg - 0.9) < 0.18)
bg90 = (dy90 > 0.5) & (dy90 < 1.8) & (np.abs(xg - 0.9) > 0.5) & (np.abs(xg) < 1.6)
s12_90 = extract_subaperture(img, 90.0, 12.0)
e12_90 = apply_ffse(s12_90, FfseParams(y0_m=0.0, variant="exact"))
i_s = np.abs(s12_90.samples) ** 2
i_e = np.abs(e12_90.samples) ** 2
print(f"look 90: plain {i_s[sh90].mean()/i_s[bg90].mean():.4f} "
      f"ffse {i_e[sh90].mean()/i_e[bg90].mean():.4f}")
print(f"total {time.time()-t0:.1f}s")
