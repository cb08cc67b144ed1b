"""Round 15: measure pulse-group -> sector coupling."""
import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, sector_mask

grid = ImageGrid.centered(4.0, 288)
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1080)
tgt = box_target(size_m=(0.5, 0.5, 0.45), center_xy=(0.9, 0.0), voxel_m=0.05)
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=2)
es = simulate_echoes(sc, geom)

deg = np.degrees(es.pulse_angles_rad)
m0 = sector_mask(grid, 0.0, 12.0, edge="boxcar")
m37 = sector_mask(grid, 37.0, 12.0, edge="boxcar")

print("pulse-group (15deg bins) energy leaking into sector 0 and sector 37:")
for g0 in range(0, 360, 15):
    keep = np.abs((deg - g0 - 7.5 + 180) % 360 - 180) < 7.5
    es2 = simulate_echoes(sc, geom)
    es2.samples[~keep] = 0.0
    img = backproject(es2, grid)
    F = np.fft.fft2(img.samples)
    e_tot = (np.abs(F) ** 2).sum()
    e0 = (np.abs(F * m0) ** 2).sum()
    e37 = (np.abs(F * m37) ** 2).sum()
    print(f"  pulses {g0:3d}-{g0+15:3d}: ->sector0 {e0/e_tot*100:6.2f}%   "
          f"->sector37 {e37/e_tot*100:6.2f}%")
