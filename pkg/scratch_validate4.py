"""Round 4: look at the actual gated image."""
import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject

np.set_printoptions(linewidth=250)

geom = SonarGeometry(radius_m=40.0, altitude_m=8.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=240)
tgt = box_target(size_m=(0.5, 0.5, 0.3), voxel_m=0.05)
sc = Scene(extent_m=(3.0, 3.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=1)
es = simulate_echoes(sc, geom)
keep = np.abs((np.degrees(es.pulse_angles_rad) + 180) % 360 - 180) < 6
print("pulses kept:", keep.sum())
es.samples[~keep] = 0.0
grid = ImageGrid.centered(3.0, 220)
img = backproject(es, grid)
ii = np.abs(img.samples) ** 2

# coarse 22x22 map (x rows top->bottom = +x..-x for readability)
c = ii.reshape(22, 10, 22, 10).mean(axis=(1, 3))
c = c / c.max()
for i in range(21, -1, -1):
    x = grid.x_axis()[i * 10 + 5]
    row = "".join(f"{v:5.2f}" for v in c[i])
    print(f"x={x:+5.2f} {row}")
print("         " + "".join(f"{grid.y_axis()[j*10+5]:+5.1f}" for j in range(22)))

# also check: raw echo profile dip (pulse 0), with vs without target
sc_nt = Scene(extent_m=(3.0, 3.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
              target=None, rng_seed=1)
es_nt = simulate_echoes(sc_nt, geom)
p = 0
a = np.abs(es.samples[p])
b = np.abs(es_nt.samples[p])
n = len(a) // 12
prof = [(es.ranges_m[i*12+6], float(a[i*12:i*12+12].mean()), float(b[i*12:i*12+12].mean()))
        for i in range(n)]
print("\nrange | with-target | floor-only (pulse at angle 0)")
for r, wa, wb in prof:
    print(f"{r:7.2f} {wa:8.2f} {wb:8.2f}")
