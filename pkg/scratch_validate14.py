"""Round 14: bisect the look-0 shadow fill: mask vs gating vs sampling vs jitter."""
import time

import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture

grid = ImageGrid.centered(4.0, 336)
tgt = box_target(size_m=(0.5, 0.5, 0.45), center_xy=(0.9, 0.0), voxel_m=0.05)
xg, yg = np.meshgrid(grid.x_axis(), grid.y_axis(), indexing="ij")


def zones_for_look(look_deg):
    th = np.radians(look_deg)
    u = -np.sin(th) * (xg - 0.9) + np.cos(th) * (yg - 0.0)
    v = -np.cos(th) * (xg - 0.9) - np.sin(th) * (yg - 0.0)
    sh = (v > 0.5) & (v < 1.8) & (np.abs(u) < 0.18)
    bg = (v > 0.5) & (v < 1.8) & (np.abs(u) > 0.5) & (np.abs(u) < 0.95)
    return sh, bg


def ratio(samples, look_deg):
    ii = np.abs(samples) ** 2
    sh, bg = zones_for_look(look_deg)
    return ii[sh].mean() / ii[bg].mean()


def run(n_pulses, jitter, label):
    t0 = time.time()
    geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                         bandwidth_hz=12_500.0, n_pulses=n_pulses)
    sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
               floor_jitter=jitter, target=tgt, rng_seed=2)
    es = simulate_echoes(sc, geom)
    img = backproject(es, grid)
    out = [label]
    for look in (0.0, 37.0):
        s = extract_subaperture(img, look, 12.0, edge="boxcar")
        out.append(f"mask{look:.0f}: {ratio(s.samples, look):.3f}")
    # pulse gating
    for look in (0.0, 37.0):
        es2 = simulate_echoes(sc, geom)
        d = np.degrees(es2.pulse_angles_rad)
        keep = np.abs((d - look + 180) % 360 - 180) < 6
        es2.samples[~keep] = 0.0
        g = backproject(es2, grid)
        out.append(f"gate{look:.0f}: {ratio(g.samples, look):.3f}")
    print("  ".join(out), f"({time.time()-t0:.0f}s)")


run(1456, 1.0, "n=1456 jit=1")


