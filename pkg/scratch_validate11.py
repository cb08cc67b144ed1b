"""Round 11: eyeball the band profiles."""
import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture

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

TC = np.array([0.9, 0.0])


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


for width in (4.0, 12.0):
    sA = extract_subaperture(img, 0.0, width)
    sB = extract_subaperture(img, 10.0, width)
    magA, magB = np.abs(sA.samples), np.abs(sB.samples)
    for dv0 in (1.2,):
        du, pa = band_profile(magA, grid, 0.0, dv0, 0.25, 1.35)
        _, pb = band_profile(magB, grid, 0.0, dv0, 0.25, 1.35)
        scale = max(np.nanmax(pa), np.nanmax(pb))
        print(f"--- width {width} dv0 {dv0}: profiles (u, lookA, lookB), "
              f"shadow bands expected at u in +-(0.25..0.65)")
        for k in range(0, len(du), 3):
            bar_a = "#" * int(30 * pa[k] / scale)
            bar_b = "*" * int(30 * pb[k] / scale)
            print(f"u={du[k]:+5.2f} A {pa[k]:7.1f} {bar_a:<32} B {pb[k]:7.1f} {bar_b}")
