"""Round 16: locate the opposite-pulse leakage in the k-plane."""
import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject

grid = ImageGrid.centered(4.0, 288)
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1080)
tgt = box_target(size_m=(0.5, 0.5, 0.45), center_xy=(0.9, 0.0), voxel_m=0.05)
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=2)

es = simulate_echoes(sc, geom)
deg = np.degrees(es.pulse_angles_rad)
keep = np.abs((deg - 180 + 180) % 360 - 180) < 15
es.samples[~keep] = 0.0
img = backproject(es, grid)
F = np.abs(np.fft.fftshift(np.fft.fft2(img.samples))) ** 2

kx = 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(grid.nx, grid.dx_m))
ky = 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(grid.ny, grid.dy_m))
# coarse 24x24 energy map over the k-plane
c = F.reshape(24, 12, 24, 12).sum(axis=(1, 3))
c = c / c.max()
print("k-plane energy map (rows kx -226..+226 top negative; cols ky):")
for i in range(24):
    row = "".join("#" if v > 0.1 else ("+" if v > 1e-3 else
                  ("." if v > 1e-6 else " ")) for v in c[i])
    print(f"kx={kx[i*12+6]:+7.1f} |{row}|")
print("          ky: -226 .. +226")

# energy vs radius within the DOA 0 sector wedge
ang = np.degrees(np.arctan2(-ky[None, :], -kx[:, None])) % 360
kr = np.hypot(kx[:, None], ky[None, :])
in0 = np.abs((ang + 180) % 360 - 180) < 6
tot = F.sum()
for r0, r1 in ((0, 100), (100, 180), (180, 230), (230, 330)):
    m = in0 & (kr >= r0) & (kr < r1)
    print(f"sector-0 wedge, |k| in [{r0},{r1}): {F[m].sum()/tot*100:.2f}%")
