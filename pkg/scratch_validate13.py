"""Round 13: diagnose look-0 shadow pollution: look at the image + spectrum."""
import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture, spectrum_angles_deg

geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1080)
grid = ImageGrid.centered(4.0, 288)
tgt = box_target(size_m=(0.5, 0.5, 0.45), center_xy=(0.9, 0.0), voxel_m=0.05)
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=2)
img = backproject(simulate_echoes(sc, geom), grid)

for look in (0.0, 37.0):
    sub = extract_subaperture(img, look, 12.0)
    ii = np.abs(sub.samples) ** 2
    c = ii.reshape(24, 12, 24, 12).mean(axis=(1, 3))
    c = c / np.median(c)
    print(f"=== look {look}: intensity / median (x rows +2..-2 top->bottom)")
    for i in range(23, -1, -1):
        row = "".join(
            "#" if v > 2 else ("+" if v > 0.6 else ("." if v > 0.15 else " "))
            for v in c[i]
        )
        print(f"x={grid.x_axis()[i*12+6]:+5.2f} |{row}|")
    print("         " + "y: -2 .. +2")

# spectrum: energy vs DOA sector (5 deg bins), and radial profile
F = np.abs(np.fft.fft2(img.samples)) ** 2
ang = spectrum_angles_deg(grid)
kx = 2 * np.pi * np.fft.fftfreq(grid.nx, grid.dx_m)
ky = 2 * np.pi * np.fft.fftfreq(grid.ny, grid.dy_m)
kr = np.hypot(*np.meshgrid(kx, ky, indexing="ij"))
print("\nsector energies (5deg bins around):")
for a0 in (0, 37, 90, 180, 270):
    m = np.abs((ang - a0 + 180) % 360 - 180) < 2.5
    print(f"  {a0:3d}deg: {F[m].sum():.3e}  (n={m.sum()})")
ann = (kr > 180) & (kr < 230)
print(f"energy inside annulus band: {F[ann].sum()/F.sum()*100:.1f}%")
lowk = kr < 120
print(f"energy at |k|<120: {F[lowk].sum()/F.sum()*100:.2f}%")
# where is the low-k energy in DOA?
for a0 in (0, 37, 90):
    m = lowk & (np.abs((ang - a0 + 180) % 360 - 180) < 2.5)
    print(f"  low-k energy near {a0}deg: {F[m].sum():.3e}")
