"""Scratch validation round 2: proper Nyquist pitch + DOA convention."""
import time

import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture, spectrum_angles_deg
from csaslab.ffse import FfseParams, apply_ffse

t0 = time.time()
geom = SonarGeometry(radius_m=40.0, altitude_m=8.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=240)
print(f"Nyquist pitch = {np.pi/(2*geom.k0)*1000:.1f} mm")

# --- A. DOA convention: pulses gated to a 30 deg arc around trajectory 0 ----
sc = Scene(extent_m=(3.0, 3.0), floor_mean_amplitude=0.0,
           point_scatterers=[(np.array([0.0, 0.0, 0.0]), 1.0 + 0j)])
es = simulate_echoes(sc, geom)
keep = np.abs((np.degrees(es.pulse_angles_rad) + 180) % 360 - 180) < 15
es.samples[~keep] = 0.0
grid = ImageGrid.centered(3.0, 220)   # 13.6 mm < 15 mm Nyquist
img = backproject(es, grid)
F = np.abs(np.fft.fft2(img.samples)) ** 2
ang = spectrum_angles_deg(grid)
# energy-weighted mean DOA (circular mean)
c = (F * np.cos(np.radians(ang))).sum()
s = (F * np.sin(np.radians(ang))).sum()
print(f"[A] energy-weighted DOA = {np.degrees(np.arctan2(s, c)):.2f} deg "
      f"(pulses gated to 0 deg arc; expect ~0 if convention correct)")

# annulus radius with full pulses
es2 = simulate_echoes(sc, geom)
img2 = backproject(es2, grid)
F2 = np.abs(np.fft.fft2(img2.samples)) ** 2
kx = 2 * np.pi * np.fft.fftfreq(grid.nx, grid.dx_m)
ky = 2 * np.pi * np.fft.fftfreq(grid.ny, grid.dy_m)
kxg, kyg = np.meshgrid(kx, ky, indexing="ij")
kr = np.hypot(kxg, kyg)
print(f"[A] spectral mean |k| = {(kr*F2).sum()/F2.sum():.1f} "
      f"expect {2*geom.k0*np.cos(geom.grazing_rad):.1f}")

# --- B. shadow direction for look 0 -----------------------------------------
tgt = box_target(size_m=(0.5, 0.5, 0.3), voxel_m=0.05)
sc2 = Scene(extent_m=(3.0, 3.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
            target=tgt, rng_seed=1)
es3 = simulate_echoes(sc2, geom)
img3 = backproject(es3, grid)
sub0 = extract_subaperture(img3, 0.0, 12.0)
inten = np.abs(sub0.samples) ** 2
xg, yg = np.meshgrid(grid.x_axis(), grid.y_axis(), indexing="ij")
# sonar at angle 0 = (+R,0); shadow extends toward -x, length h/tan(gr)=1.5m
shadow_zone = (xg < -0.3) & (xg > -1.2) & (np.abs(yg) < 0.2)
lit_zone = (np.abs(yg) > 0.6) & (np.abs(yg) < 1.2) & (np.abs(xg) < 1.2)
print(f"[B] look 0: shadow-zone/lit-zone intensity = "
      f"{inten[shadow_zone].mean()/inten[lit_zone].mean():.3f} (expect << 1)")
sub180 = extract_subaperture(img3, 180.0, 12.0)
inten180 = np.abs(sub180.samples) ** 2
print(f"[B] look 180 on same zones = "
      f"{inten180[shadow_zone].mean()/inten180[lit_zone].mean():.3f} (expect ~1)")

# --- C. FFSE contrast, clean zones -------------------------------------------
geom4 = SonarGeometry(radius_m=75.0, altitude_m=12.0, fc_hz=25_000.0,
                      bandwidth_hz=12_500.0, n_pulses=360)
tgt4 = box_target(size_m=(0.7, 0.7, 0.36), center_xy=(1.05, 0.0), voxel_m=0.04)
sc4 = Scene(extent_m=(4.4, 4.4), floor_cell_m=0.03, floor_mean_amplitude=1.0,
            target=tgt4, rng_seed=2)
t1 = time.time()
es4 = simulate_echoes(sc4, geom4)
grid4 = ImageGrid.centered(4.34, 310)
img4 = backproject(es4, grid4)
print(f"[C] sim+bp {time.time()-t1:.1f}s, pitch {grid4.dx_m*1000:.1f} mm")
xg4, yg4 = np.meshgrid(grid4.x_axis(), grid4.y_axis(), indexing="ij")
# look 0: shadow toward -x from box far face x=0.7; length 0.36/0.16=2.25 m
# echo line y0: box centre x=1.05 -> v=-1.05. shadow: dy in (0.5, 2.0) from y0
v4 = -xg4
dyv = v4 - (-1.05)
shadow_box = (dyv > 0.6) & (dyv < 2.0) & (np.abs(yg4) < 0.22)
bg_box = (dyv > 0.6) & (dyv < 2.0) & (np.abs(yg4) > 0.7) & (np.abs(yg4) < 1.4)

def ratio(image):
    ii = np.abs(image.samples) ** 2
    return ii[shadow_box].mean() / ii[bg_box].mean()

for w in (4.0, 6.0, 8.0, 10.0, 12.0):
    sw = extract_subaperture(img4, 0.0, w)
    print(f"[C] plain {w:4.1f}: shadow/bg = {ratio(sw):.4f}")
s12 = extract_subaperture(img4, 0.0, 12.0)
for variant in ("exact", "small_aperture"):
    e12 = apply_ffse(s12, FfseParams(y0_m=-1.05, variant=variant))
    print(f"[C] FFSE-12 {variant}: shadow/bg = {ratio(e12):.4f}")
print(f"total {time.time()-t0:.1f}s")
