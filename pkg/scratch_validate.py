"""Scratch validation of simulator/imaging/FFSE conventions. Not shipped."""
import time

import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, box_target
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, extract_subaperture, build_stack
from csaslab.ffse import FfseParams, apply_ffse

t0 = time.time()

# --- 1. single scatterer: peak location and phase --------------------------
geom = SonarGeometry(radius_m=40.0, altitude_m=8.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=180)
sc = Scene(extent_m=(3.0, 3.0), floor_mean_amplitude=0.0,
           point_scatterers=[(np.array([0.0, 0.0, 0.0]), 1.0 + 0j)])
es = simulate_echoes(sc, geom)
d_true = np.hypot(40.0, 8.0)
p = 0
pk = np.argmax(np.abs(es.samples[p]))
print(f"[1] peak range = {es.ranges_m[pk]:.4f} vs true {d_true:.4f} "
      f"(dr={es.ranges_m[1]-es.ranges_m[0]:.4f})")
ph = np.angle(es.samples[p, pk])
ph_true = (-2 * geom.k0 * d_true + np.pi) % (2 * np.pi) - np.pi
print(f"[1] peak phase = {ph:.6f} vs -2k0 d = {ph_true:.6f}")
print(f"[1] peak magnitude = {np.abs(es.samples[p, pk]):.4f} (expect ~1)")

# --- 2. backprojection: point position + spectrum annulus -------------------
grid = ImageGrid.centered(3.0, 100)   # 3 cm pixels; Nyquist pitch = pi/(2k0)
print(f"[2] Nyquist pitch = {np.pi/(2*geom.k0):.4f} m, grid pitch = {grid.dx_m:.4f} m")
img = backproject(es, grid)
ix, iy = np.unravel_index(np.argmax(np.abs(img.samples)), img.samples.shape)
print(f"[2] |I| max at ({grid.x_axis()[ix]:.3f}, {grid.y_axis()[iy]:.3f}) expect (0, 0)")

F = np.fft.fft2(img.samples)
kx = 2 * np.pi * np.fft.fftfreq(grid.nx, grid.dx_m)
ky = 2 * np.pi * np.fft.fftfreq(grid.ny, grid.dy_m)
kxg, kyg = np.meshgrid(kx, ky, indexing="ij")
kr = np.hypot(kxg, kyg)
e = np.abs(F) ** 2
mean_kr = (kr * e).sum() / e.sum()
print(f"[2] spectral mean |k| = {mean_kr:.2f}, expect 2 k0 cos(grazing) = "
      f"{2*geom.k0*np.cos(geom.grazing_rad):.2f}")

# --- 3. sub-aperture look convention: shadow direction ----------------------
tgt = box_target(size_m=(0.5, 0.5, 0.4), voxel_m=0.05)
sc2 = Scene(extent_m=(3.0, 3.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
            target=tgt, rng_seed=1)
es2 = simulate_echoes(sc2, geom)
img2 = backproject(es2, grid)
sub0 = extract_subaperture(img2, 0.0, 12.0)
# sonar at angle 0 sits at (+R, 0); shadow should extend toward -x
inten = np.abs(sub0.samples) ** 2
x = grid.x_axis()
left = inten[x < -0.5, :].mean()    # behind the box relative to sonar at +x
right = inten[x > 0.5, :].mean()
print(f"[3] look 0 deg: mean intensity x<-0.5 {left:.4g} vs x>0.5 {right:.4g} "
      f"(shadow should be on -x side => left << right)")

sub180 = extract_subaperture(img2, 180.0, 12.0)
inten180 = np.abs(sub180.samples) ** 2
left180 = inten180[x < -0.5, :].mean()
right180 = inten180[x > 0.5, :].mean()
print(f"[3] look 180 deg: x<-0.5 {left180:.4g} vs x>0.5 {right180:.4g} "
      f"(shadow now on +x side => right << left)")

# --- 4. FFSE improves shadow contrast ---------------------------------------
# box offset so its shadow (toward -x for look 0) stays inside the scene
geom4 = SonarGeometry(radius_m=75.0, altitude_m=12.0, fc_hz=25_000.0,
                      bandwidth_hz=12_500.0, n_pulses=360)
tgt4 = box_target(size_m=(0.7, 0.7, 0.36), center_xy=(1.05, 0.0), voxel_m=0.04)
sc4 = Scene(extent_m=(3.6, 3.6), floor_cell_m=0.028, floor_mean_amplitude=1.0,
            target=tgt4, rng_seed=2)
t1 = time.time()
es4 = simulate_echoes(sc4, geom4)
print(f"[4] sim time {time.time()-t1:.1f}s  ({len(es4.ranges_m)} range bins)")
grid4 = ImageGrid.centered(3.58, 256)
print(f"[4] pitch {grid4.dx_m*1000:.1f} mm vs Nyquist {np.pi/(2*geom4.k0)*1000:.1f} mm")
t1 = time.time()
img4 = backproject(es4, grid4)
print(f"[4] backprojection time {time.time()-t1:.1f}s")

# shadow region for look 0: box far edge at x=0.7, shadow toward -x
# measure over dy in [0.5, 2.0] beyond the echo line (box centre x=1.05)
y0 = 1.05   # down-range coord of target centre for look 0 (v = -x... check sign)
# for look angle 0: v_hat = (-1, 0) so v = -x + const; image centre x=0 -> v = -x
# box centre x=1.05 -> v = -1.05.  y0 (echo line) = -1.05.
xg, yg = np.meshgrid(grid4.x_axis(), grid4.y_axis(), indexing="ij")
v = -xg
shadow_box = (v > -1.05 + 0.5) & (v < -1.05 + 2.0) & (np.abs(yg) < 0.25)
bg_box = (v > -1.05 + 0.5) & (v < -1.05 + 2.0) & (np.abs(yg) > 0.8) & (np.abs(yg) < 1.6)

def contrast(image):
    ii = np.abs(image.samples) ** 2
    return ii[shadow_box].mean(), ii[bg_box].mean()

for w in (4.0, 8.0, 12.0):
    s = extract_subaperture(img4, 0.0, w)
    sh, bg = contrast(s)
    print(f"[4] plain {w:4.1f} deg: shadow {sh:.4g} bg {bg:.4g} ratio {sh/bg:.4f}")

params = FfseParams(y0_m=-1.05, variant="exact")
s12 = extract_subaperture(img4, 0.0, 12.0)
t1 = time.time()
e12 = apply_ffse(s12, params)
print(f"[4] ffse time per image {time.time()-t1:.2f}s")
sh, bg = contrast(e12)
print(f"[4] FFSE 12.0 deg: shadow {sh:.4g} bg {bg:.4g} ratio {sh/bg:.4f}")
params_sa = FfseParams(y0_m=-1.05, variant="small_aperture")
e12b = apply_ffse(s12, params_sa)
sh2, bg2 = contrast(e12b)
print(f"[4] FFSE(small) 12 deg: shadow {sh2:.4g} bg {bg2:.4g} ratio {sh2/bg2:.4f}")

print(f"total {time.time()-t0:.1f}s")
