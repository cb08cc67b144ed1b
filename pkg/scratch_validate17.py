"""Round 17: single pulse+scatterer: bp output vs direct analytic field."""
import numpy as np

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject

grid = ImageGrid.centered(4.0, 288)
geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=8)
sc = Scene(extent_m=(4.0, 4.0), floor_mean_amplitude=0.0,
           point_scatterers=[(np.array([0.0, 0.0, 0.0]), 1.0 + 0j)])
es = simulate_echoes(sc, geom)
# keep only the pulse at 180 deg
deg = np.degrees(es.pulse_angles_rad)
keep = np.abs(deg - 180.0) < 1.0
print("kept pulses:", deg[keep])
es.samples[~keep] = 0.0
img = backproject(es, grid)

# direct analytic field for that pulse: pc(d - d_i) exp(-2jk0 d_i) exp(+2jk0 d)
p = int(np.argwhere(keep)[0])
s_pos = geom.sonar_position(es.pulse_angles_rad[p])
xg, yg = np.meshgrid(grid.x_axis(), grid.y_axis(), indexing="ij")
d = np.sqrt((xg - s_pos[0]) ** 2 + (yg - s_pos[1]) ** 2 + s_pos[2] ** 2)
d_i = np.linalg.norm(s_pos - np.array([0.0, 0.0, 0.0]))
W = es.window_m
n_band = 0
# reconstruct the exact Dirichlet comb the simulator used
c_mps, bw = geom.c_mps, geom.bandwidth_hz
q_max = max(1, int(np.floor(bw * W / c_mps)))
qs = np.arange(-q_max, q_max + 1)
dkap = 2 * np.pi / W


def pc(x):
    ph = np.exp(1j * dkap * np.outer(qs, np.ravel(x)))
    return np.real(ph.sum(axis=0)).reshape(np.shape(x)) / len(qs)


direct = pc(d - d_i) * np.exp(-2j * geom.k0 * d_i) * np.exp(2j * geom.k0 * d)

err = np.abs(img.samples - direct).max() / np.abs(direct).max()
print(f"bp vs direct: max rel err {err:.2e}")

for name, f in (("bp", img.samples), ("direct", direct)):
    F = np.abs(np.fft.fftshift(np.fft.fft2(f))) ** 2
    kx = 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(grid.nx, grid.dx_m))
    neg = F[kx < -100, :].sum()
    pos = F[kx > 100, :].sum()
    print(f"{name}: energy kx>+100: {pos:.3e}  kx<-100: {neg:.3e} "
          f" ratio neg/pos {neg/pos:.3e}")
