"""Round 24: inspect averaged own/other profiles and the cc curve."""
import numpy as np
from scipy.ndimage import map_coordinates

from csaslab.geometry import SonarGeometry
from csaslab.scene import Scene, OccupancyGrid
from csaslab.echoes import simulate_echoes
from csaslab.imaging import ImageGrid, backproject, build_stack
from csaslab.ffse import predicted_shadow_shift

geom = SonarGeometry(radius_m=75.0, altitude_m=15.0, fc_hz=25_000.0,
                     bandwidth_hz=12_500.0, n_pulses=1456)
grid = ImageGrid.centered(4.0, 336)
vox = 0.05
occ = np.zeros((6, 26, 9), dtype=bool)
occ[:, :8, :] = True
occ[:, 18:, :] = True
TC = np.array([0.9, 0.0])
V_FACE_OFF = 0.15
SEP = 10.0
tgt = OccupancyGrid((TC[0] - 2.5 * vox, -0.625, vox / 2), (vox, vox, vox), occ)
sc = Scene(extent_m=(4.0, 4.0), floor_cell_m=0.03, floor_mean_amplitude=1.0,
           target=tgt, rng_seed=7)
img = backproject(simulate_echoes(sc, geom), grid)


def u_profile(mag2, g, look_deg, dv0, half_band, umax):
    th = np.radians(look_deg)
    v_hat = np.array([-np.cos(th), -np.sin(th)])
    u_hat = np.array([v_hat[1], -v_hat[0]])
    du_ax = np.arange(-umax, umax + 1e-9, g.dx_m)
    dv_ax = np.arange(dv0 - half_band, dv0 + half_band + 1e-9, g.dy_m)
    uu, vv = np.meshgrid(du_ax, dv_ax, indexing="ij")
    wx = TC[0] + uu * u_hat[0] + (vv + V_FACE_OFF) * v_hat[0]
    wy = TC[1] + uu * u_hat[1] + (vv + V_FACE_OFF) * v_hat[1]
    px = (wx - g.origin_xy[0]) / g.dx_m
    py = (wy - g.origin_xy[1]) / g.dy_m
    p = map_coordinates(mag2, [px, py], order=1, cval=np.nan)
    return du_ax, np.nanmean(p, axis=1)


width = step = 4.0
dv0, half_band, umax = 1.4, 0.3, 1.1
stack = build_stack(img, step, width)
n, off = len(stack), int(round(SEP / step))
mags = [np.abs(im.samples) ** 2 for im in stack.images]
own_sum = other_sum = None
for i in range(n):
    du_ax, pa = u_profile(mags[i], grid, stack.angles_deg[i], dv0, half_band, umax)
    _, pb = u_profile(mags[(i + off) % n], grid, stack.angles_deg[i], dv0, half_band, umax)
    pa = pa / np.nanmean(pa)
    pb = pb / np.nanmean(pb)
    own_sum = pa if own_sum is None else own_sum + pa
    other_sum = pb if other_sum is None else other_sum + pb
own = own_sum / n
other = other_sum / n

scale = max(own.max(), other.max())
print("averaged own-frame profile (O) vs +10deg-look profile (X):")
for k in range(0, len(du_ax), 2):
    no = int(30 * own[k] / scale)
    nx = int(30 * other[k] / scale)
    line = [" "] * 34
    line[no] = "O"
    line[nx] = "X" if line[no] != "O" else "*"
    print(f"u={du_ax[k]:+5.2f} |" + "".join(line) + "|")

a = own - own.mean()
b = other - other.mean()
m = len(a)
n_lag = int(round(0.45 / grid.dx_m))
lags = np.arange(-n_lag, n_lag + 1)
cc = np.array([np.nansum(a[max(0, -l):m + min(0, -l)] * b[max(0, l):m + min(0, l)])
               for l in lags])
pred = -predicted_shadow_shift(dv0, np.radians(SEP), "circular").dx_m
best = lags[np.argmax(cc)] * grid.dx_m
print(f"\nCC of AVERAGED profiles: peak at {best:+.3f} (pred {pred:+.3f})")
print("cc:", " ".join(f"{v:+.2f}" for v in cc / np.abs(cc).max()))
