# Minimal enclosing horocycle of a point cloud in the Cayley-Klein disk.
#
# For a fixed ideal angle theta the smallest enclosing size is a closed
# form, so the solve is a 1-D minimization of the profile a(theta).
# Below 2^(-1/2) the minimizer is unique; a set containing the disk
# center sits exactly at the bound, where the profile is constant and
# infinitely many horocycles are minimal.

import os

import numpy as np

from conic_extrema import size_profile, solve_min_horocycle, verify_solution
from conic_extrema.svgfig import SvgFigure

rng = np.random.default_rng(7)
pts = rng.uniform(-0.18, 0.18, (40, 2)) + np.array([0.25, 0.35])

sol = solve_min_horocycle(pts)
print(f"{len(pts)} points, minimal enclosing horocycle:")
print(f"  ideal angle theta* = {sol.horocycle.theta:.9f} rad")
print(f"  size a*            = {sol.horocycle.a:.12f}")
print(f"  unique             = {sol.unique}")
print(f"  support points     = {sol.support}")
print("  verification:", verify_solution(pts, sol))
print()

# the degenerate case: the disk center pins every profile value at 2^(-1/2)
center_sol = solve_min_horocycle([[0.0, 0.0]])
prof = center_sol.profile.values
print("disk-center point set:")
print(f"  a* = {center_sol.horocycle.a:.16f}  (2^-1/2 = {2**-0.5:.16f})")
print(f"  unique = {center_sol.unique}, profile spread = {np.ptp(prof):.2e}")
print()

# profile along a few angles for the cloud
for theta in np.linspace(0, 2 * np.pi, 5, endpoint=False):
    print(f"  a(theta = {theta:4.2f}) = {size_profile(pts, theta):.6f}")

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
fig = SvgFigure(viewport=(-1.15, 1.15, -1.15, 1.15))
fig.add_circle_path((0, 0), 1.0, stroke="black", width=0.008)
fig.add_horocycle(sol.horocycle, stroke="crimson", width=0.006)
for i, p in enumerate(pts):
    fig.add_point(p, r=0.012, fill="royalblue" if i in sol.support else "gray")
out = os.path.join(os.path.dirname(__file__), "output", "min_horocycle.svg")
fig.write(out)
print("wrote", out)
