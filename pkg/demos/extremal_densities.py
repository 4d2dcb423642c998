"""Seeing sharpness: boundary data that almost attain K_{n,p}(alpha).

The density is the sign (or a power) of the differentiated Schwarz kernel at
z = i, cut off at |t| = T. As T grows the ratio creeps up to the constant.
The last section does the same on the unit disk.
"""

import math

from realpart import TrigPolynomial, disk_constant, disk_verify, k_alpha, sharpness_ratio
from realpart.sharpness import disk_extremal_ratio

for n, p in [(1, "inf"), (2, "inf"), (1, 2)]:
    target = k_alpha(n, p, 0.0)
    print(f"\nn={n}, p={p}: K(0) = {target:.10f}")
    for T in (1e1, 1e2, 1e3, 1e4):
        r = sharpness_ratio(n, p, 0.0, T=T, N=int(64 * T))
        print(f"  T={T:8.0f}  ratio={r:.10f}  ratio/K={r / target:.8f}")

print("\nunit disk, C_{2,inf} =", disk_constant(2, "inf"))
for r in (0.0, 0.5, 0.9, 0.99):
    print(f"  r={r:4.2f}  extremal ratio {disk_extremal_ratio(2, 'inf', r, points=2**18):.8f}")

rep = disk_verify(TrigPolynomial((0, 0, 1)), 2, "inf", 0.0)
print(f"\nu = cos 2t: |f''(0)| = {rep['lhs']:.6f} <= {rep['rhs']:.6f} (6 sqrt(3)/pi = {6 * math.sqrt(3) / math.pi:.6f})")
