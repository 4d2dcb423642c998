"""A short tour of the sharp constants K_{n,p}.

Run with ``python demos/sharp_constants_tour.py``. Everything printed here is
computed by quadrature plus a search over alpha unless the line says otherwise.
"""

import math

import numpy as np

from realpart import ConstantQuery, k_alpha, k_profile, k_sharp

# %% The parametric constant K_{n,p}(alpha) for the first derivative, p = inf.
# It does not depend on alpha at all, which is why 2/pi is both K(alpha) and K.
alphas = np.linspace(0, math.pi / 2, 5)
print("K_{1,inf}(alpha):", [round(k_alpha(1, "inf", a), 12) for a in alphas])
print("2/pi           :", round(2 / math.pi, 12))

# %% For the second derivative the profile is no longer flat.
_, prof = k_profile(2, "inf", points=9)
print("\nK_{2,inf}(alpha) on [0, pi/2]:")
for a, v in zip(np.linspace(0, math.pi / 2, 9), prof):
    print(f"  {a:6.3f}  {v:.10f}")

# %% Maximising over alpha, with and without the registry of known formulas.
for n, p in [(2, "inf"), (4, "inf"), (6, "inf"), (3, 2), (2, "4/3")]:
    quad = k_sharp(ConstantQuery(n, p), use_closed_form=False)
    reg = k_sharp(ConstantQuery(n, p))
    print(f"\nK_{{{n},{p}}}: quadrature {quad.value:.12g} at alpha={quad.alpha_star:.4g}; "
          f"{reg.method} {reg.value:.12g}")
