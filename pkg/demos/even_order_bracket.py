"""Even derivatives with p = inf: where the maximum sits and how tight the bracket is.

For n = 2m the maximiser over alpha alternates between 0 and pi/2 for small m,
and the simple bounds L = (2/pi)((2m-1)!!)^2 < K < 2m/(2m-1) L close in as m grows.
"""

import math

from realpart import ConstantQuery, bounds_even, k_sharp
from realpart.constants import PRINTED_RATIOS, consistency_report

print(" m   alpha*        K_{2m,inf}          L/K      U/K")
for m in range(1, 9):
    r = k_sharp(ConstantQuery(2 * m, "inf"), use_closed_form=False)
    b = bounds_even(m)
    print(f"{m:2d}  {r.alpha_star:7.4f}  {r.value:20.10f}  {b.lower / r.value:.4f}  {b.upper / r.value:.4f}")

# The four-decimal ratios that circulate for m = 1..4. Note that U/L = 2m/(2m-1)
# exactly, so the two columns of a row must be in that proportion.
print("\nprinted ratio pairs and their implied U/L:")
for m, (lo, up) in PRINTED_RATIOS.items():
    print(f"  m={m}: {lo}/{up}  ->  {up / lo:.4f} (should be {2 * m / (2 * m - 1):.4f})")

# Two printed closed forms for n = 6 and 8 disagree with the quadrature value.
for row in consistency_report():
    print(f"\n{row['case']}: printed formula {row['printed_formula']:.3f}, "
          f"quadrature {row['quadrature']:.3f}, from ratio table {row['ratio_table_from_lower']:.3f}")
