# Grid refinement on u = x^q (1-x)^q and the error floor.
#
# Errors fall like h^N until they hit ~1e-14..1e-12. That floor comes from
# evaluating the closed-form reference in double precision; it disappears when
# the reference is evaluated with extra digits.
import numpy as np

from riesz_stencil import run_poly_experiment

np.set_printoptions(precision=3)

table = run_poly_experiment(6, 0.2, (4, 6, 8, 10))
print("q = 6, alpha = 0.2")
print(table.format())

print()
double = run_poly_experiment(10, 1.8, (6, 8, 10))
precise = run_poly_experiment(10, 1.8, (6, 8, 10), precise=True)
print("q = 10, alpha = 1.8, finest level")
print("  double reference :", double.E[-1])
print("  precise reference:", precise.E[-1])

# the CSV layout is one row per (level, order)
print()
print(table.to_csv().splitlines()[:5])
