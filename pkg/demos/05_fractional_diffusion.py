# Using the operator: u_t = D^alpha u on (0, 1) with u = 0 outside.
#
# The Riesz operator is dissipative, so backward Euler is unconditionally
# stable. Each step solves a symmetric Toeplitz system.
import numpy as np
import scipy.linalg

from riesz_stencil import FilterSpec, GridSpec, build_filter, build_stencil
from riesz_stencil.stencil import RIESZ_SIGN

alpha, order, nodes = 1.5, 8, 201
grid = GridSpec(nodes)
stencil = build_stencil(build_filter(FilterSpec(alpha, order)), grid)

col = RIESZ_SIGN * stencil.values[: nodes - 2]
dt = 1e-3
lhs = -dt * col
lhs[0] += 1.0

x = grid.x[1:-1]
u = np.exp(-200 * (x - 0.5) ** 2)
for step in range(1, 201):
    u = scipy.linalg.solve_toeplitz(lhs, u)
    if step % 50 == 0:
        print(f"t={step * dt:.3f}  max u={u.max():.5f}  mass={u.sum() * grid.h:.5f}")

# eigenvalues are all negative, so every mode decays
eig = np.linalg.eigvalsh(scipy.linalg.toeplitz(col))
print(f"spectrum of the discrete operator: [{eig.min():.4g}, {eig.max():.4g}]")
