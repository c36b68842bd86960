# A truncated cosine cos(2 pi f x) on [0, 1] is not smooth at the ends:
# u(0) = u(1) = 1 while u is zero outside. With f = 11 the coarse grids are
# also barely above two points per wavelength, so the error first drops fast
# once the oscillation is resolved, then settles into first order.
from riesz_stencil import run_cosine_experiment

for alpha in (1.2, 1.8):
    t = run_cosine_experiment(11, alpha, (4, 6, 8, 10))
    print(f"f = 11, alpha = {alpha}")
    print(t.format())
    print()
