# %% [markdown]
# # Ternary maps of pi_G(w3)
#
# Over the simplex p1 + p2 <= 1 with p3 = 1 - p1 - p2. Large n shows the
# discontinuity lines of the optimal transform; n = 1 has none.

# %%
import numpy as np

from probposs import emit_ternary_map

# %%
for n in (100, 1, 2, 5):
    table = emit_ternary_map(n, 0.1)
    print(f"n={n}: {len(table)} grid points, pi3 range [{table[:, 2].min():.3f}, {table[:, 2].max():.3f}]")

# %% [markdown]
# A coarse text rendering: rows are p1, columns p2, blanks outside the simplex.

# %%
step = 0.1
table = emit_ternary_map(5, step)
k = int(round(1 / step))
grid = np.full((k + 1, k + 1), np.nan)
for p1, p2, pi3 in table:
    grid[int(round(p1 / step)), int(round(p2 / step))] = pi3
for row in grid:
    print(" ".join("  .  " if np.isnan(v) else f"{v:.2f} " for v in row))
