# %% [markdown]
# # Going back: possibility to probability
#
# Closed forms exist for the symmetric and optimal transforms. The
# generalized family needs a numerical solve.

# %%
import numpy as np

from probposs import (
    SolverConfig,
    converse_generalized,
    converse_optimal,
    converse_symmetric,
    transform_generalized,
)

# %%
print(converse_symmetric([1, 0.998]).tolist())
print(converse_optimal([1, 0.499]).tolist())
# repeated values share the step below them
print(converse_optimal([1, 1, 0.2]).tolist())

# %%
p = np.array([0.45, 0.25, 0.15, 0.1, 0.05])
for n in (1, 2, 5, 20):
    pi = transform_generalized(p, n)
    report = converse_generalized(pi, n)
    err = np.max(np.abs(report.solution.masses - p))
    print(f"n={n:>2}: converged={report.converged} in {report.iterations} steps, "
          f"residual {report.final_residual:.1e}, max error {err:.1e}")

# %% [markdown]
# The solver reports failure instead of guessing.

# %%
report = converse_generalized(transform_generalized(p, 3), 3, SolverConfig(max_iterations=1))
print(report.converged, report.final_residual)
