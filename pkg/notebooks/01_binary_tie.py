# %% [markdown]
# # Binary variables and the tie at p = 0.5
#
# The optimal transform is maximally specific but jumps when two masses
# swap order. The symmetric transform is continuous and vague. The
# generalized family sits in between.

# %%
import numpy as np

from probposs import (
    TransformSpec,
    emit_binary_curve,
    transform_generalized_fast,
    transform_optimal,
    transform_symmetric,
)

# %%
for p in ([0.5, 0.5], [0.501, 0.499]):
    print(p, "symmetric", transform_symmetric(p).tolist(), "optimal", transform_optimal(p).tolist())

# %% [markdown]
# Nudging the masses by 0.001 moves the optimal possibility of the second
# outcome from 1 to 0.499. The generalized transform moves smoothly, and
# further as n grows.

# %%
for n in (1, 2, 4, 10, 100):
    print(f"n={n:>3}", transform_generalized_fast([0.501, 0.499], n).tolist())

# %% [markdown]
# Plot-ready curves of pi(w1) against p(w1). Columns: p, then one column per n.

# %%
ns = (1, 2, 4, 10, 100)
curves = [emit_binary_curve(TransformSpec.generalized(n), 19) for n in ns]
table = np.column_stack([curves[0][:, 0]] + [c[:, 1] for c in curves])
np.set_printoptions(precision=4, suppress=True)
print(table)
