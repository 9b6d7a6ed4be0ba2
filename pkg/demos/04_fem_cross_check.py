"""
Finite elements against the exact solver
========================================

Linear elements overestimate each eigenvalue by O(h**2).  Halving the mesh
width should cut the error by four.
"""
# %%
import numpy as np

from quantree import fem_eigenvalues, find_eigenvalues
from quantree.experiments import random_tree

g = random_tree(2024, 7)
exact = np.array([p.mu for p in find_eigenvalues(g, 50.0) for _ in range(p.multiplicity)])
print(len(exact), "eigenvalues below 50")

# %%
hs = [4e-3, 2e-3, 1e-3]
errors = np.array([np.array(fem_eigenvalues(g, h, len(exact))) - exact for h in hs])
for mu, col in zip(exact[1:], errors[:, 1:].T):
    order = np.log2(col[:-1] / col[1:])
    print(f"mu = {mu:9.5f}  errors {col[0]:.2e} {col[1]:.2e} {col[2]:.2e}  orders {order.round(3)}")
