"""
Gluing pendants and adding Dirichlet points
===========================================

Attaching an edge at a vertex where the gap eigenfunction is nonzero
lowers the gap; attaching it where the eigenfunction vanishes changes
nothing.  A Dirichlet star gets a larger first eigenvalue when an arm is
shortened.
"""
# %%
from quantree import build_graph, build_paper_example, lowest_eigenpairs, monotonicity
from quantree.experiments import dirichlet_star

unit = build_graph(2, [(0, 1, 1.0)])
print(monotonicity(unit, 0, 0.5))

# %%
# Vertex 0 of the example tree is a zero of the gap eigenfunction.
Gamma = build_paper_example(0.05).Gamma
rep = monotonicity(Gamma, 0, 0.3)
print("f(v0) =", rep.eigenfunction_at_vertex, " change =", rep.decrease)

# %%
# For short pendants the drop is close to linear in the length.
for L in (0.4, 0.2, 0.1, 0.05):
    print(L, monotonicity(unit, 0, L).decrease)

# %%
S = dirichlet_star(0.05)
base = lowest_eigenpairs(S, 1)[0].mu
for scale in (1.0, 0.75, 0.5, 0.25):
    shorter = S.with_lengths([L * scale if e == 1 else L for e, L in enumerate(S.lengths)])
    print(f"arm scaled by {scale}: lambda_1 = {lowest_eigenpairs(shorter, 1)[0].mu:.6f}  (base {base:.6f})")
