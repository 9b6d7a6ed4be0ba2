"""
A tree whose extrema are not at maximal distance
================================================

A path of length two and two small three-edge stars hang off a common
vertex.  For small ``epsilon`` the stars carry the spectral gap, the path
part of the eigenfunction vanishes, and the extrema sit on the star leaves:
closer together than the diameter.
"""
# %%
from quantree import build_paper_example, repro
from quantree.experiments import EPSILON_STAR

P2, S2, Gamma = build_paper_example(0.05)
print(Gamma.n_vertices, "vertices,", Gamma.n_edges, "edges, total length", Gamma.total_length)

# %%
rep = repro(0.05)
print(f"mu2(P2)    = {rep.mu2_P2:.12f}")
print(f"mu2(S2)    = {rep.mu2_S2:.12f}")
print(f"mu2(Gamma) = {rep.mu2_Gamma:.12f}  multiplicity {rep.multiplicity_Gamma}")
print("sup on the path / sup overall:", rep.p2_sup_ratio)
print("max", rep.max_labels, "min", rep.min_labels)
print("extrema distance", rep.extrema_distance, "< diameter", rep.diameter)

# %%
# The construction breaks once the stars become too short: past this
# epsilon the path takes over the gap again.
print("threshold epsilon:", EPSILON_STAR)
for eps in (0.0, 0.05, 0.1, 0.11, 0.2):
    r = repro(eps)
    print(f"eps={eps:<5} ordering {r.ordering_holds!s:<5} all checks {r.passed}")
