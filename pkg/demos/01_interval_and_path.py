"""
Spectra of an interval and a path
=================================

The Neumann interval of length one has eigenvalues (n*pi)**2.  Two unit
edges joined at a degree-two vertex behave exactly like an interval of
length two.
"""
# %%
import math

from quantree import build_graph, find_eigenvalues, global_extrema, second_eigenpair

unit = build_graph(2, [(0, 1, 1.0)])
for n, p in enumerate(find_eigenvalues(unit, 40.0)):
    print(f"mu = {p.mu:.12f}   (n*pi)^2 = {(n * math.pi) ** 2:.12f}")

# %%
# The path: vertex 0 sits in the middle, the ends are labelled.
path = build_graph(3, [(1, 0, 1.0), (0, 2, 1.0)], labels=["mid", "left", "right"])
pair = second_eigenpair(path)
print("mu_2 =", pair.mu, " pi^2/4 =", math.pi**2 / 4)

# %%
# The gap eigenfunction is a half cosine wave: extreme at the two ends.
rep = global_extrema(path, pair.basis[0])
print("max at", [path.label(p.vertex) for p in rep.max_points])
print("min at", [path.label(p.vertex) for p in rep.min_points])
print("distance between them", rep.extrema_distance, "diameter", rep.diameter)
