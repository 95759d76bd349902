"""A seven-point line, by hand.

Three labeled points at 0, 20, 40 and four unlabeled ones at 9, 13, 38, 41.
Every unlabeled point gets one edge to its nearest labeled point; the edge
weights are the uncertainty mass we want to remove by querying labels.
"""

import numpy as np

from alregress import NNBipartiteGraph, select_ours_sequential

X = np.array([[0.0], [20.0], [40.0], [9.0], [13.0], [38.0], [41.0]])
graph = NNBipartiteGraph.build(labeled=[0, 1, 2], unlabeled=[3, 4, 5, 6], features=X)

print("edges (point -> nearest labeled, weight):")
for u in graph.unlabeled:
    print(f"  x={X[u][0]:>5} -> x={X[graph.neighbor_of(u)][0]:>5}   "
          f"theta={graph.theta(u)}")
print(f"total uncertainty H = {graph.total_uncertainty()}")

# Labeling a point removes its own weight and can shrink its neighbors'.
# The point at 9 carries weight 9, and once labeled it sits 4 away from the
# point at 13, dragging that weight from 7 down to 4: a reduction of 12.
print("\nsingle-point reductions:")
for u in graph.unlabeled:
    print(f"  q({X[u][0]:>5}) = {graph.q_single(int(u))}")

trace = select_ours_sequential(graph)
print(f"\nchosen: x={X[trace.chosen][0]} with reduction {trace.score}")
print("(the point at 13 ties at 12; the smaller index wins)")

# Commit the query and look at the new weights.
after = graph.commit(np.array([trace.chosen]))
print("\nweights after labeling it:")
for u in after.unlabeled:
    print(f"  x={X[u][0]:>5}   theta {graph.theta(int(u))} -> {after.theta(int(u))}")
print(f"H' = {after.total_uncertainty()}  (H - H' = "
      f"{graph.total_uncertainty() - after.total_uncertainty()})")
