"""
Building a witness
==================

Start from a small bipartite tournament, normalize it, and build the
valuation witness over it.
"""

from partite_eppa import Tournament, build_witness, normalize, witness_size
from partite_eppa.formats import export_dot
from partite_eppa.verify import verify_embedding

# Parts {1, 2} and {3}: part 2 is short, so normalization pads it.
T = Tournament.from_parts([[1, 2], [3]], [(1, 3), (3, 2)])
G = normalize(T)
print("relabeling:", G.relabel_map, "padding:", sorted(G.padding), "m =", G.m)

W = build_witness(G)
print("witness vertices:", len(W), "= k * 2**(k - m) =", witness_size(G.k, G.n))
print("witness arcs:", W.edge_count())

# psi sends every vertex to its canonical valuation
for x, v in W.psi.items():
    print(f"  psi({x}) = {v.label}")
assert verify_embedding(G, W) is None

# The smallest case is small enough to draw.
tiny = build_witness(normalize(Tournament.from_parts([[1], [2]], [(1, 2)])))
print(export_dot(tiny))
