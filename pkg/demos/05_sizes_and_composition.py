"""
Witness sizes and composition
=============================

Exact vertex counts, and how often the extension of a composite equals the
composite of the extensions (nothing guarantees it).
"""

from partite_eppa import build_witness, normalize, witness_size
from partite_eppa.extend import compose_agrees
from partite_eppa.verify import enumerate_partial_automorphisms, exhaustive_tournaments

for n in (2, 3, 4):
    print(f"n={n}:", {k: witness_size(k, n) for k in range(n, 4 * n + 1, n)})

G = normalize(next(exhaustive_tournaments(2, 4)))
W = build_witness(G)
maps = [p.transport(W.psi.__getitem__) for p in enumerate_partial_automorphisms(G, 2)]
tally = {True: 0, False: 0, None: 0}
for p1 in maps:
    for p2 in maps:
        tally[compose_agrees(G, W, p1, p2)] += 1
print("composition agrees / differs / not chained:", tally[True], tally[False], tally[None])
