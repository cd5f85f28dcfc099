"""
Semi-genericity and smaller inputs
==================================

The even-quadruple test, and a witness built for a 4-vertex tournament
reused for a 3-vertex one.
"""

from partite_eppa import Tournament, build_witness, is_semigeneric, normalize, verify_remark
from partite_eppa.core import semigeneric_violation
from partite_eppa.verify import find_embedding

even = Tournament.from_parts([[1, 2], [3, 4]], [(1, 3), (1, 4), (2, 3), (2, 4)])
odd = Tournament.from_parts([[1, 2], [3, 4]], [(1, 3), (1, 4), (2, 3), (4, 2)])
print("all arcs forward:", is_semigeneric(even))
print("one arc reversed:", is_semigeneric(odd), semigeneric_violation(odd))

W = build_witness(normalize(even))
A = Tournament.from_parts([[1], [2, 3]], [(1, 2), (3, 1)])
print("copy of A:", {x: v.label for x, v in find_embedding(A, W).items()})
print("W witnesses A:", verify_remark(W, A) or "ok")
