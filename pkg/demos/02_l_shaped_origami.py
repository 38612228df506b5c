"""The three-square L: its saddle vectors are exactly the primitive vectors.

Run:  python demos/02_l_shaped_origami.py
"""

import time

from sctk.mink import mink_exact_lattice, mink_lower_bound_search, mink_upper_bound
from sctk.surface import (
    l_shaped_origami,
    primitive_lattice,
    shortest_vector_check,
    trace_saddle_connections,
    validate_origami,
    volume,
)
from sctk.zexp import origami_tree_stream, parse_theta, sandwich_check, z_expansion

L = l_shaped_origami()
sing = validate_origami(L)
print(f"L(3): genus {sing.genus}, cone angles {[2 * k for k in sing.cone_angles]} pi, area {volume(L)}")

for R in (10, 20, 30):
    t0 = time.perf_counter()
    traced = trace_saddle_connections(L, R)
    same = {v.key for v in traced} == {v.key for v in primitive_lattice(R)}
    mult = max(v.multiplicity for v in traced)
    print(f"  R={R}: {len(traced)} vectors, equal to primitive lattice: {same}, "
          f"max multiplicity {mult}, {time.perf_counter() - t0:.2f}s")

sv = shortest_vector_check(L)
print(f"shortest saddle vector {sv.shortest} <= sqrt(2*area) = {sv.bound:.4f}: {sv.passed}")

# Minkowski constant: search from below, pi * area from above, 1 exactly
Z = trace_saddle_connections(L, 20)
rep = mink_lower_bound_search(Z, 20, upper_bound=mink_upper_bound(L))
print(f"\nMinkowski constant: search {float(rep.lower_bound):.9f}, exact {mink_exact_lattice()}, "
      f"upper {float(rep.upper_bound):.6f}")
print("  witness:", rep.as_dict()["witness"])

# expansion read off the surface directly, one Stern-Brocot node at a time
theta = parse_theta("pi")
records = z_expansion(origami_tree_stream(L, theta), theta, max_terms=12)
print("\nZ-expansion of pi on L(3):", [(str(r.p), str(r.q)) for r in records])
print("sandwich with mu = 3 pi:", sandwich_check(records, theta, mink_upper_bound(L)).passed)
