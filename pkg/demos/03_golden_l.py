"""The golden L: saddle vectors in Q(sqrt 5), conjugate domination and heights.

Run:  python demos/03_golden_l.py
"""

import time

from sctk.dioph import (
    c1_from_parabolic,
    convergent_height_check,
    entry_domination,
    group_words,
    parabolic_parameter,
    trace_domination,
    vector_domination_stability,
)
from sctk.mink import mink_lower_bound_search, mink_upper_bound
from sctk.surface import golden_l_model, orbit_vectors, shortest_vector_check
from sctk.zexp import parse_theta, sandwich_check, tessellation_stream, z_expansion

G = golden_l_model()
print(f"golden L: area {G.volume} ~ {float(G.volume):.4f}")
vs = orbit_vectors(G, 10)
print(f"{len(vs)} saddle vectors of length <= 10, e.g. {vs[len(vs) // 2]}")
print("Vorobets:", shortest_vector_check(G).passed)

theta = parse_theta("pi")
records = z_expansion(tessellation_stream(theta, G.tessellation), theta, max_terms=14)
print("\nZ-expansion of pi:")
for r in records[:8]:
    print(f"  n={r.index}: ({r.p}, {r.q})")
print("sandwich with mu = pi * area:", sandwich_check(records, theta, mink_upper_bound(G)).passed)

hc = convergent_height_check(records, D=2, m=2)
print(f"fitted c2 = {hc.c2}, held-out tail passes: {hc.passed}, 2*p and 2*q integral: {hc.integral}")

t0 = time.perf_counter()
words = group_words(G, 6)
c1 = c1_from_parabolic(parabolic_parameter(G))
tr = [trace_domination(w) for w in words]
kinds = {k: sum(t.kind == k for t in tr) for k in ("hyperbolic", "parabolic", "elliptic")}
print(f"\n{len(words)} group elements (words of length <= 6): {kinds}")
print("  trace domination:", all(t.passed for t in tr))
print(f"  entry domination with c1 = {c1}:", all(entry_domination(w, c1).passed for w in words))
st = vector_domination_stability(G, 20)
print(f"  vector domination c_emp: R=20 {float(st.small.c_emp)}, R=40 {float(st.large.c_emp)}, "
      f"stable {st.stable}  ({time.perf_counter() - t0:.1f}s)")

rep = mink_lower_bound_search(orbit_vectors(G, 20), 20, upper_bound=mink_upper_bound(G))
print(f"\nMinkowski constant between {float(rep.lower_bound):.4f} and {float(rep.upper_bound):.4f}")
