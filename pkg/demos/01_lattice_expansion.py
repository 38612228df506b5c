"""Z-expansions on the primitive integer vectors are ordinary continued fractions.

Run:  python demos/01_lattice_expansion.py
"""

from sctk.exactfield import golden_ratio
from sctk.reals import Real
from sctk.zexp import lattice_stream, parse_theta, sandwich_check, z_expansion

# pi, with the half-plane, hor and the stream all handled exactly
theta = parse_theta("pi")
records = z_expansion(lattice_stream(theta), theta, max_terms=10)
print("Z-expansion of pi on primitive Z^2")
for r in records:
    print(f"  n={r.index:2d}  p/q = {r.p}/{r.q}   hor ~ {float(r.hor):.3e}")

# the golden ratio walks the Fibonacci numbers
phi = golden_ratio()
fib = z_expansion(lattice_stream(phi), phi, max_terms=12)
print("\nheights for phi:", [str(r.q) for r in fib])

# a rational direction hits Z on the ray and the expansion stops there
stop = z_expansion(lattice_stream(parse_theta("22/7")), parse_theta("22/7"))
print("22/7 terminates at", stop[-1].vector)

# consecutive convergents are squeezed between two bounds; mu = 1 for Z^2
rep = sandwich_check(records, theta, 1)
print(f"\nsandwich check, mu = 1: {len(rep.steps)} pairs, all pass = {rep.passed}")
worst = min(rep.steps, key=lambda s: s.right_margin)
print(f"  tightest right margin at q = {worst.q}: {worst.right_margin:.3e}")

# the pi * vol bound is weaker but also holds
print("with mu = pi:", sandwich_check(records, theta, Real.pi()).passed)
