"""The growth detector on slow and on very fast height sequences.

Run:  python demos/04_growth_detector.py
"""

import math

from sctk.dioph import growth_indicator
from sctk.zexp import lattice_stream, parse_theta, z_expansion

theta = parse_theta("sqrt(2)")
records = z_expansion(lattice_stream(theta), theta, max_terms=21)
pell = [int(r.q.as_fraction()) for r in records if r.q > 0]

rep = growth_indicator(pell, D=1)
print(f"sqrt(2), {len(pell)} heights, threshold log(2D-1) + margin = {rep.threshold + rep.margin}")
for n, q, v in rep.rows[::4]:
    print(f"  n={n:2d}  q={q:>10d}  loglog(q)/n = {v:.4f}")
print(f"  max {rep.running_max[-1]:.4f} -> flagged {rep.flagged}")
# log log q_n / n stays below 0.05 only from n = 87 on
far = [1, 2]
while len(far) < 160:
    far.append(2 * far[-1] + far[-2])
late = growth_indicator(far, D=1, window=20)
print(f"  the same recurrence, terms {late.window}: max {late.running_max[-1]:.4f}, flagged {late.flagged}")

liou = [10 ** math.factorial(n) for n in range(1, 9)]
rep = growth_indicator(liou, D=1)
print(f"\n10^(n!), 8 heights: max {rep.running_max[-1]:.4f} -> flagged {rep.flagged}")
print("growth exponents log q_(n+1) / log q_n:", [round(e, 2) for _, e in rep.exponents])

print("\nCSV for plotting:\n" + growth_indicator(pell[:8], D=1).to_csv())
