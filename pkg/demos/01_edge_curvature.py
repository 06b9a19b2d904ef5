"""Edge curvature on a few small graphs.

Run with ``python3 demos/01_edge_curvature.py``.
"""
# %%
# Every value below is an exact Fraction. The Lin-Lu-Yau curvature of an edge
# comes from a single transport problem at idleness 1/(max degree + 1).
from fractions import Fraction

from ricci_sharp import curvature_sweep, generate, kappa_lly, kappa_p, lly_idleness

for expr in ["K:2", "K:4", "Q:3", "CP:3", "G:1,2"]:
    G = generate(expr)
    rep = curvature_sweep(G)
    values = sorted({str(e.kappa_lly) for e in rep.edges})
    print(f"{expr:8} n={G.n:<3} diam={rep.diameter}  curvatures {values}")

# %%
# Full table for G(1,2): K_4 with one edge removed. The edge between the two
# unmatched vertices is the only one above 1.
G = generate("G:1,2")
print(curvature_sweep(G).table(G))

# %%
# kappa_p is concave in the idleness p and linear from the LLY threshold on.
# Dividing by 1 - p there gives the same number at every sample.
G = generate("AT:1,3,3,1")
x, y = G.edges()[0]
p0 = lly_idleness(G, x, y)
print(f"edge {x}-{y}, threshold p = {p0}, kappa_LLY = {kappa_lly(G, x, y)}")
for k in range(9):
    p = Fraction(k, 8)
    kp = kappa_p(G, x, y, p)
    note = f"  kappa_p/(1-p) = {kp / (1 - p)}" if p >= p0 and p < 1 else ""
    print(f"  p = {str(p):4}  kappa_p = {kp}{note}")
