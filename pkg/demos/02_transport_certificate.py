"""Reading a transport plan and its Kantorovich potential.

The solver returns a coupling together with a 1-Lipschitz potential whose
dual objective matches the coupling's cost, so the value can be checked
without trusting the solver.
"""
# %%
from ricci_sharp import cycle_graph, vertex_measure, verify_transport, wasserstein1

G = cycle_graph(6)
mu = vertex_measure(G, 0, 0)
nu = vertex_measure(G, 2, 0)
print("mu:", {v: str(m) for v, m in mu.masses.items()})
print("nu:", {v: str(m) for v, m in nu.masses.items()})

# %%
r = wasserstein1(G, mu, nu)
print("W1 =", r.value)
for (u, v), m in sorted(r.plan.entries.items()):
    print(f"  move {m} from {u} to {v} (distance {G.distance(u, v)})")

# %%
# The potential is defined on every vertex, not just the supports.
phi = r.certificate.potential
print("phi:", {v: str(phi[v]) for v in sorted(phi)})
print("dual objective =", r.certificate.objective(mu, nu))
print("certificate checks out:", verify_transport(G, mu, nu, r))

# %%
# Lowering the claimed value by any amount breaks the certificate.
from dataclasses import replace
from fractions import Fraction

print("tampered value accepted:", verify_transport(G, mu, nu, replace(r, value=r.value - Fraction(1, 100))))
