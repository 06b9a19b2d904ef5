"""Symmetric antitrees that meet the Bonnet-Myers bound.

An antitree stacks cliques V_1, ..., V_N with complete joins between
consecutive levels. With |V_1| = 1 every edge curvature has a closed form,
and sharpness forces each radial curvature to equal 2/L. Solving those
equations level by level leaves every level affine in t = a_2, so the whole
search reduces to an integrality question.
"""
# %%
from ricci_sharp import (
    AntitreeSequence,
    antitree_graph,
    closed_form_curvatures,
    is_bm_sharp,
    scan_even_diameter,
    scan_even_range,
    scan_odd_small,
)

seq = AntitreeSequence((1, 3, 3, 1))
for locus, value in closed_form_curvatures(seq).items():
    print(f"{locus}: {value}")
print("transport agrees:", is_bm_sharp(antitree_graph(seq)).min_curvature)

# %%
# Diameter 4 and 6: one sharp antitree for every t >= 1.
for L in (4, 6):
    r = scan_even_diameter(L)
    print(r.describe())
    print("   ", [str(r.instantiate(t)) for t in (1, 2, 3)])

# %%
# Diameter 10: level 6 comes out as 19t + 25/2, never an integer.
r = scan_even_diameter(10)
for k, form in r.trace:
    print(f"  a_{k} = {form}")
print(r.describe())

# %%
# The same obstruction shows up at every even diameter we try.
results = scan_even_range(8, 200)
print(sum(r.is_empty for r in results), "of", len(results), "even diameters in 8..200 have no sharp antitree")

# %%
# Odd diameters 3 and 5 are finite searches.
for L in (3, 5):
    r = scan_odd_small(L)
    print(r.describe())
    for c in r.region:
        print(f"    AT{tuple(c['sequence'])}: min {c['min_curvature']}, fails at {c['failing_loci']}")
