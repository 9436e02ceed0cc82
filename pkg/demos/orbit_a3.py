"""An orbit category of ℤA3 with declared triangles.

The mesh category of ℤA3 modulo τ⁻¹ρ (ρ the diagram reflection) has six
objects and Σ acting trivially on them.  With T = 321 ⊕ 32 ⊕ 3 the functor
Hom(T, -) lands in modules over the path algebra of A3.

Run with ``python demos/orbit_a3.py``.
"""

from importlib import resources

import numpy as np

from quotbench import theory as th
from quotbench.gamma import GammaAlgebra
from quotbench.mesh import build_mesh

m = build_mesh(str(resources.files("quotbench") / "data" / "example-4-2-orbit-A3.json"))
cat = m.cat
print("objects and ℤA3 coordinates:", m.coords)
print("hom dimensions from path bases:\n", cat.dims)
print("agree with the additive-function recursion:", np.array_equal(cat.dims, m.hammock_dims()))

print("\ndeclared triangles:")
for t in cat.declared_triangles:
    print(" ", t.labels(cat), "certificate ok:", t.certificate.ok)

T = cat.parse_object("321,32,3")
G = GammaAlgebra(cat, T)
print("\nΓ quiver arrows:", [f"{a.source} -> {a.target}" for a in G.quiver.arrows])
print("dim Γ =", G.dim, "with", len(G.indecomposables().objects), "indecomposable modules")
reports = th.evaluate_T(cat, T)
for key in ("full", "dense", "a", "b", "c", "cluster_tilting"):
    print(f"  {key:16s} {reports[key].verdict}")
print("condition b used:", reports["b"].data["triangles"])

suite = th.theorem_suite(cat)
print("\ncross-checks over all subsets:", suite.verdict, suite.data["counts"])
