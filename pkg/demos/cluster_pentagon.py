"""The cluster category of type A2 as a five-object mesh category.

Here Σ = τ, the category is 2-Calabi-Yau and its cluster-tilting objects are
the five pairs of neighbours on the pentagon.

Run with ``python demos/cluster_pentagon.py``.
"""

from importlib import resources

from quotbench import theory as th
from quotbench.mesh import build_mesh
from quotbench.stable import serre_2cy_check

m = build_mesh(str(resources.files("quotbench") / "data" / "cluster-A2-pentagon.json"))
cat = m.cat
print("objects:", cat.labels)
print("AR-quiver:", [(cat.labels[i], cat.labels[j]) for (i, j) in cat.irreducible_dims()])
print("2-Calabi-Yau:", serre_2cy_check(cat)["is_2cy"])

suite = th.theorem_suite(cat)
print("\n  T        full  dense  a     b*    c     cluster-tilting")
for row in suite.data["rows"]:
    if len(row["T"]) > 2:
        continue
    print(
        f"  {'+'.join(row['T']):8s} {row['full']:5s} {row['dense']:6s} {row['a']:5s} "
        f"{row['b_star']:5s} {row['c']:5s} {row['cluster_tilting']}"
    )
ct = [row["T"] for row in suite.data["rows"] if row["cluster_tilting"] == "pass"]
print("\ncluster-tilting objects:", ct)
print("cross-checks:", suite.verdict, suite.data["counts"])
full_dense = [row["T"] for row in suite.data["rows"] if row["full"] == "pass" and row["dense"] == "pass"]
print("T with Hom(T, -) full and dense:", full_dense)
