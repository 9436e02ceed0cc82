"""Acceptance suite: nine end-to-end criteria with time limits.

Every criterion rebuilds its categories from the bundled data files so the
timings include knitting and construction.  Each test records one PASS/FAIL
line; the lines are printed at the end of the pytest run.
"""

import itertools
import time
from collections import Counter

import numpy as np

from conftest import data_path
from quotbench import quiver as qv
from quotbench import theory as th
from quotbench.category import module_category_handle
from quotbench.gamma import GammaAlgebra
from quotbench.mesh import build_mesh
from quotbench.stable import StableCategory, serre_2cy_check

RESULTS: dict[int, str] = {}

FIGURE_ARROWS = Counter(
    [("a", "ba"), ("ba", "aba"), ("ba", "b"), ("aba", "ab"), ("b", "ab"), ("ab", "bab"), ("ab", "a"), ("bab", "ba")]
)


class Criterion:
    """Collects named sub-checks and the wall time of one criterion."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit
        self.checks: list[tuple[str, bool]] = []

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def check(self, name: str, ok) -> bool:
        self.checks.append((name, bool(ok)))
        return bool(ok)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is not None:
            self.checks.append((f"raised {exc_type.__name__}: {exc}", False))
        if self.limit is not None:
            self.checks.append((f"time {elapsed:.2f}s < {self.limit:g}s", elapsed < self.limit))
        failed = [n for n, ok in self.checks if not ok]
        verdict = "PASS" if not failed else "FAIL"
        line = f"[{verdict}] criterion {self.number}: {self.title} ({elapsed:.2f}s)"
        if failed:
            line += " failed: " + "; ".join(failed)
        RESULTS[self.number] = line
        self.failed = failed
        return False

    def assert_ok(self):
        assert not self.failed, RESULTS[self.number]


def fresh_algebra_setup():
    Q = qv.load_algebra(data_path("example-4-1-algebra.json"))
    mc = qv.knit_module_category(Q)
    return Q, mc, StableCategory(mc)


# ---------------------------------------------------------
# 1. Self-injective example end to end
# ---------------------------------------------------------
def test_criterion_1_selfinjective_end_to_end():
    with Criterion(1, "self-injective algebra end to end", limit=5.0) as cr:
        Q, mc, S = fresh_algebra_setup()
        cr.check("6 indecomposables", len(mc.objects) == 6)
        arrows = Counter({(s, t): k for s, t, k in mc.ar_edges()})
        cr.check("AR-quiver arrow multiset", arrows == FIGURE_ARROWS)
        cat = S.cat
        cr.check("stable category has 4 objects", len(th.live_objects(cat)) == 4)
        ideal = th.CategoryIdeal(cat, objects=["a"])
        Qc, ks = th.quotient_and_ks_check(cat, ideal)
        qc = Qc.cat
        live = sorted(qc.labels[i] for i in th.live_objects(qc))
        cr.check("quotient has 3 indecomposables", live == ["ab", "b", "ba"])
        qarrows = {(qc.labels[i], qc.labels[j]): k for (i, j), k in qc.irreducible_dims().items()}
        cr.check("quotient AR-quiver ba -> b -> ab", qarrows == {("ba", "b"): 1, ("b", "ab"): 1})
        cr.check("Krull-Schmidt quotient", ks.passed)
        T = cat.parse_object("ba,b")
        cr.check("representability", th.representability_suite(cat, ideal, T=T).passed)
        r = th.evaluate_T(cat, T)
        for key in ("full", "dense", "a", "b"):
            cr.check(key, r[key].passed)
    cr.assert_ok()


# ---------------------------------------------------------
# 2. No cluster-tilting subcategory
# ---------------------------------------------------------
def test_criterion_2_no_cluster_tilting():
    with Criterion(2, "no cluster-tilting subset among 15", limit=5.0) as cr:
        _, _, S = fresh_algebra_setup()
        cat = S.cat
        live = th.live_objects(cat)
        subsets = [T for k in range(1, len(live) + 1) for T in itertools.combinations(live, k)]
        cr.check("15 nonempty basic subsets", len(subsets) == 15)
        hits = [T for T in subsets if th.is_cluster_tilting(cat, T).passed]
        cr.check(f"cluster-tilting subsets found: {hits}", not hits)
    cr.assert_ok()


# ---------------------------------------------------------
# 3. Orbit category of A3
# ---------------------------------------------------------
def test_criterion_3_orbit_a3():
    with Criterion(3, "A3 orbit category, T = 321+32+3", limit=5.0) as cr:
        m = build_mesh(data_path("example-4-2-orbit-A3.json"))
        cat = m.cat
        cr.check("6 objects", len(th.live_objects(cat)) == 6)
        T = cat.parse_object("321,32,3")
        G = GammaAlgebra(cat, T)
        cr.check("dim Γ = 6", G.dim == 6 and G.quiver.algebra.dim == 6)
        cr.check("Γ has quiver of type A3", len(G.quiver.vertices) == 3 and len(G.quiver.arrows) == 2)
        cr.check("6 indecomposable Γ-modules", len(G.indecomposables().objects) == 6)
        cr.check("3 declared triangles", len(cat.declared_triangles) == 3)
        cr.check("declared triangles certified", all(t.certificate.ok for t in cat.declared_triangles))
        r = th.evaluate_T(cat, T)
        for key in ("full", "dense", "a", "b"):
            cr.check(key, r[key].passed)
        used = set(r["b"].data["triangles"].values())
        cr.check("condition b driven by declared triangles", any(u.startswith("declared") for u in used))
    cr.assert_ok()


# ---------------------------------------------------------
# 4. (full and dense) iff (a and b) on the stable category
# ---------------------------------------------------------
def test_criterion_4_full_dense_iff_a_b():
    with Criterion(4, "(full and dense) iff (a and b), 15 subsets") as cr:
        _, _, S = fresh_algebra_setup()
        rep = th.theorem_suite(S.cat)
        counts = rep.data["counts"]["i"]
        cr.check("all 15 subsets decided", counts["checked"] == 15 and counts["skipped"] == 0)
        bad = [w for w in rep.witnesses if w.get("part") == "i"]
        cr.check(f"disagreements {bad}", not bad)
    cr.assert_ok()


# ---------------------------------------------------------
# 5. Cluster pentagon
# ---------------------------------------------------------
def test_criterion_5_pentagon():
    with Criterion(5, "A2 cluster pentagon", limit=10.0) as cr:
        m = build_mesh(data_path("cluster-A2-pentagon.json"))
        cat = m.cat
        cr.check("Σ = τ", cat.sigma == cat.tau)
        cr.check("2-Calabi-Yau", serre_2cy_check(cat)["is_2cy"])
        rep = th.theorem_suite(cat)
        counts = rep.data["counts"]
        cr.check("31 subsets checked", rep.data["subsets"] == 31 and not rep.data["partial"])
        cr.check("part ii decided everywhere", counts["ii"]["skipped"] == 0 and counts["ii"]["checked"] == 31)
        for part in ("ii", "iv"):
            bad = [w for w in rep.witnesses if w.get("part") == part]
            cr.check(f"part {part} disagreements {bad}", not bad)
        cr.check("part iv exercised", counts["iv"]["checked"] > 0)
        ct = [row["T"] for row in rep.data["rows"] if row["cluster_tilting"] == "pass"]
        cr.check(f"exactly 5 cluster-tilting objects (got {ct})", len(ct) == 5)
        cr.check("each with 2 summands", all(len(T) == 2 for T in ct))
    cr.assert_ok()


# ---------------------------------------------------------
# 6. Harada-Sai
# ---------------------------------------------------------
def test_criterion_6_harada_sai():
    with Criterion(6, "Harada-Sai chains vanish in mod A") as cr:
        _, mc, _ = fresh_algebra_setup()
        rep = th.harada_sai_check(module_category_handle(mc), samples=10_000)
        d = rep.data
        cr.check("N = 3", d["N"] == 3)
        cr.check("chains of length 8", d["chain_length"] == 8)
        cr.check(">= 10^4 sampled chains", d["random_chains"] >= 10_000)
        cr.check(f"zero exceptions ({len(rep.witnesses)})", rep.passed)
    cr.assert_ok()


# ---------------------------------------------------------
# 7. l_hat monotonicity and projective generators
# ---------------------------------------------------------
def test_criterion_7_l_hat_and_generators():
    with Criterion(7, "l_hat monotone; projective generators") as cr:
        ka3 = module_category_handle(qv.knit_module_category(qv.load_algebra(data_path("kA3.json"))))
        _, _, S = fresh_algebra_setup()
        qc = th.QuotientCategory(S.cat, th.CategoryIdeal(S.cat, objects=["a"])).cat
        for name, c, expected in (("kA3", ka3, ["3", "32", "321"]), ("quotient", qc, ["b", "ba"])):
            monos = th.proper_mono_survey(c)
            cr.check(f"{name}: proper monos found", monos.data["monos"])
            cr.check(f"{name}: l_hat strictly increases", monos.passed)
            P, pg = th.find_projective_generator(c)
            cr.check(f"{name}: generator report", pg.passed)
            cr.check(f"{name}: P = {expected}", sorted(c.labels[p] for p in P) == expected)
    cr.assert_ok()


# ---------------------------------------------------------
# 8. AR-triangles under Hom(T, -)
# ---------------------------------------------------------
def test_criterion_8_ar_preservation():
    with Criterion(8, "AR-triangle images, T = ba+b") as cr:
        _, _, S = fresh_algebra_setup()
        cat = S.cat
        T = cat.parse_object("ba,b")
        rep = th.ar_image_checks(cat, T)
        rows = rep.data["objects"]
        qualifying = [lab for lab, row in rows.items() if "ar_sequence" in row]
        cr.check(f"qualifying AR-triangle exists ({qualifying})", qualifying)
        cr.check("image is an almost split sequence", all(rows[l]["ar_sequence"] for l in qualifying))
        in_T = {cat.labels[t] for t in T}
        cr.check(
            "end-map image vanishes iff X outside add T, all 4 objects",
            len(rows) == 4 and all(row["h_bar_zero"] == (lab not in in_T) for lab, row in rows.items()),
        )
        cr.check("report passes", rep.passed)
    cr.assert_ok()


# ---------------------------------------------------------
# 9. Oracle equivalences
# ---------------------------------------------------------
def test_criterion_9_oracle_equivalences():
    with Criterion(9, "hammock = path dims; Serre numerics") as cr:
        meshes = {n: build_mesh(data_path(n)) for n in ("example-4-2-orbit-A3.json", "cluster-A2-pentagon.json")}
        for name, m in meshes.items():
            cr.check(f"{name}: hammock dims", np.array_equal(m.hammock_dims(), m.cat.dims))
        _, _, S = fresh_algebra_setup()
        cats = {"stable": S.cat, **{n: m.cat for n, m in meshes.items()}}
        for name, c in cats.items():
            cr.check(f"{name}: Serre numerics", serre_2cy_check(c)["has_serre_numerics"])
    cr.assert_ok()
