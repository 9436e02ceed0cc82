import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotbench import linalg as la
from quotbench import theory as th
from quotbench.category import AddMorphism
from quotbench.gamma import GammaAlgebra


@pytest.fixture(scope="module")
def ideal_a(stable_cat):
    return th.CategoryIdeal(stable_cat, objects=["a"])


@pytest.fixture(scope="module")
def quotient_a(stable_cat, ideal_a):
    return th.QuotientCategory(stable_cat, ideal_a)


def ordered(cat, labels):
    return tuple(sorted(cat.index(x) for x in labels))


# ---------------------------------------------------------
# Reports
# ---------------------------------------------------------
def test_check_report_roundtrip():
    r = th.CheckReport("x", "fail", [{"object": "a"}], "note", {"k": [1, 2]})
    back = th.CheckReport.from_json(json.loads(r.dumps()))
    assert back == r
    assert back.failed and not back.passed


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        th.CheckReport("x", "fail", [])
    with pytest.raises(ValueError):
        th.CheckReport("x", "maybe", [])


# ---------------------------------------------------------
# Ideals and quotients
# ---------------------------------------------------------
def test_ideal_of_object_is_closed(ideal_a):
    assert ideal_a.is_closed()
    assert ideal_a.closed_by_construction


@given(st.integers(0, 2**31))
@settings(max_examples=30, deadline=None)
def test_ideal_closure_random(mod_a_handle, seed):
    """h ∘ f ∘ g stays in J for random f in J and random g, h."""
    cat = mod_a_handle
    rng = np.random.default_rng(seed)
    gen_src, gen_tgt = (int(v) for v in rng.integers(0, cat.n, 2))
    if not cat.dims[gen_src, gen_tgt]:
        return
    gen = cat.F.random(cat.dims[gen_src, gen_tgt], rng)
    J = th.CategoryIdeal(cat, morphisms=[(gen_src, gen_tgt, gen)])
    pairs = [k for k, s in J.sub.items() if s.dim]
    if not pairs:
        return
    i, j = pairs[int(rng.integers(len(pairs)))]
    f = J.sub[(i, j)].from_coords(cat.F.random(J.sub[(i, j)].dim, rng))
    w, z = (int(v) for v in rng.integers(0, cat.n, 2))
    g = cat.F.random(cat.dims[w, i], rng)
    h = cat.F.random(cat.dims[j, z], rng)
    if cat.dims[w, z] == 0:
        return
    hfg = cat.compose(w, j, z, cat.compose(w, i, j, g, f), h)
    assert J.contains(w, z, hfg)


def test_forced_ideal_detected_as_non_closed(stable_cat):
    c = stable_cat
    bad = th.CategoryIdeal(c, objects=["a"], forced={("b", "b"): [c.identity[c.index("b")]]})
    assert bad.closure_failures()
    assert not bad.is_closed()


def test_quotient_by_add_a(stable_cat, ideal_a):
    Q, ks = th.quotient_and_ks_check(stable_cat, ideal_a)
    qc = Q.cat
    assert ks.passed
    assert sorted(qc.labels[i] for i in th.live_objects(qc)) == ["ab", "b", "ba"]
    arrows = {(qc.labels[i], qc.labels[j]) for (i, j) in qc.irreducible_dims()}
    assert arrows == {("ba", "b"), ("b", "ab")}


def test_quotient_of_everything_is_zero(stable_cat):
    Q, ks = th.quotient_and_ks_check(stable_cat, th.CategoryIdeal.everything(stable_cat))
    assert ks.passed
    assert th.live_objects(Q.cat) == []


def test_zero_ideal_quotient_is_identity(stable_cat):
    Q = th.QuotientCategory(stable_cat, th.CategoryIdeal.zero(stable_cat))
    assert np.array_equal(Q.cat.dims, stable_cat.dims)


# ---------------------------------------------------------
# Epis, monos, l_hat and projective generators
# ---------------------------------------------------------
def test_epi_mono_in_quotient(quotient_a):
    qc = quotient_a.cat
    f = AddMorphism.single(qc, qc.index("ba"), qc.index("b"), [1])
    assert th.is_mono(qc, f)
    assert not th.is_epi(qc, f)
    assert not th.is_split_mono(qc, f)
    g = AddMorphism.single(qc, qc.index("b"), qc.index("ab"), [1])
    assert th.is_epi(qc, g) and not th.is_split_epi(qc, g)


def test_l_hat_ka3(ka3_handle):
    c = ka3_handle
    lh = {lab: th.l_hat(c, (c.index(lab),)) for lab in c.labels}
    assert lh == {"1": 3, "21": 4, "321": 3, "32": 2, "3": 1, "2": 2}


@pytest.mark.parametrize("which", ["ka3", "quotient"])
def test_l_hat_monotone_along_monos(which, ka3_handle, quotient_a):
    c = ka3_handle if which == "ka3" else quotient_a.cat
    rep = th.proper_mono_survey(c)
    assert rep.passed
    assert rep.data["monos"]


def test_projective_generator_ka3(ka3_handle):
    P, rep = th.find_projective_generator(ka3_handle)
    assert rep.passed
    assert P == ordered(ka3_handle, ["3", "32", "321"])


def test_projective_generator_quotient(quotient_a):
    qc = quotient_a.cat
    P, rep = th.find_projective_generator(qc)
    assert rep.passed
    assert P == ordered(qc, ["ba", "b"])
    assert th.is_projective_object(qc, qc.index("ba"))
    assert not th.is_projective_object(qc, qc.index("ab"))


def test_composition_length(mod_a):
    assert {M.label: th.composition_length(M) for M in mod_a.objects} == {
        "aba": 3, "bab": 3, "ba": 2, "ab": 2, "a": 1, "b": 1,
    }


def test_harada_sai_small(mod_a_handle):
    rep = th.harada_sai_check(mod_a_handle, samples=500)
    assert rep.passed
    assert rep.data["N"] == 3 and rep.data["chain_length"] == 8


# ---------------------------------------------------------
# Representability
# ---------------------------------------------------------
def test_representability_passes(stable_cat, ideal_a):
    rep = th.representability_suite(stable_cat, ideal_a, T=stable_cat.parse_object("ba,b"))
    assert rep.passed
    assert all(v == "pass" for v in rep.data["subchecks"].values())


def test_representability_finds_t(stable_cat, ideal_a):
    rep = th.representability_suite(stable_cat, ideal_a)
    assert rep.passed
    assert sorted(rep.data["T"]) == ["b", "ba"]


def test_hom_functor_kills_ideal(stable_cat, ideal_a):
    G = GammaAlgebra(stable_cat, stable_cat.parse_object("ba,b"))
    for (x, y), J in ideal_a.sub.items():
        for v in J.basis:
            assert G.kills(AddMorphism.single(stable_cat, x, y, v))


def test_representability_sabotage_closed(stable_cat):
    c = stable_cat
    bad = th.CategoryIdeal(c, objects=["a"], forced={("ba", "b"): [[1]]})
    rep = th.representability_suite(c, bad, T=c.parse_object("ba,b"))
    assert rep.failed
    assert any(w["subcheck"] == "ii_ideal_vanishes" for w in rep.witnesses)


def test_representability_sabotage_non_closed(stable_cat):
    c = stable_cat
    bad = th.CategoryIdeal(c, objects=["a"], forced={("b", "b"): [c.identity[c.index("b")]]})
    rep = th.representability_suite(c, bad, T=c.parse_object("ba,b"))
    assert rep.failed
    coh = th.cohomological_sample_check(c, bad, P=c.parse_object("ba,b"))
    assert coh.failed and coh.witnesses


def test_cohomological_check(stable_cat, ideal_a):
    assert th.cohomological_sample_check(stable_cat, ideal_a).passed
    assert th.cohomological_sample_check(stable_cat, th.CategoryIdeal.zero(stable_cat)).passed


# ---------------------------------------------------------
# Right minimality
# ---------------------------------------------------------
def end_basis(cat, X):
    out = []
    for r, c in itertools.product(range(len(X)), repeat=2):
        for k in range(cat.dims[X[c], X[r]]):
            g = AddMorphism.zero(cat, X, X)
            g.blocks[r][c] = th._unit(cat.F, cat.dims[X[c], X[r]], k)
            out.append(g)
    return out


def is_auto(cat, g):
    for w in th.live_objects(cat):
        m = g.post_matrix(w)
        if m.shape[0] != m.shape[1] or la.rank(cat.F, m) < m.shape[0]:
            return False
    return True


def flat(g):
    return np.concatenate([blk for row in g.blocks for blk in row]) if g.src and g.tgt else np.zeros(0, dtype=np.int64)


def brute_right_minimal(cat, f, rng, budget=20_000):
    """Every g in End(X) with f g = f is an automorphism.

    The solutions form the coset id + ker(h -> f h); it is scanned exhaustively
    when it has at most ``budget`` elements and sampled otherwise.
    """
    F = cat.F
    basis = end_basis(cat, f.src)
    cols = np.array([flat(f @ b) for b in basis], dtype=F.dtype).T
    ker = la.kernel(F, cols.reshape(-1, len(basis)))
    ident = AddMorphism.identity(cat, f.src)
    if F.p ** ker.dim <= budget:
        coeffs = itertools.product(range(F.p), repeat=ker.dim)
    else:
        coeffs = (tuple(int(c) for c in rng.integers(0, F.p, ker.dim)) for _ in range(budget))
    for cs in coeffs:
        v = ker.from_coords(F.array(list(cs))) if ker.dim else F.zeros(len(basis))
        g = ident
        for cc, b in zip(v, basis):
            if cc:
                g = g + b.scale(int(cc))
        assert np.array_equal(flat(f @ g), flat(f))
        if not is_auto(cat, g):
            return False
    return True


@given(st.integers(0, 2**31))
@settings(max_examples=30, deadline=None)
def test_right_minimal_matches_brute_force(stable_cat, seed):
    c = stable_cat
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 3))
    X = tuple(sorted(int(v) for v in rng.integers(0, c.n, k)))
    y = int(rng.integers(0, c.n))
    blocks = [[c.F.random(c.dims[x, y], rng) if rng.random() < 0.7 else c.F.zeros(c.dims[x, y]) for x in X]]
    f = AddMorphism(c, X, (y,), blocks)
    assert th.right_minimal(c, f) == brute_right_minimal(c, f, rng)


def test_right_minimal_examples(stable_cat):
    c = stable_cat
    ba, b = c.index("ba"), c.index("b")
    assert th.right_minimal(c, AddMorphism.single(c, ba, b, [1]))
    assert th.right_minimal(c, AddMorphism.identity(c, (b,)))
    assert not th.right_minimal(c, AddMorphism(c, (b, ba), (b,), [[c.identity[b], c.F.zeros(1)]]))


# ---------------------------------------------------------
# Conditions on T
# ---------------------------------------------------------
def test_conditions_for_t_ba_b(stable_cat):
    r = th.evaluate_T(stable_cat, stable_cat.parse_object("ba,b"))
    for key in ("full", "dense", "a", "b", "b_star"):
        assert r[key].passed, key
    assert r["c"].failed
    assert r["cluster_tilting"].failed


def test_condition_c_pentagon(pentagon):
    c = pentagon.cat
    assert th.check_condition_c(c, c.parse_object("0,1")).passed
    assert th.check_condition_c(c, c.parse_object("0,2")).failed


def test_cluster_tilting_pentagon(pentagon):
    c = pentagon.cat
    assert th.is_cluster_tilting(c, c.parse_object("0,1")).passed
    assert th.is_cluster_tilting(c, c.parse_object("0")).failed
    assert th.is_cluster_tilting(c, c.parse_object("0,2")).failed


def test_right_minimal_presentation_fixture(orbit_a3):
    c = orbit_a3.cat
    assert th.right_minimal(c, AddMorphism.single(c, c.index("3"), c.index("32"), [1]))
    assert th.check_condition_a(c, c.parse_object("321,32,3")).passed


def test_ar_images(stable_cat):
    rep = th.ar_image_checks(stable_cat, stable_cat.parse_object("ba,b"))
    assert rep.passed
    assert rep.data["objects"]["ab"]["ar_sequence"]
