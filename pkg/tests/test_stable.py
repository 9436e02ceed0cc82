import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotbench import quiver as qv
from quotbench.category import AddMorphism, exactness_certificate
from quotbench.stable import NotSelfInjectiveError, StableCategory, serre_2cy_check


def test_stable_objects(stable_cat):
    assert sorted(stable_cat.labels) == ["a", "ab", "b", "ba"]
    assert stable_cat.kind == "stable"


def test_stable_hom_dims(stable_cat):
    c = stable_cat
    i = c.index
    assert c.dims[i("ba"), i("b")] == 1
    assert c.dims[i("b"), i("ab")] == 1
    assert c.dims[i("ba"), i("ab")] == 0
    for x in range(c.n):
        assert c.dims[x, x] == 1


def test_suspension_is_cosyzygy(stable_a):
    c = stable_a.cat
    for x in range(c.n):
        cos = qv.syzygy_cosyzygy(stable_a.reps[x], "cosyzygy")
        assert qv.iso(cos, stable_a.reps[c.sigma[x]])


def test_sigma_is_bijection(stable_cat):
    c = stable_cat
    assert sorted(c.sigma) == list(range(c.n))
    assert [c.sigma[c.sigma_inv[x]] for x in range(c.n)] == list(range(c.n))
    labels = {c.labels[x]: c.labels[c.sigma[x]] for x in range(c.n)}
    assert labels == {"ba": "a", "a": "ab", "ab": "b", "b": "ba"}


def test_not_selfinjective_rejected(mod_ka3):
    with pytest.raises(NotSelfInjectiveError):
        StableCategory(mod_ka3)


def test_ar_triangles_certified(stable_a):
    c = stable_a.cat
    for x in range(c.n):
        t = stable_a.ar_triangle(x)
        assert t.certificate.ok
        assert t.X == (c.tau[x],)
        assert not t.h.is_zero()
        assert exactness_certificate(c, t.rotate()).ok


def test_cone_of_iso_is_zero(stable_a):
    c = stable_a.cat
    for x in range(c.n):
        t = stable_a.cone(AddMorphism.identity(c, (x,)))
        assert t.Z == ()


def test_cone_of_split_mono_is_complement(stable_a):
    c = stable_a.cat
    ba, b = c.index("ba"), c.index("b")
    f = AddMorphism(c, (ba,), (ba, b), [[c.identity[ba]], [c.F.zeros(c.dims[ba, b])]])
    t = stable_a.cone(f)
    assert t.Z == (b,)
    assert t.certificate.ok


def test_cones_of_basis_maps_certified(stable_a):
    c = stable_a.cat
    for x in range(c.n):
        for y in range(c.n):
            for k in range(c.dims[x, y]):
                v = c.F.zeros(c.dims[x, y])
                v[k] = 1
                t = stable_a.cone(AddMorphism.single(c, x, y, v))
                assert t.certificate.ok


def test_broken_triangle_fails_certificate(stable_a):
    c = stable_a.cat
    t = stable_a.ar_triangle(c.index("b"))
    broken = type(t)(t.X, t.Y, t.Z, t.f, t.g, t.h.scale(0))
    assert not exactness_certificate(c, broken).ok


@given(st.integers(0, 2**31))
@settings(max_examples=20, deadline=None)
def test_stable_composition_matches_modules(stable_a, seed):
    rng = np.random.default_rng(seed)
    c = stable_a.cat
    i, j, k = (int(v) for v in rng.integers(0, c.n, 3))
    a = c.F.random(c.dims[i, j], rng)
    b = c.F.random(c.dims[j, k], rng)
    via_modules = stable_a.coords(i, k, stable_a.rep_map(j, k, b) @ stable_a.rep_map(i, j, a))
    assert np.array_equal(c.F.reduce(np.asarray(via_modules)), c.compose(i, j, k, a, b))


def test_serre_numerics(stable_cat):
    r = serre_2cy_check(stable_cat)
    assert r["has_serre_numerics"]
    assert not r["is_2cy"]
