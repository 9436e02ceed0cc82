import itertools
import warnings

import numpy as np
import pytest

from quotbench import quiver as qv
from quotbench.category import AddMorphism
from quotbench.gamma import GammaAlgebra, GammaError, hom_functor
from quotbench.theory import check_full, live_objects, right_minimal


@pytest.fixture(scope="module")
def gamma_stable(stable_cat):
    return GammaAlgebra(stable_cat, stable_cat.parse_object("ba,b"))


@pytest.fixture(scope="module")
def gamma_orbit(orbit_a3):
    return GammaAlgebra(orbit_a3.cat, orbit_a3.cat.parse_object("321,32,3"))


def test_gamma_selfinjective_is_a2(gamma_stable):
    G = gamma_stable
    assert G.dim == 3
    assert len(G.quiver.arrows) == 1
    assert len(G.indecomposables().objects) == 3


def test_gamma_orbit_is_a3(gamma_orbit):
    G = gamma_orbit
    assert G.dim == 6
    assert G.quiver.algebra.dim == 6
    assert len(G.quiver.arrows) == 2
    assert len(G.indecomposables().objects) == 6


def test_hom_functor_dimension_vectors(stable_cat, gamma_stable):
    c, G = stable_cat, gamma_stable
    dv = {lab: hom_functor(G, c.index(lab)).dim_vector for lab in c.labels}
    assert dv == {"ba": (1, 0), "ab": (0, 1), "a": (0, 0), "b": (1, 1)}


def test_add_t_is_proj_gamma(gamma_orbit):
    G = gamma_orbit
    for t, name in zip(G.T, G.names):
        assert qv.iso(G.hom_functor(t), qv.projective(G.quiver, name))


def test_yoneda_where_full(stable_cat, gamma_stable, orbit_a3, gamma_orbit):
    for cat, G in [(stable_cat, gamma_stable), (orbit_a3.cat, gamma_orbit)]:
        assert check_full(cat, G.T, G).passed
        for t in G.T:
            for x in live_objects(cat):
                assert qv.hom_dim(G.hom_functor(t), G.hom_functor(x)) == cat.dims[t, x]


def test_hom_functor_is_a_functor(stable_cat, gamma_stable):
    c, G = stable_cat, gamma_stable
    rng = np.random.default_rng(3)
    for x, y, z in itertools.product(range(c.n), repeat=3):
        a = AddMorphism.single(c, x, y, c.F.random(c.dims[x, y], rng))
        b = AddMorphism.single(c, y, z, c.F.random(c.dims[y, z], rng))
        lhs = G.hom_functor_map(b @ a)
        rhs = G.hom_functor_map(b) @ G.hom_functor_map(a)
        assert lhs.vector().tolist() == rhs.vector().tolist()
    ident = G.hom_functor_map(AddMorphism.identity(c, (0,)))
    assert ident.is_iso()


def test_minimal_presentations_lift(gamma_orbit, orbit_a3):
    c, G = orbit_a3.cat, gamma_orbit
    for M in G.indecomposables().objects:
        f, c0, c1, d = G.minimal_projective_presentation(M)
        if not f.src:
            continue
        # entries of the presentation lie in the radical of Γ
        for r, v in enumerate(c0.vertices):
            for k, w in enumerate(c1.vertices):
                blk = f.blocks[r][k]
                assert c.radical(f.src[k], f.tgt[r]).contains(blk)
        assert right_minimal(c, f)
        # the lift realizes the presentation: coker F(f) ≅ M
        C, _ = G.hom_functor_map(f).cokernel()
        assert qv.iso(C, M)


def test_non_basic_t_warns(stable_cat):
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        G = GammaAlgebra(stable_cat, [stable_cat.index("b")] * 2)
    assert G.multiplicities == {stable_cat.index("b"): 2}
    assert any("basic" in str(x.message) for x in w)


def test_empty_t_rejected(stable_cat):
    with pytest.raises(GammaError):
        GammaAlgebra(stable_cat, [])


def test_kills_and_supported(stable_cat, gamma_stable):
    c, G = stable_cat, gamma_stable
    assert not G.supported(c.index("a"))
    assert G.supported(c.index("ab"))
    f = AddMorphism.single(c, c.index("b"), c.index("ab"), [1])
    assert not G.kills(f)
    assert G.hom_functor_map(f).is_epi()
    g = AddMorphism.single(c, c.index("a"), c.index("ab"), [1])
    assert G.kills(g)
