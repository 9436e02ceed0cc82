"""Stable module categories of self-injective algebras as triangulated categories.

Stable homs are ``Hom(M, N)`` modulo maps factoring through the projective
cover of ``N``.  The suspension is ``Ω⁻¹`` (cokernel of the injective
envelope), cones are pushouts along the injective envelope, and AR-triangles
come from almost split sequences.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg as la
from . import quiver as qv
from .category import (
    AddMorphism,
    CategoryError,
    FiniteCategory,
    TriangleData,
    exactness_certificate,
)
from .linalg import Subspace


class NotSelfInjectiveError(ValueError):
    """The algebra is not self-injective, so its stable category is not triangulated here."""


class TriangleCertificateError(ArithmeticError):
    """A constructed triangle failed its exactness certificate."""


def is_self_injective(Q: qv.QuiverPresentation) -> bool:
    """Every indecomposable projective is injective (multiset comparison by isomorphism)."""
    projs = qv.indecomposable_projectives(Q)
    injs = list(qv.indecomposable_injectives(Q))
    for P in projs:
        for k, I in enumerate(injs):
            if qv.iso(P, I):
                injs.pop(k)
                break
        else:
            return False
    return not injs


class StableCategory:
    """The stable category ``mod̲ A`` with a :class:`FiniteCategory` handle in ``.cat``.

    Args:
        modules: a knitted :class:`quiver.ModuleCategory` of a self-injective algebra.
    """

    def __init__(self, modules: qv.ModuleCategory):
        Q = modules.Q
        if not is_self_injective(Q):
            raise NotSelfInjectiveError("stable categories are only built for self-injective algebras")
        self.modules = modules
        self.Q = Q
        F = Q.F
        self.F = F
        proj = set(modules.projectives)
        self.module_index = [i for i in range(len(modules.objects)) if i not in proj]
        self.reps = [modules.objects[i] for i in self.module_index]
        n = len(self.reps)
        self.labels = [r.label for r in self.reps]
        # stable hom spaces
        self._homs = {}
        self._pcover = [qv.projective_cover(r) for r in self.reps]
        for i in range(n):
            for j in range(n):
                hs = qv.hom_space(self.reps[i], self.reps[j])
                pc = self._pcover[j]
                through = [(pc.map @ b).vector() for b in qv.hom_space(self.reps[i], pc.module).basis()]
                P = Subspace.span(F, hs.ambient, through)
                self._homs[(i, j)] = (hs, la.QuotientSpace(hs.space, P))
        dims = [[self._homs[(i, j)][1].dim for j in range(n)] for i in range(n)]
        comp = {}
        for i in range(n):
            for j in range(n):
                if not dims[i][j]:
                    continue
                for k in range(n):
                    if not dims[j][k] or not dims[i][k]:
                        continue
                    t = F.zeros((dims[i][j], dims[j][k], dims[i][k]))
                    for a in range(dims[i][j]):
                        fa = self.basis_map(i, j, a)
                        for b in range(dims[j][k]):
                            t[a, b] = self.coords(i, k, self.basis_map(j, k, b) @ fa)
                    comp[(i, j, k)] = t
        ident = [self.coords(i, i, self.reps[i].identity()) for i in range(n)]
        # suspension Ω⁻¹ with chosen isomorphisms onto representatives
        self._env = []
        sigma = []
        for i in range(n):
            env = qv.injective_envelope(self.reps[i])
            C, q = env.map.cokernel()
            j, psi = self._locate(C)
            self._env.append((env, C, q, psi))
            sigma.append(j)
        tau = []
        for i in range(n):
            t = modules.tau.get(self.module_index[i])
            tau.append(self.module_index.index(t) if t is not None and t in self.module_index else None)
        self.cat = FiniteCategory(F, self.labels, dims, comp, ident, sigma=sigma, tau=tau, kind="stable", name=Q.name)
        self.cat.sigma_maps = self._sigma_maps(sigma)
        self.cat.triangle_source = self
        self.cat.stable = self

    # -- coordinates -------------------------------------------------------
    def basis_map(self, i: int, j: int, a: int) -> qv.ModuleMorphism:
        hs, quo = self._homs[(i, j)]
        return hs.from_vector(quo.basis()[a])

    def rep_map(self, i: int, j: int, coords) -> qv.ModuleMorphism:
        hs, quo = self._homs[(i, j)]
        if quo.dim == 0:
            return self.reps[i].zero_map(self.reps[j])
        return hs.from_vector(quo.lift(np.asarray(coords, dtype=self.F.dtype)))

    def coords(self, i: int, j: int, f: qv.ModuleMorphism) -> np.ndarray:
        hs, quo = self._homs[(i, j)]
        if quo.dim == 0:
            return self.F.zeros(0)
        return quo.coords(f.vector())

    def _locate(self, M: qv.Representation) -> tuple[int, qv.ModuleMorphism]:
        for j, r in enumerate(self.reps):
            f = qv.is_isomorphic(M, r)
            if f is not None:
                return j, f
        raise CategoryError("module is not isomorphic to any stable object")

    def index_of(self, M: qv.Representation) -> int | None:
        for j, r in enumerate(self.reps):
            if qv.iso(M, r):
                return j
        return None

    def _sigma_maps(self, sigma) -> dict:
        F = self.F
        out = {}
        n = len(self.reps)
        for i in range(n):
            for j in range(n):
                d_src = self._homs[(i, j)][1].dim
                d_tgt = self._homs[(sigma[i], sigma[j])][1].dim
                m = F.zeros((d_tgt, d_src))
                for a in range(d_src):
                    m[:, a] = self.coords(sigma[i], sigma[j], self.sigma_module_map(i, j, self.basis_map(i, j, a)))
                out[(i, j)] = m
        return out

    def sigma_module_map(self, i: int, j: int, f: qv.ModuleMorphism) -> qv.ModuleMorphism:
        """``Ω⁻¹ f`` between the chosen representatives of ``Σi`` and ``Σj``."""
        env_i, Ci, qi, psi_i = self._env[i]
        env_j, Cj, qj, psi_j = self._env[j]
        ext = qv.factor_through_mono(env_i.map, env_j.map @ f)
        if ext is None:
            raise ArithmeticError("map does not extend to injective envelopes")
        c = qv.induced_map(qi, qj @ ext, Cj)
        return psi_j @ c @ psi_i.inverse()

    # -- additive realization ------------------------------------------------
    def realize(self, f: AddMorphism) -> qv.ModuleMorphism:
        src = [self.reps[x] for x in f.src]
        tgt = [self.reps[y] for y in f.tgt]
        blocks = [[self.rep_map(x, y, f.blocks[r][c]) for c, x in enumerate(f.src)] for r, y in enumerate(f.tgt)]
        if not src or not tgt:
            S, _, _ = qv.direct_sum(src, self.Q)
            T, _, _ = qv.direct_sum(tgt, self.Q)
            return S.zero_map(T)
        m, _, _ = qv.block_morphism(src, tgt, blocks)
        return m

    def _decompose_stably(self, Z: qv.Representation):
        """Non-projective summands of ``Z`` as ``(index, inc, proj)`` in stable-object terms."""
        out = []
        for s, inc, proj in qv.split_module(Z):
            if qv.is_projective(s):
                continue
            k, phi = self._locate(s)
            out.append((k, inc @ phi.inverse(), phi @ proj))
        out.sort(key=lambda t: t[0])
        return out

    def cone(self, f: AddMorphism, check: bool = True) -> TriangleData:
        """Complete ``f: X -> Y`` to a triangle via the pushout along ``X -> I(X)``."""
        cat = self.cat
        X, Y = tuple(f.src), tuple(f.tgt)
        fm = self.realize(f)
        Xm, Ym = fm.src, fm.tgt
        # envelope of the sum = sum of envelopes
        envs = [self._env[x] for x in X]
        Im, i_inc, i_proj = qv.direct_sum([e[0].module for e in envs], self.Q)
        Cm, c_inc, c_proj = qv.direct_sum([e[1] for e in envs], self.Q)
        Xs, x_inc, x_proj = qv.direct_sum([self.reps[x] for x in X], self.Q)
        iota = Xm.zero_map(Im)
        qmap = Im.zero_map(Cm)
        for r in range(len(X)):
            iota = iota + i_inc[r] @ envs[r][0].map @ x_proj[r]
            qmap = qmap + c_inc[r] @ envs[r][2] @ i_proj[r]
        S, s_inc, s_proj = qv.direct_sum([Ym, Im], self.Q)
        emb = s_inc[0] @ fm + s_inc[1] @ (-iota)
        Zm, zq = emb.cokernel()
        gm = zq @ s_inc[0]
        hm = qv.induced_map(zq, qmap @ s_proj[1], Cm)
        pieces = self._decompose_stably(Zm)
        Z = tuple(k for k, _, _ in pieces)
        g = AddMorphism.zero(cat, Y, Z)
        _, y_inc, _ = qv.direct_sum([self.reps[y] for y in Y], self.Q)
        for r, (k, inc, proj) in enumerate(pieces):
            for c, y in enumerate(Y):
                g.blocks[r][c] = self.coords(y, k, proj @ gm @ y_inc[c])
        sX = tuple(cat.sigma[x] for x in X)
        h = AddMorphism.zero(cat, Z, sX)
        for r, x in enumerate(X):
            psi = self._env[x][3]
            for c, (k, inc, proj) in enumerate(pieces):
                h.blocks[r][c] = self.coords(k, sX[r], psi @ c_proj[r] @ hm @ inc)
        t = TriangleData(X, Y, Z, f, g, h, origin="cone")
        if check:
            t.certificate = exactness_certificate(cat, t)
            if not t.certificate.ok:
                raise TriangleCertificateError(f"cone triangle failed its certificate: {t.certificate.failures[:3]}")
        return t

    def ar_triangle(self, i: int, check: bool = True) -> TriangleData:
        """``τX -> E -> X -> ΣτX`` from the almost split sequence ending at object ``i``."""
        cat = self.cat
        X = self.reps[i]
        ses = qv.almost_split_sequence(X, self.modules.objects, verify=check)
        a, alpha = self._locate(ses.left)  # alpha: left -> rep(a)
        A = self.reps[a]
        inj = ses.inj @ alpha.inverse()  # rep(a) -> E
        env, C, q, psi = self._env[a]
        phi = qv.factor_through_mono(inj, env.map)
        if phi is None:
            raise ArithmeticError("envelope does not extend along the almost split sequence")
        hmod = qv.induced_map(ses.surj, q @ phi, C)
        pieces = self._decompose_stably(ses.middle)
        E = tuple(k for k, _, _ in pieces)
        f = AddMorphism.zero(cat, (a,), E)
        g = AddMorphism.zero(cat, E, (i,))
        for r, (k, inc, proj) in enumerate(pieces):
            f.blocks[r][0] = self.coords(a, k, proj @ inj)
            g.blocks[0][r] = self.coords(k, i, ses.surj @ inc)
        hc = self.coords(i, cat.sigma[a], psi @ hmod)
        nz = np.nonzero(hc)[0]
        if nz.size:
            hc = self.F.reduce(hc * self.F.inv(hc[nz[0]]))
        h = AddMorphism(cat, (i,), (cat.sigma[a],), [[hc]])
        t = TriangleData((a,), E, (i,), f, g, h, origin="ar")
        if check:
            t.certificate = exactness_certificate(cat, t)
            if not t.certificate.ok:
                raise TriangleCertificateError(f"AR-triangle failed its certificate: {t.certificate.failures[:3]}")
        return t

    def stable_hom(self, i, j) -> list[qv.ModuleMorphism]:
        i, j = self.cat.index(i), self.cat.index(j)
        return [self.basis_map(i, j, a) for a in range(self.cat.dims[i, j])]


def stable_category(source, field=None) -> StableCategory:
    Q = qv.load_algebra(source, field=field)
    return StableCategory(qv.knit_module_category(Q))


def serre_2cy_check(cat: FiniteCategory) -> dict:
    """Serre duality numerics with ``S = τΣ`` and the 2-Calabi–Yau test ``τ ≅ Σ ≇ id`` on objects."""
    if not cat.triangulated or cat.tau is None:
        raise CategoryError("Serre/2-CY checks need a triangulated handle with τ")
    live = [i for i in range(cat.n) if not cat.is_zero_object(i)]
    bad = []
    for x in live:
        s = cat.tau[cat.sigma[x]] if cat.tau[cat.sigma[x]] is not None else None
        for y in live:
            if s is None or cat.dims[x, y] != cat.dims[y, s]:
                bad.append((cat.labels[x], cat.labels[y]))
    tau_is_sigma = all(cat.tau[x] == cat.sigma[x] for x in live)
    tau_is_id = all(cat.tau[x] == x for x in live)
    return {
        "has_serre_numerics": not bad,
        "is_2cy": tau_is_sigma and not tau_is_id,
        "serre_failures": bad,
    }
