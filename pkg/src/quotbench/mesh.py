"""Mesh categories ``k(ℤΔ)/G`` for Dynkin diagrams Δ.

Vertices of ℤΔ are pairs ``(p, i)``.  An oriented edge ``i -> j`` of Δ gives
arrows ``(p, i) -> (p, j)`` and ``(p, j) -> (p + 1, i)``, and the translation is
``τ(p, i) = (p - 1, i)``.  Automorphisms are words ``τ^t ρ^e`` where ``ρ`` lifts
the diagram involution.  Morphisms in the quotient are paths modulo mesh
relations, computed with :class:`quiver.PathAlgebra`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from . import linalg as la
from . import quiver as qv
from .category import AddMorphism, FiniteCategory, TriangleData, category_from_bases, exactness_certificate


ADMISSIBILITY_NOTE = (
    "G is checked with an operational surrogate for weak admissibility: "
    "free action on ℤΔ with a finite quotient and no mesh folding onto itself"
)


class MeshBuildError(ValueError):
    """The descriptor does not define a valid finite mesh category."""


# ---------------------------------------------------------------------------
# Dynkin diagrams


def dynkin_diagram(kind: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Vertices ``1..n`` and oriented edges for types A, D, E."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(1, n)]
    elif kind == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    elif kind == "E" and n in (6, 7, 8):
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    else:
        raise MeshBuildError(f"unsupported Dynkin type {kind}{n}")
    return list(range(1, n + 1)), edges


def diagram_involution(kind: str, n: int) -> dict[int, int]:
    kind = kind.upper()
    if kind == "A":
        return {i: n + 1 - i for i in range(1, n + 1)}
    if kind == "D":
        sig = {i: i for i in range(1, n + 1)}
        sig[n - 1], sig[n] = n, n - 1
        return sig
    if kind == "E" and n == 6:
        sig = {i: 6 - i for i in range(1, 6)}
        sig[6] = 6
        return sig
    raise MeshBuildError(f"{kind}{n} has no nontrivial diagram involution")


@dataclass(frozen=True)
class Auto:
    """The automorphism ``τ^tau_power ρ^involution`` of ℤΔ."""

    tau_power: int
    involution: int = 0

    def to_json(self) -> dict:
        return {"tau_power": self.tau_power, "involution": bool(self.involution)}


class ZDelta:
    """The translation quiver ℤΔ with its involution ``ρ(p, i) = (p + s_i, σ i)``."""

    def __init__(self, kind: str, n: int):
        self.kind, self.rank = kind.upper(), n
        self.vertices, self.edges = dynkin_diagram(kind, n)
        self.order = self._topological()
        self._rho = None

    def _topological(self) -> list[int]:
        indeg = {v: 0 for v in self.vertices}
        for _, j in self.edges:
            indeg[j] += 1
        out, ready = [], [v for v in self.vertices if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            out.append(v)
            for i, j in self.edges:
                if i == v:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        ready.append(j)
        return out

    def rho_data(self) -> tuple[dict, dict, int]:
        """``(σ, s, c)`` with ``ρ(p, i) = (p + s_i, σi)`` and ``ρ² = τ^c``."""
        if self._rho is None:
            sig = diagram_involution(self.kind, self.rank)
            edge_set = set(self.edges)
            s = {self.vertices[0]: 0}
            stack = [self.vertices[0]]
            while stack:
                v = stack.pop()
                for i, j in self.edges:
                    if v not in (i, j):
                        continue
                    w = j if v == i else i
                    if (sig[i], sig[j]) in edge_set:
                        want = s[i] if v == i else s[j]
                    elif (sig[j], sig[i]) in edge_set:
                        # arrow (p+s_i, σi) -> (p+s_j, σj) must be of the second kind
                        want = s[i] + 1 if v == i else s[j] - 1
                    else:
                        raise MeshBuildError("diagram involution does not preserve edges")
                    if w in s:
                        if s[w] != want:
                            raise MeshBuildError("inconsistent involution offsets")
                    else:
                        s[w] = want
                        stack.append(w)
            shifts = {s[i] + s[sig[i]] for i in self.vertices}
            if len(shifts) != 1:
                raise MeshBuildError("ρ² is not a power of τ")
            self._rho = (sig, s, -shifts.pop())
        return self._rho

    def apply(self, g: Auto, v: tuple[int, int]) -> tuple[int, int]:
        p, i = v
        if g.involution:
            sig, s, _ = self.rho_data()
            p, i = p + s[i], sig[i]
        return (p - g.tau_power, i)

    def arrows_from(self, v: tuple[int, int]) -> list[tuple[int, int]]:
        p, i = v
        out = []
        for a, b in self.edges:
            if a == i:
                out.append((p, b))
            if b == i:
                out.append((p + 1, a))
        return out

    def arrows_into(self, v: tuple[int, int]) -> list[tuple[int, int]]:
        p, i = v
        out = []
        for a, b in self.edges:
            if b == i:
                out.append((p, a))
            if a == i:
                out.append((p - 1, b))
        return out


class OrbitSpace:
    """Orbits of a group ``G`` of automorphisms acting on ℤΔ.

    Every element of ``⟨τ, ρ⟩`` is ``τ^t ρ^e``, so ``G`` has a pure translation
    subgroup ``⟨τ^N⟩`` of index at most two.  Orbits are computed on the window
    ``p mod N``.
    """

    def __init__(self, Z: ZDelta, gens: Sequence[Auto]):
        self.Z = Z
        self.gens = list(gens)
        c = Z.rho_data()[2] if any(g.involution for g in gens) else 0
        lattice = [g.tau_power for g in gens if not g.involution]
        odd = [g for g in gens if g.involution]
        if odd:
            g1 = odd[0]
            lattice.append(2 * g1.tau_power + c)
            for g in odd[1:]:
                lattice.append(g1.tau_power + g.tau_power + c)
            self.flip = g1
        else:
            self.flip = None
        N = 0
        for t in lattice:
            N = gcd(N, abs(t))
        if N == 0:
            raise MeshBuildError("G has no translation part; the quotient would be infinite")
        self.N = N
        self._canon: dict = {}
        for p in range(N):
            for i in Z.vertices:
                v = (p, i)
                if self.flip is not None:
                    w = self._wrap(Z.apply(self.flip, v))
                    if w == v:
                        raise MeshBuildError(f"G does not act freely: vertex {v} is fixed")
                    self._canon[v] = min(v, w)
                else:
                    self._canon[v] = v
        self.orbits = sorted(set(self._canon.values()))

    def _wrap(self, v):
        return (v[0] % self.N, v[1])

    def canonical(self, v: tuple[int, int]) -> tuple[int, int]:
        return self._canon[self._wrap(v)]

    def transport(self, v, rep, w):
        """Apply to ``w`` the element of G that sends ``v`` to ``rep`` (same orbit)."""
        if v[1] == rep[1] and (v[0] - rep[0]) % self.N == 0:
            shift = v[0] - rep[0]
            return (w[0] - shift, w[1])
        if self.flip is not None:
            fv = self.Z.apply(self.flip, v)
            if fv[1] == rep[1] and (fv[0] - rep[0]) % self.N == 0:
                shift = fv[0] - rep[0]
                fw = self.Z.apply(self.flip, w)
                return (fw[0] - shift, fw[1])
        raise MeshBuildError(f"{v} and {rep} are not in the same orbit")

    def lifts(self, orbit, p_lo: int, p_hi: int) -> list[tuple[int, int]]:
        out = []
        for p in range(p_lo, p_hi + 1):
            for i in self.Z.vertices:
                if self.canonical((p, i)) == orbit:
                    out.append((p, i))
        return out


def _parse_auto(spec) -> Auto:
    if isinstance(spec, Auto):
        return spec
    if spec == "tau":
        return Auto(1, 0)
    if isinstance(spec, dict):
        return Auto(int(spec.get("tau_power", 0)), 1 if spec.get("involution") else 0)
    raise MeshBuildError(f"cannot parse automorphism {spec!r}")


class MeshCategory:
    """A finite mesh category with τ, Σ and declared triangles.

    The category handle is ``.cat``; the underlying quiver with mesh relations
    is ``.quiver`` and its path algebra supplies the hom bases.
    """

    def __init__(self, descriptor: dict, field=None):
        self.descriptor = descriptor
        kind = descriptor["dynkin"]
        rank = int(descriptor.get("rank", 0))
        if isinstance(kind, str) and len(kind) > 1 and not rank:
            kind, rank = kind[0], int(kind[1:].strip("()"))
        self.Z = ZDelta(kind, rank)
        gens = [_parse_auto(g) for g in descriptor.get("group", [])]
        if not gens:
            raise MeshBuildError("trivial group: the quotient of ℤΔ would be infinite")
        self.G = OrbitSpace(self.Z, gens)
        F = la.field_from_spec(field if field is not None else descriptor.get("field"))
        self.F = F
        # objects and labels
        names = descriptor.get("objects")
        self.coords: dict[str, tuple[int, int]] = {}
        if names:
            seen = set()
            for label, (p, i) in names.items():
                orb = self.G.canonical((p, i))
                if orb in seen:
                    raise MeshBuildError(f"objects {label!r} and another label lie in the same orbit")
                seen.add(orb)
                self.coords[label] = (p, i)
            if len(seen) != len(self.G.orbits):
                missing = [o for o in self.G.orbits if o not in seen]
                raise MeshBuildError(f"object labels miss orbits {missing}")
        else:
            for o in self.G.orbits:
                self.coords[f"({o[0]},{o[1]})"] = o
        self.labels = list(self.coords)
        self._orbit_label = {self.G.canonical(v): k for k, v in self.coords.items()}
        self._build_quiver(F)
        self._build_category()

    # -- quiver ------------------------------------------------------------
    def label_of(self, v) -> str:
        return self._orbit_label[self.G.canonical(v)]

    def _arrow_name(self, src, tgt) -> str:
        return f"{self.label_of(src)}>{self.label_of(tgt)}"

    def _normalize_arrow(self, src, tgt):
        """Transport a ℤΔ arrow so its source is the chosen representative."""
        rep = self.coords[self.label_of(src)]
        return rep, self.G.transport(src, rep, tgt)

    def _build_quiver(self, F):
        arrows = []
        self._arrow_of: dict = {}
        names_seen: dict[str, int] = {}
        for label in self.labels:
            x = self.coords[label]
            for y in self.Z.arrows_from(x):
                base = self._arrow_name(x, y)
                names_seen[base] = names_seen.get(base, 0) + 1
                name = base if names_seen[base] == 1 else f"{base}#{names_seen[base]}"
                arrows.append((name, label, self.label_of(y)))
                self._arrow_of[(x, y)] = name
        relations = []
        for label in self.labels:
            z = self.coords[label]
            tz = (z[0] - 1, z[1])
            if self.G.canonical(tz) == self.G.canonical(z):
                raise MeshBuildError(f"mesh at {label} collapses: τ{label} = {label}")
            terms = []
            for y in self.Z.arrows_into(z):
                a1 = self.arrow_name(tz, y)
                a2 = self.arrow_name(y, z)
                terms.append((1, [a1, a2]))
            if len({tuple(p) for _, p in terms}) != len(terms):
                raise MeshBuildError(f"mesh at {label} collapses onto itself")
            relations.append(terms)
        self.quiver = qv.QuiverPresentation(
            self.labels,
            arrows,
            relations,
            F,
            length_cap=4 * len(self.labels),
            name=self.descriptor.get("name", ""),
        )

    def arrow_name(self, src, tgt) -> str:
        rep, t = self._normalize_arrow(src, tgt)
        key = (rep, t)
        if key not in self._arrow_of:
            raise MeshBuildError(f"no arrow {src} -> {tgt} in the quotient")
        return self._arrow_of[key]

    def map_auto(self, g: Auto):
        """Object permutation and arrow map induced by an automorphism commuting with G."""
        obj = {}
        arr = {}
        for label in self.labels:
            x = self.coords[label]
            gx = self.Z.apply(g, x)
            obj[label] = self.label_of(gx)
            for y in self.Z.arrows_from(x):
                arr[self._arrow_of[(x, y)]] = self.arrow_name(gx, self.Z.apply(g, y))
        return obj, arr

    # -- category ----------------------------------------------------------
    def _build_category(self):
        A = self.quiver.algebra
        F = self.F
        n = len(self.labels)
        idx = {lab: k for k, lab in enumerate(self.labels)}
        self.algebra = A

        def basis(i, j):
            return A.between(self.labels[i], self.labels[j])

        def compose(b, a):
            return A.multiply_paths(A.basis[a], A.basis[b])

        def coords(i, k, vec):
            return vec[A.between(self.labels[i], self.labels[k])]

        def ident(i):
            return A.basis_index[(self.labels[i], ())]

        def coords_ident(i, k, m):
            if isinstance(m, (int, np.integer)):
                v = F.zeros(A.dim)
                v[m] = 1
                return coords(i, k, v)
            return coords(i, k, m)

        tau_obj, _ = self.map_auto(Auto(1, 0))
        sig_auto = _parse_auto(self.descriptor.get("sigma", "tau"))
        self.sigma_auto = sig_auto
        sig_obj, sig_arr = self.map_auto(sig_auto)
        tau = [idx[tau_obj[lab]] for lab in self.labels]
        sigma = [idx[sig_obj[lab]] for lab in self.labels]
        cat = category_from_bases(
            F,
            self.labels,
            basis,
            compose,
            coords_ident,
            ident,
            sigma=sigma,
            tau=tau,
            kind="mesh",
            name=self.descriptor.get("name", ""),
        )
        maps = {}
        for i in range(n):
            for j in range(n):
                src = basis(i, j)
                tgt = A.between(self.labels[sigma[i]], self.labels[sigma[j]])
                m = F.zeros((len(tgt), len(src)))
                for c, b in enumerate(src):
                    p = A.basis[b]
                    image = (sig_obj[p[0]], tuple(sig_arr[a] for a in p[1]))
                    m[:, c] = A.normal_form({image: 1})[tgt]
                maps[(i, j)] = m
        cat.sigma_maps = maps
        cat.mesh = self
        self.cat = cat
        self._check_invariants()
        cat.declared_triangles = [self._declared(t, k) for k, t in enumerate(self.descriptor.get("triangles", []))]

    def _check_invariants(self):
        cat = self.cat
        n = cat.n
        for i in range(n):
            for j in range(n):
                d = cat.dims[i, j]
                if d != cat.dims[cat.tau[i], cat.tau[j]] or d != cat.dims[cat.sigma[i], cat.sigma[j]]:
                    raise MeshBuildError(f"τ or Σ does not preserve dim Hom({cat.labels[i]}, {cat.labels[j]})")
                s = cat.tau[cat.sigma[i]]
                if d != cat.dims[j, s]:
                    raise MeshBuildError(
                        f"Serre numerics fail for ({cat.labels[i]}, {cat.labels[j]}); check the sigma configuration"
                    )

    def _declared(self, spec: dict, k: int) -> TriangleData:
        cat = self.cat

        def objs(v):
            if isinstance(v, str):
                return (cat.index(v),)
            return tuple(cat.index(x) for x in v)

        X = objs(spec["X"])
        Y = objs(spec.get("middle", spec.get("Y", [])))
        Z = objs(spec["Z"])
        sX = tuple(cat.sigma[x] for x in X)

        def morph(key, src, tgt):
            raw = spec.get(key + "_coords", spec.get(key))
            if raw is None:
                raise ValueError(f"triangle {k}: missing {key}_coords")
            m = AddMorphism.zero(cat, src, tgt)
            if len(raw) != len(tgt) or any(len(row) != len(src) for row in raw):
                raise ValueError(f"triangle {k}: {key}_coords has the wrong block shape")
            for r, y in enumerate(tgt):
                for c, x in enumerate(src):
                    v = np.array([F.scalar(e) for e in raw[r][c]], dtype=F.dtype) if raw[r][c] else F.zeros(0)
                    if len(v) != cat.dims[x, y]:
                        raise ValueError(
                            f"triangle {k}: {key} block ({cat.labels[x]} -> {cat.labels[y]}) needs "
                            f"{cat.dims[x, y]} coordinates"
                        )
                    m.blocks[r][c] = v
            return m

        F = self.F
        t = TriangleData(X, Y, Z, morph("f", X, Y), morph("g", Y, Z), morph("h", Z, sX), origin=f"declared[{k}]")
        t.certificate = exactness_certificate(cat, t)
        return t

    # -- independent hom dimensions ----------------------------------------
    def hammock_dims(self) -> np.ndarray:
        """``dim Hom`` by the additive-function recursion on ℤΔ, summed over G-lifts."""
        Z = self.Z
        n = len(self.labels)
        out = np.zeros((n, n), dtype=int)
        span = 2 * (len(Z.vertices) + 2)
        for a, label in enumerate(self.labels):
            x = self.coords[label]
            h: dict = {}
            for p in range(x[0], x[0] + span + 1):
                for i in Z.order:
                    y = (p, i)
                    if y == x:
                        h[y] = 1
                        continue
                    if p == x[0] and Z.order.index(i) <= Z.order.index(x[1]):
                        h[y] = 0
                        continue
                    total = sum(h.get(m, 0) for m in Z.arrows_into(y))
                    h[y] = max(0, total - h.get((p - 1, i), 0))
            for y, val in h.items():
                if val:
                    out[a, self.labels.index(self.label_of(y))] += val
        return out


def verify_declared_triangle(cat: FiniteCategory, t: TriangleData) -> dict:
    """Certificate report for a declared triangle (necessary condition only)."""
    cert = exactness_certificate(cat, t)
    return {
        "check": "declared_triangle",
        "verdict": "pass" if cert.ok else "fail",
        "witnesses": cert.failures,
        "notes": "exactness of the long Hom(W,-) and Hom(-,W) sequences is necessary, not sufficient, "
        "for a triangle to be distinguished",
        "triangle": t.to_json(),
    }


def build_mesh(descriptor, field=None) -> MeshCategory:
    if not isinstance(descriptor, dict):
        with open(descriptor) as fh:
            descriptor = json.load(fh)
    return MeshCategory(descriptor, field=field)
