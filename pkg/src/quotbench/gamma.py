"""The algebra ``Γ = End(T)^op`` and the functor ``Hom(T, -)`` into ``mod Γ``.

Γ is presented by a quiver with one vertex per indecomposable summand ``T_i``
and one arrow ``j -> i`` for every basis element ``a: T_i -> T_j`` of
``rad/rad²`` inside ``add T``.  A path is evaluated by composing in the
category: ``eval(path · α) = eval(path) ∘ a``.  The module ``Hom(T, X)`` is then
a representation with ``Hom(T_i, X)`` at vertex ``i`` and arrows acting by
precomposition.
"""

from __future__ import annotations

import warnings
from typing import Sequence

import numpy as np

from . import linalg as la
from . import quiver as qv
from .category import AddMorphism, FiniteCategory
from .linalg import Subspace


class GammaError(ValueError):
    """Invalid object T for building Γ."""


class GammaAlgebra:
    """``End(T)^op`` for a basic additive object ``T`` of a finite category.

    Args:
        cat: the category handle.
        T: indices (or labels) of the summands; repeated summands are merged
            and the original multiplicities kept in ``multiplicities``.
    """

    def __init__(self, cat: FiniteCategory, T: Sequence, max_objects: int = 200):
        if isinstance(T, str):
            T = cat.parse_object(T)
        idx = [cat.index(t) for t in T]
        if not idx:
            raise GammaError("T must have at least one summand")
        basic = sorted(set(idx))
        if len(basic) != len(idx):
            warnings.warn("T is not basic; using its basic version", stacklevel=2)
        self.multiplicities = {t: idx.count(t) for t in basic}
        for t in basic:
            if cat.is_zero_object(t):
                raise GammaError(f"summand {cat.labels[t]} is a zero object")
        self.cat = cat
        self.T = tuple(basic)
        self.F = cat.F
        self.max_objects = max_objects
        self.names = [cat.labels[t] for t in self.T]
        self._build_presentation()
        self._indec = None

    @property
    def dim(self) -> int:
        return int(sum(self.cat.dims[a, b] for a in self.T for b in self.T))

    # -- presentation --------------------------------------------------------
    def _build_presentation(self):
        cat, F, T = self.cat, self.F, self.T
        arrows = []
        self.arrow_elem: dict[str, tuple[int, int, np.ndarray]] = {}  # name -> (i, j, a) with a: T_i -> T_j
        for ii, ti in enumerate(T):
            for jj, tj in enumerate(T):
                rad = cat.radical(ti, tj)
                if rad.dim == 0:
                    continue
                rad2 = cat.radical_square(ti, tj, through=T)
                comp = la.QuotientSpace(rad, rad2).basis()
                for k, a in enumerate(comp):
                    name = f"{self.names[jj]}>{self.names[ii]}" + (f"#{k + 1}" if len(comp) > 1 else "")
                    arrows.append((name, self.names[jj], self.names[ii]))
                    self.arrow_elem[name] = (ii, jj, a)
        self._arrows = arrows
        # paths by length with their evaluations; path (u, arrows) from vertex u
        # evaluates to an element of Hom(T_end, T_u)
        self.eval_cache: dict = {}
        layer = []
        for name, s, t in arrows:
            ii, jj, a = self.arrow_elem[name]
            p = (s, (name,))
            self.eval_cache[p] = a
            layer.append(p)
        all_paths = []
        length = 1
        while layer:
            nxt = []
            for p in layer:
                end = self._end(p)
                for name, s, t in arrows:
                    if s != end:
                        continue
                    q = (p[0], p[1] + (name,))
                    self.eval_cache[q] = self.eval_path(q)
                    nxt.append(q)
            length += 1
            if not nxt:
                break
            all_paths.extend(nxt)
            if all(la.is_zero(self.eval_cache[q]) for q in nxt):
                break
            layer = nxt
            if length > 4 * max(1, self.dim):
                raise GammaError("radical of End(T) does not appear nilpotent")
        # smallest m with rad^m End(T) = 0 (paths of length m all vanish)
        self.nilpotency = length
        self._relations = self._reduce_relations(all_paths)
        self.quiver = qv.QuiverPresentation(
            self.names,
            arrows,
            self._relations,
            F,
            label_order="top-first",
            length_cap=max(4, 2 * (self.dim + 1)),
            name="Gamma(" + ",".join(self.names) + ")",
        )
        if self.quiver.algebra.dim != self.dim:
            raise GammaError(
                f"presentation of Γ has dimension {self.quiver.algebra.dim}, expected dim End(T) = {self.dim}"
            )

    def _end(self, p) -> str:
        return self.quiver_arrow_target(p[1][-1]) if p[1] else p[0]

    def quiver_arrow_target(self, name: str) -> str:
        ii, jj, _ = self.arrow_elem[name]
        return self.names[ii]

    def _vertex(self, name: str) -> int:
        return self.names.index(name)

    def eval_path(self, p) -> np.ndarray:
        """Element of ``Hom(T_end, T_start)`` represented by a path."""
        if p in self.eval_cache:
            return self.eval_cache[p]
        cat = self.cat
        if not p[1]:
            return cat.identity[self.T[self._vertex(p[0])]]
        prefix = (p[0], p[1][:-1])
        e = self.eval_path(prefix)
        ii, jj, a = self.arrow_elem[p[1][-1]]
        u = self.T[self._vertex(p[0])]
        # prefix: T_j -> T_u ; a: T_i -> T_j
        return cat.compose(self.T[ii], self.T[jj], u, a, e)

    def _reduce_relations(self, paths):
        """Kernel of evaluation on paths of length 2..nilpotency, per pair of endpoints."""
        F = self.F
        groups: dict = {}
        for p in paths:
            groups.setdefault((p[0], self._end(p)), []).append(p)
        rels = []
        for (u, w), ps in groups.items():
            vecs = np.array([self.eval_cache[p] for p in ps], dtype=F.dtype).T
            if vecs.size == 0:
                ker = Subspace.full(F, len(ps))
            else:
                ker = la.kernel(F, vecs)
            for row in ker.basis:
                terms = [(int(c) if F.kind == "prime" else c, list(p[1])) for c, p in zip(row, ps) if c != 0]
                rels.append(terms)
        return rels

    # -- the functor ---------------------------------------------------------
    def hom_functor(self, X) -> qv.Representation:
        """``Hom(T, X)`` as a representation of Γ's quiver (``X`` index or tuple of indices)."""
        cat, F = self.cat, self.F
        X = (X,) if isinstance(X, (int, np.integer)) else tuple(X)
        dims = {}
        for ii, ti in enumerate(self.T):
            dims[self.names[ii]] = int(sum(cat.dims[ti, x] for x in X))
        maps = {}
        for name, (ii, jj, a) in self.arrow_elem.items():
            ti, tj = self.T[ii], self.T[jj]
            m = F.zeros((dims[self.names[ii]], dims[self.names[jj]]))
            r0 = c0 = 0
            for x in X:
                dr, dc = int(cat.dims[ti, x]), int(cat.dims[tj, x])
                m[r0:r0 + dr, c0:c0 + dc] = cat.pre_matrix(ti, tj, x, a)
                r0 += dr
                c0 += dc
            maps[name] = m
        rep = qv.Representation(self.quiver, dims, maps)
        rep.label = "F(" + ",".join(cat.labels[x] for x in X) + ")"
        return rep

    def hom_functor_map(self, f: AddMorphism, src: qv.Representation | None = None, tgt: qv.Representation | None = None) -> qv.ModuleMorphism:
        src = src or self.hom_functor(f.src)
        tgt = tgt or self.hom_functor(f.tgt)
        blocks = {self.names[ii]: f.post_matrix(ti) for ii, ti in enumerate(self.T)}
        return qv.ModuleMorphism(src, tgt, blocks)

    def kills(self, f: AddMorphism) -> bool:
        """``Hom(T, f) = 0``."""
        return all(la.is_zero(f.post_matrix(t)) for t in self.T)

    def supported(self, x: int) -> bool:
        """``Hom(T, x) ≠ 0``."""
        return any(self.cat.dims[t, x] for t in self.T)

    # -- projectives and presentations ---------------------------------------
    def projective_element(self, piece: qv.ModuleMorphism, w: str, v: str) -> np.ndarray:
        """Lift a map ``P(w) -> P(v)`` of Γ's projectives to ``Hom(T_w, T_v)``."""
        A = self.quiver.algebra
        cat = self.cat
        ew = A.between(w, w).index(A.basis_index[(w, ())])
        q = piece.blocks[w][:, ew]
        tw, tv = self.T[self._vertex(w)], self.T[self._vertex(v)]
        acc = self.F.zeros(cat.dims[tw, tv])
        for coeff, bi in zip(q, A.between(v, w)):
            if coeff:
                acc = self.F.reduce(acc + coeff * self.eval_path(A.basis[bi]))
        return acc

    def minimal_projective_presentation(self, M: qv.Representation):
        """Minimal presentation ``P1 -> P0 -> M`` and its lift ``f: T1 -> T0``.

        Returns ``(f, c0, c1, d)`` where ``c0``/``c1`` are the projective covers
        and ``d: P1 -> P0`` is the presentation map in ``mod Γ``.
        """
        c0, c1, d = qv.minimal_presentation(M)
        T0 = tuple(self.T[self._vertex(v)] for v in c0.vertices)
        T1 = tuple(self.T[self._vertex(w)] for w in c1.vertices)
        f = AddMorphism.zero(self.cat, T1, T0)
        for r, v in enumerate(c0.vertices):
            for c, w in enumerate(c1.vertices):
                piece = c0.projs[r] @ d @ c1.incs[c]
                f.blocks[r][c] = self.projective_element(piece, w, v)
        return f, c0, c1, d

    def indecomposables(self) -> qv.ModuleCategory:
        if self._indec is None:
            self._indec = qv.knit_module_category(self.quiver, max_objects=self.max_objects)
        return self._indec

    def end_op_mult(self) -> np.ndarray:
        """Structure constants of ``End(T)^op`` on the stacked basis of ``Hom(T_i, T_j)``."""
        cat, F = self.cat, self.F
        keys = [(a, b) for a in self.T for b in self.T]
        offs, n = {}, 0
        for k in keys:
            offs[k] = n
            n += int(cat.dims[k])
        mult = F.zeros((n, n, n))
        for (a, b) in keys:
            for (c, d) in keys:
                if b != c:
                    continue
                # x ∈ Hom(a, b), y ∈ Hom(b, d); in the opposite ring x * y = y ∘ x
                for i in range(cat.dims[a, b]):
                    for j in range(cat.dims[b, d]):
                        ei = F.zeros(cat.dims[a, b])
                        ei[i] = 1
                        ej = F.zeros(cat.dims[b, d])
                        ej[j] = 1
                        r = cat.compose(a, b, d, ei, ej)
                        mult[offs[(a, b)] + i, offs[(b, d)] + j, offs[(a, d)]:offs[(a, d)] + len(r)] = r
        return mult


def gamma_of(cat: FiniteCategory, T) -> GammaAlgebra:
    return GammaAlgebra(cat, T)


def hom_functor(gamma: GammaAlgebra, X):
    """``Hom(T, X)`` for an object or ``Hom(T, f)`` for an additive morphism."""
    if isinstance(X, AddMorphism):
        return gamma.hom_functor_map(X)
    return gamma.hom_functor(X)


def list_gamma_indecomposables(gamma: GammaAlgebra) -> list[qv.Representation]:
    return list(gamma.indecomposables().objects)
