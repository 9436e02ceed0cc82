"""A uniform handle on Hom-finite Krull–Schmidt categories with finitely many indecomposables.

Objects are indexed ``0..n-1`` (the indecomposables).  Morphisms between
indecomposables are coordinate vectors in fixed hom bases, and composition is
given by structure constants::

    comp[(i, j, k)][a, b, :] = coordinates of  b ∘ a,   a ∈ Hom(i, j), b ∈ Hom(j, k)

Additive objects are tuples of indices (repetition allowed) and morphisms
between them are block matrices of coordinate vectors, ``blocks[r][c]`` lying
in ``Hom(src[c], tgt[r])``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .linalg import Field, Subspace


class CategoryError(ValueError):
    """Invalid request against a category handle (unknown label, bad shapes)."""


class FiniteCategory:
    """Structure constants of a finite k-linear category.

    Args:
        F: ground field.
        labels: one label per indecomposable.
        dims: ``dims[i][j] = dim Hom(i, j)``.
        comp: structure constants, keyed by ``(i, j, k)``.
        identity: coordinates of the identity of each object.
        sigma: permutation giving the suspension on objects (triangulated case).
        sigma_maps: ``sigma_maps[(i, j)]`` is the matrix of
            ``Hom(i, j) -> Hom(σi, σj)`` acting on coordinate columns.
        tau: AR-translate on objects (``None`` entries where undefined).
        kind: free-form backend tag, e.g. ``"module"``, ``"stable"``, ``"mesh"``.
    """

    def __init__(
        self,
        F: Field,
        labels: Sequence[str],
        dims,
        comp: dict,
        identity: Sequence,
        sigma: Sequence[int] | None = None,
        sigma_maps: dict | None = None,
        tau: Sequence[int | None] | None = None,
        kind: str = "",
        name: str = "",
    ):
        self.F = F
        self.labels = list(labels)
        self.n = len(self.labels)
        self.dims = np.array(dims, dtype=int).reshape(self.n, self.n)
        self.comp = comp
        self.identity = [np.asarray(e, dtype=F.dtype) for e in identity]
        self.sigma = list(sigma) if sigma is not None else None
        self.sigma_maps = sigma_maps
        self.tau = list(tau) if tau is not None else None
        self.kind = kind
        self.name = name
        self._rad: dict = {}
        self.triangle_source = None  # set by backends that can produce triangles
        self.declared_triangles: list = []

    def __repr__(self) -> str:
        return f"FiniteCategory({self.kind or 'category'}, {self.n} objects)"

    @property
    def triangulated(self) -> bool:
        return self.sigma is not None

    @property
    def sigma_inv(self) -> list[int]:
        inv = [0] * self.n
        for i, j in enumerate(self.sigma):
            inv[j] = i
        return inv

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise CategoryError(f"unknown object label {label!r}; known: {self.labels}") from None

    def parse_object(self, spec) -> tuple[int, ...]:
        """``"ba,b"`` or ``["ba", "b"]`` → tuple of indices."""
        if isinstance(spec, str):
            spec = [s.strip() for s in spec.replace("+", ",").split(",") if s.strip()]
        return tuple(self.index(s) for s in spec)

    # -- composition -----------------------------------------------------
    def compose(self, i: int, j: int, k: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Coordinates of ``b ∘ a`` for ``a ∈ Hom(i, j)``, ``b ∈ Hom(j, k)``."""
        F = self.F
        d = self.dims[i, k]
        if d == 0 or self.dims[i, j] == 0 or self.dims[j, k] == 0:
            return F.zeros(d)
        t = self.comp[(i, j, k)]
        a = np.asarray(a, dtype=F.dtype)
        b = np.asarray(b, dtype=F.dtype)
        return F.reduce(np.einsum("a,b,abk->k", a, b, t)) if F.kind == "prime" else np.einsum("a,b,abk->k", a, b, t)

    def post_matrix(self, i: int, j: int, k: int, b: np.ndarray) -> np.ndarray:
        """Matrix of ``a ↦ b ∘ a`` from ``Hom(i, j)`` to ``Hom(i, k)`` (columns are images)."""
        F = self.F
        if self.dims[i, j] == 0 or self.dims[i, k] == 0 or self.dims[j, k] == 0:
            return F.zeros((self.dims[i, k], self.dims[i, j]))
        t = self.comp[(i, j, k)]
        m = np.tensordot(t, np.asarray(b, dtype=F.dtype), axes=([1], [0]))  # (d_ij, d_ik)
        return F.reduce(m.T)

    def pre_matrix(self, i: int, j: int, k: int, a: np.ndarray) -> np.ndarray:
        """Matrix of ``b ↦ b ∘ a`` from ``Hom(j, k)`` to ``Hom(i, k)``."""
        F = self.F
        if self.dims[i, j] == 0 or self.dims[j, k] == 0 or self.dims[i, k] == 0:
            return F.zeros((self.dims[i, k], self.dims[j, k]))
        t = self.comp[(i, j, k)]
        m = np.tensordot(np.asarray(a, dtype=F.dtype), t, axes=([0], [0]))  # (d_jk, d_ik)
        return F.reduce(m.T)

    def end_mult(self, i: int) -> np.ndarray:
        """Structure constants of ``End(i)`` with ``mult[x, y] = x ∘ y``."""
        d = self.dims[i, i]
        if d == 0:
            return self.F.zeros((0, 0, 0))
        return self.comp[(i, i, i)].transpose(1, 0, 2).copy()

    def is_zero_object(self, i: int) -> bool:
        return self.dims[i, i] == 0

    # -- radical ---------------------------------------------------------
    def radical(self, i: int, j: int) -> Subspace:
        """``rad(i, j)`` inside the coordinate space of ``Hom(i, j)``."""
        key = (i, j)
        if key not in self._rad:
            d = self.dims[i, j]
            if i != j:
                self._rad[key] = Subspace.full(self.F, d)
            else:
                self._rad[key] = la.algebra_radical(self.F, self.end_mult(i)) if d else Subspace.zero(self.F, 0)
        return self._rad[key]

    def is_local(self, i: int) -> bool:
        d = self.dims[i, i]
        return d > 0 and d - self.radical(i, i).dim == 1

    def radical_square(self, i: int, j: int, through: Sequence[int] | None = None) -> Subspace:
        """``rad²(i, j)``, composing through ``through`` (default: all objects)."""
        F = self.F
        vecs = []
        for k in (range(self.n) if through is None else through):
            r1 = self.radical(i, k).basis
            r2 = self.radical(k, j).basis
            for a in r1:
                for b in r2:
                    vecs.append(self.compose(i, k, j, a, b))
        return Subspace.span(F, int(self.dims[i, j]), vecs)

    def irreducible_dims(self) -> dict[tuple[int, int], int]:
        out = {}
        for i in range(self.n):
            for j in range(self.n):
                if self.is_zero_object(i) or self.is_zero_object(j):
                    continue
                d = self.radical(i, j).dim - self.radical_square(i, j).dim
                if d:
                    out[(i, j)] = d
        return out

    def connected(self) -> bool:
        """Connectivity of the graph with an edge wherever some hom space is nonzero."""
        live = [i for i in range(self.n) if not self.is_zero_object(i)]
        if not live:
            return True
        seen = {live[0]}
        stack = [live[0]]
        while stack:
            i = stack.pop()
            for j in live:
                if j not in seen and (self.dims[i, j] or self.dims[j, i]):
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(live)

    # -- suspension on morphisms -------------------------------------------
    def sigma_hom(self, i: int, j: int, a: np.ndarray) -> np.ndarray:
        m = self.sigma_maps[(i, j)]
        if m.size == 0:
            return self.F.zeros(m.shape[0])
        return self.F.dot(m, np.asarray(a, dtype=self.F.dtype))


# ---------------------------------------------------------------------------
# Additive objects and morphisms


@dataclass
class AddMorphism:
    """A morphism between additive objects as a block matrix of coordinate vectors."""

    cat: FiniteCategory
    src: tuple
    tgt: tuple
    blocks: list  # blocks[r][c] ∈ Hom(src[c], tgt[r])

    @classmethod
    def zero(cls, cat: FiniteCategory, src, tgt) -> "AddMorphism":
        F = cat.F
        return cls(cat, tuple(src), tuple(tgt), [[F.zeros(cat.dims[c, r]) for c in src] for r in tgt])

    @classmethod
    def identity(cls, cat: FiniteCategory, X) -> "AddMorphism":
        m = cls.zero(cat, X, X)
        for r, x in enumerate(X):
            m.blocks[r][r] = cat.identity[x].copy()
        return m

    @classmethod
    def single(cls, cat: FiniteCategory, i: int, j: int, coords) -> "AddMorphism":
        return cls(cat, (i,), (j,), [[np.asarray(coords, dtype=cat.F.dtype)]])

    def __matmul__(self, other: "AddMorphism") -> "AddMorphism":
        """``self ∘ other``."""
        cat = self.cat
        if tuple(other.tgt) != tuple(self.src):
            raise CategoryError("additive morphisms are not composable")
        out = AddMorphism.zero(cat, other.src, self.tgt)
        F = cat.F
        for r, z in enumerate(self.tgt):
            for c, x in enumerate(other.src):
                acc = F.zeros(cat.dims[x, z])
                for m, y in enumerate(self.src):
                    acc = F.reduce(acc + cat.compose(x, y, z, other.blocks[m][c], self.blocks[r][m]))
                out.blocks[r][c] = acc
        return out

    def __add__(self, other: "AddMorphism") -> "AddMorphism":
        F = self.cat.F
        return AddMorphism(
            self.cat,
            self.src,
            self.tgt,
            [[F.reduce(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(self.blocks, other.blocks)],
        )

    def scale(self, c) -> "AddMorphism":
        F = self.cat.F
        c = F.scalar(c)
        return AddMorphism(self.cat, self.src, self.tgt, [[F.reduce(a * c) for a in row] for row in self.blocks])

    def __neg__(self) -> "AddMorphism":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(la.is_zero(b) for row in self.blocks for b in row)

    def sigma(self) -> "AddMorphism":
        cat = self.cat
        s = cat.sigma
        return AddMorphism(
            cat,
            tuple(s[x] for x in self.src),
            tuple(s[y] for y in self.tgt),
            [[cat.sigma_hom(x, y, self.blocks[r][c]) for c, x in enumerate(self.src)] for r, y in enumerate(self.tgt)],
        )

    def to_json(self) -> dict:
        cat = self.cat
        return {
            "src": [cat.labels[x] for x in self.src],
            "tgt": [cat.labels[y] for y in self.tgt],
            "blocks": [[cat.F.to_python(b) for b in row] for row in self.blocks],
        }

    def post_matrix(self, w: int) -> np.ndarray:
        """``Hom(w, src) -> Hom(w, tgt)`` as a matrix on stacked coordinates."""
        cat = self.cat
        F = cat.F
        rows = [int(cat.dims[w, y]) for y in self.tgt]
        cols = [int(cat.dims[w, x]) for x in self.src]
        out = F.zeros((sum(rows), sum(cols)))
        r0 = 0
        for r, y in enumerate(self.tgt):
            c0 = 0
            for c, x in enumerate(self.src):
                out[r0:r0 + rows[r], c0:c0 + cols[c]] = cat.post_matrix(w, x, y, self.blocks[r][c])
                c0 += cols[c]
            r0 += rows[r]
        return out

    def pre_matrix(self, w: int) -> np.ndarray:
        """``Hom(tgt, w) -> Hom(src, w)`` as a matrix on stacked coordinates."""
        cat = self.cat
        F = cat.F
        rows = [int(cat.dims[x, w]) for x in self.src]
        cols = [int(cat.dims[y, w]) for y in self.tgt]
        out = F.zeros((sum(rows), sum(cols)))
        r0 = 0
        for c, x in enumerate(self.src):
            c0 = 0
            for r, y in enumerate(self.tgt):
                out[r0:r0 + rows[c], c0:c0 + cols[r]] = cat.pre_matrix(x, y, w, self.blocks[r][c])
                c0 += cols[r]
            r0 += rows[c]
        return out


def hom_dim_add(cat: FiniteCategory, X, Y) -> int:
    return int(sum(cat.dims[x, y] for x in X for y in Y))


# ---------------------------------------------------------------------------
# Triangles


@dataclass
class TriangleData:
    """A candidate distinguished triangle ``X -f-> Y -g-> Z -h-> ΣX``."""

    X: tuple
    Y: tuple
    Z: tuple
    f: AddMorphism
    g: AddMorphism
    h: AddMorphism
    origin: str = ""
    certificate: "CertificateResult | None" = None

    def labels(self, cat: FiniteCategory) -> dict:
        return {
            "X": [cat.labels[x] for x in self.X],
            "Y": [cat.labels[y] for y in self.Y],
            "Z": [cat.labels[z] for z in self.Z],
        }

    def to_json(self) -> dict:
        cat = self.f.cat
        d = self.labels(cat)
        d.update({"f": self.f.to_json(), "g": self.g.to_json(), "h": self.h.to_json(), "origin": self.origin})
        return d

    def rotate(self) -> "TriangleData":
        """``Y -g-> Z -h-> ΣX -(-Σf)-> ΣY``."""
        sf = self.f.sigma()
        return TriangleData(self.Y, self.Z, sf.src, self.g, self.h, -sf, origin=self.origin + "+rot")


@dataclass
class CertificateResult:
    ok: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": self.failures}


def _exact_at(F: Field, a: np.ndarray, b: np.ndarray, mid_dim: int) -> bool:
    """``A -a-> M -b-> B`` exact at ``M``: ``b a = 0`` and ``rank a + rank b = dim M``."""
    if a.size and b.size and not la.is_zero(F.dot(b, a)):
        return False
    return la.rank(F, a) + la.rank(F, b) == mid_dim


def exactness_certificate(cat: FiniteCategory, t: TriangleData) -> CertificateResult:
    """Rank test of the long exact Hom(W,-) and Hom(-,W) sequences for every object W.

    This is a necessary condition for a triangle to be distinguished.
    """
    F = cat.F
    sf = t.f.sigma()
    neg_sf = -sf
    failures = []
    for w in range(cat.n):
        if cat.is_zero_object(w):
            continue
        maps = [t.f.post_matrix(w), t.g.post_matrix(w), t.h.post_matrix(w), neg_sf.post_matrix(w)]
        mids = [hom_dim_add(cat, [w], t.Y), hom_dim_add(cat, [w], t.Z), hom_dim_add(cat, [w], sf.src)]
        for pos in range(3):
            if not _exact_at(F, maps[pos], maps[pos + 1], mids[pos]):
                failures.append({"W": cat.labels[w], "variance": "covariant", "position": ["Y", "Z", "SigmaX"][pos]})
        co = [neg_sf.pre_matrix(w), t.h.pre_matrix(w), t.g.pre_matrix(w), t.f.pre_matrix(w)]
        cmids = [hom_dim_add(cat, sf.src, [w]), hom_dim_add(cat, t.Z, [w]), hom_dim_add(cat, t.Y, [w])]
        for pos in range(3):
            if not _exact_at(F, co[pos], co[pos + 1], cmids[pos]):
                failures.append({"W": cat.labels[w], "variance": "contravariant", "position": ["SigmaX", "Z", "Y"][pos]})
    return CertificateResult(not failures, failures)


def split_triangle(cat: FiniteCategory, X) -> TriangleData:
    """``X -id-> X -> 0 -> ΣX``."""
    X = tuple(X)
    sX = tuple(cat.sigma[x] for x in X)
    return TriangleData(
        X,
        X,
        (),
        AddMorphism.identity(cat, X),
        AddMorphism.zero(cat, X, ()),
        AddMorphism.zero(cat, (), sX),
        origin="identity",
    )


# ---------------------------------------------------------------------------
# Building handles from concrete data


def category_from_bases(
    F: Field,
    labels: Sequence[str],
    hom_basis: Callable[[int, int], list],
    compose: Callable,
    coords: Callable[[int, int, object], np.ndarray],
    identity: Callable[[int], object],
    **kwargs,
) -> FiniteCategory:
    """Tabulate structure constants from concrete bases.

    ``hom_basis(i, j)`` lists basis morphisms, ``compose(b, a)`` returns
    ``b ∘ a`` and ``coords(i, k, m)`` reads off coordinates.
    """
    n = len(labels)
    bases = {(i, j): hom_basis(i, j) for i in range(n) for j in range(n)}
    dims = [[len(bases[(i, j)]) for j in range(n)] for i in range(n)]
    comp = {}
    for i in range(n):
        for j in range(n):
            if not dims[i][j]:
                continue
            for k in range(n):
                if not dims[j][k] or not dims[i][k]:
                    continue
                t = F.zeros((dims[i][j], dims[j][k], dims[i][k]))
                for a, fa in enumerate(bases[(i, j)]):
                    for b, fb in enumerate(bases[(j, k)]):
                        t[a, b] = coords(i, k, compose(fb, fa))
                comp[(i, j, k)] = t
    ident = [coords(i, i, identity(i)) if dims[i][i] else F.zeros(0) for i in range(n)]
    return FiniteCategory(F, labels, dims, comp, ident, **kwargs)


def module_category_handle(mc) -> FiniteCategory:
    """Handle on ``mod A`` from a knitted :class:`quiver.ModuleCategory`."""
    from . import quiver as qv

    objs = mc.objects
    F = mc.Q.F
    tau = [mc.tau.get(i) for i in range(len(objs))]
    cat = category_from_bases(
        F,
        [m.label for m in objs],
        lambda i, j: qv.hom_space(objs[i], objs[j]).basis(),
        lambda b, a: b @ a,
        lambda i, k, m: qv.hom_space(objs[i], objs[k]).coords(m),
        lambda i: objs[i].identity(),
        tau=tau,
        kind="module",
        name=mc.Q.name,
    )
    cat.modules = mc
    cat.reps = objs
    return cat


def morphism_to_module_map(cat: FiniteCategory, f: AddMorphism):
    """Realize an additive morphism of a module handle as a module map of direct sums."""
    from . import quiver as qv

    reps = cat.reps
    blocks = []
    for r, y in enumerate(f.tgt):
        row = []
        for c, x in enumerate(f.src):
            hs = qv.hom_space(reps[x], reps[y])
            row.append(hs.element(f.blocks[r][c]) if hs.dim else reps[x].zero_map(reps[y]))
        blocks.append(row)
    Q = reps[0].Q
    if not f.src or not f.tgt:
        S, _, _ = qv.direct_sum([reps[x] for x in f.src], Q)
        T, _, _ = qv.direct_sum([reps[y] for y in f.tgt], Q)
        return S.zero_map(T)
    m, _, _ = qv.block_morphism([reps[x] for x in f.src], [reps[y] for y in f.tgt], blocks)
    return m
