"""Path algebras with relations and their finite-dimensional representations.

A path is a pair ``(source_vertex, arrows)`` where ``arrows`` is a tuple of arrow
names listed in the order they are traversed, so ``("a", ("alpha", "beta"))``
walks ``alpha`` first.  A representation stores a matrix of shape
``dims[target] x dims[source]`` for every arrow, so a path acts by the product
of its arrow matrices taken right to left.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .linalg import Field, Subspace

Path = tuple  # (source vertex, tuple of arrow names)


class PresentationError(ValueError):
    """Invalid quiver presentation or algebra descriptor."""


class PossiblyInfiniteTypeError(RuntimeError):
    """Knitting exceeded its step cap."""


class DomainError(ValueError):
    """Operation applied outside its domain (e.g. tau of a projective)."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class QuiverPresentation:
    """A finite quiver with a list of relations and a ground field.

    Args:
        vertices: vertex labels.
        arrows: ``(name, source, target)`` triples.
        relations: each relation is a list of ``(coeff, [arrow names])`` terms.
        field: a field or anything :func:`linalg.field_from_spec` accepts.
        label_order: ``"top-first"`` or ``"socle-first"``; how module labels
            list radical layers.
        length_cap: cap on path length for the finite-dimensionality check.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        arrows: Sequence,
        relations: Sequence = (),
        field=None,
        label_order: str = "top-first",
        length_cap: int | None = None,
        name: str = "",
    ):
        self.F: Field = la.field_from_spec(field)
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex labels")
        self.arrows: list[Arrow] = []
        for a in arrows:
            arr = a if isinstance(a, Arrow) else Arrow(*(str(x) for x in a))
            if arr.source not in self.vertices or arr.target not in self.vertices:
                raise PresentationError(f"arrow {arr.name} has unknown endpoint")
            self.arrows.append(arr)
        self.arrow = {a.name: a for a in self.arrows}
        if len(self.arrow) != len(self.arrows):
            raise PresentationError("duplicate arrow names")
        self.relations: list[list[tuple]] = []
        for rel in relations:
            terms = []
            for coeff, path in rel:
                path = tuple(str(x) for x in path)
                if len(path) < 2:
                    raise PresentationError(f"relation path {path} has length < 2")
                self._check_composable(path)
                terms.append((self.F.scalar(coeff), path))
            ends = {(self.arrow[p[0]].source, self.arrow[p[-1]].target) for _, p in terms}
            if len(ends) != 1:
                raise PresentationError("relation terms have different endpoints")
            self.relations.append(terms)
        if label_order not in ("top-first", "socle-first"):
            raise PresentationError(f"unknown label order {label_order!r}")
        self.label_order = label_order
        self.name = name
        max_rel = max((len(p) for rel in self.relations for _, p in rel), default=2)
        self.length_cap = length_cap or 4 * max(1, len(self.vertices)) * max_rel
        self._algebra = None

    def _check_composable(self, path: Sequence[str]) -> None:
        for x in path:
            if x not in self.arrow:
                raise PresentationError(f"unknown arrow {x!r}")
        for a, b in zip(path, path[1:]):
            if self.arrow[a].target != self.arrow[b].source:
                raise PresentationError(f"path {list(path)} is not composable")

    def __repr__(self) -> str:
        return f"QuiverPresentation({self.name or len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    @property
    def algebra(self) -> "PathAlgebra":
        if self._algebra is None:
            self._algebra = PathAlgebra(self)
        return self._algebra

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> "QuiverPresentation":
        rels = [[(c, list(reversed(p))) for c, p in rel] for rel in self.relations]
        opp = QuiverPresentation(
            self.vertices,
            [(a.name, a.target, a.source) for a in self.arrows],
            rels,
            self.F,
            self.label_order,
            self.length_cap,
            name=(self.name + "^op") if self.name else "",
        )
        return opp

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        F = self.F
        return {
            "name": self.name,
            "field": F.spec(),
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows],
            "relations": [
                [{"coeff": F.to_python(np.array(c)) if F.kind == "prime" else str(c), "path": list(p)} for c, p in rel]
                for rel in self.relations
            ],
            "label_order": self.label_order,
        }

    def canonical_echo(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict, field=None) -> "QuiverPresentation":
        try:
            vertices = data["vertices"]
            arrows = [(a["name"], a["source"], a["target"]) for a in data.get("arrows", [])]
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed algebra descriptor: {exc}") from exc
        relations = []
        for rel in data.get("relations", []):
            if isinstance(rel, dict) and "terms" in rel:
                rel = rel["terms"]
            if isinstance(rel, dict):
                rel = [rel]
            relations.append([(_parse_coeff(t.get("coeff", 1)), t["path"]) for t in rel])
        return cls(
            vertices,
            arrows,
            relations,
            field if field is not None else data.get("field"),
            data.get("label_order", "top-first"),
            data.get("length_cap"),
            name=data.get("name", ""),
        )

    @classmethod
    def load(cls, path, field=None) -> "QuiverPresentation":
        with open(path) as fh:
            return cls.from_json(json.load(fh), field=field)


def _parse_coeff(c):
    if isinstance(c, str) and "/" in c:
        from fractions import Fraction

        return Fraction(c)
    return int(c) if not isinstance(c, float) else c


# ---------------------------------------------------------------------------
# Path algebra


def _extend_paths(Q: QuiverPresentation, paths: list[Path]) -> list[Path]:
    out = []
    for src, arrs in paths:
        end = Q.arrow[arrs[-1]].target if arrs else src
        for a in Q.out_arrows(end):
            out.append((src, arrs + (a.name,)))
    return out


def path_target(Q: QuiverPresentation, p: Path) -> str:
    return Q.arrow[p[1][-1]].target if p[1] else p[0]


class PathAlgebra:
    """The algebra ``kQ/I`` with a basis of normal paths.

    The ideal is truncated at the first length ``m`` for which every path of
    length ``m`` already lies in ``I + (paths of length m+1)``; from then on the
    truncations all agree, so the returned algebra is exact for admissible
    ideals.  Columns are ordered longest path first, so normal forms keep the
    shortest representatives.
    """

    def __init__(self, Q: QuiverPresentation):
        self.Q = Q
        F = Q.F
        by_len: list[list[Path]] = [[(v, ()) for v in Q.vertices]]
        for L in range(2, Q.length_cap + 2):
            while len(by_len) < L + 1:
                by_len.append(_extend_paths(Q, by_len[-1]))
            all_paths = [p for layer in reversed(by_len[:L]) for p in layer]
            index = {p: i for i, p in enumerate(all_paths)}
            ideal = self._truncated_ideal(by_len, L, index)
            top = by_len[L - 1]
            if all(ideal.contains(self._unit_vec(len(all_paths), index[p])) for p in top):
                self.nilpotency = L - 1  # paths of this length vanish
                break
        else:
            raise PresentationError(
                f"algebra does not appear finite-dimensional below path length {Q.length_cap}"
            )
        self.all_paths = all_paths
        self.index = index
        self.ideal = ideal
        piv = set(ideal.pivots)
        self.basis: list[Path] = [p for i, p in enumerate(all_paths) if i not in piv]
        self.basis_cols = [index[p] for p in self.basis]
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._between: dict[tuple[str, str], list[int]] = {}
        for i, p in enumerate(self.basis):
            self._between.setdefault((p[0], path_target(Q, p)), []).append(i)
        self._mult = None

    @staticmethod
    def _unit_vec(n, i):
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        return v

    def _truncated_ideal(self, by_len, L, index) -> Subspace:
        """RREF of ``I + (paths of length >= L)`` restricted to shorter paths.

        The ideal splits over (source, target) pairs, so each block is reduced
        separately and the blocks are merged; the merged rows are still in
        canonical echelon form because their supports are disjoint.
        """
        Q, F = self.Q, self.Q.F
        n = len(index)
        paths_upto = [p for layer in by_len[:L] for p in layer]
        ending: dict = {}
        starting: dict = {}
        for p in paths_upto:
            ending.setdefault(path_target(Q, p), []).append(p)
            starting.setdefault(p[0], []).append(p)
        block_rows: dict = {}
        for rel in self.Q.relations:
            s = Q.arrow[rel[0][1][0]].source
            t = Q.arrow[rel[0][1][-1]].target
            shortest = min(len(p) for _, p in rel)
            for u in ending.get(s, []):
                for w in starting.get(t, []):
                    if len(u[1]) + shortest + len(w[1]) >= L:
                        continue
                    row = {}
                    for c, p in rel:
                        full = u[1] + tuple(p) + w[1]
                        if len(full) < L:
                            k = index[(u[0], full)]
                            row[k] = F.reduce(row.get(k, 0) + c)
                    block_rows.setdefault((u[0], path_target(Q, w)), []).append(row)
        self._blocks = {}
        for p, i in index.items():
            self._blocks.setdefault((p[0], path_target(Q, p)), []).append(i)
        merged = []
        for key, rows in block_rows.items():
            cols = sorted(self._blocks[key])
            pos = {c: j for j, c in enumerate(cols)}
            mat = F.zeros((len(rows), len(cols)))
            for r, row in enumerate(rows):
                for k, c in row.items():
                    mat[r, pos[k]] = c
            red, piv = la.rref(F, mat)
            for r in range(red.shape[0]):
                full = F.zeros(n)
                full[cols] = red[r]
                merged.append((cols[piv[r]], full))
        if not merged:
            return Subspace.zero(F, n)
        merged.sort(key=lambda x: x[0])
        basis = np.array([m[1] for m in merged], dtype=F.dtype)
        return Subspace(F, n, basis, tuple(m[0] for m in merged))

    # -- elements ------------------------------------------------------
    def normal_form(self, terms: dict) -> np.ndarray:
        """Coordinates in the normal-path basis of a combination ``{path: coeff}``."""
        F = self.Q.F
        v = F.zeros(len(self.all_paths))
        for p, c in terms.items():
            i = self.index.get(p)
            if i is not None:
                v[i] = F.reduce(v[i] + c)
        v = self.ideal.reduce(v)
        return v[self.basis_cols]

    def between(self, v: str, w: str) -> list[int]:
        """Indices of basis paths from ``v`` to ``w``."""
        return self._between.get((v, w), [])

    def concat(self, p: Path, q: Path) -> Path | None:
        if path_target(self.Q, p) != q[0]:
            return None
        return (p[0], p[1] + q[1])

    def multiply_paths(self, p: Path, q: Path) -> np.ndarray:
        """Normal form of ``p`` followed by ``q`` (zero if not composable)."""
        r = self.concat(p, q)
        if r is None:
            return self.Q.F.zeros(self.dim)
        return self.normal_form({r: 1})

    def mult_table(self) -> np.ndarray:
        """``mult[i, j]`` = coordinates of basis path i followed by basis path j."""
        if self._mult is None:
            F = self.Q.F
            m = F.zeros((self.dim, self.dim, self.dim))
            for i, p in enumerate(self.basis):
                for j, q in enumerate(self.basis):
                    m[i, j] = self.multiply_paths(p, q)
            self._mult = m
        return self._mult

    def path_label(self, p: Path) -> str:
        return "e_" + p[0] if not p[1] else "*".join(p[1])


# ---------------------------------------------------------------------------
# Representations


class Representation:
    """A finite-dimensional representation of a quiver with relations."""

    def __init__(self, Q: QuiverPresentation, dims: dict, maps: dict, check: bool = True, label: str = ""):
        self.Q = Q
        F = Q.F
        self.dims = {v: int(dims.get(v, 0)) for v in Q.vertices}
        self.maps = {}
        for a in Q.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.get(a.name)
            m = F.zeros(shape) if m is None else np.asarray(m, dtype=F.dtype).reshape(shape)
            self.maps[a.name] = F.reduce(m)
        self.label = label
        off = 0
        self.offsets = {}
        for v in Q.vertices:
            self.offsets[v] = off
            off += self.dims[v]
        self.dim = off
        self._cache: dict = {}
        if check:
            for rel in Q.relations:
                if not la.is_zero(self.eval_relation(rel)):
                    raise PresentationError(f"representation violates relation {rel}")

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"Representation{tag}{self.dim_vector}"

    @property
    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.Q.vertices)

    def path_matrix(self, arrows: Sequence[str], src: str | None = None) -> np.ndarray:
        F = self.Q.F
        if not arrows:
            return F.eye(self.dims[src])
        m = self.maps[arrows[0]]
        for a in arrows[1:]:
            m = F.dot(self.maps[a], m)
        return m

    def eval_relation(self, rel) -> np.ndarray:
        F = self.Q.F
        acc = None
        for c, p in rel:
            term = F.reduce(c * self.path_matrix(p))
            acc = term if acc is None else F.reduce(acc + term)
        return acc

    def is_zero(self) -> bool:
        return self.dim == 0

    def rad_subspace(self, v: str) -> Subspace:
        F = self.Q.F
        cols = [self.maps[a.name] for a in self.Q.in_arrows(v)]
        if not cols or self.dims[v] == 0:
            return Subspace.zero(F, self.dims[v])
        return la.image(F, np.hstack(cols))

    def soc_subspace(self, v: str) -> Subspace:
        F = self.Q.F
        rows = [self.maps[a.name] for a in self.Q.out_arrows(v)]
        if not rows:
            return Subspace.full(F, self.dims[v])
        return la.kernel(F, np.vstack(rows))

    def top_dims(self) -> tuple:
        return tuple(self.dims[v] - self.rad_subspace(v).dim for v in self.Q.vertices)

    def soc_dims(self) -> tuple:
        return tuple(self.soc_subspace(v).dim for v in self.Q.vertices)

    def submodule_from_subspaces(self, subs: dict) -> tuple["Representation", "ModuleMorphism"]:
        """Submodule spanned at each vertex by ``subs[v]`` (assumed stable)."""
        F = self.Q.F
        bases = {v: subs[v].basis.T if subs[v].dim else F.zeros((self.dims[v], 0)) for v in self.Q.vertices}
        maps = {}
        for a in self.Q.arrows:
            img = F.dot(self.maps[a.name], bases[a.source])
            sol = la.solve_many(F, bases[a.target], img) if bases[a.target].shape[1] else F.zeros((0, img.shape[1]))
            if sol is None:
                raise ArithmeticError("subspaces are not a submodule")
            maps[a.name] = sol
        sub = Representation(self.Q, {v: subs[v].dim for v in self.Q.vertices}, maps, check=False)
        return sub, ModuleMorphism(sub, self, bases)

    def radical(self) -> tuple["Representation", "ModuleMorphism"]:
        return self.submodule_from_subspaces({v: self.rad_subspace(v) for v in self.Q.vertices})

    def radical_layers(self) -> list[tuple]:
        """Dimension vectors of ``rad^i M / rad^{i+1} M`` from the top down."""
        layers = []
        M = self
        while M.dim:
            top = M.top_dims()
            layers.append(top)
            M, _ = M.radical()
            if sum(top) == 0:
                raise ArithmeticError("radical series does not terminate")
        return layers

    def loewy_length(self) -> int:
        return len(self.radical_layers())

    def default_label(self) -> str:
        layers = self.radical_layers()
        if self.Q.label_order == "socle-first":
            layers = list(reversed(layers))
        parts = []
        for layer in layers:
            parts.append("".join(v * k for v, k in zip(self.Q.vertices, layer)))
        if all(len(v) == 1 for v in self.Q.vertices):
            return "".join(parts) or "0"
        return "|".join(parts) or "0"

    def flatten_index(self, v: str, i: int) -> int:
        return self.offsets[v] + i

    def identity(self) -> "ModuleMorphism":
        return ModuleMorphism(self, self, {v: self.Q.F.eye(self.dims[v]) for v in self.Q.vertices})

    def zero_map(self, other: "Representation") -> "ModuleMorphism":
        return ModuleMorphism(self, other, {v: self.Q.F.zeros((other.dims[v], self.dims[v])) for v in self.Q.vertices})

    def relabel(self, label: str) -> "Representation":
        r = Representation(self.Q, self.dims, self.maps, check=False, label=label)
        return r

    def dual(self, Qop: QuiverPresentation | None = None) -> "Representation":
        """Vertexwise dual ``D M``, a representation of the opposite quiver."""
        Qop = Qop or self.Q.opposite()
        return Representation(Qop, self.dims, {a: m.T.copy() for a, m in self.maps.items()}, check=False)


def zero_rep(Q: QuiverPresentation) -> Representation:
    return Representation(Q, {}, {}, check=False, label="0")


def direct_sum(mods: Sequence[Representation], Q: QuiverPresentation | None = None):
    """Direct sum with inclusions and projections."""
    if not mods:
        if Q is None:
            raise ValueError("empty direct sum needs a quiver")
        z = zero_rep(Q)
        return z, [], []
    Q = mods[0].Q
    F = Q.F
    dims = {v: sum(m.dims[v] for m in mods) for v in Q.vertices}
    maps = {}
    for a in Q.arrows:
        blocks = F.zeros((dims[a.target], dims[a.source]))
        r = c = 0
        for m in mods:
            blocks[r:r + m.dims[a.target], c:c + m.dims[a.source]] = m.maps[a.name]
            r += m.dims[a.target]
            c += m.dims[a.source]
        maps[a.name] = blocks
    S = Representation(Q, dims, maps, check=False, label="+".join(m.label for m in mods if m.label))
    incs, projs = [], []
    off = {v: 0 for v in Q.vertices}
    for m in mods:
        ib, pb = {}, {}
        for v in Q.vertices:
            e = F.zeros((dims[v], m.dims[v]))
            for i in range(m.dims[v]):
                e[off[v] + i, i] = 1
            ib[v] = e
            pb[v] = e.T.copy()
            off[v] += m.dims[v]
        incs.append(ModuleMorphism(m, S, ib))
        projs.append(ModuleMorphism(S, m, pb))
    return S, incs, projs


class ModuleMorphism:
    """A morphism of representations, one matrix per vertex."""

    def __init__(self, src: Representation, tgt: Representation, blocks: dict, check: bool = False):
        self.src = src
        self.tgt = tgt
        F = src.Q.F
        self.blocks = {
            v: F.reduce(np.asarray(blocks[v], dtype=F.dtype).reshape(tgt.dims[v], src.dims[v]))
            for v in src.Q.vertices
        }
        if check and not self.commutes():
            raise ArithmeticError("blocks do not commute with arrow maps")

    @property
    def F(self) -> Field:
        return self.src.Q.F

    def commutes(self) -> bool:
        F = self.F
        for a in self.src.Q.arrows:
            lhs = F.dot(self.blocks[a.target], self.src.maps[a.name])
            rhs = F.dot(self.tgt.maps[a.name], self.blocks[a.source])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self @ other`` is ``self`` after ``other``."""
        if other.tgt is not self.src and other.tgt.dim_vector != self.src.dim_vector:
            raise ValueError("morphisms are not composable")
        F = self.F
        return ModuleMorphism(other.src, self.tgt, {v: F.dot(self.blocks[v], other.blocks[v]) for v in self.blocks})

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.src, self.tgt, {v: self.F.reduce(self.blocks[v] + other.blocks[v]) for v in self.blocks})

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.src, self.tgt, {v: self.F.reduce(self.blocks[v] - other.blocks[v]) for v in self.blocks})

    def scale(self, c) -> "ModuleMorphism":
        c = self.F.scalar(c)
        return ModuleMorphism(self.src, self.tgt, {v: self.F.reduce(self.blocks[v] * c) for v in self.blocks})

    def __neg__(self) -> "ModuleMorphism":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(la.is_zero(b) for b in self.blocks.values())

    def vector(self) -> np.ndarray:
        F = self.F
        parts = [self.blocks[v].reshape(-1) for v in self.src.Q.vertices]
        return np.concatenate(parts) if parts else F.zeros(0)

    def rank(self) -> int:
        return sum(la.rank(self.F, b) for b in self.blocks.values())

    def is_mono(self) -> bool:
        return self.rank() == self.src.dim

    def is_epi(self) -> bool:
        return self.rank() == self.tgt.dim

    def is_iso(self) -> bool:
        return self.src.dim == self.tgt.dim and self.is_mono()

    def inverse(self) -> "ModuleMorphism":
        return ModuleMorphism(self.tgt, self.src, {v: la.inverse(self.F, b) for v, b in self.blocks.items()})

    def kernel(self) -> tuple[Representation, "ModuleMorphism"]:
        return self.src.submodule_from_subspaces({v: la.kernel(self.F, b) for v, b in self.blocks.items()})

    def image(self) -> tuple[Representation, "ModuleMorphism"]:
        return self.tgt.submodule_from_subspaces({v: la.image(self.F, b) for v, b in self.blocks.items()})

    def cokernel(self) -> tuple[Representation, "ModuleMorphism"]:
        return quotient_module(self.tgt, {v: la.image(self.F, b) for v, b in self.blocks.items()})

    def __repr__(self) -> str:
        return f"ModuleMorphism({self.src!r} -> {self.tgt!r})"


def quotient_module(M: Representation, subs: dict) -> tuple[Representation, ModuleMorphism]:
    """``M / N`` for a submodule given by vertexwise subspaces, with the projection."""
    Q, F = M.Q, M.Q.F
    quos = {v: la.QuotientSpace(Subspace.full(F, M.dims[v]), subs[v]) for v in Q.vertices}
    maps = {}
    for a in Q.arrows:
        qs, qt = quos[a.source], quos[a.target]
        lifted = qs.lift(F.eye(qs.dim)) if qs.dim else F.zeros((0, M.dims[a.source]))
        img = F.dot(M.maps[a.name], lifted.T) if qs.dim else F.zeros((M.dims[a.target], 0))
        maps[a.name] = qt.coords(img.T).T if qs.dim else F.zeros((qt.dim, 0))
    C = Representation(Q, {v: quos[v].dim for v in Q.vertices}, maps, check=False)
    proj = {}
    for v in Q.vertices:
        proj[v] = quos[v].coords(F.eye(M.dims[v])).T if M.dims[v] else F.zeros((quos[v].dim, 0))
    return C, ModuleMorphism(M, C, proj)


def block_morphism(src_mods, tgt_mods, blocks) -> tuple[ModuleMorphism, Representation, Representation]:
    """Assemble ``blocks[r][c]: src_mods[c] -> tgt_mods[r]`` into one morphism of sums."""
    S, s_inc, s_proj = direct_sum(src_mods)
    T, t_inc, t_proj = direct_sum(tgt_mods)
    acc = S.zero_map(T)
    for r, row in enumerate(blocks):
        for c, f in enumerate(row):
            if f is not None:
                acc = acc + t_inc[r] @ f @ s_proj[c]
    return acc, S, T


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """A basis of ``Hom(M, N)`` kept in canonical (RREF) form."""

    def __init__(self, M: Representation, N: Representation):
        self.M = M
        self.N = N
        Q, F = M.Q, M.Q.F
        sizes = {v: N.dims[v] * M.dims[v] for v in Q.vertices}
        off = {}
        n = 0
        for v in Q.vertices:
            off[v] = n
            n += sizes[v]
        self.ambient = n
        rows = []
        for a in Q.arrows:
            s, t = a.source, a.target
            if M.dims[s] == 0 and M.dims[t] == 0:
                continue
            if N.dims[s] == 0 and N.dims[t] == 0:
                continue
            nr = N.dims[t] * M.dims[s]
            if nr == 0:
                continue
            block = F.zeros((nr, n))
            if sizes[t]:
                block[:, off[t]:off[t] + sizes[t]] = np.kron(F.eye(N.dims[t]), M.maps[a.name].T)
            if sizes[s]:
                block[:, off[s]:off[s] + sizes[s]] = F.reduce(
                    block[:, off[s]:off[s] + sizes[s]] - np.kron(N.maps[a.name], F.eye(M.dims[s]))
                )
            rows.append(F.reduce(block))
        if rows:
            self.space = la.kernel(F, np.vstack(rows))
        else:
            self.space = Subspace.full(F, n)
        self._off = off

    @property
    def dim(self) -> int:
        return self.space.dim

    def from_vector(self, vec: np.ndarray) -> ModuleMorphism:
        Q = self.M.Q
        blocks = {}
        for v in Q.vertices:
            size = self.N.dims[v] * self.M.dims[v]
            blocks[v] = vec[self._off[v]:self._off[v] + size].reshape(self.N.dims[v], self.M.dims[v])
        return ModuleMorphism(self.M, self.N, blocks)

    def basis(self) -> list[ModuleMorphism]:
        if "_basis" not in self.__dict__:
            self._basis = [self.from_vector(b) for b in self.space.basis]
        return self._basis

    def element(self, coords) -> ModuleMorphism:
        return self.from_vector(self.space.from_coords(np.asarray(coords, dtype=self.M.Q.F.dtype)))

    def coords(self, f: ModuleMorphism) -> np.ndarray:
        return self.space.coords(f.vector())

    def contains(self, f: ModuleMorphism) -> bool:
        return self.space.contains(f.vector())

    def random(self, rng: np.random.Generator) -> ModuleMorphism:
        return self.element(self.M.Q.F.random(self.dim, rng))


def hom_space(M: Representation, N: Representation) -> HomSpace:
    key = ("hom", id(N))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    hs = HomSpace(M, N)
    M._cache[key] = (N, hs)
    return hs


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_space(M, N).dim


def end_algebra(M: Representation) -> tuple[HomSpace, np.ndarray]:
    """``End(M)`` with structure constants ``mult[i, j] = coords(b_i ∘ b_j)``."""
    hit = M._cache.get("end")
    if hit is not None:
        return hit
    hs = hom_space(M, M)
    basis = hs.basis()
    F = M.Q.F
    n = len(basis)
    mult = F.zeros((n, n, n))
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            mult[i, j] = hs.coords(bi @ bj)
    M._cache["end"] = (hs, mult)
    return hs, mult


def end_radical(M: Representation) -> Subspace:
    hit = M._cache.get("endrad")
    if hit is None:
        _, mult = end_algebra(M)
        hit = la.algebra_radical(M.Q.F, mult)
        M._cache["endrad"] = hit
    return hit


def is_indecomposable(M: Representation) -> bool:
    if M.dim == 0:
        return False
    _, mult = end_algebra(M)
    return la.is_local(M.Q.F, mult, end_radical(M))


def _image_of_idempotent(M: Representation, e: ModuleMorphism) -> Representation:
    sub, _ = e.image()
    return sub


def split_module(M: Representation) -> list[tuple[Representation, ModuleMorphism, ModuleMorphism]]:
    """Split into indecomposables, returning ``(summand, inclusion, projection)``."""
    if M.dim == 0:
        return []
    hs, mult = end_algebra(M)
    F = M.Q.F
    idems = la.fitting_split(F, mult, end_radical(M))
    out = []
    for c in idems:
        e = hs.element(c)
        sub, inc = e.image()
        # projection: e factors as inc ∘ p
        blocks = {}
        for v in M.Q.vertices:
            if sub.dims[v] == 0:
                blocks[v] = F.zeros((0, M.dims[v]))
                continue
            sol = la.solve_many(F, inc.blocks[v], e.blocks[v])
            blocks[v] = sol
        out.append((sub, inc, ModuleMorphism(M, sub, blocks)))
    return out


def is_isomorphic(M: Representation, N: Representation, rng=None, trials: int | None = None) -> ModuleMorphism | None:
    """An isomorphism ``M -> N`` if one is found, else ``None``.

    Disproof is by dimension vectors and hom dimensions; otherwise random
    elements of ``Hom(M, N)`` are tried, and a found isomorphism is a proof.
    """
    if M.dim_vector != N.dim_vector:
        return None
    if M.dim == 0:
        return M.zero_map(N)
    hmn = hom_space(M, N)
    if hmn.dim == 0 or hmn.dim != hom_dim(N, M) or hom_dim(M, M) != hom_dim(N, N) or hmn.dim != hom_dim(M, M):
        return None
    rng = rng if rng is not None else np.random.default_rng(12345)
    basis = hmn.basis()
    for b in basis:
        if b.is_iso():
            return b
    trials = trials or max(8, hmn.dim ** 2)
    for _ in range(trials):
        f = hmn.random(rng)
        if f.is_iso():
            return f
    return None


def iso(M: Representation, N: Representation) -> bool:
    return is_isomorphic(M, N) is not None


def decompose(M: Representation) -> list[tuple[Representation, int]]:
    """Indecomposable summands up to isomorphism with multiplicities."""
    groups: list[list] = []
    for sub, _, _ in split_module(M):
        for g in groups:
            if iso(g[0], sub):
                g[1] += 1
                break
        else:
            groups.append([sub, 1])
    return [(g[0], g[1]) for g in groups]


# ---------------------------------------------------------------------------
# Projectives, injectives and minimal covers


def projective(Q: QuiverPresentation, v: str) -> Representation:
    """``P(v)``: basis paths starting at ``v``; arrows append."""
    A = Q.algebra
    key = ("P", v)
    cache = Q.__dict__.setdefault("_modcache", {})
    if key in cache:
        return cache[key]
    F = Q.F
    idx = {w: A.between(v, w) for w in Q.vertices}
    maps = {}
    for a in Q.arrows:
        m = F.zeros((len(idx[a.target]), len(idx[a.source])))
        for c, bi in enumerate(idx[a.source]):
            coords = A.normal_form({(v, A.basis[bi][1] + (a.name,)): 1})
            m[:, c] = coords[idx[a.target]]
        maps[a.name] = m
    P = Representation(Q, {w: len(idx[w]) for w in Q.vertices}, maps)
    P.label = P.default_label()
    cache[key] = P
    return P


def injective(Q: QuiverPresentation, v: str) -> Representation:
    """``I(v)``: duals of basis paths ending at ``v``; arrows act by transposed prepend."""
    A = Q.algebra
    key = ("I", v)
    cache = Q.__dict__.setdefault("_modcache", {})
    if key in cache:
        return cache[key]
    F = Q.F
    idx = {w: A.between(w, v) for w in Q.vertices}
    maps = {}
    for a in Q.arrows:
        # prepend a: paths(target -> v) -> paths(source -> v)
        pre = F.zeros((len(idx[a.source]), len(idx[a.target])))
        for c, bi in enumerate(idx[a.target]):
            coords = A.normal_form({(a.source, (a.name,) + A.basis[bi][1]): 1})
            pre[:, c] = coords[idx[a.source]]
        maps[a.name] = pre.T.copy()
    I = Representation(Q, {w: len(idx[w]) for w in Q.vertices}, maps)
    I.label = I.default_label()
    cache[key] = I
    return I


def simple(Q: QuiverPresentation, v: str) -> Representation:
    S = Representation(Q, {v: 1}, {})
    S.label = S.default_label()
    return S


@dataclass
class Cover:
    """A minimal cover with its decomposition into indecomposable pieces."""

    module: Representation
    map: ModuleMorphism
    vertices: list  # vertex of each indecomposable summand, in order
    pieces: list  # the indecomposable projectives/injectives
    incs: list
    projs: list


def projective_cover(M: Representation) -> Cover:
    Q, F = M.Q, M.Q.F
    verts, gens = [], []
    for v in Q.vertices:
        rad = M.rad_subspace(v)
        comp = la.QuotientSpace(Subspace.full(F, M.dims[v]), rad).basis()
        for x in comp:
            verts.append(v)
            gens.append(x)
    pieces = [projective(Q, v) for v in verts]
    P, incs, projs = direct_sum(pieces, Q)
    A = Q.algebra
    acc = P.zero_map(M)
    for v, x, Pv, pr in zip(verts, gens, pieces, projs):
        blocks = {}
        for w in Q.vertices:
            idx = A.between(v, w)
            cols = [F.dot(M.path_matrix(A.basis[i][1], v), x) for i in idx]
            blocks[w] = np.array(cols, dtype=F.dtype).T.reshape(M.dims[w], len(idx))
        acc = acc + ModuleMorphism(Pv, M, blocks) @ pr
    return Cover(P, acc, verts, pieces, incs, projs)


def injective_envelope(M: Representation) -> Cover:
    Q, F = M.Q, M.Q.F
    verts, funcs = [], []
    for v in Q.vertices:
        soc = M.soc_subspace(v)
        if soc.dim == 0:
            continue
        # functionals dual to the socle basis: solve phi @ soc.basis.T = I
        sol = la.solve_many(F, soc.basis, F.eye(soc.dim))
        for j in range(soc.dim):
            verts.append(v)
            funcs.append(sol[:, j])
    pieces = [injective(Q, v) for v in verts]
    I, incs, projs = direct_sum(pieces, Q)
    A = Q.algebra
    acc = M.zero_map(I)
    for v, phi, Iv, inc in zip(verts, funcs, pieces, incs):
        blocks = {}
        for w in Q.vertices:
            idx = A.between(w, v)
            rows = [F.dot(phi.reshape(1, -1), M.path_matrix(A.basis[i][1], w)).reshape(-1) for i in idx]
            blocks[w] = np.array(rows, dtype=F.dtype).reshape(len(idx), M.dims[w])
        acc = acc + inc @ ModuleMorphism(M, Iv, blocks)
    return Cover(I, acc, verts, pieces, incs, projs)


def minimal_covers(M: Representation, side: str = "projective_cover") -> tuple[Representation, ModuleMorphism]:
    if side == "projective_cover":
        c = projective_cover(M)
    elif side == "injective_envelope":
        c = injective_envelope(M)
    else:
        raise ValueError(f"unknown side {side!r}")
    return c.module, c.map


def indecomposable_projectives(Q: QuiverPresentation) -> list[Representation]:
    return [projective(Q, v) for v in Q.vertices]


def indecomposable_injectives(Q: QuiverPresentation) -> list[Representation]:
    return [injective(Q, v) for v in Q.vertices]


def is_projective(M: Representation) -> bool:
    """``M`` is projective iff its projective cover is an isomorphism (dimension count)."""
    return projective_cover(M).module.dim == M.dim


def is_injective(M: Representation) -> bool:
    return injective_envelope(M).module.dim == M.dim


def strip(M: Representation, drop) -> Representation:
    keep = [s for s, _, _ in split_module(M) if not drop(s)]
    S, _, _ = direct_sum(keep, M.Q)
    return S


def syzygy_cosyzygy(M: Representation, side: str = "syzygy") -> Representation:
    """``Ω M`` (kernel of the projective cover) or ``Ω⁻¹ M`` (cokernel of the envelope).

    Projective (resp. injective) summands of the result are removed.
    """
    if side in ("syzygy", "omega"):
        K, _ = projective_cover(M).map.kernel()
        return strip(K, is_projective)
    if side in ("cosyzygy", "omega_inverse"):
        C, _ = injective_envelope(M).map.cokernel()
        return strip(C, is_injective)
    raise ValueError(f"unknown side {side!r}")


def minimal_presentation(M: Representation):
    """``P1 -> P0 -> M -> 0`` as ``(cover0, cover1, d)`` with ``d: P1 -> P0``."""
    c0 = projective_cover(M)
    K, kinc = c0.map.kernel()
    c1 = projective_cover(K)
    d = kinc @ c1.map
    return c0, c1, d


def _nakayama_of_presentation(Q: QuiverPresentation, c0: Cover, c1: Cover, d: ModuleMorphism) -> ModuleMorphism:
    """Apply ``ν = D Hom(-, A)`` to ``d: P1 -> P0``."""
    F, A = Q.F, Q.algebra
    src = [injective(Q, w) for w in c1.vertices]
    tgt = [injective(Q, v) for v in c0.vertices]
    blocks = []
    for r, v in enumerate(c0.vertices):
        row = []
        for c, w in enumerate(c1.vertices):
            piece = c0.projs[r] @ d @ c1.incs[c]  # P(w) -> P(v)
            # element q of P(v)_w: image of e_w
            ew_idx = A.between(w, w).index(A.basis_index[(w, ())])
            q = piece.blocks[w][:, ew_idx]
            q_paths = A.between(v, w)
            Iw, Iv = src[c], tgt[r]
            nb = {}
            for x in Q.vertices:
                rx = A.between(x, v)  # basis of paths x -> v (dual basis of I(v)_x)
                px = A.between(x, w)
                m = F.zeros((len(rx), len(px)))
                for i, ri in enumerate(rx):
                    terms = {}
                    for coeff, qi in zip(q, q_paths):
                        if coeff:
                            path = (x, A.basis[ri][1] + A.basis[qi][1])
                            terms[path] = F.reduce(terms.get(path, 0) + coeff)
                    if terms:
                        m[i] = A.normal_form(terms)[px]
                nb[x] = m
            row.append(ModuleMorphism(Iw, Iv, nb))
        blocks.append(row)
    f, _, _ = block_morphism(src, tgt, blocks)
    return f


def tau_translate(M: Representation, direction: str = "tau") -> Representation:
    """Auslander–Reiten translate ``τ = D Tr`` or ``τ⁻¹ = Tr D``."""
    Q = M.Q
    if direction == "tau_inverse":
        Qop = Q.__dict__.get("_opposite")
        if Qop is None:
            Qop = Q.opposite()
            Qop._algebra = None
            Q.__dict__["_opposite"] = Qop
        t = tau_translate(M.dual(Qop), "tau")
        if t.dim == 0:
            return zero_rep(Q)
        return t.dual(Q)
    if direction != "tau":
        raise ValueError(f"unknown direction {direction!r}")
    c0, c1, d = minimal_presentation(M)
    nu = _nakayama_of_presentation(Q, c0, c1, d)
    K, _ = nu.kernel()
    return K


# ---------------------------------------------------------------------------
# Short exact sequences and almost split sequences


@dataclass
class ShortExactSeq:
    left: Representation
    middle: Representation
    right: Representation
    inj: ModuleMorphism
    surj: ModuleMorphism

    def verify(self) -> bool:
        if not (self.inj.is_mono() and self.surj.is_epi() and (self.surj @ self.inj).is_zero()):
            return False
        return self.middle.dim == self.left.dim + self.right.dim


def pushout(f: ModuleMorphism, g: ModuleMorphism):
    """Pushout of ``f: K -> Y`` and ``g: K -> P``: returns ``(E, i_Y, i_P)``."""
    K, Y, P = f.src, f.tgt, g.tgt
    S, incs, projs = direct_sum([Y, P])
    emb = incs[0] @ (-f) + incs[1] @ g
    E, q = emb.cokernel()
    return E, q @ incs[0], q @ incs[1]


def induced_map(q: ModuleMorphism, h: ModuleMorphism, target: Representation) -> ModuleMorphism:
    """The unique ``u`` with ``u ∘ q = h`` for an epimorphism ``q``."""
    F = q.F
    blocks = {}
    for v in q.src.Q.vertices:
        if q.tgt.dims[v] == 0:
            blocks[v] = F.zeros((target.dims[v], 0))
            continue
        sol = la.solve_many(F, q.blocks[v].T, h.blocks[v].T)
        if sol is None:
            raise ArithmeticError("map does not factor through the epimorphism")
        blocks[v] = sol.T
    return ModuleMorphism(q.tgt, target, blocks)


def lift_through_epi(p: ModuleMorphism, f: ModuleMorphism) -> ModuleMorphism | None:
    """Some ``h`` with ``p ∘ h = f`` (``f: X -> tgt(p)``), or ``None``."""
    hs = hom_space(f.src, p.src)
    basis = hs.basis()
    F = p.F
    if not basis:
        return f.src.zero_map(p.src) if f.is_zero() else None
    cols = np.array([(p @ b).vector() for b in basis], dtype=F.dtype).T
    sol = la.solve(F, cols, f.vector())
    if sol is None:
        return None
    vec = F.dot(np.array([b.vector() for b in basis], dtype=F.dtype).T, sol[0])
    return hs.from_vector(vec)


def factor_through_mono(i: ModuleMorphism, f: ModuleMorphism) -> ModuleMorphism | None:
    """Some ``h`` with ``h ∘ i = f`` (``f: src(i) -> Z``), or ``None``."""
    hs = hom_space(i.tgt, f.tgt)
    basis = hs.basis()
    F = i.F
    if not basis:
        return i.tgt.zero_map(f.tgt) if f.is_zero() else None
    cols = np.array([(b @ i).vector() for b in basis], dtype=F.dtype).T
    sol = la.solve(F, cols, f.vector())
    if sol is None:
        return None
    vec = F.dot(np.array([b.vector() for b in basis], dtype=F.dtype).T, sol[0])
    return hs.from_vector(vec)


def image_of_postcomposition(g: ModuleMorphism, Z: Representation) -> Subspace:
    """``g_* Hom(Z, src g)`` as a subspace of ``Hom(Z, tgt g)`` vectors."""
    F = g.F
    hz = hom_space(Z, g.src).basis()
    n = hom_space(Z, g.tgt).ambient
    return Subspace.span(F, n, [(g @ b).vector() for b in hz])


def radical_morphisms(Z: Representation, X: Representation, same: bool) -> list[ModuleMorphism]:
    """A spanning set of ``rad(Z, X)``; ``same`` means ``Z`` and ``X`` are the same indecomposable."""
    hs = hom_space(Z, X)
    if not same:
        return hs.basis()
    rad = end_radical(X)
    return [hs.element(c) for c in rad.basis]


def is_right_almost_split(g: ModuleMorphism, indecomposables: Sequence[Representation]) -> bool:
    X = g.tgt
    if lift_through_epi(g, X.identity()) is not None:
        return False
    for Z in list(indecomposables) + [X]:
        same = Z is X
        if not same and iso(Z, X):
            continue
        img = image_of_postcomposition(g, Z)
        for r in radical_morphisms(Z, X, same):
            if not img.contains(r.vector()):
                return False
    return True


def is_left_almost_split(f: ModuleMorphism, indecomposables: Sequence[Representation]) -> bool:
    X = f.src
    if factor_through_mono(f, X.identity()) is not None:
        return False
    F = f.F
    for Z in list(indecomposables) + [X]:
        same = Z is X
        if not same and iso(Z, X):
            continue
        hz = hom_space(f.tgt, Z).basis()
        n = hom_space(X, Z).ambient
        img = Subspace.span(F, n, [(b @ f).vector() for b in hz])
        rad = radical_morphisms(X, Z, same)
        for r in rad:
            if not img.contains(r.vector()):
                return False
    return True


def almost_split_sequence(
    X: Representation,
    indecomposables: Sequence[Representation] | None = None,
    verify: bool = True,
) -> ShortExactSeq:
    """The almost split sequence ``0 -> τX -> E -> X -> 0``.

    The extension class is a nonzero element of ``Ext¹(X, τX)`` killed by
    ``rad End(X)``.  With ``verify`` the right map is checked to be right
    almost split against ``indecomposables``.
    """
    Q, F = X.Q, X.Q.F
    if is_projective(X):
        raise DomainError("almost split sequences end in non-projective modules")
    if not is_indecomposable(X):
        raise DomainError("almost split sequences end in indecomposable modules")
    Y = tau_translate(X, "tau")
    c0 = projective_cover(X)
    K, kappa = c0.map.kernel()
    hk = hom_space(K, Y)
    # image of Hom(P0, Y) in Hom(K, Y)
    restr = Subspace.span(F, hk.ambient, [(b @ kappa).vector() for b in hom_space(c0.module, Y).basis()])
    ext = la.QuotientSpace(hk.space, restr)
    if ext.dim == 0:
        raise ArithmeticError("Ext^1(X, tau X) vanished; tau computation is inconsistent")
    # action of rad End(X) on Ext: r -> lift to P0 -> restrict to K
    hsX = hom_space(X, X)
    conds = []
    for rc in end_radical(X).basis:
        r = hsX.element(rc)
        rt = lift_through_epi(c0.map, r @ c0.map)
        rk = _restrict_to_kernel(rt, kappa)
        cols = []
        for e in ext.basis():
            eps = hk.from_vector(e)
            cols.append(ext.coords((eps @ rk).vector()))
        conds.append(np.array(cols, dtype=F.dtype).T)
    if conds:
        soc = la.kernel(F, np.vstack(conds))
    else:
        soc = Subspace.full(F, ext.dim)
    if soc.dim == 0:
        raise ArithmeticError("Ext^1(X, tau X) has zero socle")
    eps = hk.from_vector(ext.lift(soc.basis[0]))
    E, iY, iP = pushout(eps, kappa)
    # g: E -> X induced by (0, p0) on Y ⊕ P0
    S, incs, projs = direct_sum([Y, c0.module])
    q = None
    emb = incs[0] @ (-eps) + incs[1] @ kappa
    E2, q = emb.cokernel()
    g = induced_map(q, c0.map @ projs[1], X)
    ses = ShortExactSeq(Y, E2, X, q @ incs[0], g)
    if not ses.verify():
        raise ArithmeticError("pushout did not give a short exact sequence")
    if verify:
        pool = list(indecomposables) if indecomposables is not None else []
        if not is_right_almost_split(g, pool):
            raise ArithmeticError("constructed sequence is not almost split")
    return ses


def _restrict_to_kernel(rt: ModuleMorphism, kappa: ModuleMorphism) -> ModuleMorphism:
    """Restriction of an endomorphism of ``P0`` to the submodule ``K``."""
    F = rt.F
    comp = rt @ kappa
    blocks = {}
    for v in kappa.src.Q.vertices:
        if kappa.src.dims[v] == 0:
            blocks[v] = F.zeros((0, 0))
            continue
        sol = la.solve_many(F, kappa.blocks[v], comp.blocks[v])
        if sol is None:
            raise ArithmeticError("lifted endomorphism does not preserve the kernel")
        blocks[v] = sol
    return ModuleMorphism(kappa.src, kappa.src, blocks)


# ---------------------------------------------------------------------------
# Knitting


@dataclass
class ModuleCategory:
    """A knitted module category: indecomposables, AR arrows and τ."""

    Q: QuiverPresentation
    objects: list  # Representations, labelled
    arrows: dict  # (i, j) -> multiplicity of irreducible maps i -> j
    tau: dict  # index -> index of τ, for non-projectives
    projectives: list  # indices
    injectives: list
    sequences: dict  # index -> ShortExactSeq ending at it

    @property
    def labels(self) -> list[str]:
        return [m.label for m in self.objects]

    def index_of(self, M: Representation) -> int:
        for i, N in enumerate(self.objects):
            if iso(M, N):
                return i
        raise KeyError("module not in the category")

    def by_label(self, label: str) -> Representation:
        for m in self.objects:
            if m.label == label:
                return m
        raise KeyError(f"no indecomposable labelled {label!r}")

    def ar_edges(self) -> list[tuple[str, str, int]]:
        return [(self.objects[i].label, self.objects[j].label, k) for (i, j), k in sorted(self.arrows.items())]

    def to_dot(self) -> str:
        lines = ["digraph AR {"]
        for m in self.objects:
            lines.append(f'  "{m.label}";')
        for (i, j), k in sorted(self.arrows.items()):
            extra = f' [label="{k}"]' if k > 1 else ""
            lines.append(f'  "{self.objects[i].label}" -> "{self.objects[j].label}"{extra};')
        for i, j in sorted(self.tau.items()):
            lines.append(f'  "{self.objects[i].label}" -> "{self.objects[j].label}" [style=dashed];')
        lines.append("}")
        return "\n".join(lines)


def knit_module_category(Q: QuiverPresentation, max_objects: int = 200, verify: bool = True) -> ModuleCategory:
    """Enumerate all indecomposables and the AR-quiver of a representation-finite algebra.

    Starting from the indecomposable injectives and projectives, the set is
    closed under τ, τ⁻¹, middle terms of almost split sequences and the
    summands of radicals of projectives; a step cap guards against infinite type.
    """
    objs: list[Representation] = []

    def find(M):
        for i, N in enumerate(objs):
            if iso(M, N):
                return i
        return None

    def add(M) -> int:
        i = find(M)
        if i is not None:
            return i
        if len(objs) >= max_objects:
            raise PossiblyInfiniteTypeError(f"more than {max_objects} indecomposables found; possibly infinite type")
        objs.append(M)
        return len(objs) - 1

    for v in Q.vertices:
        add(injective(Q, v))
    for v in Q.vertices:
        add(projective(Q, v))
    proj_idx = sorted({find(projective(Q, v)) for v in Q.vertices})
    inj_idx = sorted({find(injective(Q, v)) for v in Q.vertices})
    tau: dict[int, int] = {}
    seq_middle: dict[int, list] = {}
    done = 0
    while done < len(objs):
        i = done
        M = objs[i]
        done += 1
        if i not in inj_idx:
            t = tau_translate(M, "tau_inverse")
            for s, _ in decompose(t):
                j = add(s)
                tau[j] = i
        if i not in proj_idx:
            t = tau_translate(M, "tau")
            for s, _ in decompose(t):
                tau[i] = add(s)
    # second pass: almost split sequences (needs the complete list for verification)
    changed = True
    while changed:
        changed = False
        for i in range(len(objs)):
            if i in proj_idx or i in seq_middle:
                continue
            ses = almost_split_sequence(objs[i], verify=False)
            seq_middle[i] = []
            for s, k in decompose(ses.middle):
                before = len(objs)
                j = add(s)
                seq_middle[i].append((j, k, ses))
                if j >= before:
                    changed = True
            for s, _ in decompose(ses.left):
                before = len(objs)
                add(s)
                changed = changed or len(objs) > before
        for v in Q.vertices:
            rp, _ = projective(Q, v).radical()
            for s, _ in decompose(rp):
                before = len(objs)
                add(s)
                changed = changed or len(objs) > before
            Iv = injective(Q, v)
            iq, _ = quotient_module(Iv, {w: Iv.soc_subspace(w) for w in Q.vertices})
            for s, _ in decompose(iq):
                before = len(objs)
                add(s)
                changed = changed or len(objs) > before
        # new objects need τ data
        for i in range(len(objs)):
            if i not in tau and i not in proj_idx:
                t = tau_translate(objs[i], "tau")
                for s, _ in decompose(t):
                    before = len(objs)
                    tau[i] = add(s)
                    changed = changed or len(objs) > before
    # labels
    seen: dict[str, int] = {}
    for M in objs:
        base = M.default_label()
        seen[base] = seen.get(base, 0) + 1
        M.label = base if seen[base] == 1 else f"{base}#{seen[base]}"
    arrows: dict[tuple[int, int], int] = {}
    sequences = {}
    for i, mids in seq_middle.items():
        for j, k, ses in mids:
            arrows[(j, i)] = arrows.get((j, i), 0) + k
            sequences[i] = ses
    for i in proj_idx:
        rp, _ = objs[i].radical()
        for s, k in decompose(rp):
            j = find(s)
            arrows[(j, i)] = arrows.get((j, i), 0) + k
    cat = ModuleCategory(Q, objs, arrows, tau, proj_idx, inj_idx, sequences)
    if verify:
        for i, ses in sequences.items():
            if not is_right_almost_split(ses.surj, objs):
                raise ArithmeticError(f"sequence ending at {objs[i].label} is not almost split")
    return cat


def irreducible_multiplicities(cat: ModuleCategory) -> dict[tuple[int, int], int]:
    """``dim rad(Z, X) / rad²(Z, X)`` for all pairs, computed from hom spaces alone."""
    objs = cat.objects
    F = cat.Q.F
    n = len(objs)
    rad = {}
    for i in range(n):
        for j in range(n):
            rad[(i, j)] = radical_morphisms(objs[i], objs[j], i == j)
    out = {}
    for i in range(n):
        for j in range(n):
            amb = hom_space(objs[i], objs[j]).ambient
            r1 = Subspace.span(F, amb, [f.vector() for f in rad[(i, j)]])
            if r1.dim == 0:
                continue
            prods = []
            for k in range(n):
                for f in rad[(i, k)]:
                    for g in rad[(k, j)]:
                        prods.append((g @ f).vector())
            r2 = Subspace.span(F, amb, prods)
            d = r1.dim - r2.dim
            if d:
                out[(i, j)] = d
    return out


# ---------------------------------------------------------------------------
# Loading


def load_algebra(source, field=None) -> QuiverPresentation:
    """Load an algebra descriptor from a path, JSON string or dict."""
    if isinstance(source, QuiverPresentation):
        return source
    if isinstance(source, dict):
        return QuiverPresentation.from_json(source, field=field)
    if isinstance(source, (str, FsPath)) and str(source).lstrip().startswith("{"):
        return QuiverPresentation.from_json(json.loads(str(source)), field=field)
    return QuiverPresentation.load(source, field=field)
