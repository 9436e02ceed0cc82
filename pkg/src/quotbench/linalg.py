"""Exact linear algebra over a prime field or the rationals.

Matrices are numpy arrays: ``int64`` reduced mod p for prime fields, ``object``
arrays of :class:`fractions.Fraction` for the rationals.  Subspaces are kept in
reduced row echelon form, so two subspaces are equal exactly when their bases
are equal entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy


class UnsupportedFieldError(ValueError):
    """Raised when a computation is not valid over the configured field."""


class DimensionError(ValueError):
    """Raised on incompatible matrix or subspace dimensions."""


def _is_prime(n: int) -> bool:
    return n >= 2 and sympy.isprime(n)


class PrimeField:
    """The field F_p with elements stored as ``int64`` in ``[0, p)``."""

    kind = "prime"
    dtype = np.int64

    def __init__(self, p: int = 101):
        if not _is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
        if p > 3_000_000:
            # products of two entries must fit in int64 before reduction
            raise ValueError("characteristic too large for int64 arithmetic")
        self.p = int(p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("prime", self.p))

    def spec(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object if isinstance(data, np.ndarray) and data.dtype == object else None)
        if a.dtype == object:
            a = np.vectorize(self.scalar, otypes=[np.int64])(a) if a.size else a.astype(np.int64)
        return np.mod(a.astype(np.int64), self.p)

    def scalar(self, x) -> int:
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.p)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.mod(a @ b, self.p)

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def to_python(self, a) -> list | int:
        return np.asarray(a).tolist()


class RationalField:
    """The field of rational numbers, using ``Fraction`` entries."""

    kind = "rational"
    dtype = object
    p = 0

    def __repr__(self) -> str:
        return "RationalField()"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational")

    def spec(self) -> dict:
        return {"kind": "rational"}

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if a.size == 0:
            return a
        return np.vectorize(Fraction, otypes=[object])(a)

    def scalar(self, x) -> Fraction:
        return Fraction(x)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def zeros(self, shape) -> np.ndarray:
        z = np.empty(shape, dtype=object)
        z.fill(Fraction(0))
        return z

    def eye(self, n: int) -> np.ndarray:
        z = self.zeros((n, n))
        for i in range(n):
            z[i, i] = Fraction(1)
        return z

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return a @ b

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        return self.array(rng.integers(-9, 10, size=shape))

    def to_python(self, a) -> list:
        return np.vectorize(str, otypes=[object])(np.asarray(a)).tolist()


Field = PrimeField | RationalField

DEFAULT_FIELD = PrimeField(101)


def field_from_spec(spec) -> Field:
    """Parse ``101``, ``"F_101"``, ``"rational"`` or ``{"kind": ..., "p": ...}``."""
    if spec is None:
        return DEFAULT_FIELD
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("q", "qq", "rational", "rationals"):
            return RationalField()
        for prefix in ("f_", "gf(", "gf", "prime:", "f"):
            if s.startswith(prefix):
                s = s[len(prefix):].rstrip(")")
                break
        return PrimeField(int(s))
    if isinstance(spec, dict):
        if spec.get("kind") == "rational":
            return RationalField()
        return PrimeField(int(spec["p"]))
    raise ValueError(f"cannot parse field spec {spec!r}")


# ---------------------------------------------------------------------------
# Row reduction


def rref(F: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=F.dtype, copy=True)
    if a.ndim != 2:
        raise DimensionError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = F.reduce(a[r] * F.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            a[others] = F.reduce(a[others] - np.outer(col[others], a[r]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(F: Field, a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(F, a)[1])


def is_zero(a) -> bool:
    a = np.asarray(a)
    return a.size == 0 or not np.any(a != 0)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``F^ambient_dim`` with a canonical RREF basis."""

    F: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    @classmethod
    def span(cls, F: Field, ambient_dim: int, vectors) -> "Subspace":
        if len(vectors) == 0 or ambient_dim == 0:
            return cls(F, ambient_dim, F.zeros((0, ambient_dim)), ())
        vs = np.asarray(vectors, dtype=F.dtype).reshape(-1, ambient_dim)
        if vs.shape[0] == 0:
            return cls(F, ambient_dim, F.zeros((0, ambient_dim)), ())
        b, piv = rref(F, vs)
        return cls(F, ambient_dim, b, tuple(piv))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.zeros((0, n)), ())

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.eye(n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Reduce vectors (rows) modulo this subspace."""
        v = np.array(v, dtype=self.F.dtype, copy=True)
        if self.dim == 0:
            return v
        single = v.ndim == 1
        v2 = v.reshape(-1, self.ambient_dim)
        coeff = v2[:, list(self.pivots)]
        v2 = self.F.reduce(v2 - self.F.dot(coeff, self.basis))
        return v2[0] if single else v2

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return other.dim == 0 or is_zero(self.reduce(other.basis))

    def coords(self, v) -> np.ndarray:
        """Coordinates of vectors lying in this subspace w.r.t. the RREF basis."""
        v = np.asarray(v)
        return v[..., list(self.pivots)]

    def from_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=self.F.dtype)
        if self.dim == 0:
            return self.F.zeros(c.shape[:-1] + (self.ambient_dim,))
        return self.F.dot(c, self.basis)


# ---------------------------------------------------------------------------
# Subspace calculus


def kernel(F: Field, a: np.ndarray) -> Subspace:
    """Null space ``{x : a @ x = 0}``."""
    a = np.asarray(a, dtype=F.dtype)
    if a.ndim != 2:
        raise DimensionError("kernel expects a matrix")
    n = a.shape[1]
    if a.shape[0] == 0:
        return Subspace.full(F, n)
    r, piv = rref(F, a)
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return Subspace.zero(F, n)
    vecs = F.zeros((len(free), n))
    for i, f in enumerate(free):
        vecs[i, f] = 1
        for row, pc in enumerate(piv):
            vecs[i, pc] = F.reduce(-r[row, f])
    return Subspace.span(F, n, vecs)


def image(F: Field, a: np.ndarray) -> Subspace:
    """Column space of ``a``."""
    a = np.asarray(a, dtype=F.dtype)
    if a.ndim != 2:
        raise DimensionError("image expects a matrix")
    return Subspace.span(F, a.shape[0], a.T)


def _check_same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_same_ambient(u, v)
    return Subspace.span(u.F, u.ambient_dim, np.vstack([u.basis, v.basis]))


def annihilator(u: Subspace) -> Subspace:
    return kernel(u.F, u.basis) if u.dim else Subspace.full(u.F, u.ambient_dim)


def intersection(u: Subspace, v: Subspace) -> Subspace:
    _check_same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.F, u.ambient_dim)
    return annihilator(subspace_sum(annihilator(u), annihilator(v)))


def solve(F: Field, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, Subspace] | None:
    """Solve ``a @ x = b``; return ``(x0, kernel)`` or ``None`` if inconsistent."""
    a = np.asarray(a, dtype=F.dtype)
    b = np.asarray(b, dtype=F.dtype).reshape(-1)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise DimensionError(f"cannot solve {a.shape} system with rhs of length {b.shape[0]}")
    n = a.shape[1]
    ker = kernel(F, a)
    aug = np.hstack([a, b.reshape(-1, 1)])
    if aug.shape[0] == 0:
        return F.zeros(n), ker
    r, piv = rref(F, aug)
    if n in piv:
        return None
    x = F.zeros(n)
    for row, pc in enumerate(piv):
        x[pc] = r[row, n]
    return x, ker


def solve_many(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve ``a @ X = B`` column by column; ``None`` if any column is inconsistent."""
    a = np.asarray(a, dtype=F.dtype)
    b = np.asarray(b, dtype=F.dtype)
    n = a.shape[1]
    k = b.shape[1]
    aug = np.hstack([a, b])
    x = F.zeros((n, k))
    if aug.shape[0] == 0:
        return x
    r, piv = rref(F, aug)
    if any(p >= n for p in piv):
        return None
    for row, pc in enumerate(piv):
        x[pc] = r[row, n:]
    return x


def inverse(F: Field, a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=F.dtype)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("inverse of non-square matrix")
    if n == 0:
        return F.zeros((0, 0))
    x = solve_many(F, a, F.eye(n))
    if x is None or rank(F, a) < n:
        raise ZeroDivisionError("matrix is singular")
    return x


def subspace_calculus(op: str, *args, F: Field = DEFAULT_FIELD):
    """Dispatch one of kernel/image/sum/intersection/solve/rank/membership."""
    if op == "kernel":
        return kernel(F, args[0])
    if op == "image":
        return image(F, args[0])
    if op == "sum":
        return subspace_sum(*args)
    if op == "intersection":
        return intersection(*args)
    if op == "solve":
        return solve(F, *args)
    if op == "rank":
        return rank(F, args[0])
    if op == "membership":
        u, v = args
        if len(np.asarray(v).reshape(-1)) != u.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        return u.contains(v)
    raise ValueError(f"unknown subspace operation {op!r}")


class QuotientSpace:
    """Coordinates on ``ambient / sub`` via a canonical complement."""

    def __init__(self, ambient: Subspace, sub: Subspace):
        _check_same_ambient(ambient, sub)
        self.F = ambient.F
        self.ambient = ambient
        self.sub = sub
        reduced = sub.reduce(ambient.basis) if ambient.dim else ambient.basis
        self.complement = Subspace.span(self.F, ambient.ambient_dim, reduced)

    @property
    def dim(self) -> int:
        return self.complement.dim

    def coords(self, v) -> np.ndarray:
        return self.complement.coords(self.sub.reduce(v))

    def lift(self, c) -> np.ndarray:
        return self.complement.from_coords(c)

    def basis(self) -> np.ndarray:
        return self.complement.basis


# ---------------------------------------------------------------------------
# Finite-dimensional algebras given by structure constants
#
# ``mult[i, j, k]`` is the coefficient of e_k in e_i * e_j.


def multiply(F: Field, mult: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = mult.shape[0]
    if n == 0:
        return F.zeros(0)
    t = F.dot(np.asarray(x, dtype=F.dtype).reshape(1, n), mult.reshape(n, n * n)).reshape(n, n)
    return F.dot(np.asarray(y, dtype=F.dtype).reshape(1, n), t).reshape(n)


def left_mult_matrix(F: Field, mult: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix of ``y -> x*y`` acting on column vectors."""
    n = mult.shape[0]
    t = F.dot(np.asarray(x, dtype=F.dtype).reshape(1, n), mult.reshape(n, n * n)).reshape(n, n)
    return t.T.copy()


def algebra_unit(F: Field, mult: np.ndarray) -> np.ndarray:
    n = mult.shape[0]
    if n == 0:
        return F.zeros(0)
    # sum_i u_i mult[i, j, k] = delta_jk and sum_i u_i mult[j, i, k] = delta_jk
    a = np.vstack([mult.reshape(n, n * n).T, mult.transpose(1, 0, 2).reshape(n, n * n).T])
    rhs = np.concatenate([F.eye(n).reshape(-1), F.eye(n).reshape(-1)])
    sol = solve(F, a, rhs)
    if sol is None:
        raise ValueError("algebra has no unit")
    return sol[0]


def _check_radical_field(F: Field, n: int) -> None:
    if isinstance(F, PrimeField) and F.p <= n:
        raise UnsupportedFieldError(
            f"trace-form radical needs p > dim A; got p={F.p}, dim A={n}"
        )


def _trace_form_kernel(F: Field, mult: np.ndarray) -> Subspace:
    n = mult.shape[0]
    traces = np.array([np.trace(mult[k]) for k in range(n)], dtype=F.dtype)  # tr L_{e_k}
    gram = F.reduce(F.dot(mult.reshape(n * n, n), traces.reshape(n, 1)).reshape(n, n))
    return kernel(F, gram.T)


def quotient_algebra(F: Field, mult: np.ndarray, ideal: Subspace) -> tuple[np.ndarray, QuotientSpace]:
    n = mult.shape[0]
    q = QuotientSpace(Subspace.full(F, n), ideal)
    c = q.basis()
    m = q.dim
    out = F.zeros((m, m, m))
    for i in range(m):
        for j in range(m):
            out[i, j] = q.coords(multiply(F, mult, c[i], c[j]))
    return out, q


def _ideal_power_vanishes(F: Field, mult: np.ndarray, r: Subspace) -> bool:
    n = mult.shape[0]
    power = r
    for _ in range(n + 1):
        if power.dim == 0:
            return True
        prods = [multiply(F, mult, a, b) for a in power.basis for b in r.basis]
        power = Subspace.span(F, n, prods)
    return power.dim == 0


def algebra_radical(F: Field, mult: np.ndarray, verify: bool = True) -> Subspace:
    """Jacobson radical of an associative unital algebra given by structure constants.

    Uses the kernel of the trace form ``(x, y) -> tr(L_{xy})``, which is the
    radical when the characteristic is zero or exceeds ``dim A``.
    """
    mult = np.asarray(mult, dtype=F.dtype)
    n = mult.shape[0]
    if n == 0:
        return Subspace.zero(F, 0)
    _check_radical_field(F, n)
    rad = Subspace.zero(F, n)
    while True:
        quo, q = quotient_algebra(F, mult, rad)
        extra = _trace_form_kernel(F, quo)
        if extra.dim == 0:
            break
        rad = subspace_sum(rad, Subspace.span(F, n, q.lift(extra.basis)))
    if verify:
        for a in rad.basis:
            for i in range(n):
                e = F.zeros(n)
                e[i] = 1
                if not (rad.contains(multiply(F, mult, e, a)) and rad.contains(multiply(F, mult, a, e))):
                    raise ArithmeticError("computed radical is not an ideal")
        if not _ideal_power_vanishes(F, mult, rad):
            raise ArithmeticError("computed radical is not nilpotent")
    return rad


def _poly_from_coeffs(F: Field, coeffs: Sequence, t: sympy.Symbol) -> sympy.Poly:
    # coeffs are low-to-high
    if isinstance(F, PrimeField):
        return sympy.Poly([int(c) for c in reversed(coeffs)], t, modulus=F.p)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain=sympy.QQ)


def _poly_coeffs(F: Field, poly: sympy.Poly) -> list:
    cs = list(reversed(poly.all_coeffs()))
    if isinstance(F, PrimeField):
        return [int(c) % F.p for c in cs]
    return [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in cs]


def minimal_polynomial(F: Field, mult: np.ndarray, x: np.ndarray, unit: np.ndarray) -> list:
    """Low-to-high coefficients of the monic minimal polynomial of ``x``."""
    n = mult.shape[0]
    powers = [np.asarray(unit, dtype=F.dtype)]
    while True:
        nxt = multiply(F, mult, powers[-1], x)
        stack = np.array(powers, dtype=F.dtype).T
        sol = solve(F, stack, nxt)
        if sol is not None:
            a = sol[0]
            return [F.reduce(-c) if isinstance(F, PrimeField) else -c for c in a] + [F.scalar(1)]
        powers.append(nxt)
        if len(powers) > n + 1:
            raise ArithmeticError("minimal polynomial degree exceeds dimension")


def _eval_poly(F: Field, mult: np.ndarray, coeffs: Sequence, x: np.ndarray, unit: np.ndarray) -> np.ndarray:
    acc = F.zeros(mult.shape[0])
    for c in reversed(list(coeffs)):
        acc = F.reduce(multiply(F, mult, acc, x) + F.scalar(c) * np.asarray(unit, dtype=F.dtype))
    return acc


def _corner(F: Field, mult: np.ndarray, e: np.ndarray) -> Subspace:
    n = mult.shape[0]
    vecs = []
    for i in range(n):
        b = F.zeros(n)
        b[i] = 1
        vecs.append(multiply(F, mult, multiply(F, mult, e, b), e))
    return Subspace.span(F, n, vecs)


def is_local(F: Field, mult: np.ndarray, radical: Subspace | None = None) -> bool:
    """Split-local test: ``A / rad A`` is one-dimensional."""
    n = mult.shape[0]
    if n == 0:
        return False
    if radical is None:
        radical = algebra_radical(F, mult)
    return n - radical.dim == 1


def fitting_split(
    F: Field,
    mult: np.ndarray,
    radical: Subspace | None = None,
    rng: np.random.Generator | None = None,
    attempts: int = 64,
) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents summing to 1.

    Idempotents come from factoring minimal polynomials of random elements of
    each corner ``eAe`` (CRT in ``k[x]``), so they are exact idempotents of ``A``
    and need no lifting.  A corner is primitive when ``eAe / e rad(A) e`` is
    one-dimensional; corners whose semisimple part never splits are reported as
    a non-split field situation.
    """
    mult = np.asarray(mult, dtype=F.dtype)
    n = mult.shape[0]
    if n == 0:
        return []
    if radical is None:
        radical = algebra_radical(F, mult)
    if rng is None:
        rng = np.random.default_rng(0)
    t = sympy.Symbol("t")
    unit = algebra_unit(F, mult)
    done: list[np.ndarray] = []
    todo = [unit]
    while todo:
        e = todo.pop()
        corner = _corner(F, mult, e)
        top = corner.dim - intersection(corner, radical).dim
        if top == 1:
            done.append(e)
            continue
        if top == 0:
            raise ArithmeticError("zero corner encountered while splitting")
        for _ in range(attempts):
            x = corner.from_coords(F.random(corner.dim, rng))
            m = _poly_from_coeffs(F, minimal_polynomial(F, mult, x, e), t)
            _, factors = m.factor_list()
            if len(factors) < 2:
                continue
            parts = [f ** k for f, k in factors]
            pieces = []
            for q in parts:
                r = sympy.div(m, q)[0]
                u = sympy.invert(r, q)
                pieces.append((u * r).rem(m))
            for poly in pieces:
                todo.append(_eval_poly(F, mult, _poly_coeffs(F, poly), x, e))
            break
        else:
            raise UnsupportedFieldError(
                "semisimple part of a corner algebra does not split over the field "
                f"(dimension {top} over {F!r}); a division ring bigger than k is likely"
            )
    return done
