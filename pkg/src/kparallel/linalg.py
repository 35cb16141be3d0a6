"""Vectors and canonical subspaces over a finite field F_q.

Vectors are tuples of integer-encoded field elements and matrices are
sequences of such rows.  A :class:`Subspace` is stored by its reduced row
echelon basis, so equality and hashing are structural.  Over F_2 the
elimination runs on bit-packed integer rows.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterator, Sequence

from kparallel.gf import FieldSpec

Vector = tuple[int, ...]
Matrix = Sequence[Sequence[int]]

GRASSMANNIAN_LIMIT = 2_000_000


class _ZeroGroup:
    def __repr__(self) -> str:
        return "ZERO_GROUP"


ZERO_GROUP = _ZeroGroup()


# -- encodings ---------------------------------------------------------------


def encode(v: Sequence[int], q: int) -> int:
    """Integer code of a vector; integer order agrees with lexicographic order."""
    code = 0
    for c in v:
        code = code * q + c
    return code


def decode(code: int, n: int, q: int) -> Vector:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return tuple(out)


# -- elimination -------------------------------------------------------------


def _rref_binary(rows: Matrix, ncols: int) -> list[Vector]:
    work = [encode(r, 2) for r in rows]
    work = [w for w in work if w]
    top = 0
    for col in range(ncols):
        bit = 1 << (ncols - 1 - col)
        pivot = next((i for i in range(top, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= work[top]
        top += 1
        if top == len(work):
            break
    return [decode(w, ncols, 2) for w in work[:top]]


def _rref_general(F: FieldSpec, rows: Matrix, ncols: int) -> list[Vector]:
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    work = [list(r) for r in rows if any(r)]
    top = 0
    for col in range(ncols):
        pivot = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        lead = work[top][col]
        if lead != 1:
            s = inv(lead)
            work[top] = [mul(s, x) for x in work[top]]
        prow = work[top]
        for i in range(len(work)):
            c = work[i][col]
            if i != top and c:
                f = neg(c)
                work[i] = [add(a, mul(f, b)) for a, b in zip(work[i], prow)]
        top += 1
        if top == len(work):
            break
    return [tuple(r) for r in work[:top]]


def _reduced_rows(F: FieldSpec, rows: Matrix, ncols: int) -> list[Vector]:
    if F.order == 2:
        return _rref_binary(rows, ncols)
    return _rref_general(F, rows, ncols)


def rref(M: Matrix, F: FieldSpec, ncols: int | None = None) -> tuple[tuple[Vector, ...], int]:
    """Reduced row echelon form of ``M`` (same shape, zero rows last) and its rank."""
    if ncols is None:
        ncols = len(M[0]) if len(M) else 0
    reduced = _reduced_rows(F, M, ncols)
    r = len(reduced)
    zero = (0,) * ncols
    return tuple(reduced) + (zero,) * (len(M) - r), r


def rank(M: Matrix, F: FieldSpec, ncols: int | None = None) -> int:
    if not len(M):
        return 0
    if ncols is None:
        ncols = len(M[0])
    return len(_reduced_rows(F, M, ncols))


def vec_add(F: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Vector:
    if F.p == 2:
        return tuple(a ^ b for a, b in zip(u, v))
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_scale(F: FieldSpec, c: int, v: Sequence[int]) -> Vector:
    return tuple(F.mul(c, x) for x in v)


def is_rref(M: Matrix, F: FieldSpec, ncols: int) -> bool:
    """True when ``M`` has full row rank and is already in reduced row echelon form."""
    rows = [tuple(r) for r in M]
    return [tuple(r) for r in _reduced_rows(F, rows, ncols)] == rows


# -- subspaces ---------------------------------------------------------------


class Subspace:
    """A subspace of F_q^n held by its canonical RREF basis."""

    __slots__ = ("field", "n", "rows", "__dict__")

    def __init__(self, field: FieldSpec, n: int, rows: Sequence[Vector], *, _trusted: bool = False):
        rows = tuple(tuple(r) for r in rows)
        if not _trusted:
            if any(len(r) != n for r in rows):
                raise ValueError("generator length does not match the ambient dimension")
            rows = tuple(_reduced_rows(field, rows, n))
        self.field = field
        self.n = n
        self.rows = rows

    @classmethod
    def from_generators(cls, field: FieldSpec, n: int, vectors) -> Subspace:
        return cls(field, n, list(vectors))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> Subspace:
        return cls(field, n, (), _trusted=True)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def q(self) -> int:
        return self.field.order

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(r) if c) for r in self.rows)

    def vectors(self) -> list[Vector]:
        """All q^dim vectors, zero first."""
        return [decode(c, self.n, self.q) for c in self._all_codes]

    @cached_property
    def _all_codes(self) -> tuple[int, ...]:
        q, n = self.q, self.n
        if q == 2:
            codes = [0]
            for r in self.rows:
                rc = encode(r, 2)
                codes += [c ^ rc for c in codes]
            return tuple(codes)
        out = []
        for coeffs in itertools.product(range(q), repeat=self.dim):
            v = (0,) * n
            for c, r in zip(coeffs, self.rows):
                if c:
                    v = vec_add(self.field, v, vec_scale(self.field, c, r))
            out.append(encode(v, q))
        return tuple(out)

    @cached_property
    def codes(self) -> frozenset[int]:
        """Integer codes of the nonzero vectors."""
        return frozenset(c for c in self._all_codes if c)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __lt__(self, other: Subspace) -> bool:
        return (self.n, self.dim, self.rows) < (other.n, other.dim, other.rows)

    def __repr__(self) -> str:
        body = ",".join("".join(_digit(c) for c in r) for r in self.rows)
        return f"Subspace(n={self.n}, q={self.q}, [{body}])"

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _digit(c: int) -> str:
    return str(c) if c < 10 else f"<{c}>"


def subspace_from_generators(vs, field: FieldSpec, n: int | None = None) -> Subspace:
    vs = [tuple(v) for v in vs]
    if n is None:
        if not vs:
            raise ValueError("need at least one generator or an explicit ambient dimension")
        n = len(vs[0])
    return Subspace(field, n, vs)


def _check_ambient(X: Subspace, Y: Subspace) -> None:
    if X.n != Y.n or X.field != Y.field:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(X: Subspace, Y: Subspace) -> Subspace:
    _check_ambient(X, Y)
    return Subspace(X.field, X.n, X.rows + Y.rows)


def intersect(X: Subspace, Y: Subspace) -> Subspace:
    """Zassenhaus: reduce [[X, X], [Y, 0]]; rows with a vanishing left half span X ∩ Y."""
    _check_ambient(X, Y)
    n = X.n
    zero = (0,) * n
    block = [r + r for r in X.rows] + [r + zero for r in Y.rows]
    reduced = _reduced_rows(X.field, block, 2 * n)
    meet = [r[n:] for r in reduced if not any(r[:n])]
    return Subspace(X.field, n, meet)


def meet_dim(X: Subspace, Y: Subspace) -> int:
    _check_ambient(X, Y)
    return X.dim + Y.dim - rank(X.rows + Y.rows, X.field, X.n)


def contains(X: Subspace, v: Sequence[int]) -> bool:
    v = tuple(v)
    if len(v) != X.n:
        raise ValueError("vector length does not match the ambient dimension")
    if not any(v):
        return True
    F = X.field
    for row, p in zip(X.rows, X.pivots):
        c = v[p]
        if c:
            v = vec_add(F, v, vec_scale(F, F.neg(c), row))
    return not any(v)


def contains_subspace(X: Subspace, Y: Subspace) -> bool:
    return all(contains(X, r) for r in Y.rows)


def subspace_distance(X: Subspace, Y: Subspace) -> int:
    """dim X + dim Y - 2 dim(X ∩ Y)."""
    return X.dim + Y.dim - 2 * meet_dim(X, Y)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def enumerate_grassmannian(n: int, k: int, field: FieldSpec, limit: int = GRASSMANNIAN_LIMIT) -> Iterator[Subspace]:
    """Every k-subspace of F_q^n exactly once, ordered by pivot set then free entries."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    q = field.order
    total = gaussian_binomial(n, k, q)
    if total > limit:
        raise ValueError(f"|G_{q}({n},{k})| = {total} exceeds the enumeration limit {limit}")
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), val in zip(free, values):
                rows[i][c] = val
            yield Subspace(field, n, rows, _trusted=True)


# -- coordinate blocks -------------------------------------------------------


def split(v: Sequence[int], k: int) -> tuple[Vector, Vector]:
    v = tuple(v)
    if k > len(v):
        raise ValueError("split point beyond the vector length")
    return v[:k], v[k:]


def concat(x: Sequence[int], y: Sequence[int]) -> Vector:
    return tuple(x) + tuple(y)


def normalize(v: Sequence[int], field: FieldSpec) -> Vector:
    """Scale so the first nonzero coordinate is 1 (projective representative)."""
    v = tuple(v)
    lead = next((c for c in v if c), 0)
    if lead in (0, 1):
        return v
    return vec_scale(field, field.inv(lead), v)


def group_of(v: Sequence[int], k: int, field: FieldSpec):
    """Projective point of the first k coordinates, or ``ZERO_GROUP``."""
    head, _ = split(v, k)
    if not any(head):
        return ZERO_GROUP
    return normalize(head, field)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def tail_subspace(field: FieldSpec, n: int, k: int) -> Subspace:
    """U = V_0: span of the last n-k coordinates."""
    return Subspace(field, n, [unit_vector(n, i) for i in range(k, n)], _trusted=True)


def head_subspace(field: FieldSpec, n: int, k: int) -> Subspace:
    """Span of the first k coordinates, {(x, 0)}."""
    return Subspace(field, n, [unit_vector(n, i) for i in range(k)], _trusted=True)


def tail_meet_dim(Y: Subspace, k: int) -> int:
    """dim(Y ∩ U) for U the span of the last n-k coordinates."""
    return Y.dim - rank([r[:k] for r in Y.rows], Y.field, k)


def map_subspace(Y: Subspace, f) -> Subspace:
    """Image of ``Y`` under an F_q-linear vector map ``f`` (applied to the basis)."""
    return Subspace(Y.field, Y.n, [f(r) for r in Y.rows])


def scale_subspace(Y: Subspace, beta: int, ext: FieldSpec, half: int = 1) -> Subspace:
    """Multiply the coordinate block ``half`` (length m = [ext : F_q]) of every vector by beta."""
    if ext.base != Y.field:
        raise ValueError("extension field is not built over the subspace's field")
    if beta == 0:
        raise ValueError("scaling by zero does not preserve dimension")
    m = ext.degree
    lo, hi = half * m, (half + 1) * m
    if hi > Y.n:
        raise ValueError("coordinate block exceeds the ambient dimension")

    def f(v):
        block = ext.to_vector(ext.mul(beta, ext.from_vector(v[lo:hi])))
        return v[:lo] + block + v[hi:]

    return map_subspace(Y, f)
