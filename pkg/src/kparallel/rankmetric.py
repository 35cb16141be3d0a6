"""Gabidulin MRD codes, lifting to constant-dimension codes, and parallel classes.

A codeword of the [k x l, l(k-d+1), d]_q Gabidulin code is the k x l matrix
whose j-th row holds the F_q-coordinates of f(x^j), where
f(X) = sum_{i<K} f_i X^{q^i} is a linearized polynomial with K = k-d+1
coefficients in F_{q^l} and x^j runs over the polynomial basis of F_{q^l}.

Codewords are indexed by their coefficient tuples.  Grouping by the tail
(f_1, ..., f_{K-1}) gives cosets of the constant-term subcode {f_0 X}, each
of which is a set of q^l matrices with pairwise full-rank differences; these
are the parallel classes of the lifted code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from kparallel.gf import FieldSpec, extension_field, field_of_order
from kparallel.linalg import Matrix, Subspace, rank, subspace_distance

EXHAUSTIVE_LIMIT = 1 << 20
PAIRWISE_LIMIT = 512


class VerificationError(AssertionError):
    """A constructed object failed one of its post-construction checks."""


def mrd_dim_bound(k: int, ell: int, delta: int, q: int | None = None) -> int:
    """Largest dimension of a linear k x l rank-metric code with minimum distance delta."""
    if not 1 <= delta <= min(k, ell):
        raise ValueError(f"delta={delta} outside [1, min(k, l)] = [1, {min(k, ell)}]")
    return min(k * (ell - delta + 1), ell * (k - delta + 1))


@dataclass(frozen=True)
class RankMetricCode:
    field: FieldSpec
    ext: FieldSpec
    k: int
    ell: int
    delta: int

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def n_coeffs(self) -> int:
        return self.k - self.delta + 1

    @property
    def dimension(self) -> int:
        return self.ell * self.n_coeffs

    @property
    def size(self) -> int:
        return self.q**self.dimension

    @property
    def eval_points(self) -> tuple[int, ...]:
        q = self.q
        return tuple(q**j for j in range(self.k))  # encodings of 1, x, ..., x^(k-1)

    def evaluate(self, coeffs, point: int) -> int:
        ext = self.ext
        value = 0
        for i, c in enumerate(coeffs):
            if c:
                value = ext.add(value, ext.mul(c, ext.pow(point, self.q**i)))
        return value

    def matrix(self, coeffs) -> tuple[tuple[int, ...], ...]:
        if len(coeffs) != self.n_coeffs:
            raise ValueError(f"expected {self.n_coeffs} coefficients")
        return tuple(self.ext.to_vector(self.evaluate(coeffs, g)) for g in self.eval_points)

    def coefficient_tuples(self) -> Iterator[tuple[int, ...]]:
        """Coefficient tuples (f_0, ..., f_{K-1}), tail-major so classes are contiguous."""
        for tail in itertools.product(range(self.ext.order), repeat=self.n_coeffs - 1):
            for f0 in range(self.ext.order):
                yield (f0,) + tail

    def codewords(self) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
        for coeffs in self.coefficient_tuples():
            yield coeffs, self.matrix(coeffs)

    def min_rank_distance(self) -> int:
        """Exhaustive minimum rank over nonzero codewords (equal to the distance by linearity)."""
        if self.size > EXHAUSTIVE_LIMIT:
            raise ValueError(f"code size {self.size} too large for exhaustive verification")
        return min(rank(M, self.field, self.ell) for c, M in self.codewords() if any(c))


def gabidulin_build(k: int, ell: int, delta: int, q: int | FieldSpec, verify: bool = True) -> RankMetricCode:
    """The [k x l, l(k-delta+1), delta]_q Gabidulin code, k <= l."""
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    if k > ell:
        raise ValueError("only k <= l is supported (transpose the problem otherwise)")
    if not 1 <= delta <= k:
        raise ValueError(f"delta={delta} outside [1, k={k}]")
    code = RankMetricCode(F, extension_field(F, ell), k, ell, delta)
    if code.dimension != mrd_dim_bound(k, ell, delta):
        raise VerificationError("dimension misses the MRD bound")
    if verify and code.size <= EXHAUSTIVE_LIMIT:
        d = code.min_rank_distance()
        if d != delta:
            raise VerificationError(f"minimum rank distance {d}, expected {delta}")
    return code


def lift(A: Matrix, field: FieldSpec) -> Subspace:
    """Row space of [I_k | A]."""
    k = len(A)
    rows = [tuple(1 if j == i else 0 for j in range(k)) + tuple(A[i]) for i in range(k)]
    ell = len(A[0]) if k else 0
    return Subspace(field, k + ell, rows, _trusted=True)


@dataclass
class LiftedCode:
    source: RankMetricCode
    coeffs: list[tuple[int, ...]]
    codewords: list[Subspace]
    index: dict[Subspace, int] = field(repr=False)

    @property
    def n(self) -> int:
        return self.source.k + self.source.ell

    @property
    def k(self) -> int:
        return self.source.k

    @property
    def parameters(self) -> tuple[int, int, int, int]:
        """(n, M, d, k)_q."""
        return self.n, len(self.codewords), 2 * self.source.delta, self.k

    def min_distance(self) -> int:
        """Exhaustive pairwise minimum subspace distance."""
        words = self.codewords
        return min(subspace_distance(X, Y) for X, Y in itertools.combinations(words, 2))


def lift_code(C: RankMetricCode, verify: bool = True) -> LiftedCode:
    coeffs, words = [], []
    for c, M in C.codewords():
        coeffs.append(c)
        words.append(lift(M, C.field))
    L = LiftedCode(C, coeffs, words, {w: i for i, w in enumerate(words)})
    if len(L.index) != len(words):
        raise VerificationError("lifting is not injective")
    if verify and 1 < len(words) <= PAIRWISE_LIMIT:
        d = L.min_distance()
        if d != 2 * C.delta:
            raise VerificationError(f"minimum subspace distance {d}, expected {2 * C.delta}")
    return L


@dataclass
class ParallelClassPartition:
    code: LiftedCode
    classes: list[list[Subspace]]
    class_of: dict[Subspace, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)


def head_vectors(n: int, k: int, q: int) -> range:
    """Codes of V^(n,k): nonzero vectors whose first k entries are not all zero."""
    return range(q ** (n - k), q**n)


def partition_parallel_classes(L: LiftedCode, verify: bool = True) -> ParallelClassPartition:
    C = L.source
    q, n, k, ell = C.q, L.n, C.k, C.ell
    groups: dict[tuple[int, ...], list[Subspace]] = {}
    for c, w in zip(L.coeffs, L.codewords):
        groups.setdefault(c[1:], []).append(w)
    classes = [groups[t] for t in sorted(groups)]
    class_of = {w: i for i, cls in enumerate(classes) for w in cls}
    part = ParallelClassPartition(L, classes, class_of)
    if len(classes) != q ** (ell * (k - C.delta)) or any(len(c) != q**ell for c in classes):
        raise VerificationError("parallel class counts disagree with q^{l(k-delta)} classes of q^l")
    if verify:
        target = set(head_vectors(n, k, q))
        for i, cls in enumerate(classes):
            seen: set[int] = set()
            for w in cls:
                if seen & w.codes:
                    raise VerificationError(f"class {i}: a vector of V^(n,k) is covered twice")
                seen |= w.codes
            if seen != target:
                raise VerificationError(f"class {i} does not cover V^(n,k) exactly")
    return part
