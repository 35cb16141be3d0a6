"""Subspace transversal designs and the recursive extension of spread families.

U is always the span of the last n - k coordinates.  A k-subspace is
*U-transversal* when it meets U trivially; these are exactly the lifts
{(x, xA)} of k x (n-k) matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from kparallel.constructions import (
    Spread,
    SpreadFamily,
    build_family_q2_2k,
    build_two_spreads_q,
    trivial_family,
    verify_family,
)
from kparallel.gf import FieldSpec, field_of_order
from kparallel.linalg import Subspace, enumerate_grassmannian, tail_meet_dim, tail_subspace
from kparallel.oracle import VerificationReport, verify_std
from kparallel.rankmetric import VerificationError, gabidulin_build, lift_code, partition_parallel_classes


@dataclass(frozen=True)
class PartialGrassmannian:
    """k-subspaces of F_q^{n1} not contained in U (dim U = n2)."""

    field: FieldSpec
    n1: int
    n2: int
    k: int

    def __post_init__(self):
        if not self.n1 > self.n2 >= self.k:
            raise ValueError("need n1 > n2 >= k")

    @property
    def U(self) -> Subspace:
        return tail_subspace(self.field, self.n1, self.n1 - self.n2)

    def members(self):
        head = self.n1 - self.n2
        return (Y for Y in enumerate_grassmannian(self.n1, self.k, self.field) if tail_meet_dim(Y, head) < self.k)

    def transversal_members(self):
        head = self.n1 - self.n2
        return (Y for Y in enumerate_grassmannian(self.n1, self.k, self.field) if tail_meet_dim(Y, head) == 0)


@dataclass
class SubspaceTransversalDesign:
    field: FieldSpec
    t: int
    k: int
    m: int
    groups: list[tuple[int, ...]]
    blocks: list[Subspace]
    classes: list[list[Subspace]] = field(repr=False)

    @property
    def n(self) -> int:
        return self.k + self.m

    @property
    def groupsize(self) -> int:
        return self.field.order**self.m

    def verify(self) -> VerificationReport:
        return verify_std(self)


def build_std(q: int | FieldSpec, k: int, m: int, t: int, verify: bool = True) -> SubspaceTransversalDesign:
    """Resolvable STD_q(t, k, m) from the (k+m, k, k-t+1)_q lifted MRD code."""
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    if k > m:
        raise ValueError("need k <= m")
    if not 1 <= t <= k:
        raise ValueError("need 1 <= t <= k")
    delta = k - t + 1
    part = partition_parallel_classes(lift_code(gabidulin_build(k, m, delta, F)))
    groups = [Y.rows[0] for Y in enumerate_grassmannian(k, 1, F)]
    design = SubspaceTransversalDesign(F, t, k, m, groups, list(part.code.codewords), [list(c) for c in part.classes])
    if verify:
        report = verify_std(design)
        if not report.passed:
            raise VerificationError(f"STD axioms fail:\n{report}")
    return design


def partial_parallelism(q: int | FieldSpec, n1: int, k: int, verify: bool = True) -> list[list[Subspace]]:
    """Parallel classes of all U-transversal k-subspaces of F_q^{n1}, dim U = n1 - k.

    Each class covers every vector of F_q^{n1} outside U exactly once.
    """
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    if n1 < 2 * k:
        raise ValueError("need n1 >= 2k")
    m = n1 - k
    # the lifted code already checks that each class covers V^(n1,k) exactly once
    part = partition_parallel_classes(lift_code(gabidulin_build(k, m, 1, F), verify=False), verify=verify)
    classes = [list(c) for c in part.classes]
    qq = F.order
    if verify:
        if len(classes) != qq ** (m * (k - 1)):
            raise VerificationError(f"{len(classes)} classes, expected q^((n1-k)(k-1))")
        blocks = {Y for c in classes for Y in c}
        if len(blocks) != qq ** (k * m) or any(tail_meet_dim(Y, k) for Y in blocks):
            raise VerificationError("classes do not partition the U-transversal k-subspaces")
    return classes


def embed_tail(Y: Subspace, n: int) -> Subspace:
    """Place a subspace of F_q^{n'} into the last n' coordinates of F_q^n."""
    pad = (0,) * (n - Y.n)
    return Subspace(Y.field, n, [pad + r for r in Y.rows], _trusted=True)


def recursive_extend(family: SpreadFamily, q: int, n: int, k: int, verify: bool = True) -> SpreadFamily:
    """M disjoint spreads of F_q^{n-k} -> M disjoint spreads of F_q^n."""
    if n % k or n < 2 * k:
        raise ValueError("need k | n and n >= 2k")
    if family.n != n - k or family.k != k:
        raise ValueError(f"input spreads must live in G_q({n - k},{k})")
    F = family.field
    classes = partial_parallelism(F, n, k, verify=verify)
    if len(family) > len(classes):
        raise ValueError(f"{len(family)} spreads but only {len(classes)} transversal classes")
    spreads = []
    for i, S in enumerate(family.spreads):
        members = list(classes[i]) + [embed_tail(Y, n) for Y in S.members]
        spreads.append(Spread(F, n, k, members, f"class {i} + embedded [{S.provenance}]"))
    meta = dict(family.meta)
    meta["recursion_steps"] = meta.get("recursion_steps", 0) + 1
    out = SpreadFamily(spreads, meta=meta)
    return verify_family(out) if verify else out


def guaranteed_size(q: int, n: int, k: int) -> int:
    """Family size delivered by :func:`build_family`."""
    if k == 1 or n == k:
        return 1
    return 2**k - 1 if q == 2 else 2


def build_family(q: int, n: int, k: int, verify: bool = True) -> SpreadFamily:
    """Pairwise disjoint spreads in G_q(n, k) for k | n."""
    F = field_of_order(q)
    if k < 1 or n < k or n % k:
        raise ValueError(f"need k >= 1 and k | n (n={n}, k={k})")
    if k == 1 or n == k:
        fam = trivial_family(q, n, k)
    else:
        fam = build_family_q2_2k(k) if q == 2 else build_two_spreads_q(q, k)
        for cur in range(3 * k, n + 1, k):
            fam = recursive_extend(fam, F.order, cur, k, verify=verify)
    fam.meta.setdefault("construction", "trivial")
    fam.meta.update({"q": q, "n": n, "k": k, "pg_n": n - 1, "pg_k": k - 1})
    return fam


def pg_admissible(pg_n: int, pg_k: int) -> bool:
    """(k+1) | (n+1) and n > k, in projective indices."""
    return pg_n > pg_k >= 0 and (pg_n + 1) % (pg_k + 1) == 0


def spread_size(q: int, n: int, k: int) -> int:
    return (q**n - 1) // (q**k - 1)


def partial_class_count(q: int, n1: int, k: int) -> int:
    return q ** ((n1 - k) * (k - 1))
