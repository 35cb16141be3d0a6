"""Disjoint spreads in G_q(2k, k).

Vectors of F_q^{2k} are pairs (x, y) of k-tuples; the second half is
identified with F_{q^k} through the polynomial basis.  U = V_0 is the span of
the last k coordinates.

For q = 2 the family has 2^k - 1 members: a base spread S_0 obtained by
shearing a reversed lifted-MRD spread, and its images under
(x, y) -> (x, alpha^i y).  For q > 2 two disjoint spreads are produced from
two parallel classes of the same lifted MRD code.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from kparallel.gf import FieldSpec, extension_field, field_new, field_of_order
from kparallel.linalg import (
    Subspace,
    enumerate_grassmannian,
    head_subspace,
    rank,
    scale_subspace,
    split,
    tail_meet_dim,
    tail_subspace,
    vec_add,
)
from kparallel.oracle import is_spread, pairwise_disjoint
from kparallel.rankmetric import (
    VerificationError,
    gabidulin_build,
    lift,
    lift_code,
    partition_parallel_classes,
)

log = logging.getLogger(__name__)


class SubspaceType(Enum):
    A = "TypeA"
    B = "TypeB"
    C = "TypeC"
    OTHER = "Other"


def classify_type(Y: Subspace, k: int) -> SubspaceType:
    """Type relative to U, the span of the last n - k coordinates."""
    d = tail_meet_dim(Y, k)
    if Y.dim and d == Y.dim:
        return SubspaceType.C
    if d == 0:
        return SubspaceType.A
    if d == 1:
        return SubspaceType.B
    return SubspaceType.OTHER


def type_census(members, k: int) -> dict[SubspaceType, int]:
    counts = Counter(classify_type(Y, k) for Y in members)
    return {t: counts.get(t, 0) for t in SubspaceType}


def count_types(q: int, k: int) -> tuple[int, int, int, int]:
    """(|A|, |B|, |C|, |Other|) over all of G_q(2k, k)."""
    F = field_of_order(q)
    c = type_census(enumerate_grassmannian(2 * k, k, F), k)
    return c[SubspaceType.A], c[SubspaceType.B], c[SubspaceType.C], c[SubspaceType.OTHER]


@dataclass
class Spread:
    field: FieldSpec
    n: int
    k: int
    members: tuple[Subspace, ...]
    provenance: str = ""

    def __post_init__(self):
        self.members = tuple(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def census(self) -> dict[SubspaceType, int]:
        return type_census(self.members, self.k)


@dataclass
class SpreadFamily:
    spreads: list[Spread]
    verified: bool = False
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.spreads)

    def __iter__(self):
        return iter(self.spreads)

    @property
    def field(self) -> FieldSpec:
        return self.spreads[0].field

    @property
    def n(self) -> int:
        return self.spreads[0].n

    @property
    def k(self) -> int:
        return self.spreads[0].k


def require_spread(members, n: int, k: int, field: FieldSpec, what: str) -> None:
    report = is_spread(members, n, k, field)
    if not report.passed:
        raise VerificationError(f"{what} is not a spread:\n{report}")


def verify_family(family: SpreadFamily) -> SpreadFamily:
    for i, S in enumerate(family.spreads):
        require_spread(S.members, S.n, S.k, S.field, f"spread {i} ({S.provenance})")
    report = pairwise_disjoint([S.members for S in family.spreads])
    if not report.passed:
        raise VerificationError(f"spreads are not pairwise disjoint:\n{report}")
    family.verified = True
    return family


# -- halves ------------------------------------------------------------------


def reverse_code(S, k: int) -> list[Subspace]:
    """Swap the two k-halves of every vector."""
    out = []
    for Y in S:
        if Y.n != 2 * k:
            raise ValueError("reverse_code needs ambient dimension 2k")
        out.append(Subspace(Y.field, Y.n, [r[k:] + r[:k] for r in Y.rows]))
    return out


def head_meet_dim(Y: Subspace, k: int) -> int:
    """dim(Y ∩ {(x, 0)})."""
    return Y.dim - rank([r[k:] for r in Y.rows], Y.field, Y.n - k)


def first_half(Y: Subspace, k: int) -> Subspace:
    """Projection onto the first k coordinates."""
    return Subspace(Y.field, k, [r[:k] for r in Y.rows])


def is_diagonal(Y: Subspace, k: int, ext: FieldSpec) -> int | None:
    """Return j when Y = {(x, alpha^j x)}, else None."""
    if tail_meet_dim(Y, k) != 0 or Y.dim != k:
        return None
    ratio = None
    for v in Y.vectors()[1:]:
        x, y = split(v, k)
        X, Yv = ext.from_vector(x), ext.from_vector(y)
        if Yv == 0:
            return None
        r = ext.div(Yv, X)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ext.log(ratio)


# -- checks on S_0 -------------------------------------------------------------


def type_b_structure_violation(Y: Subspace, k: int):
    """Witness against the Type B law, or None.

    A Type B member contains one projective point <z> of U, and for every x in
    its first-half projection the second halves of the vectors over x form a
    coset of <z>.  Over F_2 this is: two vectors (x, y), (x, y') with y + y' = z.
    """
    F, q = Y.field, Y.q
    vecs = Y.vectors()[1:]
    in_u = [v for v in vecs if not any(v[:k])]
    if len(in_u) != q - 1:
        return {"member": Y, "vectors-in-U": len(in_u)}
    z = in_u[0][k:]
    line = {tuple(F.mul(c, a) for a in z) for c in range(q)}
    fibres: dict[tuple, list[tuple]] = {}
    for v in vecs:
        x, y = split(v, k)
        if any(x):
            fibres.setdefault(x, []).append(y)
    for x, ys in fibres.items():
        if len(ys) != q:
            return {"member": Y, "x": x, "fibre": ys}
        y0 = ys[0]
        diffs = {vec_add(F, y, tuple(F.neg(a) for a in y0)) for y in ys}
        if diffs != line:
            return {"member": Y, "x": x, "fibre": ys, "z": z}
    return None


def hyperplane_collision(members, k: int):
    """Two Type B members with the same first-half (k-1)-space, or a bad projection."""
    seen: dict[Subspace, Subspace] = {}
    for Y in members:
        if classify_type(Y, k) is not SubspaceType.B:
            continue
        H = first_half(Y, k)
        if H.dim != k - 1:
            return {"member": Y, "projection-dim": H.dim}
        if H in seen:
            return {"members": (seen[H], Y), "hyperplane": H}
        seen[H] = Y
    return None


def s0_violations(S0: Spread, ext: FieldSpec) -> list[str]:
    """Census, axis/diagonal and hyperplane conditions on the base spread."""
    k = S0.k
    problems = []
    census = S0.census()
    if census[SubspaceType.B] != 2**k - 1 or census[SubspaceType.A] != 2:
        problems.append(f"census {census}")
    axis = head_subspace(S0.field, S0.n, k)
    if axis in S0.members:
        problems.append("contains the axis {(x, 0)}")
    diagonals = [Y for Y in S0.members if is_diagonal(Y, k, ext) is not None]
    if len(diagonals) > 1:
        problems.append(f"{len(diagonals)} diagonal members")
    clash = hyperplane_collision(S0.members, k)
    if clash:
        problems.append(f"first-half hyperplanes collide: {clash}")
    for Y in S0.members:
        if classify_type(Y, k) is SubspaceType.B:
            bad = type_b_structure_violation(Y, k)
            if bad:
                problems.append(f"Type B law fails: {bad}")
                break
    return problems


# -- q = 2 -------------------------------------------------------------------


@dataclass(frozen=True)
class Case:
    number: int
    witness: int | None = None


def _base_code(F: FieldSpec, k: int) -> tuple[list[Subspace], int, int]:
    """First parallel class of the (2k, k, k-1) lifted MRD code that avoids lift(0)
    and, together with V_0, forms a spread in which every member other than V_0
    meets {(x, 0)} in at most one point.  Returns (code, class index, #classes)."""
    part = partition_parallel_classes(lift_code(gabidulin_build(k, k, k - 1, F)))
    zero = lift([[0] * k for _ in range(k)], F)
    V0 = tail_subspace(F, 2 * k, k)
    for idx, cls in enumerate(part.classes):
        if zero in cls:
            continue
        cand = list(cls) + [V0]
        if not is_spread(cand, 2 * k, k, F).passed:
            log.warning("class %d plus V_0 is not a spread; trying the next class", idx)
            continue
        if any(head_meet_dim(Y, k) > 1 for Y in cls):
            log.warning("class %d has a member meeting the axis in more than a point", idx)
            continue
        return cand, idx, len(part.classes)
    raise VerificationError("no parallel class yields the base code")


def build_base_code_q2(k: int) -> list[Subspace]:
    """A (2k, 2^k + 1, 2k, k)_2 spread containing V_0."""
    if k < 2:
        raise ValueError("the base code needs k >= 2")
    return _base_code(field_new(2), k)[0]


def detect_case(revC, k: int, ext: FieldSpec) -> Case:
    for Y in revC:
        j = is_diagonal(Y, k, ext)
        if j is not None:
            return Case(2, j)
    return Case(1)


def shear(case: Case, k: int, ext: FieldSpec):
    """(x, y) -> (x, y + x) in Case 1 and (x, y + x^2) in Case 2."""
    F = ext.base

    def sigma(v):
        x, y = split(v, k)
        X = ext.from_vector(x)
        add = X if case.number == 1 else ext.frobenius(X, 1)
        return x + vec_add(F, y, ext.to_vector(add))

    return sigma


def image_subspace(Y: Subspace, f) -> Subspace:
    """Image of every vector of Y under f, asserted to be a subspace of the same dimension."""
    images = {f(v) for v in Y.vectors()}
    Z = Subspace(Y.field, Y.n, list(images))
    if Z.dim != Y.dim or set(Z.vectors()) != images:
        raise VerificationError(f"image of {Y} is not a {Y.dim}-dimensional subspace")
    return Z


def build_s0(revC, case: Case, k: int, ext: FieldSpec) -> Spread:
    F = ext.base
    sigma = shear(case, k, ext)
    members = [image_subspace(Y, sigma) for Y in revC]
    S0 = Spread(F, 2 * k, k, members, f"S_0 (case {case.number})")
    require_spread(S0.members, S0.n, k, F, "S_0")
    problems = s0_violations(S0, ext)
    if problems:
        raise VerificationError("S_0 checks failed: " + "; ".join(problems))
    return S0


def scale_spread(S: Spread, i: int, ext: FieldSpec) -> Spread:
    """S_i: multiply the second half of every vector by alpha^i (i = 0 is the identity)."""
    if not 0 <= i <= ext.order - 2:
        raise ValueError(f"i={i} outside [0, {ext.order - 2}]")
    beta = ext.exp(i)
    members = [scale_subspace(Y, beta, ext, half=1) for Y in S.members]
    return Spread(S.field, S.n, S.k, members, f"S_{i}")


def trivial_family(q: int, n: int, k: int) -> SpreadFamily:
    """The unique spread when k = 1 (all points) or n = k (the whole space)."""
    F = field_of_order(q)
    members = list(enumerate_grassmannian(n, k, F))
    fam = SpreadFamily([Spread(F, n, k, members, "trivial")], meta={"construction": "trivial"})
    return verify_family(fam)


def build_family_q2_2k(k: int) -> SpreadFamily:
    """2^k - 1 pairwise disjoint spreads in G_2(2k, k)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return trivial_family(2, 2, 1)
    F = field_new(2)
    ext = extension_field(F, k)
    C, class_index, _ = _base_code(F, k)
    revC = reverse_code(C, k)
    require_spread(revC, 2 * k, k, F, "reversed base code")
    census = type_census(revC, k)
    if census[SubspaceType.B] != 2**k - 1 or census[SubspaceType.A] != 2:
        raise VerificationError(f"reversed base code census {census}")
    case = detect_case(revC, k, ext)
    S0 = build_s0(revC, case, k, ext)
    spreads = [S0] + [scale_spread(S0, i, ext) for i in range(1, 2**k - 1)]
    base_census = S0.census()
    for S in spreads[1:]:
        if S.census() != base_census:
            raise VerificationError(f"{S.provenance} census differs from S_0")
    meta = {
        "construction": "q2-n2k",
        "case": case.number,
        "witness": case.witness,
        "base_class": class_index,
    }
    return verify_family(SpreadFamily(spreads, meta=meta))


# -- q > 2 -------------------------------------------------------------------


def build_two_spreads_q(q: int, k: int) -> SpreadFamily:
    """Two disjoint spreads in G_q(2k, k) for q > 2."""
    if q <= 2:
        raise ValueError("this construction is for q > 2")
    if k < 2:
        raise ValueError("need k >= 2")
    F = field_of_order(q)
    n = 2 * k
    part = partition_parallel_classes(lift_code(gabidulin_build(k, k, k - 1, F)))
    zero = lift([[0] * k for _ in range(k)], F)
    V0 = tail_subspace(F, n, k)
    n_points = (q**k - 1) // (q - 1)

    first = None
    for idx, cls in enumerate(part.classes):
        if zero in cls:
            continue
        if sum(1 for Y in cls if head_meet_dim(Y, k) == 1) != n_points:
            continue
        if any(head_meet_dim(Y, k) > 1 for Y in cls):
            continue
        first = idx
        break
    if first is None:
        raise VerificationError("no parallel class has the required subcode shape")
    revC = reverse_code(list(part.classes[first]) + [V0], k)
    require_spread(revC, n, k, F, "reversed code")
    census = type_census(revC, k)
    if census[SubspaceType.B] != n_points or census[SubspaceType.A] != q**k + 1 - n_points:
        raise VerificationError(f"reversed code census {census}")

    type_a = {Y for Y in revC if classify_type(Y, k) is SubspaceType.A}
    second = next((j for j, cls in enumerate(part.classes) if not type_a.intersection(cls)), None)
    if second is None:
        raise VerificationError("every parallel class meets the Type A part of the reversed code")
    other = list(part.classes[second]) + [V0]
    census2 = type_census(other, k)
    if census2[SubspaceType.A] != q**k or census2[SubspaceType.C] != 1:
        raise VerificationError(f"second spread census {census2}")
    spreads = [
        Spread(F, n, k, revC, f"reversed class {first} + V_0"),
        Spread(F, n, k, other, f"class {second} + V_0"),
    ]
    meta = {"construction": "q-n2k", "base_class": first, "second_class": second}
    return verify_family(SpreadFamily(spreads, meta=meta))
