"""Brute-force verification oracles.

Everything here works from subspace bases alone, using only the primitives in
:mod:`kparallel.linalg`; nothing from the construction modules is consulted.
A failing check always carries a concrete witness.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Sequence

from kparallel.gf import FieldSpec
from kparallel.linalg import (
    Subspace,
    decode,
    enumerate_grassmannian,
    group_of,
    meet_dim,
    normalize,
    tail_meet_dim,
)


@dataclass
class Check:
    name: str
    passed: bool
    counterexample: Any = None
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}  {self.name}  ({self.seconds * 1000:.1f} ms)"
        if not self.passed:
            out += f"  counterexample: {self.counterexample!r}"
        return out


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, counterexample: Any = None, seconds: float = 0.0) -> Check:
        if not passed and counterexample is None:
            raise ValueError(f"failing check {name!r} needs a counterexample")
        check = Check(name, passed, None if passed else counterexample, seconds)
        self.checks.append(check)
        return check

    def merge(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.counterexample, c.seconds))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())


class _timed:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _spread_size(q: int, n: int, k: int) -> int | None:
    if k < 1 or n % k:
        return None
    return (q**n - 1) // (q**k - 1)


def is_spread(members: Sequence[Subspace], n: int, k: int, field: FieldSpec | None = None) -> VerificationReport:
    """Check that ``members`` partition the nonzero vectors of F_q^n into k-subspaces."""
    report = VerificationReport()
    members = list(members)
    if field is None:
        if not members:
            report.add("nonempty", False, "no members and no field given")
            return report
        field = members[0].field
    q = field.order

    with _timed() as t:
        bad = next((Y for Y in members if Y.n != n or Y.dim != k or Y.field != field), None)
    report.add("member-dimensions", bad is None, bad, t.seconds)

    expected = _spread_size(q, n, k)
    report.add("size", len(members) == expected, {"size": len(members), "expected": expected})
    if bad is not None:
        return report

    with _timed() as t:
        witness = None
        for i, j in itertools.combinations(range(len(members)), 2):
            if meet_dim(members[i], members[j]):
                witness = (i, j, members[i], members[j])
                break
    report.add("pairwise-trivial-intersection", witness is None, witness, t.seconds)

    with _timed() as t:
        hits = Counter()
        for Y in members:
            hits.update(Y.codes)
        witness = None
        for code in range(1, q**n):
            c = hits.get(code, 0)
            if c != 1:
                witness = {"vector": decode(code, n, q), "covered": c}
                break
    report.add("exact-cover", witness is None, witness, t.seconds)
    return report


def pairwise_disjoint(spreads: Sequence[Sequence[Subspace]]) -> VerificationReport:
    """No subspace may occur in two different spreads."""
    report = VerificationReport()
    with _timed() as t:
        owner: dict[Subspace, int] = {}
        witness = None
        for i, S in enumerate(spreads):
            for Y in set(S):
                if Y in owner:
                    witness = {"spreads": (owner[Y], i), "subspace": Y}
                    break
                owner[Y] = i
            if witness:
                break
    report.add("pairwise-disjoint", witness is None, witness, t.seconds)
    return report


def _span_combination(field: FieldSpec, coeff_rows, basis) -> list[tuple[int, ...]]:
    out = []
    for coeffs in coeff_rows:
        v = [0] * len(basis[0])
        for c, r in zip(coeffs, basis):
            if c:
                for idx, x in enumerate(r):
                    v[idx] = field.add(v[idx], field.mul(c, x))
        out.append(tuple(v))
    return out


def verify_std(design) -> VerificationReport:
    """The five transversal-design properties plus resolvability, exhaustively.

    ``design`` needs attributes ``field, k, m, t, groups, blocks, classes`` as in
    :class:`kparallel.std_recursive.SubspaceTransversalDesign`.
    """
    F, k, m, t = design.field, design.k, design.m, design.t
    q, n = F.order, design.k + design.m
    report = VerificationReport()
    n_groups = (q**k - 1) // (q - 1)

    # 1 + 2: points are projective points with nonzero head; groups by head point.
    with _timed() as tm:
        points = {normalize(decode(c, n, q), F) for c in range(q ** (n - k), q**n)}
        group_sizes = Counter(group_of(p, k, F) for p in points)
        labels = {tuple(g) for g in design.groups}
    report.add("axiom1-point-count", len(points) == n_groups * q**m, {"points": len(points)}, tm.seconds)
    ok = (
        len(labels) == n_groups == len(design.groups)
        and set(group_sizes) == labels
        and all(v == q**m for v in group_sizes.values())
    )
    report.add("axiom2-groups-partition", ok, {"groups": len(labels), "sizes": sorted(set(group_sizes.values()))})

    # 3: blocks are k-subspaces avoiding U.
    with _timed() as tm:
        bad = next((B for B in design.blocks if B.n != n or B.dim != k or tail_meet_dim(B, k) != 0), None)
    report.add("axiom3-blocks-transversal", bad is None, bad, tm.seconds)
    if bad is not None:
        return report

    # 4: every block meets every group in exactly one point.
    with _timed() as tm:
        witness = None
        for B in design.blocks:
            seen = Counter(group_of(v, k, F) for v in B.vectors()[1:] if normalize(v, F) == v)
            if set(seen) != labels or any(c != 1 for c in seen.values()):
                witness = B
                break
    report.add("axiom4-one-point-per-group", witness is None, witness, tm.seconds)

    # 5: each transversal t-subspace lies in exactly one block.
    with _timed() as tm:
        transversal = {Y for Y in enumerate_grassmannian(n, t, F) if tail_meet_dim(Y, k) == 0}
        coeff_spaces = list(enumerate_grassmannian(k, t, F))
        covered = Counter()
        for B in design.blocks:
            for W in coeff_spaces:
                covered[Subspace(F, n, _span_combination(F, W.rows, B.rows))] += 1
        witness = None
        for Y in sorted(transversal):
            if covered.get(Y, 0) != 1:
                witness = {"subspace": Y, "blocks": covered.get(Y, 0)}
                break
        if witness is None:
            stray = next((Y for Y in covered if Y not in transversal), None)
            if stray is not None:
                witness = {"subspace": stray, "blocks": covered[stray]}
    report.add("axiom5-strength", witness is None, witness, tm.seconds)

    # resolvability
    with _timed() as tm:
        witness = None
        in_classes = Counter(B for cls in design.classes for B in cls)
        if set(in_classes) != set(design.blocks) or any(c != 1 for c in in_classes.values()):
            witness = {"classes-do-not-partition-blocks": True}
        target = set(range(q ** (n - k), q**n))
        for i, cls in enumerate(design.classes):
            if witness:
                break
            hits = Counter()
            for B in cls:
                hits.update(B.codes)
            if set(hits) != target or any(c != 1 for c in hits.values()):
                missing = next((c for c in sorted(target) if hits.get(c, 0) != 1), None)
                witness = {"class": i, "vector": None if missing is None else decode(missing, n, q)}
    report.add("resolvable", witness is None, witness, tm.seconds)
    return report
