"""End-to-end acceptance checks, each with its time limit."""

from __future__ import annotations

import itertools
import re
import time

import pytest

from kparallel.certificate import check_certificate, load_certificate
from kparallel.cli import EXIT_OK, main
from kparallel.constructions import (
    SubspaceType,
    build_two_spreads_q,
    classify_type,
    hyperplane_collision,
    is_diagonal,
    type_b_structure_violation,
    type_census,
)
from kparallel.gf import extension_field, field_new
from kparallel.linalg import head_subspace, subspace_distance
from kparallel.oracle import is_spread, pairwise_disjoint
from kparallel.rankmetric import gabidulin_build, head_vectors, lift, lift_code, partition_parallel_classes
from kparallel.search import exhaustive_max_family
from kparallel.std_recursive import build_family, build_std, partial_parallelism

criterion = pytest.mark.criterion


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def oracle_pass(fam) -> bool:
    spreads = [S.members for S in fam.spreads]
    ok = all(is_spread(S, fam.n, fam.k, fam.field).passed for S in spreads)
    return ok and pairwise_disjoint(spreads).passed


@criterion(1, "three disjoint spreads of size 5 in G_2(4,2) from the CLI, under 1 s")
def test_criterion_01(tmp_path, capsys):
    with Clock() as clock:
        code = main(["construct", "--q", "2", "--k", "2", "--n", "4"])
        fam = build_family(2, 4, 2)
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "3 pairwise disjoint spreads of size 5" in out
    assert len(fam) == 3 and all(len(S) == 5 for S in fam.spreads) and oracle_pass(fam)
    assert clock.seconds < 1.0


@criterion(2, "seven disjoint spreads of size 9 in G_2(6,3) with base-spread structure, under 10 s")
def test_criterion_02():
    k = 3
    with Clock() as clock:
        fam = build_family(2, 6, k)
        ext = extension_field(field_new(2), k)
        assert len(fam) == 7 and all(len(S) == 9 for S in fam.spreads)
        assert oracle_pass(fam)
        for S in fam.spreads:
            census = type_census(S.members, k)
            assert census[SubspaceType.B] == 7 and census[SubspaceType.A] == 2
            for Y in S.members:
                if classify_type(Y, k) is SubspaceType.B:
                    assert type_b_structure_violation(Y, k) is None
        S0 = fam.spreads[0].members
        assert head_subspace(fam.field, 6, k) not in S0
        assert sum(is_diagonal(Y, k, ext) is not None for Y in S0) <= 1
        assert hyperplane_collision(S0, k) is None
    assert clock.seconds < 10.0


@criterion(3, "two disjoint spreads of size 10 in G_3(4,2) with the expected type census, under 5 s")
def test_criterion_03():
    with Clock() as clock:
        fam = build_two_spreads_q(3, 2)
        first, second = (type_census(S.members, 2) for S in fam.spreads)
        ok = oracle_pass(fam)
    assert len(fam) == 2 and all(len(S) == 10 for S in fam.spreads) and ok
    assert first == {SubspaceType.A: 6, SubspaceType.B: 4, SubspaceType.C: 0, SubspaceType.OTHER: 0}
    assert second == {SubspaceType.A: 9, SubspaceType.B: 0, SubspaceType.C: 1, SubspaceType.OTHER: 0}
    assert clock.seconds < 5.0


@criterion(4, "recursion gives 3x21 over G_2(6,2), 3x85 over G_2(8,2), 2x91 over G_3(6,2), each under 60 s")
@pytest.mark.parametrize("q,n,k,count,size", [(2, 6, 2, 3, 21), (2, 8, 2, 3, 85), (3, 6, 2, 2, 91)])
def test_criterion_04(q, n, k, count, size):
    with Clock() as clock:
        fam = build_family(q, n, k)
        ok = oracle_pass(fam)
    assert ok and len(fam) == count and all(len(S) == size for S in fam.spreads)
    assert clock.seconds < 60.0


@criterion(5, "type counts (16,18,1,0) and (512,784,1,98) from the CLI, under 30 s")
@pytest.mark.parametrize("k,expected,total", [(2, (16, 18, 1, 0), 35), (3, (512, 784, 1, 98), 1395)])
def test_criterion_05(k, expected, total, capsys):
    with Clock() as clock:
        code = main(["count-types", "--q", "2", "--k", str(k)])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    m = re.search(r"\((\d+), (\d+), (\d+), (\d+)\) sum=(\d+)", out)
    counts = tuple(int(x) for x in m.groups()[:4])
    assert counts == expected and int(m.group(5)) == total
    assert counts[0] == 2 ** (k * k) and counts[1] == (2**k - 1) ** 2 * 2 ** ((k - 1) ** 2) and counts[2] == 1
    assert clock.seconds < 30.0


@criterion(6, "lifted (6,3,2)_2 code has 64 codewords at distance 4; worked lifting example reproduced, under 5 s")
def test_criterion_06():
    F = field_new(2)
    with Clock() as clock:
        L = lift_code(gabidulin_build(3, 3, 2, 2))
        words = L.codewords
        d = min(subspace_distance(X, Y) for X, Y in itertools.combinations(words, 2))
        Y = lift([[1, 1, 0], [0, 1, 1], [0, 0, 1]], F)
    assert len(words) == 64 and len(set(words)) == 64 and d == 4
    assert L.parameters == (6, 64, 4, 3)
    assert sorted(Y.vectors()) == sorted(
        [
            (1, 0, 0, 1, 1, 0), (0, 1, 0, 0, 1, 1), (0, 0, 1, 0, 0, 1), (1, 1, 0, 1, 0, 1),
            (1, 0, 1, 1, 1, 1), (0, 1, 1, 0, 1, 0), (1, 1, 1, 1, 0, 0), (0, 0, 0, 0, 0, 0),
        ]
    )
    assert clock.seconds < 5.0


@criterion(7, "(4,2,1)_2 lifted code splits into 4 classes of 4 exact covers of V^(4,2), under 1 s")
def test_criterion_07():
    with Clock() as clock:
        part = partition_parallel_classes(lift_code(gabidulin_build(2, 2, 1, 2)))
        target = sorted(head_vectors(4, 2, 2))
        covers = [sorted(c for Y in cls for c in Y.codes) == target for cls in part.classes]
        dists = [subspace_distance(X, Y) for cls in part.classes for X, Y in itertools.combinations(cls, 2)]
    assert len(target) == 12
    assert len(part.classes) == 4 and all(len(c) == 4 for c in part.classes)
    assert all(covers) and set(dists) == {4}
    assert clock.seconds < 1.0


@criterion(8, "STD_2(2,2,2) and STD_2(3,3,3) resolvable; 16 transversal classes over F_2^6, under 60 s")
def test_criterion_08():
    with Clock() as clock:
        for k in (2, 3):
            D = build_std(2, k, k, k, verify=False)
            report = D.verify()
            assert report.passed, str(report)
            assert {c.name for c in report.checks} >= {
                "axiom1-point-count", "axiom2-groups-partition", "axiom3-blocks-transversal",
                "axiom4-one-point-per-group", "axiom5-strength", "resolvable",
            }
        classes = partial_parallelism(2, 6, 2)
        blocks = {Y for c in classes for Y in c}
        outside = set(range(16, 64))
        assert len(classes) == 16 and len(blocks) == 256
        for cls in classes:
            hits = [c for Y in cls for c in Y.codes]
            assert len(hits) == 48 and set(hits) == outside
    assert clock.seconds < 60.0


@criterion(9, "exact search finds 7 disjoint spreads in G_2(4,2) with a verified witness, under 5 min")
def test_criterion_09():
    with Clock() as clock:
        res = exhaustive_max_family(2, 4, 2)
    assert res.optimal and res.value == 7
    assert res.report.passed and len(res.witness) == 7
    assert res.value > len(build_family(2, 4, 2))
    assert clock.seconds < 300.0


CONSTRUCT_CASES = [(2, 2, 4), (2, 3, 6), (2, 4, 8), (3, 2, 4), (4, 2, 4), (2, 2, 6), (2, 2, 8), (3, 2, 6), (2, 1, 4), (5, 2, 4)]


@criterion(10, "every construct certificate re-verifies from file with a matching digest")
@pytest.mark.parametrize("q,k,n", CONSTRUCT_CASES)
def test_criterion_10(q, k, n, tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert main(["construct", "--q", str(q), "--k", str(k), "--n", str(n), "--out", str(path)]) == EXIT_OK
    printed = re.search(r"sha256 ([0-9a-f]{64})", capsys.readouterr().out).group(1)
    report = check_certificate(path)
    assert report.passed, str(report)
    assert load_certificate(path).digest == printed
    assert main(["verify", str(path)]) == EXIT_OK
