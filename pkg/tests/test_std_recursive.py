from __future__ import annotations

import pytest

from kparallel.gf import field_new
from kparallel.linalg import Subspace, tail_meet_dim
from kparallel.oracle import is_spread, pairwise_disjoint
from kparallel.std_recursive import (
    PartialGrassmannian,
    build_family,
    build_std,
    embed_tail,
    guaranteed_size,
    partial_class_count,
    partial_parallelism,
    pg_admissible,
    recursive_extend,
    spread_size,
)

F2 = field_new(2)


@pytest.mark.parametrize("q,k,m,t,blocks,classes", [(2, 2, 2, 2, 16, 4), (2, 2, 2, 1, 4, 1), (3, 2, 2, 2, 81, 9), (2, 2, 3, 2, 64, 8)])
def test_std_axioms(q, k, m, t, blocks, classes):
    D = build_std(q, k, m, t)
    assert len(D.blocks) == blocks and len(D.classes) == classes
    assert len(D.groups) == (q**k - 1) // (q - 1)
    assert D.verify().passed


def test_std_parameter_errors():
    with pytest.raises(ValueError):
        build_std(2, 3, 2, 2)
    with pytest.raises(ValueError):
        build_std(2, 2, 2, 3)


def test_partial_parallelism_262():
    classes = partial_parallelism(2, 6, 2)
    assert len(classes) == 16 == partial_class_count(2, 6, 2)
    blocks = [Y for c in classes for Y in c]
    assert len(set(blocks)) == 256
    transversal = set(PartialGrassmannian(F2, 6, 4, 2).transversal_members())
    assert set(blocks) == transversal
    outside_u = set(range(16, 64))
    for cls in classes:
        hits = [c for Y in cls for c in Y.codes]
        assert len(hits) == 48 and set(hits) == outside_u


def test_partial_grassmannian_counts():
    P = PartialGrassmannian(F2, 4, 2, 2)
    assert P.U.dim == 2
    assert sum(1 for _ in P.members()) == 34
    assert sum(1 for _ in P.transversal_members()) == 16
    with pytest.raises(ValueError):
        PartialGrassmannian(F2, 4, 4, 2)


def test_embed_tail():
    Y = Subspace(F2, 2, [(1, 1)])
    Z = embed_tail(Y, 4)
    assert Z.rows == ((0, 0, 1, 1),) and tail_meet_dim(Z, 2) == 1


@pytest.mark.parametrize(
    "q,n,k,count,size",
    [(2, 6, 2, 3, 21), (2, 8, 2, 3, 85), (3, 6, 2, 2, 91), (2, 6, 3, 7, 9), (3, 4, 2, 2, 10), (2, 4, 1, 1, 15), (2, 3, 3, 1, 1)],
)
def test_build_family(q, n, k, count, size):
    fam = build_family(q, n, k)
    assert len(fam) == count == guaranteed_size(q, n, k)
    assert all(len(S) == size == spread_size(q, n, k) for S in fam.spreads)
    for S in fam.spreads:
        assert is_spread(S.members, n, k).passed
    assert pairwise_disjoint([S.members for S in fam.spreads]).passed
    assert fam.meta["pg_n"] == n - 1 and fam.meta["pg_k"] == k - 1


def test_recursion_counts_steps():
    fam = build_family(2, 8, 2)
    assert fam.meta["recursion_steps"] == 2


def test_recursive_extend_rejects_wrong_ambient():
    fam = build_family(2, 4, 2)
    with pytest.raises(ValueError):
        recursive_extend(fam, 2, 8, 2)


def test_build_family_rejects_non_divisor():
    with pytest.raises(ValueError):
        build_family(2, 5, 2)


def test_pg_admissibility():
    assert pg_admissible(3, 1) and pg_admissible(5, 2) and pg_admissible(7, 1)
    assert not pg_admissible(4, 1) and not pg_admissible(1, 1)
