"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from kparallel import __version__
from kparallel.gf import FieldError, field_of_order, prime_power

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _field_order(q: int) -> int:
    try:
        prime_power(q)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    return q


def _print_report(report, verbose: bool) -> None:
    lines = report.lines() if verbose else [c.line() for c in report.failures()]
    for line in lines:
        print(line)
    total, bad = len(report.checks), len(report.failures())
    print(f"{'PASS' if report.passed else 'FAIL'}: {total - bad}/{total} checks passed")


def cmd_construct(args) -> int:
    from kparallel.certificate import emit_certificate
    from kparallel.oracle import VerificationReport, is_spread, pairwise_disjoint
    from kparallel.std_recursive import build_family

    q = _field_order(args.q)
    n, k = (args.n + 1, args.k + 1) if args.pg else (args.n, args.k)
    if k < 1 or n < k or n % k:
        raise UsageError(f"need 1 <= k <= n with k | n (vector dimensions n={n}, k={k})")
    start = time.perf_counter()
    fam = build_family(q, n, k)
    built = time.perf_counter() - start
    report = VerificationReport()
    for i, S in enumerate(fam.spreads):
        report.merge(is_spread(S.members, n, k, fam.field), prefix=f"spread[{i}].")
    report.merge(pairwise_disjoint([S.members for S in fam.spreads]))
    size = len(fam.spreads[0])
    print(f"G_{q}({n},{k}) = PG({n - 1},{q}) with {k - 1}-spreads: {len(fam)} pairwise disjoint spreads of size {size}")
    print(f"construction: {fam.meta.get('construction')}  meta: {json.dumps(_public_meta(fam.meta), sort_keys=True)}")
    print(f"built in {built:.3f} s")
    _print_report(report, args.verbose)
    if args.out:
        cert = emit_certificate(fam, args.out)
        print(f"certificate: {args.out}  sha256 {cert.digest}")
    return EXIT_OK if report.passed else EXIT_FAIL


def _public_meta(meta: dict) -> dict:
    return {key: value for key, value in meta.items() if key not in ("q", "n", "k", "pg_n", "pg_k", "construction")}


def cmd_verify(args) -> int:
    from kparallel.certificate import check_certificate

    report = check_certificate(args.file)
    _print_report(report, True)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_count_types(args) -> int:
    from kparallel.constructions import count_types
    from kparallel.linalg import gaussian_binomial

    q, k = _field_order(args.q), args.k
    if k < 1:
        raise UsageError("k must be positive")
    a, b, c, other = count_types(q, k)
    total = gaussian_binomial(2 * k, k, q)
    expected_a = q ** (k * k)
    expected_b = gaussian_binomial(k, 1, q) ** 2 * q ** ((k - 1) ** 2)
    print(f"TypeA={a} TypeB={b} TypeC={c} Other={other}")
    print(f"({a}, {b}, {c}, {other}) sum={a + b + c + other} |G_{q}({2 * k},{k})|={total}")
    ok = a == expected_a and b == expected_b and c == 1 and a + b + c + other == total
    print(f"closed forms: A=q^(k^2)={expected_a} B=[k,1]_q^2 q^((k-1)^2)={expected_b} C=1: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    from kparallel.linalg import enumerate_grassmannian, gaussian_binomial

    q, n, k = _field_order(args.q), args.n, args.k
    if not 0 <= k <= n:
        raise UsageError("need 0 <= k <= n")
    F = field_of_order(q)
    count = 0
    for Y in enumerate_grassmannian(n, k, F):
        count += 1
        if args.list:
            print(" ".join("".join(str(x) for x in r) for r in Y.rows))
    expected = gaussian_binomial(n, k, q)
    print(f"|G_{q}({n},{k})| = {count} (Gaussian binomial {expected})")
    ok = count == expected
    if args.spreads:
        from kparallel.search import BudgetExhausted, NodeCounter, enumerate_spreads

        try:
            spreads = enumerate_spreads(list(enumerate_grassmannian(n, k, F)), q, n, NodeCounter(args.budget))
        except BudgetExhausted:
            print(f"spread enumeration exceeded {args.budget} nodes")
            return EXIT_BUDGET
        print(f"spreads: {len(spreads)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_std(args) -> int:
    from kparallel.certificate import emit_std_certificate
    from kparallel.std_recursive import build_std

    q = _field_order(args.q)
    if not (1 <= args.t <= args.k <= args.m):
        raise UsageError("need 1 <= t <= k <= m")
    D = build_std(q, args.k, args.m, args.t, verify=False)
    print(
        f"STD_{q}({args.t},{args.k},{args.m}): {len(D.groups)} groups of size {D.groupsize}, "
        f"{len(D.blocks)} blocks in {len(D.classes)} parallel classes"
    )
    report = D.verify()
    _print_report(report, args.verbose)
    if args.out:
        cert = emit_std_certificate(D, args.out)
        print(f"certificate: {args.out}  sha256 {cert.digest}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_search(args) -> int:
    from kparallel.search import exhaustive_max_family
    from kparallel.std_recursive import guaranteed_size

    q, n, k = _field_order(args.q), args.n, args.k
    if k < 1 or n < k or n % k:
        raise UsageError("need 1 <= k <= n with k | n")
    res = exhaustive_max_family(q, n, k, limit=args.budget, workers=args.workers)
    label = "maximum" if res.optimal else "lower bound (budget exhausted)"
    print(f"{label}: {res.value} pairwise disjoint spreads in G_{q}({n},{k})  [{res.nodes} nodes]")
    if res.spreads_total is not None:
        print(f"spreads in G_{q}({n},{k}): {res.spreads_total}")
    print(f"construction gives {guaranteed_size(q, n, k)}")
    _print_report(res.report, args.verbose)
    if not res.report.passed:
        return EXIT_FAIL
    return EXIT_OK if res.optimal else EXIT_BUDGET


def cmd_info(args) -> int:
    from kparallel.std_recursive import guaranteed_size, spread_size

    print(f"kparallel {__version__}")
    print("spread size in G_q(n,k): (q^n - 1)/(q^k - 1), exists iff k | n")
    print("|G_q(n,k)|: Gaussian binomial [n,k]_q")
    print("disjoint spreads built: 2^k - 1 for q = 2, 2 for q > 2, whenever k | n and n >= 2k")
    print("projective indices: PG(N,q) with K-spreads corresponds to n = N + 1, k = K + 1")
    if args.q is not None and args.n is not None and args.k is not None:
        q = _field_order(args.q)
        n, k = (args.n + 1, args.k + 1) if args.pg else (args.n, args.k)
        ok = 1 <= k <= n and n % k == 0
        print(f"q={q} n={n} k={k}: {'admissible' if ok else 'not admissible (k must divide n)'}")
        if ok:
            print(f"spread size {spread_size(q, n, k)}, family size {guaranteed_size(q, n, k)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kparallel", description="Pairwise disjoint spreads in finite projective spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the largest known family of disjoint spreads")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pg", action="store_true", help="read N and K as projective indices")
    p.add_argument("--out", help="write a certificate to this path")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-verify a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count-types", help="count k-subspaces of F_q^2k by type")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_count_types)

    p = sub.add_parser("enumerate", help="enumerate G_q(n,k)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print each subspace")
    p.add_argument("--spreads", action="store_true", help="also count all spreads")
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("std", help="build and verify a resolvable subspace transversal design")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_std)

    p = sub.add_parser("search", help="exact maximum number of disjoint spreads (tiny cases)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("info", help="formulas and parameter admissibility")
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--pg", action="store_true")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FieldError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
