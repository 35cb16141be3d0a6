"""Self-contained JSON certificates for constructed spread families and designs.

A certificate holds a header (format, field description, parameters, construction
metadata) and a body (the subspaces as RREF matrices over F_q, entries in [0, q)
with base-p encoding).  The digest is SHA-256 over the canonical body: every
list of subspaces sorted, every list of spreads or classes sorted, JSON with
sorted keys and no whitespace.  Reordering spreads therefore leaves the digest
unchanged, since the order carries no meaning.

Checking never imports the construction modules.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import re
from dataclasses import dataclass
from pathlib import Path
from types import SimpleNamespace
from typing import Any

from kparallel.gf import FieldError, FieldSpec, field_new
from kparallel.linalg import Subspace, is_rref, subspace_distance
from kparallel.oracle import VerificationReport, is_spread, pairwise_disjoint, verify_std

FORMAT = "kparallel-certificate"
VERSION = 1
KINDS = ("spread-family", "std", "lifted-code")
DISTANCE_PAIR_LIMIT = 200_000


class CertificateError(ValueError):
    """Malformed certificate file."""


@dataclass
class Certificate:
    header: dict
    body: dict
    digest: str

    @property
    def kind(self) -> str:
        return self.header["kind"]

    def to_document(self) -> dict:
        return {"header": self.header, "body": self.body, "digest": self.digest}

    def dumps(self) -> str:
        return render(self.to_document())


def _matrices(subspaces) -> list[list[list[int]]]:
    return sorted(Y.to_json() for Y in subspaces)


def canonical_body(body: dict) -> dict:
    out: dict[str, Any] = {}
    for key, value in body.items():
        if key in ("spreads", "classes"):
            out[key] = sorted(sorted(s) for s in value)
        elif key in ("blocks", "codewords", "groups"):
            out[key] = sorted(value)
        else:
            out[key] = value
    return out


def body_digest(body: dict) -> str:
    blob = json.dumps(canonical_body(body), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def render(document: dict) -> str:
    """Deterministic JSON: indented, but each row of integers kept on one line."""
    text = json.dumps(document, sort_keys=True, indent=1, ensure_ascii=False)
    return _INT_LIST.sub(lambda m: "[" + ",".join(x.strip() for x in m.group(1).split(",")) + "]", text) + "\n"


def _field_header(field: FieldSpec) -> dict:
    if field.base is not None:
        raise ValueError("certificates describe subspaces over a prime-based field")
    return field.describe()


def _finish(header: dict, body: dict, path) -> Certificate:
    cert = Certificate(header, body, body_digest(body))
    if path is not None:
        Path(path).write_text(cert.dumps(), encoding="utf-8")
    return cert


def emit_certificate(family, path=None) -> Certificate:
    """Certificate for a :class:`~kparallel.constructions.SpreadFamily`."""
    F, n, k = family.field, family.n, family.k
    q = F.order
    meta = {key: value for key, value in family.meta.items() if key not in ("q", "n", "k", "pg_n", "pg_k")}
    header = {
        "format": FORMAT,
        "version": VERSION,
        "kind": "spread-family",
        "field": _field_header(F),
        "q": q,
        "n": n,
        "k": k,
        "pg": {"n": n - 1, "k": k - 1},
        "construction": meta.pop("construction", "unknown"),
        "meta": meta,
        "provenance": [S.provenance for S in family.spreads],
        "counts": {"spreads": len(family.spreads), "spread_size": (q**n - 1) // (q**k - 1)},
    }
    body = {"spreads": [_matrices(S.members) for S in family.spreads]}
    return _finish(header, body, path)


def emit_std_certificate(design, path=None) -> Certificate:
    F = design.field
    q = F.order
    header = {
        "format": FORMAT,
        "version": VERSION,
        "kind": "std",
        "field": _field_header(F),
        "q": q,
        "n": design.k + design.m,
        "k": design.k,
        "m": design.m,
        "t": design.t,
        "construction": "lifted-mrd",
        "counts": {
            "groups": len(design.groups),
            "groupsize": q**design.m,
            "blocks": len(design.blocks),
            "classes": len(design.classes),
        },
    }
    body = {
        "groups": sorted(list(g) for g in design.groups),
        "blocks": _matrices(design.blocks),
        "classes": [_matrices(c) for c in design.classes],
    }
    return _finish(header, body, path)


def emit_lifted_code_certificate(code, path=None) -> Certificate:
    """Certificate for a :class:`~kparallel.rankmetric.LiftedCode`; header carries (n, M, d, k)."""
    F = code.source.field
    n, M, d, k = code.parameters
    header = {
        "format": FORMAT,
        "version": VERSION,
        "kind": "lifted-code",
        "field": _field_header(F),
        "q": F.order,
        "n": n,
        "k": k,
        "construction": "gabidulin-lift",
        "parameters": {"n": n, "size": M, "distance": d, "k": k, "rank_distance": code.source.delta},
    }
    body = {"codewords": _matrices(code.codewords)}
    return _finish(header, body, path)


# -- reading and checking ------------------------------------------------------


def load_certificate(path) -> Certificate:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CertificateError(f"cannot read certificate: {exc}") from exc
    if not isinstance(doc, dict) or not {"header", "body", "digest"} <= set(doc):
        raise CertificateError("certificate needs keys header/body/digest")
    header, body = doc["header"], doc["body"]
    if not isinstance(header, dict) or not isinstance(body, dict):
        raise CertificateError("header and body must be objects")
    if header.get("format") != FORMAT or header.get("version") != VERSION:
        raise CertificateError(f"unsupported format {header.get('format')!r} v{header.get('version')!r}")
    if header.get("kind") not in KINDS:
        raise CertificateError(f"unknown kind {header.get('kind')!r}")
    for key in ("field", "q", "n", "k"):
        if key not in header:
            raise CertificateError(f"header lacks {key!r}")
    return Certificate(header, body, str(doc["digest"]))


def _rebuild_field(desc: dict) -> FieldSpec:
    F = field_new(int(desc["p"]), int(desc["e"]), tuple(int(c) for c in desc["modulus"]))
    if F.alpha != desc.get("alpha"):
        raise FieldError(f"alpha {desc.get('alpha')} does not match the rebuilt field's {F.alpha}")
    return F


def _subspaces(report: VerificationReport, name: str, matrices, F: FieldSpec, n: int, k: int | None):
    """Validate raw matrices (shape, range, RREF, full rank) and wrap them as subspaces."""
    q = F.order
    out = []
    for idx, M in enumerate(matrices):
        ok = (
            isinstance(M, list)
            and (k is None or len(M) == k)
            and all(isinstance(r, list) and len(r) == n for r in M)
            and all(isinstance(x, int) and 0 <= x < q for r in M for x in r)
        )
        if not ok:
            report.add(name, False, {"index": idx, "matrix": M, "problem": "shape or entry out of range"})
            return None
        if not is_rref(M, F, n):
            report.add(name, False, {"index": idx, "matrix": M, "problem": "not RREF or rank deficient"})
            return None
        out.append(Subspace(F, n, [tuple(r) for r in M], _trusted=True))
    return out


def check_certificate(path) -> VerificationReport:
    """Re-verify a certificate from the file alone."""
    report = VerificationReport()
    try:
        cert = load_certificate(path)
    except CertificateError as exc:
        report.add("parse", False, str(exc))
        return report
    report.add("parse", True)

    header, body = cert.header, cert.body
    try:
        F = _rebuild_field(header["field"])
        if F.order != header["q"]:
            raise FieldError(f"field order {F.order} but header q={header['q']}")
    except (FieldError, ValueError, KeyError, TypeError) as exc:
        report.add("field", False, str(exc))
        return report
    report.add("field", True)

    try:
        recomputed = body_digest(body)
    except TypeError as exc:
        recomputed = f"unhashable body: {exc}"
    report.add("digest", recomputed == cert.digest, {"declared": cert.digest, "recomputed": recomputed})

    checker = {"spread-family": _check_family, "std": _check_std, "lifted-code": _check_lifted}[cert.kind]
    try:
        checker(report, header, body, F)
    except (KeyError, TypeError, ValueError) as exc:
        report.add("structure", False, f"{type(exc).__name__}: {exc}")
    return report


def _check_family(report: VerificationReport, header: dict, body: dict, F: FieldSpec) -> None:
    n, k = header["n"], header["k"]
    spreads = []
    for i, raw in enumerate(body["spreads"]):
        S = _subspaces(report, f"spread[{i}].matrices", raw, F, n, k)
        if S is None:
            return
        spreads.append(S)
    report.add("matrices", True)
    for i, S in enumerate(spreads):
        report.merge(is_spread(S, n, k, F), prefix=f"spread[{i}].")
    report.merge(pairwise_disjoint(spreads))
    counts = header.get("counts", {})
    got = {"spreads": len(spreads), "spread_size": len(spreads[0]) if spreads else 0}
    report.add("declared-counts", counts == got, {"declared": counts, "found": got})
    pg = header.get("pg", {})
    report.add("pg-indices", pg == {"n": n - 1, "k": k - 1}, {"declared": pg, "expected": {"n": n - 1, "k": k - 1}})


def _check_std(report: VerificationReport, header: dict, body: dict, F: FieldSpec) -> None:
    n, k, m, t = header["n"], header["k"], header["m"], header["t"]
    if n != k + m:
        report.add("structure", False, {"n": n, "k+m": k + m})
        return
    blocks = _subspaces(report, "blocks.matrices", body["blocks"], F, n, k)
    if blocks is None:
        return
    classes = []
    for i, raw in enumerate(body["classes"]):
        cls = _subspaces(report, f"class[{i}].matrices", raw, F, n, k)
        if cls is None:
            return
        classes.append(cls)
    report.add("matrices", True)
    groups = [tuple(g) for g in body["groups"]]
    design = SimpleNamespace(field=F, k=k, m=m, t=t, groups=groups, blocks=blocks, classes=classes)
    report.merge(verify_std(design))
    got = {"groups": len(groups), "groupsize": F.order**m, "blocks": len(blocks), "classes": len(classes)}
    counts = header.get("counts", {})
    report.add("declared-counts", counts == got, {"declared": counts, "found": got})


def _check_lifted(report: VerificationReport, header: dict, body: dict, F: FieldSpec) -> None:
    params = header["parameters"]
    n, k = header["n"], header["k"]
    words = _subspaces(report, "codewords.matrices", body["codewords"], F, n, k)
    if words is None:
        return
    report.add("matrices", True)
    dup = len(set(words)) != len(words)
    report.add("distinct-codewords", not dup, "repeated codeword")
    report.add("declared-size", params["size"] == len(words), {"declared": params["size"], "found": len(words)})
    if len(words) * (len(words) - 1) // 2 <= DISTANCE_PAIR_LIMIT and len(words) > 1:
        d = min(subspace_distance(X, Y) for X, Y in itertools.combinations(words, 2))
        report.add("declared-distance", d == params["distance"], {"declared": params["distance"], "found": d})
