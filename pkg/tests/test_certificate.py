from __future__ import annotations

import json

import pytest

from kparallel.certificate import (
    CertificateError,
    body_digest,
    check_certificate,
    emit_certificate,
    emit_lifted_code_certificate,
    emit_std_certificate,
    load_certificate,
)
from kparallel.constructions import build_family_q2_2k, build_two_spreads_q
from kparallel.rankmetric import gabidulin_build, lift_code
from kparallel.std_recursive import build_std


@pytest.fixture(scope="module")
def family3():
    return build_family_q2_2k(3)


def _rewrite(path, doc):
    path.write_text(json.dumps(doc))


def test_round_trip(tmp_path, family3):
    path = tmp_path / "f.json"
    cert = emit_certificate(family3, path)
    report = check_certificate(path)
    assert report.passed, str(report)
    loaded = load_certificate(path)
    assert loaded.digest == cert.digest == body_digest(loaded.body)
    assert loaded.header["meta"]["case"] in (1, 2)
    assert loaded.header["pg"] == {"n": 5, "k": 2}
    assert loaded.header["field"] == {"p": 2, "e": 1, "modulus": [0, 1], "alpha": 1}


def test_certificates_are_byte_identical(tmp_path, family3):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    emit_certificate(family3, a)
    emit_certificate(build_family_q2_2k(3), b)
    assert a.read_bytes() == b.read_bytes()


def test_subspaces_sorted_within_spreads(tmp_path, family3):
    cert = emit_certificate(family3)
    for spread in cert.body["spreads"]:
        assert spread == sorted(spread)


def test_swapped_spreads_still_pass(tmp_path, family3):
    path = tmp_path / "f.json"
    emit_certificate(family3, path)
    doc = json.loads(path.read_text())
    doc["body"]["spreads"][0], doc["body"]["spreads"][1] = doc["body"]["spreads"][1], doc["body"]["spreads"][0]
    _rewrite(path, doc)
    assert check_certificate(path).passed


def test_zeroed_row_fails(tmp_path, family3):
    path = tmp_path / "f.json"
    emit_certificate(family3, path)
    doc = json.loads(path.read_text())
    doc["body"]["spreads"][2][4][1] = [0] * 6
    _rewrite(path, doc)
    report = check_certificate(path)
    assert not report.passed
    names = {c.name for c in report.failures()}
    assert "spread[2].matrices" in names and "digest" in names
    problem = next(c for c in report.failures() if c.name == "spread[2].matrices").counterexample["problem"]
    assert "rank deficient" in problem


def test_digest_mismatch_detected(tmp_path, family3):
    path = tmp_path / "f.json"
    emit_certificate(family3, path)
    doc = json.loads(path.read_text())
    doc["digest"] = "0" * 64
    _rewrite(path, doc)
    report = check_certificate(path)
    assert [c.name for c in report.failures()] == ["digest"]


def test_duplicated_member_breaks_disjointness(tmp_path, family3):
    path = tmp_path / "f.json"
    cert = emit_certificate(family3)
    doc = cert.to_document()
    doc["body"]["spreads"][1] = doc["body"]["spreads"][0]
    doc["digest"] = body_digest(doc["body"])
    _rewrite(path, doc)
    report = check_certificate(path)
    assert {c.name for c in report.failures()} == {"pairwise-disjoint"}


def test_altered_field_detected(tmp_path):
    path = tmp_path / "f.json"
    emit_certificate(build_two_spreads_q(3, 2), path)
    doc = json.loads(path.read_text())
    doc["header"]["field"]["alpha"] = 1
    _rewrite(path, doc)
    assert [c.name for c in check_certificate(path).failures()] == ["field"]


def test_malformed_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert [c.name for c in check_certificate(bad).failures()] == ["parse"]
    bad.write_text(json.dumps({"header": {}, "body": {}, "digest": ""}))
    with pytest.raises(CertificateError):
        load_certificate(bad)
    assert not check_certificate(tmp_path / "missing.json").passed


def test_std_certificate(tmp_path):
    path = tmp_path / "std.json"
    emit_std_certificate(build_std(2, 2, 2, 2), path)
    report = check_certificate(path)
    assert report.passed
    assert any(c.name == "axiom5-strength" for c in report.checks)
    doc = json.loads(path.read_text())
    doc["body"]["blocks"].pop()
    doc["body"]["classes"][0].pop()
    doc["digest"] = body_digest(doc["body"])
    _rewrite(path, doc)
    names = {c.name for c in check_certificate(path).failures()}
    assert "axiom5-strength" in names


def test_lifted_code_certificate(tmp_path):
    path = tmp_path / "code.json"
    cert = emit_lifted_code_certificate(lift_code(gabidulin_build(3, 3, 2, 2)), path)
    assert cert.header["parameters"] == {"n": 6, "size": 64, "distance": 4, "k": 3, "rank_distance": 2}
    assert check_certificate(path).passed
