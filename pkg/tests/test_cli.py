"""Command-line verifier: exit codes, determinism, report format."""
import json

import pytest

from dkchains.cli import main, parse_object, split_descriptors


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_descriptor_splitting():
    assert split_descriptors("delta:1, delta:2") == ["delta:1", "delta:2"]
    assert split_descriptors("complex:[1,1;2],delta:0") == \
        ["complex:[1,1;2]", "delta:0"]


def test_parse_objects():
    kind, a = parse_object("delta:2", 3)
    assert kind == "module" and a.ranks[0] == 3
    kind, a = parse_object("nerve:z3", 2)
    assert kind == "module" and a.ranks == [1, 3, 9]
    kind, a = parse_object("const:Z", 2)
    assert kind == "module" and a.ranks == [1, 1, 1]
    kind, c = parse_object("complex:[1,1;2]", 3)
    assert kind == "complex" and c.ranks == [1, 1, 0, 0]
    assert c.d(1).to_rows() == [[2]]


def test_parse_object_errors():
    from dkchains.cli import UsageError
    with pytest.raises(UsageError):
        parse_object("delta:x", 3)
    with pytest.raises(UsageError):
        parse_object("torus", 3)
    with pytest.raises(UsageError):
        parse_object("complex:[1,1;3,3]", 3)  # wrong entry count


def test_axioms_suite_passes(capsys):
    code, out, err = run(capsys, "axioms", "--max-level", "3")
    assert code == 0, err
    assert "FAIL" not in out
    assert "aw-nabla-identity" in out


def test_bialgebra_suite_passes(capsys):
    code, out, _ = run(capsys, "bialgebra", "--max-level", "2",
                       "--objects", "delta:1,delta:0,delta:0,delta:1")
    assert code == 0
    assert out.count("PASS") == 2  # unnormalized and normalized


def test_dold_kan_suite_passes(capsys):
    code, out, _ = run(capsys, "dold-kan")
    assert code == 0
    assert "adjunction-triangles" in out and "roundtrip-colax" in out


def test_homotopy_suite_emits_witness_matrices(capsys):
    code, out, _ = run(capsys, "homotopy", "--format", "json")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert any(r["check"] == "nabla-aw" and
               r["reason"].startswith("homotopy") for r in records)


def test_monoid_suite_passes(capsys):
    code, out, _ = run(capsys, "monoid", "--max-level", "2")
    assert code == 0
    assert "aw-multiplicative" in out


def test_all_suite_deterministic(capsys):
    code1, out1, _ = run(capsys, "all", "--max-level", "2")
    code2, out2, _ = run(capsys, "all", "--max-level", "2")
    assert code1 == code2 == 0
    assert out1 == out2


def test_json_records_have_stable_fields(capsys):
    code, out, _ = run(capsys, "axioms", "--format", "json",
                       "--objects", "delta:1")
    assert code == 0
    for line in out.splitlines():
        rec = json.loads(line)
        assert list(rec) == ["check", "objects", "max_level", "status",
                             "reason", "witnesses"]


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "axioms", "--objects", "torus")
    assert code == 2 and "usage error" in err
    code, _, _ = run(capsys, "nonsense-suite")
    assert code == 2
    code, _, err = run(capsys, "axioms", "--max-level", "-1")
    assert code == 2


def test_unknown_check_exits_2(capsys):
    code, _, err = run(capsys, "axioms", "--check", "no-such-check")
    assert code == 2


def test_list_checks(capsys):
    code, out, _ = run(capsys, "all", "--list-checks")
    assert code == 0
    assert "axioms/aw-nabla-identity" in out
    assert "monoid/aw-multiplicative" in out


def test_single_check_filter(capsys):
    code, out, _ = run(capsys, "axioms", "--check", "aw-nabla-identity",
                       "--objects", "delta:2,delta:1", "--normalized")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith(" ")]
    assert all("aw-nabla-identity" in l for l in lines)


def test_failing_check_exits_1_with_witness(capsys, monkeypatch):
    import dkchains.cli as cli
    from dkchains.ezaw import unit_coherence_check
    monkeypatch.setattr(cli, "unit_coherence_check",
                        lambda a: unit_coherence_check(a, unit_scale=-1))
    code, out, _ = run(capsys, "axioms", "--check", "unit-coherence",
                       "--objects", "delta:1")
    assert code == 1
    assert "FAIL" in out and "witness" in out


def test_seed_changes_random_draws_but_not_verdict(capsys):
    code1, out1, _ = run(capsys, "axioms", "--check", "aw-nabla-random",
                         "--seed", "1")
    code2, out2, _ = run(capsys, "axioms", "--check", "aw-nabla-random",
                         "--seed", "2")
    assert code1 == code2 == 0
