import json

import pytest

from sphereq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_word_equal(capsys):
    code, out, _ = run(capsys, "word", "-n", "2", "a1 A1", "")
    assert code == 0
    assert out.strip() == "equal"


def test_word_not_equal(capsys):
    code, out, _ = run(capsys, "word", "-n", "2", "a1", "a2")
    assert code == 1
    assert out.strip() == "not equal"


def test_word_json(capsys):
    code, out, _ = run(capsys, "--json", "word", "-n", "2", "a1 A1", "")
    assert code == 0
    assert json.loads(out) == {"equal": True}


def test_word_bad_token_exits_2(capsys):
    code, _, err = run(capsys, "word", "-n", "2", "a3", "")
    assert code == 2
    assert "error" in err


def test_conj(capsys):
    code, out, _ = run(capsys, "conj", "-n", "2", "a1", "a2 a1 A2")
    assert code == 0
    assert out.strip() == "conjugate"
    code, out, _ = run(capsys, "conj", "-n", "2", "a1", "a2")
    assert code == 1


def test_solve_unsat(tmp_path, capsys):
    eq = tmp_path / "eq.txt"
    eq.write_text("rank 2\na1 a2 A1 A2\n")
    code, out, _ = run(capsys, "solve", str(eq))
    assert code == 1
    assert "unsat" in out


def test_solve_sat_json_and_verify(tmp_path, capsys):
    eq = tmp_path / "pair.eq"
    eq.write_text("rank 2\na1 a2 A1 A2\na2 a1 A2 A1\n")
    code, out, _ = run(capsys, "--json", "solve", str(eq))
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "sat"
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(payload["certificate"]))
    code, out, _ = run(capsys, "--json", "verify", str(eq), str(cert))
    assert code == 0
    assert json.loads(out) == {"valid": True}


def test_verify_rejects_bad_certificate(tmp_path, capsys):
    eq = tmp_path / "pair.eq"
    eq.write_text("rank 2\na1 a2 A1 A2\na2 a1 A2 A1\n")
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"alphas": [[1, 0], [0, 0]]}))
    code, out, _ = run(capsys, "verify", str(eq), str(cert))
    assert code == 1
    assert out.strip() == "invalid"


def test_solve_with_oracle_crosscheck(tmp_path, capsys):
    eq = tmp_path / "pair.eq"
    eq.write_text("rank 2\na1 a2 A1 A2\na2 a1 A2 A1\n")
    code, out, _ = run(capsys, "--json", "solve", str(eq), "--max-len", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["oracle"]["solvable"] is True


def test_solve_strategy_flag(tmp_path, capsys):
    eq = tmp_path / "one.eq"
    eq.write_text("rank 2\na1 a2 A1 A2\n")
    code, _, _ = run(capsys, "solve", str(eq), "--strategy", "exhaustive")
    assert code == 1


def test_solve_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent/file.eq")
    assert code == 2


def test_malformed_equation_file_exits_2(tmp_path, capsys):
    eq = tmp_path / "bad.eq"
    eq.write_text("rank two\na1\n")
    code, _, err = run(capsys, "solve", str(eq))
    assert code == 2


def test_encode_packing_stdout(capsys):
    code, out, _ = run(capsys, "encode-packing", "3", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rank 2"
    assert len(lines) == 4


def test_encode_packing_writes_file_then_solve(tmp_path, capsys):
    out_file = tmp_path / "w2222.eq"
    code, _, _ = run(capsys, "encode-packing", "2", "2", "2", "2", "-o", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "--json", "solve", str(out_file))
    assert code == 0
    assert json.loads(out)["status"] == "sat"


def test_encode_packing_rejects_bad_area(capsys):
    code, _, err = run(capsys, "encode-packing", "1", "1", "1")
    assert code == 2
    assert "square" in err


def test_pack_sat(capsys):
    code, out, _ = run(capsys, "--json", "pack", "2", "2", "2", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["packable"] is True
    assert payload["placement"]["box"] == 4


def test_pack_unsat(capsys):
    code, out, _ = run(capsys, "pack", "3", "4")
    assert code == 1
    assert out.strip() == "none"


def test_pack_ascii(capsys):
    code, out, _ = run(capsys, "pack", "2", "2", "2", "2", "--ascii")
    assert code == 0
    assert "2233" in out


def test_pack_figure(tmp_path, capsys):
    fig = tmp_path / "pack.png"
    code, _, _ = run(capsys, "pack", "4", "--figure", str(fig))
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 0


def test_bench_writes_tsv_and_figure(tmp_path, capsys):
    fixtures = tmp_path / "fixtures"
    fixtures.mkdir()
    (fixtures / "pair.eq").write_text("rank 2\na1 a2 A1 A2\na2 a1 A2 A1\n")
    (fixtures / "word.eq").write_text("rank 2\na1 a2 A1 A2\n")
    out_dir = tmp_path / "report"
    code, out, _ = run(capsys, "bench", str(fixtures), "--out", str(out_dir))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "instance\tstrategy\tverdict\tmillis"
    assert len(lines) == 1 + 2 * 2  # two fixtures, two strategies
    assert (out_dir / "bench.tsv").exists()
    assert (out_dir / "bench.png").stat().st_size > 0
    verdicts = {tuple(ln.split("\t")[:3]) for ln in lines[1:]}
    assert ("pair", "backtracking", "sat") in verdicts
    assert ("word", "exhaustive", "unsat") in verdicts


def test_bench_empty_dir_exits_2(tmp_path, capsys):
    code, _, _ = run(capsys, "bench", str(tmp_path))
    assert code == 2


def test_usage_error(capsys):
    assert main([]) == 2
    assert main(["solve"]) == 2


def test_env_var_timeout(tmp_path, capsys, monkeypatch):
    eq = tmp_path / "heavy.eq"
    run(capsys, "encode-packing", "1", "1", "1", "1", "4", "4", "-o", str(eq))
    monkeypatch.setenv("SPHEREQ_TIMEOUT", "0.001")
    code, out, _ = run(capsys, "--json", "solve", str(eq), "--strategy", "exhaustive")
    assert code == 3
    assert json.loads(out)["status"] == "timeout"
    # an explicit flag overrides the environment
    monkeypatch.setenv("SPHEREQ_TIMEOUT", "bogus")
    code, _, err = run(capsys, "solve", str(eq))
    assert code == 2 and "SPHEREQ_TIMEOUT" in err


FIXTURE_EXPECT = {
    "word_trivial": 0,
    "word_unsat": 1,
    "conj_pair": 0,
    "conj_distinct": 1,
    "negation_pair": 0,
    "repeated_commutator": 1,
    "lattice_wrap": 0,
    "rank3_cycle": 0,
    "packing_2": 0,
}


def test_fixture_corpus_exit_codes_and_verify(tmp_path, capsys):
    import pathlib

    fixtures = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
    seen = set()
    for eq_path in sorted(fixtures.glob("*.eq")):
        name = eq_path.stem
        seen.add(name)
        for strategy in ("backtracking", "exhaustive"):
            code, out, _ = run(capsys, "--json", "solve", str(eq_path),
                               "--strategy", strategy)
            assert code == FIXTURE_EXPECT[name], name
            payload = json.loads(out)
            if payload["status"] == "sat":
                cert = tmp_path / f"{name}.cert.json"
                cert.write_text(json.dumps(payload["certificate"]))
                vcode, vout, _ = run(capsys, "--json", "verify", str(eq_path), str(cert))
                assert vcode == 0 and json.loads(vout) == {"valid": True}
    assert seen == set(FIXTURE_EXPECT)
    # a tampered certificate for a trivial-lattice instance must be rejected
    eq_path = fixtures / "negation_pair.eq"
    code, out, _ = run(capsys, "--json", "solve", str(eq_path))
    alphas = json.loads(out)["certificate"]["alphas"]
    alphas[0][0] += 1
    bad = tmp_path / "tampered.cert.json"
    bad.write_text(json.dumps({"alphas": alphas}))
    code, out, _ = run(capsys, "--json", "verify", str(eq_path), str(bad))
    assert code == 1 and json.loads(out) == {"valid": False}
