import json

from liedual.cli import (EXIT_BAD_INPUT, EXIT_BUDGET, EXIT_MISMATCH,
                         EXIT_PASS, main)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_datum_info_g2(capsys):
    code, out, _ = run(capsys, "datum-info", "--preset", "G2")
    assert code == EXIT_PASS
    doc = json.loads(out)
    assert doc["length_ratio"] == 3
    assert doc["exponents"] == [1, 5]
    assert sorted(doc["e_coefficients"]) == [1, 3]
    assert doc["schema"] == 1


def test_datum_info_pgl2(capsys):
    code, out, _ = run(capsys, "datum-info", "--preset", "PGL2")
    doc = json.loads(out)
    assert code == EXIT_PASS
    assert doc["n_G"] == 2
    assert doc["pi0_invariant_factors"] == [2]


def test_datum_info_sl2(capsys):
    code, out, _ = run(capsys, "datum-info", "--preset", "SL2")
    doc = json.loads(out)
    assert doc["n_G"] == 1
    assert doc["pi0_invariant_factors"] == []


def test_centralizer_sl2_q(capsys):
    code, out, _ = run(capsys, "centralizer", "--preset", "SL2", "--ring", "Q")
    assert code == EXIT_PASS
    doc = json.loads(out)
    gens = doc["presentation"]["generators"]
    assert len(gens) == 1 and gens[0]["degree"] == 2
    assert doc["presentation"]["relations"] == []
    assert doc["verdict"]["pass"] is True


def test_centralizer_g2_f2(capsys):
    code, out, _ = run(capsys, "centralizer", "--preset", "G2", "--ring", "F2")
    assert code == EXIT_PASS
    doc = json.loads(out)
    assert doc["verdict"]["pass"] is True
    degrees = sorted(g["degree"] for g in doc["presentation"]["generators"])
    assert degrees == [2, 4, 10]


def test_bad_prime_is_bad_input_not_crash(capsys):
    code, out, err = run(capsys, "centralizer", "--preset", "G2",
                         "--ring", "F3")
    assert code == EXIT_BAD_INPUT
    assert "prime" in err


def test_budget_exhaustion(capsys):
    code, _, err = run(capsys, "centralizer", "--preset", "G2",
                       "--ring", "Q", "--budget", "3")
    assert code == EXIT_BUDGET


def test_unknown_preset_and_bad_file(capsys, tmp_path):
    code, _, _ = run(capsys, "centralizer", "--preset", "NOPE")
    assert code == EXIT_BAD_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "datum-info", "--datum-file", str(bad))
    assert code == EXIT_BAD_INPUT
    code, _, _ = run(capsys, "datum-info", "--datum-file",
                     str(tmp_path / "missing.json"))
    assert code == EXIT_BAD_INPUT


def test_invalid_truncate(capsys):
    code, _, _ = run(capsys, "centralizer", "--preset", "SL2", "--truncate", "0")
    assert code == EXIT_BAD_INPUT


def test_datum_file_round_trip(capsys, tmp_path):
    doc = {"name": "custom", "cartan": [[2, -1], [-1, 2]],
           "lattice": {"basis": [[1, 0], [0, 1]]}, "central_rank": 0}
    f = tmp_path / "datum.json"
    f.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "datum-info", "--datum-file", str(f))
    assert code == EXIT_PASS
    assert json.loads(out)["exponents"] == [1, 2]


def test_deterministic_output(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "centralizer", "--preset", "Sp4", "--ring", "F5",
        "--out", str(a))
    run(capsys, "centralizer", "--preset", "Sp4", "--ring", "F5",
        "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cache_hit_reproduces_output(capsys, tmp_path):
    cache = tmp_path / "cache"
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "centralizer", "--preset", "SL3", "--ring", "F7",
        "--cache", str(cache), "--out", str(a))
    files = list(cache.iterdir())
    assert len(files) == 1
    run(capsys, "centralizer", "--preset", "SL3", "--ring", "F7",
        "--cache", str(cache), "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert list(cache.iterdir()) == files


def test_cache_key_depends_on_config(capsys, tmp_path):
    cache = tmp_path / "cache"
    run(capsys, "centralizer", "--preset", "SL2", "--ring", "Q",
        "--cache", str(cache))
    run(capsys, "centralizer", "--preset", "SL2", "--ring", "F5",
        "--cache", str(cache))
    assert len(list(cache.iterdir())) == 2


def test_check_all_passes(capsys):
    code, out, _ = run(capsys, "check-all", "--presets", "SL2", "PGL2",
                       "--ring", "F5", "--truncate", "16")
    assert code == EXIT_PASS
    lines = [ln for ln in out.splitlines() if ln]
    assert all(ln.startswith(("PASS", "OK")) for ln in lines)


def test_check_all_truncate_one_trivially_passes(capsys):
    code, out, _ = run(capsys, "check-all", "--presets", "SL2",
                       "--ring", "Q", "--truncate", "1")
    assert code == EXIT_PASS


def test_check_all_negative_control(capsys):
    code, out, _ = run(capsys, "check-all", "--presets", "SL3",
                       "--ring", "Q", "--truncate", "10",
                       "--inject-sign-error")
    assert code == EXIT_MISMATCH
    assert any(ln.startswith("FAIL") and "Jacobi" in ln
               for ln in out.splitlines())
