import json

import numpy as np
import pytest

from ldoi import io
from ldoi.cli import EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, EXIT_VALIDATION, main
from ldoi.embed import embed
from ldoi.schmidt import schmidt_rank
from ldoi.special import is_dual
from ldoi.triples import MatrixTriple
from ldoi.unitary import is_unitary, random_unitary


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def triple_file(tmp_path):
    def write(t, name="t.json"):
        p = tmp_path / name
        p.write_text(io.dump_triple(t))
        return str(p)

    return write


def test_sample_is_deterministic(capsys):
    code, a, _ = run(capsys, "sample", "--class", "cldui", "--field", "r", "--dim", "3", "--seed", "5")
    _, b, _ = run(capsys, "sample", "--class", "cldui", "--field", "r", "--dim", "3", "--seed", "5")
    assert code == EXIT_OK and a == b
    assert is_unitary(io.load_triple(a), "real")


def test_sample_requires_seed(capsys):
    code, _, err = run(capsys, "sample", "--dim", "3")
    assert code == EXIT_USAGE and "--seed" in err


def test_check(capsys, triple_file):
    code, out, _ = run(capsys, "check", triple_file(MatrixTriple.swap(3)))
    rep = json.loads(out)
    assert code == EXIT_OK and rep["is_unitary"] and rep["conditions_agree"]


def test_check_invalid_triple(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(io.dump_triple(MatrixTriple(np.eye(2), 2 * np.eye(2), np.eye(2))))
    code, _, err = run(capsys, "check", str(p))
    assert code == EXIT_VALIDATION and "diag(A) != diag(B)" in err


def test_embed_formats(capsys, triple_file):
    t = random_unitary(2, seed=1)
    path = triple_file(t)
    code, out, _ = run(capsys, "embed", path)
    assert code == EXIT_OK
    obj = json.loads(out)
    M = np.array(obj["matrix"])
    assert np.allclose(M[..., 0] + 1j * M[..., 1], embed(t), atol=0)
    code, out, _ = run(capsys, "embed", "--format", "csv", path)
    assert np.array_equal(io.dense_from_csv(out), embed(t))


def test_dual_make_and_check(capsys, tmp_path):
    for argv in (
        ["dual", "make", "--family", "ldui", "--dim", "4"],
        ["dual", "make", "--family", "ldui", "--dim", "3", "--seed", "2"],
        ["dual", "make", "--family", "projection", "--dim", "4", "--seed", "3"],
        ["dual", "make", "--family", "phase-projection", "--dim", "3", "--omega", "0,1", "--seed", "1", "--proj-rank", "2"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == EXIT_OK
        assert is_dual(io.load_triple(out))
        p = tmp_path / "d.json"
        p.write_text(out)
        code, out, _ = run(capsys, "dual", "check", str(p))
        assert json.loads(out)["is_dual"]


def test_dual_make_needs_seed(capsys):
    code, _, err = run(capsys, "dual", "make", "--family", "projection", "--dim", "3")
    assert code == EXIT_USAGE and "--seed" in err


def test_bad_omega(capsys):
    code, _, _ = run(capsys, "dual", "make", "--family", "phase-projection", "--dim", "3", "--omega", "a,b", "--seed", "1")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "dual", "make", "--family", "phase-projection", "--dim", "3", "--omega", "2,0", "--seed", "1")
    assert code == EXIT_USAGE


def test_schmidt_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "schmidt", "make", "--dim", "4", "--rank", "9", "--seed", "0")
    assert code == EXIT_OK and schmidt_rank(io.load_triple(out)) == 9
    p = tmp_path / "s.json"
    p.write_text(out)
    assert json.loads(run(capsys, "schmidt", "rank", str(p))[1]) == {"rank": 9}
    spec = json.loads(run(capsys, "schmidt", "spectrum", str(p))[1])
    assert spec["rank"] == 9 and abs(sum(x * x for x in spec["coefficients"]) - 16) <= 1e-9
    code, _, _ = run(capsys, "schmidt", "make", "--dim", "2", "--rank", "2", "--seed", "0")
    assert code == EXIT_USAGE


def test_entangle_profile(capsys, triple_file):
    path = triple_file(random_unitary(3, seed=6))
    a = json.loads(run(capsys, "entangle", "profile", path)[1])
    b = json.loads(run(capsys, "entangle", "profile", "--oracle", path)[1])
    assert set(a) == {"e_op", "e_op_swapped", "e_power", "typicality"}
    assert all(abs(a[k] - b[k]) <= 1e-9 for k in a)


def test_entangle_non_unitary(capsys, triple_file):
    t = MatrixTriple(2 * np.eye(2), 2 * np.eye(2), 2 * np.eye(2))
    code, _, err = run(capsys, "entangle", "profile", triple_file(t))
    assert code == EXIT_VALIDATION and "not unitary" in err


def test_hadamardness_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "hadamardness", "min", "--dim", "3", "--workers", "2")
    res = json.loads(out)
    assert code == EXIT_OK and (res["min_value"], res["argmin_count"]) == (33, 6)
    assert "elapsed" not in res
    _, again, _ = run(capsys, "hadamardness", "min", "--dim", "3", "--workers", "2")
    assert again == out
    p = tmp_path / "m.txt"
    p.write_text("+++\n++-\n+-+\n")
    assert json.loads(run(capsys, "hadamardness", "eval", str(p))[1])["h"] == 33
    code, _, err = run(capsys, "hadamardness", "min", "--dim", "7")
    assert code == EXIT_USAGE and "heuristic" in err


def test_discriminate_commands(capsys, triple_file, tmp_path):
    a = triple_file(MatrixTriple.identity(2), "a.json")
    b = triple_file(MatrixTriple.swap(2), "b.json")
    assert json.loads(run(capsys, "discriminate", "k", "--a", a, "--b", b)[1]) == {"k": 1, "k_bound": 1}
    assert json.loads(run(capsys, "discriminate", "k", "--a", a, "--b", a)[1])["k"] == "equal-spectrum"
    summary = tmp_path / "sum.json"
    code, out, _ = run(capsys, "discriminate", "local-range", "--samples", "20", "--seed", "3", "--summary", str(summary), b)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "re,im" and len(lines) == 21
    s = json.loads(summary.read_text())
    assert s["samples"] == 20 and 0 <= s["min_abs"] <= 1
    code, _, _ = run(capsys, "discriminate", "local-range", "--samples", "0", "--seed", "3", b)
    assert code == EXIT_USAGE


def test_discriminate_non_unitary(capsys, triple_file):
    a = triple_file(MatrixTriple.identity(2), "a.json")
    bad = triple_file(MatrixTriple(np.ones((2, 2)), np.ones((2, 2)), np.ones((2, 2))), "bad.json")
    code, _, _ = run(capsys, "discriminate", "k", "--a", a, "--b", bad)
    assert code == EXIT_VALIDATION


def test_stdin_input(capsys, monkeypatch):
    import io as pyio

    monkeypatch.setattr("sys.stdin", pyio.StringIO(io.dump_triple(MatrixTriple.swap(2))))
    code, out, _ = run(capsys, "schmidt", "rank")
    assert code == EXIT_OK and json.loads(out)["rank"] == 4


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys, "schmidt")[0] == EXIT_USAGE
    assert run(capsys, "check", "/no/such/file.json")[0] == EXIT_USAGE


def test_reproduce_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "reproduce", "max-ep", "-o", str(out))
    assert code == EXIT_OK and "[PASS]" in err
    rep = json.loads(out.read_text())
    assert rep["passed"] and rep["suite"] == "max-ep"
    assert {r["kind"] for r in rep["rows"]} == {"reference", "derived"}
    m = rep["manifest"]
    assert m["command_line"][:3] == ["ldoi", "reproduce", "max-ep"]
    out2 = tmp_path / "r2.json"
    run(capsys, "reproduce", "max-ep", "-o", str(out2))
    assert json.loads(out2.read_text())["manifest"]["output_digest"] == m["output_digest"]


def test_reproduce_failure_exit(capsys, tmp_path, monkeypatch):
    from ldoi import cli

    monkeypatch.setitem(cli.SUITES, "max-ep", lambda: [{"quantity": "x", "measured": 1, "expected": 2,
                                                        "kind": "reference", "pass": False}])
    code, _, err = run(capsys, "reproduce", "max-ep", "-o", str(tmp_path / "f.json"))
    assert code == EXIT_TOLERANCE and "[FAIL]" in err


def test_reproduce_unknown(capsys):
    assert run(capsys, "reproduce", "nope")[0] == EXIT_USAGE
