import json

import pytest

from hhb.cli import run
from hhb.fileformat import serialize_support
from hhb.multiset import Multiset


@pytest.fixture
def frankl_file(tmp_path):
    path = tmp_path / "frankl.json"
    assert run(["catalog", "frankl-biased", "--p", "0.6", "-o", str(path)]) == 0
    return path


@pytest.fixture
def mantel_file(tmp_path):
    path = tmp_path / "mantel.json"
    assert run(["catalog", "mantel", "--m", "2", "-o", str(path)]) == 0
    return path


def _json_output(capsys):
    return json.loads(capsys.readouterr().out)


def test_catalog_reports_pass(tmp_path, capsys):
    path = tmp_path / "kwise.json"
    assert run(["catalog", "kwise", "--k", "3", "--p", "0.6", "-o", str(path)]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "FAIL" not in out
    assert path.exists()


def test_catalog_json(capsys):
    assert run(["catalog", "ekr", "--p", "0.3", "--json"]) == 0
    document = _json_output(capsys)
    assert document["passed"] is True
    assert document["written"] == []


def test_catalog_linear_equations(capsys):
    code = run(["catalog", "linear", "--q", "3", "--equation", "1,1,1=0", "--json"])
    assert code == 0
    assert _json_output(capsys)["checks"] == []


def test_catalog_errors(capsys):
    assert run(["catalog", "petersen"]) == 2
    assert run(["catalog", "ekr", "--p", "0.9"]) == 2
    assert run(["catalog", "ekr"]) == 2
    assert "error" in capsys.readouterr().err


def test_info(frankl_file, capsys):
    assert run(["info", str(frankl_file)]) == 0
    assert "k=3, |V|=2, |X^(2)|=3, |X^(1)|=2" in capsys.readouterr().out


def test_info_kpartite(mantel_file, capsys):
    kpartite = mantel_file.with_name("mantel.kpartite.json")
    assert kpartite.exists()
    assert run(["info", "--kpartite", str(kpartite)]) == 0
    out = capsys.readouterr().out
    assert "4, 4, 4" in out
    assert "|V|=12" in out


def test_bound(frankl_file, capsys):
    assert run(["bound", str(frankl_file)]) == 0
    out = capsys.readouterr().out
    assert "bound = 0.600000000" in out
    assert "-0.250000000" in out


def test_bound_json(frankl_file, capsys):
    assert run(["bound", str(frankl_file), "--json"]) == 0
    document = _json_output(capsys)
    assert document["bound"] == pytest.approx(0.6)
    assert document["lambdas"] == pytest.approx([-0.25, -1.0])
    assert document["witnesses"] == [[], [1]]


def test_bound_tensor(frankl_file, capsys):
    assert run(["bound", str(frankl_file), "--tensor", "10", "--json"]) == 0
    assert _json_output(capsys)["bound"] == pytest.approx(0.6)


def test_bound_symmetry(mantel_file, capsys):
    symmetry = mantel_file.with_name("mantel.symmetry.json")
    assert run(["bound", str(mantel_file), "--symmetry", str(symmetry), "--json"]) == 0
    document = _json_output(capsys)
    assert document["bound"] == pytest.approx(0.5, abs=1e-9)
    assert document["conditional_symmetry"] is True


def test_symmetry_and_tensor_conflict(mantel_file):
    symmetry = mantel_file.with_name("mantel.symmetry.json")
    argv = ["bound", str(mantel_file), "--symmetry", str(symmetry), "--tensor", "2"]
    assert run(argv) == 1


def test_symmetry_violation(frankl_file, tmp_path, capsys):
    generators = tmp_path / "swap.json"
    generators.write_text('{"generators": [[1, 0]]}', encoding="utf-8")
    assert run(["bound", str(frankl_file), "--symmetry", str(generators)]) == 4
    assert "error" in capsys.readouterr().err


def test_symmetry_of_the_wrong_size_is_invalid_input(mantel_file, tmp_path, capsys):
    generators = tmp_path / "short.json"
    generators.write_text('{"generators": [[1, 0]]}', encoding="utf-8")
    assert run(["bound", str(mantel_file), "--symmetry", str(generators)]) == 2
    assert "permutation of 0..11" in capsys.readouterr().err


def test_eigs(tmp_path, capsys):
    path = tmp_path / "frankl-uniform.json"
    argv = ["catalog", "frankl-uniform", "--n", "7", "--k", "2", "-o", str(path)]
    assert run(argv) == 0
    capsys.readouterr()
    assert run(["eigs", str(path), "--level", "0"]) == 0
    assert "-0.166666667" in capsys.readouterr().out
    assert run(["eigs", str(path), "--level", "1", "--json"]) == 0
    assert _json_output(capsys)["levels"][0]["value"] == pytest.approx(-1.0)
    assert run(["eigs", str(path), "--level", "2"]) == 2


def test_alpha(frankl_file, capsys):
    assert run(["alpha", str(frankl_file)]) == 0
    out = capsys.readouterr().out
    assert "alpha = 0.600000000" in out
    assert "{1}" in out
    assert run(["alpha", str(frankl_file), "--cap", "1"]) == 3


def test_tensor_of_one_copies_the_canonical_file(frankl_file, tmp_path):
    output = tmp_path / "copy.json"
    assert run(["tensor", str(frankl_file), "-n", "1", "-o", str(output)]) == 0
    assert output.read_bytes() == frankl_file.read_bytes()


def test_tensor_square_matches_the_shortcut(frankl_file, tmp_path, capsys):
    square = tmp_path / "square.json"
    assert run(["tensor", str(frankl_file), "-n", "2", "-o", str(square)]) == 0
    capsys.readouterr()
    assert run(["bound", str(square), "--json"]) == 0
    explicit = _json_output(capsys)["bound"]
    assert run(["bound", str(frankl_file), "--tensor", "2", "--json"]) == 0
    assert explicit == pytest.approx(_json_output(capsys)["bound"], abs=1e-8)


def test_tensor_cap(frankl_file, tmp_path):
    output = tmp_path / "big.json"
    argv = ["tensor", str(frankl_file), "-n", "3", "-o", str(output), "--cap", "5"]
    assert run(argv) == 3
    assert not output.exists()


def _support_file(tmp_path, name, faces, nu):
    path = tmp_path / name
    vertices = tuple(str(v) for v in range(len(nu)))
    path.write_text(
        serialize_support(vertices, [Multiset.of(f) for f in faces], nu),
        encoding="utf-8",
    )
    return path


def test_optimize(tmp_path, capsys):
    cycle = [(i, (i + 1) % 5) for i in range(5)]
    path = _support_file(tmp_path, "c5.json", cycle, [0.2] * 5)
    output = tmp_path / "c5-weights.json"
    argv = ["optimize", str(path), "--restarts", "2", "-o", str(output), "--json"]
    assert run(argv) == 0
    document = _json_output(capsys)
    assert document["bound"] == pytest.approx(0.447214, abs=1e-6)
    assert output.exists()


def test_optimize_is_deterministic(tmp_path, capsys):
    faces = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    path = _support_file(tmp_path, "pairs.json", faces, [0.5, 0.3, 0.2])
    argv = ["optimize", str(path), "--restarts", "2", "--iters", "100", "--seed", "7"]
    argv.append("--json")
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_optimize_infeasible(tmp_path):
    path = _support_file(tmp_path, "loop.json", [(0, 0)], [0.5, 0.5])
    assert run(["optimize", str(path)]) == 3


def test_input_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"k": 2, "vertices": ["a", "b"], "faces": []}', encoding="utf-8")
    assert run(["bound", str(broken)]) == 2
    assert run(["info", str(tmp_path / "missing.json")]) == 2


def test_usage_errors(frankl_file, capsys):
    assert run([]) == 1
    assert run(["frobnicate"]) == 1
    assert run(["tensor", str(frankl_file), "-n", "0", "-o", "x.json"]) == 1
    assert run(["optimize", str(frankl_file), "--step-scale", "-1"]) == 1
    assert "usage" in capsys.readouterr().err
