import json

import pytest

from prismhom import algebra, cli
from prismhom.cli import main, verify_structure
from prismhom.knots import load_fixture_diagram, save_diagram
from prismhom.prismatic import build_rack_complex


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    paths = {}
    algebra.save_structure(algebra.conj_symmetric(3), root / "s3.json")
    algebra.save_structure(algebra.conj_cyclic(2), root / "z2.json")
    (root / "spindleless.json").write_text(json.dumps(
        {"size": 2, "dot": [[0, 1], [1, 0]], "tri": [[0, 0], [0, 0]]}))
    (root / "broken.json").write_text("{nope")
    save_diagram(load_fixture_diagram("trefoil"), root / "trefoil.json")
    paths.update({name: str(root / f"{name}.json")
                  for name in ("s3", "z2", "spindleless", "broken", "trefoil")})
    paths["root"] = root
    return paths


def test_axioms_exit_codes(files, capsys):
    assert main(["axioms", files["s3"], "--require", "qualgebra"]) == 0
    out = capsys.readouterr().out
    assert "satisfied" in out and "FAIL" not in out
    assert main(["axioms", files["spindleless"], "--require", "quandle"]) == 1
    out = capsys.readouterr().out
    assert "witness=(1,)" in out
    assert main(["axioms", files["broken"]]) == 2
    assert main(["axioms", str(files["root"] / "missing.json")]) == 2


def test_axioms_json_format(files, capsys):
    assert main(["axioms", files["s3"], "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["satisfied"] is True
    assert data["classification"]["pair"] == "qualgebra"
    assert set(data["axioms"]) == set("H YI IY III II I T".split())


def test_homology_outputs_are_deterministic(files, capsys):
    args = ["homology", files["z2"], "--theory", "prismatic",
            "--max-degree", "3", "--format", "json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data["groups"] == [
        {"degree": 1, "free_rank": 0, "torsion": [2]},
        {"degree": 2, "free_rank": 0, "torsion": [2]},
    ]


def test_homology_truncation_flag(files, capsys):
    assert main(["homology", files["z2"], "--max-degree", "2",
                 "--allow-truncation", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [g["degree"] for g in data["groups"]] == [1, 2]


def test_homology_rack_theory_matches_direct_build(files, capsys, z2):
    assert main(["homology", files["z2"], "--theory", "rack",
                 "--max-degree", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    K = build_rack_complex(z2, 3)
    for entry in data["groups"]:
        g = K.homology(entry["degree"])
        assert entry["free_rank"] == g.free_rank
        assert entry["torsion"] == list(g.torsion)


def test_homology_input_error_exit_code(files):
    assert main(["homology", files["broken"], "--max-degree", "2"]) == 2


def test_homology_refuses_wrong_theory_axioms(files, tmp_path):
    # a shalgebra that is not a qualgebra is refused by the extended theory
    path = tmp_path / "shalg.json"
    path.write_text(json.dumps(
        {"size": 2, "dot": [[0, 1], [1, 0]], "tri": [[0, 0], [0, 0]]}))
    assert main(["homology", str(path), "--theory", "qualgebra",
                 "--max-degree", "2"]) == 1


def test_invariant_command(files, capsys):
    assert main(["invariant", files["s3"], files["trefoil"], "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["coloring_count"] == 12
    assert len(data["classes"]) == 12


def test_invariant_requires_qualgebra(files, capsys):
    assert main(["invariant", files["spindleless"], files["trefoil"]]) == 1


def test_verify_command(files, capsys):
    assert main(["verify", files["z2"], "--max-degree", "4"]) == 0
    out = capsys.readouterr().out
    assert "boundary-squared: ok" in out
    assert "symbolic expansions: ok" in out
    assert "geometric faces: ok" in out


def test_verify_fault_injection(z2):
    # the test hook plants one wrong coefficient; the battery must notice
    K_probe = __import__("prismhom.prismatic", fromlist=["build_complex"])
    complex_ = K_probe.build_complex(z2, 3, mode="qualgebra")
    target = next(i for i in range(complex_.cc.count(2))
                  if complex_.cc.boundaries[2][i])
    ok, lines = verify_structure(z2, 3, _corrupt=(3, 5, target, 1))
    assert not ok
    assert any("boundary-squared: FAIL" in line for line in lines)


def test_export_prism(files, capsys, tmp_path):
    out = tmp_path / "prism.json"
    assert main(["export-prism", files["z2"], "--partition", "2,1",
                 "--elements", "0,1,1", "--out", str(out)]) == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    assert data["partition"] == [2, 1]
    assert len(data["vertices"]) == 6
    assert main(["export-prism", files["z2"], "--partition", "2",
                 "--elements", "0,1,1"]) == 2


def test_export_matrices(files, capsys, tmp_path):
    out = tmp_path / "triplets.txt"
    assert main(["export-matrices", files["z2"], "--max-degree", "2",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    lines = out.read_text().strip().splitlines()
    assert lines and all(len(line.split()) == 4 for line in lines)


def test_jobs_env_override(files, capsys, monkeypatch):
    monkeypatch.setenv("PRISMHOM_JOBS", "2")
    assert main(["homology", files["z2"], "--max-degree", "2",
                 "--allow-truncation"]) == 0
    capsys.readouterr()
    monkeypatch.setenv("PRISMHOM_JOBS", "nope")
    assert main(["homology", files["z2"], "--max-degree", "2",
                 "--allow-truncation"]) == 2
