import json

import pytest

from flatorb.cli import main
from flatorb.groups import dump_group
from flatorb.catalog import catalog_get


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_teich_g3(capsys):
    code, out, _ = run(capsys, "teich", "--catalog", "G3")
    assert code == 0
    assert out.strip() == "components: (m=1,R,d=1),(m=1,C,d=1); dim 2"


def test_teich_json_roundtrip_and_determinism(capsys):
    code, out1, _ = run(capsys, "teich", "--catalog", "G6", "--json")
    assert code == 0
    doc = json.loads(out1)
    assert doc["dim"] == 3
    code, out2, _ = run(capsys, "teich", "--catalog", "G6", "--json")
    assert out1 == out2


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "--catalog", "G6")
    assert code == 0
    assert "holonomy order: 4" in out
    assert "torsion-free: yes" in out
    assert "b1=0" in out


def test_collapse_cli(capsys):
    code, out, _ = run(capsys, "collapse", "--catalog", "G3", "--subspace", "1,0,0")
    assert code == 0
    assert "S2(3,3,3;)" in out


def test_collapse_irrational_subspace(capsys):
    code, out, _ = run(capsys, "collapse", "--catalog", "G2", "--subspace", "0,1.0,1.7320508075688772")
    assert code == 0
    assert "circle" in out


def test_classify2_cli(capsys):
    code, out, _ = run(capsys, "classify2", "--catalog", "p4g")
    assert code == 0
    assert "p4g" in out and "D2(4;2)" in out


def test_reduce_lattice(capsys):
    code, out, _ = run(capsys, "reduce-lattice", "1,0;0.9,0.1")
    assert code == 0
    assert "R0" in out
    doc_code, json_out, _ = run(capsys, "reduce-lattice", "1,0;0.9,0.1", "--json")
    doc = json.loads(json_out)
    # the lattice contains (-0.1, 0.1) and (0.5, 0.5): an orthogonal basis
    assert doc["R0"] == pytest.approx(2 ** 0.5 / 2, abs=1e-9)


def test_limit_seq(capsys):
    code, out, _ = run(
        capsys,
        "limit-seq",
        "--lattice", "1,0;0,1",
        "--subspace", "0,1",
        "--schedule", "1,0.5,0.1,0.01,0.001",
    )
    assert code == 0
    assert "limit dimension: 1" in out


def test_verify_theorem_c_cli(capsys):
    code, out, _ = run(capsys, "verify-theorem-c")
    assert code == 0
    assert "PASS" in out
    assert "13" in out


def test_catalog_listing_and_entry(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "G6" in out.split()
    code, out, _ = run(capsys, "catalog", "G6")
    assert code == 0
    assert "teich_dim: 3" in out


def test_render_svg_cli(tmp_path, capsys):
    out_path = tmp_path / "p2.svg"
    code, out, _ = run(capsys, "render-svg", "--catalog", "p2", "--out", str(out_path))
    assert code == 0
    assert out_path.exists()


def test_resolve_cli(tmp_path, capsys):
    orb = tmp_path / "orb.json"
    dump_group(catalog_get("p2").group, orb)
    code, out, _ = run(capsys, "resolve", "--orbifold", str(orb), "--manifold", "catalog:pg")
    assert code == 0
    assert "dim 4" in out


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "catalog", "nope")
    assert code == 1
    assert "error" in err


def test_group_file_loading(tmp_path, capsys):
    path = tmp_path / "kb.json"
    path.write_text(
        json.dumps(
            {
                "dimension": 2,
                "generators": [
                    {"linear": [[1, 0], [0, -1]], "translation": ["1/2", "0"]}
                ],
            }
        )
    )
    code, out, _ = run(capsys, "classify2", "--group", str(path))
    assert code == 0
    assert "pg" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["collapse", "--catalog", "G3"])  # missing --subspace
    assert exc.value.code == 2
