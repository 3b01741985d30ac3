import json
from pathlib import Path

import pytest

from dualdepth.cli import main
from dualdepth.generators import gen_lines_general_position, gen_point_set, gen_simplex_facet_bodies, gen_slab_instance
from dualdepth.io import load_family, serialize_family
from dualdepth.reports import (
    central_point_report, depth_report, dump_report, helly_report, lemma5_report, partition_report,
    pik_report, surround_report, transversal_report, tukey_report, verify_report,
)

FIXTURES = Path(__file__).parent / "fixtures"
TRI = str(FIXTURES / "tri.json")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_central_point_json(capsys):
    code, out = run(capsys, "central-point", "--family", TRI, "--json")
    rep = json.loads(out.out)
    assert code == 0 and rep["certificate"]["bound_met"]
    assert rep["certificate"]["required"] == 1 and rep["certificate"]["depth"]["value"] == 2
    assert set(rep) >= {"operation", "input_digest", "certificate", "verification", "caps", "seed"}


def test_check_pik_failure_prints_witness(capsys):
    code, out = run(capsys, "check-pik", "--family", TRI, "-k", "3")
    assert code == 1 and "[0, 1, 2]" in out.out
    assert run(capsys, "check-pik", "--family", TRI, "-k", "2")[0] == 0


def test_partition_report_verifies(capsys, tmp_path):
    part = tmp_path / "part.json"
    assert run(capsys, "partition", "--family", TRI, "-r", "1", "--out", str(part))[0] == 0
    code, out = run(capsys, "verify", "--report", str(part), "--family", TRI)
    assert code == 0 and "valid" in out.out


def test_verify_rejects_tampering(capsys, tmp_path):
    rep_path = tmp_path / "d.json"
    run(capsys, "depth", "--family", TRI, "--x", "4/3,1", "--out", str(rep_path))
    rep = json.loads(rep_path.read_text())
    rep["certificate"]["value"] = 0
    rep["certificate"]["hit_set"] = []
    rep_path.write_text(json.dumps(rep))
    assert run(capsys, "verify", "--report", str(rep_path), "--family", TRI)[0] == 1
    other = tmp_path / "other.json"
    other.write_text(serialize_family(gen_lines_general_position(3)))
    code, out = run(capsys, "verify", "--report", str(rep_path), "--family", str(other))
    assert code == 1 and "digest" in out.out


def test_surround_and_oracle_flag(capsys):
    code, out = run(capsys, "surround", "--family", TRI, "--sub", "0,1,2", "--x", "4/3,1", "--grid-step", "1/16")
    assert code == 0 and "'escapes': False" in out.out
    assert run(capsys, "surround", "--family", TRI, "--sub", "0,1,2", "--x", "9,9")[0] == 1


def test_usage_and_cap_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["depth", "--family", TRI])
    assert exc.value.code == 2
    assert run(capsys, "depth", "--family", str(tmp_path / "missing.json"), "--x", "0,0")[0] == 2
    big = tmp_path / "big.json"
    big.write_text(serialize_family(gen_lines_general_position(8, seed=1)))
    code, out = run(capsys, "central-point", "--family", str(big), "--max-hyperplanes", "5")
    assert code == 2 and "cap" in out.err
    assert run(capsys, "partition", "--family", str(big), "-r", "1", "--max-bodies", "3")[0] == 2
    assert run(capsys, "surround", "--family", TRI, "--sub", "7", "--x", "0,0")[0] == 2


def test_gen_replicate_render(capsys, tmp_path):
    fam_path = tmp_path / "lines.json"
    assert run(capsys, "gen", "lines", "-n", "4", "--seed", "3", "--out", str(fam_path))[0] == 0
    assert len(load_family(fam_path)) == 4
    rep_path = tmp_path / "rep.json"
    run(capsys, "replicate", "--family", str(fam_path), "-k", "2", "--out", str(rep_path))
    assert len(load_family(rep_path)) == 8
    report = tmp_path / "cp.json"
    run(capsys, "central-point", "--family", str(fam_path), "--out", str(report))
    svg1, svg2 = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "render", "--family", str(fam_path), "--report", str(report), "--out", str(svg1))
    run(capsys, "render", "--family", str(fam_path), "--report", str(report), "--out", str(svg2))
    assert svg1.read_bytes() == svg2.read_bytes() and b'id="star"' in svg1.read_bytes()


def test_gen_is_byte_deterministic(capsys, tmp_path):
    outs = []
    for name in ("a", "b"):
        path = tmp_path / f"{name}.json"
        run(capsys, "gen", "mix", "--seed", "17", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_slab_transversal_and_tukey(capsys, tmp_path):
    prefix = tmp_path / "slab"
    run(capsys, "gen", "slab", "--seed", "2", "--out", str(prefix))
    fams = [str(tmp_path / "slab.0.json"), str(tmp_path / "slab.1.json")]
    tr = tmp_path / "tr.json"
    assert run(capsys, "transversal", "-m", "1", "--family", fams[0], "--family", fams[1], "--out", str(tr))[0] == 0
    assert run(capsys, "verify", "--report", str(tr), "--family", fams[0], "--family", fams[1])[0] == 0
    pts = tmp_path / "p.json"
    run(capsys, "gen", "points", "-n", "7", "--seed", "1", "--out", str(pts))
    tk = tmp_path / "t.json"
    assert run(capsys, "tukey", "--points", str(pts), "--out", str(tk))[0] == 0
    assert run(capsys, "verify", "--report", str(tk), "--points", str(pts))[0] == 0


def test_every_emitted_report_verifies(triangle_edges, nested_triangles):
    thick = gen_simplex_facet_bodies(2, "1/10")
    corpus = [
        ([triangle_edges], pik_report(triangle_edges, 2)),
        ([triangle_edges], pik_report(triangle_edges, 3)),
        ([triangle_edges], helly_report(triangle_edges)),
        ([thick], helly_report(thick)),
        ([triangle_edges], depth_report(triangle_edges, (0, 0))),
        ([nested_triangles], central_point_report(nested_triangles)),
        ([nested_triangles], partition_report(nested_triangles, 2, ("3/2", "3/2"))),
        ([triangle_edges], partition_report(triangle_edges, 3)),
        ([triangle_edges], surround_report(triangle_edges, [0, 1, 2], ("4/3", 1))),
        ([triangle_edges], surround_report(triangle_edges, [0, 1], ("4/3", 1))),
        ([thick], lemma5_report(thick, (1, 1))),
        ([triangle_edges], lemma5_report(triangle_edges, (9, 9))),
        (list(gen_slab_instance(4)), transversal_report(list(gen_slab_instance(4)), 1)),
    ]
    for fams, rep in corpus:
        assert rep["verification"]["ok"], rep["operation"]
        assert verify_report(json.loads(dump_report(rep)), fams), rep["operation"]
    pts = gen_point_set(9, 2, 5)
    assert verify_report(tukey_report(pts), points=pts)
