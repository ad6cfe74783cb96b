import json

from quivrad.cli import main

from conftest import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, err = run(capsys, "validate", fixture_path("s2_cyclic"))
    assert code == 0
    assert "admissible: True" in out
    assert "nilpotency_degree: 4" in out


def test_validate_rejects_short_relation(capsys):
    code, out, err = run(capsys, "validate", fixture_path("bad_length1"))
    assert code == 2
    assert "NotAdmissible" in err


def test_missing_file_is_io_error(capsys):
    code, out, err = run(capsys, "validate", "no_such_file.quiver")
    assert code == 1


def test_syntax_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex 1 2\narrow a 1 2\nrelation a*?\n")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "line 3" in err


def test_index_direct_text_and_json(capsys):
    code, out, _ = run(capsys, "index", fixture_path("s2_cyclic"), "--method", "direct")
    assert code == 0
    assert "r_A: 15" in out
    code, out, _ = run(capsys, "index", fixture_path("s2_cyclic"),
                       "--method", "zero-relations", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["r_A"] == 15
    assert data["per_vertex"] == {"1": 14, "2": 14}
    assert data["direct_r_A"] == 15  # default verification below the size threshold


def test_index_auto_selects_reduction(capsys):
    code, out, _ = run(capsys, "index", fixture_path("a3"), "--method", "auto")
    assert code == 0
    assert "note: selected v-set" in out


def test_index_inapplicable_method_exits_4(capsys):
    # fails fast on the monomial gate, before any enumeration
    code, out, err = run(capsys, "index", fixture_path("ex_2_5"),
                         "--method", "zero-relations")
    assert code == 4
    assert "MethodInapplicable" in err


def test_index_v_set_inapplicable_on_a2(capsys):
    code, out, err = run(capsys, "index", fixture_path("a2"), "--method", "v-set")
    assert code == 4


def test_ar_summary_and_artifacts(tmp_path, capsys):
    code, out, _ = run(capsys, "ar", fixture_path("a2"))
    assert code == 0
    assert "indecomposables: 3" in out
    dot_file = tmp_path / "a2.dot"
    json_file = tmp_path / "a2.json"
    code, _, _ = run(capsys, "ar", fixture_path("a2"), "--dot", str(dot_file),
                     "--json", str(json_file))
    assert code == 0
    dot = dot_file.read_text()
    assert dot.startswith("digraph ar_quiver {")
    data = json.loads(json_file.read_text())
    assert len(data["nodes"]) == 3


def test_ar_output_deterministic(capsys):
    code1, out1, _ = run(capsys, "ar", fixture_path("s3_cycle"), "--dot")
    code2, out2, _ = run(capsys, "ar", fixture_path("s3_cycle"), "--dot")
    assert code1 == code2 == 0
    assert out1 == out2


def test_ar_dot_node_count_on_cyclic_fixture(capsys):
    code, out, _ = run(capsys, "ar", fixture_path("s2_cyclic"), "--dot")
    assert code == 0
    node_lines = [l for l in out.splitlines()
                  if l.startswith('  "') and "->" not in l]
    assert len(node_lines) == 24


def test_ar_kronecker_limits_exit_3(capsys):
    code, out, err = run(capsys, "ar", fixture_path("kronecker"),
                         "--max-total-dim", "60")
    assert code == 3
    assert "representation-infinite" in err


def test_check_corollary_text(capsys):
    code, out, _ = run(capsys, "check", fixture_path("s2_cyclic"),
                       "--theorem", "corollary")
    assert code == 0
    assert "arrow gamma (2->3): r_b<=r_a" in out


def test_check_d_refuses_final_example(capsys):
    code, out, err = run(capsys, "check", fixture_path("s4_final"), "--theorem", "D")
    assert code == 4
    assert "MethodInapplicable" in err


def test_check_b_fallback_report(capsys):
    code, out, _ = run(capsys, "check", fixture_path("a3"), "--theorem", "B")
    assert code == 0
    assert "no zero-relation vertices" in out


def test_check_all_json(capsys):
    code, out, _ = run(capsys, "check", fixture_path("a3_rel"),
                       "--theorem", "all", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"corollary", "A", "prop33", "B", "C", "D",
                         "lemma32", "lemma_refe"}
    assert "inapplicable" in data["D"]
    assert data["B"]["r_A"] == data["C"]["r_A"]


def test_check_json_deterministic(capsys):
    args = ("check", fixture_path("s2_cyclic"), "--theorem", "prop33", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_output_file_writing(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "index", fixture_path("a2"), "--method", "direct",
                       "--format", "json", "-o", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["r_A"] == 2
