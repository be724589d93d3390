"""End-to-end runs of the command-line interface."""

import json
from pathlib import Path

from finemw.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "sample_inputs"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fine_quadratic_trivial_ideal(capsys):
    code, out, err = run(
        capsys, "fine", "--input", str(SAMPLES / "quadratic.json")
    )
    assert code == 0
    assert "3^0" in out  # the trivial ideal
    assert "lambda = 0" in out


def test_fine_json_report(capsys):
    code, out, _ = run(
        capsys,
        "fine",
        "--input",
        str(SAMPLES / "rational_base.json"),
        "--format",
        "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["fine"]["char_ideal"] == "3^0 * x^1 * Phi(1)^2"
    assert report["growth"]["e"] == [2, 3, 0]
    assert report["assumptions"]["assume_fine_sha_finite"] is True


def test_structured_output_is_byte_deterministic(capsys):
    args = ("pm", "--input", str(SAMPLES / "supersingular.json"), "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_pm_requires_supersingular(capsys):
    code, out, err = run(capsys, "pm", "--input", str(SAMPLES / "rational_base.json"))
    assert code == 1
    assert "supersingular" in err


def test_pm_supersingular_instance(capsys):
    code, out, _ = run(
        capsys, "pm", "--input", str(SAMPLES / "supersingular.json"), "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["pm"]["char_plus"] == "19^0 * x^1"
    assert report["pm"]["char_minus"] == "19^0 * x^1 * Phi(1)^1"
    assert report["pm"]["gcd"] == "19^0 * x^1"


def test_equivariant_subcommand(capsys):
    code, out, _ = run(
        capsys,
        "equivariant",
        "--input",
        str(SAMPLES / "rational_base.json"),
        "--format",
        "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["decomposition"]["summands"] == [
        {"alpha": [], "level": 0, "multiplicity": 1},
        {"alpha": [], "level": 1, "multiplicity": 2},
    ]


def test_equivariant_signed_requires_supersingular(capsys):
    code, _, err = run(
        capsys,
        "equivariant",
        "--sign",
        "+",
        "--input",
        str(SAMPLES / "rational_base.json"),
    )
    assert code == 1
    assert "supersingular" in err


def test_greenberg_and_kp(capsys):
    code, out, _ = run(
        capsys, "greenberg", "--input", str(SAMPLES / "rational_base.json")
    )
    assert code == 0
    assert "3^0 * x^1 * Phi(1)^2" in out
    code, out, _ = run(capsys, "kp", "--input", str(SAMPLES / "rational_base.json"))
    assert code == 0
    assert "3^0 * x^2 * Phi(1)^2" in out


def test_selmer_validate_accept_and_reject(capsys, tmp_path):
    code, out, _ = run(
        capsys,
        "selmer-validate",
        "--input",
        str(SAMPLES / "selmer_shape_ordinary.json"),
    )
    assert code == 0
    assert "ACCEPT" in out

    bad = tmp_path / "bad.json"
    bad.write_text(
        '{"reduction": "ordinary", "cyclo_multi": [[1, 2], [1, 3]]}'
    )
    code, out, _ = run(capsys, "selmer-validate", "--input", str(bad))
    assert code == 1
    assert "REJECT" in out


def test_reps_subcommand(capsys):
    code, out, _ = run(
        capsys, "reps", "--input", str(SAMPLES / "quadratic.json"), "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["order"] == 2
    assert report["dimension_sum"] == 2


def test_check_subcommand(capsys):
    code, out, _ = run(capsys, "check", "--input", str(SAMPLES / "quadratic.json"))
    assert code == 0
    assert "star condition: pass" in out


def test_fetch_offline_fixture(capsys):
    code, out, _ = run(capsys, "fetch", "11a1", "--offline", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["conductor"] == 11
    assert report["source"] == "fixture"


def test_fetch_unknown_label(capsys):
    code, _, err = run(capsys, "fetch", "zzz999", "--offline")
    assert code == 1
    assert "zzz999" in err


def test_usage_error_exit_code(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys)[0] == 2


def test_max_level_truncation(capsys):
    code, out, _ = run(
        capsys,
        "fine",
        "--input",
        str(SAMPLES / "rational_base.json"),
        "--max-level",
        "1",
        "--format",
        "json",
    )
    assert code == 0
    assert json.loads(out)["growth"]["e"] == [2, 3]


def test_inconsistent_table_is_validation_failure(capsys, tmp_path):
    doc = {
        "p": 3,
        "group": [],
        "conductor": 1,
        "max_level": 1,
        "ranks": {"": [1, 2]},
    }
    path = tmp_path / "bad_instance.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "fine", "--input", str(path))
    assert code == 1
    assert "alpha" in err


def test_verify_oracles_small(capsys):
    code, out, _ = run(capsys, "verify-oracles", "--max-order", "12")
    assert code == 0
    assert out.count("ok ") == 6
