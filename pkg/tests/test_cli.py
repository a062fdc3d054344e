import io
import json

import pytest

from bicoeff.cli import CSV_HEADER, main, render_json


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_bounds_text_alpha():
    code, text = run(["bounds", "--family", "alpha", "--alpha", "1", "--lambda", "1", "--mu", "1", "--delta", "0"])
    assert code == 0
    assert "0.8164965809" in text and "1.6666666667" in text


def test_bounds_text_beta_branches():
    code, text = run(["bounds", "--family", "beta", "--beta", "1/2"])
    assert code == 0
    assert "0.5000000000  [linear-form]" in text
    assert "[mu-ge-1]" in text


def test_bounds_json_round_trip():
    code, text = run(["bounds", "--family", "alpha", "--alpha", "1/2", "--lambda", "2", "--delta", "1",
                      "--format", "json"])
    assert code == 0
    assert render_json(json.loads(text)) == text
    assert json.loads(text)["params"]["xi"] == "1"


def test_bad_parameters_exit_with_usage_code(capsys):
    code, _ = run(["bounds", "--family", "alpha", "--alpha", "0"])
    assert code == 2
    assert "error: alpha must satisfy 0 < alpha <= 1" in capsys.readouterr().err
    code, _ = run(["bounds", "--family", "alpha", "--alpha", "1", "--lambda", "1/2"])
    assert code == 2
    assert "lambda must be >= 1" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--family", "gamma"], io.StringIO())
    assert exc.value.code == 2


def test_verify_inverse():
    code, text = run(["verify", "inverse"])
    assert code == 0 and text.strip().endswith("3/3 identities pass")


def test_verify_json():
    code, text = run(["verify", "corollaries", "--format", "json"])
    doc = json.loads(text)
    assert code == 0 and doc["passed"] == doc["total"]


def test_verify_reports_failures(monkeypatch):
    from bicoeff import verify as vfy
    original = vfy.published_operator_coefficients

    def broken(params):
        co = dict(original(params))
        key = sorted(co)[-1]
        co[key] = co[key] + 1
        return co

    monkeypatch.setattr(vfy, "published_operator_coefficients", broken)
    code, text = run(["verify", "identities", "--trials", "5"])
    assert code == 1 and "FAIL" in text


def test_sample_csv_header_and_forced_candidate(tmp_path):
    path = tmp_path / "s.csv"
    code, text = run(["sample", "--family", "alpha", "--alpha", "1", "--trials", "1",
                      "--force-schwarz", "zero", "--angles", "90", "--format", "csv", "--out", str(path)])
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    row = dict(zip(CSV_HEADER, lines[1].split(",")))
    assert row["accepted"] == "true" and float(row["a2_abs"]) == 0.0
    assert "trials=1 accepted=1" in text


def test_sample_csv_is_byte_identical(tmp_path):
    argv = ["sample", "--family", "beta", "--beta", "1/2", "--lambda", "2", "--trials", "6",
            "--seed", "11", "--angles", "120", "--format", "csv"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(argv + ["--out", str(first)])[0] == 0
    assert run(argv + ["--out", str(second)])[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_sample_format_follows_extension(tmp_path):
    base = ["sample", "--family", "alpha", "--alpha", "1", "--trials", "1", "--angles", "60"]
    run(base + ["--out", str(tmp_path / "r.csv")])
    run(base + ["--out", str(tmp_path / "r.json")])
    assert (tmp_path / "r.csv").read_text().startswith("trial,family,")
    assert json.loads((tmp_path / "r.json").read_text())["summary"]["trials"] == 1


def test_sample_unwritable_output(tmp_path):
    code, _ = run(["sample", "--family", "alpha", "--alpha", "1", "--trials", "1", "--angles", "60",
                   "--out", str(tmp_path / "missing" / "x.csv")])
    assert code == 3


def test_sample_rejects_bad_schwarz():
    code, _ = run(["sample", "--family", "alpha", "--alpha", "1", "--force-schwarz", "spiral"])
    assert code == 2


def test_table_and_invert():
    code, text = run(["table", "--values", "9/10"])
    assert code == 0 and "beta-bistarlike" in text
    code, text = run(["invert", "--coeffs", "1,1,1"])
    assert code == 0
    code, text = run(["invert", "--coeffs", "1,1,1", "--format", "json"])
    assert render_json(json.loads(text)) == text
    assert json.loads(text)["inverse"] == {"b2": "-1", "b3": "1", "b4": "-1"}
