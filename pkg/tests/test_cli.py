import json
from importlib import resources

import jsonschema
import pytest

from whitmod import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def load_schema(name):
    text = resources.files("whitmod.schemas").joinpath(name).read_text()
    return json.loads(text)


VERMA2 = {
    "schema_version": 1,
    "root_system": {"type": "A", "rank": 1},
    "family": "verma",
    "lambda": ["2"],
    "truncation": {"depth": 8, "factor_deg": 8, "window": 3},
}


def test_roots_json(capsys):
    code, out, err = run(capsys, "roots", "--type", "A", "--rank", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "A" and doc["rank"] == 2
    assert len(doc["positive_roots"]) == 3
    # antisymmetric constant table over signed index triples
    triples = {(i, j): n for i, j, n in doc["structure_constants"]}
    for (i, j), n in triples.items():
        assert triples[(j, i)] == -n


def test_roots_unsupported_exit_2(capsys):
    code, out, err = run(capsys, "roots", "--type", "E", "--rank", "8")
    assert code == 2
    assert "envelope" in err


def test_certify_report_and_exit(tmp_path, capsys):
    cfg = write_config(tmp_path, VERMA2)
    out_path = tmp_path / "report.json"
    code, out, err = run(capsys, "certify", "--config", cfg, "--out", str(out_path))
    assert code == 0
    assert "NOT_SIMPLE dim=2" in out
    doc = json.loads(out_path.read_text())
    jsonschema.validate(doc, load_schema("report.schema.json"))
    assert doc["verdict"] == "NOT_SIMPLE"
    assert doc["dim_lower_bound"] == 2
    assert len(doc["witnesses"]) == 1


def test_certify_golden_determinism(tmp_path, capsys):
    cfg = write_config(tmp_path, VERMA2)
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(capsys, "certify", "--config", cfg, "--out", str(p1))[0] == 0
    assert run(capsys, "certify", "--config", cfg, "--out", str(p2))[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_certify_truncation_overrides(tmp_path, capsys):
    cfg = write_config(tmp_path, VERMA2)
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "certify", "--config", cfg, "--out", str(out_path),
        "--depth", "5", "--factor-deg", "5",
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["truncation"]["depth"] == 5


def test_certify_seeded_generic(tmp_path, capsys):
    cfg_doc = {
        "schema_version": 1,
        "root_system": {"type": "A", "rank": 2},
        "family": "mcdowell",
        "psi": ["1", "0"],
        "omega": ["generic"],
        "casimirs": {"0": "generic"},
        "truncation": {"depth": 5, "factor_deg": 5, "window": 2},
    }
    cfg = write_config(tmp_path, cfg_doc)
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(capsys, "certify", "--config", cfg, "--seed", "7", "--out", str(p1))
    run(capsys, "certify", "--config", cfg, "--seed", "7", "--out", str(p2))
    assert p1.read_bytes() == p2.read_bytes()
    doc = json.loads(p1.read_text())
    assert doc["verdict"] == "SIMPLE_UPTO"


def test_config_errors_name_field(tmp_path, capsys):
    bad = dict(VERMA2, **{"lambda": ["0.5"]})
    code, out, err = run(capsys, "certify", "--config", write_config(tmp_path, bad))
    assert code == 2
    assert "lambda" in err
    missing = {k: v for k, v in VERMA2.items() if k != "lambda"}
    code, out, err = run(capsys, "certify", "--config", write_config(tmp_path, missing))
    assert code == 2
    assert "lambda" in err
    stale = dict(VERMA2, schema_version=99)
    code, out, err = run(capsys, "certify", "--config", write_config(tmp_path, stale))
    assert code == 2
    assert "schema_version" in err


def test_config_schema_accepts_examples(tmp_path):
    schema = load_schema("config.schema.json")
    jsonschema.validate(VERMA2, schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"schema_version": 1}, schema)


def test_sweep_csv(tmp_path, capsys):
    doc = {
        "schema_version": 1,
        "root_system": {"type": "A", "rank": 1},
        "family": "verma",
        "grid": {"lambda": ["3", "-1", "1/2"]},
        "truncation": {"depth": 8, "factor_deg": 8, "window": 3},
    }
    cfg = write_config(tmp_path, doc)
    out_path = tmp_path / "sweep.csv"
    code, out, err = run(capsys, "sweep", "--config", cfg, "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "params,dim,verdict,stabilized,error"
    assert lines[1] == "3,2,NOT_SIMPLE,true,"
    assert lines[2] == "-1,1,SIMPLE_UPTO,true,"
    assert lines[3] == "1/2,1,SIMPLE_UPTO,true,"
    assert "dim>=2 at: 3" in err


def test_sweep_empty_grid_header_only(tmp_path, capsys):
    doc = {
        "schema_version": 1,
        "root_system": {"type": "A", "rank": 1},
        "family": "verma",
        "grid": {"lambda": []},
    }
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run(
        capsys, "sweep", "--config", write_config(tmp_path, doc), "--out", str(out_path)
    )
    assert code == 0
    assert out_path.read_text().strip() == "params,dim,verdict,stabilized,error"


def test_sweep_json_format(tmp_path, capsys):
    doc = {
        "schema_version": 1,
        "root_system": {"type": "A", "rank": 1},
        "family": "verma",
        "grid": {"lambda": ["0"]},
        "truncation": {"depth": 6, "factor_deg": 6, "window": 2},
    }
    cfg = write_config(tmp_path, doc)
    code, out, err = run(capsys, "sweep", "--config", cfg, "--format", "json")
    assert code == 0
    parsed = json.loads(out)
    assert parsed["rows"][0]["dim"] == 2
    assert parsed["dim_ge_2"] == ["0"]


def test_corollary_default_suite(capsys):
    code, out, err = run(capsys, "corollary", "--depth", "8", "--factor-deg", "8")
    assert code == 0
    lines = [l for l in out.strip().splitlines() if l]
    assert all(" PASS" in l or "SKIPPED" in l for l in lines)
    assert sum(1 for l in lines if "(equality)" in l) >= 3


def test_corollary_config_with_skip(tmp_path, capsys):
    doc = {
        "schema_version": 1,
        "root_system": {"type": "A", "rank": 1},
        "truncation": {"depth": 6, "factor_deg": 6, "window": 2},
        "instances": [
            {
                "label": "verma 1",
                "root_system": {"type": "A", "rank": 1},
                "family": "verma",
                "lambda": ["1"],
            },
            {
                "label": "sl3 point",
                "root_system": {"type": "A", "rank": 2},
                "family": "mcdowell",
                "psi": ["1", "0"],
                "omega": ["1"],
                "casimirs": {"0": "1"},
            },
        ],
    }
    cfg = write_config(tmp_path, doc)
    code, out, err = run(capsys, "corollary", "--config", cfg)
    assert code == 0
    assert "verma 1: 2 <= 2 PASS" in out
    assert "sl3 point: SKIPPED" in out


def test_cache_stats_and_clear(tmp_path, capsys):
    cfg = write_config(tmp_path, VERMA2)
    run(capsys, "certify", "--config", cfg, "--out", str(tmp_path / "r.json"))
    code, out, _ = run(capsys, "cache", "stats")
    assert code == 0
    stats = json.loads(out)
    assert len(stats["files"]) >= 1
    assert all(f["entries"] >= 0 for f in stats["files"])
    code, out, _ = run(capsys, "cache", "clear")
    assert code == 0
    code, out, _ = run(capsys, "cache", "stats")
    assert json.loads(out)["files"] == []


def test_usage_error_exit_code(capsys):
    assert run(capsys, "certify")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
