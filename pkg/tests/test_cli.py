import json
import os
import subprocess
import sys

import pytest

from chartloom.corpus.generate import ChartSpec, generate_synthetic_chart
from chartloom.reuse import DataTable


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "chartloom.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    chart = generate_synthetic_chart(ChartSpec("grouped_bar", 1, "A"))
    (tmp / "chart.svg").write_text(chart.svg)
    table = DataTable.from_rows(chart.build.rows)
    (tmp / "data.csv").write_text(table.to_csv())
    choices = [
        {"field": "group"}, {"field": "series"},
        {"channel": "height", "field": "value"},
        {"channel": "fill", "field": "series"},
    ]
    (tmp / "choices.json").write_text(json.dumps(choices))
    return tmp


def test_deconstruct_writes_template_and_report(workdir):
    r = run_cli("deconstruct", str(workdir / "chart.svg"),
                "-o", str(workdir / "t.json"))
    assert r.returncode == 0
    report = json.loads(r.stdout)
    assert report["schema"]["cGroup"] == 2
    assert (workdir / "t.json").exists()


def test_sample_data(workdir):
    r = run_cli("sample-data", str(workdir / "t.json"),
                "-o", str(workdir / "sample.csv"))
    assert r.returncode == 0
    sample = (workdir / "sample.csv").read_text()
    assert sample.splitlines()[0].count(",") >= 2


def test_check_is_advisory(workdir):
    r = run_cli("check", str(workdir / "t.json"), str(workdir / "data.csv"))
    assert r.returncode == 0
    assert json.loads(r.stdout)["ok"] is True
    # an insufficient dataset still exits 0; the report carries the verdict
    (workdir / "thin.csv").write_text("a,b\r\nx,1\r\n")
    r = run_cli("check", str(workdir / "t.json"), str(workdir / "thin.csv"))
    assert r.returncode == 0
    report = json.loads(r.stdout)
    assert report["ok"] is False and report["dismissible"] is True


def test_apply_writes_svg_and_bound_template(workdir):
    r = run_cli("apply", str(workdir / "t.json"), str(workdir / "data.csv"),
                "--choices", str(workdir / "choices.json"),
                "-o", str(workdir / "out.svg"))
    assert r.returncode == 0, r.stderr
    svg = (workdir / "out.svg").read_text()
    assert svg.startswith("<svg")
    bound = json.loads((workdir / "out.svg.template.json").read_text())
    assert bound["levelFields"] == {"1": "group", "2": "series"}
    assert any(e["fieldName"] == "value" for e in bound["encodings"])
    assert bound["config"]


def test_usage_error_exits_1():
    r = run_cli("deconstruct")  # missing required arguments
    assert r.returncode == 1


def test_pipeline_error_exits_2_with_json_stderr(workdir):
    bad = workdir / "bad.svg"
    bad.write_text("this is not xml")
    r = run_cli("deconstruct", str(bad), "-o", str(workdir / "nope.json"))
    assert r.returncode == 2
    err = json.loads(r.stderr)
    assert err["kind"] == "MalformedSvg"


def test_corpus_score_subset(workdir, tmp_path):
    manifest = tmp_path / "mini.json"
    manifest.write_text(json.dumps({"charts": [
        {"archetype": "bar", "seed": 1, "variant": "A"},
        {"archetype": "heatmap", "seed": 1, "variant": "C"},
    ]}))
    r = run_cli("corpus", "score", "--manifest", str(manifest))
    assert r.returncode == 0
    assert "accuracy 2/2 = 100.00%" in r.stdout


def test_corpus_generate(tmp_path):
    r = run_cli("corpus", "generate", "-o", str(tmp_path / "out"), "--seeds", "1")
    assert r.returncode == 0
    names = os.listdir(tmp_path / "out")
    assert "manifest.json" in names
    assert sum(n.endswith(".svg") for n in names) == 36  # 12 archetypes x 3 variants
    assert sum(n.endswith(".csv") for n in names) == 36
