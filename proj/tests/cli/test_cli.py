import csv
import io
import json
import math

import pytest

jsonschema = pytest.importorskip("jsonschema")


def validate(schemas, name, doc):
    schema = json.loads((schemas / f"{name}.json").read_text())
    jsonschema.Draft202012Validator(schema).validate(doc)


def parse_csv(text):
    # RFC 4180: CRLF records, header first
    assert "\r\n" in text
    rows = list(csv.reader(io.StringIO(text, newline="")))
    assert rows[0] == ["metric", "value"]
    return {k: v for k, v in rows[1:]}


@pytest.fixture
def trace08(run, tmp_path):
    path = tmp_path / "a08.csv"
    run("--seed", 3, "generate", "--objects", 20000, "--alpha", 0.8, "--requests", 200000, "-o", path)
    return path


# generate

def test_generate_header_and_report(run, schemas, tmp_path):
    path = tmp_path / "t.csv"
    report = json.loads(run("generate", "--objects", 500, "--requests", 5000, "-o", path).stdout)
    validate(schemas, "generate", report)
    assert path.read_text().splitlines()[0] == "#zipfcache-trace-v1"
    assert report["requests"] > 0


def test_generate_is_deterministic(run, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        run("--seed", 42, "generate", "--objects", 300, "--requests", 3000,
            "--tch-popular-days", 1, "-o", p)
    assert a.read_bytes() == b.read_bytes()


def test_generate_seed_changes_trace(run, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run("--seed", 1, "generate", "--objects", 300, "--requests", 3000, "-o", a)
    run("--seed", 2, "generate", "--objects", 300, "--requests", 3000, "-o", b)
    assert a.read_bytes() != b.read_bytes()


def test_generate_alpha_out_of_range(run, tmp_path):
    proc = run("generate", "--alpha", 1.2, "-o", tmp_path / "x.csv", check=False)
    assert proc.returncode == 2
    assert "0.999" in proc.stderr or "0.999" in proc.stdout


# analyze

def test_analyze_bundled_sample(run_json, schemas):
    report = run_json("analyze")
    validate(schemas, "analyze", report)
    assert report["requests"] > 0
    assert report["two_plus_docs"] <= report["unique_docs"]


def test_analyze_hit_ratio_adds_renewal(run_json, schemas):
    report = run_json("analyze", "--hit-ratio", 0.3)
    validate(schemas, "analyze", report)
    assert "alpha_r" in report and "delta_h" in report


def test_analyze_recovers_alpha(run_json, trace08):
    report = run_json("analyze", "-t", trace08)
    assert 0.75 <= report["alpha_loglog"] <= 0.85


def test_analyze_csv(run):
    rows = parse_csv(run("--format", "csv", "analyze").stdout)
    assert int(rows["requests"]) > 0


def test_analyze_missing_trace_is_io_error(run):
    assert run("analyze", "-t", "/nonexistent/trace.csv", check=False).returncode == 3


def test_analyze_malformed_trace(run, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("#zipfcache-trace-v1\n1.0,R,a,10,1\nnot,a,valid,line\n")
    proc = run("analyze", "-t", bad, check=False)
    assert proc.returncode == 3
    assert "3" in proc.stderr


# predict

def test_predict_core_values(run_json, schemas):
    report = run_json("predict")
    validate(schemas, "predict", report)
    assert report["tau_days"] == pytest.approx(6.0, abs=0.1)
    bound = run_json("predict", "--alpha", 0.7)["ideal_hit_bound"]
    assert bound == pytest.approx(0.743, abs=1e-3)


def test_predict_renewal(run_json, schemas):
    report = run_json("predict", "--alpha", 0.72, "--alpha-r", 0.70)
    validate(schemas, "predict", report)
    assert report["freshness_factor"] == pytest.approx(0.9333, abs=1e-4)
    assert report["extra_bandwidth_fraction"] == pytest.approx(0.0667, abs=1e-4)


def test_predict_csv_matches_json(run):
    js = json.loads(run("predict", "--alpha", 0.6).stdout)
    rows = parse_csv(run("--format", "csv", "predict", "--alpha", 0.6).stdout)
    assert set(rows) == set(js)
    for k, v in js.items():
        assert math.isclose(float(rows[k]), v, rel_tol=1e-6)


def test_predict_domain_error(run):
    assert run("predict", "--alpha", 1.2, check=False).returncode == 4


# simulate

def test_simulate_defaults(run_json, schemas):
    doc = run_json("simulate")
    validate(schemas, "simulate", doc)
    assert 0.0 <= doc["report"]["hit_ratio"] <= 1.0


def test_simulate_zbs_lifetime_prefetches(run_json, schemas):
    doc = run_json("simulate", "--policy", "zbs", "--prefetch", "lifetime")
    validate(schemas, "simulate", doc)
    assert doc["report"]["prefetch_bytes"] > 0


def test_simulate_sweep_plot_data(run_json, schemas, trace08, tmp_path):
    plot = tmp_path / "plot.csv"
    doc = run_json("simulate", "-t", trace08, "--policy", "lru",
                   "--sweep", "50MB,100MB,200MB", "--plot-data", plot)
    validate(schemas, "simulate", doc)
    assert len(doc["runs"]) == 3
    rows = list(csv.reader(io.StringIO(plot.read_text(), newline="")))
    assert rows[0] == ["size", "hit_ratio"]
    ratios = [float(r[1]) for r in rows[1:]]
    assert len(ratios) == 3
    assert ratios == sorted(ratios)


def test_simulate_parallel_matches_sequential(run, trace08):
    args = ("simulate", "-t", trace08, "--policy", "zbs", "--sweep", "5%,10%,20%")
    seq = json.loads(run(*args).stdout)
    par = json.loads(run(*args, "--parallel").stdout)
    assert seq == par


def test_simulate_deterministic(run):
    a = run("simulate", "--policy", "zbs", "--prefetch", "goodfetch").stdout
    b = run("simulate", "--policy", "zbs", "--prefetch", "goodfetch").stdout
    assert a == b


@pytest.mark.parametrize("policy", ["zbs", "zbs-byte", "lru", "lfu", "fifo"])
def test_simulate_every_policy(run_json, schemas, policy):
    doc = run_json("simulate", "--policy", policy, "--capacity", "10%")
    validate(schemas, "simulate", doc)
    r = doc["report"]
    assert r["hits"] <= r["cacheable_requests"] <= r["requests"]


def test_simulate_unknown_policy(run):
    proc = run("simulate", "--policy", "arc", check=False)
    assert proc.returncode == 2
    assert "arc" in proc.stderr


def test_simulate_bad_capacity(run):
    assert run("simulate", "--capacity", "lots", check=False).returncode == 2


def test_simulate_csv(run):
    rows = parse_csv(run("--format", "csv", "simulate").stdout)
    assert 0.0 <= float(rows["hit_ratio"]) <= 1.0
