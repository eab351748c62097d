"""Sweep plumbing: configs, records, deterministic serialization, exports."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chcrown import (
    EXPORT_KINDS,
    GeometryError,
    PARAM_MAX,
    PARAM_MIN,
    Record,
    Report,
    SUITE_NAMES,
    SweepConfig,
    export_geometry,
    limit_set_points,
    run_suite,
)
from chcrown.verify import _emit_json, _f17


def test_sweep_config_defaults_and_points():
    cfg = SweepConfig()
    pts = cfg.points()
    assert len(pts) == 101
    assert pts[0] == pytest.approx(PARAM_MIN + 1e-4)
    assert pts[-1] == pytest.approx(PARAM_MAX)
    assert pts == sorted(pts)


def test_sweep_config_chebyshev_nodes_are_interior_and_sorted():
    cfg = SweepConfig(steps=7, spacing="chebyshev")
    pts = cfg.points()
    assert pts == sorted(pts)
    assert pts[0] > cfg.t_min and pts[-1] < cfg.t_max


@pytest.mark.parametrize("bad", [
    {"t_min": 0.2},
    {"t_max": 0.5},
    {"t_min": 0.41, "t_max": 0.39},
    {"steps": 1},
    {"spacing": "log"},
    {"precision": "quad"},
])
def test_sweep_config_rejects_bad_input(bad):
    with pytest.raises(GeometryError):
        SweepConfig(**bad)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
@settings(max_examples=60)
def test_f17_roundtrips_doubles(x):
    assert float(_f17(x)) == x


def test_emit_json_is_valid_and_ordered():
    blob = {"b": [1.0, True, None, "s"], "a": {"x": math.pi}}
    text = _emit_json(blob)
    parsed = json.loads(text)
    assert parsed["a"]["x"] == math.pi
    assert parsed["b"] == [1.0, True, None, "s"]
    # insertion order is preserved, which the writers rely on
    assert text.index('"b"') < text.index('"a"')


def test_report_roundtrip_and_sorting():
    records = [
        Record("zeta", 0.40, "k", 1.0, 1.0, True),
        Record("alpha", 0.39, "b", 2.0, -1.0, False),
        Record("alpha", 0.39, "a", 3.0, 0.5, True),
    ]
    rep = Report({"suite": "mixed"}, records)
    assert not rep.passed
    assert [r.key for r in rep.sorted_records()] == ["a", "b", "k"]
    assert rep.summary()["failed"] == 1
    back = Report.from_json(rep.to_json())
    assert back.records == rep.sorted_records()
    assert Report(back.config, back.records).to_json() == rep.to_json()


def test_report_merge_prefers_later_shards():
    first = Report({"n": 1}, [Record("s", 0.4, "k", 1.0, -1.0, False)])
    second = Report({"n": 2}, [Record("s", 0.4, "k", 1.0, 1.0, True),
                               Record("s", 0.41, "k2", 0.0, 0.0, True)])
    merged = Report.merge([first, second])
    assert len(merged.records) == 2
    assert merged.passed


def test_csv_has_header_and_17g_floats():
    rep = Report({}, [Record("s", 0.375, "k", 1.0 / 3.0, 0.0, True)])
    lines = rep.to_csv().splitlines()
    assert lines[0] == "suite,t,key,value,margin,pass"
    assert "0.33333333333333331" in lines[1]


def test_run_suite_rejects_unknown_name():
    with pytest.raises(GeometryError):
        run_suite("bogus")


def test_suite_names_all_run_single_point():
    for name in SUITE_NAMES:
        report = run_suite(name, points=[0.39])
        assert report.records, name
        assert report.passed, (name, report.failures())
        assert {r.suite for r in report.records} == {name}


def test_all_expands_to_every_suite():
    report = run_suite("all", points=[0.39])
    assert {r.suite for r in report.records} == set(SUITE_NAMES)


def test_run_suite_bytes_are_deterministic_and_job_independent():
    cfg = SweepConfig(t_min=0.3751, t_max=0.41, steps=3)
    a = run_suite("relations", cfg).to_json()
    b = run_suite("relations", cfg).to_json()
    c = run_suite("relations", cfg, jobs=2).to_json()
    assert a == b == c


def test_mid_window_overlaps_are_reported_not_hidden():
    # the honest finding: just above t = 2/5 some cutting-disk pairs meet
    report = run_suite("disks", points=[0.41])
    modes = {r.key: r.passed for r in report.records if r.key.startswith("disk-pair:")}
    assert len(modes) == 28
    assert not report.passed
    assert not modes["disk-pair:beta2|beta3"]


def test_export_kinds_and_determinism(tmp_path):
    for kind, kwargs in (("spheres", {"nx": 8, "ny": 8}), ("arcs", {"samples": 17}),
                         ("disks", {"rim": 12}), ("limitset", {"depth": 2})):
        d1 = tmp_path / f"{kind}_1"
        d2 = tmp_path / f"{kind}_2"
        p1 = export_geometry(kind, 0.41, str(d1), **kwargs)
        p2 = export_geometry(kind, 0.41, str(d2), **kwargs)
        assert all((d1 / name.split("/")[-1]).exists() for name in p1)
        for a, b in zip(p1, p2):
            assert open(a, "rb").read() == open(b, "rb").read()
    with pytest.raises(GeometryError):
        export_geometry("mystery", 0.41, str(tmp_path))
    assert set(EXPORT_KINDS) == {"spheres", "arcs", "disks", "limitset"}


def test_sphere_export_has_eight_objects(tmp_path):
    paths = export_geometry("spheres", 0.4142, str(tmp_path), nx=8, ny=8)
    obj = open(paths[0]).read()
    assert obj.count("o sphere-") == 8
    manifest = json.loads(open(paths[1]).read())
    assert manifest["kind"] == "spheres"
    assert manifest["t"] == pytest.approx(0.4142)


def test_disk_export_certificates_jsonl(tmp_path):
    paths = export_geometry("disks", 0.39, str(tmp_path), rim=12)
    rows = [json.loads(line) for line in open(paths[1])]
    assert len(rows) == 28
    assert all(set(r) == {"certificate", "t", "pair", "margin", "pass"} for r in rows)
    assert all(r["pass"] for r in rows)


def test_limit_set_points_are_deduplicated_and_sorted():
    pts = limit_set_points(0.41, depth=3)
    assert pts.shape[1] == 3
    assert len(pts) > 10
    as_tuples = [tuple(row) for row in pts]
    assert as_tuples == sorted(as_tuples)
    assert len({tuple(np.round(row, 9)) for row in pts}) == len(pts)
