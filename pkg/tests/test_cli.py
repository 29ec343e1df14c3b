"""End-to-end tests of the command line interface.

Every test shells out to ``python -m logchart.cli`` the way a user
would, then asserts on the exit code and the JSON report from stdout.
Exit conventions under test: 0 for a clean verdict, 1 when a check verb
finds a counterexample, 2 for inputs rejected before computation.
"""

import json
import subprocess
import sys

import pytest

MONOID_23 = {
    "ambient": {"free_rank": 1, "torsion": []},
    "generators": [["2"], ["3"]],
}

FREE_RANK_ONE = {
    "ambient": {"free_rank": 1, "torsion": []},
    "generators": [["1"]],
}

DIAG_23 = {
    "domain": {
        "ambient": {"free_rank": 2, "torsion": []},
        "generators": [["1", "0"], ["0", "1"]],
    },
    "codomain": {
        "ambient": {"free_rank": 2, "torsion": []},
        "generators": [["1", "0"], ["0", "1"]],
    },
    "generator_images": [["2", "0"], ["0", "3"]],
}


def invoke(*argv, stdin=""):
    return subprocess.run(
        [sys.executable, "-m", "logchart.cli", *argv],
        input=stdin,
        capture_output=True,
        text=True,
    )


def report_of(proc):
    assert proc.stdout, proc.stderr
    return json.loads(proc.stdout)


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def assert_strings_only(value):
    """Reports carry integers as decimal strings, never JSON numbers."""
    if isinstance(value, bool) or value is None:
        return
    assert not isinstance(value, (int, float)), value
    if isinstance(value, dict):
        for v in value.values():
            assert_strings_only(v)
    elif isinstance(value, list):
        for v in value:
            assert_strings_only(v)


def test_saturate_closes_a_numerical_monoid(tmp_path):
    path = write_json(tmp_path, "m.json", MONOID_23)
    proc = invoke("saturate", "--monoid", path)
    assert proc.returncode == 0
    report = report_of(proc)
    assert report["verdict"] == "ok"
    assert report["result"]["saturated"]["generators"] == [["1"]]
    assert report["result"]["changed"] is True


def test_saturate_reads_stdin():
    proc = invoke("saturate", "--monoid", "-", stdin=json.dumps(MONOID_23))
    assert proc.returncode == 0
    assert report_of(proc)["result"]["generator_count"] == "1"


def test_classify_reports_property_flags(tmp_path):
    path = write_json(tmp_path, "m.json", MONOID_23)
    proc = invoke("classify", "--monoid", path)
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["fine"] is True
    assert result["sharp"] is True
    assert result["saturated"] is False
    assert result["dimension"] == "1"


def test_check_chart_flags_a_tame_kummer_cover(tmp_path):
    path = write_json(tmp_path, "u.json", DIAG_23)
    proc = invoke("check-chart", "--hom", path, "--residue-char", "5")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["kummer"] is True
    assert result["kummer_etale"] is True
    assert result["galois_group"]["order"] == "6"


def test_check_chart_wild_characteristic_blocks_etaleness(tmp_path):
    path = write_json(tmp_path, "u.json", DIAG_23)
    proc = invoke("check-chart", "--hom", path, "--residue-char", "2")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["kummer"] is True
    assert result["kummer_etale"] is False


def test_pushout_of_two_scalings(tmp_path):
    path = write_json(tmp_path, "u.json", DIAG_23)
    proc = invoke("pushout", "--left", path, "--right", path, "--mode", "fs")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["mode"] == "fs"
    assert result["properties"]["fs"] is True


def test_pushout_rejects_mismatched_domains(tmp_path):
    left = write_json(tmp_path, "u.json", DIAG_23)
    other = dict(DIAG_23)
    other["domain"] = FREE_RANK_ONE
    other["generator_images"] = [["1", "1"]]
    right = write_json(tmp_path, "v.json", other)
    proc = invoke("pushout", "--left", left, "--right", right)
    assert proc.returncode == 2
    assert report_of(proc)["verdict"] == "error"


def test_missing_field_is_named_in_the_diagnostic(tmp_path):
    path = write_json(tmp_path, "m.json", {"ambient": MONOID_23["ambient"]})
    proc = invoke("classify", "--monoid", path)
    assert proc.returncode == 2
    report = report_of(proc)
    assert report["verdict"] == "error"
    assert report["result"]["field"] == "$.generators"


def test_image_outside_codomain_is_an_input_error(tmp_path):
    bad = {
        "domain": FREE_RANK_ONE,
        "codomain": {
            "ambient": {"free_rank": 2, "torsion": []},
            "generators": [["2", "0"], ["0", "1"]],
        },
        "generator_images": [["1", "0"]],
    }
    path = write_json(tmp_path, "u.json", bad)
    proc = invoke("check-chart", "--hom", path)
    assert proc.returncode == 2
    assert report_of(proc)["verdict"] == "error"


def test_unreadable_path_exits_two():
    proc = invoke("classify", "--monoid", "/definitely/not/here.json")
    assert proc.returncode == 2


def test_malformed_json_exits_two():
    proc = invoke("saturate", "--monoid", "-", stdin="not json")
    assert proc.returncode == 2
    assert report_of(proc)["verdict"] == "error"


def test_unknown_verb_exits_two():
    proc = invoke("frobnicate")
    assert proc.returncode == 2


def test_covers_classify_lists_both_double_covers(tmp_path):
    path = write_json(tmp_path, "m.json", FREE_RANK_ONE)
    proc = invoke("covers", "classify", "--monoid", path, "--annihilator", "2")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert len(result["covers"]) == 2
    orders = sorted(c["galois_group"]["order"] for c in result["covers"])
    assert orders == ["1", "2"]


def test_covers_check_matches_every_pair(tmp_path):
    path = write_json(tmp_path, "m.json", FREE_RANK_ONE)
    proc = invoke("covers", "check", "--monoid", path, "--annihilator", "2")
    assert proc.returncode == 0
    report = report_of(proc)
    assert report["verb"] == "covers"
    assert report["options"]["action"] == "check"
    result = report["result"]
    assert result["all_match"] is True
    assert result["matched"] == result["total"] == "4"


def test_covers_check_rank_two_has_25_pairs(tmp_path):
    rank_two = {
        "ambient": {"free_rank": 2, "torsion": []},
        "generators": [["1", "0"], ["0", "1"]],
    }
    path = write_json(tmp_path, "m.json", rank_two)
    proc = invoke("covers", "check", "--monoid", path, "--annihilator", "2")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["all_match"] is True
    assert result["matched"] == result["total"] == "25"


def test_group_cohomology_vanishes_away_from_the_order():
    proc = invoke(
        "cohomology", "group",
        "--invariants", "2,2", "--char", "3", "--max-degree", "3",
    )
    assert proc.returncode == 0
    dims = report_of(proc)["result"]["dimensions"]
    assert dims == ["1", "0", "0", "0"]


def test_group_cohomology_grows_at_the_order():
    proc = invoke(
        "cohomology", "group",
        "--invariants", "2,2", "--char", "2", "--max-degree", "3",
    )
    assert proc.returncode == 0
    dims = report_of(proc)["result"]["dimensions"]
    assert dims == ["1", "2", "3", "4"]


def test_cech_verb_agrees_with_the_group_side(tmp_path):
    path = write_json(tmp_path, "u.json", DIAG_23)
    proc = invoke(
        "cohomology", "cech",
        "--hom", path, "--char", "5", "--degree-bound", "4", "--length", "3",
    )
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["match"] is True
    assert result["group_dimensions"] == ["1", "0", "0"]


def test_polydisc_verb_prints_binomials():
    proc = invoke("cohomology", "polydisc", "--n", "3", "--level", "2")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["dimensions"] == ["1", "3", "3", "1"]
    assert result["characteristic"] == "3"


def test_reports_are_byte_identical_across_runs(tmp_path):
    path = write_json(tmp_path, "m.json", FREE_RANK_ONE)
    argv = ("covers", "classify", "--monoid", path, "--annihilator", "2")
    first = invoke(*argv)
    second = invoke(*argv)
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode == 0


def test_reports_use_decimal_strings_throughout(tmp_path):
    path = write_json(tmp_path, "u.json", DIAG_23)
    proc = invoke("check-chart", "--hom", path, "--residue-char", "7")
    assert_strings_only(report_of(proc))


def test_seed_is_recorded(tmp_path):
    path = write_json(tmp_path, "m.json", MONOID_23)
    proc = invoke("--seed", "99", "classify", "--monoid", path)
    assert report_of(proc)["seed"] == "99"


def test_durations_stay_off_stdout(tmp_path):
    path = write_json(tmp_path, "m.json", MONOID_23)
    proc = invoke("classify", "--monoid", path)
    assert "seconds" not in proc.stdout
    assert "duration" not in proc.stdout
    assert "(0." in proc.stderr or "s)" in proc.stderr


@pytest.mark.slow
def test_verify_suite_smoke_passes():
    proc = invoke("verify-suite", "--scale", "smoke")
    assert proc.returncode == 0
    result = report_of(proc)["result"]
    assert result["passed"] is True
    assert len(result["criteria"]) == 8
    assert all(c["passed"] for c in result["criteria"])


@pytest.mark.slow
def test_injected_saturation_fault_is_caught():
    proc = invoke(
        "verify-suite", "--scale", "smoke", "--inject-fault", "saturation"
    )
    assert proc.returncode == 1
    report = report_of(proc)
    assert report["verdict"] == "fail"
    broken = {
        c["name"]: c for c in report["result"]["criteria"]
    }["saturation-oracle"]
    assert broken["passed"] is False
    assert "monoid" in broken["counterexample"]
