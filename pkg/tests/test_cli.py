import json

import pytest

from ladscore.data import bundled, generate_twovariables, load_csv
from ladscore.main import main
from ladscore.reporting import HADI_FOOTER, format_labels
from ladscore.services import detect_outliers


def _run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_fit_table(capsys):
    status, out, _ = _run(capsys, "fit", "--bundled", "telephone")
    assert status == 0
    assert "Objective:" in out
    assert "intercept" in out


def test_fit_json(capsys):
    status, out, _ = _run(capsys, "fit", "--bundled", "telephone", "--format", "json")
    payload = json.loads(out)
    assert status == 0
    assert payload["n"] == 24
    assert len(payload["beta"]) == 2
    assert len(payload["basis"]) == 2


def test_scores_csv(capsys):
    status, out, _ = _run(capsys, "scores", "--generate", "twovariables", "--seed", "3", "--format", "csv")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "ordering,rank,label,L,O"
    assert len(lines) == 1 + 2 * 56


def test_compare_json_matches_library(capsys):
    status, out, _ = _run(capsys, "compare", "--bundled", "telephone", "--format", "json")
    assert status == 0
    payload = json.loads(out)
    ours = [row for row in payload["rows"] if row["method"] == "Ours"][0]
    assert ours["outliers"] == sorted(detect_outliers(bundled("telephone")).flagged)
    classical = [row for row in payload["rows"] if row["method"] == "Classical"][0]
    assert classical["outliers"] == [20]
    assert payload["outlier_rule"] == "two"


def test_compare_table_footer(capsys):
    status, out, _ = _run(capsys, "compare", "--bundled", "telephone")
    assert status == 0
    assert out.rstrip().endswith(HADI_FOOTER)
    assert "Classical" in out and "Ours" in out


def test_diagnose_trace(capsys):
    status, out, _ = _run(capsys, "diagnose", "--generate", "twovariables", "--seed", "1", "--trace")
    assert status == 0
    assert "stop:" in out
    assert "leverage round=1 m=56" in out
    assert "outliers round=1 m=56" in out


def test_diagnose_json_round_trip(capsys):
    status, out, _ = _run(capsys, "diagnose", "--bundled", "telephone", "--format", "json")
    assert status == 0
    payload = json.loads(out)
    assert payload["outliers"]["flagged"] == detect_outliers(bundled("telephone")).flagged
    assert "rounds" not in payload["outliers"]


def test_diagnose_same_output_for_any_thread_count(capsys):
    outputs = []
    for threads in ("1", "3"):
        status, out, _ = _run(capsys, "diagnose", "--bundled", "telephone", "--trace", "--threads", threads)
        assert status == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_simulate_stdout(capsys):
    status, out, _ = _run(capsys, "simulate", "--generate", "twovariables", "--seed", "7")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "x1,y"
    assert len(lines) == 57


def test_simulate_to_file(capsys, tmp_path):
    target = tmp_path / "two.csv"
    status, out, _ = _run(capsys, "simulate", "--generate", "twovariables", "--seed", "7", "--out", str(target))
    assert status == 0
    assert out == ""
    assert load_csv(target).n == generate_twovariables(7).n


def test_csv_file_source(capsys, tmp_path):
    path = tmp_path / "points.csv"
    path.write_text("x,y\n" + "".join(f"{i},{2 * i + (i % 3) * 0.1}\n" for i in range(8)), encoding="utf-8")
    status, out, _ = _run(capsys, "fit", "--data", str(path), "--format", "json")
    assert status == 0
    assert json.loads(out)["n"] == 8


def test_unknown_bundled_exits_2(capsys):
    status, _, err = _run(capsys, "fit", "--bundled", "iris")
    assert status == 2
    assert "telephone, hawkins, scottish" in err


def test_missing_file_exits_2(capsys, tmp_path):
    status, _, err = _run(capsys, "fit", "--data", str(tmp_path / "missing.csv"))
    assert status == 2
    assert err.startswith("error:")


def test_missing_source_exits_1(capsys):
    status, _, err = _run(capsys, "fit")
    assert status == 1
    assert "data source" in err


def test_generate_without_seed_exits_1(capsys):
    status, _, _ = _run(capsys, "fit", "--generate", "twovariables")
    assert status == 1


def test_simulate_needs_generator(capsys):
    status, _, _ = _run(capsys, "simulate", "--bundled", "telephone")
    assert status == 1


@pytest.mark.parametrize("argv", [
    ["fit", "--bundled", "telephone", "--format", "xml"],
    ["fit", "--bundled", "telephone", "--threads", "0"],
    ["fit", "--bundled", "telephone", "--data", "x.csv"],
    ["explode", "--bundled", "telephone"],
])
def test_bad_arguments_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 1


def test_format_labels():
    assert format_labels([]) == "-"
    assert format_labels([20, 17, 18, 19]) == "17-20"
    assert format_labels([7, 11, 12, 13, 14]) == "7, 11-14"
    assert format_labels([11, 17, 35]) == "11, 17, 35"
    assert format_labels([3, 4]) == "3, 4"


@pytest.mark.slow
def test_hawkins_diagnose_thread_determinism(capsys):
    outputs = []
    for threads in ("1", "4"):
        status, out, _ = _run(capsys, "diagnose", "--bundled", "hawkins", "--threads", threads)
        assert status == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_compare_all(capsys):
    status, out, _ = _run(capsys, "compare", "--all", "--seed", "2009", "--format", "json")
    assert status == 0
    datasets = [row["dataset"] for row in json.loads(out)["rows"]]
    assert datasets == [name for name in ("telephone", "hawkins", "scottish", "twovariables", "threevariables")
                        for _ in range(2)]
