import json

import numpy as np
import pytest
from PIL import Image

from labyrinth.cli import main

from sampledata import SAMPLE_FILES


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def generate_args(out_dir, **over):
    base = {
        "width": "4", "height": "4", "train": "3", "eval": "2", "test": "2",
        "setting": "navigation", "mode": "unbiased", "seed": "5",
        "image-size": "64", "out": str(out_dir),
    }
    base.update(over)
    argv = ["generate"]
    for key, value in base.items():
        argv += [f"--{key}", value]
    return argv


def test_generate_writes_dataset(tmp_path, capsys):
    code, out, err = run(capsys, *generate_args(tmp_path / "ds"))
    assert code == 0
    root = tmp_path / "ds"
    assert (root / "metadata.json").exists()
    for split in ("train", "eval", "test"):
        assert (root / f"{split}.jsonl").exists()
    meta = json.loads((root / "metadata.json").read_text())
    assert meta["counts"] == {"train": 3, "eval": 2, "test": 2}


def test_generate_is_deterministic(tmp_path, capsys):
    run(capsys, *generate_args(tmp_path / "a"))
    run(capsys, *generate_args(tmp_path / "b"))
    a = (tmp_path / "a" / "train.jsonl").read_text()
    b = (tmp_path / "b" / "train.jsonl").read_text()
    assert a == b


def test_solve_prints_paths(capsys):
    code, out, err = run(capsys, "solve", str(SAMPLE_FILES["navigation"]))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["2,0 1,0 1,1 0,1 0,2"]
    code, out, err = run(capsys, "solve", str(SAMPLE_FILES["ice"]), "--mode", "all")
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_solve_shortest_mode(capsys):
    code, out, err = run(capsys, "solve", str(SAMPLE_FILES["ice"]), "--mode", "shortest")
    assert code == 0
    assert len(out.strip().splitlines()) == 1


def test_render_writes_png(tmp_path, capsys):
    target = tmp_path / "maze.png"
    code, out, err = run(capsys, "render", str(SAMPLE_FILES["key_door"]),
                         "--out", str(target), "--size", "96")
    assert code == 0
    image = Image.open(target)
    assert image.size == (96, 96)
    assert np.asarray(image).shape == (96, 96, 3)


def test_replay_reports_steps_and_return(capsys):
    code, out, err = run(capsys, "replay", str(SAMPLE_FILES["navigation"]),
                         "--actions", "up,right,up,right")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert lines[0].startswith("step 1: action=up")
    assert lines[-1].startswith("return=")
    assert "success=True" in lines[-1]


def test_replay_accepts_numeric_actions(capsys):
    code, out, err = run(capsys, "replay", str(SAMPLE_FILES["navigation"]),
                         "--actions", "0,2,0,2")
    assert code == 0
    assert "success=True" in out


def test_replay_return_is_bit_exact(capsys):
    code, out, err = run(capsys, "replay", str(SAMPLE_FILES["navigation"]),
                         "--actions", "up,right,up,right")
    final = out.strip().splitlines()[-1]
    printed = float(final.split("return=")[1].split()[0])
    assert printed == 1.0


def test_replay_saves_frames(tmp_path, capsys):
    code, out, err = run(capsys, "replay", str(SAMPLE_FILES["navigation"]),
                         "--actions", "up,right", "--save-frames",
                         str(tmp_path), "--size", "64")
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["frame_0000.png", "frame_0001.png", "frame_0002.png"]


def test_analyze_emits_distribution_report(tmp_path, capsys):
    run(capsys, *generate_args(tmp_path / "ds"))
    code, out, err = run(capsys, "analyze", str(tmp_path / "ds"))
    assert code == 0
    report = json.loads(out)
    assert "action_dist" in report and "tile_dist" in report
    assert abs(sum(report["action_dist"]) - 1.0) < 1e-9


def test_analyze_against_second_dataset(tmp_path, capsys):
    run(capsys, *generate_args(tmp_path / "a"))
    run(capsys, *generate_args(tmp_path / "b", mode="biased", seed="9"))
    code, out, err = run(capsys, "analyze", str(tmp_path / "a"),
                         "--against", str(tmp_path / "b"))
    assert code == 0
    report = json.loads(out)
    assert 0.0 <= report["action_js_distance"] <= 1.0
    assert report["tile_ws_distance"] >= 0.0


def test_evaluate_expert_prints_perfect_score(tmp_path, capsys):
    run(capsys, *generate_args(tmp_path / "ds"))
    code, out, err = run(capsys, "evaluate", "--dataset", str(tmp_path / "ds"),
                         "--policy", "expert")
    assert code == 0
    assert "AER 1" in out
    assert "SR 100" in out


def test_usage_errors_exit_one(capsys):
    code, out, err = run(capsys, "generate", "--width", "5")  # missing height
    assert code == 1
    code, out, err = run(capsys, "solve")  # missing file
    assert code == 1
    code, out, err = run(capsys, "frobnicate")
    assert code == 1


def test_data_errors_exit_two(tmp_path, capsys):
    missing = tmp_path / "nope.txt"
    code, out, err = run(capsys, "solve", str(missing))
    assert code == 2
    assert err
    bad = tmp_path / "bad.txt"
    bad.write_text("key_and_lock: maybe\n")
    code, out, err = run(capsys, "solve", str(bad))
    assert code == 2


def test_replay_rejects_bad_action_token(tmp_path, capsys):
    code, out, err = run(capsys, "replay", str(SAMPLE_FILES["navigation"]),
                         "--actions", "up,sideways")
    assert code == 2
