import os
import subprocess
import sys

import numpy as np
import pytest

import labyrinth
from labyrinth._kernels import backends

LANES = backends()


def lane_pairs():
    if "compiled" not in LANES:
        pytest.skip("compiled backend not built")
    return LANES["pure"], LANES["compiled"]


def test_pure_lane_always_present():
    assert "pure" in LANES
    assert LANES["pure"].BACKEND_NAME == "pure"


def test_carve_parity_across_dims_and_seeds():
    pure, comp = lane_pairs()
    for width, height in [(1, 1), (1, 6), (6, 1), (2, 2), (3, 3), (4, 5), (7, 7)]:
        for seed in range(20):
            a = pure.generate_perfect(width, height, seed)
            b = comp.generate_perfect(width, height, seed)
            assert np.array_equal(a[0], b[0]), (width, height, seed)
            assert np.array_equal(a[1], b[1]), (width, height, seed)


def test_bfs_parity_and_read_only_inputs():
    pure, comp = lane_pairs()
    for seed in range(20):
        vw, hw = pure.generate_perfect(5, 4, seed)
        vw.setflags(write=False)
        hw.setflags(write=False)
        d1, p1 = pure.bfs_tree(vw, hw, 0, 0)
        d2, p2 = comp.bfs_tree(vw, hw, 0, 0)
        assert np.array_equal(d1, d2)
        assert np.array_equal(p1, p2)
        assert d1.dtype == np.int32 and p1.dtype == np.int32


def test_enumerate_parity_on_open_grids():
    pure, comp = lane_pairs()
    # no interior walls: the densest path sets these kernels will ever see
    for width, height in [(2, 2), (3, 3), (3, 4)]:
        vw = np.zeros((height, width - 1), dtype=np.uint8)
        hw = np.zeros((height - 1, width), dtype=np.uint8)
        p1, hit1 = pure.enumerate_paths(vw, hw, height - 1, 0, 0, width - 1, 10_000)
        p2, hit2 = comp.enumerate_paths(vw, hw, height - 1, 0, 0, width - 1, 10_000)
        assert hit1 == hit2 is False
        assert len(p1) == len(p2)
        for a, b in zip(p1, p2):
            assert np.array_equal(a, b)
        c1 = pure.count_paths_up_to(vw, hw, height - 1, 0, 0, width - 1, 10_000)
        c2 = comp.count_paths_up_to(vw, hw, height - 1, 0, 0, width - 1, 10_000)
        assert c1 == c2 == len(p1)


def test_enumerate_cap_parity():
    pure, comp = lane_pairs()
    vw = np.zeros((4, 3), dtype=np.uint8)
    hw = np.zeros((3, 4), dtype=np.uint8)
    for cap in (0, 1, 2, 5):
        p1, hit1 = pure.enumerate_paths(vw, hw, 3, 0, 0, 3, cap)
        p2, hit2 = comp.enumerate_paths(vw, hw, 3, 0, 0, 3, cap)
        assert hit1 == hit2 is True
        assert len(p1) == len(p2) == cap + 1


def test_count_stops_at_limit():
    pure, comp = lane_pairs()
    vw = np.zeros((4, 3), dtype=np.uint8)
    hw = np.zeros((3, 4), dtype=np.uint8)
    assert pure.count_paths_up_to(vw, hw, 3, 0, 0, 3, 7) == 7
    assert comp.count_paths_up_to(vw, hw, 3, 0, 0, 3, 7) == 7


def test_env_var_forces_pure_lane():
    env = dict(os.environ, LABYRINTH_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from labyrinth._kernels import BACKEND_NAME; print(BACKEND_NAME)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_graph_level_results_identical_across_lanes():
    # the selected backend must not change anything observable
    env = dict(os.environ, LABYRINTH_PURE_PYTHON="1")
    script = (
        "from labyrinth import generate_perfect;"
        "print(sorted(generate_perfect((5, 5), 123).walls))"
    )
    pure_out = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True, env=env, check=True
    ).stdout
    here = sorted(labyrinth.generate_perfect((5, 5), 123).walls)
    assert pure_out.strip() == repr(here)
