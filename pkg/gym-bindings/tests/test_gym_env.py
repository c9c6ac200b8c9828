"""Wrapper surface: construction, spaces, delegation, error mirroring."""

import numpy as np
import pytest

import labyrinth
import labyrinth_gym
from labyrinth_gym.core import Box, Discrete


def run_actions(env, actions):
    total = 0.0
    for action in actions:
        obs, reward, terminated, truncated, info = env.step(action)
        total += reward
    return total, info


def test_make_default_reset_observation():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(3, 3))
    obs, info = env.reset()
    assert obs.shape == (600, 600, 3)
    assert obs.dtype == np.uint8
    assert env.observation_space.contains(obs)


def test_unknown_id_rejected():
    with pytest.raises(KeyError):
        labyrinth_gym.make("Corridor-v0")


def test_action_space_is_four_moves():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(4, 4))
    assert isinstance(env.action_space, Discrete)
    assert env.action_space.n == 4
    assert all(env.action_space.contains(a) for a in range(4))
    assert not env.action_space.contains(4)


def test_mutual_exclusion_mirrors_native():
    with pytest.raises(labyrinth.MutualExclusion):
        labyrinth_gym.make("Labyrinth-v0", shape=(3, 3),
                           key_and_door=True, icy_floor=True)


def test_each_single_flag_sets_its_setting():
    cases = (
        ({}, labyrinth.Setting.navigation),
        ({"occlusion": True}, labyrinth.Setting.occluded),
        ({"key_and_door": True}, labyrinth.Setting.key_door),
        ({"icy_floor": True}, labyrinth.Setting.ice),
    )
    for kwargs, setting in cases:
        env = labyrinth_gym.make("Labyrinth-v0", shape=(4, 4), **kwargs)
        assert env.config.task.setting is setting


def test_shape_is_rows_cols():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(3, 5))
    dims = env.config.graph.dims
    assert (dims.height, dims.width) == (3, 5)


def test_seed_determinism():
    one = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5), seed=9)
    two = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5), seed=9)
    other = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5), seed=10)
    assert one.config.text == two.config.text
    assert one.config.text != other.config.text
    a, _ = one.reset()
    b, _ = two.reset()
    assert a.tobytes() == b.tobytes()


def test_vector_mode_space_and_decode():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5), render_mode="vector")
    obs, info = env.reset()
    assert isinstance(env.observation_space, Box)
    assert env.observation_space.shape == (46,)
    assert obs.dtype == np.int32
    assert env.observation_space.contains(obs)
    decoded = labyrinth.decode_vector(
        env.config.graph.dims, env.config.task.setting, obs
    )
    assert decoded["agent"] == env.config.task.start


def test_expert_replay_returns_exactly_one():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5), seed=3)
    env.reset()
    actions = labyrinth.path_actions(env.solve(mode="shortest"))
    total, info = run_actions(env, actions)
    assert info["success"]
    assert abs(total - 1.0) <= 1e-9


def test_step_after_terminal_raises():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(3, 3), seed=1)
    env.reset()
    actions = labyrinth.path_actions(env.solve(mode="shortest"))
    run_actions(env, actions)
    with pytest.raises(labyrinth.EpisodeOver):
        env.step(labyrinth.Action.up)


def test_load_then_solve_unique_route(nav_file):
    env = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5))
    obs, info = env.load(nav_file)
    assert obs.shape == (600, 600, 3)
    paths = env.solve(mode="all")
    assert len(paths) == 1
    assert len(paths[0]) == 5
    assert env.observation_space.contains(obs)


def test_save_round_trips_bytes(nav_file, tmp_path):
    env = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5))
    env.load(nav_file)
    out = tmp_path / "copy.labyrinth"
    env.save(out)
    assert out.read_bytes() == nav_file.read_bytes()


def test_change_start_and_goal_delegates(nav_file):
    env = labyrinth_gym.make("Labyrinth-v0", shape=(5, 5))
    env.load(nav_file)
    env.change_start((0, 0))
    assert env.config.task.start == (0, 0)
    env.change_start_and_goal((2, 2), (0, 0))
    assert env.config.task.start == (2, 2)
    assert env.config.task.goal == (0, 0)
    with pytest.raises(labyrinth.InvalidPlacement):
        env.change_start((9, 9))


def test_render_matches_observation():
    env = labyrinth_gym.make("Labyrinth-v0", shape=(3, 3), seed=2)
    obs, _ = env.reset()
    assert env.render().tobytes() == obs.tobytes()
    env.close()
