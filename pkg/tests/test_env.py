import numpy as np
import pytest

from labyrinth import (
    Action,
    EnvConfig,
    EpisodeOver,
    LabyrinthEnv,
    Setting,
    episode_return,
    expert_rollout,
    initial_state,
    path_actions,
    transition,
)


def nav_config(sample_docs, name="navigation"):
    doc = sample_docs[name]
    return EnvConfig.create(doc.graph, doc.to_task())


def test_reward_constants(sample_docs):
    config = nav_config(sample_docs)
    assert config.step_penalty == -0.1 / 9
    # shortest route takes 4 actions; its return must be exactly 1
    assert config.shortest_len == 4
    assert config.goal_reward == 1 + (4 - 1) * 0.1 / 9
    assert config.step_limit == 40 * 9


def test_action_enum_order():
    assert [a.value for a in Action] == [0, 1, 2, 3]
    assert [a.name for a in Action] == ["up", "down", "right", "left"]


def test_blocked_moves_keep_position_but_cost(sample_docs):
    config = nav_config(sample_docs)
    state = initial_state(config)
    assert state.agent == (2, 0)
    nxt, reward, terminated, truncated, info = transition(config, state, Action.down)
    assert nxt.agent == (2, 0)  # border
    assert reward == config.step_penalty
    assert not terminated and not truncated
    assert nxt.steps_taken == 1
    nxt2, reward2, *_ = transition(config, nxt, Action.right)  # wall
    assert nxt2.agent == (2, 0)
    assert reward2 == config.step_penalty


def test_goal_step_terminates_with_bonus(sample_docs):
    config = nav_config(sample_docs)
    state = initial_state(config)
    for action in (Action.up, Action.right, Action.up, Action.right):
        state, reward, terminated, truncated, info = transition(config, state, action)
    assert terminated and state.reached_goal
    assert reward == config.goal_reward
    assert info["success"] is True
    with pytest.raises(EpisodeOver):
        transition(config, state, Action.up)


def test_expert_accumulates_exactly_one(sample_docs):
    for name in ("navigation", "occluded", "key_door", "ice"):
        config = nav_config(sample_docs, name)
        traj = expert_rollout(config)
        assert traj.reached_goal
        assert abs(episode_return(traj) - 1.0) < 1e-12
        assert len(traj) == config.shortest_len


def test_truncation_floor_is_minus_four(sample_docs):
    config = nav_config(sample_docs)
    state = initial_state(config)
    total = 0.0
    while not state.done:
        state, reward, *_ = transition(config, state, Action.down)
        total += reward
    assert state.truncated and not state.terminated
    assert state.steps_taken == config.step_limit
    assert abs(total - (-4.0)) < 1e-9


def test_key_door_mechanics(sample_docs):
    config = nav_config(sample_docs, "key_door")
    task = config.task
    assert (task.key, task.door) == ((2, 1), (0, 1))
    s = initial_state(config)
    assert not s.has_key
    # collect the key: (2,0)->(1,0)->(1,1)->(1,2)->(2,2)->(2,1)
    info = {}
    for action in (Action.up, Action.right, Action.right, Action.down, Action.left):
        s, _, _, _, info = transition(config, s, action)
    assert s.agent == (2, 1)
    assert s.has_key and info["has_key"] is True
    # with the key, the door opens and the goal is reachable
    for action in (Action.right, Action.up, Action.left, Action.up, Action.right):
        s, reward, terminated, _, _ = transition(config, s, action)
    assert terminated and s.reached_goal


def test_door_blocks_before_pickup(sample_docs):
    config = nav_config(sample_docs, "key_door")
    s = initial_state(config)
    s, *_ = transition(config, s, Action.up)     # (1,0)
    s, *_ = transition(config, s, Action.right)  # (1,1)
    before = s.agent
    s, reward, *_ = transition(config, s, Action.up)  # door at (0,1): shut
    assert s.agent == before
    assert reward == config.step_penalty


def test_key_door_shortest_len_is_compound(sample_docs):
    # detour to the key first: 5 actions to the key, 5 more to the goal
    config = nav_config(sample_docs, "key_door")
    assert config.shortest_len == 10
    traj = expert_rollout(config)
    assert len(traj) == 10
    assert traj.states[5].agent == config.task.key


def test_ice_tile_ends_episode_without_goal(sample_docs):
    config = nav_config(sample_docs, "ice")
    s = initial_state(config)
    s, reward, terminated, truncated, info = transition(config, s, Action.right)
    assert s.agent == (2, 1)  # ice
    assert terminated and s.fell_through_ice and not s.reached_goal
    assert reward == config.step_penalty
    assert info["fell_through_ice"] is True


def test_ice_shortest_route_avoids_ice(sample_docs):
    config = nav_config(sample_docs, "ice")
    traj = expert_rollout(config)
    frozen = config.task.ice
    for state in traj.states:
        assert state.agent not in frozen


def test_step_limit_must_cover_shortest(sample_docs):
    doc = sample_docs["navigation"]
    with pytest.raises(ValueError):
        EnvConfig.create(doc.graph, doc.to_task(), step_limit=3)


def test_env_reset_step_surface(sample_docs):
    env = LabyrinthEnv(nav_config(sample_docs), render_mode="vector")
    obs, info = env.reset()
    assert obs.dtype == np.int32
    assert info["config_text"] == env.config.text
    obs, reward, terminated, truncated, info = env.step(Action.up)
    assert not terminated and not truncated
    assert reward == env.config.step_penalty


def test_env_full_episode_and_reset(sample_docs):
    env = LabyrinthEnv(nav_config(sample_docs), render_mode="vector")
    env.reset()
    total = 0.0
    for action in path_actions(env.solve(mode="shortest")):
        _, reward, terminated, truncated, _ = env.step(action)
        total += reward
    assert terminated
    assert abs(total - 1.0) < 1e-12
    env.reset()
    assert env.state.agent == env.config.task.start


def test_env_solve_modes(sample_docs):
    env = LabyrinthEnv(nav_config(sample_docs))
    assert env.solve(mode="all") == [env.solve(mode="shortest")]
    with pytest.raises(ValueError):
        env.solve(mode="fastest")


def test_env_save_load_round_trip(tmp_path, sample_docs):
    env = LabyrinthEnv(nav_config(sample_docs, "key_door"))
    path = tmp_path / "level.txt"
    env.save(path)
    other = LabyrinthEnv(nav_config(sample_docs))
    other.load(path)
    assert other.config.text == env.config.text
    assert other.config.task.setting == Setting.key_door


def test_env_change_start(sample_docs):
    env = LabyrinthEnv(nav_config(sample_docs))
    env.change_start((0, 0))
    assert env.config.task.start == (0, 0)
    assert env.state.agent == (0, 0)
    traj = expert_rollout(env.config)
    assert abs(episode_return(traj) - 1.0) < 1e-12


def test_transition_is_pure(sample_docs):
    config = nav_config(sample_docs)
    state = initial_state(config)
    transition(config, state, Action.up)
    transition(config, state, Action.up)
    assert state.agent == (2, 0) and state.steps_taken == 0


def test_trajectory_shape(sample_docs):
    traj = expert_rollout(nav_config(sample_docs))
    assert len(traj) == len(traj.actions) == len(traj.rewards)
    assert len(traj.states) == len(traj) + 1
    assert traj.states[0].agent == (2, 0)
    assert traj.states[-1].agent == (0, 2)
