"""Gym-style wrapper around the native labyrinth environment.

All semantics live in the native package; this class only builds the native
config, declares spaces, converts types, and forwards native errors
unchanged.
"""

from typing import Optional

import numpy as np

import labyrinth

from .core import Box, Discrete, Env

_FLAG_SETTINGS = (
    ("occlusion", labyrinth.Setting.occluded),
    ("key_and_door", labyrinth.Setting.key_door),
    ("icy_floor", labyrinth.Setting.ice),
)


def _setting_of(occlusion: bool, key_and_door: bool, icy_floor: bool):
    flags = dict(occlusion=occlusion, key_and_door=key_and_door, icy_floor=icy_floor)
    chosen = [setting for name, setting in _FLAG_SETTINGS if flags[name]]
    if len(chosen) > 1:
        raise labyrinth.MutualExclusion(
            "at most one of occlusion, key_and_door, icy_floor may be set"
        )
    return chosen[0] if chosen else labyrinth.Setting.navigation


class LabyrinthGymEnv(Env):
    """One native environment behind the usual reset/step five-tuple surface.

    shape is (rows, cols).  Construction generates a fresh structure,
    deterministic in seed, with the biased start/goal placement; load() can
    swap in any .labyrinth file afterwards.
    """

    metadata = {"render_modes": ["rgb_array", "vector"]}

    def __init__(
        self,
        shape=(5, 5),
        occlusion: bool = False,
        key_and_door: bool = False,
        icy_floor: bool = False,
        render_mode: str = "rgb_array",
        seed: int = 0,
        size: int = 600,
    ):
        setting = _setting_of(occlusion, key_and_door, icy_floor)
        rows, cols = shape
        config = labyrinth.generate_splits(
            (cols, rows), (1, 0, 0), setting=setting, seed=seed
        ).train[0]
        self._native = labyrinth.LabyrinthEnv(config, render_mode=render_mode, size=size)
        self.render_mode = render_mode
        self.action_space = Discrete(len(labyrinth.Action))
        self.observation_space = self._observation_space()

    @property
    def config(self):
        return self._native.config

    def _observation_space(self) -> Box:
        if self.render_mode == "vector":
            dims = self._native.config.graph.dims
            setting = self._native.config.task.setting
            info = np.iinfo(np.int32)
            return Box(info.min, info.max,
                       (labyrinth.vector_length(dims, setting),), np.int32)
        size = self._native.size
        return Box(0, 255, (size, size, 3), np.uint8)

    def reset(self, *, seed: Optional[int] = None, options: Optional[dict] = None):
        return self._native.reset(seed=seed, options=options)

    def step(self, action):
        return self._native.step(action)

    def render(self):
        return self._native.observe()

    def close(self) -> None:
        pass

    def solve(self, mode: str = "all"):
        return self._native.solve(mode)

    def save(self, path) -> None:
        self._native.save(path)

    def load(self, path):
        result = self._native.load(path)
        self.observation_space = self._observation_space()
        return result

    def change_start(self, new_start):
        return self._native.change_start(new_start)

    def change_start_and_goal(self, new_start, new_goal):
        return self._native.change_start_and_goal(new_start, new_goal)
