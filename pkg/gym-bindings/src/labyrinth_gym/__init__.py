"""Gym-compatible bindings for the labyrinth environment toolkit."""

from .core import make, register
from .datasets import load_dataset
from .env import LabyrinthGymEnv

ENV_ID = "Labyrinth-v0"

register(ENV_ID, LabyrinthGymEnv)

__all__ = [
    "ENV_ID",
    "LabyrinthGymEnv",
    "load_dataset",
    "make",
    "register",
]
