"""Gym plumbing: gymnasium when installed, else a minimal stand-in.

The stand-in covers exactly what the wrapper needs: an Env base class, the
Discrete and Box spaces, and an id -> constructor registry with make().
Either way, make() here constructs the wrapper directly, with no extra
wrapper layers, so behavior is identical whichever library is present.
"""

import numpy as np

try:
    import gymnasium as _gymnasium
except ImportError:
    _gymnasium = None


if _gymnasium is not None:
    Env = _gymnasium.Env
    Discrete = _gymnasium.spaces.Discrete
    Box = _gymnasium.spaces.Box
else:

    class Env:
        """Minimal gym-style environment base."""

        metadata = {"render_modes": []}
        render_mode = None
        action_space = None
        observation_space = None

        def reset(self, *, seed=None, options=None):
            raise NotImplementedError

        def step(self, action):
            raise NotImplementedError

        def render(self):
            raise NotImplementedError

        def close(self):
            pass

        @property
        def unwrapped(self):
            return self

    class Discrete:
        """The integers 0 .. n-1."""

        def __init__(self, n: int):
            if n < 1:
                raise ValueError("n must be positive")
            self.n = int(n)
            self.shape = ()
            self.dtype = np.int64

        def contains(self, x) -> bool:
            try:
                value = int(x)
            except (TypeError, ValueError):
                return False
            return 0 <= value < self.n

        def __repr__(self) -> str:
            return f"Discrete({self.n})"

        def __eq__(self, other) -> bool:
            return isinstance(other, Discrete) and other.n == self.n

    class Box:
        """An axis-aligned box of arrays with one dtype and shape."""

        def __init__(self, low, high, shape, dtype):
            self.shape = tuple(shape)
            self.dtype = np.dtype(dtype)
            self.low = np.broadcast_to(np.asarray(low, self.dtype), self.shape)
            self.high = np.broadcast_to(np.asarray(high, self.dtype), self.shape)

        def contains(self, x) -> bool:
            arr = np.asarray(x)
            return (
                arr.shape == self.shape
                and arr.dtype == self.dtype
                and bool(np.all(arr >= self.low))
                and bool(np.all(arr <= self.high))
            )

        def __repr__(self) -> str:
            return f"Box({self.low.min()}, {self.high.max()}, {self.shape}, {self.dtype})"


_REGISTRY: dict = {}


def register(env_id: str, entry_point) -> None:
    """Register a constructor locally and, best-effort, with gymnasium."""
    _REGISTRY[env_id] = entry_point
    if _gymnasium is not None:
        try:
            _gymnasium.register(
                id=env_id, entry_point=entry_point, disable_env_checker=True
            )
        except Exception:
            pass  # already registered; local registry still works


def make(env_id: str, **kwargs):
    """Construct a registered environment directly (no wrapper layers)."""
    if env_id not in _REGISTRY:
        raise KeyError(f"unknown environment id {env_id!r}")
    return _REGISTRY[env_id](**kwargs)
