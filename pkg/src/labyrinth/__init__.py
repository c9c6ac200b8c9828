"""Deterministic, seedable labyrinth environments for imitation-learning work.

The package generates verifiably unique maze structures, solves them exactly,
simulates four task variants with a shortest-path-normalized reward, reads and
writes an ASCII configuration language, and emits expert-demonstration
datasets together with distribution-shift analytics.
"""

from .config_io import ConfigDocument, load, parse, save, serialize
from .datagen import (
    DistributionSummary,
    EvalReport,
    SplitSet,
    UniquenessRegistry,
    action_distribution,
    config_from_text,
    evaluate,
    expert_action,
    expert_policy,
    expert_rollout,
    generate_splits,
    js_distance,
    manifest_episodes,
    placement_shift_experiment,
    random_policy,
    read_manifest,
    replay_episode,
    rollout,
    summarize,
    tile_distribution,
    write_dataset,
    ws_distance,
)
from .env import (
    Action,
    EnvConfig,
    EnvState,
    LabyrinthEnv,
    Trajectory,
    episode_return,
    initial_state,
    reward_of,
    success,
    transition,
)
from .errors import (
    AtTarget,
    BadDistribution,
    BadGeometry,
    BadHeader,
    BadTiles,
    Degenerate,
    DisconnectedStructure,
    EmptyInput,
    EpisodeOver,
    InvalidPlacement,
    LabyrinthError,
    MutualExclusion,
    NeedsBraiding,
    NoKeyCandidate,
    NoPath,
    NoSharedTile,
    NoUniqueTiles,
    ParseError,
    PathCapExceeded,
    SizeTooSmall,
    SplitsExhausted,
    Unsatisfiable,
)
from .grid_graph import (
    Dims,
    LabyrinthGraph,
    braid,
    canonical_text,
    generate_perfect,
    structure_hash,
)
from .observe import (
    PALETTE,
    decode_vector,
    encode_vector,
    render_full,
    render_occluded,
    vector_length,
)
from .solver import (
    DistanceMap,
    all_paths,
    count_paths,
    distance_map,
    optimal_action,
    path_actions,
    shortest_path,
)
from .tasks import (
    PlacementMode,
    Setting,
    TaskSpec,
    change_start,
    change_start_and_goal,
    default_min_distance,
    place_biased,
    place_ice,
    place_key_and_door,
    place_unbiased,
    validate_task,
)

__version__ = "1.0.0"
