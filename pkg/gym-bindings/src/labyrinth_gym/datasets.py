"""Read expert datasets (JSONL manifest plus PNG frames) into episodes."""

from pathlib import Path

from labyrinth import manifest_episodes, read_manifest


def load_dataset(manifest_path) -> list:
    """Group one manifest into episode dicts with resolved image paths.

    Each episode holds parallel lists over its records (the terminal record
    keeps the -1 action sentinel) plus the configuration text under "info".
    """
    path = Path(manifest_path)
    root = path.parent
    episodes = []
    for records in manifest_episodes(read_manifest(path)):
        episodes.append(
            {
                "obs": [str(root / record["obs"]) for record in records],
                "actions": [record["actions"] for record in records],
                "rewards": [record["rewards"] for record in records],
                "episode_starts": [record["episode_starts"] for record in records],
                "info": records[0]["info"],
            }
        )
    return episodes
