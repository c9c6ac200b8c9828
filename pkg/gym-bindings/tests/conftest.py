import pytest

# 3x3 maze, start lower-left, goal upper-right, exactly one solution
NAV_TEXT = """\
key_and_lock: False
icy_floor: False
occlusion: False
labyrinth:
-------------
|   |     E |
|   +   + - |
|           |
|   + - +   |
| S |       |
-------------
end
"""


@pytest.fixture
def nav_file(tmp_path):
    path = tmp_path / "nav.labyrinth"
    path.write_text(NAV_TEXT, encoding="utf-8")
    return path
