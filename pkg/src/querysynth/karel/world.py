"""Grid-world state for the Karel DSL.

Worlds are a fixed 16x16 grid.  Each cell is either an obstacle or holds a
marker count between 0 and 10, and the agent stands on some non-obstacle
cell facing one of four directions.  Cells serialize to a 16-bit feature
vector: four agent-facing bits, an obstacle bit, an out-of-grid boundary bit
(always zero for cells inside a well-formed world), and ten one-hot marker
count bits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

GRID_SIZE = 16
MAX_MARKERS = 10
OBSTACLE = -1

FACINGS = ("N", "S", "W", "E")

# One step forward per facing, as (delta_row, delta_col); row 0 is the top.
_DELTAS = {"N": (-1, 0), "S": (1, 0), "W": (0, -1), "E": (0, 1)}
_LEFT = {"N": "W", "W": "S", "S": "E", "E": "N"}
_RIGHT = {v: k for k, v in _LEFT.items()}

CELL_FEATURE_COUNT = 16


class WorldError(ValueError):
    pass


@dataclass(frozen=True)
class KarelWorld:
    """Immutable world state.

    grid[r][c] is OBSTACLE or a marker count in 0..MAX_MARKERS.
    """

    grid: tuple[tuple[int, ...], ...]
    agent_row: int
    agent_col: int
    facing: str


def validate_world(world: KarelWorld) -> None:
    """Raise WorldError unless every structural invariant holds."""
    if len(world.grid) != GRID_SIZE or any(len(row) != GRID_SIZE for row in world.grid):
        raise WorldError("grid must be 16x16")
    for row in world.grid:
        for v in row:
            if v != OBSTACLE and not (0 <= v <= MAX_MARKERS):
                raise WorldError(f"bad cell value {v}")
    if not (0 <= world.agent_row < GRID_SIZE and 0 <= world.agent_col < GRID_SIZE):
        raise WorldError("agent outside the grid")
    if world.grid[world.agent_row][world.agent_col] == OBSTACLE:
        raise WorldError("agent standing on an obstacle")
    if world.facing not in FACINGS:
        raise WorldError(f"bad facing {world.facing!r}")


def build_start_world() -> KarelWorld:
    """The fixed protocol start input: an empty grid, agent at (8, 8) facing N."""
    empty = tuple(tuple(0 for _ in range(GRID_SIZE)) for _ in range(GRID_SIZE))
    return KarelWorld(grid=empty, agent_row=8, agent_col=8, facing="N")


@dataclass(frozen=True)
class WorldConfig:
    """Distribution knobs for sample_world."""

    obstacle_prob: float = 0.10
    marker_prob: float = 0.15
    max_marker_count: int = 3  # sampled counts are 1..this (<= MAX_MARKERS)

    def __post_init__(self) -> None:
        if not (1 <= self.max_marker_count <= MAX_MARKERS):
            raise WorldError("max_marker_count outside 1..10")


def sample_world(rng: random.Random, cfg: WorldConfig = WorldConfig()) -> KarelWorld:
    """Draw a random valid world: obstacles and markers cellwise, agent on a free cell."""
    grid = []
    free = []
    for r in range(GRID_SIZE):
        row = []
        for c in range(GRID_SIZE):
            u = rng.random()
            if u < cfg.obstacle_prob:
                row.append(OBSTACLE)
            else:
                free.append((r, c))
                if rng.random() < cfg.marker_prob:
                    row.append(rng.randint(1, cfg.max_marker_count))
                else:
                    row.append(0)
        grid.append(tuple(row))
    # An all-obstacle draw is astronomically unlikely but must not crash.
    if not free:
        r = rng.randrange(GRID_SIZE)
        c = rng.randrange(GRID_SIZE)
        grid[r] = tuple(0 if j == c else v for j, v in enumerate(grid[r]))
        free.append((r, c))
    agent_row, agent_col = rng.choice(free)
    facing = rng.choice(FACINGS)
    return KarelWorld(grid=tuple(grid), agent_row=agent_row, agent_col=agent_col, facing=facing)


def _value_features(v: int) -> list[int]:
    feats = [0] * CELL_FEATURE_COUNT
    if v == OBSTACLE:
        feats[4] = 1
    elif v > 0:
        feats[5 + v] = 1  # feature 6 is "1 marker", feature 15 is "10 markers"
    return feats


def cell_features(world: KarelWorld, r: int, c: int) -> tuple[int, ...]:
    """The 16-bit feature vector for one cell.

    Order: agent facing N, S, W, E; obstacle; out-of-grid boundary; then
    one-hot marker counts 1..10.
    """
    feats = _value_features(world.grid[r][c])
    if r == world.agent_row and c == world.agent_col:
        feats[FACINGS.index(world.facing)] = 1
    return tuple(feats)


_CELL_VALUES = (OBSTACLE, *range(MAX_MARKERS + 1))
_PLAIN_BITS = {v: "".join(str(b) for b in _value_features(v)) for v in _CELL_VALUES}
_AGENT_BITS = {
    (f, v): "".join(
        str(1 if i == FACINGS.index(f) else b)
        for i, b in enumerate(_value_features(v))
    )
    for f in FACINGS
    for v in _CELL_VALUES
}


def serialize_world(world: KarelWorld) -> str:
    """One-line record: 256 space-separated 16-character bitstrings, row-major."""
    ar, ac = world.agent_row, world.agent_col
    agent_bits = _AGENT_BITS[world.facing, world.grid[ar][ac]]
    parts = []
    for r, row in enumerate(world.grid):
        if r == ar:
            parts.extend(_PLAIN_BITS[v] for v in row[:ac])
            parts.append(agent_bits)
            parts.extend(_PLAIN_BITS[v] for v in row[ac + 1:])
        else:
            parts.extend(_PLAIN_BITS[v] for v in row)
    return " ".join(parts)


def parse_world(line: str) -> KarelWorld:
    """Inverse of serialize_world; raises WorldError on malformed records."""
    parts = line.split()
    if len(parts) != GRID_SIZE * GRID_SIZE:
        raise WorldError(f"expected {GRID_SIZE * GRID_SIZE} cells, found {len(parts)}")
    grid = [[0] * GRID_SIZE for _ in range(GRID_SIZE)]
    agent = None
    facing = None
    for idx, bits in enumerate(parts):
        if len(bits) != CELL_FEATURE_COUNT or set(bits) - {"0", "1"}:
            raise WorldError(f"bad cell record {bits!r}")
        r, c = divmod(idx, GRID_SIZE)
        f = [int(b) for b in bits]
        if f[5]:
            raise WorldError("boundary bit set on an in-grid cell")
        hero = [i for i in range(4) if f[i]]
        if len(hero) > 1:
            raise WorldError("cell with more than one facing bit")
        if hero:
            if agent is not None:
                raise WorldError("more than one agent cell")
            agent = (r, c)
            facing = FACINGS[hero[0]]
        marks = [i - 5 for i in range(6, CELL_FEATURE_COUNT) if f[i]]
        if len(marks) > 1:
            raise WorldError("cell with more than one marker-count bit")
        if f[4]:
            if marks or hero:
                raise WorldError("obstacle cell with markers or agent")
            grid[r][c] = OBSTACLE
        elif marks:
            grid[r][c] = marks[0]
    if agent is None:
        raise WorldError("no agent cell")
    world = KarelWorld(
        grid=tuple(tuple(row) for row in grid),
        agent_row=agent[0],
        agent_col=agent[1],
        facing=facing,
    )
    validate_world(world)
    return world


def forward_cell(world: KarelWorld) -> tuple[int, int]:
    dr, dc = _DELTAS[world.facing]
    return world.agent_row + dr, world.agent_col + dc


def left_facing(facing: str) -> str:
    return _LEFT[facing]


def right_facing(facing: str) -> str:
    return _RIGHT[facing]


def with_agent(world: KarelWorld, row: int, col: int, facing: str) -> KarelWorld:
    return replace(world, agent_row=row, agent_col=col, facing=facing)
