"""Grid geometry, coin basis, marked sets, and the amplitude-vector state.

The walker lives on a square ``side x side`` grid with periodic (torus)
boundaries. Every vertex carries a 5-component coin register: four movement
directions plus a self-loop. A walk state is therefore a real vector of
length ``5 * side**2``.

All reachable states of the search walk are real (the coin, shift, and query
operators are real and the start state is real), so amplitudes are stored as
float64 rather than complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable

import numpy as np

N_DIRECTIONS = 5

# |squared norm - 1| allowed for states meant to be physical.
NORM_TOL = 1e-10


class Direction(IntEnum):
    """Coin basis order; also the layout of the last amplitude axis.

    UP moves a walker from (x, y) to (x, y+1), DOWN to (x, y-1), LEFT to
    (x-1, y), RIGHT to (x+1, y); LOOP stays put.
    """

    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3
    LOOP = 4


@dataclass(frozen=True)
class GridSpec:
    """Square torus with ``side`` vertices per dimension (``side >= 2``)."""

    side: int

    def __post_init__(self) -> None:
        if not isinstance(self.side, int):
            raise ValueError(f"side must be an integer, got {self.side!r}")
        # On side=1 all four neighbors alias the vertex itself; excluded.
        if self.side < 2:
            raise ValueError(f"side must be >= 2, got {self.side}")

    @property
    def n_vertices(self) -> int:
        return self.side * self.side


def flat_index(grid: GridSpec, x: int, y: int, c: int) -> int:
    """Flat position of basis state (x, y, c): coin-fastest, then x, then y.

    The layout is ``c + 5 * (x + side * y)``, so the five coin amplitudes of
    a vertex are contiguous.
    """
    side = grid.side
    if not (0 <= x < side and 0 <= y < side):
        raise ValueError(f"coordinate ({x}, {y}) out of range for side={side}")
    if not (0 <= c < N_DIRECTIONS):
        raise ValueError(f"coin index {c} out of range")
    return int(c) + N_DIRECTIONS * (x + side * y)


@dataclass(frozen=True)
class MarkedSet:
    """Validated set of marked vertex coordinates on a grid.

    Coordinates are normalized to a sorted tuple, so equality and iteration
    order are deterministic. The set may be empty at this level; search runs
    reject empty sets themselves.
    """

    grid: GridSpec
    coords: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        side = self.grid.side
        seen: set[tuple[int, int]] = set()
        normalized = []
        for x, y in self.coords:
            x, y = int(x), int(y)
            if not (0 <= x < side and 0 <= y < side):
                raise ValueError(
                    f"marked vertex ({x}, {y}) out of range for side={side}"
                )
            if (x, y) in seen:
                raise ValueError(f"duplicate marked vertex ({x}, {y})")
            seen.add((x, y))
            normalized.append((x, y))
        object.__setattr__(self, "coords", tuple(sorted(normalized)))

    @classmethod
    def of(cls, grid: GridSpec, coords: Iterable[tuple[int, int]]) -> "MarkedSet":
        return cls(grid, tuple(coords))

    @property
    def m(self) -> int:
        return len(self.coords)

    @cached_property
    def index_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(xs, ys) integer arrays for fancy indexing into amplitude arrays."""
        xs = np.array([x for x, _ in self.coords], dtype=np.intp)
        ys = np.array([y for _, y in self.coords], dtype=np.intp)
        return xs, ys


class WalkState:
    """Real amplitude vector over the (vertex, coin) basis.

    Amplitudes are held in a ``(side, side, 5)`` float64 array indexed
    ``[y, x, c]``; its C-order flattening matches :func:`flat_index`.
    The default constructor checks unit norm; auxiliary non-normalized
    states (stationary-state building blocks, basis columns) go through
    :meth:`unnormalized`.
    """

    __slots__ = ("grid", "amps")

    def __init__(self, grid: GridSpec, amps: np.ndarray, *, _check: bool = True):
        amps = np.ascontiguousarray(amps, dtype=np.float64)
        expected = (grid.side, grid.side, N_DIRECTIONS)
        if amps.shape != expected:
            raise ValueError(f"amplitudes must have shape {expected}, got {amps.shape}")
        if _check:
            norm_sq = float(np.einsum("yxc,yxc->", amps, amps))
            if abs(norm_sq - 1.0) > NORM_TOL:
                raise ValueError(
                    f"state is not normalized (squared norm {norm_sq!r}); "
                    "use WalkState.unnormalized for auxiliary states"
                )
        self.grid = grid
        self.amps = amps

    @classmethod
    def unnormalized(cls, grid: GridSpec, amps: np.ndarray) -> "WalkState":
        """Construct without the unit-norm check. For auxiliary states only."""
        return cls(grid, amps, _check=False)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "WalkState":
        return cls.unnormalized(
            grid, np.zeros((grid.side, grid.side, N_DIRECTIONS))
        )

    @classmethod
    def basis(cls, grid: GridSpec, x: int, y: int, c: int) -> "WalkState":
        """Basis state with amplitude 1 at (x, y, c)."""
        state = cls.zeros(grid)
        state.vector[flat_index(grid, x, y, c)] = 1.0
        return state

    @property
    def vector(self) -> np.ndarray:
        """Flat length-5N view in :func:`flat_index` order."""
        return self.amps.reshape(-1)

    def amplitude(self, x: int, y: int, c: int) -> float:
        return float(self.amps[y, x, c])

    def norm(self) -> float:
        return math.sqrt(float(np.einsum("yxc,yxc->", self.amps, self.amps)))

    def copy(self) -> "WalkState":
        return WalkState.unnormalized(self.grid, self.amps.copy())


def initial_state(grid: GridSpec, l: float) -> WalkState:
    """Start state: uniform over vertices, arrows weighted 1 and loop sqrt(l).

    Every arrow amplitude is ``1 / sqrt(N * (4 + l))`` and every loop
    amplitude ``sqrt(l) / sqrt(N * (4 + l))``. With ``l = 0`` this is the
    loopless walk's start state with an identically-zero loop component.
    """
    if l < 0:
        raise ValueError(f"self-loop weight must be >= 0, got {l}")
    scale = 1.0 / math.sqrt(grid.n_vertices * (4.0 + l))
    amps = np.empty((grid.side, grid.side, N_DIRECTIONS))
    amps[..., : Direction.LOOP] = scale
    amps[..., Direction.LOOP] = math.sqrt(l) * scale
    return WalkState(grid, amps)


def overlap(state_a: WalkState, state_b: WalkState) -> float:
    """Real inner product of two states on the same grid."""
    if state_a.grid != state_b.grid:
        raise ValueError("overlap requires states on the same grid")
    # einsum keeps the reduction single-threaded and order-fixed, so results
    # are bitwise reproducible under concurrent sweeps.
    return float(np.einsum("yxc,yxc->", state_a.amps, state_b.amps))


def marked_probability(state: WalkState, marked: MarkedSet) -> float:
    """Probability of measuring any marked vertex: sum of its 5 |amplitude|^2."""
    if state.grid != marked.grid:
        raise ValueError("marked set and state are on different grids")
    if marked.m == 0:
        return 0.0
    xs, ys = marked.index_arrays
    block = state.amps[ys, xs, :]
    return float(np.einsum("vc,vc->", block, block))
