"""Query, coin, and shift operators, and the composite search step.

One step of the search walk applies, in order: the query (sign flip at
marked vertices), the Grover diffusion coin at every vertex, and the
flip-flop shift along grid edges. All three are real involutions, so the
step is a real orthogonal map.

A dense-matrix builder is included as a brute-force oracle for small grids;
it is intended for tests only.
"""

from __future__ import annotations

import math

import numpy as np

from .grid import Direction, GridSpec, MarkedSet, N_DIRECTIONS, WalkState

# Largest basis size dense_step_matrix will materialize (guards tests
# against accidental huge allocations).
DENSE_DIM_LIMIT = 5000


class CoinSpec:
    """Grover diffusion coin for a given self-loop weight.

    The diffusion axis is the unit vector with weight ``1/sqrt(4+l)`` on the
    four arrows and ``sqrt(l)/sqrt(4+l)`` on the loop; the coin reflects the
    per-vertex coin vector about it: ``v -> 2*w*(w.v) - v``.
    """

    __slots__ = ("l", "weights")

    def __init__(self, l: float):
        if l < 0:
            raise ValueError(f"self-loop weight must be >= 0, got {l}")
        self.l = float(l)
        weights = np.ones(N_DIRECTIONS)
        weights[Direction.LOOP] = math.sqrt(self.l)
        weights /= math.sqrt(4.0 + self.l)
        weights.flags.writeable = False
        self.weights = weights


def apply_query(state: WalkState, marked: MarkedSet) -> WalkState:
    """Negate all 5 amplitudes of every marked vertex, in place."""
    if state.grid != marked.grid:
        raise ValueError("marked set and state are on different grids")
    if marked.m:
        xs, ys = marked.index_arrays
        state.amps[ys, xs, :] *= -1.0
    return state


def apply_coin(state: WalkState, coin: CoinSpec) -> WalkState:
    """Apply the diffusion coin to every vertex independently, in place."""
    a = state.amps
    w = coin.weights
    # Fixed 5-term summation order keeps results bitwise deterministic.
    d = (
        a[..., 0] * w[0]
        + a[..., 1] * w[1]
        + a[..., 2] * w[2]
        + a[..., 3] * w[3]
        + a[..., 4] * w[4]
    )
    d *= 2.0
    np.negative(a, out=a)
    a += d[..., None] * w
    return state


def apply_shift(state: WalkState) -> WalkState:
    """Flip-flop shift, in place.

    Amplitude moving along an edge arrives pointing back the way it came:
    (x, y, UP) -> (x, y+1, DOWN), (x, y, DOWN) -> (x, y-1, UP),
    (x, y, LEFT) -> (x-1, y, RIGHT), (x, y, RIGHT) -> (x+1, y, LEFT),
    all modulo the grid side; loop amplitudes stay in place.
    """
    a = state.amps  # indexed [y, x, c]; axis 0 is y, axis 1 is x
    up = a[..., Direction.UP].copy()
    a[..., Direction.UP] = np.roll(a[..., Direction.DOWN], -1, axis=0)
    a[..., Direction.DOWN] = np.roll(up, 1, axis=0)
    left = a[..., Direction.LEFT].copy()
    a[..., Direction.LEFT] = np.roll(a[..., Direction.RIGHT], 1, axis=1)
    a[..., Direction.RIGHT] = np.roll(left, -1, axis=1)
    return state


def step(state: WalkState, marked: MarkedSet, coin: CoinSpec) -> WalkState:
    """One search step: query, then coin, then shift, in place."""
    apply_query(state, marked)
    apply_coin(state, coin)
    apply_shift(state)
    return state


def dense_step_matrix(
    grid: GridSpec, marked: MarkedSet, coin: CoinSpec
) -> np.ndarray:
    """Explicit 5N x 5N matrix of the search step, built column by column.

    Brute-force verification oracle for small grids; refuses dimensions
    above ``DENSE_DIM_LIMIT``.
    """
    dim = N_DIRECTIONS * grid.n_vertices
    if dim > DENSE_DIM_LIMIT:
        raise ValueError(
            f"dense step matrix would be {dim}x{dim}; limit is {DENSE_DIM_LIMIT}"
        )
    matrix = np.empty((dim, dim))
    for j in range(dim):
        column = WalkState.zeros(grid)
        column.vector[j] = 1.0
        step(column, marked, coin)
        matrix[:, j] = column.vector
    return matrix
