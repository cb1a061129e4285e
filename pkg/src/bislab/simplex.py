"""Probability-simplex grids and deterministic local refinement.

Grid points are all compositions of `steps` into `dim` nonnegative parts,
divided by `steps`, enumerated in a fixed lexicographic order so that searches
are reproducible.  Channel candidates are Cartesian products of row grids,
indexed by a single integer to allow chunked, memory-bounded evaluation.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Tuple

import numpy as np

from .errors import ContractViolation


def simplex_grid(dim: int, steps: int) -> np.ndarray:
    """All pmfs on `dim` outcomes with entries that are multiples of 1/steps.

    Returns an array of shape (count, dim) in lexicographic order;
    count = C(steps + dim - 1, dim - 1).
    """
    if dim < 1 or steps < 1:
        raise ContractViolation("simplex_grid needs dim >= 1 and steps >= 1")
    if dim == 1:
        return np.ones((1, 1))
    return _compositions(steps, dim) / float(steps)


def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer compositions of `total` into `parts`, lex order."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for first in range(total + 1):
        rest = _compositions(total - first, parts - 1)
        block = np.empty((rest.shape[0], parts), dtype=np.int64)
        block[:, 0] = first
        block[:, 1:] = rest
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def simplex_grid_counts(dim: int, steps: int) -> int:
    """Number of grid points: C(steps + dim - 1, dim - 1)."""
    return comb(steps + dim - 1, dim - 1)


def channel_candidate_count(n_rows: int, dim: int, steps: int) -> int:
    return simplex_grid_counts(dim, steps) ** n_rows


def channel_candidates(
    row_grid: np.ndarray, n_rows: int, start: int, stop: int
) -> np.ndarray:
    """Decode candidate indices [start, stop) into stacked channels.

    Candidate index t maps to row choices via the mixed-radix expansion of t in
    base len(row_grid), most-significant digit = row 0.  Returns
    (stop-start, n_rows, dim).
    """
    n_points = row_grid.shape[0]
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, n_rows, row_grid.shape[1]))
    for r in range(n_rows - 1, -1, -1):
        out[:, r, :] = row_grid[idx % n_points]
        idx = idx // n_points
    return out


def refine_rows(
    rows0: np.ndarray,
    objective: Callable[[np.ndarray], Tuple],
    steps: int,
    rounds: int,
) -> np.ndarray:
    """Deterministic coordinate-descent refinement of a stochastic matrix.

    Moves mass `step` between two entries of one row at a time, accepting a
    move only when the objective tuple strictly increases; the step halves each
    round starting from 1/steps.  Objective must return a lexicographically
    comparable tuple.
    """
    best = np.array(rows0, dtype=np.float64, copy=True)
    best_val = objective(best)
    n_rows, dim = best.shape
    step = 1.0 / steps
    for _ in range(rounds):
        step /= 2.0
        improved = True
        while improved:
            improved = False
            for r in range(n_rows):
                for a in range(dim):
                    for b in range(dim):
                        if a == b or best[r, b] < step:
                            continue
                        cand = best.copy()
                        cand[r, a] += step
                        cand[r, b] -= step
                        val = objective(cand)
                        if val > best_val:
                            best, best_val = cand, val
                            improved = True
    return best
