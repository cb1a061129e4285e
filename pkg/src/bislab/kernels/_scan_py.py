"""Pure-numpy fallback for the codebook scan kernel."""

from __future__ import annotations

import numpy as np


def scan_triples(x_seq, v_rows, u_rows, pmf, s_v, s_u, delta):
    """Strong-typicality mask for (x_seq, v_rows[j], u_rows[j]) triples.

    x_seq: (n,) int64; v_rows, u_rows: (n_cand, n) int64; pmf: flattened joint
    over cells x*(s_v*s_u) + v*s_u + u.  Returns a uint8 mask of length n_cand.
    """
    x_seq = np.ascontiguousarray(x_seq, dtype=np.int64)
    v_rows = np.ascontiguousarray(v_rows, dtype=np.int64)
    u_rows = np.ascontiguousarray(u_rows, dtype=np.int64)
    pmf = np.ascontiguousarray(pmf, dtype=np.float64)
    n_cand, n = v_rows.shape
    n_cells = pmf.shape[0]
    if n_cand == 0:
        return np.zeros(0, dtype=np.uint8)
    cells = x_seq[None, :] * (s_v * s_u) + v_rows * s_u + u_rows
    if int(cells.max()) >= n_cells or int(cells.min()) < 0:
        raise ValueError("symbol indices exceed the reference pmf cells")
    flat = (cells + (np.arange(n_cand, dtype=np.int64) * n_cells)[:, None]).ravel()
    counts = np.bincount(flat, minlength=n_cand * n_cells).reshape(n_cand, n_cells)
    freq = counts / n
    dev_ok = np.abs(freq - pmf[None, :]) <= delta
    zero_ok = (pmf[None, :] > 0.0) | (counts == 0)
    return (dev_ok & zero_ok).all(axis=1).astype(np.uint8)
