"""Slow, independent reimplementations used only as test oracles.

Everything here is written against the definitions directly, with no
code shared with the package internals, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import numpy as np


def neighbor_color_counts(graph, values, v, k):
    """How many neighbors of v carry each color, loops twice."""
    counts = [0] * (k + 1)
    for u, w in graph.edges:
        if u == v:
            counts[values[w - 1]] += 1
        if w == v:
            counts[values[u - 1]] += 1
    return counts


def slow_is_cover(graph, values, k):
    """Direct per-axiom scan of one assignment (0 = uncolored)."""
    for u, w in graph.edges:
        cu, cw = values[u - 1], values[w - 1]
        if cu > 0 and cu == cw:
            return False
    for v in range(1, graph.n + 1):
        counts = neighbor_color_counts(graph, values, v, k)
        c = values[v - 1]
        if c > 0:
            if any(counts[j] < 2 for j in range(1, k + 1) if j != c):
                return False
        else:
            absent = any(counts[j] == 0 for j in range(1, k + 1))
            scarce = sum(1 for j in range(1, k + 1) if counts[j] <= 1)
            if not (absent and scarce >= 2):
                return False
    return True


def all_covers(graph, k):
    """Every cover of the graph among all (k+1)^n assignments.

    Vectorized: builds the neighbor color-count tensor for the whole
    assignment block at once. Returns an array of shape (num, n).
    """
    n = graph.n
    grids = np.meshgrid(*([np.arange(k + 1)] * n), indexing="ij")
    assignments = np.stack([g.ravel() for g in grids], axis=1).astype(np.int8)

    onehot = assignments[:, :, None] == np.arange(1, k + 1)[None, None, :]
    counts = np.zeros((assignments.shape[0], n, k), dtype=np.int32)
    for u, w in graph.edges:
        counts[:, u - 1, :] += onehot[:, w - 1, :]
        counts[:, w - 1, :] += onehot[:, u - 1, :]

    ok = np.ones(assignments.shape[0], dtype=bool)
    for u, w in graph.edges:
        if u == w:
            ok &= assignments[:, u - 1] == 0
        else:
            ok &= ~(
                (assignments[:, u - 1] == assignments[:, w - 1])
                & (assignments[:, u - 1] > 0)
            )

    colored = assignments > 0
    stable = ((counts >= 2) | onehot).all(axis=2)
    absent = (counts == 0).any(axis=2)
    scarce = (counts <= 1).sum(axis=2) >= 2
    vertex_ok = np.where(colored, stable, absent & scarce)
    ok &= vertex_ok.all(axis=1)
    return assignments[ok]


def min_zeros_agreeing(covers, coloring_values):
    """Fewest uncolored vertices over covers that refine the coloring
    (each vertex keeps its color or is blanked)."""
    base = np.asarray(coloring_values, dtype=np.int8)
    agrees = ((covers == base[None, :]) | (covers == 0)).all(axis=1)
    if not agrees.any():
        return None
    return int((covers[agrees] == 0).sum(axis=1).min())


def slow_whiten(graph, values, k):
    """Fixed-point zeroing by repeated full scans, most naive form."""
    vals = list(values)
    changed = True
    while changed:
        changed = False
        for v in range(1, graph.n + 1):
            c = vals[v - 1]
            if c == 0:
                continue
            counts = neighbor_color_counts(graph, vals, v, k)
            if any(counts[j] < 2 for j in range(1, k + 1) if j != c):
                vals[v - 1] = 0
                changed = True
    return tuple(vals)


def slow_count_proper(graph, k):
    """Proper-coloring count by raw product enumeration (tiny n only)."""
    total = 0
    for values in itertools.product(range(1, k + 1), repeat=graph.n):
        if all(values[u - 1] != values[w - 1] for u, w in graph.edges):
            total += 1
    return total


def fd_gradient(fn, point, h=1e-6):
    """Central-difference gradient of a scalar function."""
    point = np.asarray(point, dtype=float)
    grad = np.empty_like(point)
    for i in range(point.size):
        step = np.zeros_like(point)
        step[i] = h
        grad[i] = (fn(point + step) - fn(point - step)) / (2 * h)
    return grad


def fd_jacobian(fn, point, h=1e-6):
    """Central-difference Jacobian of a vector function (rows = outputs)."""
    point = np.asarray(point, dtype=float)
    cols = []
    for i in range(point.size):
        step = np.zeros_like(point)
        step[i] = h
        cols.append((fn(point + step) - fn(point - step)) / (2 * h))
    return np.stack(cols, axis=1)
