"""Independent brute-force reference implementations used only by tests.

Everything here is a literal double loop over definitions, deliberately
sharing no code with the package internals it checks.
"""
import math

import numpy as np


def naive_distance_matrix(u_vals, w_vals):
    u = np.atleast_2d(np.asarray(u_vals, dtype=float))
    w = np.atleast_2d(np.asarray(w_vals, dtype=float))
    if u.shape[0] == 1 and u.shape[1] > 1 and np.asarray(u_vals).ndim == 1:
        u = u.T
    if w.shape[0] == 1 and w.shape[1] > 1 and np.asarray(w_vals).ndim == 1:
        w = w.T
    out = np.empty((u.shape[0], w.shape[0]))
    for i in range(u.shape[0]):
        for j in range(w.shape[0]):
            out[i, j] = math.sqrt(sum((a - b) ** 2 for a, b in zip(u[i], w[j])))
    return out


def naive_min_pool(m, omega_w):
    m = np.asarray(m, dtype=float)
    n, cols = m.shape
    out = np.empty((n, cols - omega_w + 1))
    for i in range(n):
        for j in range(cols - omega_w + 1):
            out[i, j] = min(m[i, j : j + omega_w])
    return out


def naive_lower_bound(pool, omega_u):
    pool = np.asarray(pool, dtype=float)
    n, cols = pool.shape
    out = np.empty((n - omega_u + 1, cols))
    for i in range(n - omega_u + 1):
        for j in range(cols):
            acc = 0.0
            for k in range(i, i + omega_u):
                acc += pool[k, j]
            out[i, j] = acc
    return out


def naive_upper_bound(m, omega_u, omega_w):
    m = np.asarray(m, dtype=float)
    n, cols = m.shape
    out = np.empty((n - omega_u + 1, cols - omega_w + 1))
    for i in range(n - omega_u + 1):
        for j in range(cols - omega_w + 1):
            acc = 0.0
            for k in range(omega_w - 1):
                acc += m[i + k, j + k]
            for k in range(omega_w - 1, omega_u):
                acc += m[i + k, j + omega_w - 1]
            out[i, j] = acc
    return out
