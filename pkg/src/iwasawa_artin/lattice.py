"""Small-dimensional lattice tools: LLL reduction and Fincke-Pohst enumeration
for a positive definite quadratic form given by its Gram matrix."""

from __future__ import annotations

import math

import numpy as np


def lll(gram: np.ndarray, delta: float = 0.99) -> np.ndarray:
    """LLL-reduce the basis described by ``gram``.

    Returns an integer matrix U (rows are the new basis vectors in terms of
    the old ones), so the reduced Gram matrix is U @ gram @ U.T.
    """
    n = gram.shape[0]
    U = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    G = np.array(gram, dtype=float)

    def gso(G):
        mu = np.zeros((n, n))
        B = np.zeros(n)
        for i in range(n):
            for j in range(i):
                mu[i, j] = (G[i, j] - sum(mu[j, k] * mu[i, k] * B[k] for k in range(j))) / B[j]
            B[i] = G[i, i] - sum(mu[i, k] ** 2 * B[k] for k in range(i))
        return mu, B

    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 10000:
            break
        mu, B = gso(G)
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                U[k] = U[k] - q * U[j]
                G = _apply(G, k, j, q)
                mu, B = gso(G)
        if B[k] >= (delta - mu[k, k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            U[[k, k - 1]] = U[[k - 1, k]]
            G[[k, k - 1]] = G[[k - 1, k]]
            G[:, [k, k - 1]] = G[:, [k - 1, k]]
            k = max(k - 1, 1)
    return U


def _apply(G: np.ndarray, k: int, j: int, q: int) -> np.ndarray:
    # row/column operation b_k <- b_k - q b_j on the Gram matrix
    G = G.copy()
    G[k, :] -= q * G[j, :]
    G[:, k] -= q * G[:, j]
    return G


def fincke_pohst(gram: np.ndarray, bound: float, limit: int = 10**6):
    """Yield every nonzero integer vector x with x G x^T <= bound (one of each +-pair)."""
    n = gram.shape[0]
    Q = np.array(gram, dtype=float)
    # q[i][i] and q[i][j] such that Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    q = Q.copy()
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    x = [0] * n
    count = 0

    def rec(i, remaining):
        nonlocal count
        centre = -sum(q[i, j] * x[j] for j in range(i + 1, n))
        width = math.sqrt(max(remaining, 0.0) / q[i, i])
        lo = math.ceil(centre - width - 1e-9)
        hi = math.floor(centre + width + 1e-9)
        for v in range(lo, hi + 1):
            x[i] = v
            rest = remaining - q[i, i] * (v - centre) ** 2
            if rest < -1e-9 * max(1.0, bound):
                continue
            if i == 0:
                count += 1
                if count > limit:
                    raise OverflowError("enumeration limit reached")
                yield tuple(x)
            else:
                yield from rec(i - 1, rest)
        x[i] = 0

    for vec in rec(n - 1, bound):
        if not any(vec):
            continue
        # keep one representative of +-x: first nonzero coordinate from the top positive
        top = next(c for c in reversed(vec) if c)
        if top > 0:
            yield vec
