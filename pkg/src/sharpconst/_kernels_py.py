"""Pure NumPy implementations of the hot kernels.

Same signatures and results as the compiled module ``sharpconst._core``;
used as the fallback when the extension is not built (and by the benchmark
for the compiled-versus-vectorised comparison).
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def tri_assembly_arrays(xy, tris):
    """Per-triangle P1 stiffness and consistent-mass contributions.

    Returns COO triplet arrays (rows, cols, k_vals, m_vals), nine entries
    per triangle.  Stiffness uses the standard gradient (cotangent) formula,
    mass is the exact (area/12) [[2,1,1],[1,2,1],[1,1,2]] block.
    """
    tris = np.asarray(tris)
    p0 = xy[tris[:, 0]]
    p1 = xy[tris[:, 1]]
    p2 = xy[tris[:, 2]]
    # edge vectors opposite each vertex
    e0 = p2 - p1
    e1 = p0 - p2
    e2 = p1 - p0
    det = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]  # 2 * signed area
    area = 0.5 * det
    # grad phi_i = rot90(e_i) / (2A); K_ij = A grad_i . grad_j = e_i.e_j/(4A)
    edges = np.stack([e0, e1, e2], axis=1)  # (nt, 3, 2)
    dots = np.einsum("tid,tjd->tij", edges, edges)
    k_local = dots / (4.0 * area)[:, None, None]
    m_pattern = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]]) / 12.0
    m_local = area[:, None, None] * m_pattern

    rows = np.repeat(tris, 3, axis=1).reshape(-1)
    cols = np.tile(tris, (1, 3)).reshape(-1)
    return (
        rows.astype(np.int64),
        cols.astype(np.int64),
        k_local.reshape(-1),
        m_local.reshape(-1),
    )


def edge_mass_arrays(xy, edges):
    """Per-edge 1-D consistent mass (length/6) [[2,1],[1,2]] as COO triplets."""
    edges = np.asarray(edges)
    pa = xy[edges[:, 0]]
    pb = xy[edges[:, 1]]
    length = np.hypot(pb[:, 0] - pa[:, 0], pb[:, 1] - pa[:, 1])
    i = edges[:, 0]
    j = edges[:, 1]
    # per-edge blocks (i,i), (j,j), (i,j), (j,i), same stream as the
    # compiled kernel so the two backends are interchangeable bit for bit
    rows = np.stack([i, j, i, j], axis=1).reshape(-1).astype(np.int64)
    cols = np.stack([i, j, j, i], axis=1).reshape(-1).astype(np.int64)
    third, sixth = length / 3.0, length / 6.0
    vals = np.stack([third, third, sixth, sixth], axis=1).reshape(-1)
    return rows, cols, vals


def pq_energy(u, gw, nw, inv_h, p, q):
    """Discrete gradient-term and norm-term energies with gradients.

    A = sum_i gw[i] |(u[i+1]-u[i]) * inv_h|**p   (interval/cell weights gw)
    B = sum_j nw[j] |u[j]|**q                    (node weights nw)

    Returns (A, B, dA/du, dB/du).
    """
    d = (u[1:] - u[:-1]) * inv_h
    ad = np.abs(d)
    t = _power(ad, p - 1.0)  # |d|^(p-1), reused for value and gradient
    big_a = float((gw * t * ad).sum())
    s = gw * t * np.sign(d) * (p * inv_h)
    grad_a = np.zeros_like(u)
    grad_a[:-1] -= s
    grad_a[1:] += s

    au = np.abs(u)
    t = _power(au, q - 1.0)
    big_b = float((nw * t * au).sum())
    grad_b = nw * t * np.sign(u) * q
    return big_a, big_b, grad_a, grad_b


def _power(x, e):
    if e == 1.0:
        return x
    if e == 0.0:
        return np.ones_like(x)
    return x**e
