"""Edge-sum kernels over the extended neighbour table.

Each kernel takes ``nbr`` (``(M, 2n)`` int64, -1 for vertices outside
Omega and its boundary) and ``U`` (``(M, c)`` float64, one zero-extended
column per function on the extended vertex list).  Column ``2a`` of ``nbr``
is the ``-e_a`` neighbour and column ``2a + 1`` the ``+e_a`` neighbour.

Every kernel exists twice: an explicit loop compiled with numba, and a
vectorized numpy version.  ``LATTICE_INEQ_BACKEND`` picks which one the
public names point at.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

_CHUNK_ELEMS = 1 << 24


def _padded(U):
    return np.vstack([U, np.zeros((1, U.shape[1]))])


def _column_chunks(M, width, c):
    step = max(1, _CHUNK_ELEMS // max(1, M * width))
    for start in range(0, c, step):
        yield slice(start, min(c, start + step))


# -- numpy path ------------------------------------------------------------

def laplacian_columns_numpy(nbr, U, n):
    M = U.shape[0]
    idx = np.where(nbr < 0, M, nbr)
    out = np.empty_like(U)
    for sl in _column_chunks(M, 2 * n, U.shape[1]):
        block = U[:, sl]
        pad = _padded(block)
        out[:, sl] = (pad[idx] - block[:, None, :]).sum(axis=1) / (2 * n)
    return out


def energy_terms_numpy(nbr, U, n):
    """Per column: (1/2) sum over ordered edges of grad^2, the coordinate
    Gamma-square sum, and the per-direction corrections (1/4) sum grad^2."""
    M, c = U.shape
    idx = np.where(nbr < 0, M, nbr)
    energy = np.empty(c)
    cgsq = np.empty(c)
    corr = np.empty((c, n))
    for sl in _column_chunks(M, 2 * n, c):
        block = U[:, sl]
        nb_vals = _padded(block)[idx]
        diff2 = (nb_vals - block[:, None, :]) ** 2
        energy[sl] = 0.5 * diff2.sum(axis=(0, 1))
        acc = np.zeros(block.shape[1])
        for a in range(n):
            corr[sl, a] = 0.25 * (diff2[:, 2 * a, :] + diff2[:, 2 * a + 1, :]).sum(axis=0)
            gam = (nb_vals[:, 2 * a + 1, :] - nb_vals[:, 2 * a, :]) / (4 * n)
            acc += (gam**2).sum(axis=0)
        cgsq[sl] = (2 * n) * acc
    return energy, cgsq, corr


def coord_gamma_columns_numpy(nbr, U, alpha, n, rows):
    M = U.shape[0]
    pad = _padded(U)
    lo = np.where(nbr[:rows, 2 * alpha] < 0, M, nbr[:rows, 2 * alpha])
    hi = np.where(nbr[:rows, 2 * alpha + 1] < 0, M, nbr[:rows, 2 * alpha + 1])
    return (pad[hi] - pad[lo]) / (4 * n)


# -- loop path (numba) -----------------------------------------------------

def _laplacian_columns_loop(nbr, U, n):
    M, c = U.shape
    out = np.empty((M, c))
    inv = 1.0 / (2 * n)
    for x in range(M):
        for j in range(c):
            s = 0.0
            ux = U[x, j]
            for col in range(2 * n):
                y = nbr[x, col]
                uy = U[y, j] if y >= 0 else 0.0
                s += uy - ux
            out[x, j] = s * inv
    return out


def _energy_terms_loop(nbr, U, n):
    M, c = U.shape
    energy = np.zeros(c)
    cgsq = np.zeros(c)
    corr = np.zeros((c, n))
    for j in range(c):
        for x in range(M):
            ux = U[x, j]
            for a in range(n):
                y0 = nbr[x, 2 * a]
                y1 = nbr[x, 2 * a + 1]
                u0 = U[y0, j] if y0 >= 0 else 0.0
                u1 = U[y1, j] if y1 >= 0 else 0.0
                d0 = u0 - ux
                d1 = u1 - ux
                sq = d0 * d0 + d1 * d1
                energy[j] += 0.5 * sq
                corr[j, a] += 0.25 * sq
                gam = (u1 - u0) / (4 * n)
                cgsq[j] += gam * gam
        cgsq[j] *= 2 * n
    return energy, cgsq, corr


def _coord_gamma_columns_loop(nbr, U, alpha, n, rows):
    c = U.shape[1]
    out = np.empty((rows, c))
    for x in range(rows):
        y0 = nbr[x, 2 * alpha]
        y1 = nbr[x, 2 * alpha + 1]
        for j in range(c):
            u0 = U[y0, j] if y0 >= 0 else 0.0
            u1 = U[y1, j] if y1 >= 0 else 0.0
            out[x, j] = (u1 - u0) / (4 * n)
    return out


laplacian_columns_loop = njit(_laplacian_columns_loop)
energy_terms_loop = njit(_energy_terms_loop)
coord_gamma_columns_loop = njit(_coord_gamma_columns_loop)

if USE_NUMBA:
    laplacian_columns = laplacian_columns_loop
    energy_terms = energy_terms_loop
    coord_gamma_columns = coord_gamma_columns_loop
else:
    laplacian_columns = laplacian_columns_numpy
    energy_terms = energy_terms_numpy
    coord_gamma_columns = coord_gamma_columns_numpy


def as_columns(values):
    """Contiguous float64 2-D view expected by the kernels."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    return arr.reshape(arr.shape[0], -1)
