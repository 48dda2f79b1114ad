"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The split-signature pairings and the batched sectional-curvature loops are
the only parts of the library that run over thousands of inputs at once.
Set NORDENHS_NO_NUMBA=1 to force the numpy implementations (the two paths
are compared in benchmarks/bench_kernels.py and in the test suite).
"""

import os

import numpy as np

_DISABLE = os.environ.get("NORDENHS_NO_NUMBA", "0") == "1"

if not _DISABLE:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def pair_g_np(U, V):
    """Row-wise Norden pairing g(u, v) for stacked vectors (N, 2m)."""
    m = U.shape[1] // 2
    return np.einsum("ij,ij->i", U[:, :m], V[:, :m]) - np.einsum(
        "ij,ij->i", U[:, m:], V[:, m:]
    )


def pair_gt_np(U, V):
    """Row-wise associated pairing gt(u, v) = g(Ju, v)."""
    m = U.shape[1] // 2
    return np.einsum("ij,ij->i", U[:, m:], V[:, :m]) + np.einsum(
        "ij,ij->i", U[:, :m], V[:, m:]
    )


def _sectional_scalars(gxx, gyy, gxy, txx, tyy, txy,
                       gaxx, gaxy, gayx, gayy, taxx, taxy, tayx, tayy,
                       nu, nut):
    """K and Kt numerators plus the pi1 denominator from pairing scalars.

    The tensor is R = nu (pi1 - pi2) + nut pi3 plus the shape-operator
    correction pi1(Ax, Ay, ., .) - pi2(Ax, Ay, ., .); the tilde values are
    the same tensor evaluated with the last slot rotated by J.
    """
    den = gyy * gxx - gxy * gxy
    p2 = tyy * txx - txy * txy
    p3 = -gyy * txx - gxx * tyy + 2.0 * gxy * txy
    num = nu * (den - p2) + nut * p3 + (gayy * gaxx - gaxy * gayx) - (
        tayy * taxx - taxy * tayx
    )
    p1t = gyy * txx - gxy * txy
    p2t = -tyy * gxx + txy * gxy
    p3t = gyy * gxx - gxy * gxy - tyy * txx + txy * txy
    p1ta = gayy * taxx - gaxy * tayx
    p2ta = -tayy * gaxx + taxy * gayx
    numt = nu * (p1t - p2t) + nut * p3t + p1ta - p2ta
    return num, numt, den


def sectional_batch_np(X, Y, AX, AY, nu, nut):
    """Batched (K, Kt, pi1-denominator) for planes span{x_i, y_i}.

    AX, AY carry the shape operator applied to the plane bases; pass zero
    arrays for a pure space-form tensor.
    """
    gxx = pair_g_np(X, X)
    gyy = pair_g_np(Y, Y)
    gxy = pair_g_np(X, Y)
    txx = pair_gt_np(X, X)
    tyy = pair_gt_np(Y, Y)
    txy = pair_gt_np(X, Y)
    gaxx = pair_g_np(AX, X)
    gaxy = pair_g_np(AX, Y)
    gayx = pair_g_np(AY, X)
    gayy = pair_g_np(AY, Y)
    taxx = pair_gt_np(AX, X)
    taxy = pair_gt_np(AX, Y)
    tayx = pair_gt_np(AY, X)
    tayy = pair_gt_np(AY, Y)
    num, numt, den = _sectional_scalars(
        gxx, gyy, gxy, txx, tyy, txy,
        gaxx, gaxy, gayx, gayy, taxx, taxy, tayx, tayy, nu, nut
    )
    return num, numt, den


def pi_batch_np(X, Y, Z, U):
    """Batched pi1, pi2, pi3 over quadruple rows."""
    gyz = pair_g_np(Y, Z)
    gxu = pair_g_np(X, U)
    gxz = pair_g_np(X, Z)
    gyu = pair_g_np(Y, U)
    tyz = pair_gt_np(Y, Z)
    txu = pair_gt_np(X, U)
    txz = pair_gt_np(X, Z)
    tyu = pair_gt_np(Y, U)
    p1 = gyz * gxu - gxz * gyu
    p2 = tyz * txu - txz * tyu
    p3 = -gyz * txu + gxz * tyu - tyz * gxu + txz * gyu
    return p1, p2, p3


# ---------------------------------------------------------------------------
# numba implementations (same arithmetic, explicit loops)
# ---------------------------------------------------------------------------

def _build_numba():
    @njit(cache=True)
    def _g(u, v, m):
        s = 0.0
        for i in range(m):
            s += u[i] * v[i] - u[m + i] * v[m + i]
        return s

    @njit(cache=True)
    def _gt(u, v, m):
        s = 0.0
        for i in range(m):
            s += u[m + i] * v[i] + u[i] * v[m + i]
        return s

    @njit(cache=True)
    def pair_g_nb(U, V):
        n, d = U.shape
        m = d // 2
        out = np.empty(n)
        for k in range(n):
            out[k] = _g(U[k], V[k], m)
        return out

    @njit(cache=True)
    def pair_gt_nb(U, V):
        n, d = U.shape
        m = d // 2
        out = np.empty(n)
        for k in range(n):
            out[k] = _gt(U[k], V[k], m)
        return out

    @njit(cache=True)
    def sectional_batch_nb(X, Y, AX, AY, nu, nut):
        n, d = X.shape
        m = d // 2
        num = np.empty(n)
        numt = np.empty(n)
        den = np.empty(n)
        for k in range(n):
            x = X[k]
            y = Y[k]
            ax = AX[k]
            ay = AY[k]
            gxx = _g(x, x, m)
            gyy = _g(y, y, m)
            gxy = _g(x, y, m)
            txx = _gt(x, x, m)
            tyy = _gt(y, y, m)
            txy = _gt(x, y, m)
            gaxx = _g(ax, x, m)
            gaxy = _g(ax, y, m)
            gayx = _g(ay, x, m)
            gayy = _g(ay, y, m)
            taxx = _gt(ax, x, m)
            taxy = _gt(ax, y, m)
            tayx = _gt(ay, x, m)
            tayy = _gt(ay, y, m)
            d0 = gyy * gxx - gxy * gxy
            p2 = tyy * txx - txy * txy
            p3 = -gyy * txx - gxx * tyy + 2.0 * gxy * txy
            num[k] = nu * (d0 - p2) + nut * p3 + (
                gayy * gaxx - gaxy * gayx
            ) - (tayy * taxx - taxy * tayx)
            p1t = gyy * txx - gxy * txy
            p2t = -tyy * gxx + txy * gxy
            p3t = gyy * gxx - gxy * gxy - tyy * txx + txy * txy
            p1ta = gayy * taxx - gaxy * tayx
            p2ta = -tayy * gaxx + taxy * gayx
            numt[k] = nu * (p1t - p2t) + nut * p3t + p1ta - p2ta
            den[k] = d0
        return num, numt, den

    @njit(cache=True)
    def pi_batch_nb(X, Y, Z, U):
        n, d = X.shape
        m = d // 2
        p1 = np.empty(n)
        p2 = np.empty(n)
        p3 = np.empty(n)
        for k in range(n):
            gyz = _g(Y[k], Z[k], m)
            gxu = _g(X[k], U[k], m)
            gxz = _g(X[k], Z[k], m)
            gyu = _g(Y[k], U[k], m)
            tyz = _gt(Y[k], Z[k], m)
            txu = _gt(X[k], U[k], m)
            txz = _gt(X[k], Z[k], m)
            tyu = _gt(Y[k], U[k], m)
            p1[k] = gyz * gxu - gxz * gyu
            p2[k] = tyz * txu - txz * tyu
            p3[k] = -gyz * txu + gxz * tyu - tyz * gxu + txz * gyu
        return p1, p2, p3

    return pair_g_nb, pair_gt_nb, sectional_batch_nb, pi_batch_nb


if HAVE_NUMBA:
    pair_g, pair_gt, sectional_batch, pi_batch = _build_numba()
else:
    pair_g = pair_g_np
    pair_gt = pair_gt_np
    sectional_batch = sectional_batch_np
    pi_batch = pi_batch_np


def _ascontig(a):
    return np.ascontiguousarray(a, dtype=np.float64)
