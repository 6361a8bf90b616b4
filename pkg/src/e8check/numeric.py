"""Double-precision mirrors of the exact structure tables.

Bilinear operations are stored as COO index/value arrays generated from
the exact tables, so the numeric backend cannot drift from the exact one.
Everything here is internal plumbing for the flow and orbit machinery.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .scalars import QQi
from .tables import T, jF, DIM_J, DIM_P, DIM_E7, DIM_E8
from . import linalg as la

__all__ = [
    "np_bilinear_apply", "np_jmul", "np_jcross", "np_fcross", "np_e7act",
    "np_e8_bracket", "np_e8_ad", "np_skew", "np_jordan_inner", "np_jordan_det",
    "np_oct_mul", "np_oct_conj", "np_matrix", "np_vec", "J_GRAM", "OCT_MUL_T",
]


def _coo_from_table(table, out_dim):
    I, J, K, V = [], [], [], []
    for (i, j), cell in table.items():
        for k, c in cell.items():
            I.append(i)
            J.append(j)
            K.append(k)
            V.append(c.to_complex())
    return (np.array(I), np.array(J), np.array(K),
            np.array(V, dtype=complex), out_dim)


@lru_cache(maxsize=None)
def _coo(name):
    if name == "jmul":
        return _coo_from_table(T.JMUL, DIM_J)
    if name == "jcross":
        return _coo_from_table(T.JCROSS, DIM_J)
    if name == "fcross":
        return _coo_from_table(T.FCROSS, DIM_E7)
    if name == "e7act":
        tbl = {}
        for n, cols in T.E7ACT.items():
            for m, cell in cols.items():
                tbl[(n, m)] = cell
        return _coo_from_table(tbl, DIM_P)
    if name == "e8brk":
        tbl = {}
        for n, cols in enumerate(T.E8ADJ):
            for m, cell in cols.items():
                tbl[(n, m)] = cell
        return _coo_from_table(tbl, DIM_E8)
    raise KeyError(name)


def np_bilinear_apply(name, u, v):
    I, J, K, V, out_dim = _coo(name)
    out = np.zeros(out_dim, dtype=complex)
    np.add.at(out, K, u[I] * v[J] * V)
    return out


def np_jmul(u, v):
    return np_bilinear_apply("jmul", u, v)


def np_jcross(u, v):
    return np_bilinear_apply("jcross", u, v)


def np_fcross(u, v):
    return np_bilinear_apply("fcross", u, v)


def np_e7act(e, p):
    return np_bilinear_apply("e7act", e, p)


def np_e8_bracket(u, v):
    return np_bilinear_apply("e8brk", u, v)


def np_e8_ad(u):
    """248x248 matrix of ad(u)."""
    I, J, K, V, _ = _coo("e8brk")
    M = np.zeros((DIM_E8, DIM_E8), dtype=complex)
    np.add.at(M, (K, J), u[I] * V)
    return M


J_GRAM = np.array([1.0] * 3 + [2.0] * 24)


def np_jordan_inner(u, v):
    return np.sum(u * v * J_GRAM)


@lru_cache(maxsize=None)
def _skew_mat():
    S = np.zeros((DIM_P, DIM_P), dtype=complex)
    one = QQi(1)
    for n in range(DIM_P):
        for m in range(DIM_P):
            S[n, m] = T.skew_sp({n: one}, {m: one}).to_complex()
    return S


def np_skew(u, v):
    return u @ _skew_mat() @ v


def np_jordan_det(u):
    x1, x2, x3 = u[3:11], u[11:19], u[19:27]
    d = u[0] * u[1] * u[2] + 2 * np_oct_mul(x1, np_oct_mul(x2, x3))[0]
    for k, x in ((0, x1), (1, x2), (2, x3)):
        d -= u[k] * np.sum(x * x)
    return d


@lru_cache(maxsize=None)
def _oct_mul_tensor():
    from .scalars import OCT_TABLE
    M = np.zeros((8, 8, 8))
    for i in range(8):
        for j in range(8):
            k, s = OCT_TABLE[i][j]
            M[k, i, j] = s
    return M


OCT_MUL_T = _oct_mul_tensor


def np_oct_mul(x, y):
    return np.einsum("kij,i,j->k", _oct_mul_tensor(), x, y)


def np_oct_conj(x):
    out = -np.asarray(x, dtype=complex).copy()
    out[0] = -out[0]
    return out


def np_matrix(cols: dict, dim: int) -> np.ndarray:
    """Dense complex matrix from a sparse exact column map."""
    M = np.zeros((dim, dim), dtype=complex)
    for j, col in cols.items():
        for i, c in col.items():
            M[i, j] = c.to_complex()
    return M


def np_vec(sp: dict, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    for i, c in sp.items():
        v[i] = c.to_complex()
    return v
