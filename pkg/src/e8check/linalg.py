"""Exact sparse linear algebra over the Gaussian rationals.

Vectors are dicts {index: QQi} with zero entries dropped.  Elimination uses
a fixed pivot rule (leftmost nonzero column, first nonzero row, no scaling)
so that kernel bases are reproducible across runs.
"""

from __future__ import annotations

from .scalars import QQi, qq

__all__ = [
    "vzero", "vadd", "vsub", "vscale", "vaxpy", "vget", "vof", "vdense",
    "veq", "rows_rank", "kernel_basis", "solve_unique", "rref",
]

_Z = QQi(0)


def vzero() -> dict:
    return {}


def vget(v: dict, i) -> QQi:
    return v.get(i, _Z)


def vof(pairs) -> dict:
    return {i: c for i, c in pairs if not c.is_zero()}


def vdense(v: dict, n: int) -> list:
    return [v.get(i, _Z) for i in range(n)]


def vadd(u: dict, v: dict) -> dict:
    out = dict(u)
    for i, c in v.items():
        s = out.get(i)
        if s is None:
            out[i] = c
        else:
            s = s + c
            if s.is_zero():
                del out[i]
            else:
                out[i] = s
    return out


def vsub(u: dict, v: dict) -> dict:
    out = dict(u)
    for i, c in v.items():
        s = out.get(i)
        if s is None:
            out[i] = -c
        else:
            s = s - c
            if s.is_zero():
                del out[i]
            else:
                out[i] = s
    return out


def vscale(s: QQi, v: dict) -> dict:
    if s.is_zero():
        return {}
    return {i: s * c for i, c in v.items()}


def vaxpy(out: dict, s: QQi, v: dict) -> None:
    """In-place out += s*v."""
    if s.is_zero():
        return
    for i, c in v.items():
        t = out.get(i)
        t = s * c if t is None else t + s * c
        if t.is_zero():
            out.pop(i, None)
        else:
            out[i] = t


def veq(u: dict, v: dict) -> bool:
    return vsub(u, v) == {}


def rref(rows: list[dict], ncols: int):
    """Row-reduce sparse rows; returns (all_rows_reduced, pivots).

    pivots is a list of (row_index, column); pivot rows come first in the
    output.  Rows are not scaled (pivot entries keep their values).
    """
    work = [dict(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, len(work)):
            if c in work[rr]:
                pr = rr
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        for rr in range(len(work)):
            if rr != r and c in work[rr]:
                f = work[rr][c] / pv
                vaxpy(work[rr], -f, work[r])
        pivots.append((r, c))
        r += 1
    return work, pivots


def rows_rank(rows: list[dict], ncols: int) -> int:
    _, pivots = rref(rows, ncols)
    return len(pivots)


def kernel_basis(rows: list[dict], ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows}, deterministic.

    Free columns are taken in increasing order; each kernel vector has a 1
    in its free column.
    """
    red, pivots = rref(rows, ncols)
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    one = qq(1)
    for fc in free_cols:
        vec = {fc: one}
        for c, r in pivot_cols.items():
            row = red[r]
            coeff = row.get(fc)
            if coeff is not None:
                val = -coeff / row[c]
                if not val.is_zero():
                    vec[c] = val
        basis.append(vec)
    return basis


def solve_unique(rows: list[dict], rhs: list[QQi], ncols: int) -> dict:
    """Solve A x = b where solutions exist; free variables are set to 0."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if not b.is_zero():
            r[ncols] = b
        aug.append(r)
    red, pivots = rref(aug, ncols)
    for row in red[len(pivots):]:
        if row:
            raise ValueError("inconsistent linear system")
    sol = {}
    for r, c in pivots:
        b = red[r].get(ncols)
        if b is not None:
            val = b / red[r][c]
            if not val.is_zero():
                sol[c] = val
    return sol
