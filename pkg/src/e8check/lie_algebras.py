"""Structural elements of the f4 / e6 / e7 tower and their matrix avatars.

An F4Element is D + A1(a1) + A2(a2) + A3(a3): an so(8) matrix D acting on
the first octonion coordinate (with the triality companion pair acting on
the other two) plus three octonion-parametrized maps.  E6 adds a traceless
Jordan multiplication, E7 adds two Jordan slots and a scalar.

The e7 action on the 56-dimensional space is the unique extension of the
displayed action on (X,0,0,0) that is skew wrt the symplectic form and
compatible with the cross operation; both constraints are enforced by the
test suite rather than assumed.
"""

from __future__ import annotations

import math

import numpy as np

from .scalars import QQi, Octonion, qq, EXACT, APPROX
from .jordan import JordanElement, jordan_mul, jordan_inner
from .tables import (T, GIDX, GPOS, jF, DIM_J, DIM_P, DIM_F4, DIM_E6, DIM_E7,
                     DIM_E8, lin_apply, bil_apply)
from . import linalg as la

__all__ = [
    "F4Element", "E6Element", "E7Element", "LinearEndo",
    "f4_act", "e6_act", "e6_transpose", "e7_act", "e7_bracket",
    "e7_bracket_by_commutator", "killing_e7",
    "f4_basis", "e6_basis", "e7_basis", "to_endo", "exp_endo",
    "span_dimension",
]

_Z = QQi(0)
_1 = QQi(1)


class F4Element:
    """D + A1(a1) + A2(a2) + A3(a3), stored as 52 sparse coordinates."""

    __slots__ = ("sp",)

    def __init__(self, sp: dict):
        self.sp = sp

    @staticmethod
    def zero():
        return F4Element({})

    @staticmethod
    def G(i: int, j: int, coeff=_1):
        """The so(8) generator G_ij (e_j -> e_i, e_i -> -e_j on x1)."""
        if not 0 <= i < j <= 7:
            raise ValueError("need 0 <= i < j <= 7")
        return F4Element({GPOS[(i, j)]: coeff})

    @staticmethod
    def from_D(D):
        """From an 8x8 antisymmetric scalar matrix (list of lists)."""
        sp = {}
        for (i, j) in GIDX:
            c = D[i][j]
            if not c.is_zero():
                sp[GPOS[(i, j)]] = c
        return F4Element(sp)

    @staticmethod
    def A(k: int, a: Octonion):
        """The map A_k(a), k in 1..3."""
        sp = {}
        for m, c in enumerate(a.coeffs):
            if not c.is_zero():
                sp[28 + 8 * (k - 1) + m] = c
        return F4Element(sp)

    @property
    def D(self):
        """Dense 8x8 matrix of the so(8) part."""
        M = [[_Z] * 8 for _ in range(8)]
        for n, c in self.sp.items():
            if n < 28:
                i, j = GIDX[n]
                M[i][j] = c
                M[j][i] = -c
        return M

    def a(self, k: int) -> Octonion:
        base = 28 + 8 * (k - 1)
        return Octonion([self.sp.get(base + m, _Z) for m in range(8)])

    def __add__(self, other):
        return F4Element(la.vadd(self.sp, other.sp))

    def __sub__(self, other):
        return F4Element(la.vsub(self.sp, other.sp))

    def __neg__(self):
        return F4Element(la.vscale(QQi(-1), self.sp))

    def smul(self, s):
        return F4Element(la.vscale(s, self.sp))

    def __eq__(self, other):
        return isinstance(other, F4Element) and self.sp == other.sp

    def is_zero(self):
        return not self.sp


class E6Element:
    """phi = delta + T~ with delta in f4 and T a traceless Jordan element."""

    __slots__ = ("sp",)

    def __init__(self, sp: dict):
        self.sp = sp

    @staticmethod
    def zero():
        return E6Element({})

    @staticmethod
    def from_parts(delta: F4Element, Tpart: JordanElement):
        if not Tpart.trace().is_zero():
            raise ValueError("T part must be traceless")
        sp = dict(delta.sp)
        for n, c in T.j_to_t(Tpart.sp).items():
            sp[DIM_F4 + n] = c
        return E6Element(sp)

    @staticmethod
    def from_T(Tpart: JordanElement):
        return E6Element.from_parts(F4Element.zero(), Tpart)

    @property
    def delta(self) -> F4Element:
        return F4Element({n: c for n, c in self.sp.items() if n < DIM_F4})

    @property
    def Tpart(self) -> JordanElement:
        tc = {n - DIM_F4: c for n, c in self.sp.items() if n >= DIM_F4}
        return JordanElement(T.t_to_j(tc))

    def transpose(self) -> "E6Element":
        """phi^T = -delta + T~, the adjoint wrt the Jordan inner product."""
        return E6Element(T.e6_transpose_sp(self.sp))

    def __add__(self, other):
        return E6Element(la.vadd(self.sp, other.sp))

    def __sub__(self, other):
        return E6Element(la.vsub(self.sp, other.sp))

    def __neg__(self):
        return E6Element(la.vscale(QQi(-1), self.sp))

    def smul(self, s):
        return E6Element(la.vscale(s, self.sp))

    def __eq__(self, other):
        return isinstance(other, E6Element) and self.sp == other.sp

    def is_zero(self):
        return not self.sp


class E7Element:
    """Phi(phi, A, B, nu)."""

    __slots__ = ("sp",)

    def __init__(self, sp: dict):
        self.sp = sp

    @staticmethod
    def zero():
        return E7Element({})

    @staticmethod
    def from_parts(phi: E6Element, A: JordanElement, B: JordanElement, nu):
        return E7Element(T.e7_join(phi.sp, A.sp, B.sp, nu))

    @property
    def phi(self) -> E6Element:
        return E6Element(T.e7_parts(self.sp)[0])

    @property
    def A(self) -> JordanElement:
        return JordanElement(T.e7_parts(self.sp)[1])

    @property
    def B(self) -> JordanElement:
        return JordanElement(T.e7_parts(self.sp)[2])

    @property
    def nu(self):
        return self.sp.get(T.E7_NU, _Z)

    def __add__(self, other):
        return E7Element(la.vadd(self.sp, other.sp))

    def __sub__(self, other):
        return E7Element(la.vsub(self.sp, other.sp))

    def __neg__(self):
        return E7Element(la.vscale(QQi(-1), self.sp))

    def smul(self, s):
        return E7Element(la.vscale(s, self.sp))

    def __eq__(self, other):
        return isinstance(other, E7Element) and self.sp == other.sp

    def is_zero(self):
        return not self.sp


# ---------------------------------------------------------------------
# actions and brackets
# ---------------------------------------------------------------------

def f4_act(d: F4Element, X: JordanElement) -> JordanElement:
    return JordanElement(T.f4_act_sp(d.sp, X.sp))


def e6_act(phi: E6Element, X: JordanElement) -> JordanElement:
    return JordanElement(T.e6_act_sp(phi.sp, X.sp))


def e6_transpose(phi: E6Element) -> E6Element:
    return phi.transpose()


def e7_act(Phi: E7Element, P):
    """Action on the Freudenthal space; P is a freudenthal.PVector."""
    from .freudenthal import PVector
    return PVector.from_sp(T.e7_act_sp(Phi.sp, P.sp))


def e7_bracket(Phi1: E7Element, Phi2: E7Element) -> E7Element:
    return E7Element(T.e7_bracket_sp(Phi1.sp, Phi2.sp))


def e7_bracket_by_commutator(Phi1: E7Element, Phi2: E7Element) -> E7Element:
    """Independent route: commutator of the 56-dim actions + extraction.

    Serves as the oracle for the closed-form bracket.  Raises if the
    commutator action fails to be of structural e7 form.
    """
    a1 = {m: T.e7_act_sp(Phi1.sp, {m: _1}) for m in range(DIM_P)}
    a2 = {m: T.e7_act_sp(Phi2.sp, {m: _1}) for m in range(DIM_P)}
    comm = {}
    for m in range(DIM_P):
        v = la.vsub(T.e7_act_sp(Phi1.sp, a2[m]), T.e7_act_sp(Phi2.sp, a1[m]))
        if v:
            comm[m] = v
    out = T.e7_extract_from_action(comm)
    # re-verify: the extracted element must reproduce the commutator
    for m in range(DIM_P):
        if T.e7_act_sp(out, {m: _1}) != comm.get(m, {}):
            raise ArithmeticError("commutator is not of structural e7 form")
    return E7Element(out)


def killing_e7(Phi1: E7Element, Phi2: E7Element):
    """B7: trace form of the adjoint representation over the 133 basis."""
    return T.b7_sp(Phi1.sp, Phi2.sp)


# ---------------------------------------------------------------------
# basis enumeration / dimension audits
# ---------------------------------------------------------------------

def f4_basis():
    return [F4Element({n: _1}) for n in range(DIM_F4)]


def e6_basis():
    return [E6Element({n: _1}) for n in range(DIM_E6)]


def e7_basis():
    return [E7Element({n: _1}) for n in range(DIM_E7)]


def span_dimension(elements) -> int:
    """Exact rank of the coordinate span of structural elements."""
    rows = [dict(e.sp) for e in elements]
    dims = {DIM_F4: DIM_F4, DIM_E6: DIM_E6, DIM_E7: DIM_E7}
    ncols = max((max(r) for r in rows if r), default=-1) + 1
    return la.rows_rank(rows, ncols)


# ---------------------------------------------------------------------
# dense endomorphisms
# ---------------------------------------------------------------------

class LinearEndo:
    """Dense square matrix over a fixed basis, exact or approx backend.

    conj_linear marks maps like tau that conjugate scalars before acting;
    composition tracks the flag and conjugates the inner matrix as needed.
    """

    __slots__ = ("dim", "entries", "conj_linear", "backend")

    def __init__(self, entries, conj_linear=False):
        if isinstance(entries, np.ndarray):
            self.backend = APPROX
            self.entries = entries.astype(complex)
            self.dim = entries.shape[0]
        else:
            self.backend = EXACT
            self.entries = entries
            self.dim = len(entries)
        self.conj_linear = conj_linear

    @staticmethod
    def identity(dim, backend=EXACT):
        if backend == APPROX:
            return LinearEndo(np.eye(dim, dtype=complex))
        return LinearEndo([[_1 if i == j else _Z for j in range(dim)]
                           for i in range(dim)])

    @staticmethod
    def from_columns(cols: dict, dim: int):
        M = [[_Z] * dim for _ in range(dim)]
        for j, col in cols.items():
            for i, c in col.items():
                M[i][j] = c
        return LinearEndo(M)

    def to_numpy(self) -> np.ndarray:
        if self.backend == APPROX:
            return self.entries
        return np.array([[c.to_complex() for c in row] for row in self.entries])

    def apply_sp(self, v: dict) -> dict:
        if self.backend != EXACT:
            raise ValueError("sparse apply needs the exact backend")
        if self.conj_linear:
            v = {n: c.conj() for n, c in v.items()}
        out = {}
        for j, c in v.items():
            for i in range(self.dim):
                e = self.entries[i][j]
                if not e.is_zero():
                    t = out.get(i, _Z) + e * c
                    if t.is_zero():
                        out.pop(i, None)
                    else:
                        out[i] = t
        return out

    def apply_vec(self, v: np.ndarray) -> np.ndarray:
        if self.conj_linear:
            v = np.conj(v)
        return self.to_numpy() @ v

    def compose(self, other: "LinearEndo") -> "LinearEndo":
        """self after other."""
        if self.backend == APPROX or other.backend == APPROX:
            B = other.to_numpy()
            if self.conj_linear:
                B = np.conj(B)
            return LinearEndo(self.to_numpy() @ B,
                              conj_linear=self.conj_linear ^ other.conj_linear)
        B = other.entries
        if self.conj_linear:
            B = [[c.conj() for c in row] for row in B]
        n = self.dim
        out = [[_Z] * n for _ in range(n)]
        for i in range(n):
            rowA = self.entries[i]
            outi = out[i]
            for k in range(n):
                a = rowA[k]
                if a.is_zero():
                    continue
                rowB = B[k]
                for j in range(n):
                    b = rowB[j]
                    if not b.is_zero():
                        outi[j] = outi[j] + a * b
        return LinearEndo(out, conj_linear=self.conj_linear ^ other.conj_linear)

    def __eq__(self, other):
        return (isinstance(other, LinearEndo) and self.conj_linear == other.conj_linear
                and self.backend == other.backend
                and (np.array_equal(self.entries, other.entries)
                     if self.backend == APPROX else self.entries == other.entries))

    def close_to(self, other, tol=1e-9):
        return np.max(np.abs(self.to_numpy() - other.to_numpy())) <= tol


_SPACE_DIMS = {"J": DIM_J, "P": DIM_P, "e7": DIM_E7, "e8": DIM_E8}


def _action_columns(element, space: str) -> dict:
    if isinstance(element, F4Element):
        if space != "J":
            raise ValueError("f4 elements act on J")
        return {m: T.f4_act_sp(element.sp, {m: _1}) for m in range(DIM_J)}
    if isinstance(element, E6Element):
        if space == "J":
            return {m: T.e6_act_sp(element.sp, {m: _1}) for m in range(DIM_J)}
        if space == "P":
            e7sp = dict(element.sp)
            return {m: T.e7_act_sp(e7sp, {m: _1}) for m in range(DIM_P)}
        raise ValueError("e6 elements act on J or P")
    if isinstance(element, E7Element):
        if space == "P":
            return {m: T.e7_act_sp(element.sp, {m: _1}) for m in range(DIM_P)}
        if space == "e7":
            return {m: T.e7_bracket_sp(element.sp, {m: _1}) for m in range(DIM_E7)}
        raise ValueError("e7 elements act on P (or adjointly on e7)")
    raise TypeError(f"no action for {type(element).__name__}")


_NAMED_MAPS = {
    ("sigma4", "J"): lambda: T.SIG4_J,
    ("sigma", "J"): lambda: T.SIG_J,
    ("sigma4", "P"): lambda: T.SIG4_P,
    ("sigma", "P"): lambda: T.SIG_P,
    ("lambda", "P"): lambda: T.LAMBDA_P,
    ("sigma4", "e7"): lambda: T.SIG4_E7,
    ("sigma", "e7"): lambda: T.SIG_E7,
}


def to_endo(element, space: str, backend=EXACT) -> LinearEndo:
    """Matrix of an element's action over the canonical basis of a space.

    `element` may be a structural algebra element, one of the named maps
    ("sigma4", "sigma", "lambda"), or an e8 operation from e8_core.
    """
    dim = _SPACE_DIMS[space]
    if isinstance(element, str):
        key = (element, space)
        if key in _NAMED_MAPS:
            cols = _NAMED_MAPS[key]()
        elif space == "e8":
            from .e8_core import named_e8_columns
            cols = named_e8_columns(element)
        else:
            raise KeyError(f"unknown named map {element} on {space}")
    else:
        cols = _action_columns(element, space)
    endo = LinearEndo.from_columns(cols, dim)
    if backend == APPROX:
        return LinearEndo(endo.to_numpy())
    return endo


def exp_endo(M: LinearEndo, tol=1e-14) -> LinearEndo:
    """Matrix exponential by scaling and squaring with a Taylor series.

    Approx backend only: transcendental values have no exact home.
    """
    A = M.to_numpy()
    if M.conj_linear:
        raise ValueError("cannot exponentiate a conjugate-linear map")
    norm = np.linalg.norm(A, 1)
    squarings = 0
    if norm > 0.5:
        squarings = max(0, int(math.ceil(math.log2(norm / 0.5))))
        A = A / (2 ** squarings)
    n = A.shape[0]
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    k = 1
    while True:
        term = term @ A / k
        out = out + term
        if np.max(np.abs(term)) < tol or k > 60:
            break
        k += 1
    for _ in range(squarings):
        out = out @ out
    return LinearEndo(out)
