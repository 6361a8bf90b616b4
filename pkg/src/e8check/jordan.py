"""The 27-dimensional exceptional Jordan algebra and its order-4 symmetry.

Elements are hermitian 3x3 matrices over the (complexified) octonions,
coordinatized as (xi1, xi2, xi3, x1, x2, x3) with three diagonal scalars
and three octonions.  The canonical coordinate order over the 27 basis
E1, E2, E3, F1(e0..e7), F2(..), F3(..) is fixed package-wide.
"""

from __future__ import annotations

from .scalars import (QQi, Octonion, Scalar, EXACT, backend_of, zero, one,
                      scalars_close, oct_mul, oct_conj)
from .tables import T, jF, DIM_J, J_WEIGHTS
from . import linalg as la

__all__ = [
    "JordanElement", "E1", "E2", "E3", "E_IDENTITY", "F",
    "jordan_mul", "jordan_inner", "jordan_tri", "jordan_cross", "jordan_det",
    "sigma_map", "sigma4_map", "eigenspace_split_sigma4", "JORDAN_BASIS_NAMES",
]

_Z = QQi(0)
_1 = QQi(1)


class JordanElement:
    """Element of the exceptional Jordan algebra, exact or approx backend."""

    __slots__ = ("sp",)

    def __init__(self, sp: dict):
        self.sp = sp

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return JordanElement({})

    @staticmethod
    def basis(n: int):
        return JordanElement({n: _1})

    @staticmethod
    def diag(xi1, xi2, xi3):
        sp = {}
        for i, v in enumerate((xi1, xi2, xi3)):
            if not v.is_zero():
                sp[i] = v
        return JordanElement(sp)

    @staticmethod
    def from_parts(xi1, xi2, xi3, x1: Octonion, x2: Octonion, x3: Octonion):
        sp = {}
        for i, v in enumerate((xi1, xi2, xi3)):
            if not v.is_zero():
                sp[i] = v
        for k, x in enumerate((x1, x2, x3)):
            for m, c in enumerate(x.coeffs):
                if not c.is_zero():
                    sp[jF(k + 1, m)] = c
        return JordanElement(sp)

    @staticmethod
    def identity():
        return JordanElement({0: _1, 1: _1, 2: _1})

    # -- coordinate access --------------------------------------------

    def xi(self, i: int):
        """Diagonal entry, i in 1..3."""
        return self.sp.get(i - 1, _Z)

    def x(self, k: int) -> Octonion:
        """Off-diagonal octonion, k in 1..3."""
        return Octonion([self.sp.get(jF(k, m), _Z) for m in range(8)])

    def coords(self) -> list:
        return la.vdense(self.sp, DIM_J)

    def trace(self):
        return self.sp.get(0, _Z) + self.sp.get(1, _Z) + self.sp.get(2, _Z)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        return JordanElement(la.vadd(self.sp, other.sp))

    def __sub__(self, other):
        return JordanElement(la.vsub(self.sp, other.sp))

    def __neg__(self):
        return JordanElement(la.vscale(QQi(-1), self.sp))

    def smul(self, s):
        return JordanElement(la.vscale(s, self.sp))

    def __eq__(self, other):
        return isinstance(other, JordanElement) and self.sp == other.sp

    def __hash__(self):
        return hash(tuple(sorted((k, hash(v)) for k, v in self.sp.items())))

    def is_zero(self):
        return not self.sp

    def close_to(self, other, tol=1e-9):
        d = la.vsub(self.sp, other.sp)
        return all(abs(c.to_complex()) <= tol for c in d.values())

    def __repr__(self):
        names = JORDAN_BASIS_NAMES
        terms = [f"({c})*{names[n]}" for n, c in sorted(self.sp.items())]
        return "J[" + " + ".join(terms) + "]" if terms else "J[0]"


def _name(n):
    if n < 3:
        return f"E{n + 1}"
    k, m = divmod(n - 3, 8)
    return f"F{k + 1}(e{m})"


JORDAN_BASIS_NAMES = [_name(n) for n in range(DIM_J)]

E1 = JordanElement.basis(0)
E2 = JordanElement.basis(1)
E3 = JordanElement.basis(2)
E_IDENTITY = JordanElement.identity()


def F(k: int, x) -> JordanElement:
    """F_k(x) for an Octonion or a basis index."""
    if isinstance(x, int):
        return JordanElement.basis(jF(k, x))
    return JordanElement({jF(k, m): c for m, c in enumerate(x.coeffs)
                          if not c.is_zero()})


def jordan_mul(X: JordanElement, Y: JordanElement) -> JordanElement:
    """X o Y = (XY + YX)/2."""
    return JordanElement(T.jmul(X.sp, Y.sp))


def jordan_inner(X: JordanElement, Y: JordanElement):
    """(X, Y) = tr(X o Y)."""
    return T.jinner(X.sp, Y.sp)


def jordan_cross(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Freudenthal cross multiplication."""
    return JordanElement(T.jcross(X.sp, Y.sp))


def jordan_tri(X: JordanElement, Y: JordanElement, Z: JordanElement):
    """(X, Y, Z) = (X, Y x Z); fully symmetric."""
    return T.jinner(X.sp, T.jcross(Y.sp, Z.sp))


def jordan_det(X: JordanElement):
    """det X = xi1 xi2 xi3 + 2 Re(x1 x2 x3) - sum_k xi_k x_k conj(x_k)."""
    x1, x2, x3 = X.x(1), X.x(2), X.x(3)
    d = X.xi(1) * X.xi(2) * X.xi(3)
    d = d + QQi(2) * oct_mul(x1, oct_mul(x2, x3)).coeffs[0]
    for k, x in ((1, x1), (2, x2), (3, x3)):
        n = _Z
        for c in x.coeffs:
            n = n + c * c
        d = d - X.xi(k) * n
    return d


def sigma_map(X: JordanElement) -> JordanElement:
    """sigma: negate the x2, x3 blocks."""
    return JordanElement({n: (-c if n >= 11 else c) for n, c in X.sp.items()})


def sigma4_map(X: JordanElement) -> JordanElement:
    """sigma4: x1 -> -e1 x1 e1, x2 -> e1 x2, x3 -> -x3 e1, diagonal fixed."""
    from .tables import lin_apply
    return JordanElement(lin_apply(T.SIG4_J, X.sp))


def eigenspace_split_sigma4():
    """Bases of the sigma4-fixed space and its invariant complement in J.

    The fixed space is spanned by E1, E2, E3, F1(e0), F1(e1) (dimension 5);
    the complement F1(e2..e7) + F2 + F3 (dimension 22) is sigma4-invariant
    and carries the eigenvalues -1 (on the F1 part) and +-i (on F2, F3).
    """
    fixed = [JordanElement.basis(n) for n in (0, 1, 2, jF(1, 0), jF(1, 1))]
    moving = [JordanElement.basis(jF(1, m)) for m in range(2, 8)]
    moving += [JordanElement.basis(jF(2, m)) for m in range(8)]
    moving += [JordanElement.basis(jF(3, m)) for m in range(8)]
    return fixed, moving
