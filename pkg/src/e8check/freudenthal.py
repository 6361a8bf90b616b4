"""The 56-dimensional Freudenthal space and its distinguished maps.

PVector = (X, Y, xi, eta) over the ordered basis X(27) + Y(27) + xi + eta.
The cross operation P x Q is valued in structural e7 elements; kappa, mu
and lambda are the fixed linear maps used to carve out symplectic and
spin subgroups.
"""

from __future__ import annotations

from .scalars import QQi, qq
from .jordan import JordanElement, E1, jordan_cross, jordan_inner
from .lie_algebras import E6Element, E7Element
from .tables import T, DIM_J, DIM_P, lin_apply
from . import linalg as la

__all__ = [
    "PVector", "vee", "fcross", "skew",
    "lambda_map", "kappa_map", "mu_map", "kappa1", "mu_norm",
    "sigma4_on_P", "sigma_on_P", "P_BASIS_SIZE",
]

_Z = QQi(0)
_1 = QQi(1)

P_BASIS_SIZE = DIM_P


class PVector:
    """Element of the Freudenthal space J + J + C + C."""

    __slots__ = ("sp",)

    def __init__(self, X: JordanElement, Y: JordanElement, xi, eta):
        self.sp = T.p_join(X.sp, Y.sp, xi, eta)

    @classmethod
    def from_sp(cls, sp: dict):
        obj = cls.__new__(cls)
        obj.sp = sp
        return obj

    @staticmethod
    def zero():
        return PVector.from_sp({})

    @staticmethod
    def basis(n: int):
        return PVector.from_sp({n: _1})

    @property
    def X(self) -> JordanElement:
        return JordanElement({n: c for n, c in self.sp.items() if n < DIM_J})

    @property
    def Y(self) -> JordanElement:
        return JordanElement({n - DIM_J: c for n, c in self.sp.items()
                              if DIM_J <= n < 2 * DIM_J})

    @property
    def xi(self):
        return self.sp.get(54, _Z)

    @property
    def eta(self):
        return self.sp.get(55, _Z)

    def coords(self):
        return la.vdense(self.sp, DIM_P)

    def __add__(self, other):
        return PVector.from_sp(la.vadd(self.sp, other.sp))

    def __sub__(self, other):
        return PVector.from_sp(la.vsub(self.sp, other.sp))

    def __neg__(self):
        return PVector.from_sp(la.vscale(QQi(-1), self.sp))

    def smul(self, s):
        return PVector.from_sp(la.vscale(s, self.sp))

    def __eq__(self, other):
        return isinstance(other, PVector) and self.sp == other.sp

    def is_zero(self):
        return not self.sp

    def __repr__(self):
        return (f"P(X={self.X!r}, Y={self.Y!r}, xi={self.xi}, eta={self.eta})")


def vee(X: JordanElement, W: JordanElement) -> E6Element:
    """X v W = [X~, W~] + (X o W - (X,W)E/3)~, an e6 element.

    Its action on Z is X o (W o Z) - W o (X o Z) + (X o W) o Z - (X,W)Z/3.
    """
    return E6Element(T.vee_sp(X.sp, W.sp))


def fcross(P: PVector, Q: PVector) -> E7Element:
    """The cross operation P x Q, a structural e7 element (symmetric)."""
    return E7Element(T.fcross_sp(P.sp, Q.sp))


def skew(P: PVector, Q: PVector):
    """{P, Q} = (X,W) - (Z,Y) + xi omega - zeta eta (alternating)."""
    return T.skew_sp(P.sp, Q.sp)


def lambda_map(P: PVector) -> PVector:
    """lambda(X, Y, xi, eta) = (Y, -X, eta, -xi); lambda^2 = -1."""
    return PVector.from_sp(lin_apply(T.LAMBDA_P, P.sp))


def kappa1(X: JordanElement) -> JordanElement:
    """kappa1 X = (E1, X)E1 - 4 E1 x (E1 x X)."""
    t = jordan_cross(E1, jordan_cross(E1, X))
    return E1.smul(jordan_inner(E1, X)) - t.smul(qq(4))


def kappa_map(P: PVector) -> PVector:
    """kappa(X, Y, xi, eta) = (-kappa1 X, kappa1 Y, -xi, eta)."""
    return PVector(-kappa1(P.X), kappa1(P.Y), -P.xi, P.eta)


def mu_map(P: PVector) -> PVector:
    """mu(X, Y, xi, eta) = (2E1 x Y + eta E1, 2E1 x X + xi E1, (E1,Y), (E1,X))."""
    X, Y = P.X, P.Y
    nX = jordan_cross(E1, Y).smul(qq(2)) + E1.smul(P.eta)
    nY = jordan_cross(E1, X).smul(qq(2)) + E1.smul(P.xi)
    return PVector(nX, nY, jordan_inner(E1, Y), jordan_inner(E1, X))


def mu_norm(P: PVector):
    """(P, P)_mu = {mu P, P} / 2, the quadratic form of the mu-pairing."""
    return qq(1, 2) * skew(mu_map(P), P)


def sigma4_on_P(P: PVector) -> PVector:
    """Componentwise sigma4, scalars fixed; order 4."""
    return PVector.from_sp(lin_apply(T.SIG4_P, P.sp))


def sigma_on_P(P: PVector) -> PVector:
    return PVector.from_sp(lin_apply(T.SIG_P, P.sp))
