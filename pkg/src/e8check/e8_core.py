"""The 248-dimensional algebra: bracket, Killing form, null-cone map.

e8 = e7 + P + P + C^3 over the ordered basis Phi(133) | P(56) | Q(56) |
r | s | t.  The bracket follows the six-component display; the Killing
form is computed by definition (trace of ad compositions) so that the
1/30 normalization in R x R is pinned by B8(t-slot, s-slot) = 60 rather
than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import QQi, qq
from .jordan import JordanElement
from .freudenthal import PVector
from .lie_algebras import E7Element, LinearEndo
from .tables import T, DIM_E7, DIM_P, DIM_E8, lin_apply, mat_mul_sp
from . import linalg as la

__all__ = [
    "E8Element", "WSpaceTag", "e8_bracket", "ad_matrix", "ad_columns",
    "killing_e8", "r_cross", "r_cross_all", "is_wspace_member",
    "lemma53_conditions", "Lemma53Report",
    "tau_e8", "lambda_omega", "sigma4_on_e8", "sigma_on_e8",
    "compact_form_member", "e8_basis", "E8_RSLOT", "E8_SSLOT", "E8_TSLOT",
    "named_e8_columns",
]

_Z = QQi(0)
_1 = QQi(1)

E8_RSLOT, E8_SSLOT, E8_TSLOT = 245, 246, 247


class E8Element:
    """(Phi, P, Q, r, s, t) with Phi in e7 and P, Q Freudenthal vectors."""

    __slots__ = ("sp",)

    def __init__(self, Phi=None, P=None, Q=None, r=_Z, s=_Z, t=_Z):
        Phi = Phi or E7Element.zero()
        P = P or PVector.zero()
        Q = Q or PVector.zero()
        self.sp = T.e8_join(Phi.sp, P.sp, Q.sp, r, s, t)

    @classmethod
    def from_sp(cls, sp: dict):
        obj = cls.__new__(cls)
        obj.sp = sp
        return obj

    @staticmethod
    def zero():
        return E8Element.from_sp({})

    @staticmethod
    def basis(n: int):
        return E8Element.from_sp({n: _1})

    @property
    def Phi(self) -> E7Element:
        return E7Element(T.e8_parts(self.sp)[0])

    @property
    def P(self) -> PVector:
        return PVector.from_sp(T.e8_parts(self.sp)[1])

    @property
    def Q(self) -> PVector:
        return PVector.from_sp(T.e8_parts(self.sp)[2])

    @property
    def r(self):
        return self.sp.get(E8_RSLOT, _Z)

    @property
    def s(self):
        return self.sp.get(E8_SSLOT, _Z)

    @property
    def t(self):
        return self.sp.get(E8_TSLOT, _Z)

    def coords(self):
        return la.vdense(self.sp, DIM_E8)

    def __add__(self, other):
        return E8Element.from_sp(la.vadd(self.sp, other.sp))

    def __sub__(self, other):
        return E8Element.from_sp(la.vsub(self.sp, other.sp))

    def __neg__(self):
        return E8Element.from_sp(la.vscale(QQi(-1), self.sp))

    def smul(self, s):
        return E8Element.from_sp(la.vscale(s, self.sp))

    def __eq__(self, other):
        return isinstance(other, E8Element) and self.sp == other.sp

    def is_zero(self):
        return not self.sp

    def norm1(self) -> float:
        return sum(abs(c.to_complex()) for c in self.sp.values())

    def __repr__(self):
        nz = len(self.sp)
        return f"E8Element(<{nz} nonzero of 248>)"


def e8_basis():
    return [E8Element.basis(n) for n in range(DIM_E8)]


def e8_bracket(R1: E8Element, R2: E8Element) -> E8Element:
    return E8Element.from_sp(T.e8_bracket_sp(R1.sp, R2.sp))


def ad_columns(R: E8Element) -> dict:
    """Sparse column map n -> [R, e_n]; the workhorse for basis sweeps."""
    return T.e8_ad_columns(R.sp)


def ad_matrix(R: E8Element) -> LinearEndo:
    return LinearEndo.from_columns(ad_columns(R), DIM_E8)


def killing_e8(R1: E8Element, R2: E8Element):
    """B8(R1, R2) = tr(ad R1 ad R2), from the cached exact Gram matrix."""
    return T.b8_sp(R1.sp, R2.sp)


def r_cross(R: E8Element, R1: E8Element) -> E8Element:
    """(R x R)R1 = [R, [R, R1]] + B8(R, R1) R / 30."""
    out = T.e8_bracket_sp(R.sp, T.e8_bracket_sp(R.sp, R1.sp))
    la.vaxpy(out, qq(1, 30) * T.b8_sp(R.sp, R1.sp), R.sp)
    return E8Element.from_sp(out)


def r_cross_all(R: E8Element) -> list:
    """(R x R)e_n for the full 248 basis, sharing one ad-column map."""
    ad = ad_columns(R)
    g8 = T.B8_GRAM
    out = []
    factor = qq(1, 30)
    for n in range(DIM_E8):
        inner = ad.get(n)
        acc: dict = {}
        if inner:
            for m, c in inner.items():
                col = ad.get(m)
                if col:
                    la.vaxpy(acc, c, col)
        b = _Z
        for m, c in R.sp.items():
            e = g8[m].get(n)
            if e is not None:
                b = b + c * e
        if not b.is_zero():
            la.vaxpy(acc, factor * b, R.sp)
        out.append(E8Element.from_sp(acc))
    return out


def is_wspace_member(R: E8Element) -> bool:
    """R != 0 and (R x R) annihilates the whole basis."""
    if R.is_zero():
        return False
    return all(v.is_zero() for v in r_cross_all(R))


@dataclass
class WSpaceTag:
    element: E8Element
    verified: bool = False

    @staticmethod
    def checked(R: E8Element) -> "WSpaceTag":
        return WSpaceTag(R, is_wspace_member(R))


# ----------------------------------------------------------------------
# the 13 closure conditions on sigma4-fixed, so(6)-commuting elements
# ----------------------------------------------------------------------

@dataclass
class Lemma53Report:
    index: int
    description: str
    max_abs: float

    @property
    def is_zero(self) -> bool:
        return self.max_abs == 0.0


def _maxabs(sp: dict) -> float:
    return max((abs(c.to_complex()) for c in sp.values()), default=0.0)


def lemma53_conditions(R: E8Element) -> list:
    """Residuals of the 13 closure conditions equivalent to R x R = 0.

    Conditions quantified over Phi1 / P1 / Q1 are evaluated on every basis
    element of the corresponding slot.  Condition 10 is implemented in the
    derived-correct form 8((QxP1)P + stP1 + r^2P1 + Phi^2P1 + 2rPhiP1)
    - 3{Q,P1}P - 2{P,P1}Q = 0 (see the wspace suite's condition-text audit).
    """
    Phi, P, Q, r, s, t = T.e8_parts(R.sp)
    jn = T.skew_sp
    act = T.e7_act_sp
    fx = T.fcross_sp
    out = []

    def _e7sq(v):  # Phi(Phi v)
        return act(Phi, act(Phi, v))

    # (1) 2s Phi - P x P
    res = la.vsub(la.vscale(qq(2) * s, Phi), fx(P, P))
    out.append(Lemma53Report(1, "2s*Phi - PxP", _maxabs(res)))
    # (2) 2t Phi + Q x Q
    res = la.vadd(la.vscale(qq(2) * t, Phi), fx(Q, Q))
    out.append(Lemma53Report(2, "2t*Phi + QxQ", _maxabs(res)))
    # (3) 2r Phi + P x Q
    res = la.vadd(la.vscale(qq(2) * r, Phi), fx(P, Q))
    out.append(Lemma53Report(3, "2r*Phi + PxQ", _maxabs(res)))
    # (4) Phi P - 3r P - 3s Q
    res = act(Phi, P)
    la.vaxpy(res, qq(-3) * r, P)
    la.vaxpy(res, qq(-3) * s, Q)
    out.append(Lemma53Report(4, "Phi P - 3rP - 3sQ", _maxabs(res)))
    # (5) Phi Q + 3r Q - 3t P
    res = act(Phi, Q)
    la.vaxpy(res, qq(3) * r, Q)
    la.vaxpy(res, qq(-3) * t, P)
    out.append(Lemma53Report(5, "Phi Q + 3rQ - 3tP", _maxabs(res)))
    # (6) {P,Q} - 16(st + r^2)
    val = jn(P, Q) - qq(16) * (s * t + r * r)
    out.append(Lemma53Report(6, "{P,Q} - 16(st+r^2)", abs(val.to_complex())))

    worst7 = worst8 = worst9 = worst10 = 0.0
    for m in range(DIM_P):
        U = {m: _1}
        # (7): 2(PhiP x Q1 + 2 P x PhiQ1 - r P x Q1 - s Q x Q1) - {P,Q1} Phi
        res = fx(act(Phi, P), U)
        la.vaxpy(res, qq(2), fx(P, act(Phi, U)))
        la.vaxpy(res, -r, fx(P, U))
        la.vaxpy(res, -s, fx(Q, U))
        res = la.vscale(qq(2), res)
        la.vaxpy(res, -jn(P, U), Phi)
        worst7 = max(worst7, _maxabs(res))
        # (8): 2(PhiQ x P1 + 2 Q x PhiP1 + r Q x P1 - t P x P1) - {Q,P1} Phi
        res = fx(act(Phi, Q), U)
        la.vaxpy(res, qq(2), fx(Q, act(Phi, U)))
        la.vaxpy(res, r, fx(Q, U))
        la.vaxpy(res, -t, fx(P, U))
        res = la.vscale(qq(2), res)
        la.vaxpy(res, -jn(Q, U), Phi)
        worst8 = max(worst8, _maxabs(res))
        # (9): 8((PxQ1)Q - stQ1 - r^2Q1 - Phi^2Q1 + 2rPhiQ1) + 5{P,Q1}Q - 2{Q,Q1}P
        res = act(fx(P, U), Q)
        la.vaxpy(res, -s * t - r * r, U)
        la.vaxpy(res, -_1, _e7sq(U))
        la.vaxpy(res, qq(2) * r, act(Phi, U))
        res = la.vscale(qq(8), res)
        la.vaxpy(res, qq(5) * jn(P, U), Q)
        la.vaxpy(res, qq(-2) * jn(Q, U), P)
        worst9 = max(worst9, _maxabs(res))
        # (10, derived): 8((QxP1)P + stP1 + r^2P1 + Phi^2P1 + 2rPhiP1)
        #                - 3{Q,P1}P - 2{P,P1}Q
        res = act(fx(Q, U), P)
        la.vaxpy(res, s * t + r * r, U)
        la.vaxpy(res, _1, _e7sq(U))
        la.vaxpy(res, qq(2) * r, act(Phi, U))
        res = la.vscale(qq(8), res)
        la.vaxpy(res, qq(-3) * jn(Q, U), P)
        la.vaxpy(res, qq(-2) * jn(P, U), Q)
        worst10 = max(worst10, _maxabs(res))
    out.append(Lemma53Report(7, "cross-derivation in Q1", worst7))
    out.append(Lemma53Report(8, "cross-derivation in P1", worst8))
    out.append(Lemma53Report(9, "quadratic relation in Q1", worst9))
    out.append(Lemma53Report(10, "quadratic relation in P1 (derived form)", worst10))

    worst11 = worst12 = worst13 = 0.0
    adPhi = {n: T.e7_bracket_sp(Phi, {n: _1}) for n in range(DIM_E7)}
    for n in range(DIM_E7):
        F1 = {n: _1}
        b7 = T.b7_sp(Phi, F1)
        # (11): 18((ad Phi)^2 Phi1 + Q x Phi1 P - P x Phi1 Q) + B7(Phi,Phi1) Phi
        inner = adPhi[n]
        res: dict = {}
        for k, c in inner.items():
            la.vaxpy(res, c, adPhi[k])
        la.vaxpy(res, _1, fx(Q, act(F1, P)))
        la.vaxpy(res, -_1, fx(P, act(F1, Q)))
        res = la.vscale(qq(18), res)
        la.vaxpy(res, b7, Phi)
        worst11 = max(worst11, _maxabs(res))
        # (12): 18(Phi1 Phi P - 2 Phi Phi1 P - r Phi1 P - s Phi1 Q) + B7 P
        res = act(F1, act(Phi, P))
        la.vaxpy(res, qq(-2), act(Phi, act(F1, P)))
        la.vaxpy(res, -r, act(F1, P))
        la.vaxpy(res, -s, act(F1, Q))
        res = la.vscale(qq(18), res)
        la.vaxpy(res, b7, P)
        worst12 = max(worst12, _maxabs(res))
        # (13): 18(Phi1 Phi Q - 2 Phi Phi1 Q + r Phi1 Q - t Phi1 P) + B7 Q
        res = act(F1, act(Phi, Q))
        la.vaxpy(res, qq(-2), act(Phi, act(F1, Q)))
        la.vaxpy(res, r, act(F1, Q))
        la.vaxpy(res, -t, act(F1, P))
        res = la.vscale(qq(18), res)
        la.vaxpy(res, b7, Q)
        worst13 = max(worst13, _maxabs(res))
    out.append(Lemma53Report(11, "adjoint-square relation in Phi1", worst11))
    out.append(Lemma53Report(12, "mixed relation in Phi1 (P side)", worst12))
    out.append(Lemma53Report(13, "mixed relation in Phi1 (Q side)", worst13))
    return out


# ----------------------------------------------------------------------
# involutions / automorphisms / real form
# ----------------------------------------------------------------------

def tau_e8(R: E8Element) -> E8Element:
    """Complex conjugation (conjugate-linear)."""
    return E8Element.from_sp(T.tau_sp(R.sp))


def lambda_omega(R: E8Element) -> E8Element:
    """(Phi,P,Q,r,s,t) -> (lam Phi lam^-1, lam Q, -lam P, -r, -t, -s)."""
    return E8Element.from_sp(T.lambda_omega_sp(R.sp))


def sigma4_on_e8(R: E8Element) -> E8Element:
    """The order-4 bracket automorphism extending sigma4."""
    return E8Element.from_sp(T.sig4_e8_sp(R.sp))


def sigma_on_e8(R: E8Element) -> E8Element:
    return E8Element.from_sp(T.sig_e8_sp(R.sp))


def _tau_lambda_P(psp: dict) -> dict:
    return T.tau_sp(lin_apply(T.LAMBDA_P, psp))


def compact_form_member(R: E8Element) -> bool:
    """Membership in the compact real form.

    Requires Q = -tau lambda P, t = -conj(s), r imaginary, and the e7 part
    of the shape Phi(phi, A, -tau A, nu) with nu imaginary and phi = delta
    + i T~ for a real derivation delta and real traceless T.
    """
    Phi, P, Q, r, s, t = T.e8_parts(R.sp)
    if Q != la.vscale(QQi(-1), _tau_lambda_P(P)):
        return False
    if r.re != 0:
        return False
    if t != -s.conj():
        return False
    phi, A, B, nu = T.e7_parts(Phi)
    if nu.re != 0:
        return False
    if B != {n: -c.conj() for n, c in A.items()}:
        return False
    for n, c in phi.items():
        if n < 52:
            if c.im != 0:     # delta real
                return False
        elif c.re != 0:       # T purely imaginary
            return False
    return True


def named_e8_columns(name: str) -> dict:
    """Column maps over the 248 basis for named linear operations."""
    ops = {
        "sigma4": T.sig4_e8_sp,
        "sigma": T.sig_e8_sp,
        "lambda_omega": T.lambda_omega_sp,
        "identity": lambda v: dict(v),
    }
    if name not in ops:
        raise KeyError(f"unknown e8 operation {name!r}")
    f = ops[name]
    return {n: f({n: _1}) for n in range(DIM_E8)}
