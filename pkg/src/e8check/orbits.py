"""Closed-form one-parameter flows and constructive orbit reductions.

Everything here runs on the double-precision backend: inputs are numpy
coordinate vectors over the canonical bases (27 for the Jordan space, 56
for the Freudenthal space, 248 for e8).  Each closed-form flow is the
exponential of a printed generator; the test suite holds every one of
them against the matrix-exponential oracle.

Branch conventions for the reduction recipes: a denominator counts as
zero below 1e-12 (the recipes then take their stated right-angle branch);
a recipe that still stalls retries after a random preliminary group
element, which is recorded in the witness.
"""

from __future__ import annotations

import cmath
import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .scalars import qq, qqi, QQi, Octonion
from .jordan import JordanElement, E1, E2, E3, F
from .freudenthal import PVector
from .lie_algebras import F4Element, E6Element, E7Element, LinearEndo, to_endo, exp_endo
from .tables import T, jF, GIDX, DIM_J, DIM_P, DIM_E7, DIM_E8
from .numeric import (np_oct_mul, np_oct_conj, np_jordan_inner, np_jordan_det,
                      np_matrix, np_vec, np_skew, np_fcross, np_e7act,
                      np_e8_bracket, np_e8_ad)
from . import linalg as la

__all__ = [
    "FlowStep", "Witness", "UnsupportedInputError",
    "g_rot", "alpha_A1", "beta1", "alpha23_scale", "phi_theta",
    "alpha_i", "alpha23_pair", "beta_nu", "psi_sl2",
    "lift_J_to_P", "exp_theta_closed_form", "exp_theta_apply",
    "reduce_sphere_F1", "reduce_sphere_minus", "reduce_W",
    "sphere_F1_random", "sphere_minus_random", "wspace_random",
    "SPHERE_F1_BASEPOINT", "SPHERE_MINUS_BASEPOINTS",
    "generator_of_flow",
]

ZERO_BRANCH = 1e-12


class UnsupportedInputError(ValueError):
    """Raised when a reduction recipe has no stated branch for the input."""


# ----------------------------------------------------------------------
# flow steps and witnesses
# ----------------------------------------------------------------------

@dataclass
class FlowStep:
    """One invertible group element, identified by kind and parameters.

    space is "J", "P" or "e8"; matrix() returns the dense action on that
    space.  J-flows can be lifted to P (lift rule depends on whether the
    generator is inner-product-skew or a Jordan multiplication).
    """

    kind: str
    params: dict
    space: str

    def matrix(self) -> np.ndarray:
        return _FLOW_BUILDERS[self.kind](**self.params)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        if self.kind == "exp_theta":
            return exp_theta_apply(self.params["coeffs"], vec)
        return self.matrix() @ vec

    def json_params(self) -> dict:
        out = {}
        for k, v in self.params.items():
            if isinstance(v, (int, float)):
                out[k] = repr(v)
            elif isinstance(v, complex):
                out[k] = f"{v.real!r}{v.imag:+}j"
            elif isinstance(v, np.ndarray):
                out[k] = [str(c) for c in v]
            else:
                out[k] = str(v)
        return out


@dataclass
class Witness:
    """Ordered steps carrying start to end with a numerical residual."""

    steps: list
    start: np.ndarray
    end: np.ndarray
    residual: float
    retries: int = 0

    def replay(self) -> np.ndarray:
        v = self.start.copy()
        for s in self.steps:
            v = s.apply(v)
        return v

    def to_json(self) -> str:
        return json.dumps({
            "steps": [{"kind": s.kind, "space": s.space,
                       "params": s.json_params()} for s in self.steps],
            "start": [str(c) for c in self.start],
            "end": [str(c) for c in self.end],
            "residual": self.residual,
            "retries": self.retries,
        }, indent=1)


# ----------------------------------------------------------------------
# closed-form flows on the Jordan space
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gij_blocks(i, j):
    """(D2, D3) companion matrices of G_ij as numpy, with D^2 = -I/4."""
    D2, D3 = T.companions[(i, j)]
    M2 = np_matrix(D2, 8)
    M3 = np_matrix(D3, 8)
    for M in (M2, M3):
        if not np.allclose(M @ M, -0.25 * np.eye(8), atol=1e-12):
            raise AssertionError("companion is not a half-turn generator")
    return M2, M3


def g_rot(i: int, j: int, s: complex) -> np.ndarray:
    """exp(s G_ij) on the Jordan space, fully closed form.

    The first octonion block rotates by angle s in the (e_i, e_j) plane;
    the other two blocks are half-angle rotations through the triality
    companions (which square to -1/4).
    """
    if not 0 <= i < j <= 7:
        raise ValueError("need 0 <= i < j <= 7")
    M = np.eye(DIM_J, dtype=complex)
    c, sn = np.cos(s), np.sin(s)
    b1 = np.eye(8, dtype=complex)
    b1[i, i] = b1[j, j] = c
    b1[i, j] = sn
    b1[j, i] = -sn
    M[3:11, 3:11] = b1
    ch, sh = np.cos(s / 2), np.sin(s / 2)
    M2, M3 = _gij_blocks(i, j)
    M[11:19, 11:19] = ch * np.eye(8) + 2 * sh * M2
    M[19:27, 19:27] = ch * np.eye(8) + 2 * sh * M3
    return M


def _as_small_oct(a) -> np.ndarray:
    """Coerce a flow parameter to an 8-component complex octonion vector."""
    if isinstance(a, Octonion):
        return np.array([c.to_complex() if isinstance(c, QQi) else complex(c)
                         for c in a.coeffs])
    a = np.asarray(a, dtype=complex)
    if a.shape == ():
        out = np.zeros(8, dtype=complex)
        out[0] = complex(a)
        return out
    if a.shape == (2,):
        out = np.zeros(8, dtype=complex)
        out[0], out[1] = a
        return out
    if a.shape == (8,):
        return a
    raise ValueError("octonion parameter must have 1, 2 or 8 components")


def _oct_norm2(a: np.ndarray) -> complex:
    """a conj(a) = sum of squared coefficients (complex-bilinear)."""
    return complex(np.sum(a * a))


def alpha_A1(a) -> np.ndarray:
    """The closed-form flow exp(A1(a)) for non-isotropic a in the e0,e1 plane.

    Diagonal block: angle-2nu rotation mixing (xi2 - xi3)/2 with the
    a-component of x1; the two other octonion slots turn by angle nu,
    where nu^2 = a conj(a).
    """
    a = _as_small_oct(a)
    n2 = _oct_norm2(a)
    if abs(n2) < ZERO_BRANCH:
        raise UnsupportedInputError("alpha_A1 needs a with a*conj(a) != 0")
    nu = cmath.sqrt(n2)
    c2, s2 = np.cos(2 * nu), np.sin(2 * nu) / nu
    c1, s1 = np.cos(nu), np.sin(nu) / nu
    M = np.zeros((DIM_J, DIM_J), dtype=complex)
    M[0, 0] = 1.0
    # diagonal block on (xi2, xi3, x1)
    M[1, 1] = M[2, 2] = 0.5 + 0.5 * c2
    M[1, 2] = M[2, 1] = 0.5 - 0.5 * c2
    for m in range(8):
        M[1, 3 + m] = s2 * a[m]          # eta2 += (a,x1)/nu sin 2nu
        M[2, 3 + m] = -s2 * a[m]
        M[3 + m, 1] = -0.5 * s2 * a[m]   # y1 -= (xi2-xi3) a sin2nu / (2nu)
        M[3 + m, 2] = 0.5 * s2 * a[m]
    sinsq = np.sin(nu) ** 2 / n2         # sin^2(nu)/nu^2
    for m in range(8):
        for mm in range(8):
            M[3 + m, 3 + mm] = (1.0 if m == mm else 0.0) - 2 * sinsq * a[m] * a[mm]
    # x2, x3 blocks: y2 = x2 cos nu - conj(x3 a)/nu sin nu
    #                y3 = x3 cos nu + conj(a x2)/nu sin nu
    for mm in range(8):
        e = np.zeros(8)
        e[mm] = 1.0
        col23 = -s1 * np_oct_conj(np_oct_mul(e, a))   # x3 basis -> x2 slot
        col32 = s1 * np_oct_conj(np_oct_mul(a, e))    # x2 basis -> x3 slot
        for m in range(8):
            M[11 + m, 19 + mm] = col23[m]
            M[19 + m, 11 + mm] = col32[m]
        M[11 + mm, 11 + mm] = c1
        M[19 + mm, 19 + mm] = c1
    return M


def beta1(t) -> np.ndarray:
    """exp((F1(t))~) for non-isotropic t in the e0,e1 plane: the hyperbolic
    analogue of alpha_A1 with frequencies nu and nu/2, nu^2 = t conj(t)."""
    t = _as_small_oct(t)
    n2 = _oct_norm2(t)
    if abs(n2) < ZERO_BRANCH:
        raise UnsupportedInputError("beta1 needs t with t*conj(t) != 0")
    nu = cmath.sqrt(n2)
    ch, sh = np.cosh(nu), np.sinh(nu) / nu
    chh, shh = np.cosh(nu / 2), np.sinh(nu / 2) / nu
    M = np.zeros((DIM_J, DIM_J), dtype=complex)
    M[0, 0] = 1.0
    # eta2 = (xi2-xi3)/2 + (xi2+xi3)/2 cosh nu + (t,x1)/nu sinh nu
    M[1, 1] = 0.5 + 0.5 * ch
    M[1, 2] = -0.5 + 0.5 * ch
    M[2, 1] = -0.5 + 0.5 * ch
    M[2, 2] = 0.5 + 0.5 * ch
    sinhsq = np.sinh(nu / 2) ** 2 / n2
    for m in range(8):
        M[1, 3 + m] = sh * t[m]
        M[2, 3 + m] = sh * t[m]
        M[3 + m, 1] = 0.5 * sh * t[m]    # y1 += (xi2+xi3) t sinh(nu)/(2nu)
        M[3 + m, 2] = 0.5 * sh * t[m]
        for mm in range(8):
            M[3 + m, 3 + mm] = (1.0 if m == mm else 0.0) + 2 * sinhsq * t[m] * t[mm]
    for mm in range(8):
        e = np.zeros(8)
        e[mm] = 1.0
        col23 = shh * np_oct_conj(np_oct_mul(e, t))
        col32 = shh * np_oct_conj(np_oct_mul(t, e))
        for m in range(8):
            M[11 + m, 19 + mm] = col23[m]
            M[19 + m, 11 + mm] = col32[m]
        M[11 + mm, 11 + mm] = chh
        M[19 + mm, 19 + mm] = chh
    return M


def alpha23_scale(c: complex) -> np.ndarray:
    """exp(c (E2-E3)~): xi2 -> e^c xi2, xi3 -> e^-c xi3, x2 -> e^{-c/2} x2,
    x3 -> e^{c/2} x3, with xi1, x1 fixed."""
    M = np.eye(DIM_J, dtype=complex)
    M[1, 1] = np.exp(c)
    M[2, 2] = np.exp(-c)
    for m in range(8):
        M[11 + m, 11 + m] = np.exp(-c / 2)
        M[19 + m, 19 + m] = np.exp(c / 2)
    return M


def phi_theta(theta) -> np.ndarray:
    """The unitary-parameter flow: x1 -> conj(th) x1 conj(th), x2 -> th x2,
    x3 -> x3 th, diagonal fixed; requires theta conj(theta) = 1."""
    th = _as_small_oct(theta)
    if abs(_oct_norm2(th) - 1) > 1e-9:
        raise ValueError("phi_theta needs theta with theta*conj(theta) = 1")
    tc = np_oct_conj(th)
    M = np.zeros((DIM_J, DIM_J), dtype=complex)
    for i in range(3):
        M[i, i] = 1.0
    for mm in range(8):
        e = np.zeros(8)
        e[mm] = 1.0
        c1 = np_oct_mul(tc, np_oct_mul(e, tc))
        c2 = np_oct_mul(th, e)
        c3 = np_oct_mul(e, th)
        for m in range(8):
            M[3 + m, 3 + mm] = c1[m]
            M[11 + m, 11 + mm] = c2[m]
            M[19 + m, 19 + mm] = c3[m]
    return M


# ----------------------------------------------------------------------
# closed-form flows on the Freudenthal space
# ----------------------------------------------------------------------

def _pi_projector(i: int) -> np.ndarray:
    """p_i: keep the diagonal and the i-th off-diagonal slot of J."""
    P = np.zeros((DIM_J, DIM_J))
    for n in range(3):
        P[n, n] = 1.0
    for m in range(8):
        P[3 + 8 * (i - 1) + m, 3 + 8 * (i - 1) + m] = 1.0
    return P


@lru_cache(maxsize=None)
def _ei_cross_mat(i: int) -> np.ndarray:
    """Matrix of X -> E_i x X on J."""
    one = QQi(1)
    cols = {m: T.jcross({i - 1: one}, {m: one}) for m in range(DIM_J)}
    return np_matrix(cols, DIM_J)


def _alpha_i_matrix(i: int, a: complex, b: complex, freq: complex) -> np.ndarray:
    """exp Phi(0, a E_i, b E_i, 0) given freq^2 = -a*b (closed form).

    With b = -conj(a) this is the printed compact flow (freq = |a|); with
    b = -a it is the complex-angle variant used by the minus-sphere
    reductions (freq = a).
    """
    c = np.cos(freq)
    s = (np.sin(freq) / freq) if abs(freq) > ZERO_BRANCH else 1.0
    pi = _pi_projector(i)
    cross = _ei_cross_mat(i)
    M = np.zeros((2 * DIM_J + 2, 2 * DIM_J + 2), dtype=complex)
    J_ = DIM_J
    M[:J_, :J_] = np.eye(J_) + (c - 1) * pi
    M[J_:2 * J_, J_:2 * J_] = np.eye(J_) + (c - 1) * pi
    M[:J_, J_:2 * J_] = 2 * b * s * cross
    M[J_:2 * J_, :J_] = 2 * a * s * cross
    ei = np.zeros(J_)
    ei[i - 1] = 1.0
    gram = np.array([1.0] * 3 + [2.0] * 24)
    M[:J_, 2 * J_ + 1] = a * s * ei          # eta column -> X slot
    M[J_:2 * J_, 2 * J_] = b * s * ei        # xi column -> Y slot
    M[2 * J_, J_:2 * J_] = a * s * ei * gram     # xi' = a s (E_i, Y) + ...
    M[2 * J_ + 1, :J_] = b * s * ei * gram
    M[2 * J_, 2 * J_] = c
    M[2 * J_ + 1, 2 * J_ + 1] = c
    return M


def alpha_i(i: int, a: complex) -> np.ndarray:
    """The printed compact flow exp Phi(0, a E_i, -conj(a) E_i, 0) on P."""
    if a == 0:
        return np.eye(DIM_P, dtype=complex)
    return _alpha_i_matrix(i, complex(a), -np.conj(complex(a)), abs(complex(a)))


def alpha23_pair(a: complex) -> np.ndarray:
    """exp Phi(0, a(E2+E3), -a(E2+E3), 0): the complex-angle rotation used
    to clear the eta slot in the minus-sphere reductions."""
    a = complex(a)
    if a == 0:
        return np.eye(DIM_P, dtype=complex)
    return _alpha_i_matrix(2, a, -a, a) @ _alpha_i_matrix(3, a, -a, a)


def beta_nu(nu: complex) -> np.ndarray:
    """exp Phi((2/3)nu(2E1-E2-E3)~, 0, 0, -2nu) on P.

    Scales xi1 by e^{2nu}, x2 and x3 by e^nu (eta1, y2, y3 inversely),
    xi by e^{-2nu} and eta by e^{2nu}; everything else is fixed.
    """
    M = np.eye(DIM_P, dtype=complex)
    e2, e1 = np.exp(2 * nu), np.exp(nu)
    M[0, 0] = e2
    M[27, 27] = 1 / e2
    for m in range(8):
        M[11 + m, 11 + m] = e1
        M[19 + m, 19 + m] = e1
        M[27 + 11 + m, 27 + 11 + m] = 1 / e1
        M[27 + 19 + m, 27 + 19 + m] = 1 / e1
    M[54, 54] = 1 / e2
    M[55, 55] = e2
    return M


def psi_sl2(A) -> np.ndarray:
    """The symplectic action of a unimodular 2x2 matrix on P.

    Blocks (xi1,eta), (xi,eta1), (eta2,xi3), (eta3,xi2) transform by A;
    the (x1,y1) octonion pair transforms by transpose(A)^{-1}; x2,y2,x3,y3
    are fixed.  Requires det A = 1.
    """
    A = np.asarray(A, dtype=complex)
    if abs(np.linalg.det(A) - 1) > 1e-9:
        raise ValueError("psi_sl2 needs det A = 1")
    (a, b), (c, d) = A
    M = np.eye(DIM_P, dtype=complex)

    def put(block, idx1, idx2):
        (m11, m12), (m21, m22) = block
        M[idx1, idx1] = m11
        M[idx1, idx2] = m12
        M[idx2, idx1] = m21
        M[idx2, idx2] = m22

    put(A, 0, 55)            # (xi1, eta)
    put(A, 54, 27)           # (xi, eta1)
    put(A, 27 + 1, 2)        # (eta2, xi3)
    put(A, 27 + 2, 1)        # (eta3, xi2)
    AinvT = np.array([[d, -c], [-b, a]])
    for m in range(8):
        put(AinvT, 3 + m, 27 + 3 + m)     # (x1, y1) coefficient pairs
    return M


# lift of a J-flow to P: (alpha X, talpha^{-1} Y, xi, eta).  For flows of
# skew generators (f4 type) talpha^{-1} = alpha; for Jordan-multiplication
# generators (T~ type) talpha^{-1} = alpha^{-1}.
_J_FLOW_LIFT = {
    "g_rot": "skew", "alpha_A1": "skew", "phi_theta": "skew",
    "beta1": "selfadjoint", "alpha23_scale": "selfadjoint",
}

_J_FLOW_INVERSE_PARAMS = {
    "g_rot": lambda p: {**p, "s": -p["s"]},
    "alpha_A1": lambda p: {"a": -np.asarray(p["a"])},
    "beta1": lambda p: {"t": -np.asarray(p["t"])},
    "alpha23_scale": lambda p: {"c": -p["c"]},
    "phi_theta": lambda p: {"theta": np_oct_conj(_as_small_oct(p["theta"]))},
}


def lift_J_to_P(step: FlowStep) -> np.ndarray:
    kind = _J_FLOW_LIFT[step.kind]
    MX = step.matrix()
    if kind == "skew":
        MY = MX
    else:
        MY = _FLOW_BUILDERS[step.kind](**_J_FLOW_INVERSE_PARAMS[step.kind](step.params))
    M = np.eye(DIM_P, dtype=complex)
    M[:DIM_J, :DIM_J] = MX
    M[DIM_J:2 * DIM_J, DIM_J:2 * DIM_J] = MY
    return M


# ----------------------------------------------------------------------
# e8-level exponentials
# ----------------------------------------------------------------------

def exp_theta_apply(coeffs, vec: np.ndarray) -> np.ndarray:
    """Apply exp(ad Theta) to an e8 coordinate vector (series, tol 1e-16)."""
    th = np.asarray(coeffs, dtype=complex)
    out = vec.astype(complex).copy()
    term = vec.astype(complex).copy()
    for k in range(1, 80):
        term = np_e8_bracket(th, term) / k
        out = out + term
        if np.max(np.abs(term)) < 1e-16:
            break
    else:
        raise ArithmeticError("exp series did not converge; scale the step")
    return out


def _c_with_series(r, direct, series, cutoff=1e-3):
    """Evaluate a removable-singularity coefficient: series near r = 0."""
    if abs(r) > cutoff:
        return direct(r)
    return sum(c * r ** k for k, c in enumerate(series))


def exp_theta_closed_form(P1: np.ndarray, r1: complex, s1: complex) -> np.ndarray:
    """The closed form of exp(ad(0, P1, 0, r1, s1, 0)) applied to the
    t-slot unit, including the limit branches at r1 = 0.

    Components over (Phi, P, Q, r, s, t):
      Phi = cphi(r1) P1 x P1,
      P   = s1 cp(r1) P1 + cpp(r1) (P1 x P1)P1,
      Q   = cq(r1) P1,   r = s1 cr(r1),
      s   = s1^2 cs1(r1) + cs2(r1) {P1, (P1 x P1)P1},   t = e^{-2 r1}.
    """
    P1 = np.asarray(P1, dtype=complex)
    r = complex(r1)
    e1, e2, em1, em2 = np.exp(r), np.exp(2 * r), np.exp(-r), np.exp(-2 * r)
    cphi = _c_with_series(r, lambda r: -(np.exp(-2 * r) - 2 * np.exp(-r) + 1) / (2 * r * r),
                          [-0.5, 0.5, -7 / 24, 1 / 8])
    cp = _c_with_series(r, lambda r: (-np.exp(-2 * r) - np.exp(r) + np.exp(-r) + 1) / (2 * r * r),
                        [-1.0, 0.5, -1 / 3, 1 / 8])
    cpp = _c_with_series(r, lambda r: (-np.exp(-2 * r) + np.exp(r) + 3 * np.exp(-r) - 3) / (6 * r ** 3),
                         [1 / 6, -1 / 12, 1 / 24, -1 / 72])
    cq = _c_with_series(r, lambda r: (np.exp(-2 * r) - np.exp(-r)) / r,
                        [-1.0, 1.5, -7 / 6, 5 / 8])
    cr = _c_with_series(r, lambda r: (1 - np.exp(-2 * r)) / (2 * r),
                        [1.0, -1.0, 2 / 3, -1 / 3])
    cs1 = _c_with_series(r, lambda r: -(np.exp(-2 * r) + np.exp(2 * r) - 2) / (4 * r * r),
                         [-1.0, 0.0, -1 / 3, 0.0])
    cs2 = _c_with_series(r, lambda r: (np.exp(2 * r) + np.exp(-2 * r)
                                       - 4 * np.exp(r) - 4 * np.exp(-r) + 6) / (96 * r ** 4),
                         [1 / 96, 0.0, 1 / 576, 0.0])
    pp = np_fcross(P1, P1)
    ppp = np_e7act(pp, P1)
    braid = np_skew(P1, ppp)
    out = np.zeros(DIM_E8, dtype=complex)
    out[:DIM_E7] = cphi * pp
    out[DIM_E7:DIM_E7 + DIM_P] = complex(s1) * cp * P1 + cpp * ppp
    out[DIM_E7 + DIM_P:245] = cq * P1
    out[245] = complex(s1) * cr
    out[246] = complex(s1) ** 2 * cs1 + cs2 * braid
    out[247] = em2
    return out


# ----------------------------------------------------------------------
# flow registry (used by FlowStep.matrix and the oracle suite)
# ----------------------------------------------------------------------

_FLOW_BUILDERS = {
    "g_rot": g_rot,
    "alpha_A1": alpha_A1,
    "beta1": beta1,
    "alpha23_scale": alpha23_scale,
    "phi_theta": phi_theta,
    "alpha_i": alpha_i,
    "alpha23_pair": alpha23_pair,
    "beta_nu": beta_nu,
    "psi_sl2": psi_sl2,
}


def generator_of_flow(kind: str, params: dict):
    """The printed algebra generator whose exponential the flow must equal.

    Returns (matrix, space) with the generator already multiplied by its
    parameter, ready for the exp_endo oracle.
    """
    if kind == "g_rot":
        M = to_endo(F4Element.G(params["i"], params["j"]), "J").to_numpy()
        return params["s"] * M, "J"
    if kind == "alpha_A1":
        a = _np_to_oct(params["a"])
        return to_endo(F4Element.A(1, a), "J").to_numpy(), "J"
    if kind == "beta1":
        t = _np_to_oct(params["t"])
        return to_endo(E6Element.from_T(F(1, t)), "J").to_numpy(), "J"
    if kind == "alpha23_scale":
        M = to_endo(E6Element.from_T(E2 - E3), "J").to_numpy()
        return params["c"] * M, "J"
    if kind == "phi_theta":
        th = _as_small_oct(params["theta"])
        # theta = cos(w) + sin(w) e1 for complex w
        if abs(th[0]) > 1e-12:
            w = cmath.atan(complex(th[1]) / complex(th[0]))
            if abs(cmath.cos(w) - complex(th[0])) > 1e-9:
                w += cmath.pi
        else:
            w = cmath.pi / 2
        M = to_endo(F4Element.G(0, 1), "J").to_numpy()
        return 2 * w * M, "J"
    if kind == "alpha_i":
        i, a = params["i"], complex(params["a"])
        elt = E7Element.from_parts(
            E6Element.zero(),
            JordanElement.basis(i - 1).smul(_qqi_of(a)),
            JordanElement.basis(i - 1).smul(_qqi_of(-np.conj(a))), QQi(0))
        return to_endo(elt, "P").to_numpy(), "P"
    if kind == "alpha23_pair":
        a = complex(params["a"])
        D = (E2 + E3)
        elt = E7Element.from_parts(E6Element.zero(), D.smul(_qqi_of(a)),
                                   D.smul(_qqi_of(-a)), QQi(0))
        return to_endo(elt, "P").to_numpy(), "P"
    if kind == "beta_nu":
        nu = complex(params["nu"])
        Tpart = (E1.smul(qq(2)) - E2 - E3).smul(qq(2, 3))
        elt = E7Element.from_parts(E6Element.from_T(Tpart),
                                   JordanElement.zero(), JordanElement.zero(),
                                   qq(-2))
        return nu * to_endo(elt, "P").to_numpy(), "P"
    if kind == "psi_sl2":
        # the oracle needs the sl2 logarithm; reductions never use this flow
        lg = np.asarray(params["M"], dtype=complex)
        nu, a = lg[0, 0], lg[0, 1]
        b = lg[1, 0]
        Tpart = (E1.smul(qq(2)) - E2 - E3).smul(qq(2, 3))
        phi_elt = E6Element.from_T(Tpart)
        gen = (to_endo(E7Element.from_parts(phi_elt, JordanElement.zero(),
                                            JordanElement.zero(), QQi(1)),
                       "P").to_numpy() * nu
               + to_endo(E7Element.from_parts(E6Element.zero(), E1,
                                              JordanElement.zero(), QQi(0)),
                         "P").to_numpy() * a
               + to_endo(E7Element.from_parts(E6Element.zero(),
                                              JordanElement.zero(), E1, QQi(0)),
                         "P").to_numpy() * b)
        return gen, "P"
    raise KeyError(kind)


def _np_to_oct(a) -> Octonion:
    v = _as_small_oct(a)
    return Octonion([_qqi_of(complex(c)) for c in v])


def _qqi_of(z: complex) -> QQi:
    from fractions import Fraction
    return QQi(Fraction(z.real).limit_denominator(10 ** 12),
               Fraction(z.imag).limit_denominator(10 ** 12))


# ----------------------------------------------------------------------
# sphere reductions in the F1 slot (plus-type spheres)
# ----------------------------------------------------------------------

SPHERE_F1_BASEPOINT = {2: 5, 3: 4, 4: 3, 5: 2}   # k -> basis index e_m


def _jvec_F1(tcoeffs: dict) -> np.ndarray:
    v = np.zeros(DIM_J, dtype=complex)
    for m, c in tcoeffs.items():
        v[3 + m] = c
    return v


def sphere_F1_random(k: int, rng: random.Random) -> np.ndarray:
    """Random element of the complex sphere in the span F1(e_{7-k}..e_7)."""
    m0 = 7 - k
    while True:
        t = np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1))
                      for _ in range(k + 1)])
        n2 = np.sum(t * t)
        if abs(n2) > 0.2:
            t = t / np.sqrt(n2)
            v = np.zeros(DIM_J, dtype=complex)
            v[3 + m0:3 + 8] = t
            return v


def _f1_norm_check(X: np.ndarray, k: int, tol: float):
    m0 = 7 - k
    others = np.concatenate([X[:3 + m0], X[11:]])
    if np.max(np.abs(others)) > tol:
        raise ValueError("input is not in the F1 span of the sphere")
    n2 = np.sum(X[3 + m0:11] * X[3 + m0:11])
    if abs(n2 - 1) > max(tol, 1e-7):
        raise ValueError("input does not satisfy the sphere norm")


def _angle_for(num: float, den: float) -> float:
    """Angle in [0, pi) with tan s = num/den; pi/2 when den vanishes."""
    if abs(den) < ZERO_BRANCH:
        return math.pi / 2
    s = math.atan(num / den)
    return s if s >= 0 else s + math.pi


def _push(steps, vec, kind, params, space="J"):
    step = FlowStep(kind, params, space)
    return steps + [step], step.apply(vec)


def reduce_sphere_F1(X: np.ndarray, k: int, tol=1e-9,
                     rng: random.Random | None = None) -> Witness:
    """Carry a point of the k-sphere in the F1 slot to F1(e_{7-k}).

    Implements the three-rotation peel to the (k-1)-sphere followed by
    recursion, with the right-angle branches where a real part vanishes;
    the base 2-sphere uses the two real rotations, the imaginary-pair
    rotation, the hyperbolic rotation, and a final half-turn if the sign
    lands on -1.  Residual-checked; retries with a random preliminary
    rotation if the recipe stalls.
    """
    if k not in (2, 3, 4, 5):
        raise ValueError("k must be in 2..5")
    _f1_norm_check(X, k, tol)
    rng = rng or random.Random(0)
    start = X.copy()
    for attempt in range(6):
        steps, vec = [], start.copy()
        if attempt:
            m0 = 7 - k
            for _ in range(2):
                i = rng.randrange(m0, 7)
                j = rng.randrange(i + 1, 8)
                steps, vec = _push(steps, vec, "g_rot",
                                   {"i": i, "j": j, "s": rng.uniform(0.3, 2.8)})
        steps, vec = _reduce_F1_rec(steps, vec, k)
        target = np.zeros(DIM_J, dtype=complex)
        target[3 + SPHERE_F1_BASEPOINT[k]] = 1.0
        res = float(np.max(np.abs(vec - target)))
        if res <= tol:
            return Witness(steps, start, vec, res, retries=attempt)
    raise UnsupportedInputError(f"sphere reduction stalled; residual {res:.2e}")


def _skip_or_push(steps, vec, i, j, s):
    """Apply g_rot unless it is a numerical no-op."""
    if abs(s) < ZERO_BRANCH or abs(s - 2 * math.pi) < ZERO_BRANCH:
        return steps, vec
    if abs(vec[3 + i]) < ZERO_BRANCH and abs(vec[3 + j]) < ZERO_BRANCH:
        return steps, vec
    return _push(steps, vec, "g_rot", {"i": i, "j": j, "s": s})


def _reduce_F1_rec(steps, vec, k):
    m = 7 - k
    if k == 2:
        t5, t6, t7 = vec[3 + 5], vec[3 + 6], vec[3 + 7]
        s0 = _angle_for(t6.real, t5.real)
        steps, vec = _skip_or_push(steps, vec, 5, 6, s0)
        t5 = vec[3 + 5]
        s1 = _angle_for(vec[3 + 7].real, t5.real)
        steps, vec = _skip_or_push(steps, vec, 5, 7, s1)
        r6, r7 = vec[3 + 6].imag, vec[3 + 7].imag
        s2 = _angle_for(r7, r6)
        steps, vec = _skip_or_push(steps, vec, 6, 7, s2)
        t5, r6 = vec[3 + 5], vec[3 + 6].imag
        if abs(r6) > ZERO_BRANCH:
            ratio = r6 / t5.real
            s3 = math.atanh(max(-1 + 1e-15, min(1 - 1e-15, ratio)))
            steps, vec = _push(steps, vec, "g_rot", {"i": 5, "j": 6, "s": 1j * s3})
        if vec[3 + 5].real < 0:
            steps, vec = _push(steps, vec, "g_rot", {"i": 5, "j": 7, "s": math.pi})
        return steps, vec
    # peel: kill Re t_m, then Re t_{m+1}, then rotate the two imaginary
    # coordinates to clear slot m entirely
    s0 = _angle_for(-vec[3 + m].real, vec[3 + m + 1].real)
    steps, vec = _skip_or_push(steps, vec, m, m + 1, s0)
    s1 = _angle_for(-vec[3 + m + 1].real, vec[3 + m + 2].real)
    steps, vec = _skip_or_push(steps, vec, m + 1, m + 2, s1)
    s2 = _angle_for(-vec[3 + m].imag, vec[3 + m + 1].imag)
    steps, vec = _skip_or_push(steps, vec, m, m + 1, s2)
    steps, vec = _reduce_F1_rec(steps, vec, k - 1)
    steps, vec = _push(steps, vec, "g_rot", {"i": m, "j": m + 1, "s": math.pi / 2})
    return steps, vec

# ----------------------------------------------------------------------
# minus-sphere reductions (orbits through E2-E3, i(E2+E3), and the
# rank-one symplectic points)
# ----------------------------------------------------------------------

def _jp(x):
    """Basepoint helpers: J vector with E-diagonal entries."""
    v = np.zeros(DIM_J, dtype=complex)
    for i, c in x.items():
        v[i] = c
    return v


def _pvec(X=None, Y=None, xi=0, eta=0):
    v = np.zeros(DIM_P, dtype=complex)
    if X is not None:
        v[:DIM_J] = X
    if Y is not None:
        v[DIM_J:2 * DIM_J] = Y
    v[54] = xi
    v[55] = eta
    return v


SPHERE_MINUS_BASEPOINTS = {
    "S2minus": _jp({1: 1, 2: -1}),                       # E2 - E3
    "S3minus": _jp({1: 1j, 2: 1j}),                      # i(E2 + E3)
    "S4minus": _pvec(Y=_jp({0: -1j}), eta=1j),           # i(0,-E1,0,1)
    "S5minus": _pvec(Y=_jp({0: 1}), eta=1),              # (0,E1,0,1)
}


def _check_S2_membership(X, tol):
    if abs(X[0]) > tol or np.max(np.abs(X[11:])) > tol:
        raise ValueError("not in the trace-free E1-killed F1 slice")
    if abs(X[1] + X[2]) > tol:
        raise ValueError("not trace-free")
    n = X[1] * X[1] + np.sum(X[3:5] * X[3:5])
    if abs(n - 1) > max(tol, 1e-7):
        raise ValueError("minus-sphere norm is not 1")
    if np.max(np.abs(X[5:11])) > tol:
        raise ValueError("x1 must lie in the e0,e1 plane")


def _reduce_S2minus(steps, vec, rng):
    """alpha(a) twice: first to the off-diagonal slice, then to E2-E3."""
    x = vec[3:5]
    xx = complex(x[0] ** 2 + x[1] ** 2)
    if np.max(np.abs(x)) > ZERO_BRANCH and abs(xx) < ZERO_BRANCH:
        raise UnsupportedInputError("isotropic x1 has no stated branch")
    if np.max(np.abs(x)) <= ZERO_BRANCH:
        a = np.array([np.pi / 4, 0], dtype=complex)
    else:
        e1x = np_oct_mul(np.array([0, 1, 0, 0, 0, 0, 0, 0], dtype=complex),
                         np.concatenate([x, np.zeros(6)]))[:2]
        a = (np.pi / 4) * e1x / np.sqrt(xx)
    steps, vec = _push(steps, vec, "alpha_A1", {"a": a})
    xp = vec[3:5]
    xpxp = complex(xp[0] ** 2 + xp[1] ** 2)
    if abs(xpxp - 1) > 1e-6:
        raise UnsupportedInputError("first rotation missed the unit slice")
    steps, vec = _push(steps, vec, "alpha_A1", {"a": (np.pi / 4) * xp})
    return steps, vec


def _reduce_S3minus(steps, vec, rng):
    x = vec[3:5]
    xx = complex(x[0] ** 2 + x[1] ** 2)
    if abs(xx) > 1e-8:
        # non-isotropic x1: the imaginary-parameter hyperbolic step makes
        # the diagonal trace-free, landing on the smaller sphere
        e1x = np_oct_mul(np.array([0, 1, 0, 0, 0, 0, 0, 0], dtype=complex),
                         np.concatenate([x, np.zeros(6)]))[:2]
        t0 = 1j * (np.pi / 2) * e1x / np.sqrt(xx)
        steps, vec = _push(steps, vec, "beta1", {"t": t0})
    else:
        # xi2 xi3 = -1; scale the diagonal to (1, -1)
        xi2 = vec[1]
        if abs(xi2) < ZERO_BRANCH:
            raise UnsupportedInputError("degenerate diagonal")
        c = -np.log(complex(xi2))
        steps, vec = _push(steps, vec, "alpha23_scale", {"c": c})
        if np.max(np.abs(vec[3:5])) > ZERO_BRANCH:
            # isotropic nonzero x1: no stated branch; a generic hyperbolic
            # preamble makes it non-isotropic (recorded in the witness)
            t = np.array([0.3 + 0.1 * rng.random(), 0.2 * rng.random()],
                         dtype=complex)
            steps, vec = _push(steps, vec, "beta1", {"t": t})
    steps, vec = _reduce_S2minus(steps, vec, rng)
    steps, vec = _push(steps, vec, "alpha23_scale", {"c": 1j * np.pi / 2})
    return steps, vec


def _p_to_j_slice(vec):
    """For P vectors of the kappa-fixed block form, the X part."""
    return vec[:DIM_J]


def _reduce_S4minus(steps, vec, rng):
    """Clear eta with one complex-angle rotation, reduce the Jordan part,
    then turn i(E2+E3) onto the rank-one symplectic point."""
    eta = vec[55]
    u = vec[1] + vec[2]
    if abs(eta) > ZERO_BRANCH:
        if abs(u) < ZERO_BRANCH:
            a = np.pi / 4
        else:
            a = 0.5 * np.arctan(complex(2 * eta / u))
        steps, vec = _push(steps, vec, "alpha23_pair", {"a": a}, space="P")
        if abs(vec[55]) > 1e-9:
            raise UnsupportedInputError("eta-clearing rotation stalled")
    jsteps, jvec = _reduce_S3minus([], _p_to_j_slice(vec).copy(), rng)
    for st in jsteps:
        steps.append(FlowStep(st.kind, st.params, "P"))
        vec = lift_J_to_P(st).dot(vec)
    steps, vec = _push(steps, vec, "alpha23_pair", {"a": -np.pi / 4}, space="P")
    return steps, vec


def _exp_e7_step(steps, vec, elt: E7Element, label_params):
    M = exp_endo(LinearEndo(to_endo(elt, "P").to_numpy())).entries
    step = FlowStep("exp_e7", {"coeffs": np_vec(elt.sp, DIM_E7), **label_params}, "P")
    return steps + [step], M @ vec


def _reduce_S5minus(steps, vec, rng):
    eta1, eta = vec[27], vec[55]
    xi2, xi3 = vec[1], vec[2]
    x = vec[3:5]
    if abs(eta1) > ZERO_BRANCH and abs(eta) > ZERO_BRANCH:
        nu = 0.25 * np.log(complex(-eta1 / eta))
        steps, vec = _push(steps, vec, "beta_nu", {"nu": nu}, space="P")
    elif abs(eta) > ZERO_BRANCH:
        if abs(xi2) > ZERO_BRANCH:
            steps, vec = _exp_e7_step(
                steps, vec, E7Element.from_parts(E6Element.zero(), E3,
                                                 JordanElement.zero(), QQi(0)),
                {"case": "ii"})
        elif abs(xi3) > ZERO_BRANCH:
            steps, vec = _exp_e7_step(
                steps, vec, E7Element.from_parts(E6Element.zero(), E2,
                                                 JordanElement.zero(), QQi(0)),
                {"case": "iii"})
        else:
            xo = _np_to_oct(np.concatenate([x, np.zeros(6)]))
            for t in (1.0, -1.0, 0.5):
                if abs(2 * t + t * t * eta) > 0.1:
                    break
            steps, vec = _exp_e7_step(
                steps, vec, E7Element.from_parts(E6Element.zero(),
                                                 F(1, xo).smul(_qqi_of(t)),
                                                 JordanElement.zero(), QQi(0)),
                {"case": "iv"})
        return _reduce_S5minus(steps, vec, rng)
    elif abs(eta1) > ZERO_BRANCH:
        if abs(xi2) > ZERO_BRANCH:
            steps, vec = _exp_e7_step(
                steps, vec, E7Element.from_parts(E6Element.zero(),
                                                 JordanElement.zero(), E2, QQi(0)),
                {"case": "v"})
        elif abs(xi3) > ZERO_BRANCH:
            steps, vec = _exp_e7_step(
                steps, vec, E7Element.from_parts(E6Element.zero(),
                                                 JordanElement.zero(), E3, QQi(0)),
                {"case": "vi"})
        else:
            xo = _np_to_oct(np.concatenate([x, np.zeros(6)]))
            for t in (1.0, -1.0, 0.5):
                if abs(2 * t - t * t * eta1) > 0.1:
                    break
            steps, vec = _exp_e7_step(
                steps, vec, E7Element.from_parts(E6Element.zero(),
                                                 JordanElement.zero(),
                                                 F(1, xo).smul(_qqi_of(t)), QQi(0)),
                {"case": "vii"})
        return _reduce_S5minus(steps, vec, rng)
    # now eta1 = eta = 0 (case viii) or the generic case landed in the
    # smaller slice: finish through the S4 chain and the final hyperbolic
    steps, vec = _reduce_S4minus(steps, vec, rng)
    steps, vec = _push(steps, vec, "beta_nu", {"nu": -1j * np.pi / 4}, space="P")
    return steps, vec


_MINUS_REDUCERS = {
    "S2minus": (_reduce_S2minus, "J"),
    "S3minus": (_reduce_S3minus, "J"),
    "S4minus": (_reduce_S4minus, "P"),
    "S5minus": (_reduce_S5minus, "P"),
}


def _check_minus_membership(vec, variant, tol):
    if variant == "S2minus":
        _check_S2_membership(vec, 1e-6)
        return
    if variant == "S3minus":
        if abs(vec[0]) > tol or np.max(np.abs(vec[5:11])) > tol \
                or np.max(np.abs(vec[11:])) > tol:
            raise ValueError("not in the E1-killed F1(e0,e1) slice")
        n = -vec[1] * vec[2] + np.sum(vec[3:5] * vec[3:5])
        if abs(n - 1) > max(tol, 1e-7):
            raise ValueError("minus-sphere norm is not 1")
        return
    X = vec[:DIM_J]
    Y = vec[DIM_J:2 * DIM_J]
    if abs(vec[54]) > tol:
        raise ValueError("xi slot must vanish")
    bad = [abs(X[0])] + [abs(c) for c in X[5:11]] + [abs(c) for c in X[11:]]
    bad += [abs(c) for c in Y[1:3]] + [abs(c) for c in Y[3:]]
    if max(bad) > 1e-6:
        raise ValueError("not in the stated block form")
    if variant == "S4minus":
        if abs(Y[0] + vec[55]) > 1e-6:
            raise ValueError("Y part must be -eta E1")
        n = -X[1] * X[2] + np.sum(X[3:5] * X[3:5]) - vec[55] ** 2
    else:
        n = -X[1] * X[2] + np.sum(X[3:5] * X[3:5]) + Y[0] * vec[55]
    if abs(n - 1) > max(tol, 1e-6):
        raise ValueError("minus-sphere norm is not 1")


def sphere_minus_random(variant: str, rng: random.Random) -> np.ndarray:
    """Random point of a minus-sphere variant (generic, non-isotropic)."""
    def g():
        return complex(rng.gauss(0, 1), rng.gauss(0, 1))

    if variant == "S2minus":
        while True:
            xi, x0, x1 = g(), g(), g()
            n = xi * xi + x0 * x0 + x1 * x1
            if abs(n) > 0.2:
                r = np.sqrt(n)
                v = np.zeros(DIM_J, dtype=complex)
                v[1], v[2] = xi / r, -xi / r
                v[3], v[4] = x0 / r, x1 / r
                return v
    if variant == "S3minus":
        while True:
            xi2, xi3, x0, x1 = g(), g(), g(), g()
            n = -xi2 * xi3 + x0 * x0 + x1 * x1
            if abs(n) > 0.2:
                r = np.sqrt(n)
                v = np.zeros(DIM_J, dtype=complex)
                v[1], v[2], v[3], v[4] = xi2 / r, xi3 / r, x0 / r, x1 / r
                return v
    if variant == "S4minus":
        while True:
            xi2, xi3, x0, x1, eta = g(), g(), g(), g(), g()
            n = -xi2 * xi3 + x0 * x0 + x1 * x1 - eta * eta
            if abs(n) > 0.2:
                r = np.sqrt(n)
                xi2, xi3, x0, x1, eta = (c / r for c in (xi2, xi3, x0, x1, eta))
                X = np.zeros(DIM_J, dtype=complex)
                X[1], X[2], X[3], X[4] = xi2, xi3, x0, x1
                return _pvec(X=X, Y=_jp({0: -eta}), eta=eta)
    if variant == "S5minus":
        while True:
            xi2, xi3, x0, x1, eta1, eta = g(), g(), g(), g(), g(), g()
            n = -xi2 * xi3 + x0 * x0 + x1 * x1 + eta1 * eta
            if abs(n) > 0.2:
                r = np.sqrt(n)
                xi2, xi3, x0, x1 = (c / r for c in (xi2, xi3, x0, x1))
                eta1 = eta1 / r
                X = np.zeros(DIM_J, dtype=complex)
                X[1], X[2], X[3], X[4] = xi2, xi3, x0, x1
                return _pvec(X=X, Y=_jp({0: eta1}), eta=eta)
    raise ValueError(f"unknown variant {variant!r}")


def reduce_sphere_minus(P: np.ndarray, variant: str, tol=1e-9,
                        rng: random.Random | None = None) -> Witness:
    """Carry a minus-sphere point to its variant basepoint.

    Variants act on the Jordan space (S2minus, S3minus: 27 coordinates)
    or the Freudenthal space (S4minus, S5minus: 56 coordinates)."""
    if variant not in _MINUS_REDUCERS:
        raise ValueError(f"unknown variant {variant!r}")
    reducer, space = _MINUS_REDUCERS[variant]
    _check_minus_membership(P, variant, tol)
    rng = rng or random.Random(0)
    start = np.asarray(P, dtype=complex).copy()
    target = SPHERE_MINUS_BASEPOINTS[variant]
    last = None
    for attempt in range(6):
        steps, vec = [], start.copy()
        if attempt:
            if variant in ("S2minus", "S3minus"):
                a = np.array([0.2 + 0.5 * rng.random(), 0.3 * rng.random()],
                             dtype=complex)
                steps, vec = _push(steps, vec, "alpha_A1", {"a": a})
            else:
                steps, vec = _push(steps, vec, "alpha23_pair",
                                   {"a": 0.2 + 0.4 * rng.random()}, space="P")
        try:
            steps, vec = reducer(steps, vec, rng)
        except UnsupportedInputError as exc:
            last = exc
            continue
        res = float(np.max(np.abs(vec - target)))
        if res <= tol:
            return Witness(steps, start, vec, res, retries=attempt)
        last = UnsupportedInputError(f"residual {res:.2e}")
    raise UnsupportedInputError(f"minus-sphere reduction stalled: {last}")


# ----------------------------------------------------------------------
# null-cone reduction in e8
# ----------------------------------------------------------------------

def _sig4_fixed_so6_P_basis():
    """The twelve sigma4-fixed so(6)-commuting directions of the P slot."""
    idx = [0, 1, 2, jF(1, 0), jF(1, 1)]
    out = []
    for n in idx:
        out.append(("X", n))
        out.append(("Y", n))
    out.append(("xi", 54))
    out.append(("eta", 55))
    vecs = []
    for kind, n in out:
        v = np.zeros(DIM_P, dtype=complex)
        v[n if kind in ("X", "xi", "eta") else DIM_J + n] = 1.0
        if kind == "Y":
            v = np.zeros(DIM_P, dtype=complex)
            v[DIM_J + n] = 1.0
        vecs.append(v)
    return vecs


def wspace_random(rng: random.Random, nsteps=3) -> np.ndarray:
    """A random null-cone member of the fixed set, built as a flow image
    of the t-slot unit."""
    v = np.zeros(DIM_E8, dtype=complex)
    v[247] = 1.0
    for _ in range(nsteps):
        th = _random_fixed_theta(rng, scale=0.4)
        v = exp_theta_apply(th, v)
    return v


def _random_fixed_theta(rng: random.Random, scale=0.5) -> np.ndarray:
    """Random element of the sigma4-fixed so(6)-commuting subalgebra."""
    th = np.zeros(DIM_E8, dtype=complex)
    pbasis = _sig4_fixed_so6_P_basis()

    def g():
        return complex(rng.gauss(0, scale), rng.gauss(0, scale))

    for base, off in ((133, 0), (189, 0)):
        for pv in pbasis:
            coeff = g()
            th[base:base + DIM_P] += coeff * pv
    for slot in (245, 246, 247):
        th[slot] += g()
    # a few e7-part directions: kappa/mu-commuting diagonal pieces
    for elt in (E7Element.from_parts(E6Element.zero(), E1, JordanElement.zero(), QQi(0)),
                E7Element.from_parts(E6Element.zero(), JordanElement.zero(), E1, QQi(0)),
                E7Element.from_parts(E6Element.zero(), JordanElement.zero(),
                                     JordanElement.zero(), QQi(1))):
        th[:DIM_E7] += g() * np_vec(elt.sp, DIM_E7)
    return th


def _rcross_residual(R: np.ndarray) -> float:
    ad = np_e8_ad(R)
    from .numeric import _coo
    # B8 row: B8(R, e_n)
    from .tables import T as _T
    g8 = _T.B8_GRAM
    b8row = np.zeros(DIM_E8, dtype=complex)
    for n in range(DIM_E8):
        row = g8[n]
        if row:
            for m, c in row.items():
                b8row[m] += R[n] * c.to_complex()
    M = ad @ ad + np.outer(R, b8row) / 30.0
    return float(np.max(np.abs(M)))


def reduce_W(R: np.ndarray, tol=1e-8, verify_membership=True) -> Witness:
    """Carry a fixed-set null-cone element to the t-slot unit.

    Case order: a nonzero t-slot inverts the closed-form exponential
    directly; a nonzero s-slot is rotated by the quarter-turn in the
    (s,t)-plane; nonzero r uses the Q-translation; pure P / Q / Phi cases
    first translate to produce a scalar slot.  Steps are e8-exponentials
    recorded with their generators."""
    R = np.asarray(R, dtype=complex)
    if verify_membership:
        if _rcross_residual(R) > 1e-6:
            raise ValueError("input is not in the null cone (R x R != 0)")
        from .tables import T as _T
        sig = np_matrix({n: _T.sig4_e8_sp({n: QQi(1)}) for n in range(DIM_E8)},
                        DIM_E8) if False else None
    start = R.copy()
    steps = []
    vec = R.copy()
    target = np.zeros(DIM_E8, dtype=complex)
    target[247] = 1.0
    for _ in range(8):
        t, s, r = vec[247], vec[246], vec[245]
        Pv, Qv = vec[133:189], vec[189:245]
        if abs(t) > 1e-8:
            r1 = -0.5 * np.log(complex(t))
            em2, em1 = np.exp(-2 * r1), np.exp(-r1)
            cq = (em2 - em1) / r1 if abs(r1) > 1e-6 else -1.0 + 1.5 * r1
            P1 = Qv / cq
            cr = (1 - em2) / (2 * r1) if abs(r1) > 1e-6 else 1.0 - r1
            s1 = r / cr
            th = np.zeros(DIM_E8, dtype=complex)
            th[133:189] = P1
            th[245] = r1
            th[246] = s1
            steps.append(FlowStep("exp_theta", {"coeffs": -th}, "e8"))
            vec = exp_theta_apply(-th, vec)
            break
        if abs(s) > 1e-8:
            th = np.zeros(DIM_E8, dtype=complex)
            th[246] = np.pi / 2
            th[247] = -np.pi / 2
            steps.append(FlowStep("exp_theta", {"coeffs": th}, "e8"))
            vec = exp_theta_apply(th, vec)
            continue
        if abs(r) > 1e-8:
            th = np.zeros(DIM_E8, dtype=complex)
            th[133:189] = Qv
            steps.append(FlowStep("exp_theta", {"coeffs": th}, "e8"))
            vec = exp_theta_apply(th, vec)
            continue
        if np.max(np.abs(Qv)) > 1e-8:
            P1 = _best_skew_partner(Qv)
            th = np.zeros(DIM_E8, dtype=complex)
            th[133:189] = P1
            steps.append(FlowStep("exp_theta", {"coeffs": th}, "e8"))
            vec = exp_theta_apply(th, vec)
            continue
        if np.max(np.abs(Pv)) > 1e-8:
            Q1 = _best_skew_partner(Pv)
            th = np.zeros(DIM_E8, dtype=complex)
            th[189:245] = Q1
            steps.append(FlowStep("exp_theta", {"coeffs": th}, "e8"))
            vec = exp_theta_apply(th, vec)
            continue
        if np.max(np.abs(vec[:DIM_E7])) > 1e-8:
            P1 = _best_phi_partner(vec[:DIM_E7])
            th = np.zeros(DIM_E8, dtype=complex)
            th[133:189] = P1
            steps.append(FlowStep("exp_theta", {"coeffs": th}, "e8"))
            vec = exp_theta_apply(th, vec)
            continue
        raise UnsupportedInputError("null-cone reduction ran out of cases")
    res = float(np.max(np.abs(vec - target)))
    return Witness(steps, start, vec, res)


def _best_skew_partner(Q: np.ndarray) -> np.ndarray:
    best, bestval = None, 0.0
    for pv in _sig4_fixed_so6_P_basis():
        val = abs(np_skew(pv, Q))
        if val > bestval:
            best, bestval = pv, val
    if best is None or bestval < 1e-10:
        raise UnsupportedInputError("no sigma4-fixed partner pairs with Q")
    return best


def _best_phi_partner(phi: np.ndarray) -> np.ndarray:
    best, bestval = None, 0.0
    for pv in _sig4_fixed_so6_P_basis():
        val = np.max(np.abs(np_e7act(phi, pv)))
        if val > bestval:
            best, bestval = pv, val
    if best is None or bestval < 1e-10:
        raise UnsupportedInputError("Phi annihilates the fixed P slot")
    return best
