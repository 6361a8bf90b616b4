"""Structure-constant tables for the exceptional algebra tower.

Everything downstream (module APIs, verification suites) runs on sparse
coordinate vectors over fixed ordered bases:

    J   (27):  E1, E2, E3, F1(e0..e7), F2(e0..e7), F3(e0..e7)
    P   (56):  X-part (27) + Y-part (27) + xi + eta
    f4  (52):  G_ij (i<j, lex) + A1(e0..e7) + A2(..) + A3(..)
    e6  (78):  f4 + traceless T: (E1-E2), (E2-E3), F1(e0..e7), F2, F3
    e7 (133):  e6 (phi) + A (27) + B (27) + nu
    e8 (248):  e7 (Phi) + P (56) + Q (56) + r + s + t

The tables are built once per process from the structural definitions and
then drive every bilinear operation.  so(8) elements act on the first
octonion coordinate directly; their action on the other two coordinates is
through the triality companion pair, realized in closed form from left /
right multiplication operators.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

from .scalars import QQi, Octonion, OCT_TABLE, qq, oct_mul, oct_conj, oct_inner
from . import linalg as la

__all__ = ["T", "Tables", "GIDX", "GPOS"]

_Z = QQi(0)
_1 = QQi(1)
HALF = qq(1, 2)
THIRD = qq(1, 3)
QUARTER = qq(1, 4)

GIDX = [(i, j) for i in range(8) for j in range(i + 1, 8)]
GPOS = {pair: n for n, pair in enumerate(GIDX)}

DIM_J, DIM_P, DIM_F4, DIM_E6, DIM_E7, DIM_E8 = 27, 56, 52, 78, 133, 248

# J index helpers
JE = (0, 1, 2)


def jF(k, m):
    """J-coordinate index of F_k(e_m), k in 1..3."""
    return 3 + 8 * (k - 1) + m


# inner-product weights on J coordinates: (E_i,E_j)=delta, (F_k(e_i),F_k(e_j))=2 delta
J_WEIGHTS = [1, 1, 1] + [2] * 24


def bil_apply(table, u: dict, v: dict) -> dict:
    """Apply a bilinear table dict[(i,j)] -> dict[k]->QQi to sparse u, v."""
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            cell = table.get((i, j))
            if cell is None:
                continue
            ab = a * b
            for k, c in cell.items():
                t = out.get(k)
                t = ab * c if t is None else t + ab * c
                if t.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = t
    return out


def lin_apply(cols, u: dict) -> dict:
    """Apply a linear table dict[j] -> sparse column to sparse u."""
    out: dict = {}
    for j, a in u.items():
        col = cols.get(j)
        if col is None:
            continue
        la.vaxpy(out, a, col)
    return out


def mat_mul_sp(A: dict, B: dict) -> dict:
    """Compose column maps: (A o B)[j] = A(B[j])."""
    return {j: lin_apply(A, col) for j, col in B.items() if col}


def _oct_entries(x: Octonion):
    return {i: c for i, c in enumerate(x.coeffs) if not c.is_zero()}


def _lmat(j):
    """Column map of left multiplication by e_j on octonion coords."""
    cols = {}
    for m in range(8):
        k, s = OCT_TABLE[j][m]
        cols[m] = {k: _1 if s > 0 else -_1}
    return cols


def _rmat(j):
    cols = {}
    for m in range(8):
        k, s = OCT_TABLE[m][j]
        cols[m] = {k: _1 if s > 0 else -_1}
    return cols


def _comm_cols(A, B, n=8):
    out = {}
    for m in range(n):
        v = la.vsub(lin_apply(A, B.get(m, {})), lin_apply(B, A.get(m, {})))
        if v:
            out[m] = v
    return out


def _scale_cols(s, A):
    return {m: la.vscale(s, col) for m, col in A.items() if col}


class Tables:
    """Lazily built singleton carrying every structure-constant table."""

    # ---------------- octonion layer ----------------

    @cached_property
    def companions(self):
        """(D2, D3) column maps for each so(8) generator G_ij.

        Infinitesimal triality: (G_ij x)y + x(D2 y) = conj(D3 conj(xy)).
        Closed form: for G_0j the pair is (L_j/2, R_j/2); general G_ij with
        i>=1 follows from G_ij = [G_0j, G_0i] and the companion map being a
        Lie algebra homomorphism.
        """
        comp = {}
        for j in range(1, 8):
            comp[(0, j)] = (_scale_cols(HALF, _lmat(j)), _scale_cols(HALF, _rmat(j)))
        for i in range(1, 8):
            for j in range(i + 1, 8):
                L2 = _comm_cols(_lmat(j), _lmat(i))
                R2 = _comm_cols(_rmat(j), _rmat(i))
                comp[(i, j)] = (_scale_cols(QUARTER, L2), _scale_cols(QUARTER, R2))
        return comp

    # ---------------- Jordan layer ----------------

    @cached_property
    def JMUL(self):
        """X o Y on J basis pairs."""
        tbl = {}
        for i in range(DIM_J):
            for j in range(i, DIM_J):
                cell = self._jmul_basis(i, j)
                if cell:
                    tbl[(i, j)] = cell
                    if i != j:
                        tbl[(j, i)] = cell
        return tbl

    def _jmul_basis(self, i, j):
        # E_a o E_b
        if i < 3 and j < 3:
            return {i: _1} if i == j else {}
        if i < 3:
            i, j = j, i
        # now i is an F-index
        k1, m1 = divmod(i - 3, 8)
        if j < 3:
            # E_j o F_{k1+1}(e_m): 0 if j == k1 else F/2
            return {} if j == k1 else {i: HALF}
        k2, m2 = divmod(j - 3, 8)
        if k1 == k2:
            # F_k(x) o F_k(y) = (x,y)(E_{k+1} + E_{k+2})
            if m1 == m2:
                return {(k1 + 1) % 3: _1, (k1 + 2) % 3: _1}
            return {}
        # F_k(x) o F_{k+1}(y) = 1/2 F_{k+2}(conj(yx)) ; orientation matters
        if (k2 - k1) % 3 == 1:
            ka, ma, kb, mb = k1, m1, k2, m2
        else:
            ka, ma, kb, mb = k2, m2, k1, m1
        # F_{ka+1..}(x=e_ma) o F_{kb+1..}(y=e_mb), kb = ka+1:
        # product lies in F_{ka+2}: 1/2 conj(e_mb * e_ma)... from the
        # hermitian matrix product: F_a(x) o F_{a+1}(y) = 1/2 F_{a+2}(conj(xy))
        k, s = OCT_TABLE[ma][mb]
        sgn = HALF if s > 0 else -HALF
        if k >= 1:
            sgn = -sgn  # octonion conjugation
        return {jF((ka + 2) % 3 + 1, k): sgn}

    def jmul(self, u, v):
        return bil_apply(self.JMUL, u, v)

    def jtr(self, u):
        t = _Z
        for i in range(3):
            if i in u:
                t = t + u[i]
        return t

    def jinner(self, u, v):
        s = _Z
        for i, a in u.items():
            b = v.get(i)
            if b is not None:
                s = s + a * b * J_WEIGHTS[i]
        return s

    @cached_property
    def JCROSS(self):
        """Freudenthal cross X x Y on basis pairs."""
        je = {0: _1, 1: _1, 2: _1}
        tbl = {}
        for i in range(DIM_J):
            u = {i: _1}
            for j in range(i, DIM_J):
                v = {j: _1}
                t = la.vscale(qq(2), self.jmul(u, v))
                tri = self.jtr(u)
                trj = self.jtr(v)
                if tri:
                    la.vaxpy(t, -tri, v)
                if trj:
                    la.vaxpy(t, -trj, u)
                c = tri * trj - self.jinner(u, v)
                if not c.is_zero():
                    la.vaxpy(t, c, je)
                cell = la.vscale(HALF, t)
                if cell:
                    tbl[(i, j)] = cell
                    if i != j:
                        tbl[(j, i)] = cell
        return tbl

    def jcross(self, u, v):
        return bil_apply(self.JCROSS, u, v)

    # ---------------- F4 layer ----------------

    @cached_property
    def F4ACT(self):
        """Action of the 52 f4 basis elements on the 27 J basis: cols[n][j]."""
        cols = {}
        for n in range(DIM_F4):
            cmap = {}
            if n < 28:
                (i, j) = GIDX[n]
                D1 = {j: {i: _1}, i: {j: -_1}}
                D2, D3 = self.companions[(i, j)]
                for k, D in ((1, D1), (2, D2), (3, D3)):
                    for m in range(8):
                        col = D.get(m)
                        if col:
                            cmap[jF(k, m)] = {jF(k, kk): c for kk, c in col.items()}
            else:
                k, m = divmod(n - 28, 8)
                a = Octonion.basis(m)
                # A_k(a): E_{k+1} -> -F_{k+1}... pattern (k is 0-based here):
                #   xi_{k+1} += 2(a, x_k) ; xi_{k+2} -= 2(a, x_k)
                #   x_k   += -(xi_{k+1} - xi_{k+2}) a
                #   x_{k+1} += -conj(x_{k+2} a) ; x_{k+2} += conj(a x_{k+1})
                k1, k2 = (k + 1) % 3, (k + 2) % 3
                cmap[k1 + 0] = {jF(k + 1, m): -_1}             # E_{k+1} -> -F_k-slot(a)
                cmap[k2 + 0] = {jF(k + 1, m): _1}              # E_{k+2} -> +
                for mm in range(8):
                    # x_k basis e_mm: contributes 2(a,e_mm) to xi_{k1} - xi_{k2}
                    if mm == m:
                        cmap[jF(k + 1, mm)] = {k1: qq(2), k2: qq(-2)}
                    # x_{k+1} slot: x_{k+2} += conj(a e_mm)
                    img = oct_conj(oct_mul(a, Octonion.basis(mm)))
                    ent = {jF(k2 + 1, kk): c for kk, c in _oct_entries(img).items()}
                    if ent:
                        cmap.setdefault(jF(k1 + 1, mm), {}).update(ent)
                    # x_{k+2} slot: x_{k+1} -= conj(e_mm a)
                    img = oct_conj(oct_mul(Octonion.basis(mm), a))
                    ent = {jF(k1 + 1, kk): -c for kk, c in _oct_entries(img).items()}
                    if ent:
                        cmap.setdefault(jF(k2 + 1, mm), {}).update(ent)
            cols[n] = cmap
        return cols

    def f4_act_sp(self, f: dict, u: dict) -> dict:
        out: dict = {}
        acts = self.F4ACT
        for n, c in f.items():
            img = lin_apply(acts[n], u)
            la.vaxpy(out, c, img)
        return out

    def decompose_derivation(self, images: list[dict]) -> dict:
        """f4 coordinates of a derivation given its images on the 27 J basis."""
        out: dict = {}
        # A-parts from images of E1,E2,E3:
        # d(E1) = F2(a2) - F3(a3); d(E2) = F3(a3) - F1(a1); d(E3) = F1(a1) - F2(a2)
        for m in range(8):
            c = images[2].get(jF(1, m), _Z)   # a1 from F1 part of d(E3)
            if not c.is_zero():
                out[28 + m] = c
            c = images[0].get(jF(2, m), _Z)   # a2 from F2 part of d(E1)
            if not c.is_zero():
                out[36 + m] = c
            c = images[1].get(jF(3, m), _Z)   # a3 from F3 part of d(E2)
            if not c.is_zero():
                out[44 + m] = c
        apart = {n: c for n, c in out.items()}
        # D from the F1 action of the remainder (upper triangle suffices:
        # the D block of a derivation is antisymmetric)
        for m in range(8):
            img = dict(images[jF(1, m)])
            if apart:
                rem = self.f4_act_sp(apart, {jF(1, m): _1})
                img = la.vsub(img, rem)
            for i in range(m):
                c = img.get(jF(1, i), _Z)
                if not c.is_zero():
                    out[GPOS[(i, m)]] = c
        return {n: c for n, c in out.items() if not c.is_zero()}

    # ---------------- E6 layer ----------------

    def t_to_j(self, tcoords: dict) -> dict:
        """Traceless-T coordinates (26) -> J vector."""
        out: dict = {}
        t0 = tcoords.get(0, _Z)
        t1 = tcoords.get(1, _Z)
        if not t0.is_zero():
            out[0] = t0
        v = -t0 + t1
        if not v.is_zero():
            out[1] = v
        if not t1.is_zero():
            out[2] = -t1
        for n, c in tcoords.items():
            if n >= 2:
                out[3 + (n - 2)] = c
        return out

    def j_to_t(self, j: dict) -> dict:
        """J vector (must be traceless) -> T coordinates."""
        out: dict = {}
        t0 = j.get(0, _Z)
        t1 = -j.get(2, _Z)
        if not t0.is_zero():
            out[0] = t0
        if not t1.is_zero():
            out[1] = t1
        for i, c in j.items():
            if i >= 3:
                out[2 + (i - 3)] = c
        return out

    @cached_property
    def E6ACT(self):
        """Action of the 78 e6 basis elements on J: cols[n][j]."""
        cols = {}
        for n in range(DIM_F4):
            cols[n] = self.F4ACT[n]
        for n in range(DIM_F4, DIM_E6):
            tj = self.t_to_j({n - DIM_F4: _1})
            cmap = {}
            for j in range(DIM_J):
                img = self.jmul(tj, {j: _1})
                if img:
                    cmap[j] = img
            cols[n] = cmap
        return cols

    def e6_act_sp(self, phi: dict, u: dict) -> dict:
        out: dict = {}
        acts = self.E6ACT
        for n, c in phi.items():
            img = lin_apply(acts[n], u)
            la.vaxpy(out, c, img)
        return out

    def e6_transpose_sp(self, phi: dict) -> dict:
        """phi = delta + T~  ->  phi^T = -delta + T~ in e6 coords."""
        return {n: (-c if n < DIM_F4 else c) for n, c in phi.items()}

    @cached_property
    def VEE(self):
        """X v W on J basis pairs, valued in e6 coords (78)."""
        tbl = {}
        je = {0: _1, 1: _1, 2: _1}
        for i in range(DIM_J):
            u = {i: _1}
            for j in range(DIM_J):
                v = {j: _1}
                # derivation [X~, W~] images over 27 basis
                imgs = []
                for z in range(DIM_J):
                    zz = {z: _1}
                    d = la.vsub(self.jmul(u, self.jmul(v, zz)),
                                self.jmul(v, self.jmul(u, zz)))
                    imgs.append(d)
                cell = self.decompose_derivation(imgs)
                tpart = dict(self.jmul(u, v))
                la.vaxpy(tpart, -THIRD * self.jinner(u, v), je)
                for n, c in self.j_to_t(tpart).items():
                    cell[DIM_F4 + n] = c
                cell = {n: c for n, c in cell.items() if not c.is_zero()}
                if cell:
                    tbl[(i, j)] = cell
        return tbl

    def vee_sp(self, u: dict, v: dict) -> dict:
        return bil_apply(self.VEE, u, v)

    @cached_property
    def F4BRK(self):
        """Bracket on f4 coords via derivation commutators."""
        tbl = {}
        acts = self.F4ACT
        for n in range(DIM_F4):
            for m in range(n + 1, DIM_F4):
                imgs = []
                for z in range(DIM_J):
                    zz = {z: _1}
                    d = la.vsub(lin_apply(acts[n], lin_apply(acts[m], zz)),
                                lin_apply(acts[m], lin_apply(acts[n], zz)))
                    imgs.append(d)
                cell = self.decompose_derivation(imgs)
                if cell:
                    tbl[(n, m)] = cell
                    tbl[(m, n)] = {k: -c for k, c in cell.items()}
        return tbl

    @cached_property
    def E6BRK(self):
        """Bracket on e6 coords.

        [delta1 + T1~, delta2 + T2~] = [delta1,delta2] + [T1~,T2~]
                                       + (delta1 T2)~ - (delta2 T1)~
        with [T1~, T2~] a derivation (f4 part).
        """
        tbl = dict()
        for (n, m), cell in self.F4BRK.items():
            tbl[(n, m)] = dict(cell)
        acts = self.E6ACT
        for n in range(DIM_F4, DIM_E6):
            tn = self.t_to_j({n - DIM_F4: _1})
            # f4 x T~ parts
            for m in range(DIM_F4):
                img = lin_apply(acts[m], tn)  # delta_m T_n
                cell = {DIM_F4 + k: c for k, c in self.j_to_t(img).items()}
                if cell:
                    tbl[(m, n)] = cell
                    tbl[(n, m)] = {k: -c for k, c in cell.items()}
            # T~ x T~ parts
            for m in range(DIM_F4, DIM_E6):
                if m <= n:
                    continue
                tm = self.t_to_j({m - DIM_F4: _1})
                imgs = []
                for z in range(DIM_J):
                    zz = {z: _1}
                    d = la.vsub(self.jmul(tn, self.jmul(tm, zz)),
                                self.jmul(tm, self.jmul(tn, zz)))
                    imgs.append(d)
                cell = self.decompose_derivation(imgs)
                if cell:
                    tbl[(n, m)] = cell
                    tbl[(m, n)] = {k: -c for k, c in cell.items()}
        return tbl

    # ---------------- E7 layer ----------------
    # e7 coords: phi 0..77 | A 78..104 | B 105..131 | nu 132

    E7_A0 = DIM_E6
    E7_B0 = DIM_E6 + DIM_J
    E7_NU = DIM_E6 + 2 * DIM_J

    def e7_parts(self, e: dict):
        phi, A, B = {}, {}, {}
        nu = _Z
        for n, c in e.items():
            if n < DIM_E6:
                phi[n] = c
            elif n < self.E7_B0:
                A[n - self.E7_A0] = c
            elif n < self.E7_NU:
                B[n - self.E7_B0] = c
            else:
                nu = c
        return phi, A, B, nu

    def e7_join(self, phi: dict, A: dict, B: dict, nu) -> dict:
        out = dict(phi)
        for i, c in A.items():
            out[self.E7_A0 + i] = c
        for i, c in B.items():
            out[self.E7_B0 + i] = c
        if not nu.is_zero():
            out[self.E7_NU] = nu
        return out

    @cached_property
    def E7ACT(self):
        """Action of the 133 e7 basis elements on the 56 P basis."""
        cols = {}
        for n in range(DIM_E7):
            e = {n: _1}
            cmap = {}
            for m in range(DIM_P):
                img = self._e7_act_basis(e, m)
                if img:
                    cmap[m] = img
            cols[n] = cmap
        return cols

    def _e7_act_basis(self, e: dict, m: int) -> dict:
        phi, A, B, nu = self.e7_parts(e)
        out: dict = {}
        if m < DIM_J:       # X slot
            X = {m: _1}
            nX = self.e6_act_sp(phi, X)
            la.vaxpy(nX, -THIRD * nu, X)
            for i, c in nX.items():
                out[i] = c
            nY = la.vscale(qq(2), self.jcross(A, X))
            for i, c in nY.items():
                out[DIM_J + i] = c
            eta = self.jinner(B, X)
            if not eta.is_zero():
                out[55] = eta
        elif m < 2 * DIM_J:  # Y slot
            Y = {m - DIM_J: _1}
            nX = la.vscale(qq(2), self.jcross(B, Y))
            for i, c in nX.items():
                out[i] = c
            nY = la.vscale(-_1, self.e6_act_sp(self.e6_transpose_sp(phi), Y))
            la.vaxpy(nY, THIRD * nu, Y)
            for i, c in nY.items():
                out[DIM_J + i] = c
            xi = self.jinner(A, Y)
            if not xi.is_zero():
                out[54] = xi
        elif m == 54:        # xi slot
            for i, c in B.items():
                out[DIM_J + i] = c
            if not nu.is_zero():
                out[54] = nu
        else:                # eta slot
            for i, c in A.items():
                out[i] = c
            if not nu.is_zero():
                out[55] = -nu
        return out

    def e7_act_sp(self, e: dict, p: dict) -> dict:
        out: dict = {}
        acts = self.E7ACT
        for n, c in e.items():
            img = lin_apply(acts[n], p)
            la.vaxpy(out, c, img)
        return out

    # P-space helpers
    def p_parts(self, p: dict):
        X, Y = {}, {}
        xi = eta = _Z
        for n, c in p.items():
            if n < DIM_J:
                X[n] = c
            elif n < 2 * DIM_J:
                Y[n - DIM_J] = c
            elif n == 54:
                xi = c
            else:
                eta = c
        return X, Y, xi, eta

    def p_join(self, X: dict, Y: dict, xi, eta) -> dict:
        out = dict(X)
        for i, c in Y.items():
            out[DIM_J + i] = c
        if not xi.is_zero():
            out[54] = xi
        if not eta.is_zero():
            out[55] = eta
        return out

    def skew_sp(self, p: dict, q: dict):
        """{P, Q} = (X,W) - (Z,Y) + xi*omega - zeta*eta."""
        X, Y, xi, eta = self.p_parts(p)
        Z, W, zeta, omega = self.p_parts(q)
        return self.jinner(X, W) - self.jinner(Z, Y) + xi * omega - zeta * eta

    @cached_property
    def FCROSS(self):
        """P x Q on P basis pairs, valued in e7 coords."""
        tbl = {}
        for i in range(DIM_P):
            for j in range(i, DIM_P):
                cell = self._fcross_basis(i, j)
                if cell:
                    tbl[(i, j)] = cell
                    if i != j:
                        tbl[(j, i)] = cell  # P x Q is symmetric
        return tbl

    def _fcross_basis(self, i, j):
        p = {i: _1}
        q = {j: _1}
        X, Y, xi, eta = self.p_parts(p)
        Z, W, zeta, omega = self.p_parts(q)
        phi = la.vscale(-HALF, la.vadd(self.vee_sp(X, W), self.vee_sp(Z, Y)))
        A = la.vscale(qq(2), self.jcross(Y, W))
        la.vaxpy(A, -xi, Z)
        la.vaxpy(A, -zeta, X)
        A = la.vscale(-QUARTER, A)
        B = la.vscale(qq(2), self.jcross(X, Z))
        la.vaxpy(B, -eta, W)
        la.vaxpy(B, -omega, Y)
        B = la.vscale(QUARTER, B)
        nu = qq(1, 8) * (self.jinner(X, W) + self.jinner(Z, Y)
                         - qq(3) * (xi * omega + zeta * eta))
        return self.e7_join(phi, A, B, nu)

    def fcross_sp(self, p: dict, q: dict) -> dict:
        return bil_apply(self.FCROSS, p, q)

    @cached_property
    def E7BRK(self):
        """e7 bracket table from the closed form.

        [Phi1, Phi2] has phi-part [phi1,phi2] + 2 A1 v B2 - 2 A2 v B1,
        A-part phi1 A2 - phi2 A1 + (2/3)(nu1 A2 - nu2 A1),
        B-part -phi1^T B2 + phi2^T B1 - (2/3)(nu1 B2 - nu2 B1),
        nu-part (A1,B2) - (A2,B1).
        """
        tbl = {}
        for n in range(DIM_E7):
            for m in range(n + 1, DIM_E7):
                cell = self._e7_bracket_basis(n, m)
                if cell:
                    tbl[(n, m)] = cell
                    tbl[(m, n)] = {k: -c for k, c in cell.items()}
        return tbl

    def _e7_bracket_basis(self, n, m):
        return self._e7_bracket_sp_slow({n: _1}, {m: _1})

    def _e7_bracket_sp_slow(self, e1: dict, e2: dict) -> dict:
        phi1, A1, B1, n1 = self.e7_parts(e1)
        phi2, A2, B2, n2 = self.e7_parts(e2)
        phi = bil_apply(self.E6BRK, phi1, phi2)
        la.vaxpy(phi, qq(2), self.vee_sp(A1, B2))
        la.vaxpy(phi, qq(-2), self.vee_sp(A2, B1))
        A = la.vsub(self.e6_act_sp(phi1, A2), self.e6_act_sp(phi2, A1))
        la.vaxpy(A, qq(2, 3) * n1, A2)
        la.vaxpy(A, -qq(2, 3) * n2, A1)
        B = la.vsub(self.e6_act_sp(self.e6_transpose_sp(phi2), B1),
                    self.e6_act_sp(self.e6_transpose_sp(phi1), B2))
        la.vaxpy(B, -qq(2, 3) * n1, B2)
        la.vaxpy(B, qq(2, 3) * n2, B1)
        nu = self.jinner(A1, B2) - self.jinner(A2, B1)
        return self.e7_join(phi, A, B, nu)

    def e7_bracket_sp(self, e1: dict, e2: dict) -> dict:
        return bil_apply(self.E7BRK, e1, e2)

    # ---------------- automorphism matrices ----------------

    @cached_property
    def SIG4_J(self):
        """sigma'_4 on J as a column map: x1 -> -e1 x1 e1, x2 -> e1 x2, x3 -> -x3 e1."""
        e1 = Octonion.basis(1)
        cols = {0: {0: _1}, 1: {1: _1}, 2: {2: _1}}
        for m in range(8):
            em = Octonion.basis(m)
            i1 = -(oct_mul(e1, oct_mul(em, e1)))
            i2 = oct_mul(e1, em)
            i3 = -(oct_mul(em, e1))
            for k, img in ((1, i1), (2, i2), (3, i3)):
                cols[jF(k, m)] = {jF(k, kk): c for kk, c in _oct_entries(img).items()}
        return cols

    @cached_property
    def SIG_J(self):
        cols = {}
        for n in range(DIM_J):
            cols[n] = {n: -_1 if n >= 11 else _1}
        return cols

    def _p_blockmap(self, jcols):
        cols = {}
        for n in range(DIM_J):
            col = jcols.get(n, {})
            cols[n] = dict(col)
            cols[DIM_J + n] = {DIM_J + k: c for k, c in col.items()}
        cols[54] = {54: _1}
        cols[55] = {55: _1}
        return cols

    @cached_property
    def SIG4_P(self):
        return self._p_blockmap(self.SIG4_J)

    @cached_property
    def SIG4_P_INV(self):
        m = self.SIG4_P
        return mat_mul_sp(m, mat_mul_sp(m, m))  # order 4

    @cached_property
    def SIG_P(self):
        return self._p_blockmap(self.SIG_J)

    @cached_property
    def LAMBDA_P(self):
        """lambda(X, Y, xi, eta) = (Y, -X, eta, -xi)."""
        cols = {}
        for n in range(DIM_J):
            cols[n] = {DIM_J + n: -_1}
            cols[DIM_J + n] = {n: _1}
        cols[54] = {55: -_1}
        cols[55] = {54: _1}
        return cols

    def e7_extract_from_action(self, pcols: dict) -> dict:
        """e7 coords of a P-endomorphism known to lie in e7 (column map input)."""
        img_eta = pcols.get(55, {})
        img_xi = pcols.get(54, {})
        A = {n: c for n, c in img_eta.items() if n < DIM_J}
        nu = -img_eta.get(55, _Z)
        B = {n - DIM_J: c for n, c in img_xi.items() if DIM_J <= n < 2 * DIM_J}
        # phi action: on (X,0,0,0): X-part of image = phi X - (nu/3) X
        phimap = {}
        for m in range(DIM_J):
            col = pcols.get(m, {})
            v = {n: c for n, c in col.items() if n < DIM_J}
            if not nu.is_zero():
                la.vaxpy(v, THIRD * nu, {m: _1})
            phimap[m] = v
        # T = phi(E) (derivations kill E)
        T = la.vadd(la.vadd(phimap.get(0, {}), phimap.get(1, {})), phimap.get(2, {}))
        tcoords = self.j_to_t(T)
        # delta = phi - T~
        imgs = []
        for m in range(DIM_J):
            imgs.append(la.vsub(phimap.get(m, {}), self.jmul(T, {m: _1})))
        phi = self.decompose_derivation(imgs)
        for n, c in tcoords.items():
            phi[DIM_F4 + n] = c
        return self.e7_join(phi, A, B, nu)

    def conj_e7_by(self, pcols: dict, pcols_inv: dict) -> dict:
        """Column map on e7 coords of Phi -> g Phi g^{-1} for g given on P."""
        acts = self.E7ACT
        out = {}
        for n in range(DIM_E7):
            conj = mat_mul_sp(pcols, mat_mul_sp(acts[n], pcols_inv))
            out[n] = self.e7_extract_from_action(conj)
        return out

    @cached_property
    def SIG4_E7(self):
        return self.conj_e7_by(self.SIG4_P, self.SIG4_P_INV)

    @cached_property
    def SIG_E7(self):
        return self.conj_e7_by(self.SIG_P, self.SIG_P)

    @cached_property
    def LAMBDA_E7(self):
        # lambda^2 = -1, so lambda^{-1} = lambda^3
        lam = self.LAMBDA_P
        lam_inv = mat_mul_sp(lam, mat_mul_sp(lam, lam))
        return self.conj_e7_by(lam, lam_inv)

    # ---------------- E8 layer ----------------
    # e8 coords: Phi 0..132 | P 133..188 | Q 189..244 | r 245 | s 246 | t 247

    E8_P0 = DIM_E7
    E8_Q0 = DIM_E7 + DIM_P
    E8_R, E8_S, E8_T = 245, 246, 247

    def e8_parts(self, R: dict):
        Phi, P, Q = {}, {}, {}
        r = s = t = _Z
        for n, c in R.items():
            if n < DIM_E7:
                Phi[n] = c
            elif n < self.E8_Q0:
                P[n - self.E8_P0] = c
            elif n < self.E8_R:
                Q[n - self.E8_Q0] = c
            elif n == self.E8_R:
                r = c
            elif n == self.E8_S:
                s = c
            else:
                t = c
        return Phi, P, Q, r, s, t

    def e8_join(self, Phi, P, Q, r, s, t) -> dict:
        out = dict(Phi)
        for i, c in P.items():
            out[self.E8_P0 + i] = c
        for i, c in Q.items():
            out[self.E8_Q0 + i] = c
        for idx, c in ((self.E8_R, r), (self.E8_S, s), (self.E8_T, t)):
            if not c.is_zero():
                out[idx] = c
        return out

    def e8_bracket_sp(self, R1: dict, R2: dict) -> dict:
        Phi1, P1, Q1, r1, s1, t1 = self.e8_parts(R1)
        Phi2, P2, Q2, r2, s2, t2 = self.e8_parts(R2)
        Phi = self.e7_bracket_sp(Phi1, Phi2)
        if P1 and Q2:
            la.vaxpy(Phi, _1, self.fcross_sp(P1, Q2))
        if P2 and Q1:
            la.vaxpy(Phi, -_1, self.fcross_sp(P2, Q1))
        P = la.vsub(self.e7_act_sp(Phi1, P2), self.e7_act_sp(Phi2, P1))
        la.vaxpy(P, r1, P2)
        la.vaxpy(P, -r2, P1)
        la.vaxpy(P, s1, Q2)
        la.vaxpy(P, -s2, Q1)
        Q = la.vsub(self.e7_act_sp(Phi1, Q2), self.e7_act_sp(Phi2, Q1))
        la.vaxpy(Q, -r1, Q2)
        la.vaxpy(Q, r2, Q1)
        la.vaxpy(Q, t1, P2)
        la.vaxpy(Q, -t2, P1)
        r = -qq(1, 8) * self.skew_sp(P1, Q2) + qq(1, 8) * self.skew_sp(P2, Q1) \
            + s1 * t2 - s2 * t1
        s = QUARTER * self.skew_sp(P1, P2) + qq(2) * (r1 * s2 - r2 * s1)
        t = -QUARTER * self.skew_sp(Q1, Q2) - qq(2) * (r1 * t2 - r2 * t1)
        return self.e8_join(Phi, P, Q, r, s, t)

    def e8_ad_columns(self, R: dict) -> dict:
        """Column map n -> [R, e_n] over the 248 basis."""
        cols = {}
        for n in range(DIM_E8):
            img = self.e8_bracket_sp(R, {n: _1})
            if img:
                cols[n] = img
        return cols

    @cached_property
    def E8ADJ(self):
        """ad columns of every e8 basis element (built once, reused by grams)."""
        return [self.e8_ad_columns({n: _1}) for n in range(DIM_E8)]

    @cached_property
    def B8_GRAM(self):
        """Killing form Gram matrix over the 248 basis, by ad-trace."""
        adj = self.E8ADJ
        # the (P,Q,r,s,t)-grading of the bracket kills every block except
        # (Phi,Phi), (Phi,r), (P,Q), (r,r), (s,t); only those are traced
        gram = [dict() for _ in range(DIM_E8)]

        def trace_pair(n, m):
            an, am = adj[n], adj[m]
            s = _Z
            for k, col in an.items():
                for l, c in col.items():
                    d = am.get(l)
                    if d is not None:
                        e = d.get(k)
                        if e is not None:
                            s = s + c * e
            return s

        pairs = []
        for n in range(133):
            for m in range(n, 133):
                pairs.append((n, m))
            pairs.append((n, 245))
        for n in range(133, 189):
            for m in range(189, 245):
                pairs.append((n, m))
        pairs.append((245, 245))
        pairs.append((246, 247))
        for n, m in pairs:
            v = trace_pair(n, m)
            if not v.is_zero():
                gram[n][m] = v
                if n != m:
                    gram[m][n] = v
        return gram

    def b8_sp(self, R1: dict, R2: dict):
        g = self.B8_GRAM
        s = _Z
        for n, a in R1.items():
            row = g[n]
            for m, b in R2.items():
                c = row.get(m)
                if c is not None:
                    s = s + a * b * c
        return s

    @cached_property
    def B7_GRAM(self):
        """Killing form of e7 over the 133 basis, by ad-trace."""
        brk = self.E7BRK
        adj = []
        for n in range(DIM_E7):
            cols = {}
            for m in range(DIM_E7):
                cell = brk.get((n, m))
                if cell:
                    cols[m] = cell
            adj.append(cols)
        gram = [dict() for _ in range(DIM_E7)]
        for n in range(DIM_E7):
            an = adj[n]
            for m in range(n, DIM_E7):
                am = adj[m]
                s = _Z
                for k, col in an.items():
                    for l, c in col.items():
                        d = am.get(l)
                        if d is not None:
                            e = d.get(k)
                            if e is not None:
                                s = s + c * e
                if not s.is_zero():
                    gram[n][m] = s
                    if n != m:
                        gram[m][n] = s
        return gram

    def b7_sp(self, e1: dict, e2: dict):
        g = self.B7_GRAM
        s = _Z
        for n, a in e1.items():
            row = g[n]
            for m, b in e2.items():
                c = row.get(m)
                if c is not None:
                    s = s + a * b * c
        return s

    # sigma'_4 / sigma / lambda_omega / tau on e8 coords ------------------

    def sig4_e8_sp(self, R: dict) -> dict:
        Phi, P, Q, r, s, t = self.e8_parts(R)
        nPhi = lin_apply(self.SIG4_E7, Phi)
        nP = lin_apply(self.SIG4_P, P)
        nQ = lin_apply(self.SIG4_P, Q)
        return self.e8_join(nPhi, nP, nQ, r, s, t)

    def sig_e8_sp(self, R: dict) -> dict:
        Phi, P, Q, r, s, t = self.e8_parts(R)
        return self.e8_join(lin_apply(self.SIG_E7, Phi), lin_apply(self.SIG_P, P),
                            lin_apply(self.SIG_P, Q), r, s, t)

    def lambda_omega_sp(self, R: dict) -> dict:
        Phi, P, Q, r, s, t = self.e8_parts(R)
        return self.e8_join(lin_apply(self.LAMBDA_E7, Phi),
                            lin_apply(self.LAMBDA_P, Q),
                            la.vscale(-_1, lin_apply(self.LAMBDA_P, P)),
                            -r, -t, -s)

    def tau_sp(self, v: dict) -> dict:
        """Complex conjugation on coordinates (all bases are real)."""
        return {n: c.conj() for n, c in v.items()}


T = Tables()
