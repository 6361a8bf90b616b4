"""Dual-backend complex scalars and the complexified octonion algebra.

Two scalar backends coexist:

* exact  -- Gaussian rationals ``QQi`` (pairs of arbitrary-precision
  rationals), used for every algebraic identity check;
* approx -- Python ``complex``, used for flows that need cos/sinh/exp.

Octonions are 8-vectors over the basis e0..e7 with a fixed signed
multiplication table.  The table is generated from seven oriented triples
and is pinned by the triality acceptance suite: left multiplication by e1
must be the block matrix diag(-J,-J,-J,-J), J = [[0,1],[-1,0]].
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "QQi", "Scalar", "EXACT", "APPROX",
    "zero", "one", "imag_unit", "qq", "qqi", "backend_of", "scalars_close",
    "Octonion", "oct_mul", "oct_conj", "oct_re", "oct_inner",
    "FANO_TRIPLES", "OCT_TABLE",
]

EXACT = "exact"
APPROX = "approx"


class QQi:
    """Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other):
        other = _coerce(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero QQi")
        return QQi((self.re * other.re + self.im * other.im) / n,
                   (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.re == other and self.im == 0
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def conj(self):
        return QQi(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def to_complex(self):
        return complex(self.re, self.im)

    @staticmethod
    def parse(s: str) -> "QQi":
        """Inverse of str(): accepts 'a', 'bi', 'a+bi', 'a-bi'."""
        s = s.strip().replace(" ", "")
        if s.endswith("i"):
            body = s[:-1]
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "/+-":
                    return QQi(Fraction(body[:k]),
                               Fraction(body[k:] if body[k + 1:] else body[k] + "1"))
            return QQi(0, Fraction(body if body not in ("", "+", "-") else body + "1"))
        return QQi(Fraction(s), 0)


def _coerce(x):
    if isinstance(x, QQi):
        return x
    if isinstance(x, (int, Fraction)):
        return QQi(x)
    raise TypeError(f"cannot mix {type(x).__name__} with exact scalars")


Scalar = object  # QQi (exact) or complex (approx); duck-typed everywhere

_ZERO = QQi(0)
_ONE = QQi(1)
_I = QQi(0, 1)


def zero(backend=EXACT):
    return _ZERO if backend == EXACT else 0j


def one(backend=EXACT):
    return _ONE if backend == EXACT else 1 + 0j


def imag_unit(backend=EXACT):
    return _I if backend == EXACT else 1j


def qq(num, den=1):
    """Exact rational scalar num/den."""
    return QQi(Fraction(num, den))


def qqi(re_num, re_den=1, im_num=0, im_den=1):
    return QQi(Fraction(re_num, re_den), Fraction(im_num, im_den))


def backend_of(s) -> str:
    return EXACT if isinstance(s, QQi) else APPROX


def scalars_close(a, b, tol=1e-9) -> bool:
    """Equality for exact scalars, |a-b| <= tol for approx."""
    if isinstance(a, QQi) and isinstance(b, QQi):
        return a == b
    ca = a.to_complex() if isinstance(a, QQi) else complex(a)
    cb = b.to_complex() if isinstance(b, QQi) else complex(b)
    return abs(ca - cb) <= tol


# ----------------------------------------------------------------------
# Octonion multiplication table.
#
# Seven oriented triples (a,b,c): e_a e_b = e_c cyclically.  The set and
# orientations are forced by requiring that left multiplication by e1 is
# diag(-J,-J,-J,-J) on coefficient pairs (e0,e1)(e2,e3)(e4,e5)(e6,e7) and
# right multiplication by -e1 is diag(J,-J,-J,-J); the triality suite in
# spin_verify gates this choice.
# ----------------------------------------------------------------------

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (4, 2, 6),
                (2, 5, 7), (3, 4, 7), (3, 5, 6))

# OCT_TABLE[i][j] = (k, sign) with e_i e_j = sign * e_k
OCT_TABLE: list[list[tuple[int, int]]] = [[(0, 0)] * 8 for _ in range(8)]
for _i in range(8):
    OCT_TABLE[0][_i] = (_i, 1)
    OCT_TABLE[_i][0] = (_i, 1)
for _i in range(1, 8):
    OCT_TABLE[_i][_i] = (0, -1)
for _a, _b, _c in FANO_TRIPLES:
    for _x, _y, _z in ((_a, _b, _c), (_b, _c, _a), (_c, _a, _b)):
        OCT_TABLE[_x][_y] = (_z, 1)
        OCT_TABLE[_y][_x] = (_z, -1)


class Octonion:
    """Element of the complexified octonions: 8 scalars over e0..e7."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 8:
            raise ValueError("octonion needs 8 coefficients")
        self.coeffs = coeffs

    @staticmethod
    def zero(backend=EXACT):
        z = zero(backend)
        return Octonion((z,) * 8)

    @staticmethod
    def basis(i, backend=EXACT):
        c = [zero(backend)] * 8
        c[i] = one(backend)
        return Octonion(c)

    @staticmethod
    def from_scalar(s):
        b = backend_of(s)
        c = [zero(b)] * 8
        c[0] = s
        return Octonion(c)

    def backend(self):
        return backend_of(self.coeffs[0])

    def __add__(self, other):
        return Octonion(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return Octonion(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return Octonion(-a for a in self.coeffs)

    def smul(self, s):
        return Octonion(s * a for a in self.coeffs)

    def __mul__(self, other):
        return oct_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, Octonion) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*e{i}" for i, c in enumerate(self.coeffs) if not _is0(c)]
        return "Oct(" + (" + ".join(terms) if terms else "0") + ")"

    def conj(self):
        return oct_conj(self)

    def is_zero(self):
        return all(_is0(c) for c in self.coeffs)

    def close_to(self, other, tol=1e-9):
        return all(scalars_close(a, b, tol) for a, b in zip(self.coeffs, other.coeffs))


def _is0(c):
    return c.is_zero() if isinstance(c, QQi) else c == 0


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    xc, yc = x.coeffs, y.coeffs
    bk = backend_of(xc[0])
    out = [zero(bk)] * 8
    for i in range(8):
        xi = xc[i]
        if _is0(xi):
            continue
        row = OCT_TABLE[i]
        for j in range(8):
            yj = yc[j]
            if _is0(yj):
                continue
            k, s = row[j]
            t = xi * yj
            out[k] = out[k] + t if s > 0 else out[k] - t
    return Octonion(out)


def oct_conj(x: Octonion) -> Octonion:
    c = x.coeffs
    return Octonion((c[0],) + tuple(-a for a in c[1:]))


def oct_re(x: Octonion):
    return x.coeffs[0]


def oct_inner(x: Octonion, y: Octonion):
    """(x, y) = sum of coefficient products; bilinear, equals Re(x * conj(y))."""
    s = zero(backend_of(x.coeffs[0]))
    for a, b in zip(x.coeffs, y.coeffs):
        s = s + a * b
    return s
