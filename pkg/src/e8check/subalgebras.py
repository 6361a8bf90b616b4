"""Exact fixed-point subalgebra solver.

A ConstraintSet names an ambient space and a list of linear conditions
(fixed by an endomorphism, annihilating a vector, commuting with an
element...).  solve() intersects the constraint kernels with exact
fraction-free elimination and returns a deterministic basis certificate.
The registry DIMENSION_CHECKS collects every dimension audit the
verification suites run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .scalars import QQi, qq, qqi, Octonion
from .jordan import JordanElement, E1, E2, E3, F
from .freudenthal import PVector
from .lie_algebras import F4Element, E6Element, E7Element, LinearEndo
from .e8_core import E8Element
from .tables import T, GPOS, jF, DIM_J, DIM_P, DIM_F4, DIM_E6, DIM_E7, DIM_E8, lin_apply
from . import linalg as la

__all__ = [
    "Constraint", "ConstraintSet", "SubalgebraCertificate", "solve",
    "so6_generators", "so6_e7_elements", "so6_e8_elements",
    "restrict_endo", "kernel_probe",
    "kappa_e7_element", "mu_e7_element",
    "DIMENSION_CHECKS", "DimensionCheck", "run_dimension_check",
]

_Z = QQi(0)
_1 = QQi(1)

# ambient name -> (dimension, element wrapper)
_AMBIENTS = {
    "f4": (DIM_F4, lambda sp: F4Element(sp)),
    "e6": (DIM_E6, lambda sp: E6Element(sp)),
    "e7": (DIM_E7, lambda sp: E7Element(sp)),
    "e8": (DIM_E8, lambda sp: E8Element.from_sp(sp)),
    "j": (DIM_J, lambda sp: JordanElement(sp)),
    "p": (DIM_P, lambda sp: PVector.from_sp(sp)),
}

def _ambient_bracket(ambient):
    if ambient == "f4":
        return lambda u, v: _bil(T.F4BRK, u, v)
    if ambient == "e6":
        return lambda u, v: _bil(T.E6BRK, u, v)
    if ambient == "e7":
        return T.e7_bracket_sp
    if ambient == "e8":
        return T.e8_bracket_sp
    raise ValueError(f"{ambient} is not a Lie algebra ambient")


def _bil(table, u, v):
    from .tables import bil_apply
    return bil_apply(table, u, v)


def _named_op(ambient: str, name: str):
    """Sparse application function of a named linear map on the ambient."""
    key = (name, ambient)
    table_ops = {
        ("sigma4", "j"): lambda v: lin_apply(T.SIG4_J, v),
        ("sigma", "j"): lambda v: lin_apply(T.SIG_J, v),
        ("sigma4", "p"): lambda v: lin_apply(T.SIG4_P, v),
        ("sigma", "p"): lambda v: lin_apply(T.SIG_P, v),
        ("lambda", "p"): lambda v: lin_apply(T.LAMBDA_P, v),
        ("sigma4", "e6"): lambda v: _conj_e6_sig4(v),
        ("sigma", "e6"): lambda v: _conj_e6_sig(v),
        ("sigma4", "e7"): lambda v: lin_apply(T.SIG4_E7, v),
        ("sigma", "e7"): lambda v: lin_apply(T.SIG_E7, v),
        ("sigma4", "e8"): T.sig4_e8_sp,
        ("sigma", "e8"): T.sig_e8_sp,
        ("lambda_omega", "e8"): T.lambda_omega_sp,
    }
    if key not in table_ops:
        raise KeyError(f"no named operator {name!r} on ambient {ambient!r}")
    return table_ops[key]


def _conj_e6_sig4(v):
    e7sp = dict(v)
    out = lin_apply(T.SIG4_E7, e7sp)
    return {n: c for n, c in out.items() if n < DIM_E6}


def _conj_e6_sig(v):
    out = lin_apply(T.SIG_E7, dict(v))
    return {n: c for n, c in out.items() if n < DIM_E6}


def _action_on(ambient: str, elt_sp: dict, target_space: str, vec_sp: dict) -> dict:
    """Action of an ambient algebra element on a vector of a module."""
    if ambient == "f4" and target_space == "j":
        return T.f4_act_sp(elt_sp, vec_sp)
    if ambient == "e6" and target_space == "j":
        return T.e6_act_sp(elt_sp, vec_sp)
    if ambient in ("e6", "e7") and target_space == "p":
        return T.e7_act_sp(dict(elt_sp), vec_sp)
    raise ValueError(f"no action of {ambient} on {target_space}")


@dataclass
class Constraint:
    """One linear condition on ambient elements.

    kind:
      fixed_by       payload = operator name ("sigma4", "sigma", ...)
      equals_after   payload = (operator name, sign QQi)
      annihilates    payload = (target_space, vector sparse dict)
      commutes_with  payload = element sparse dict (same ambient)
    """

    kind: str
    payload: object
    label: str = ""

    def describe(self) -> str:
        return self.label or self.kind

    def residual(self, ambient: str, v: dict) -> dict:
        if self.kind == "fixed_by":
            op = _named_op(ambient, self.payload)
            return la.vsub(op(v), v)
        if self.kind == "equals_after":
            name, sign = self.payload
            op = _named_op(ambient, name)
            return la.vsub(op(v), la.vscale(sign, v))
        if self.kind == "annihilates":
            space, vec = self.payload
            return _action_on(ambient, v, space, vec)
        if self.kind == "commutes_with":
            return _ambient_bracket(ambient)(v, self.payload)
        raise ValueError(f"unknown constraint kind {self.kind}")


@dataclass
class ConstraintSet:
    ambient: str
    constraints: list
    real_form: bool = False

    def __post_init__(self):
        if self.ambient not in _AMBIENTS:
            raise ValueError(f"unknown ambient {self.ambient!r}")


@dataclass
class SubalgebraCertificate:
    ambient: str
    dim: int
    basis: list                      # ambient elements (wrapper objects)
    basis_sp: list                   # their sparse coordinate dicts
    constraint_descriptions: list
    real_form: bool = False
    closure_checked: bool = False

    def check_closure(self) -> bool:
        """All pairwise brackets lie in the exact span of the basis."""
        brk = _ambient_bracket(self.ambient)
        dim_amb = _AMBIENTS[self.ambient][0]
        span_rows = [dict(b) for b in self.basis_sp]
        base_rank = la.rows_rank(span_rows, dim_amb)
        for i in range(len(self.basis_sp)):
            for j in range(i + 1, len(self.basis_sp)):
                w = brk(self.basis_sp[i], self.basis_sp[j])
                if not w:
                    continue
                if la.rows_rank(span_rows + [w], dim_amb) != base_rank:
                    return False
        self.closure_checked = True
        return True

    def to_json(self) -> str:
        return json.dumps({
            "ambient": self.ambient,
            "real_form": self.real_form,
            "constraints": self.constraint_descriptions,
            "dim": self.dim,
            "closure_checked": self.closure_checked,
            "basis": [{str(k): str(c) for k, c in sorted(sp.items())}
                      for sp in self.basis_sp],
        }, indent=1, sort_keys=True)


def solve(cs: ConstraintSet) -> SubalgebraCertificate:
    """Exact kernel of the stacked constraints, via iterative intersection.

    Constraints are applied in order: each one restricts the current
    solution subspace, keeping matrices small.  Deterministic by the fixed
    piver rule of the eliminator.
    """
    dim_amb, wrap = _AMBIENTS[cs.ambient]
    # current solution space: list of sparse ambient vectors
    current = [{n: _1} for n in range(dim_amb)]
    for con in cs.constraints:
        images = [con.residual(cs.ambient, v) for v in current]
        if cs.real_form:
            for img in images:
                for c in img.values():
                    if c.im != 0:
                        raise ValueError(
                            "real-form solve hit a non-real constraint entry")
        out_idx = sorted({i for img in images for i in img})
        rows = []
        for i in out_idx:
            row = {m: img[i] for m, img in enumerate(images) if i in img}
            rows.append(row)
        ker = la.kernel_basis(rows, len(current))
        new = []
        for combo in ker:
            vec: dict = {}
            for m, c in combo.items():
                la.vaxpy(vec, c, current[m])
            new.append(vec)
        current = new
        if not current:
            break
    return SubalgebraCertificate(
        ambient=cs.ambient,
        dim=len(current),
        basis=[wrap(dict(sp)) for sp in current],
        basis_sp=current,
        constraint_descriptions=[c.describe() for c in cs.constraints],
        real_form=cs.real_form,
    )


# ----------------------------------------------------------------------
# stock elements
# ----------------------------------------------------------------------

def so6_generators() -> list:
    """The 15 rotation generators G_ij, 2 <= i < j <= 7, as F4Elements.

    Each annihilates E1, E2, E3, F1(e0) and F1(e1)."""
    return [F4Element.G(i, j) for i in range(2, 8) for j in range(i + 1, 8)]


def so6_e7_elements() -> list:
    return [E7Element(dict(g.sp)) for g in so6_generators()]


def so6_e8_elements() -> list:
    return [E8Element.from_sp(dict(g.sp)) for g in so6_generators()]


def kappa_e7_element() -> E7Element:
    """kappa as a structural e7 element: Phi(-(2/3)(2E1-E2-E3)~, 0, 0, -1)."""
    Tpart = (E1.smul(qq(2)) - E2 - E3).smul(qq(-2, 3))
    return E7Element.from_parts(E6Element.from_T(Tpart), JordanElement.zero(),
                                JordanElement.zero(), qq(-1))


def mu_e7_element() -> E7Element:
    """mu = Phi(0, E1, E1, 0)."""
    return E7Element.from_parts(E6Element.zero(), E1, E1, _Z)


# ----------------------------------------------------------------------
# restriction and kernel probing
# ----------------------------------------------------------------------

def restrict_endo(M: LinearEndo, V: list) -> LinearEndo:
    """Matrix of M restricted to the span of V (exact; must be invariant).

    V is a list of sparse coordinate dicts or wrapped elements.  Raises
    ValueError naming the offending vector if the span is not invariant.
    """
    vecs = [v.sp if hasattr(v, "sp") else dict(v) for v in V]
    k = len(vecs)
    cols_out = []
    for idx, v in enumerate(vecs):
        img = M.apply_sp(v)
        support = sorted(set().union(*(set(w) for w in vecs), set(img)))
        rows = [{j: vecs[j][i] for j in range(k) if i in vecs[j]}
                for i in support]
        rhs = [img.get(i, _Z) for i in support]
        try:
            combo = la.solve_unique(rows, rhs, k)
        except ValueError:
            raise ValueError(f"subspace not invariant: image of basis vector "
                             f"{idx} leaves the span")
        cols_out.append(combo)
    entries = [[cols_out[j].get(i, _Z) for j in range(k)] for i in range(k)]
    return LinearEndo(entries)


def kernel_probe(candidates: list, subspace: list, tol=None) -> list:
    """Return the candidates acting as the identity on the subspace.

    candidates: list of (name, LinearEndo) or LinearEndo; subspace: list of
    sparse dicts / wrapped elements."""
    vecs = [v.sp if hasattr(v, "sp") else dict(v) for v in subspace]
    out = []
    for cand in candidates:
        name, endo = cand if isinstance(cand, tuple) else (repr(cand), cand)
        good = True
        for v in vecs:
            img = endo.apply_sp(v)
            if img != v:
                good = False
                break
        if good:
            out.append((name, endo))
    return out


# ----------------------------------------------------------------------
# dimension-audit registry
# ----------------------------------------------------------------------

@dataclass
class DimensionCheck:
    check_id: str
    anchor: str
    statement: str
    expected: int
    build: object                    # () -> ConstraintSet


def _ann_j(vec: JordanElement, label: str) -> Constraint:
    return Constraint("annihilates", ("j", vec.sp), label)


def _ann_p(vec: PVector, label: str) -> Constraint:
    return Constraint("annihilates", ("p", vec.sp), label)


def _f4_diag_plus_F1(ks):
    cons = [_ann_j(JordanElement.basis(i), f"kills E{i+1}") for i in range(3)]
    cons += [_ann_j(F(1, k), f"kills F1(e{k})") for k in ks]
    return ConstraintSet("f4", cons)


def _e7_kappa_mu(extra):
    cons = [Constraint("commutes_with", kappa_e7_element().sp, "commutes with kappa"),
            Constraint("commutes_with", mu_e7_element().sp, "commutes with mu")]
    return ConstraintSet("e7", cons + extra)


def _pdot_F1(k) -> PVector:
    return PVector(F(1, k), JordanElement.zero(), _Z, _Z)


def _e_tilde(sign: int) -> PVector:
    return PVector(JordanElement.zero(), E1.smul(qq(sign)), _Z, qq(1))


def _build_so6_commutant(extra_first):
    pairs = [(i, j) for i in range(2, 8) for j in range(i + 1, 8)]
    cons = list(extra_first)
    for (i, j), g in zip(pairs, so6_generators()):
        cons.append(Constraint("commutes_with", dict(g.sp),
                               f"commutes with G{i}{j}"))
    return cons


DIMENSION_CHECKS = [
    DimensionCheck(
        "dims.so3", "Lemma 3.5",
        "f4 elements killing E1,E2,E3 and F1(e0..e4) span so(3)", 3,
        lambda: _f4_diag_plus_F1(range(5))),
    DimensionCheck(
        "dims.so4", "Lemma 3.8",
        "f4 elements killing E1,E2,E3 and F1(e0..e3) span so(4)", 6,
        lambda: _f4_diag_plus_F1(range(4))),
    DimensionCheck(
        "dims.so5", "Lemma 3.11",
        "f4 elements killing E1,E2,E3 and F1(e0..e2) span so(5)", 10,
        lambda: _f4_diag_plus_F1(range(3))),
    DimensionCheck(
        "dims.so6", "Lemma 3.14",
        "f4 elements killing E1,E2,E3 and F1(e0),F1(e1) span so(6)", 15,
        lambda: _f4_diag_plus_F1(range(2))),
    DimensionCheck(
        "dims.e7-sig4", "Lemma 4.1",
        "sigma4-commutant of e7 has dimension 33", 33,
        lambda: ConstraintSet("e7", [Constraint("fixed_by", "sigma4",
                                                "commutes with sigma4")])),
    DimensionCheck(
        "dims.e7-sig4-so6", "Lemma 4.1",
        "sigma4- and so(6)-commutant of e7 has dimension 18", 18,
        lambda: ConstraintSet("e7", _build_so6_commutant(
            [Constraint("fixed_by", "sigma4", "commutes with sigma4")]))),
    DimensionCheck(
        "dims.f4-E1-F1perp", "Lemma 4.3",
        "f4 elements killing E1 and F1(e2..e7) span so(3)", 3,
        lambda: ConstraintSet("f4", [_ann_j(E1, "kills E1")] +
                              [_ann_j(F(1, k), f"kills F1(e{k})")
                               for k in range(2, 8)])),
    DimensionCheck(
        "dims.e6-sigma-E1-F1perp", "Lemma 4.6",
        "sigma-commuting e6 elements killing E1, F1(e2..e7) span so(4)", 6,
        lambda: ConstraintSet("e6", [Constraint("fixed_by", "sigma",
                                                "commutes with sigma"),
                                     _ann_j(E1, "kills E1")] +
                              [_ann_j(F(1, k), f"kills F1(e{k})")
                               for k in range(2, 8)])),
    DimensionCheck(
        "dims.e7-kmu-Et-F1perp", "Lemma 4.10",
        "kappa,mu-commutant killing E-tilde and the F1(e2..7) slots: so(5)", 10,
        lambda: _e7_kappa_mu([_ann_p(_e_tilde(1), "kills (0,E1,0,1)")] +
                             [_ann_p(_pdot_F1(k), f"kills (F1(e{k}),0,0,0)")
                              for k in range(2, 8)])),
    DimensionCheck(
        "dims.e7-kmu-F1perp", "Lemma 4.14",
        "kappa,mu-commutant killing the F1(e2..7) slots: so(6)", 15,
        lambda: _e7_kappa_mu([_ann_p(_pdot_F1(k), f"kills (F1(e{k}),0,0,0)")
                              for k in range(2, 8)])),
    DimensionCheck(
        "dims.e7-kmu-sig4", "Lemma 4.18",
        "kappa,mu-commutant intersected with the sigma4-commutant: dim 30", 30,
        lambda: _e7_kappa_mu([Constraint("fixed_by", "sigma4",
                                         "commutes with sigma4")])),
    DimensionCheck(
        "dims.e8-sig4-so6-t", "Lemma 5.1",
        "sigma4-fixed so(6)-commutant of e8 killing the t-slot: dim 31", 31,
        lambda: ConstraintSet("e8", _build_so6_commutant(
            [Constraint("fixed_by", "sigma4", "fixed by sigma4")]) +
            [Constraint("commutes_with", {247: _1}, "commutes with t-slot")]),),
    DimensionCheck(
        "dims.e8-sig4-so6", "Lemma 5.1",
        "sigma4-fixed so(6)-commutant of e8: dim 45", 45,
        lambda: ConstraintSet("e8", _build_so6_commutant(
            [Constraint("fixed_by", "sigma4", "fixed by sigma4")]))),
    DimensionCheck(
        "dims.so10-complex", "Lemma 6.1",
        "the so(10) fixed space: complex dimension 45", 45,
        lambda: ConstraintSet("e8", _build_so6_commutant(
            [Constraint("fixed_by", "sigma4", "fixed by sigma4")]))),
    DimensionCheck(
        "dims.e8-sig4", "Lemma 7.1",
        "sigma4-fixed subalgebra of e8: dim 60", 60,
        lambda: ConstraintSet("e8", [Constraint("fixed_by", "sigma4",
                                                "fixed by sigma4")])),
    DimensionCheck(
        "dims.f4-real-so6", "Main-theorem real form",
        "real f4 elements killing E1,E2,E3,F1(e0),F1(e1): real dim 15", 15,
        lambda: ConstraintSet("f4",
                              [_ann_j(JordanElement.basis(i), f"kills E{i+1}")
                               for i in range(3)] +
                              [_ann_j(F(1, k), f"kills F1(e{k})")
                               for k in range(2)],
                              real_form=True)),
]


def run_dimension_check(check: DimensionCheck):
    cert = solve(check.build())
    return cert, cert.dim == check.expected
