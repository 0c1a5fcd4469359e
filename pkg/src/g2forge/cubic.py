"""The quadratic cocycle b2 of the coassociative form and its cubic scalars.

For 4-forms a1, a2 the cocycle b2(a1, a2) is the unique 3-form with

    b2(a1, a2) ^ (v -| psi) + hat(a1) ^ (v -| a2) + hat(a2) ^ (v -| a1) = 0

for every vector v; uniqueness is the injectivity of the contraction
pairing (rank 35), existence is verified on all 49 scalar equations at
every call.  On the 27-dimensional summand the diagonal b2(a, a) has the
closed form Q2(a) below, and pairing once more with a gives the cubic
polynomial Q.  Every scalar produced here is computed along two
independent routes and cross-checked; a mismatch raises instead of
returning anything.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import Form, GradeError, contract, hodge, inner, norm_sq, \
    vector, vol_coefficient, wedge
from .g2 import G2Frame, InternalConsistencyError, TypeDecompositionError, \
    standard_frame, star_action
from .linalg import SymTensor, sym_inner

_SEVEN = range(1, 8)


def quadratic_form(a1: Form, a2: Form) -> SymTensor:
    """The symmetric tensor (v, w) |-> <v -| a1, w -| a2>, symmetrized.

    For a1 = a2 the raw matrix is already symmetric; in general only the
    symmetric part is the polarization of the quadratic map.
    """
    if a1.grade != a2.grade or a1.grade < 1:
        raise GradeError("quadratic_form needs two forms of equal grade >= 1")
    c1 = [contract(vector(i), a1) for i in _SEVEN]
    c2 = [contract(vector(i), a2) for i in _SEVEN]
    half = Fraction(1, 2)
    entries = [[half * (inner(c1[i], c2[j]) + inner(c2[i], c1[j]))
                for j in range(7)] for i in range(7)]
    return SymTensor(entries)


def quadratic_form_traceless(a1: Form, a2: Form) -> SymTensor:
    return quadratic_form(a1, a2).traceless_part()


def b2(a1: Form, a2: Form, frame: G2Frame | None = None) -> Form:
    """The symmetric bilinear cocycle on 4-forms, by exact linear solve."""
    fr = frame or standard_frame()
    if a1.grade != 4 or a2.grade != 4:
        raise GradeError("b2 needs two 4-forms")
    h1, h2 = fr.hat(a1), fr.hat(a2)
    rhs = []
    for j in _SEVEN:
        v = vector(j)
        rhs.append(-(wedge(h1, contract(v, a2)) + wedge(h2, contract(v, a1))))
    return fr.solve_three_form(rhs)


def q2_closed_form(a: Form, frame: G2Frame | None = None) -> Form:
    """Closed form of the diagonal cocycle on the 27-summand:

        Q2(a) = -i(q0(a, a)) + (2/7) |a|^2 phi,

    valid only for a of pure 27 type (checked).
    """
    fr = frame or standard_frame()
    if a.grade != 4:
        raise GradeError("q2_closed_form needs a 4-form")
    p1, p7, _ = fr.project4(a)
    if not p1.is_zero() or not p7.is_zero():
        raise TypeDecompositionError("form is not of pure 27 type")
    q0 = quadratic_form(a, a).traceless_part()
    return -fr.iso_i(q0) + Fraction(2, 7) * norm_sq(a) * fr.phi


def q2(a: Form, frame: G2Frame | None = None) -> Form:
    """Q2 on the 27-summand, computed through the closed form and through
    the linear solve, cross-checked."""
    fr = frame or standard_frame()
    closed = q2_closed_form(a, fr)
    solved = b2(a, a, fr)
    if closed != solved:
        raise InternalConsistencyError("Q2 closed form disagrees with the b2 solve")
    return closed


def q_value(a: Form, frame: G2Frame | None = None):
    """The cubic scalar Q(a), with Q(a) vol = Q2(a) ^ a, for a of pure
    27 type.  Checked against -2 <q(a,a), i^{-1}(*a)>."""
    fr = frame or standard_frame()
    via_wedge = vol_coefficient(wedge(q2(a, fr), a))
    s_inv = fr.iso_i_inv(hodge(a))
    via_tensor = -2 * sym_inner(quadratic_form(a, a), s_inv)
    if via_wedge != via_tensor:
        raise InternalConsistencyError("the two routes to Q disagree")
    return via_wedge


def p_value(b: Form, frame: G2Frame | None = None):
    """The cubic scalar on 3-forms of pure 27 type,

        P(b) = 2 <p(b, b), i^{-1}(b)> = Q(*b),

    with both sides computed and compared."""
    fr = frame or standard_frame()
    if b.grade != 3:
        raise GradeError("p_value needs a 3-form")
    direct = 2 * sym_inner(quadratic_form(b, b), fr.iso_i_inv(b))
    via_q = q_value(hodge(b), fr)
    if direct != via_q:
        raise InternalConsistencyError("P(b) != Q(*b)")
    return direct


def trilinear(S1: SymTensor, S2: SymTensor, S3: SymTensor,
              frame: G2Frame | None = None):
    """The trilinear form <b2(*i(S1), *i(S2)), i(S3)> on traceless
    symmetric tensors.  Fully symmetric under permutations."""
    fr = frame or standard_frame()
    b_1 = fr.iso_i(S1)
    b_2 = fr.iso_i(S2)
    return inner(b2(hodge(b_1), hodge(b_2), fr), fr.iso_i(S3))


def trilinear_direct(S1: SymTensor, S2: SymTensor, S3: SymTensor,
                     frame: G2Frame | None = None):
    """<p(i(S1), i(S2)), S3>, the same form up to the overall factor 2
    carried by the cocycle route: trilinear = 2 * trilinear_direct."""
    fr = frame or standard_frame()
    return sym_inner(quadratic_form(fr.iso_i(S1), fr.iso_i(S2)), S3)


def trilinear_star_route(S1: SymTensor, S2: SymTensor, S3: SymTensor,
                         frame: G2Frame | None = None):
    """Derived-action route: <S3 * i(S1), i(S2)> + <S3 * i(S2), i(S1)>."""
    fr = frame or standard_frame()
    b_1 = fr.iso_i(S1)
    b_2 = fr.iso_i(S2)
    A3 = S3.to_matrix()
    return inner(star_action(A3, b_1), b_2) + inner(star_action(A3, b_2), b_1)
