"""Exterior algebra of R^7 over exact scalars.

Basis blades are 7-bit masks: bit i set means the factor e_{i+1} is
present, and the blade is the wedge of its factors in increasing index
order.  A form of grade k is a sparse map from k-bit masks to nonzero
coefficients.  All signs come from counting transpositions while
merging masks, so wedge, contraction and the Hodge star are exact for
any coefficient type that supports ring arithmetic.

Indices are 1-based everywhere in the public interface (e1..e7), to
match the usual way these forms are written out.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import scalar_from_json, scalar_to_json

DIM = 7
FULL_MASK = (1 << DIM) - 1
# the 4-dimensional block spanned by e4..e7, with volume form e4567
M4_MASK = 0b1111000
M3_MASK = 0b0000111


class FormError(ValueError):
    """Malformed form input: bad indices, bad JSON, bad support."""


class GradeError(ValueError):
    """An operation received a form of the wrong grade."""


def blade_mask(indices: Iterable[int]) -> int:
    """Mask of a strictly increasing 1-based index tuple."""
    mask = 0
    prev = 0
    for i in indices:
        if not 1 <= i <= DIM:
            raise FormError(f"index {i} out of range 1..{DIM}")
        if i <= prev:
            raise FormError(f"indices not strictly increasing: {tuple(indices)}")
        prev = i
        mask |= 1 << (i - 1)
    return mask


def blade_indices(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(DIM) if mask >> i & 1)


def merge_sign(m1: int, m2: int) -> int:
    """Sign of e^{m1} wedge e^{m2} against the sorted merged blade.

    The masks must be disjoint.  Counts the transpositions needed to
    interleave the two increasing sequences.
    """
    swaps = 0
    m = m1
    while m:
        low = m & -m
        i = low.bit_length() - 1
        m ^= low
        swaps += (m2 & ((1 << i) - 1)).bit_count()
    return -1 if swaps & 1 else 1


def _contract_sign(bit_pos: int, mask: int) -> int:
    below = (mask & ((1 << bit_pos) - 1)).bit_count()
    return -1 if below & 1 else 1


def _grade_blades():
    by_grade = [[] for _ in range(DIM + 1)]
    for mask in range(1 << DIM):
        by_grade[mask.bit_count()].append(mask)
    # order blades lexicographically by index tuple inside each grade
    return tuple(tuple(sorted(g, key=blade_indices)) for g in by_grade)


BLADES_BY_GRADE = _grade_blades()
BLADE_POSITION = tuple({m: i for i, m in enumerate(g)} for g in BLADES_BY_GRADE)


class Form:
    """Sparse exterior form of a fixed grade."""

    __slots__ = ("grade", "terms")

    def __init__(self, grade: int, terms=None):
        if not 0 <= grade <= DIM:
            raise GradeError(f"grade {grade} out of range")
        self.grade = grade
        clean = {}
        if terms:
            for mask, coeff in terms.items():
                if mask.bit_count() != grade:
                    raise GradeError(
                        f"blade {blade_indices(mask)} has wrong grade for a {grade}-form")
                if coeff == 0:
                    continue
                clean[mask] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, grade: int) -> "Form":
        return cls(grade)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices: Iterable[int]):
        return self.terms.get(blade_mask(indices), 0)

    def support_mask(self) -> int:
        out = 0
        for m in self.terms:
            out |= m
        return out

    def map_coefficients(self, fn) -> "Form":
        return Form(self.grade, {m: fn(c) for m, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if other.grade != self.grade:
            raise GradeError(f"cannot add a {self.grade}-form and a {other.grade}-form")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Form(self.grade, terms)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Form(self.grade, {m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, Form):
            return NotImplemented
        return Form(self.grade, {m: c * scalar for m, c in self.terms.items()})

    def __rmul__(self, scalar):
        return Form(self.grade, {m: scalar * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.grade == other.grade and self.terms == other.terms

    def __hash__(self):
        return hash((self.grade, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"Form({self.grade}, 0)"
        bits = []
        for m in sorted(self.terms, key=blade_indices):
            label = "".join(str(i) for i in blade_indices(m)) or "1"
            bits.append(f"{self.terms[m]!r}*e{label}")
        return f"Form({self.grade}, {' + '.join(bits)})"


def blade(indices: Iterable[int], coeff=1) -> Form:
    idx = tuple(indices)
    return Form(len(idx), {blade_mask(idx): coeff})


def vector(i: int) -> Form:
    """The basis vector e_i as a 1-form/vector (the metric is standard)."""
    return blade((i,))


def vector_form(coords: Sequence) -> Form:
    """1-form with the given 7 coordinates."""
    if len(coords) != DIM:
        raise FormError(f"need {DIM} coordinates")
    return Form(1, {1 << i: coords[i] for i in range(DIM)})


def coords_of(v: Form) -> list:
    if v.grade != 1:
        raise GradeError("coordinates of a non-vector")
    return [v.terms.get(1 << i, 0) for i in range(DIM)]


def wedge(a: Form, b: Form) -> Form:
    if a.grade + b.grade > DIM:
        raise GradeError(f"wedge of grades {a.grade}+{b.grade} exceeds {DIM}")
    terms = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            if m1 & m2:
                continue
            m = m1 | m2
            c = merge_sign(m1, m2) * c1 * c2
            acc = terms.get(m)
            terms[m] = c if acc is None else acc + c
    return Form(a.grade + b.grade, terms)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(v: Form, a: Form) -> Form:
    """Interior product v ⌟ a for a vector v (grade 1)."""
    if v.grade != 1:
        raise GradeError("contraction direction must be a vector")
    if a.grade == 0:
        raise GradeError("cannot contract into a 0-form")
    terms = {}
    for mv, cv in v.terms.items():
        pos = mv.bit_length() - 1
        for ma, ca in a.terms.items():
            if not ma >> pos & 1:
                continue
            m = ma ^ mv
            c = _contract_sign(pos, ma) * cv * ca
            acc = terms.get(m)
            terms[m] = c if acc is None else acc + c
    return Form(a.grade - 1, terms)


def hodge(a: Form) -> Form:
    """Hodge star for the standard metric and volume e1234567."""
    return Form(DIM - a.grade,
                {FULL_MASK ^ m: merge_sign(m, FULL_MASK ^ m) * c
                 for m, c in a.terms.items()})


def hodge_m4(a: Form) -> Form:
    """Hodge star of the 4-dimensional block span(e4..e7), volume e4567.

    The form must be supported on that block.
    """
    if a.support_mask() & ~M4_MASK:
        raise FormError("form is not supported on span(e4..e7)")
    if a.grade > 4:
        raise GradeError("grade exceeds the block dimension")
    return Form(4 - a.grade,
                {M4_MASK ^ m: merge_sign(m, M4_MASK ^ m) * c
                 for m, c in a.terms.items()})


def inner(a: Form, b: Form):
    """Metric pairing of two forms of the same grade (basis blades are
    orthonormal)."""
    if a.grade != b.grade:
        raise GradeError("inner product of different grades")
    small, big = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    total = 0
    for m, c in small.items():
        d = big.get(m)
        if d is not None:
            total = total + c * d
    return total


def norm_sq(a: Form):
    return inner(a, a)


def vol_coefficient(a: Form):
    """Coefficient of e1234567 in a 7-form."""
    if a.grade != DIM:
        raise GradeError("volume coefficient of a non-top form")
    return a.terms.get(FULL_MASK, 0)


def form_to_coords(a: Form) -> list:
    """Coefficient vector of a form in the fixed blade order of its grade."""
    return [a.terms.get(m, 0) for m in BLADES_BY_GRADE[a.grade]]


def form_from_coords(grade: int, coords: Sequence) -> Form:
    blades = BLADES_BY_GRADE[grade]
    if len(coords) != len(blades):
        raise FormError(f"need {len(blades)} coefficients for grade {grade}")
    return Form(grade, {m: c for m, c in zip(blades, coords)})


def form_to_json(a: Form) -> dict:
    terms = []
    for m in sorted(a.terms, key=blade_indices):
        terms.append({"indices": list(blade_indices(m)),
                      "coeff": scalar_to_json(a.terms[m])})
    return {"grade": a.grade, "terms": terms}


def form_from_json(data) -> Form:
    if not isinstance(data, dict) or "grade" not in data or "terms" not in data:
        raise FormError("form JSON needs 'grade' and 'terms'")
    grade = data["grade"]
    if not isinstance(grade, int) or not 0 <= grade <= DIM:
        raise FormError(f"bad grade: {grade!r}")
    if not isinstance(data["terms"], list):
        raise FormError("'terms' must be a list")
    terms = {}
    for entry in data["terms"]:
        if not isinstance(entry, dict) or "indices" not in entry or "coeff" not in entry:
            raise FormError(f"bad term: {entry!r}")
        idx = entry["indices"]
        if not isinstance(idx, list) or len(idx) != grade:
            raise FormError(f"term indices {idx!r} do not match grade {grade}")
        mask = blade_mask(idx)  # rejects unsorted and duplicate indices
        if mask in terms:
            raise FormError(f"duplicate blade {tuple(idx)}")
        terms[mask] = scalar_from_json(entry["coeff"])
    return Form(grade, terms)
