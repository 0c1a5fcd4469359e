"""The seven-dimensional exterior algebra over the orthonormal frame."""

import random
from fractions import Fraction

import pytest

from g2forge import exterior as ext
from g2forge.exterior import Form, FormError, GradeError, blade, contract, \
    coords_of, hodge, inner, norm_sq, vector, vector_form, vol_coefficient, \
    wedge
from g2forge.g2 import standard_phi


def _random_form(rng, grade, bound=4):
    out = Form.zero(grade)
    for m in range(128):
        if bin(m).count("1") == grade:
            c = rng.randint(-bound, bound)
            if c:
                out = out + Form(grade, {m: Fraction(c)})
    return out


def test_blade_basics():
    assert blade([1, 2]).grade == 2
    assert wedge(vector(1), vector(2)) == blade([1, 2])
    assert wedge(vector(2), vector(1)) == -blade([1, 2])
    assert wedge(vector(1), vector(1)).is_zero()


def test_blade_rejects_bad_indices():
    with pytest.raises(FormError):
        blade([0, 1])
    with pytest.raises(FormError):
        blade([1, 1])
    with pytest.raises(FormError):
        blade([8])


def test_wedge_grade_overflow():
    with pytest.raises(GradeError):
        wedge(blade([1, 2, 3, 4]), blade([1, 5, 6, 7]))


def test_wedge_graded_commutative_random():
    rng = random.Random(11)
    for _ in range(80):
        ka, kb = rng.randint(0, 3), rng.randint(0, 3)
        a, b = _random_form(rng, ka), _random_form(rng, kb)
        assert wedge(a, b) == (-1) ** (ka * kb) * wedge(b, a)


def test_wedge_associative_random():
    rng = random.Random(13)
    for _ in range(80):
        grades = [rng.randint(0, 2) for _ in range(3)]
        a, b, c = (_random_form(rng, k) for k in grades)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_contraction_is_antiderivation():
    rng = random.Random(19)
    for _ in range(80):
        ka, kb = rng.randint(1, 3), rng.randint(1, 3)
        a, b = _random_form(rng, ka), _random_form(rng, kb)
        v = vector_form([Fraction(rng.randint(-3, 3)) for _ in range(7)])
        assert contract(v, wedge(a, b)) == \
            wedge(contract(v, a), b) + (-1) ** ka * wedge(a, contract(v, b))


def test_contraction_squares_to_zero():
    rng = random.Random(29)
    for _ in range(40):
        a = _random_form(rng, rng.randint(2, 4))
        v = vector_form([Fraction(rng.randint(-3, 3)) for _ in range(7)])
        assert contract(v, contract(v, a)).is_zero()


def test_hodge_involution_all_blades():
    for m in range(128):
        k = bin(m).count("1")
        b = Form(k, {m: Fraction(1)})
        assert hodge(hodge(b)) == b


def test_hodge_inner_product_compatibility():
    rng = random.Random(31)
    for _ in range(60):
        k = rng.randint(0, 7)
        a, b = _random_form(rng, k, 3), _random_form(rng, k, 3)
        # a ^ *b = <a, b> vol
        assert vol_coefficient(wedge(a, hodge(b))) == inner(a, b)


def test_inner_requires_equal_grades():
    with pytest.raises(GradeError):
        inner(blade([1]), blade([1, 2]))


def test_norm_positive_definite():
    rng = random.Random(37)
    for _ in range(40):
        a = _random_form(rng, rng.randint(0, 7))
        assert norm_sq(a) >= 0
        assert (norm_sq(a) == 0) == a.is_zero()


def test_vector_coords_roundtrip():
    coords = [Fraction(k, 3) for k in range(-3, 4)]
    assert coords_of(vector_form(coords)) == coords


def test_m4_hodge():
    # the Hodge star of the 4-block, oriented by e4567
    assert ext.hodge_m4(blade([4, 5])) == blade([6, 7])
    assert ext.hodge_m4(blade([4, 6])) == -blade([5, 7])
    assert ext.hodge_m4(blade([4, 5, 6, 7])).grade == 0


def test_structure_constants_display():
    phi = standard_phi()
    expected = blade([1, 2, 3]) + blade([1, 4, 5]) - blade([1, 6, 7]) \
        + blade([2, 4, 6]) + blade([2, 5, 7]) + blade([3, 4, 7]) \
        - blade([3, 5, 6])
    assert phi == expected
    psi = hodge(phi)
    expected_psi = -blade([1, 2, 4, 7]) + blade([1, 2, 5, 6]) \
        + blade([1, 3, 4, 6]) + blade([1, 3, 5, 7]) - blade([2, 3, 4, 5]) \
        + blade([2, 3, 6, 7]) + blade([4, 5, 6, 7])
    assert psi == expected_psi


def test_form_json_roundtrip_random():
    rng = random.Random(41)
    for _ in range(30):
        a = _random_form(rng, rng.randint(0, 7))
        assert ext.form_from_json(ext.form_to_json(a)) == a


def test_form_json_rejects_malformed():
    with pytest.raises(FormError):
        ext.form_from_json({"grade": 2})
    with pytest.raises(FormError):
        ext.form_from_json({"grade": 2, "terms": [{"indices": [1], "coeff": {"num": "1", "den": "1"}}]})
    with pytest.raises(FormError):
        ext.form_from_json({"grade": 1, "terms": [
            {"indices": [1], "coeff": {"num": "1", "den": "1"}},
            {"indices": [1], "coeff": {"num": "2", "den": "1"}}]})
