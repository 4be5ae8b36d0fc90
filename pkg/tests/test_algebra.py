import pytest

from adesign.algebra import (
    AbelianGroup,
    FiniteField,
    cyclotomic_class,
    cyclotomic_indices,
    cyclotomic_matrix,
    cyclotomic_number,
    field_line,
    field_new,
    field_of_order,
    field_plane,
    order2_closed_form,
)
from adesign.errors import FieldError, GroupError

ODD_PRIME_POWERS = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49]


def test_prime_field_arithmetic():
    f = FiniteField(7)
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5
    assert f.sub(2, 6) == 3
    assert f.power(3, 6) == 1
    assert f.gamma == 3


@pytest.mark.parametrize("p, m", [(3, 2), (5, 2), (3, 3), (7, 2)])
def test_extension_field_axioms(p, m):
    f = field_new(p, m)
    q = p**m
    assert len({f.exp(k) for k in range(q - 1)}) == q - 1
    for a in range(q):
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    sample = range(0, q, max(1, q // 7))
    for a in sample:
        for b in sample:
            for c in sample:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_extension_modulus_is_monic_and_gamma_is_x():
    f = field_of_order(9)
    assert f.modulus[0] == 1 and len(f.modulus) == 3
    assert f.gamma == 3
    assert f.describe() == {"p": 3, "m": 2, "q": 9, "modulus": list(f.modulus), "gamma": 3}


def test_prime_subfield_keeps_residues_as_indices():
    f = field_of_order(25)
    for a in range(5):
        for b in range(5):
            assert f.add(a, b) == (a + b) % 5
            assert f.mul(a, b) == (a * b) % 5


def test_digits_round_trip_and_order():
    f = field_of_order(27)
    assert f.digits(5) == (0, 1, 2)
    assert all(f.from_digits(f.digits(i)) == i for i in range(27))


def test_field_elements_operators():
    f = field_of_order(9)
    x, y = f.element(4), f.element(7)
    assert (x * y) / y == x
    assert (x - y) + y == x
    assert -(-x) == x
    assert int(x**8) == 1
    with pytest.raises(FieldError):
        x + field_of_order(7).element(1)


def test_quadratic_character():
    f = field_of_order(11)
    squares = {x * x % 11 for x in range(1, 11)}
    for a in range(1, 11):
        assert f.quadratic_character(a) == (1 if a in squares else -1)
    assert f.quadratic_character(0) == 0


@pytest.mark.parametrize("q", [1, 2, 4, 6, 8, 12, 15, 16])
def test_field_of_order_rejects(q):
    with pytest.raises(FieldError):
        field_of_order(q)


def test_field_bad_inputs():
    with pytest.raises(FieldError):
        FiniteField(9)
    with pytest.raises(FieldError):
        FiniteField(3, 13)
    with pytest.raises(FieldError):
        field_of_order(7).inv(0)
    with pytest.raises(FieldError):
        field_of_order(7).log(0)
    with pytest.raises(FieldError):
        field_of_order(7).mul(7, 1)


def test_field_of_order_is_cached():
    assert field_of_order(25) is field_of_order(25)


def test_cyclotomic_classes_partition_nonzero_elements():
    f = field_of_order(13)
    classes = [cyclotomic_indices(f, 3, i) for i in range(3)]
    assert all(len(c) == 4 for c in classes)
    assert frozenset().union(*classes) == frozenset(range(1, 13))
    assert {x.index for x in cyclotomic_class(f, 3, 0)} == classes[0]


def test_cyclotomic_numbers_gf7():
    f = field_of_order(7)
    assert cyclotomic_matrix(f, 2) == [[1, 2], [1, 1]]
    assert cyclotomic_number(f, 2, 0, 1) == 2


@pytest.mark.parametrize("q", ODD_PRIME_POWERS)
def test_order2_cyclotomic_numbers_match_closed_forms(q):
    f = field_of_order(q)
    expected = order2_closed_form(q)
    for (i, j), value in expected.items():
        assert cyclotomic_number(f, 2, i, j) == value


def test_order4_cyclotomic_numbers_sum_to_class_sizes():
    f = field_of_order(13)
    matrix = cyclotomic_matrix(f, 4)
    # -1 lies in D_2 for q = 13, so only row 2 misses one element (x + 1 = 0)
    sums = [sum(row) for row in matrix]
    assert sums == [3, 3, 2, 3]


def test_cyclotomic_order_must_divide():
    with pytest.raises(FieldError):
        cyclotomic_indices(field_of_order(7), 4, 0)
    with pytest.raises(FieldError):
        cyclotomic_indices(field_of_order(7), 2, 2)


def test_abelian_group_index_matches_enumeration():
    g = AbelianGroup((3, 4, 2))
    elements = g.elements()
    assert g.order == 24 and g.exponent == 12
    assert [g.index(x) for x in elements] == list(range(24))
    assert all(g.element(i) == x for i, x in enumerate(elements))
    assert g.add((2, 3, 1), (1, 2, 1)) == (0, 1, 0)
    assert g.sub((0, 0, 0), (1, 1, 1)) == g.neg((1, 1, 1)) == (2, 3, 1)


def test_abelian_group_rejects():
    with pytest.raises(GroupError):
        AbelianGroup(())
    with pytest.raises(GroupError):
        AbelianGroup((1, 5))
    with pytest.raises(GroupError):
        AbelianGroup((3,)).check((3,))
    with pytest.raises(GroupError):
        AbelianGroup((3,)).element(3)


def test_field_plane_labels_and_points():
    f = field_of_order(9)
    plane = field_plane(f)
    assert plane.group.factors == (3, 3, 3, 3)
    assert plane.point(2, 7) == 2 * 9 + 7
    assert plane.from_group(plane.to_group(5, 8)) == (5, 8)
    assert plane.labels()[2 * 9 + 7] == "(2,7)"
    line = field_line(f)
    assert [line.point(x) for x in range(9)] == list(range(9))
    with pytest.raises(GroupError):
        plane.to_group(1)
