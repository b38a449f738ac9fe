"""Field models: validation, place counts, zeta series, residues."""
import itertools
from fractions import Fraction

import pytest

from asdist import (
    ModelError,
    TruncatedSeries,
    make_field_model,
    rational_field,
)
from asdist.field import load_model_file, mobius

ELLIPTIC_A = dict(p=2, q=2, genus=1, l_poly=[1, 0, 2], clp_order=1)
ELLIPTIC_B = dict(p=2, q=2, genus=1, l_poly=[1, -1, 2], clp_order=2)


def test_rational_field_basics():
    m = rational_field(2)
    assert (m.p, m.q, m.genus, m.l_poly, m.clp_order) == (2, 2, 0, (1,), 1)
    assert m.class_number == 1


def test_elliptic_models_from_brute_force_point_counts():
    # y^2 + y = x^3 over F_2: affine solutions plus the point at infinity
    count_a = 1 + sum(
        1 for x in range(2) for y in range(2) if (y * y + y) % 2 == (x**3) % 2
    )
    assert count_a == 3
    a = make_field_model(**ELLIPTIC_A)
    assert a.point_counts(1)[1] == count_a
    assert a.class_number == 3

    # y^2 + xy = x^3 + x^2 + 1 over F_2
    count_b = 1 + sum(
        1
        for x in range(2)
        for y in range(2)
        if (y * y + x * y) % 2 == (x**3 + x**2 + 1) % 2
    )
    assert count_b == 2
    b = make_field_model(**ELLIPTIC_B)
    assert b.point_counts(1)[1] == count_b
    assert b.class_number == 2


def _monic_irreducible_count(q, d):
    """Gauss' formula, an independent oracle for b_d at genus 0 (d >= 2)."""
    return sum(mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_genus0_place_counts_match_irreducible_counts(q):
    m = rational_field(q)
    b = m.place_counts(5)
    assert b[0] == q + 1  # monic linears plus the infinite place
    for d in range(2, 6):
        assert b[d - 1] == _monic_irreducible_count(q, d)


def test_place_counts_q2_explicit():
    assert rational_field(2).place_counts(3) == [3, 1, 2]


def test_elliptic_place_count_degree1():
    assert make_field_model(**ELLIPTIC_A).place_counts(1) == [3]


def test_zeta_series_rational_q2():
    z = rational_field(2).zeta_series(3)
    assert [int(c) for c in z.coeffs] == [1, 3, 7, 15]


def test_zeta_series_order0():
    assert rational_field(5).zeta_series(0) == TruncatedSeries.one(0)


def test_zeta_series_elliptic():
    z = make_field_model(**ELLIPTIC_A).zeta_series(2)
    assert [int(c) for c in z.coeffs] == [1, 3, 9]


@pytest.mark.parametrize(
    "model",
    [rational_field(2), rational_field(3),
     make_field_model(**ELLIPTIC_A), make_field_model(**ELLIPTIC_B),
     make_field_model(2, 2, 2, [1, -2, 4, -4, 4])],
    ids=["q2", "q3", "elliptic-a", "elliptic-b", "genus2"],
)
def test_zeta_equals_euler_product(model):
    order = 12
    product = TruncatedSeries.one(order)
    for d, b_d in enumerate(model.place_counts(order), start=1):
        factor = 1 - TruncatedSeries.monomial(1, d, order)
        product = product.mul(factor.pow(-b_d))
    assert product == model.zeta_series(order)
    assert all(c.denominator == 1 and c >= 0 for c in product.coeffs)


def test_zeta_residue_factor():
    assert rational_field(2).zeta_residue_factor() == 2
    for q in (3, 4, 5, 9):
        assert rational_field(q).zeta_residue_factor() == Fraction(q, q - 1)
    assert make_field_model(**ELLIPTIC_A).zeta_residue_factor() == 3


def test_zeta_value_exact():
    m = rational_field(2)
    # zeta(2) = 1/((1-1/4)(1-1/2)) = 8/3
    assert m.zeta_value(2) == Fraction(8, 3)
    assert m.zeta_value(3) == Fraction(32, 21)
    with pytest.raises(ValueError):
        m.zeta_value(1)


def test_validation_errors():
    with pytest.raises(ModelError):
        make_field_model(4, 4, 0)  # p not prime
    with pytest.raises(ModelError):
        make_field_model(2, 6, 0)  # q not a power of p
    with pytest.raises(ModelError):
        make_field_model(2, 2, 1, [1, 0, 3])  # functional equation fails
    with pytest.raises(ModelError):
        make_field_model(2, 2, 0, [1, 1, 2])  # genus 0 forces L = 1
    with pytest.raises(ModelError):
        make_field_model(2, 2, 0, clp_order=2)  # genus 0 forces trivial Cl
    with pytest.raises(ModelError):
        make_field_model(2, 2, 1, [1, 0, 2], clp_order=3)  # not a 2-power
    with pytest.raises(ModelError):
        # satisfies the functional equation but yields b_1 = -1
        make_field_model(2, 2, 1, [1, -4, 2])


def test_model_file_roundtrip(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text(
        "# an elliptic model\np = 2\nq = 2\ngenus = 1\n"
        "l_poly = 1,-1,2\nclp_order = 2\n"
    )
    m = load_model_file(str(path))
    assert m == make_field_model(**ELLIPTIC_B)
    bad = tmp_path / "bad.txt"
    bad.write_text("p: 2\n")
    with pytest.raises(ModelError):
        load_model_file(str(bad))
