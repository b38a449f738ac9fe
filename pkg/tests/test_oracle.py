"""Brute-force oracle: finite fields, normal forms, census consistency."""
import itertools
import random

import pytest

from asdist import (
    BudgetExceededError,
    DivisorModule,
    Place,
    conductor_series,
    counts_by_degree,
    enumerate_classes,
    irreducibles_up_to,
    normalize_rational,
    oracle_counts,
    rational_field,
    subgroup_count_poly,
    unit_group_size,
)
from asdist.oracle import (
    GF,
    ASRep,
    add_reps,
    poly_add,
    poly_mul,
    poly_neg,
    poly_trim,
    scale_rep,
)


def as_poly(gf, *ints):
    """Build a GF-polynomial from prime-field integer coefficients."""
    return poly_trim([(c % gf.p,) + (0,) * (gf.k - 1) for c in ints], gf)


def poly_pow(a, e, gf):
    result = (gf.one,)
    for _ in range(e):
        result = poly_mul(result, a, gf)
    return result


# ---------------------------------------------------------------------------
# finite field arithmetic

@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)])
def test_field_axioms_exhaustive(p, k):
    gf = GF(p, k)
    elems = list(gf.elements())
    assert len(elems) == p**k
    for a, b in itertools.product(elems, repeat=2):
        assert gf.mul(a, b) == gf.mul(b, a)
        assert gf.add(a, b) == gf.add(b, a)
    for a, b, c in itertools.product(elems[:5], repeat=3):
        assert gf.mul(a, gf.mul(b, c)) == gf.mul(gf.mul(a, b), c)
        assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))
    for a in elems:
        if a != gf.zero:
            assert gf.mul(a, gf.inv(a)) == gf.one


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (5, 1)])
def test_frobenius_and_pth_root(p, k):
    gf = GF(p, k)
    for a, b in itertools.product(gf.elements(), repeat=2):
        assert gf.pow(gf.add(a, b), p) == gf.add(gf.pow(a, p), gf.pow(b, p))
    images = {gf.pow(a, p) for a in gf.elements()}
    assert len(images) == p**k  # Frobenius is bijective
    for a in gf.elements():
        assert gf.pow(gf.pth_root(a), p) == a


def test_wp_cosets():
    gf = GF(2, 2)  # F_4: the image of y^2 - y is the prime field
    assert gf.wp_image == {gf.zero, gf.one}
    assert len(gf.coset_reps) == 2
    for a in gf.elements():
        assert gf.sub(a, gf.coset_rep(a)) in gf.wp_image


# ---------------------------------------------------------------------------
# irreducible polynomials

def test_irreducibles_q2():
    gf = GF(2, 1)
    up2 = irreducibles_up_to(gf, 2)
    assert set(up2) == {
        as_poly(gf, 0, 1), as_poly(gf, 1, 1), as_poly(gf, 1, 1, 1)
    }
    up3 = irreducibles_up_to(gf, 3)
    assert set(up3) - set(up2) == {
        as_poly(gf, 1, 1, 0, 1), as_poly(gf, 1, 0, 1, 1)
    }


def test_irreducibles_q3_linear():
    gf = GF(3, 1)
    assert set(irreducibles_up_to(gf, 1)) == {
        as_poly(gf, 0, 1), as_poly(gf, 1, 1), as_poly(gf, 2, 1)
    }


@pytest.mark.parametrize("q,p,k", [(2, 2, 1), (3, 3, 1), (4, 2, 2)])
def test_irreducible_counts_match_place_counts(q, p, k):
    gf = GF(p, k)
    model = rational_field(q, p)
    polys = irreducibles_up_to(gf, 5)
    by_degree = [sum(1 for f in polys if len(f) - 1 == d) for d in range(1, 6)]
    b = model.place_counts(5)
    assert by_degree[0] == b[0] - 1  # the infinite place is not a polynomial
    assert by_degree[1:] == b[1:]


# ---------------------------------------------------------------------------
# normal forms and conductors

def test_rep_conductor_examples():
    gf = GF(2, 1)
    one = as_poly(gf, 1)
    x = as_poly(gf, 0, 1)
    rep = normalize_rational(gf, one, x)  # 1/x
    assert rep.conductor() == DivisorModule.from_entries({Place(1, "0,1"): 2})
    rep = normalize_rational(gf, as_poly(gf, 0, 0, 0, 1), one)  # x^3
    assert rep.conductor() == DivisorModule.from_entries({Place(1, "inf"): 4})
    rep = normalize_rational(gf, one, one)  # the constant class
    assert rep.conductor() == DivisorModule.trivial()
    assert not rep.is_zero
    assert normalize_rational(gf, (), one).is_zero


def test_normalization_strips_p_divisible_indices():
    gf = GF(2, 1)
    one = as_poly(gf, 1)
    # 1/x^2 = (1/x)^2 is wp-equivalent to 1/x
    assert normalize_rational(gf, one, as_poly(gf, 0, 0, 1)) == \
        normalize_rational(gf, one, as_poly(gf, 0, 1))
    # x^4 is wp-equivalent to x (take the square root twice)
    assert normalize_rational(gf, as_poly(gf, 0, 0, 0, 0, 1), one) == \
        normalize_rational(gf, as_poly(gf, 0, 1), one)
    # x^4 + x^2 = wp(x^2) is wp-equivalent to zero
    assert normalize_rational(gf, as_poly(gf, 0, 0, 1, 0, 1), one).is_zero


def _random_poly(gf, rng, max_degree):
    degree = rng.randint(0, max_degree)
    coeffs = [
        tuple(rng.randrange(gf.p) for _ in range(gf.k))
        for _ in range(degree + 1)
    ]
    return poly_trim(coeffs, gf)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2)])
def test_normalization_invariant_under_wp_shift(p, k):
    gf = GF(p, k)
    rng = random.Random(97 + 10 * p + k)
    one = as_poly(gf, 1)
    for _ in range(25):
        num = _random_poly(gf, rng, 4)
        den = _random_poly(gf, rng, 3) or one
        g_num = _random_poly(gf, rng, 2)
        g_den = _random_poly(gf, rng, 2) or one
        # wp(g) = g^p - g = (g_num^p - g_num g_den^{p-1}) / g_den^p
        shift_num = poly_add(
            poly_pow(g_num, p, gf),
            poly_neg(poly_mul(g_num, poly_pow(g_den, p - 1, gf), gf), gf),
            gf,
        )
        shift_den = poly_pow(g_den, p, gf)
        total_num = poly_add(
            poly_mul(num, shift_den, gf), poly_mul(shift_num, den, gf), gf
        )
        total_den = poly_mul(den, shift_den, gf)
        assert normalize_rational(gf, total_num, total_den) == \
            normalize_rational(gf, num, den)


def test_normalization_idempotent_via_reconstruction():
    # normalizing the rational function rebuilt from a normal form gives
    # back the same normal form
    gf = GF(3, 1)
    x = as_poly(gf, 0, 1)
    num = as_poly(gf, 1, 2, 0, 1)
    den = poly_mul(poly_mul(x, x, gf), as_poly(gf, 1, 1), gf)
    rep = normalize_rational(gf, num, den)
    assert rep.finite  # the example genuinely has finite poles
    num_acc = poly_trim([rep.constant], gf)
    for j, c in rep.infinity:
        num_acc = poly_add(num_acc, poly_trim([gf.zero] * j + [c], gf), gf)
    den_acc = as_poly(gf, 1)
    for poly, block in rep.finite:
        for j, h in block:
            power = poly_pow(poly, j, gf)
            num_acc = poly_add(
                poly_mul(num_acc, power, gf), poly_mul(h, den_acc, gf), gf
            )
            den_acc = poly_mul(den_acc, power, gf)
    assert normalize_rational(gf, num_acc, den_acc) == rep


def test_scaling_preserves_conductor():
    gf = GF(5, 1)
    rep = normalize_rational(gf, as_poly(gf, 3, 1), as_poly(gf, 0, 2, 0, 1))
    for c in range(1, 5):
        assert scale_rep(rep, c, gf).conductor() == rep.conductor()
    assert scale_rep(rep, 0, gf).is_zero


# ---------------------------------------------------------------------------
# enumeration and the census

def test_enumerate_classes_small():
    assert len(enumerate_classes(GF(2, 1), 0)) == 1
    assert len(enumerate_classes(GF(2, 1), 2)) == 7
    assert len(enumerate_classes(GF(2, 2), 0)) == 1


def test_enumerate_classes_matches_exhaustive_rationals():
    # every class with support in {x, x+1, inf} and pole orders <= 1,
    # generated independently from raw rational functions
    gf = GF(2, 1)
    x = as_poly(gf, 0, 1)
    x1 = as_poly(gf, 1, 1)
    seen = set()
    dens = [as_poly(gf, 1), x, x1, poly_mul(x, x1, gf),
            poly_mul(x, x, gf), poly_mul(x1, x1, gf)]
    for den in dens:
        deg = len(den) - 1
        for bits in itertools.product(range(2), repeat=deg + 2):
            num = poly_trim([(b,) for b in bits], gf)
            seen.add(normalize_rational(gf, num, den))
    expected = {
        rep for rep in enumerate_classes(gf, 6)
        if all(j <= 1 for _, block in rep.finite for j, _ in block)
        and all(j <= 1 for j, _ in rep.infinity)
        and {pl.index for pl, _ in rep.conductor().entries}
        <= {"0,1", "1,1", "inf"}
    }
    assert len(expected) == 15  # c + a x + b/x + d/(x+1), not all zero
    assert seen - {ASRep(gf.zero, (), ())} == expected


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        enumerate_classes(GF(2, 1), 8, budget=10)
    with pytest.raises(BudgetExceededError):
        oracle_counts(2, 2, 2, 6, budget=100)


def test_class_count_sanity_unit_groups():
    # classes with conductor dividing m form a group of order p |U_m| at
    # genus 0, so 1 + (p-1) sum_{n | m} c_n = p |U_m|
    for q, p in [(2, 2), (3, 3)]:
        counts = oracle_counts(q, p, 1, 5)
        model = rational_field(q, p)
        for module in counts:
            if module.is_trivial:
                continue
            classes = 1 + (p - 1) * sum(
                c for m, c in counts.items()
                if all(m.multiplicity(pl) <= module.multiplicity(pl)
                       for pl, _ in m.entries)
            )
            assert classes == p * unit_group_size(model, module)


@pytest.mark.parametrize(
    "q,p,r,bound", [(2, 2, 1, 6), (3, 3, 1, 4), (2, 2, 2, 4)]
)
def test_oracle_counts_match_series(q, p, r, bound):
    model = rational_field(q, p)
    group = subgroup_count_poly(p, r)
    series = conductor_series(model, group, bound)
    got = counts_by_degree(oracle_counts(q, p, r, bound), bound)
    assert got == [int(c) for c in series.coeffs]


def test_add_and_scale_group_laws():
    gf = GF(3, 1)
    reps = enumerate_classes(gf, 2)
    zero = ASRep(gf.zero, (), ())
    for a in reps[:10]:
        assert add_reps(a, scale_rep(a, 2, gf), gf) == zero
        assert add_reps(a, zero, gf) == a
    for a, b in itertools.product(reps[:8], repeat=2):
        assert add_reps(a, b, gf) == add_reps(b, a, gf)
