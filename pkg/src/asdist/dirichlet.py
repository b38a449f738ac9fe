"""Assembly of the conductor generating series and its zeta factorization.

All Dirichlet series live as truncated power series in t = q^{-s}; the
meromorphic zeta factor is kept as an exact rational function in t so its
poles are available exactly.  A term N^{u - v s} of a prime of degree d
contributes q^{d u} t^{d v}; `prime_term` owns that mapping.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import mpmath

from .counting import GroupSpec, exceptional_modules, product_count, wild_exponent
from .errors import ConsistencyError, ModelError, PrecisionError, UnsupportedInputError
from .field import FieldModel
from .series import TruncatedSeries, geometric


def prime_term(q: int, d: int, u: int, v: int) -> tuple:
    """(t-power, integer coefficient) of N^{u} N^{-v s} for N = q^d."""
    return d * v, q ** (d * u)


# ---------------------------------------------------------------------------
# integer polynomials in t (ascending coefficients)

def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def poly_subst(a, scale: int, power: int):
    """a(scale * t^power) as an integer polynomial."""
    out = [0] * ((len(a) - 1) * power + 1)
    acc = 1
    for i, c in enumerate(a):
        out[i * power] = c * acc
        acc *= scale
    return out


def _poly_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


@dataclass(frozen=True)
class RationalFunctionT:
    """Quotient of integer polynomials in t, reduced by integer content."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        num = _poly_trim(list(self.numerator))
        den = _poly_trim(list(self.denominator))
        if den[0] == 0:
            raise ValueError("denominator must have nonzero constant term")
        content = 0
        for c in num + den:
            content = gcd(content, c)
        if content > 1:
            num = [c // content for c in num]
            den = [c // content for c in den]
        if den[0] < 0:
            num = [-c for c in num]
            den = [-c for c in den]
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "denominator", tuple(den))

    def times(self, other: "RationalFunctionT") -> "RationalFunctionT":
        return RationalFunctionT(
            tuple(poly_mul(list(self.numerator), list(other.numerator))),
            tuple(poly_mul(list(self.denominator), list(other.denominator))),
        )

    def series(self, order: int) -> TruncatedSeries:
        num = TruncatedSeries.from_coeffs(self.numerator, order)
        den = TruncatedSeries.from_coeffs(self.denominator, order)
        return num.mul(den.inv())

    def inverse_series(self, order: int) -> TruncatedSeries:
        den = TruncatedSeries.from_coeffs(self.denominator, order)
        num = TruncatedSeries.from_coeffs(self.numerator, order)
        return den.mul(num.inv())

    def evaluate(self, point):
        num = mpmath.polyval(list(reversed(self.numerator)), point)
        den = mpmath.polyval(list(reversed(self.denominator)), point)
        return num / den


# ---------------------------------------------------------------------------
# Euler products

def _euler_factor_component(q: int, d: int, i: int, p: int, order: int) -> TruncatedSeries:
    """Per-prime factor 1 + (N^i - 1) sum_{p not | n} N^{i r_n - (n+1) s}."""
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    n_i = q ** (d * i)
    n = 1
    while d * (n + 1) <= order:
        if n % p != 0:
            power, coeff = prime_term(q, d, i * wild_exponent(n, p), n + 1)
            coeffs[power] += Fraction((n_i - 1) * coeff)
        n += 1
    return TruncatedSeries(tuple(coeffs))


def euler_component_series(
    model: FieldModel, group: GroupSpec, i: int, order: int
) -> TruncatedSeries:
    """The i-th Euler product component of the conductor series (1 <= i <= r)."""
    if not 1 <= i <= group.r:
        raise ModelError(f"component index {i} out of range 1..{group.r}")
    counts = model.place_counts(order) if order >= 1 else []
    result = TruncatedSeries.one(order)
    for d in range(1, order + 1):
        b_d = counts[d - 1]
        if b_d == 0 or 2 * d > order:
            continue
        factor = _euler_factor_component(model.q, d, i, model.p, order)
        result = result.mul(factor.pow(b_d))
    return result


def error_term_series(model: FieldModel, group: GroupSpec, order: int) -> TruncatedSeries:
    """Rational error term of the decomposition: the part of the series the
    Euler components miss, driven by the finitely many exceptional modules."""
    c1 = group.quotient_count(model.clp_order)
    # the trivial module contributes c_1 - sum_i e_i directly; the Moebius
    # sum below re-adds its c~ term, so the standalone constant reduces to e_0
    const = group.e_coeffs[0]
    # restricted product over primes of degree > 2g-2 of (1 - N^{-2s})
    # = zeta(2s)^{-1} corrected by the finitely many small-degree primes
    inv_zeta_2s = model.zeta_series(order).inv().subst_monomial(1, 2)
    correction = TruncatedSeries.one(order)
    threshold = 2 * model.genus - 2
    if threshold >= 1:
        counts = model.place_counts(threshold)
        for d in range(1, threshold + 1):
            if 2 * d > order:
                break
            factor = TruncatedSeries.monomial(-1, 2 * d, order) + 1
            correction = correction.mul(factor.pow(-counts[d - 1]))
    restricted = inv_zeta_2s.mul(correction)
    poly = TruncatedSeries.zero(order)
    counts_map = model.exceptional_count_map()
    for module in sorted(exceptional_modules(model), key=lambda m: (m.degree, repr(m))):
        if module.is_trivial:
            c_tilde = c1 - sum(group.e_coeffs, Fraction(0))
        else:
            if module not in counts_map:
                raise UnsupportedInputError(
                    f"missing exceptional conductor count for {module}"
                )
            c_tilde = Fraction(counts_map[module]) - product_count(model, group, module)
        if module.degree <= order:
            poly = poly + TruncatedSeries.monomial(c_tilde, module.degree, order)
    return const + poly.mul(restricted)


def conductor_series(model: FieldModel, group: GroupSpec, order: int) -> TruncatedSeries:
    """Full generating series of conductor counts; coefficients are checked
    to be nonnegative integers."""
    if group.p != model.p:
        raise ModelError("group exponent must equal the field characteristic")
    total = error_term_series(model, group, order)
    for i in range(1, group.r + 1):
        total = total + euler_component_series(model, group, i, order).scale(
            group.e_coeffs[i]
        )
    for n, c in enumerate(total.coeffs):
        if c.denominator != 1 or c < 0:
            raise ConsistencyError(
                f"conductor series coefficient of t^{n} is {c}, expected a "
                "nonnegative integer"
            )
    return total


def zeta_factor_rational(model: FieldModel, p: int, r: int) -> RationalFunctionT:
    """The meromorphic factor prod_{l=2}^p zeta(l s - (l-1) r) as an exact
    rational function in t."""
    num = [1]
    den = [1]
    for l in range(2, p + 1):
        c = model.q ** ((l - 1) * r)
        num = poly_mul(num, poly_subst(list(model.l_poly), c, l))
        den = poly_mul(den, [1] + [0] * (l - 1) + [-c])
        den = poly_mul(den, [1] + [0] * (l - 1) + [-c * model.q])
    return RationalFunctionT(tuple(num), tuple(den))


def _holomorphic_factor_terms(q: int, d: int, p: int, r: int):
    """Exact t-monomials of the two parts of the per-prime holomorphic factor."""
    plus = [(0, 1)]
    for l in range(0, p - 1):
        plus.append(prime_term(q, d, l * r, l + 1))
    minus = []
    for l in range(0, p - 1):
        minus.append(prime_term(q, d, l * r, l + 1))
    return plus, minus


def holomorphic_factor_series(
    model: FieldModel, p: int, r: int, order: int
) -> TruncatedSeries:
    """Truncated series of the holomorphic factor of the factorization."""
    counts = model.place_counts(order) if order >= 1 else []
    result = TruncatedSeries.one(order)
    for d in range(1, order + 1):
        if d > order:
            break
        b_d = counts[d - 1]
        if b_d == 0:
            continue
        plus, minus = _holomorphic_factor_terms(model.q, d, p, r)
        factor = TruncatedSeries.zero(order)
        for power, coeff in plus:
            if power <= order:
                factor = factor + TruncatedSeries.monomial(coeff, power, order)
        for power, coeff in minus:
            factor = factor.mul(1 - TruncatedSeries.monomial(coeff, power, order))
        if factor == TruncatedSeries.one(order):
            continue
        result = result.mul(factor.pow(b_d))
    return result


def holomorphic_factor_value(
    model: FieldModel, p: int, r: int, point, degree_cutoff: int, prec_bits: int = 200
):
    """Numeric value of the holomorphic factor at a point inside its region
    of convergence, via the Euler product over primes of degree <= cutoff."""
    with mpmath.workprec(prec_bits):
        z = mpmath.mpmathify(point)
        counts = model.place_counts(degree_cutoff)
        total = mpmath.mpf(1)
        for d in range(1, degree_cutoff + 1):
            b_d = counts[d - 1]
            if b_d == 0:
                continue
            plus, minus = _holomorphic_factor_terms(model.q, d, p, r)
            factor = mpmath.mpf(0)
            for power, coeff in plus:
                factor += coeff * z**power
            for power, coeff in minus:
                factor *= 1 - coeff * z**power
            total *= factor**b_d
        return total


def holomorphic_factor_at_abscissa(
    model: FieldModel, p: int, r: int, degree_cutoff: int, prec_bits: int = 200
):
    """Value of the holomorphic factor at the convergence abscissa with a
    rigorous tail bound; returns (value, bound)."""
    if degree_cutoff < 1:
        raise ValueError("degree cutoff must be >= 1")
    with mpmath.workprec(prec_bits):
        q = mpmath.mpf(model.q)
        counts = model.place_counts(degree_cutoff)
        total = mpmath.mpf(1)
        for d in range(1, degree_cutoff + 1):
            b_d = counts[d - 1]
            if b_d == 0:
                continue
            n = q**d
            # factor at the abscissa: (1 + N^{-r} sum_{l=1}^{p-1} N^{l(r-1)/p})
            #                         * prod_{l=1}^{p-1} (1 - N^{-r} N^{l(r-1)/p})
            powers = [n ** (mpmath.mpf(l * (r - 1)) / p) for l in range(1, p)]
            factor = 1 + n ** (-r) * mpmath.fsum(powers)
            for w in powers:
                factor *= 1 - n ** (-r) * w
            total *= factor**b_d
        # tail: per-prime deviation is O(N^{-tau}) with tau = 2(r+p-1)/p > 1
        tau = mpmath.mpf(2 * (r + p - 1)) / p
        if tau <= 1:
            raise PrecisionError("tail bound does not converge")
        per_factor = (p - 1) ** 2 + 2 ** (p - 1) + p
        place_bound = 2 + 2 * model.genus
        ratio = q ** (1 - tau)
        tail_log = (
            2 * per_factor * place_bound * ratio ** (degree_cutoff + 1) / (1 - ratio)
        )
        bound = abs(total) * (mpmath.exp(tail_log) - 1)
        return total, bound


def euler_factor_closed_form_check(
    q: int, d: int, p: int, r: int, order: int
) -> bool:
    """Check that the direct sum form of the top Euler factor equals its
    closed meromorphic form as truncated series."""
    direct = _euler_factor_component(q, d, r, p, order)
    power, coeff = prime_term(q, d, (p - 1) * r, p)
    closed = (1 - TruncatedSeries.monomial(coeff, power, order)).inv()
    plus = TruncatedSeries.one(order)
    for l in range(0, p - 1):
        pw, cf = prime_term(q, d, l * r, l + 1)
        plus = plus + TruncatedSeries.monomial(cf, pw, order)
    closed = closed.mul(plus)
    closed = closed.mul(1 - TruncatedSeries.monomial(1, d, order))
    return direct == closed


# ---------------------------------------------------------------------------
# pole data and derived views

@dataclass(frozen=True)
class PoleReport:
    """Location data of the poles on the axis of convergence."""

    abscissa: Fraction
    log_order: int
    progression: int  # number of equally spaced poles on the circle
    pole_angles: tuple  # fractions of a full turn
    max_order_angles: tuple

    @property
    def radius_exponent(self) -> Fraction:
        """R = q^{-radius_exponent} is the circle of convergence."""
        return self.abscissa


def pole_analysis(p: int, r: int) -> PoleReport:
    abscissa = Fraction(1 + (p - 1) * r, p)
    if r == 1:
        order = p - 1
        ell = lcm(*range(2, p + 1)) if p > 2 else 2
    else:
        order = 1
        ell = p
    angles = tuple(Fraction(j, ell) for j in range(ell))
    return PoleReport(abscissa, order, ell, angles, (Fraction(0),))


def counting_function(model: FieldModel, group: GroupSpec, up_to_degree: int) -> list:
    """Partial sums of the conductor series: counts of extensions with
    conductor degree <= n, for n = 0..up_to_degree."""
    series = conductor_series(model, group, up_to_degree)
    out, acc = [], 0
    for c in series.coeffs:
        acc += int(c)
        out.append(acc)
    return out


@dataclass(frozen=True)
class DiscriminantView:
    """Discriminant-count exponents (and exact table for rank 1)."""

    p: int
    r: int
    lower_exponent: Fraction  # conductor-derived X-exponent lower bound
    upper_exponent: Fraction
    malle_exponent: Fraction
    comparison: str  # 'equal' or 'greater' vs the tame prediction
    z_table: tuple | None  # Z(q^n) for n = 0..bound, exact only for r = 1


def exponent_comparison(p: int, r: int) -> tuple:
    """(lower exponent, tame Malle exponent, comparison sign)."""
    a_lower = Fraction(1 + (p - 1) * r, p * (p**r - 1))
    a_malle = Fraction(p, (p**r) * (p - 1))
    numerator = ((r - 1) * (p - 1) ** 2 - p) * p ** (r - 1) + p
    if numerator < 0:
        raise ConsistencyError("exponent comparison numerator must be nonnegative")
    sign = "equal" if numerator == 0 else "greater"
    if (a_lower == a_malle) != (sign == "equal"):
        raise ConsistencyError("exponent comparison disagrees with direct fractions")
    return a_lower, a_malle, sign


def discriminant_view(
    model: FieldModel, group: GroupSpec, up_to_degree: int
) -> DiscriminantView:
    p, r = group.p, group.r
    a_lower, a_malle, sign = exponent_comparison(p, r)
    d_upper = Fraction(1 + (p - 1) * r, p * (p**r - p ** (r - 1)))
    z_table = None
    if r == 1:
        # discriminant degree is (p-1) times the conductor degree
        cond = counting_function(model, group, up_to_degree // (p - 1))
        z_table = tuple(cond[n // (p - 1)] for n in range(up_to_degree + 1))
    return DiscriminantView(p, r, a_lower, d_upper, a_malle, sign, z_table)
