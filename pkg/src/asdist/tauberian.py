"""Coefficient asymptotics from poles on the circle of convergence.

Generic machinery: locate the minimal-modulus poles of a rational function,
extract their leading principal-part coefficients, and predict coefficients
and partial sums along the induced arithmetic progression.  On top of that,
closed-form asymptotic constants for the conductor counting function in the
two regimes where they are handy (p = 2, any rank; rank 1, odd p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from .counting import GroupSpec
from .dirichlet import (
    RationalFunctionT,
    holomorphic_factor_at_abscissa,
    holomorphic_factor_value,
    pole_analysis,
    zeta_factor_rational,
)
from .errors import PrecisionError, UnsupportedInputError
from .field import FieldModel
from .series import TruncatedSeries

DEFAULT_PREC_BITS = 200


@dataclass(frozen=True)
class MeromorphicModel:
    """Minimal-modulus pole data of a function holomorphic slightly beyond
    its circle of convergence except for poles on that circle."""

    radius: object  # mpf
    radius_exact: Fraction | None
    pole_order: int
    root_count: int  # poles sit among R * xi^{-j}, xi a primitive root of unity
    principal_coeffs: dict  # j in 1..root_count -> mpc (0 where no max-order pole)
    principal_exact: dict | None  # same keys, Fractions, when exactly computable
    prec_bits: int

    def nonzero_indices(self):
        return [j for j, v in self.principal_coeffs.items() if v != 0]


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Leading-term model c * X^a * log(X)^{b-1} for counts at X = growth^n."""

    exponent: Fraction | None
    log_order: int
    constant: object  # mpf
    constant_exact: Fraction | None
    progression: tuple  # (modulus l, residue e)
    growth: object  # per-step factor: X = growth^n
    log_scale: object  # log X = n * log_scale

    def value(self, n: int):
        if n < 1:
            raise ValueError("estimates are evaluated at n >= 1")
        v = self.constant * mpmath.mpf(self.growth) ** n
        if self.log_order > 1:
            v *= (n * self.log_scale) ** (self.log_order - 1)
        return v


def _cancel(f: RationalFunctionT):
    t = sympy.Symbol("t")
    num = sympy.Poly(list(reversed(f.numerator)), t)
    den = sympy.Poly(list(reversed(f.denominator)), t)
    g = sympy.gcd(num, den)
    if g.degree() > 0:
        num = sympy.div(num, g)[0]
        den = sympy.div(den, g)[0]
    return num, den, t


def _denominator_roots(den, t):
    """Exact roots with multiplicity; falls back to certified clustering of
    numeric roots when the exact solver comes up short."""
    found = sympy.roots(den, t)
    if sum(found.values()) == den.degree():
        return list(found.items())
    coeffs = [mpmath.mpf(int(c)) for c in den.all_coeffs()]
    raw = mpmath.polyroots(coeffs, maxsteps=200, extraprec=120)
    tol = mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    clusters: list = []
    for root in raw:
        for cluster in clusters:
            if abs(cluster[0] - root) < tol:
                cluster[1] += 1
                break
        else:
            clusters.append([root, 1])
    return [(c[0], c[1]) for c in clusters]


def _to_mpc(value, dps):
    return mpmath.mpc(sympy.re(sympy.N(value, dps)), sympy.im(sympy.N(value, dps)))


def _poly_derivative(coeffs, times):
    cs = list(coeffs)
    for _ in range(times):
        cs = [i * c for i, c in enumerate(cs)][1:]
        if not cs:
            cs = [0]
    return cs


def _eval_int_poly(coeffs, point):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * point + int(c)
    return acc


def principal_parts(
    f: RationalFunctionT,
    correction=None,
    prec_bits: int = DEFAULT_PREC_BITS,
    max_root_count: int = 64,
) -> MeromorphicModel:
    """Locate the minimal-modulus poles of f and compute the order-b
    principal Laurent coefficients of the maximal order b found there.

    `correction` is an optional holomorphic factor evaluated at each pole
    (used when f is known only as rational-part times point-evaluable part).
    """
    with mpmath.workprec(prec_bits):
        dps = mpmath.mp.dps
        num, den, t = _cancel(f)
        if den.degree() == 0:
            raise ValueError("input has no pole")
        roots = _denominator_roots(den, t)
        numeric = []
        for root, mult in roots:
            if isinstance(root, (mpmath.mpf, mpmath.mpc)):
                numeric.append((None, mpmath.mpc(root), mult))
            else:
                numeric.append((root, _to_mpc(root, dps), mult))
        radius = min(abs(z) for _, z, _ in numeric)
        tol = radius * mpmath.mpf(2) ** (-prec_bits // 3)
        on_circle = [item for item in numeric if abs(abs(item[1]) - radius) < tol]
        ambiguous = [
            item
            for item in numeric
            if tol <= abs(abs(item[1]) - radius) < radius * mpmath.mpf("1e-6")
        ]
        if ambiguous:
            raise PrecisionError(
                "pole moduli too close to separate at the working precision"
            )
        order = max(mult for _, _, mult in on_circle)
        angles = [mpmath.arg(z) / (2 * mpmath.pi) for _, z, _ in on_circle]
        angle_tol = mpmath.mpf(2) ** (-prec_bits // 3)
        root_count = None
        for ell in range(1, max_root_count + 1):
            if all(
                abs(a * ell - mpmath.nint(a * ell)) < angle_tol * ell for a in angles
            ):
                root_count = ell
                break
        if root_count is None:
            raise PrecisionError("pole angles are not commensurable at this precision")

        radius_exact = None
        for exact, z, _ in on_circle:
            if exact is not None and getattr(exact, "is_Rational", False):
                radius_exact = Fraction(int(exact.p), int(exact.q))
                if radius_exact < 0:
                    radius_exact = -radius_exact
                break

        num_coeffs = [int(c) for c in reversed(num.all_coeffs())]
        den_coeffs = [int(c) for c in reversed(den.all_coeffs())]
        den_deriv = _poly_derivative(den_coeffs, order)
        xi = mpmath.exp(2j * mpmath.pi / root_count)
        coeffs: dict = {}
        exact_coeffs: dict | None = {}
        for j in range(1, root_count + 1):
            u = radius * xi ** (-j)
            match = None
            for exact, z, mult in on_circle:
                if abs(z - u) < tol:
                    match = (exact, z, mult)
                    break
            if match is None or match[2] != order:
                coeffs[j] = mpmath.mpc(0)
                exact_coeffs[j] = Fraction(0)
                continue
            exact, z, _ = match
            value = (
                mpmath.factorial(order)
                * _eval_int_poly(num_coeffs, z)
                / _eval_int_poly(den_deriv, z)
            )
            if correction is not None:
                value = value * correction(z)
                exact_coeffs = None
            if (
                exact_coeffs is not None
                and exact is not None
                and getattr(exact, "is_Rational", False)
            ):
                ur = Fraction(int(exact.p), int(exact.q))
                n_val = sum(Fraction(c) * ur**i for i, c in enumerate(num_coeffs))
                d_val = sum(Fraction(c) * ur**i for i, c in enumerate(den_deriv))
                exact_coeffs[j] = math.factorial(order) * n_val / d_val
            elif exact_coeffs is not None:
                exact_coeffs = None
            coeffs[j] = value
        if all(v == 0 for v in coeffs.values()):
            raise ValueError("no pole of maximal order matched the detected lattice")
        return MeromorphicModel(
            radius, radius_exact, order, root_count, coeffs, exact_coeffs, prec_bits
        )


def _imag_guard(value, scale, prec_bits):
    tol = max(mpmath.mpf(2) ** (-prec_bits // 2) * (abs(scale) + 1), mpmath.mpf("1e-30"))
    if abs(mpmath.im(value)) > tol:
        raise PrecisionError(
            f"prediction has nonvanishing imaginary part {mpmath.im(value)}"
        )
    return mpmath.re(value)


def predict_coefficients(model: MeromorphicModel, n: int):
    """Leading-term prediction of the n-th series coefficient."""
    if n < 1:
        raise ValueError("prediction needs n >= 1")
    with mpmath.workprec(model.prec_bits):
        b = model.pole_order
        xi = mpmath.exp(2j * mpmath.pi / model.root_count)
        s = mpmath.mpc(0)
        for j, p_j in model.principal_coeffs.items():
            if p_j == 0:
                continue
            u = model.radius * xi ** (-j)
            s += (-u) ** (-b) * p_j * xi ** (j * n)
        s /= mpmath.factorial(b - 1)
        s = _imag_guard(s, s, model.prec_bits)
        return s * model.radius ** (-n) * mpmath.mpf(n) ** (b - 1)


def predict_partial_sums(model: MeromorphicModel, m: int) -> AsymptoticEstimate:
    """Leading-term model of the coefficient partial sums along the
    progression class of m."""
    if m < 1:
        raise ValueError("prediction needs m >= 1")
    with mpmath.workprec(model.prec_bits):
        b = model.pole_order
        ell = model.root_count
        xi = mpmath.exp(2j * mpmath.pi / ell)
        s = mpmath.mpc(0)
        exact_ok = model.principal_exact is not None and b == 1
        s_exact = Fraction(0)
        for j, p_j in model.principal_coeffs.items():
            u = model.radius * xi ** (-j)
            if p_j != 0:
                s += (-u) ** (-b) * p_j * xi ** (j * m) / (1 - u)
            if exact_ok:
                angle = Fraction(-j, ell) % 1
                if angle == 0:
                    u_ex = model.radius_exact
                elif angle == Fraction(1, 2):
                    u_ex = -model.radius_exact
                else:
                    exact_ok = model.principal_exact[j] == 0
                    continue
                if u_ex is None:
                    exact_ok = False
                    continue
                pj_ex = model.principal_exact[j]
                turn = Fraction(j * m, ell) % 1
                if turn == 0:
                    phase = 1
                elif turn == Fraction(1, 2):
                    phase = -1
                else:
                    exact_ok = pj_ex == 0
                    continue
                s_exact += Fraction(-1) ** b * u_ex ** (-b) * pj_ex * phase / (1 - u_ex)
        s /= mpmath.factorial(b - 1)
        s = _imag_guard(s, s, model.prec_bits)
        log_scale = mpmath.log(1 / model.radius)
        constant = s / log_scale ** (b - 1)
        constant_exact = None
        if exact_ok and model.radius_exact is not None:
            constant_exact = s_exact
        return AsymptoticEstimate(
            exponent=Fraction(1),
            log_order=b,
            constant=constant,
            constant_exact=constant_exact,
            progression=(ell, m % ell),
            growth=1 / model.radius,
            log_scale=log_scale,
        )


def binomial_sum_check(l: int, t_on_circle, m: int, prec_bits: int = DEFAULT_PREC_BITS):
    """Deviation ratio of the binomial partial-sum approximation at a point
    on the circle |t| = R < 1: should trend to 0 as m grows."""
    with mpmath.workprec(prec_bits):
        t = mpmath.mpmathify(t_on_circle)
        radius = abs(t)
        if not radius < 1:
            raise ValueError("the point must satisfy |t| < 1")
        lhs = mpmath.mpc(0)
        for n in range(m + 1):
            lhs += mpmath.binomial(n + l, l) * t ** (-n)
        main = t ** (-m) * mpmath.mpf(m) ** l / (mpmath.factorial(l) * (1 - t))
        return abs(lhs - main) / (radius ** (-m) * mpmath.mpf(m) ** l)


def closed_form_constant(
    model: FieldModel,
    group: GroupSpec,
    degree_cutoff: int = 20,
    prec_bits: int = DEFAULT_PREC_BITS,
) -> AsymptoticEstimate:
    """Closed-form asymptotic constant of the conductor counting function,
    available for p = 2 (any rank) and for rank 1 (any p)."""
    p, r = group.p, group.r
    report = pole_analysis(p, r)
    residue_factor = model.zeta_residue_factor()  # log(q) * zeta(1), exact
    e_top = group.e_coeffs[r]
    with mpmath.workprec(prec_bits):
        logq = mpmath.log(model.q)
        if p == 2:
            zeta_r1 = model.zeta_value(r + 1)
            c_exact = (
                e_top
                * residue_factor
                / ((1 - Fraction(1, model.q ** (r + 1))) * zeta_r1)
            )
            return AsymptoticEstimate(
                exponent=report.abscissa,
                log_order=1,
                constant=mpmath.mpf(c_exact.numerator) / c_exact.denominator,
                constant_exact=c_exact,
                progression=(2, 0),
                growth=mpmath.mpf(model.q)
                ** (mpmath.mpf(report.abscissa.numerator) / report.abscissa.denominator),
                log_scale=logq,
            )
        if r == 1:
            product, bound = holomorphic_factor_at_abscissa(
                model, p, r, degree_cutoff, prec_bits
            )
            rational_part = (
                e_top
                * residue_factor ** (p - 1)
                / (
                    math.factorial(p - 2)
                    * math.factorial(p)
                    * (1 - Fraction(1, model.q))
                )
            )
            constant = (
                mpmath.mpf(rational_part.numerator)
                / rational_part.denominator
                * product
                / logq ** (p - 2)
            )
            return AsymptoticEstimate(
                exponent=report.abscissa,
                log_order=p - 1,
                constant=constant,
                constant_exact=None,
                progression=(1, 0),
                growth=mpmath.mpf(model.q),
                log_scale=logq,
            )
    raise UnsupportedInputError(
        "closed-form constants exist for p = 2 or rank 1 only; use the "
        "generic principal-part extraction instead"
    )


def tauberian_constant(
    model: FieldModel,
    group: GroupSpec,
    degree_cutoff: int = 40,
    prec_bits: int = DEFAULT_PREC_BITS,
) -> AsymptoticEstimate:
    """Asymptotic constant via generic principal-part extraction from the
    exact meromorphic factor, corrected by the holomorphic factor."""
    p, r = group.p, group.r
    rational = zeta_factor_rational(model, p, r)
    e_top = group.e_coeffs[r]
    scale = mpmath.mpf(e_top.numerator) / e_top.denominator

    def correction(u):
        return scale * holomorphic_factor_value(
            model, p, r, u, degree_cutoff, prec_bits
        )

    pole_model = principal_parts(rational, correction=correction, prec_bits=prec_bits)
    return predict_partial_sums(pole_model, pole_model.root_count)


def empirical_ratio(series: TruncatedSeries, estimate: AsymptoticEstimate, n: int):
    """(partial sum at n) / (predicted value at n), for convergence checks
    along the progression."""
    ell, e = estimate.progression
    if n % ell != e % ell:
        raise ValueError(f"index {n} is off the progression {e} mod {ell}")
    partial = series.partial_sum(n)
    with mpmath.workprec(max(getattr(estimate.constant, "context", mpmath.mp).prec, 64)):
        numer = mpmath.mpf(partial.numerator) / partial.denominator
        return numer / estimate.value(n)
