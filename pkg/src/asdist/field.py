"""Global function fields modelled by their numerical invariants.

A field is described by (p, q, genus, L-polynomial, |Cl[p]|); everything the
counting formulas need (place counts per degree, the zeta series, the residue
of the zeta function) is derived from that data.  No curve arithmetic happens
here.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import ModelError
from .series import TruncatedSeries, geometric

VALIDATION_DEPTH = 12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _prime_power_exponent(q: int, p: int) -> int | None:
    k, m = 0, q
    while m > 1 and m % p == 0:
        m //= p
        k += 1
    return k if m == 1 and k >= 1 else None


@dataclass(frozen=True)
class FieldModel:
    p: int
    q: int
    genus: int
    l_poly: tuple  # integer coefficients, ascending degree, length 2*genus + 1
    clp_order: int
    exceptional_counts: Optional[frozenset] = None  # {(DivisorModule, count)}

    @property
    def class_number(self) -> int:
        return sum(self.l_poly)

    def inverse_root_power_sums(self, depth: int) -> list:
        """Power sums of the inverse zeros of the L-polynomial (Newton)."""
        a = self.l_poly
        deg = len(a) - 1
        s = [0] * (depth + 1)
        for k in range(1, depth + 1):
            acc = k * a[k] if k <= deg else 0
            for j in range(1, min(k, deg + 1)):
                acc += a[j] * s[k - j]
            s[k] = -acc
        return s

    def point_counts(self, depth: int) -> list:
        """N_d = number of rational points over the degree-d constant extension."""
        s = self.inverse_root_power_sums(depth)
        return [None] + [self.q**d + 1 - s[d] for d in range(1, depth + 1)]

    def place_counts(self, depth: int) -> list:
        """b_d = number of places of degree d, for d = 1..depth."""
        n = self.point_counts(depth)
        b = []
        for d in range(1, depth + 1):
            total = sum(mobius(e) * n[d // e] for e in range(1, d + 1) if d % e == 0)
            if total % d != 0 or total < 0:
                raise ModelError(
                    f"inconsistent L-polynomial: place count b_{d} = {total}/{d}"
                )
            b.append(total // d)
        return b

    def l_series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.l_poly, order)

    def zeta_series(self, order: int) -> TruncatedSeries:
        """Expansion of L(t) / ((1 - t)(1 - q t)) to the given order."""
        return (
            self.l_series(order)
            .mul(geometric(1, order))
            .mul(geometric(self.q, order))
        )

    def zeta_value(self, k: int) -> Fraction:
        """Exact value of the zeta function at the integer argument k >= 2,
        i.e. the zeta series evaluated at t = q^{-k}."""
        if k < 2:
            raise ValueError("exact zeta values are only defined for k >= 2")
        x = Fraction(1, self.q**k)
        num = sum(Fraction(c) * x**i for i, c in enumerate(self.l_poly))
        return num / ((1 - x) * (1 - self.q * x))

    def zeta_residue_factor(self) -> Fraction:
        """L(1/q) / (1 - 1/q), the residue of the zeta function at s = 1
        multiplied by log(q); exact rational."""
        x = Fraction(1, self.q)
        num = sum(Fraction(c) * x**i for i, c in enumerate(self.l_poly))
        return num / (1 - x)

    def exceptional_count_map(self) -> dict:
        return dict(self.exceptional_counts) if self.exceptional_counts else {}

    def describe(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "genus": self.genus,
            "l_poly": list(self.l_poly),
            "clp_order": self.clp_order,
            "class_number": self.class_number,
        }


def make_field_model(
    p: int,
    q: int,
    genus: int,
    l_poly: Sequence[int] | None = None,
    clp_order: int = 1,
    exceptional_counts: Mapping | None = None,
) -> FieldModel:
    """Validate invariants and build a FieldModel.

    Checks: q is a power of the prime p, the L-polynomial satisfies the
    functional equation, derived place counts are nonnegative integers, and
    |Cl[p]| is a p-power.  Genus 0 forces L = 1 and trivial class group.
    """
    if not is_prime(p):
        raise ModelError(f"{p} is not prime")
    if _prime_power_exponent(q, p) is None:
        raise ModelError(f"q = {q} is not a power of p = {p}")
    if genus < 0:
        raise ModelError("genus must be nonnegative")
    if genus == 0:
        if l_poly is not None and list(l_poly) != [1]:
            raise ModelError("genus 0 forces the L-polynomial to be 1")
        if clp_order != 1:
            raise ModelError("genus 0 forces a trivial class group")
        l_poly = [1]
    if l_poly is None:
        raise ModelError("an L-polynomial is required for genus >= 1")
    coeffs = [int(c) for c in l_poly]
    if len(coeffs) != 2 * genus + 1:
        raise ModelError(
            f"L-polynomial must have degree {2 * genus} for genus {genus}"
        )
    if coeffs[0] != 1:
        raise ModelError("L-polynomial must have constant term 1")
    for i in range(2 * genus + 1):
        if coeffs[2 * genus - i] * q**i != coeffs[i] * q**genus:
            raise ModelError("L-polynomial violates the functional equation")
    if clp_order < 1 or _prime_power_exponent(clp_order, p) is None and clp_order != 1:
        raise ModelError("clp_order must be a power of p (including 1)")
    if sum(coeffs) < 1:
        raise ModelError("class number L(1) must be positive")
    exc = None
    if exceptional_counts is not None:
        exc = frozenset((m, int(c)) for m, c in dict(exceptional_counts).items())
    model = FieldModel(p, q, genus, tuple(coeffs), clp_order, exc)
    model.place_counts(max(VALIDATION_DEPTH, 2 * genus + 2))
    return model


def rational_field(q: int, p: int | None = None) -> FieldModel:
    """The rational function field over F_q."""
    if p is None:
        p = min(d for d in range(2, q + 1) if q % d == 0)
    return make_field_model(p, q, 0)


def load_model_file(path: str) -> FieldModel:
    """Read a model from a line-based key=value file.

    Keys: p, q, genus, l_poly (comma-separated integers, ascending degree),
    clp_order.  Blank lines and lines starting with '#' are skipped.
    """
    data: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ModelError(f"malformed model line: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            data[key] = value
    try:
        p = int(data["p"])
        q = int(data["q"])
        genus = int(data["genus"])
    except KeyError as exc:
        raise ModelError(f"model file misses key {exc}") from exc
    l_poly = None
    if "l_poly" in data:
        l_poly = [int(x) for x in data["l_poly"].split(",")]
    clp_order = int(data.get("clp_order", "1"))
    return make_field_model(p, q, genus, l_poly, clp_order)
