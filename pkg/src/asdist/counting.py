"""Per-conductor counting of elementary abelian p-extensions.

Contains the subgroup-counting polynomial of the target group, the wild
ramification exponents, the Selmer triviality criterion, the finite
exceptional module set, and the count of extensions with a given conductor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import ConsistencyError, ModelError, UnsupportedInputError
from .field import FieldModel, is_prime


@dataclass(frozen=True, order=True)
class Place:
    """An abstract prime: only its degree enters any formula.  The index
    distinguishes the b_d places of equal degree (oracle code uses a
    polynomial string as index)."""

    degree: int
    index: str = "0"

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("place degree must be positive")
        if not isinstance(self.index, str):
            object.__setattr__(self, "index", str(self.index))


@dataclass(frozen=True)
class DivisorModule:
    """An effective divisor given as places with multiplicities >= 1."""

    entries: tuple  # sorted ((Place, multiplicity), ...)

    @staticmethod
    def from_entries(entries: Mapping[Place, int] | Iterable) -> "DivisorModule":
        items = dict(entries)
        for place, mult in items.items():
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
        return DivisorModule(tuple(sorted(items.items())))

    @staticmethod
    def trivial() -> "DivisorModule":
        return DivisorModule(())

    @property
    def degree(self) -> int:
        return sum(place.degree * mult for place, mult in self.entries)

    @property
    def is_trivial(self) -> bool:
        return not self.entries

    def multiplicity(self, place: Place) -> int:
        for other, mult in self.entries:
            if other == place:
                return mult
        return 0

    def support(self) -> tuple:
        return tuple(place for place, _ in self.entries)

    def is_squareful(self) -> bool:
        return all(mult >= 2 for _, mult in self.entries)

    def is_squarefree(self) -> bool:
        return all(mult == 1 for _, mult in self.entries)

    def mobius(self) -> int:
        if not self.is_squarefree():
            return 0
        return (-1) ** len(self.entries)

    def restrict(self, keep) -> "DivisorModule":
        return DivisorModule(
            tuple((p, m) for p, m in self.entries if keep(p, m))
        )

    def divisors(self) -> Iterator["DivisorModule"]:
        """All effective divisors dividing this module (including 1 and itself)."""
        places = [p for p, _ in self.entries]
        ranges = [range(m + 1) for _, m in self.entries]
        for mults in itertools.product(*ranges):
            yield DivisorModule(
                tuple((p, m) for p, m in zip(places, mults) if m > 0)
            )

    def __repr__(self):
        if not self.entries:
            return "DivisorModule(1)"
        parts = "*".join(
            f"P({p.degree},{p.index})^{m}" if m > 1 else f"P({p.degree},{p.index})"
            for p, m in self.entries
        )
        return f"DivisorModule({parts})"


@dataclass(frozen=True)
class GroupSpec:
    """The target group C_p^r with its derived subgroup-counting data."""

    p: int
    r: int
    e_coeffs: tuple  # Fractions e_0..e_r

    @property
    def group_order(self) -> int:
        return self.p**self.r

    @property
    def aut_order(self) -> int:
        n = self.group_order
        result = 1
        for i in range(self.r):
            result *= n - self.p**i
        return result

    def quotient_count(self, x) -> Fraction:
        """e(x): number of subgroups U of an elementary abelian group A with
        |A| = p*x such that A/U is isomorphic to C_p^r."""
        acc = Fraction(0)
        xp = Fraction(1)
        for c in self.e_coeffs:
            acc += c * xp
            xp *= x
        return acc


def subgroup_count_poly(p: int, r: int) -> GroupSpec:
    """Expand e(X) = prod_{i<r} (pX - p^i)/(p^r - p^i) into coefficients."""
    if not is_prime(p):
        raise ModelError(f"{p} is not prime")
    if r < 1:
        raise ModelError("rank must be >= 1")
    coeffs = [Fraction(1)]
    for i in range(r):
        denom = p**r - p**i
        new = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j + 1] += c * Fraction(p, denom)
            new[j] -= c * Fraction(p**i, denom)
        coeffs = new
    return GroupSpec(p, r, tuple(coeffs))


def wild_exponent(m: int, p: int) -> int:
    """r_m = m - 1 - floor((m-1)/p) for m >= 1, and r_0 = 0; the p-rank per
    unit residue degree of the local unit filtration quotient."""
    if m < 0:
        raise ValueError("exponent index must be nonnegative")
    if m == 0:
        return 0
    return m - 1 - (m - 1) // p


def unit_group_size(model: FieldModel, module: DivisorModule) -> int:
    """|U_m| = prod over p^m || m of N(p)^{r_m}."""
    size = 1
    for place, mult in module.entries:
        size *= model.q ** (place.degree * wild_exponent(mult, model.p))
    return size


def selmer_trivial(model: FieldModel, module: DivisorModule) -> bool:
    """Sufficient criterion for triviality of the Selmer ray group: the
    square part of the module is large against the genus.  A False return
    makes no claim of nontriviality."""
    weight = sum((mult - 1) * place.degree for place, mult in module.entries)
    return weight > 2 * model.genus - 2


def exceptional_modules(model: FieldModel) -> frozenset:
    """The finite set M: the trivial module plus, for genus >= 2, all
    squareful modules supported on primes of degree <= 2g-2 with
    multiplicities <= 2g."""
    trivial = DivisorModule.trivial()
    if model.genus <= 1:
        return frozenset({trivial})
    max_degree = 2 * model.genus - 2
    max_mult = 2 * model.genus
    counts = model.place_counts(max_degree)
    places = [
        Place(d, str(j))
        for d in range(1, max_degree + 1)
        for j in range(counts[d - 1])
    ]
    result = {trivial}
    options = [range(0, max_mult + 1) for _ in places]
    for mults in itertools.product(*options):
        if not any(mults):
            continue
        if any(m == 1 for m in mults):
            continue
        result.add(
            DivisorModule(
                tuple((p, m) for p, m in zip(places, mults) if m > 0)
            )
        )
    return frozenset(result)


def product_count(model: FieldModel, group: GroupSpec, module: DivisorModule) -> Fraction:
    """The multiplicative (Selmer-free) count
    sum_i e_i prod_{p^m || m} (N^{i r_m} - N^{i r_{m-1}})."""
    total = Fraction(0)
    for i in range(1, group.r + 1):
        term = group.e_coeffs[i]
        for place, mult in module.entries:
            n = model.q**place.degree
            term *= n ** (i * wild_exponent(mult, model.p)) - n ** (
                i * wild_exponent(mult - 1, model.p)
            )
        total += term
    return total


def _as_nonneg_int(value: Fraction, context: str) -> int:
    if value.denominator != 1 or value < 0:
        raise ConsistencyError(f"{context} produced a bad count {value}")
    return int(value)


def conductor_count(model: FieldModel, group: GroupSpec, module: DivisorModule) -> int:
    """Number of C_p^r-extensions with the given conductor."""
    if group.p != model.p:
        raise ModelError("group exponent must equal the field characteristic")
    if module.is_trivial:
        return _as_nonneg_int(
            group.quotient_count(model.clp_order), "trivial conductor"
        )
    threshold = 2 * model.genus - 2
    small = module.restrict(lambda p, m: p.degree <= threshold)
    large = module.restrict(lambda p, m: p.degree > threshold)
    exceptional = exceptional_modules(model)
    if small in exceptional and all(m == 2 for _, m in large.entries):
        # m = m0 * m1^2 with m0 in the exceptional set, m1 squarefree on
        # large-degree primes.
        m1 = DivisorModule(tuple((p, 1) for p, _ in large.entries))
        if small.is_trivial:
            c_tilde = group.quotient_count(model.clp_order) - sum(
                group.e_coeffs, Fraction(0)
            )
        else:
            counts = model.exceptional_count_map()
            if small not in counts:
                raise UnsupportedInputError(
                    f"missing exceptional conductor count for {small}"
                )
            c_tilde = Fraction(counts[small]) - product_count(model, group, small)
        value = m1.mobius() * c_tilde + product_count(model, group, module)
        return _as_nonneg_int(value, f"conductor {module}")
    return _as_nonneg_int(
        product_count(model, group, module), f"conductor {module}"
    )


def abstract_places(model: FieldModel, max_degree: int) -> list:
    """Places as abstract (degree, index) pairs, for module enumeration."""
    counts = model.place_counts(max_degree)
    return [
        Place(d, str(j))
        for d in range(1, max_degree + 1)
        for j in range(counts[d - 1])
    ]


def modules_up_to_degree(model: FieldModel, max_degree: int) -> Iterator[DivisorModule]:
    """All abstract modules of degree <= max_degree (including the trivial one)."""
    places = abstract_places(model, max_degree)

    def walk(idx: int, budget: int, chosen: tuple):
        yield DivisorModule(chosen)
        for i in range(idx, len(places)):
            place = places[i]
            max_mult = budget // place.degree
            for mult in range(1, max_mult + 1):
                yield from walk(
                    i + 1,
                    budget - mult * place.degree,
                    chosen + ((place, mult),),
                )

    yield from walk(0, max_degree, ())
