"""Truncated power series with exact rational coefficients.

A series is stored as its coefficients 0..order (inclusive).  All operations
are exact; mixed-order operands truncate to the shorter one.  Values are
immutable and safe to share.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple  # Fraction, length order + 1

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        if not all(isinstance(c, Fraction) for c in self.coeffs):
            object.__setattr__(
                self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
            )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_coeffs(coeffs: Iterable[Scalar], order: int | None = None) -> "TruncatedSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = cs[: order + 1]
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return TruncatedSeries(tuple(cs))

    @staticmethod
    def constant(value: Scalar, order: int) -> "TruncatedSeries":
        cs = [Fraction(0)] * (order + 1)
        cs[0] = Fraction(value)
        return TruncatedSeries(tuple(cs))

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries.constant(1, order)

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries.constant(0, order)

    @staticmethod
    def monomial(coeff: Scalar, power: int, order: int) -> "TruncatedSeries":
        cs = [Fraction(0)] * (order + 1)
        if power <= order:
            cs[power] = Fraction(coeff)
        return TruncatedSeries(tuple(cs))

    def coeff(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} outside stored order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        if order == self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.order)
        m = self._common(other)
        return TruncatedSeries(
            tuple(self.coeffs[n] + other.coeffs[n] for n in range(m + 1))
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Scalar) -> "TruncatedSeries":
        f = Fraction(factor)
        return TruncatedSeries(tuple(c * f for c in self.coeffs))

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product truncated at the smaller operand order."""
        m = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (m + 1)
        for i in range(min(len(a), m + 1)):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(min(len(b), m + 1 - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncatedSeries(tuple(out))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def inv(self) -> "TruncatedSeries":
        """Multiplicative inverse up to the truncation order."""
        a = self.coeffs
        if a[0] == 0:
            raise ValueError("not invertible as power series")
        m = self.order
        b = [Fraction(0)] * (m + 1)
        b[0] = 1 / a[0]
        for n in range(1, m + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    s += a[k] * b[n - k]
            b[n] = -s / a[0]
        return TruncatedSeries(tuple(b))

    def subst_monomial(self, scale: Scalar, power: int) -> "TruncatedSeries":
        """Substitute t -> scale * t^power; truncation order is preserved."""
        if power < 1:
            raise ValueError("substitution power must be >= 1")
        s = Fraction(scale)
        m = self.order
        out = [Fraction(0)] * (m + 1)
        acc = Fraction(1)
        for n in range(m + 1):
            if n * power > m:
                break
            out[n * power] = self.coeffs[n] * acc
            acc *= s
        return TruncatedSeries(tuple(out))

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def pow(self, exponent: int) -> "TruncatedSeries":
        """Integer power; negative exponents invert first.

        For series 1 + x with val(x) >= 1 the binomial expansion is used, so
        huge exponents (Euler factors raised to place counts) stay cheap.
        """
        if exponent < 0:
            return self.inv().pow(-exponent)
        m = self.order
        if exponent == 0:
            return TruncatedSeries.one(m)
        if self.coeffs[0] == 1:
            x = self - 1
            v = x.valuation()
            if v is None:
                return TruncatedSeries.one(m)
            if v >= 1:
                out = TruncatedSeries.one(m)
                xk = TruncatedSeries.one(m)
                for k in range(1, m // v + 1):
                    if k > exponent:
                        break
                    xk = xk.mul(x)
                    out = out + xk.scale(comb(exponent, k))
                return out
        result = TruncatedSeries.one(m)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result.mul(base)
            base = base.mul(base)
            e >>= 1
        return result

    def __pow__(self, exponent: int):
        return self.pow(exponent)

    def partial_sum(self, n: int) -> Fraction:
        """Sum of coefficients 0..n."""
        if n > self.order:
            raise IndexError("partial sum beyond truncation order")
        return sum(self.coeffs[: n + 1], Fraction(0))

    def evaluate(self, point, convert=None):
        """Evaluate the truncated polynomial at a numeric point (Horner).

        `convert` maps each Fraction coefficient into the point's arithmetic
        (e.g. to mpf); by default coefficients are used as-is.
        """
        acc = 0 * point
        for c in reversed(self.coeffs):
            acc = acc * point + (convert(c) if convert else c)
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order > 7 else ""
        return f"TruncatedSeries([{shown}{tail}]; order={self.order})"


def geometric(ratio: Scalar, order: int) -> TruncatedSeries:
    """Series of 1/(1 - ratio * t)."""
    r = Fraction(ratio)
    cs, acc = [], Fraction(1)
    for _ in range(order + 1):
        cs.append(acc)
        acc *= r
    return TruncatedSeries(tuple(cs))
