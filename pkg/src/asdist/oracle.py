"""Brute-force census of elementary abelian p-extensions of F_q(x).

Classes of the quotient F_q(x) / (y^p - y applied to F_q(x)) are stored in a
canonical partial-fraction normal form whose denominators only carry indices
coprime to p.  Extensions with group C_p^r correspond to r-dimensional
F_p-subspaces of that quotient, and the conductor of a subspace is the
place-wise maximum over its nonzero elements.  Everything here is exhaustive
enumeration over one concrete finite field; it exists to cross-check the
analytic counts on small inputs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .counting import DivisorModule, Place
from .errors import BudgetExceededError, ModelError
from .field import is_prime, _prime_power_exponent

DEFAULT_BUDGET = 10**7


# ---------------------------------------------------------------------------
# the constant field F_q = F_p[z] / modulus; elements are coefficient tuples

class GF:
    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ModelError(f"{p} is not prime")
        if k < 1:
            raise ModelError("extension degree must be >= 1")
        self.p, self.k, self.q = p, k, p**k
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1))
        self.modulus = self._find_modulus()
        self._mul_table: dict = {}
        image = frozenset(
            self.sub(self.pow(a, p), a) for a in self.elements()
        )
        self.wp_image = image
        # coset representatives of F_q / image are the F_p-multiples of one
        # fixed non-image element, so scaling keeps representatives canonical
        unit = next(a for a in self.elements() if a not in image)
        self._coset_rep = {}
        for i in range(p):
            rep = self.scalar_mul(i, unit)
            for v in image:
                self._coset_rep[self.add(rep, v)] = rep
        self.coset_reps = tuple(self.scalar_mul(i, unit) for i in range(p))

    # -- modulus search over F_p ------------------------------------------
    def _find_modulus(self):
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)

        def fp_divmod(a, b):
            a = list(a)
            inv_lead = pow(b[-1], p - 2, p)
            quot = [0] * (len(a) - len(b) + 1)
            for i in range(len(a) - len(b), -1, -1):
                c = a[i + len(b) - 1] * inv_lead % p
                quot[i] = c
                for j, bj in enumerate(b):
                    a[i + j] = (a[i + j] - c * bj) % p
            while len(a) > 1 and a[-1] == 0:
                a.pop()
            return quot, a

        def monic(degree):
            for tail in itertools.product(range(p), repeat=degree):
                yield list(tail) + [1]

        for cand in monic(k):
            divisible = False
            for d in range(1, k // 2 + 1):
                for div in monic(d):
                    if fp_divmod(cand, div)[1] == [0]:
                        divisible = True
                        break
                if divisible:
                    break
            if not divisible:
                return tuple(cand)
        raise ModelError("no irreducible modulus found")  # pragma: no cover

    # -- element arithmetic ------------------------------------------------
    def elements(self):
        for tup in itertools.product(range(self.p), repeat=self.k):
            yield tup

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def scalar_mul(self, c: int, a):
        return tuple(c * x % self.p for x in a)

    def mul(self, a, b):
        key = (a, b)
        hit = self._mul_table.get(key)
        if hit is not None:
            return hit
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for j in range(k):
                    prod[top - k + j] = (prod[top - k + j] - c * self.modulus[j]) % p
        out = tuple(prod[:k])
        self._mul_table[key] = out
        return out

    def pow(self, a, e: int):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def pth_root(self, a):
        return self.pow(a, self.p ** (self.k - 1))

    def coset_rep(self, a):
        return self._coset_rep[a]


# ---------------------------------------------------------------------------
# polynomials over GF: trimmed ascending tuples of elements; zero is ()

def poly_trim(poly, gf):
    poly = list(poly)
    while poly and poly[-1] == gf.zero:
        poly.pop()
    return tuple(poly)


def poly_add(a, b, gf):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = gf.add(out[i], c)
    return poly_trim(out, gf)


def poly_neg(a, gf):
    return tuple(gf.neg(c) for c in a)


def poly_scale(a, c, gf):
    if c == gf.zero:
        return ()
    return tuple(gf.mul(x, c) for x in a)


def poly_mul(a, b, gf):
    if not a or not b:
        return ()
    out = [gf.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != gf.zero:
            for j, y in enumerate(b):
                if y != gf.zero:
                    out[i + j] = gf.add(out[i + j], gf.mul(x, y))
    return poly_trim(out, gf)


def poly_divmod(a, b, gf):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    inv_lead = gf.inv(b[-1])
    if len(rem) < len(b):
        return (), poly_trim(rem, gf)
    quot = [gf.zero] * (len(rem) - len(b) + 1)
    for i in range(len(rem) - len(b), -1, -1):
        c = gf.mul(rem[i + len(b) - 1], inv_lead)
        if c == gf.zero:
            continue
        quot[i] = c
        for j, bj in enumerate(b):
            rem[i + j] = gf.sub(rem[i + j], gf.mul(c, bj))
    return poly_trim(quot, gf), poly_trim(rem, gf)


def poly_mod(a, b, gf):
    return poly_divmod(a, b, gf)[1]


def poly_pow_mod(a, e: int, m, gf):
    result = (gf.one,)
    base = poly_mod(a, m, gf)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, gf), m, gf)
        base = poly_mod(poly_mul(base, base, gf), m, gf)
        e >>= 1
    return result


def poly_inv_mod(a, m, gf):
    """Inverse of a modulo m in GF[x], by the extended Euclidean algorithm."""
    r0, r1 = m, poly_mod(a, m, gf)
    s0, s1 = (), (gf.one,)
    while r1:
        q, rem = poly_divmod(r0, r1, gf)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_add(s0, poly_neg(poly_mul(q, s1, gf), gf), gf)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo m")
    return poly_scale(s0, gf.inv(r0[0]), gf)


def monic_polys(gf, degree: int):
    for tail in itertools.product(gf.elements(), repeat=degree):
        yield poly_trim(list(tail) + [gf.one], gf)


def irreducibles_up_to(gf, max_degree: int) -> list:
    """Monic irreducible polynomials of degree 1..max_degree, by trial
    division against the smaller ones."""
    found: list = []
    for d in range(1, max_degree + 1):
        for cand in monic_polys(gf, d):
            if any(
                len(p) - 1 <= d // 2 and not poly_mod(cand, p, gf)
                for p in found
            ):
                continue
            found.append(cand)
    return found


def residue_pth_root(c, modulus, gf):
    """p-th root in the residue field GF[x]/modulus."""
    deg = len(modulus) - 1
    return poly_pow_mod(c, gf.p ** (gf.k * deg - 1), modulus, gf)


def _padic_digits(poly, base, gf):
    digits = []
    while poly:
        poly, rem = poly_divmod(poly, base, gf)
        digits.append(rem)
    return digits


# ---------------------------------------------------------------------------
# Artin-Schreier normal forms

def _place_key(poly) -> str:
    return ",".join("".join(str(x) for x in c) for c in poly)


@dataclass(frozen=True)
class ASRep:
    """A class of F_q(x) modulo y^p - y images, in normal form: a canonical
    constant, polynomial terms a_j x^j, and proper partial fractions h/P^j,
    all with j coprime to p."""

    constant: tuple  # GF element, always one of gf.coset_reps
    infinity: tuple  # ((j, coeff), ...) ascending, j >= 1
    finite: tuple  # ((P, ((j, h), ...)), ...) sorted by (deg P, P)

    @property
    def is_zero(self) -> bool:
        return not self.infinity and not self.finite and all(
            x == 0 for x in self.constant
        )

    def conductor(self) -> DivisorModule:
        entries = {}
        if self.infinity:
            entries[Place(1, "inf")] = max(j for j, _ in self.infinity) + 1
        for poly, block in self.finite:
            place = Place(len(poly) - 1, _place_key(poly))
            entries[place] = max(j for j, _ in block) + 1
        return DivisorModule.from_entries(entries)


def add_reps(a: ASRep, b: ASRep, gf) -> ASRep:
    constant = gf.add(a.constant, b.constant)
    inf = dict(a.infinity)
    for j, c in b.infinity:
        s = gf.add(inf.get(j, gf.zero), c)
        if s == gf.zero:
            inf.pop(j, None)
        else:
            inf[j] = s
    fin = {poly: dict(block) for poly, block in a.finite}
    for poly, block in b.finite:
        dest = fin.setdefault(poly, {})
        for j, h in block:
            s = poly_add(dest.get(j, ()), h, gf)
            if s:
                dest[j] = s
            else:
                dest.pop(j, None)
    return _pack(constant, inf, fin)


def scale_rep(a: ASRep, c: int, gf) -> ASRep:
    c %= gf.p
    if c == 0:
        return ASRep(gf.zero, (), ())
    constant = gf.scalar_mul(c, a.constant)
    inf = {j: gf.scalar_mul(c, x) for j, x in a.infinity}
    fin = {
        poly: {j: poly_scale(h, gf.scalar_mul(c, gf.one), gf) for j, h in block}
        for poly, block in a.finite
    }
    return _pack(constant, inf, fin)


def _pack(constant, inf: dict, fin: dict) -> ASRep:
    finite = tuple(
        (poly, tuple(sorted(block.items())))
        for poly, block in sorted(fin.items(), key=lambda kv: (len(kv[0]), kv[0]))
        if block
    )
    return ASRep(constant, tuple(sorted(inf.items())), finite)


# ---------------------------------------------------------------------------
# exhaustive enumeration

def _local_blocks(payloads, degree: int, budget: int, p: int):
    """All nonempty local blocks at a place of the given degree whose
    conductor degree fits the budget: yields (block, conductor_degree)."""
    top = budget // degree - 1
    for j_top in range(1, top + 1):
        if j_top % p == 0:
            continue
        smaller = [j for j in range(1, j_top) if j % p]
        nonzero = payloads[1:]
        for top_payload in nonzero:
            for rest in itertools.product(payloads, repeat=len(smaller)):
                block = {j_top: top_payload}
                for j, payload in zip(smaller, rest):
                    if payload != payloads[0]:
                        block[j] = payload
                yield tuple(sorted(block.items())), degree * (j_top + 1)


def enumerate_classes(gf, bound: int, budget: int = DEFAULT_BUDGET) -> list:
    """All nonzero normal-form classes whose conductor degree is <= bound."""
    places = [("inf", None, 1, tuple(gf.elements()))]
    for poly in irreducibles_up_to(gf, max(bound // 2, 0)):
        degree = len(poly) - 1
        if 2 * degree > bound:
            continue
        payloads = tuple(
            poly_trim(tail, gf)
            for tail in itertools.product(gf.elements(), repeat=degree)
        )
        # put the zero payload first; _local_blocks relies on it
        payloads = ((),) + tuple(x for x in payloads if x)
        places.append(("fin", poly, degree, payloads))

    out: list = []

    def walk(idx: int, remaining: int, inf, fin):
        if idx == len(places):
            for constant in gf.coset_reps:
                rep = _pack(constant, dict(inf), {p: dict(b) for p, b in fin})
                if not rep.is_zero:
                    out.append(rep)
                    if len(out) > budget:
                        raise BudgetExceededError(
                            f"class enumeration exceeded the budget {budget}"
                        )
            return
        kind, poly, degree, payloads = places[idx]
        walk(idx + 1, remaining, inf, fin)
        for block, cond_degree in _local_blocks(payloads, degree, remaining, gf.p):
            if kind == "inf":
                walk(idx + 1, remaining - cond_degree, dict(block), fin)
            else:
                walk(idx + 1, remaining - cond_degree, inf, fin + ((poly, block),))

    walk(0, bound, {}, ())
    return out


def _span(generators, gf, p: int, r: int):
    """Nonzero elements of the F_p-span, or None if the generators are
    dependent."""
    elements = set()
    for coeffs in itertools.product(range(p), repeat=r):
        if not any(coeffs):
            continue
        acc = ASRep(gf.zero, (), ())
        for c, g in zip(coeffs, generators):
            if c:
                acc = add_reps(acc, scale_rep(g, c, gf), gf)
        if acc.is_zero:
            return None
        elements.add(acc)
    if len(elements) != p**r - 1:
        return None
    return frozenset(elements)


def _subspace_conductor(elements) -> DivisorModule:
    entries: dict = {}
    for rep in elements:
        for place, mult in rep.conductor().entries:
            entries[place] = max(entries.get(place, 0), mult)
    return DivisorModule.from_entries(entries)


def oracle_counts(
    q: int, p: int, r: int, bound: int, budget: int = DEFAULT_BUDGET
) -> dict:
    """Census of C_p^r-extensions of F_q(x) by conductor, up to conductor
    degree `bound`: returns {DivisorModule: count}."""
    k = _prime_power_exponent(q, p)
    if k is None:
        raise ModelError(f"q = {q} is not a power of p = {p}")
    gf = GF(p, k)
    classes = enumerate_classes(gf, bound, budget)
    counts: dict = {}
    if r == 1:
        for rep in classes:
            cond = rep.conductor()
            counts[cond] = counts.get(cond, 0) + 1
        bad = [m for m, c in counts.items() if c % (p - 1)]
        if bad:
            raise BudgetExceededError(  # pragma: no cover
                "class orbits did not split evenly; enumeration is inconsistent"
            )
        return {m: c // (p - 1) for m, c in counts.items()}
    seen = set()
    work = 0
    for generators in itertools.combinations(classes, r):
        work += p**r
        if work > budget:
            raise BudgetExceededError(
                f"subspace enumeration exceeded the budget {budget}"
            )
        span = _span(generators, gf, p, r)
        if span is None or span in seen:
            continue
        seen.add(span)
        cond = _subspace_conductor(span)
        if cond.degree <= bound:
            counts[cond] = counts.get(cond, 0) + 1
    return counts


def counts_by_degree(counts: dict, bound: int) -> list:
    """Aggregate a conductor census into counts per conductor degree 0..bound."""
    out = [0] * (bound + 1)
    for module, count in counts.items():
        if module.degree <= bound:
            out[module.degree] += count
    return out


# ---------------------------------------------------------------------------
# normalization of arbitrary rational functions (for spot checks)

def normalize_rational(gf, num, den) -> ASRep:
    """Normal form of num/den in F_q(x): partial fractions, then reduction
    of every p-divisible denominator index and polynomial degree."""
    num = poly_trim(num, gf)
    den = poly_trim(den, gf)
    if not den:
        raise ZeroDivisionError("zero denominator")
    lead = den[-1]
    if lead != gf.one:
        inv = gf.inv(lead)
        den = poly_scale(den, inv, gf)
        num = poly_scale(num, inv, gf)
    quot, rem = poly_divmod(num, den, gf)

    # factor the monic denominator
    factors: dict = {}
    rest = den
    for cand in irreducibles_up_to(gf, max(len(den) - 1, 0)):
        while len(rest) > 1 and not poly_mod(rest, cand, gf):
            rest = poly_divmod(rest, cand, gf)[0]
            factors[cand] = factors.get(cand, 0) + 1
        if len(rest) == 1:
            break

    fin: dict = {}
    for poly, mult in factors.items():
        power = (gf.one,)
        for _ in range(mult):
            power = poly_mul(power, poly, gf)
        cofactor = poly_divmod(den, power, gf)[0]
        h = poly_mod(
            poly_mul(rem, poly_inv_mod(cofactor, power, gf), gf), power, gf
        )
        digits = _padic_digits(h, poly, gf)
        block = {}
        for i, digit in enumerate(digits):
            if digit and mult - i >= 1:
                block[mult - i] = digit
        leftover = _reduce_finite_block(block, poly, gf)
        if block:
            fin[poly] = block
        if 0 in block:
            raise AssertionError("index 0 must not survive reduction")
        quot = poly_add(quot, leftover, gf)

    # reduce the polynomial part at infinity
    poly_part = list(quot) + [gf.zero]
    while True:
        top = None
        for j in range(len(poly_part) - 1, 0, -1):
            if j % gf.p == 0 and poly_part[j] != gf.zero:
                top = j
                break
        if top is None:
            break
        root = gf.pth_root(poly_part[top])
        poly_part[top] = gf.zero
        poly_part[top // gf.p] = gf.add(poly_part[top // gf.p], root)
    inf = {
        j: c for j, c in enumerate(poly_part) if j >= 1 and c != gf.zero
    }
    constant = gf.coset_rep(poly_part[0] if poly_part else gf.zero)
    return _pack(constant, inf, fin)


def _reduce_finite_block(block: dict, modulus, gf):
    """In-place removal of p-divisible indices; returns the polynomial
    overflow (always zero in theory, kept for safety)."""
    leftover = ()
    while True:
        bad = [j for j in block if j % gf.p == 0]
        if not bad:
            return leftover
        j = max(bad)
        c = block.pop(j)
        root = residue_pth_root(c, modulus, gf)
        root_p = root
        for _ in range(gf.p - 1):
            root_p = poly_mul(root_p, root, gf)
        digits = _padic_digits(root_p, modulus, gf)
        # root^p / P^j cancels c / P^j in its leading digit and spreads the
        # higher digits to lower indices
        for i in range(1, len(digits)):
            if not digits[i]:
                continue
            idx = j - i
            if idx == 0:
                leftover = poly_add(leftover, poly_neg(digits[i], gf), gf)
                continue
            s = poly_add(block.get(idx, ()), poly_neg(digits[i], gf), gf)
            if s:
                block[idx] = s
            else:
                block.pop(idx, None)
        target = j // gf.p
        s = poly_add(block.get(target, ()), root, gf)
        if s:
            block[target] = s
        else:
            block.pop(target, None)
