"""Arithmetic-function toolkit: divisors, Moebius, totient, Ramanujan sums,
cyclotomic polynomials, the totient q-analogue, gcd-counting, Cohen-function
detection, and the cyclotomic discriminant.

All functions are pure; the memo tables behind ``cyclotomic_poly`` and
factorization are the stdlib ``lru_cache`` and are safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import MethodMismatch, UnsupportedOrder
from .exactalg import Polynomial, _context


def divisors(n):
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization by trial division, as a tuple of (p, e) pairs."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def mobius(n):
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n):
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def _ramanujan_exp_sum(h, j):
    # Sum of j-th powers over the primitive h-th roots of unity, reduced in
    # the cyclotomic field; integer coordinate arithmetic throughout.
    ctx = _context(h)
    acc = [0] * ctx.phi
    for k in range(1, h + 1):
        if gcd(k, h) == 1:
            row = ctx.powers[(j * k) % h]
            for t, rt in enumerate(row):
                if rt:
                    acc[t] += rt
    if any(acc[1:]):
        raise MethodMismatch(f"exp-sum c_{h}({j}) is not rational: {acc}")
    return acc[0]


def _ramanujan_divisor_sum(h, j):
    g = gcd(j, h)
    return sum(d * mobius(h // d) for d in divisors(g))


def _ramanujan_closed_form(h, j):
    g = gcd(j, h)
    num = totient(h) * mobius(h // g)
    den = totient(h // g)
    q, r = divmod(num, den)
    if r:
        raise MethodMismatch(f"closed form c_{h}({j}) is not an integer")
    return q


_RAMANUJAN_METHODS = {
    "exp_sum": _ramanujan_exp_sum,
    "divisor_sum": _ramanujan_divisor_sum,
    "closed_form": _ramanujan_closed_form,
}


def ramanujan_sum(h, j, method="divisor_sum"):
    """The Ramanujan sum c_h(j) by the requested method."""
    try:
        fn = _RAMANUJAN_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(h, j)


def ramanujan_sum_checked(h, j):
    """c_h(j) with all three methods cross-checked against each other."""
    vals = {name: fn(h, j) for name, fn in _RAMANUJAN_METHODS.items()}
    if len(set(vals.values())) != 1:
        raise MethodMismatch(f"c_{h}({j}) methods disagree: {vals}")
    return vals["divisor_sum"]


@lru_cache(maxsize=None)
def _cyclotomic_mobius(h):
    # Product over divisors of (q^d - 1)^mu(h/d), split into an exact
    # numerator/denominator pair before one exact division.
    num = Polynomial((1,))
    den = Polynomial((1,))
    for d in divisors(h):
        mu = mobius(h // d)
        if mu == 0:
            continue
        factor = Polynomial((-1,) + (0,) * (d - 1) + (1,))
        if mu == 1:
            num = num * factor
        else:
            den = den * factor
    return tuple(num.divexact(den).coeffs)


def cyclotomic_poly(h):
    """The order-h cyclotomic polynomial via the Moebius product."""
    return Polynomial(_cyclotomic_mobius(h))


def psi_poly(h):
    """Totient q-analogue: the sum of q**k over 1 <= k <= h coprime to h.

    For h >= 2 the exponents are the coprime residues in 1..h-1; for h = 1
    the single admissible exponent is k = 1, giving q.  The value-1 constant
    convention would break the d = 1 terms of the divisor-sum expansions
    this polynomial enters, so it is not used.
    """
    coeffs = [0] * (h + 1)
    for k in range(1, h + 1):
        if gcd(k, h) == 1:
            coeffs[k] = 1
    return Polynomial(coeffs)


def gcd_count(d, h, x):
    """Count integers 1 <= j <= x with d dividing gcd(j, h).

    ``x`` may be any nonnegative rational; floor semantics apply.
    """
    if h % d != 0:
        return 0
    return int(Fraction(x) / d)


@dataclass(frozen=True)
class ArithSeq:
    """One period of an h-periodic integer-or-rational sequence a(0)..a(h-1)."""

    h: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.h:
            raise ValueError("period length mismatch")


def is_cohen(seq):
    """Whether a(k) = a(gcd(k, h)) for k = 1..h-1.

    Under h-periodicity a(0) stands for the value at the divisor h itself,
    which the condition never constrains.  Returns (True, None) or
    (False, least violating k).
    """
    a, h = seq.values, seq.h
    for k in range(1, h):
        if a[k] != a[gcd(k, h)]:
            return False, k
    return True, None


def cyclotomic_discriminant(h):
    """Discriminant of the order-h cyclotomic polynomial, closed form."""
    if h <= 2:
        raise UnsupportedOrder("discriminant form needs order >= 3")
    phi = totient(h)
    den = 1
    for p, _ in factorize(h):
        e, r = divmod(phi, p - 1)
        assert r == 0
        den *= p ** e
    sign = -1 if (phi // 2) % 2 else 1
    return Fraction(sign * h ** phi, den)
