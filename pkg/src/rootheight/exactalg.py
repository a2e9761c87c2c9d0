"""Exact arithmetic kernel: rationals, dense polynomials, cyclotomic field
elements, and rational functions.

Everything here is exact; no floating point is used anywhere in the library.
All values are immutable and all operations are pure functions, so they can
be used freely from concurrent workers.

Polynomial coefficients may be Python ints, ``Fraction`` values, or ``CycNum``
elements of one fixed order; the three kinds interoperate through the usual
arithmetic operators (ints and Fractions embed as constants of the field).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, NotDivisible

# Exact rational scalar used throughout the library.
Rat = Fraction


def _coeff_inv(c):
    """Multiplicative inverse of a coefficient, staying exact."""
    if not c:
        raise DivisionByZero("inverse of zero coefficient")
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return Fraction(c.denominator, c.numerator)
    return c.inverse()


class Polynomial:
    """Dense univariate polynomial; index i holds the coefficient of q**i.

    The zero polynomial is the empty coefficient tuple; otherwise the last
    coefficient is nonzero and ``degree`` equals ``len(coeffs) - 1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, power, coeff=1):
        return cls((0,) * power + (coeff,))

    @classmethod
    def geometric(cls, count):
        """1 + q + ... + q**(count-1)."""
        return cls((1,) * count)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self):
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        """Coefficient of q**i (0 beyond the degree)."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _wrap(x):
        return x if isinstance(x, Polynomial) else Polynomial((x,))

    def __add__(self, other):
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return Polynomial(out)

    def __rmul__(self, other):
        return Polynomial(tuple(other * c for c in self.coeffs))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._wrap(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        dn, dd = len(self.coeffs), len(other.coeffs)
        if dn < dd:
            return Polynomial(()), self
        rem = list(self.coeffs)
        lc = other.coeffs[-1]
        monic = lc == 1
        inv_lc = None if monic else _coeff_inv(lc)
        quot = [0] * (dn - dd + 1)
        for i in range(dn - dd, -1, -1):
            c = rem[i + dd - 1]
            if not c:
                continue
            t = c if monic else c * inv_lc
            quot[i] = t
            rem[i + dd - 1] = 0
            for j in range(dd - 1):
                bc = other.coeffs[j]
                if bc:
                    rem[i + j] = rem[i + j] - t * bc
        return Polynomial(quot), Polynomial(rem[: dd - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        """Exact quotient; raises NotDivisible on a nonzero remainder."""
        quot, rem = divmod(self, other)
        if not rem.is_zero:
            raise NotDivisible(f"remainder {rem!r} is nonzero")
        return quot

    # -- other operations ---------------------------------------------------

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Polynomial(tuple(i * self.coeffs[i] for i in range(1, len(self.coeffs))))

    def shifted(self, k):
        """Multiply by q**k."""
        if self.is_zero:
            return self
        return Polynomial((0,) * k + self.coeffs)

    def compose_power(self, k):
        """Substitute q -> q**k (k >= 1)."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        if self.is_zero:
            return self
        out = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Polynomial(out)

    def reversed_to(self, m):
        """q**m * p(1/q); requires m >= degree."""
        if self.is_zero:
            return self
        if m < self.degree:
            raise ValueError("reversal length below degree")
        out = [0] * (m + 1)
        for i, c in enumerate(self.coeffs):
            out[m - i] = c
        return Polynomial(out)

    def monic(self):
        if self.is_zero or self.leading == 1:
            return self
        inv = _coeff_inv(self.leading)
        return Polynomial(tuple(c * inv for c in self.coeffs))

    def map_coeffs(self, fn):
        return Polynomial(tuple(fn(c) for c in self.coeffs))

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return self.coeffs == self._wrap(other).coeffs

    def __ne__(self, other):
        return not self.__eq__(other)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return poly_str(self)


def poly_str(p, var="q"):
    """Human-readable rendering, lowest degree first."""
    if p.is_zero:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
            continue
        v = var if i == 1 else f"{var}^{i}"
        if c == 1:
            parts.append(v)
        elif c == -1:
            parts.append(f"-{v}")
        else:
            parts.append(f"{c}*{v}")
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def poly_arith(a, b, op):
    """Dispatch basic polynomial arithmetic by name.

    ``op`` is one of add, sub, mul, divexact, rem.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divexact":
        return a.divexact(b)
    if op == "rem":
        return a % b
    raise ValueError(f"unknown op {op!r}")


def poly_gcd(a, b):
    """Monic gcd via the Euclidean algorithm over the coefficient field."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# Cyclotomic field elements
# ---------------------------------------------------------------------------


def _int_divexact(num, den):
    """Exact long division of integer coefficient lists (monic divisor)."""
    assert den[-1] == 1
    num = list(num)
    dd = len(den)
    quot = [0] * (len(num) - dd + 1)
    for i in range(len(num) - dd, -1, -1):
        c = num[i + dd - 1]
        if not c:
            continue
        quot[i] = c
        for j in range(dd):
            num[i + j] -= c * den[j]
    assert all(x == 0 for x in num[: dd - 1])
    return quot


@lru_cache(maxsize=None)
def _cyclotomic_int(h):
    """Coefficients of the order-h cyclotomic polynomial, by recursive division
    of q**h - 1 by the lower-order cyclotomics."""
    coeffs = [-1] + [0] * (h - 1) + [1]
    for d in range(1, h):
        if h % d == 0:
            coeffs = _int_divexact(coeffs, _cyclotomic_int(d))
    return tuple(coeffs)


class _CycContext:
    """Per-order tables: modulus, reduction rows, and root-of-unity powers."""

    __slots__ = ("order", "phi", "modulus", "red_rows", "powers")

    def __init__(self, h):
        self.order = h
        mod = _cyclotomic_int(h)
        phi = len(mod) - 1
        self.phi = phi
        self.modulus = mod
        top = tuple(-c for c in mod[:phi])
        rows = [top]
        for _ in range(phi - 2):
            prev = rows[-1]
            carry = prev[phi - 1]
            shifted = (0,) + prev[: phi - 1]
            rows.append(tuple(shifted[i] + carry * top[i] for i in range(phi)))
        self.red_rows = rows
        powers = []
        cur = (1,) + (0,) * (phi - 1)
        for _ in range(h):
            powers.append(cur)
            carry = cur[phi - 1]
            shifted = (0,) + cur[: phi - 1]
            cur = tuple(shifted[i] + carry * top[i] for i in range(phi)) if carry \
                else shifted
        self.powers = powers


@lru_cache(maxsize=None)
def _context(h):
    if h < 1:
        raise ValueError("cyclotomic order must be positive")
    return _CycContext(h)


class CycNum:
    """Element of the field generated by a primitive h-th root of unity,
    written in the power basis 1, z, ..., z**(phi(h)-1) and reduced modulo
    the order-h cyclotomic polynomial."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        ctx = _context(order)
        cs = tuple(coeffs)
        if len(cs) != ctx.phi:
            raise ValueError(f"need {ctx.phi} coordinates for order {order}")
        self.order = order
        self.coeffs = cs

    @classmethod
    def _raw(cls, order, coeffs):
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def rational(cls, order, value):
        phi = _context(order).phi
        return cls._raw(order, (value,) + (0,) * (phi - 1))

    @classmethod
    def zeta_pow(cls, order, k):
        """z**k for the primitive root z of the given order."""
        return cls._raw(order, _context(order).powers[k % order])

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(self.order, other)
        return None

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def _scaled(self, s):
        return CycNum._raw(self.order, tuple(s * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        phi = len(a)
        if phi == 1:
            return CycNum._raw(self.order, (a[0] * b[0],))
        if not any(b[1:]):
            return self._scaled(b[0])
        if not any(a[1:]):
            return o._scaled(a[0])
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] = conv[i + j] + ai * bj
        ctx = _context(self.order)
        for deg in range(2 * phi - 2, phi - 1, -1):
            c = conv[deg]
            if not c:
                continue
            row = ctx.red_rows[deg - phi]
            for t, rt in enumerate(row):
                if rt:
                    conv[t] = conv[t] + c * rt
        return CycNum._raw(self.order, conv[:phi])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        return NotImplemented

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero cyclotomic element")
        ctx = _context(self.order)
        a = Polynomial(self.coeffs)
        m = Polynomial(ctx.modulus)
        r0, s0 = a, Polynomial((1,))
        r1, s1 = m, Polynomial(())
        while not r1.is_zero:
            q, r = divmod(r0, r1)
            r0, s0, r1, s1 = r1, s1, r, s0 - q * s1
        # r0 is a nonzero constant: the modulus is irreducible over Q.
        inv = (s0 * _coeff_inv(r0.coeffs[0])) % m
        coeffs = list(inv.coeffs) + [0] * (ctx.phi - len(inv.coeffs))
        return CycNum._raw(self.order, coeffs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self._scaled(_coeff_inv(other))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries -------------------------------------------------------------

    @property
    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, o.coeffs))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.order, tuple(Fraction(c) for c in self.coeffs)))

    def __repr__(self):
        return f"CycNum({self.order}, {list(self.coeffs)!r})"


def cyc_eval(p, h, k):
    """Evaluate a rational-coefficient polynomial at z**k for the primitive
    h-th root of unity z, returning the reduced cyclotomic element."""
    ctx = _context(h)
    acc = [0] * ctx.phi
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        row = ctx.powers[(i * k) % h]
        for t, rt in enumerate(row):
            if rt:
                acc[t] = acc[t] + c * rt
    return CycNum._raw(h, acc)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials over one coefficient field.

    Instances are not normalized eagerly; equality is decided by
    cross-multiplication, and ``normalize`` produces the canonical form
    (gcd cancelled, monic denominator).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = Polynomial._wrap(num)
        den = Polynomial._wrap(den)
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def _wrap(cls, x):
        return x if isinstance(x, RationalFunction) else cls(x)

    def __add__(self, other):
        o = self._wrap(other)
        g = poly_gcd(self.den, o.den)
        if g.degree < 1:
            return RationalFunction(self.num * o.den + o.num * self.den,
                                    self.den * o.den)
        da = self.den.divexact(g)
        db = o.den.divexact(g)
        return RationalFunction(self.num * db + o.num * da, self.den * db)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o.num.is_zero:
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __eq__(self, other):
        o = self._wrap(other)
        return self.num * o.den == o.num * self.den

    def __ne__(self, other):
        return not self.__eq__(other)

    def __bool__(self):
        return not self.num.is_zero

    def normalize(self):
        """Canonical form: gcd cancelled, denominator monic."""
        if self.num.is_zero:
            return RationalFunction(Polynomial(()), Polynomial((1,)))
        g = poly_gcd(self.num, self.den)
        num = self.num.divexact(g)
        den = self.den.divexact(g)
        inv = _coeff_inv(den.leading)
        return RationalFunction(num * inv, den * inv)

    @property
    def is_polynomial(self):
        return (self.num % self.den).is_zero

    def as_polynomial(self):
        """Exact quotient; raises NotDivisible when not a polynomial."""
        return self.num.divexact(self.den)

    def subst_recip(self):
        """Substitute q -> 1/q, returned again as a rational function."""
        m = max(self.num.degree, self.den.degree)
        return RationalFunction(self.num.reversed_to(m), self.den.reversed_to(m))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({poly_str(self.num)})/({poly_str(self.den)})"


def ratfun_normalize(num, den):
    """Normalized quotient of two polynomials (errors on a zero denominator)."""
    return RationalFunction(num, den).normalize()
