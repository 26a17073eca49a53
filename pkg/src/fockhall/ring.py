"""Exact scalars: Laurent polynomials in v, their fractions, and polynomials in q = v^2.

All values are immutable.  Coefficients are Python ints, so there is no
overflow anywhere in the scalar layer.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import gcd


class LaurentPoly:
    """A finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_c", "_h")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = int(a)
        self._c = c
        self._h = None

    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        p._c = c
        p._h = None
        return p

    @classmethod
    def const(cls, a):
        return cls._raw({0: int(a)} if a else {})

    @classmethod
    def mono(cls, e, a=1):
        return cls._raw({int(e): int(a)} if a else {})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # basic access
    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_deg(self):
        return min(self._c)

    def max_deg(self):
        return max(self._c)

    def is_monomial(self):
        return len(self._c) == 1

    # arithmetic
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if len(other._c) == 1:
            (f, b), = other._c.items()
            return LaurentPoly._raw({e + f: a * b for e, a in self._c.items()})
        if len(self._c) == 1:
            return other * self
        c = {}
        for e, a in self._c.items():
            for f, b in other._c.items():
                k = e + f
                c[k] = c.get(k, 0) + a * b
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._c) == 1:
                (e, a), = self._c.items()
                if a in (1, -1):
                    return LaurentPoly._raw({e * k: a ** (-k)})
            raise ValueError("negative power of a non-unit")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self):
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def __call__(self, x):
        """Evaluate at a number (int or Fraction)."""
        total = Fraction(0)
        for e, a in self._c.items():
            total += a * Fraction(x) ** e
        return total

    def divexact(self, other):
        """Exact quotient in Z[v, v^-1]; raises ArithmeticError otherwise."""
        other = LaurentPoly.coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self._c:
            return ZERO
        q, r = _poly_divmod(self, other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def content(self):
        g = 0
        for a in self._c.values():
            g = gcd(g, a)
        return g

    # text and json
    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"LaurentPoly({to_text(self)})"

    def to_json(self):
        return {str(e): a for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({int(k): int(a) for k, a in obj.items()})


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
V = LaurentPoly._raw({1: 1})


def vpow(k):
    return LaurentPoly._raw({k: 1})


def to_text(p):
    """Render as 'c*v^e' terms, highest exponent first."""
    if not p._c:
        return "0"
    out = []
    for e, a in sorted(p._c.items(), reverse=True):
        mag = abs(a)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = f"v^{e}"
        else:
            body = f"{mag}*v^{e}"
        if not out:
            out.append(body if a > 0 else "-" + body)
        else:
            out.append((" + " if a > 0 else " - ") + body)
    return "".join(out)


def bar(p):
    return p.bar()


def _poly_divmod(a, b):
    """Long division of Laurent polynomials by leading terms.

    Returns (q, r) with a = q*b + r and deg r < deg b (after aligning lowest
    exponents).  Requires the leading coefficient of b to divide at each step,
    otherwise the remainder is returned early.
    """
    # a = a' v^ea, b = b' v^eb with a', b' polynomials of nonzero constant term
    ea, eb = a.min_deg(), b.min_deg()
    bp = {e - eb: c for e, c in b._c.items()}
    db = max(bp)
    cb = bp[db]
    r = {e - ea: c for e, c in a._c.items()}
    q = {}
    while r:
        lr = max(r)
        if lr < db or r[lr] % cb:
            break
        k = lr - db
        t = r[lr] // cb
        q[k] = t
        for e, c in bp.items():
            s = r.get(e + k, 0) - t * c
            if s:
                r[e + k] = s
            else:
                r.pop(e + k, None)
    shift = ea - eb
    return (LaurentPoly({e + shift: c for e, c in q.items()}),
            LaurentPoly({e + ea: c for e, c in r.items()}))


# quantum numbers

def quantum_integer(m):
    if m < 0:
        raise ValueError("quantum_integer requires m >= 0")
    return LaurentPoly({m - 1 - 2 * k: 1 for k in range(m)})


def quantum_factorial(t):
    if t < 0:
        raise ValueError("quantum_factorial requires t >= 0")
    out = ONE
    for k in range(1, t + 1):
        out = out * quantum_integer(k)
    return out


def gauss_binomial(m, t):
    if m < 0 or t < 0 or t > m:
        raise ValueError("gauss_binomial requires 0 <= t <= m")
    num = quantum_factorial(m)
    den = quantum_factorial(t) * quantum_factorial(m - t)
    return num.divexact(den)


# polynomials over Q used by the fraction field

def _qpoly(p, shift=0):
    """Laurent poly (times v^shift) -> dense list of Fractions, low to high."""
    lo = p.min_deg() + shift
    if lo < 0:
        raise ValueError("negative exponent in polynomial conversion")
    out = [Fraction(0)] * (p.max_deg() + shift + 1)
    for e, a in p._c.items():
        out[e + shift] = Fraction(a)
    return out


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        t = a[-1] / lb
        q[k] = t
        for i, c in enumerate(b):
            a[i + k] -= t * c
        _trim(a)
    return _trim(q), a


def _qgcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    return a


def _primitive_int(a):
    """Scale a nonzero Q-polynomial to a primitive integer polynomial."""
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


class RatFrac:
    """A fraction num/den of Laurent polynomials kept in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFrac):
            return x
        return cls(x)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        return self.den == ONE

    def to_laurent(self):
        if self.den != ONE:
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        try:
            other = RatFrac.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RatFrac(self.num + other.num, self.den)
        return RatFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFrac._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = RatFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero fraction")
        return RatFrac(self.den, self.num)

    def __truediv__(self, other):
        other = RatFrac.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFrac.coerce(other) * self.inverse()

    def bar(self):
        return RatFrac(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFrac(other)
        if not isinstance(other, RatFrac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == ONE:
            return to_text(self.num)
        return f"({to_text(self.num)})/({to_text(self.den)})"

    __repr__ = __str__


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ZERO, ONE
    # clear powers of v so that den is a polynomial with nonzero constant term
    s = -den.min_deg()
    num, den = num.shift(s), den.shift(s)
    if len(den._c) > 1:
        k = num.min_deg()
        g = _qgcd(_qpoly(num, -k), _qpoly(den))
        if len(g) > 1:
            gl = LaurentPoly({i: c for i, c in enumerate(_primitive_int(g))})
            num = num.divexact(gl)
            den = den.divexact(gl)
    c = gcd(num.content(), den.content())
    if den[den.max_deg()] < 0:
        c = -c
    if c != 1:
        num = LaurentPoly._raw({e: a // c for e, a in num._c.items()})
        den = LaurentPoly._raw({e: a // c for e, a in den._c.items()})
    return num, den


def rf_normalize(num, den):
    return RatFrac(num, den)


class IntPolyQ:
    """A polynomial in q with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        for e, a in (coeffs or {}).items():
            if e < 0:
                raise ValueError("IntPolyQ exponents must be nonnegative")
            if a:
                c[int(e)] = int(a)
        self._c = c

    @property
    def coeffs(self):
        return dict(self._c)

    def degree(self):
        return max(self._c) if self._c else -1

    def __call__(self, q):
        return sum(a * q ** e for e, a in self._c.items())

    def to_laurent(self):
        """Substitute q = v^2."""
        return LaurentPoly({2 * e: a for e, a in self._c.items()})

    def __add__(self, other):
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return IntPolyQ(c)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolyQ({e: a * other for e, a in self._c.items()})
        c = {}
        for e, a in self._c.items():
            for f, b in other._c.items():
                c[e + f] = c.get(e + f, 0) + a * b
        return IntPolyQ(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolyQ({0: other})
        if not isinstance(other, IntPolyQ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            body = str(abs(a)) if e == 0 else (("" if abs(a) == 1 else f"{abs(a)}*") + f"q^{e}")
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __repr__ = __str__


def interpolate(points):
    """Exact Lagrange interpolation through (x, y) pairs with integer data.

    Returns the coefficient list (Fractions, low to high) of the unique
    polynomial of degree < len(points).
    """
    xs = [Fraction(x) for x, _ in points]
    coeffs = [Fraction(0)] * len(points)
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xm * basis[k + 1]
            denom *= xj - xm
        for k, b in enumerate(basis):
            coeffs[k] += yj * b / denom
    return coeffs
