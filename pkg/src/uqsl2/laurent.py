"""Exact scalars over Z[q, q^-1].

Three layers, each immutable:

* ``LaurentPoly``  -- finite sums ``c * q^e`` with Python ints as coefficients,
* ``RationalQ``    -- reduced fractions of Laurent polynomials,
* ``LaurentSeries`` -- truncated elements of Z[[q]][q^-1].

Quantum integers, factorials and binomials live here as well.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

DEFAULT_Q_ORDER = 40


class ArithmeticBug(ArithmeticError):
    """An exact division that should be exact was not."""


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (ascending coefficient lists, no trailing 0)

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c: Iterable[int]) -> int:
    g = 0
    for x in c:
        g = gcd(g, x)
    return g


def _primitive(c: list[int]) -> list[int]:
    g = _content(c)
    if g in (0, 1):
        return c
    return [x // g for x in c]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[i + shift] -= la * y
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Q[q] of two nonzero integer polynomials."""
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    if a[-1] < 0:
        a = [-x for x in a]
    return a


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    if not a:
        return []
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [0] * (len(a) - db) if len(a) > db else []
    while a and len(a) - 1 >= db:
        la = a[-1]
        if la % lb:
            raise ArithmeticBug("inexact polynomial division")
        c = la // lb
        shift = len(a) - 1 - db
        out[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    if a:
        raise ArithmeticBug("nonzero remainder in exact division")
    return out


# ---------------------------------------------------------------------------

class LaurentPoly:
    """Element of Z[q, q^-1] stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            t = {}
        elif isinstance(terms, LaurentPoly):
            t = dict(terms._terms)
        elif isinstance(terms, int):
            t = {0: terms} if terms else {}
        else:
            t = {}
            for e, c in dict(terms).items():
                c = int(c)
                if c:
                    t[int(e)] = t.get(int(e), 0) + c
            t = {e: c for e, c in t.items() if c}
        self._terms = t
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], start: int = 0) -> "LaurentPoly":
        return cls._raw({start + i: c for i, c in enumerate(coeffs) if c})

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> int:
        return self._terms.get(0, 0)

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def at_one(self) -> int:
        return sum(self._terms.values())

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, float, complex...)."""
        if not self._terms:
            return 0
        if isinstance(x, int) and x not in (1, -1) and min(self._terms) < 0:
            x = Fraction(x)
        return sum(c * x ** e for e, c in self._terms.items())

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._terms)
        for e, c in o._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, c), = self._terms.items()
                if abs(c) == 1:
                    return LaurentPoly.monomial(e * n, c ** (-n))
            raise ValueError("negative power of a non-unit")
        result, base = LaurentPoly(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """``p(q) -> p(q^k)``."""
        return LaurentPoly._raw({e * k: c for e, c in self._terms.items()})

    def exact_div(self, other) -> "LaurentPoly":
        """Quotient in Z[q, q^-1]; raises ArithmeticBug if it does not exist."""
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self._terms:
            return LaurentPoly()
        va, vb = self.valuation(), o.valuation()
        a = self.dense(va)
        b = o.dense(vb)
        return LaurentPoly.from_coeffs(_poly_divexact(a, b), va - vb)

    def divides(self, other) -> bool:
        try:
            LaurentPoly(other).exact_div(self)
        except ArithmeticBug:
            return False
        return True

    def dense(self, start: int | None = None) -> list[int]:
        if not self._terms:
            return []
        if start is None:
            start = self.valuation()
        return [self._terms.get(e, 0) for e in range(start, self.degree() + 1)]

    def __truediv__(self, other):
        return RationalQ(self, other)

    def __rtruediv__(self, other):
        return RationalQ(other, self)

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, RationalQ):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text -----------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*q")
            else:
                parts.append(f"{c}*q^{e}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly('{self}')"

    def to_json(self) -> list:
        return [[e, str(c)] for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; also accepts ``q``, ``-q^2``, ``3q`` style terms."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        s = re.sub(r"(?<=[0-9q])-", "+-", s)
        t: dict = {}
        for tok in s.split("+"):
            if not tok:
                continue
            m = re.fullmatch(r"([+-]?\d*)\*?(q(?:\^(-?\d+))?)?", tok)
            if not m or (not m.group(1) and not m.group(2)) or m.group(1) in ("+", "-") and not m.group(2):
                raise ValueError(f"cannot parse term {tok!r} in {text!r}")
            cs = m.group(1)
            c = int(cs) if cs not in ("", "+", "-") else (-1 if cs == "-" else 1)
            if m.group(2):
                e = int(m.group(3)) if m.group(3) is not None else 1
            else:
                e = 0
            t[e] = t.get(e, 0) + c
        return cls(t)


q = LaurentPoly.monomial(1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly()

Scalar = Union[int, LaurentPoly, "RationalQ"]


class RationalQ:
    """Reduced fraction ``numerator / denominator`` of Laurent polynomials.

    Canonical form: the denominator is an ordinary polynomial with nonzero
    constant term and positive leading coefficient, numerator and denominator
    are coprime over Q[q], and their joint integer content is 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, numerator: Scalar = 0, denominator: Scalar = 1):
        if isinstance(numerator, RationalQ) or isinstance(denominator, RationalQ):
            a = _as_rational(numerator)
            b = _as_rational(denominator)
            if not b.num:
                raise ZeroDivisionError("division by zero RationalQ")
            numerator = a.num * b.den
            denominator = a.den * b.num
        n = LaurentPoly(numerator) if not isinstance(numerator, LaurentPoly) else numerator
        d = LaurentPoly(denominator) if not isinstance(denominator, LaurentPoly) else denominator
        if not d:
            raise ZeroDivisionError("division by zero RationalQ")
        self.num, self.den = _normalize(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalQ":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        obj._hash = None
        return obj

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def bar(self) -> "RationalQ":
        return RationalQ(self.num.bar(), self.den.bar())

    def __call__(self, x):
        d = self.den(x)
        n = self.num(x)
        if isinstance(n, int) and isinstance(d, int):
            return Fraction(n, d)
        return n / d

    def at_one(self):
        return self(1)

    def series(self, order: int = DEFAULT_Q_ORDER) -> "LaurentSeries":
        return series_from_ratfun(self, order)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den == ONE:
                return RationalQ._raw(self.num + o.num, ONE)
            return RationalQ(self.num + o.num, self.den)
        return RationalQ(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalQ._raw(-self.num, self.den)

    def __sub__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        if self.den == ONE and o.den == ONE:
            return RationalQ._raw(self.num * o.num, ONE)
        return RationalQ(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero RationalQ")
        return RationalQ(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalQ(1) / (self ** (-n))
        return RationalQ(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = _as_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den)) if self.den != ONE else hash(self.num)
        return self._hash

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalQ('{self}')"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalQ":
        if isinstance(data, list):
            return cls(LaurentPoly.from_json(data))
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _as_rational(x, strict: bool = True):
    if isinstance(x, RationalQ):
        return x
    if isinstance(x, LaurentPoly):
        return RationalQ._raw(x, ONE)
    if isinstance(x, int):
        return RationalQ._raw(LaurentPoly(x), ONE)
    if strict:
        raise TypeError(f"cannot interpret {x!r} as a RationalQ")
    return None


def as_rational(x) -> RationalQ:
    return _as_rational(x)


def _normalize(n: LaurentPoly, d: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not n:
        return ZERO, ONE
    vd = d.valuation()
    n, d = n.shift(-vd), d.shift(-vd)
    if d.is_monomial():
        c = d.coeff(0)
        if c > 0 and all(x % c == 0 for x in n._terms.values()):
            return LaurentPoly._raw({e: x // c for e, x in n._terms.items()}), ONE
    vn = n.valuation()
    a, b = n.dense(vn), d.dense(0)
    if len(b) > 1:
        g = _poly_gcd(a, b)
        if len(g) > 1:
            a, b = _poly_divexact(a, g), _poly_divexact(b, g)
    c = gcd(_content(a), _content(b))
    if b[-1] < 0:
        c = -c
    if c != 1:
        a = [x // c for x in a]
        b = [x // c for x in b]
    return LaurentPoly.from_coeffs(a, vn), LaurentPoly.from_coeffs(b, 0)


# ---------------------------------------------------------------------------

class LaurentSeries:
    """Truncated Laurent series ``sum c_e q^e`` known exactly for ``e < order``."""

    __slots__ = ("min_exponent", "coefficients", "order")

    def __init__(self, min_exponent: int, coefficients: Iterable[int], order: int):
        coefficients = [int(c) for c in coefficients]
        if len(coefficients) != order - min_exponent:
            raise ValueError("length of coefficients must equal order - min_exponent")
        self.min_exponent = min_exponent
        self.coefficients = tuple(coefficients)
        self.order = order

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int) -> "LaurentSeries":
        lo = min(p.valuation(), order) if p else order
        return cls(lo, [p.coeff(e) for e in range(lo, order)], order)

    def coeff(self, e: int) -> int:
        if e >= self.order:
            raise ValueError(f"coefficient of q^{e} unknown beyond order {self.order}")
        if e < self.min_exponent:
            return 0
        return self.coefficients[e - self.min_exponent]

    def truncate(self, order: int) -> "LaurentSeries":
        order = min(order, self.order)
        lo = min(self.min_exponent, order)
        return LaurentSeries(lo, [self.coeff(e) for e in range(lo, order)], order)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.coefficients, self.min_exponent)

    def _lead(self):
        for e, c in zip(range(self.min_exponent, self.order), self.coefficients):
            if c:
                return e, c
        return None

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentSeries.from_poly(LaurentPoly(other), self.order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.min_exponent, other.min_exponent, order)
        return LaurentSeries(lo, [self.coeff(e) + other.coeff(e) for e in range(lo, order)], order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_exponent, [-c for c in self.coefficients], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            p = LaurentPoly(other)
            if not p:
                return LaurentSeries(self.order, [], self.order)
            order = self.order + p.valuation()
            out: dict = {}
            for i, a in enumerate(self.coefficients):
                for e, c in p.items():
                    x = self.min_exponent + i + e
                    if x < order:
                        out[x] = out.get(x, 0) + a * c
            lo = min([order] + list(out))
            return LaurentSeries(lo, [out.get(e, 0) for e in range(lo, order)], order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        la, lb = self._lead(), other._lead()
        va = la[0] if la else self.order
        vb = lb[0] if lb else other.order
        order = min(self.order + vb, other.order + va)
        lo = min(va + vb, order)
        out = [0] * (order - lo)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            ea = self.min_exponent + i
            for j, b in enumerate(other.coefficients):
                e = ea + other.min_exponent + j
                if e >= order:
                    break
                if b:
                    out[e - lo] += a * b
        return LaurentSeries(lo, out, order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        lo = min(self.min_exponent, other.min_exponent)
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, self.order))

    def congruent(self, other, order: int) -> bool:
        """Equality of all coefficients below ``q^order``."""
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentSeries.from_poly(LaurentPoly(other), order)
        lo = min(self.min_exponent, other.min_exponent)
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, order))

    def __str__(self):
        body = str(self.to_poly())
        return f"{body} + O(q^{self.order})"

    def __repr__(self):
        return f"LaurentSeries('{self}')"

    def to_json(self):
        return {
            "min_exponent": self.min_exponent,
            "coefficients": [str(c) for c in self.coefficients],
            "order": self.order,
        }


def series_from_ratfun(r, order: int = DEFAULT_Q_ORDER) -> LaurentSeries:
    """Expand ``r`` as a Laurent series in ``q``, exact below ``q^order``."""
    r = as_rational(r)
    if not r.num:
        return LaurentSeries(order, [], order)
    num, den = r.num, r.den
    vd = den.valuation()
    dd = den.dense(vd)
    d0 = dd[0]
    # num/den = q^(vn - vd) * (a/b) with a, b ordinary and b(0) != 0
    vn = num.valuation()
    a = num.dense(vn)
    start = vn - vd
    n_terms = max(0, order - start)
    out = []
    rem = list(a) + [0] * max(0, n_terms - len(a))
    for i in range(n_terms):
        c = rem[i]
        if c % d0:
            raise ValueError("series has non-integral coefficients; leading denominator coefficient is not a unit")
        c //= d0
        out.append(c)
        if c:
            for j in range(1, len(dd)):
                if i + j < n_terms:
                    rem[i + j] -= c * dd[j]
    lo = min(start, order)
    return LaurentSeries(lo, out, order)


# ---------------------------------------------------------------------------
# quantum numbers

@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """Balanced quantum integer ``[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)``."""
    if n < 0:
        raise ValueError("qint requires n >= 0")
    return LaurentPoly._raw({n - 2 * j - 1: 1 for j in range(n)})


@lru_cache(maxsize=None)
def qint_renorm(n: int) -> LaurentPoly:
    """``1 + q^2 + ... + q^(2(n-1))``, equal to ``q^(n-1) [n]``."""
    if n < 0:
        raise ValueError("qint_renorm requires n >= 0")
    return LaurentPoly._raw({2 * j: 1 for j in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("qfact requires n >= 0")
    return ONE if n == 0 else qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qfact_renorm(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("qfact_renorm requires n >= 0")
    return ONE if n == 0 else qfact_renorm(n - 1) * qint_renorm(n)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentPoly:
    """Balanced quantum binomial; zero when ``k < 0``, ``n < 0`` or ``k > n``."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return qfact(n).exact_div(qfact(k) * qfact(n - k))


@lru_cache(maxsize=None)
def qbinom_renorm(n: int, k: int) -> LaurentPoly:
    """Renormalized binomial with lowest term ``1``; equals ``q^(k(n-k)) [n k]``."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return qfact_renorm(n).exact_div(qfact_renorm(k) * qfact_renorm(n - k))


def qmultinom(n: int, parts: Iterable[int]) -> LaurentPoly:
    """``[n]! / ([p1]! ... [pr]! [n - sum p]!)``."""
    parts = list(parts)
    rest = n - sum(parts)
    if any(p < 0 for p in parts) or rest < 0:
        return ZERO
    den = qfact(rest)
    for p in parts:
        den = den * qfact(p)
    return qfact(n).exact_div(den)


def qmultinom_renorm(n: int, parts: Iterable[int]) -> LaurentPoly:
    parts = list(parts)
    rest = n - sum(parts)
    if any(p < 0 for p in parts) or rest < 0:
        return ZERO
    den = qfact_renorm(rest)
    for p in parts:
        den = den * qfact_renorm(p)
    return qfact_renorm(n).exact_div(den)


def bar(x):
    """The involution ``q -> q^-1`` on polynomials and fractions."""
    if isinstance(x, int):
        return x
    return x.bar()


def qpow(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)
