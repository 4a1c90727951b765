"""
Exact Laurent polynomials in one variable t with half-integer exponents.

Exponents are stored doubled, so the term ``c * t^(e/2)`` is the pair
``(e, c)``.  Coefficients are Python integers and never overflow.
"""

from fractions import Fraction
from math import isqrt

from .errors import HalfExponentAtNonSquare, HalfExponentPresent, NotSymmetrizable


class LaurentPoly:
    """
    Immutable Laurent polynomial with big-integer coefficients.

    The constructor takes a mapping ``{doubled_exponent: coefficient}``;
    zero coefficients are dropped so that equal polynomials have equal
    term maps.

    >>> t = LaurentPoly.t()
    >>> (t - 1) * (t + 1)
    LaurentPoly('t^2 - 1')
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                if int(e) != e or int(c) != c:
                    raise TypeError("exponents and coefficients must be integers")
                if c:
                    clean[int(e)] = int(c)
        self._terms = tuple(sorted(clean.items()))

    # -- constructors --------------------------------------------------

    @classmethod
    def t(cls):
        return cls({2: 1})

    @classmethod
    def monomial(cls, coeff=1, exponent=0):
        """``coeff * t^exponent``; ``exponent`` may be an int, a half-integer Fraction or float."""
        e2 = Fraction(exponent) * 2
        if e2.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls({int(e2): coeff})

    @classmethod
    def from_coefficients(cls, coeffs, low=0):
        """Integer-exponent polynomial with ``coeffs[j]`` at ``t^(low + j)``."""
        return cls({2 * (low + j): c for j, c in enumerate(coeffs)})

    @classmethod
    def from_json(cls, pairs):
        return cls({int(e): int(c) for e, c in pairs})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self):
        """Dictionary ``{doubled_exponent: coefficient}`` (a fresh copy)."""
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def min_exponent2(self):
        return self._terms[0][0]

    def max_exponent2(self):
        return self._terms[-1][0]

    def has_half_exponents(self):
        return any(e % 2 for e, _ in self._terms)

    def leading_coefficient(self):
        return self._terms[-1][1] if self._terms else 0

    def coefficient(self, exponent):
        e2 = Fraction(exponent) * 2
        return dict(self._terms).get(int(e2), 0) if e2.denominator == 1 else 0

    def is_palindromic(self):
        """True iff f(t) = f(1/t) exactly."""
        terms = dict(self._terms)
        return all(terms.get(-e) == c for e, c in self._terms)

    def to_json(self):
        return [[e, str(c)] for e, c in self._terms]

    # -- ring structure ------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms:
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = LaurentPoly({0: 1}), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e2):
        """Multiply by the monomial t^(e2/2)."""
        return LaurentPoly({e + e2: c for e, c in self._terms})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    # -- printing ------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in reversed(self._terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                exp = str(e // 2) if e % 2 == 0 else f"{e}/2"
                mono = "t" if exp == "1" else f"t^{exp}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly('{self}')"


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})


def symmetrize(f):
    """
    Return the unit multiple ``g = ±t^(k/2) f`` with g(t) = g(1/t).

    The sign is chosen so that g(1) > 0, or, when g(1) = 0, so that the
    highest-exponent coefficient is positive.  Raises NotSymmetrizable
    when no unit multiple of f is palindromic (including f = 0).
    """
    if f.is_zero():
        raise NotSymmetrizable("the zero polynomial has no symmetric form")
    span = f.min_exponent2() + f.max_exponent2()
    if span % 2:
        raise NotSymmetrizable(f"{f}: exponent span is not centred on a half-integer")
    g = f.shift(-span // 2)
    if not g.is_palindromic():
        raise NotSymmetrizable(f"{f} is not palindromic up to units")
    value = sum(c for _, c in g.items())
    if value < 0 or (value == 0 and g.leading_coefficient() < 0):
        g = -g
    return g


def _unit_normal(f):
    g = f.shift(-f.min_exponent2())
    return -g if g._terms[0][1] < 0 else g


def equal_up_to_units(f, g):
    """True iff f = ±t^(k/2) g for some integer k."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    return _unit_normal(f) == _unit_normal(g)


def _rational_sqrt(x):
    if x <= 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def evaluate(f, x):
    """
    Exact value of f at t = x for nonzero rational x.

    Half-integer exponents are evaluated with the positive square root
    of x, which must then be rational.
    """
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("Laurent polynomials cannot be evaluated at 0")
    if f.has_half_exponents():
        root = _rational_sqrt(x)
        if root is None:
            raise HalfExponentAtNonSquare(f"{x} is not the square of a positive rational")
        return sum((c * root**e for e, c in f.items()), Fraction(0))
    return sum((c * x ** (e // 2) for e, c in f.items()), Fraction(0))


def substitute_neg(f):
    """Return f(-t); defined only for integer exponents."""
    if f.has_half_exponents():
        raise HalfExponentPresent(f"{f} has half-integer exponents")
    return LaurentPoly({e: -c if (e // 2) % 2 else c for e, c in f.items()})
