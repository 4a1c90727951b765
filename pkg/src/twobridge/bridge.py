"""
Two-bridge knots b(p, q) and their D-words.

A D-word ``(a_1, ..., a_2n)`` names the 4-plat whose braid is
``s2^(2a_1) s1^(2a_2) s2^(2a_3) ... s1^(2a_2n)``.  Under the representation

    s1 -> [[1, -1], [0, 1]],    s2 -> [[1, 0], [1, 1]]

the product of the braid is ``±[[r, q], [s, p]]`` with ``pr - qs = 1``,
which is how words are turned into (p, q).
"""

import re
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from .errors import (DegenerateP, EvenP, ExpansionFailure, NotCoprime,
                     OddLengthWord, ParseError)

BridgeWord = tuple


def as_word(entries):
    """Validate and freeze a sequence of nonzero integers."""
    w = tuple(int(a) for a in entries)
    if any(a == 0 for a in w):
        raise ValueError(f"word entries must be nonzero: {w}")
    return w


def require_even(w):
    if len(w) % 2:
        raise OddLengthWord(f"word of odd length {len(w)} names a 2-component link")


def parse_word(text):
    """Parse ``"1,1,-1,-1"`` into a word; errors carry the character offset."""
    entries, pos = [], 0
    if not text.strip():
        raise ParseError("empty word", 0)
    for piece in text.split(","):
        token = piece.strip()
        offset = pos + (len(piece) - len(piece.lstrip()))
        if not re.fullmatch(r"[+-]?\d+", token):
            raise ParseError(f"expected a signed integer, got {token!r}", offset)
        value = int(token)
        if value == 0:
            raise ParseError("word entries must be nonzero", offset)
        entries.append(value)
        pos += len(piece) + 1
    return tuple(entries)


def format_word(w):
    return ",".join(str(a) for a in w)


@dataclass(frozen=True)
class TwoBridge:
    """
    The knot b(p, q) stored by its odd representative: p odd >= 3,
    q odd with -p < q < p and gcd(p, q) = 1.  Use :func:`normalize` to
    build one from an arbitrary coprime pair.  Field equality is
    representative equality; knot equivalence is :func:`equivalent`.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p % 2 == 0:
            raise EvenP(f"p must be odd, got {p}")
        if p < 3:
            raise DegenerateP(f"p must be at least 3, got {p}")
        if q % 2 == 0 or not -p < q < p:
            raise ValueError(f"q = {q} is not an odd representative in (-{p}, {p})")
        if gcd(p, q) != 1:
            raise NotCoprime(f"gcd({p}, {q}) != 1")

    def __str__(self):
        return f"b({self.p},{self.q})"

    @classmethod
    def parse(cls, text):
        """Accept ``"b(p,q)"`` or ``"p,q"``; the pair is normalized."""
        m = re.fullmatch(r"\s*(?:b\()?\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)?\s*", text)
        if not m:
            raise ParseError(f"expected 'p,q' or 'b(p,q)', got {text!r}", 0)
        return normalize(int(m.group(1)), int(m.group(2)))


def normalize(p, q):
    """
    Canonical odd representative of b(p, q).

    >>> normalize(3, 2)
    TwoBridge(p=3, q=-1)
    >>> normalize(105, 64)
    TwoBridge(p=105, q=-41)
    """
    if p % 2 == 0:
        raise EvenP(f"p = {p} is even")
    if p < 3:
        raise DegenerateP(f"p = {p} does not name a nontrivial knot")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    q %= 2 * p
    if q >= p:
        q -= 2 * p
    if q % 2 == 0:
        q = q - p if q > 0 else q + p
    return TwoBridge(p, q)


class WordValue(NamedTuple):
    matrix: tuple
    knot: TwoBridge


def _mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def word_matrix(w):
    """Product of the braid matrices of w, before any sign fix."""
    m = ((1, 0), (0, 1))
    for j, a in enumerate(w):
        if j % 2 == 0:
            m = _mul(m, ((1, 0), (2 * a, 1)))
        else:
            m = _mul(m, ((1, -2 * a), (0, 1)))
    return m


def evaluate_word(w):
    """
    Evaluate an even-length word to ``(matrix, knot)``.

    The matrix is sign-fixed so that its (2,2) entry p is positive; q is
    read from the (1,2) entry and the pair is normalized.
    """
    w = as_word(w)
    require_even(w)
    m = word_matrix(w)
    if m[1][1] < 0:
        m = tuple(tuple(-x for x in row) for row in m)
    p, q = m[1][1], m[0][1]
    if p <= 1:
        raise DegenerateP(f"word {format_word(w)} gives p = {p}")
    return WordValue(m, normalize(p, q))


def equivalent(k1, k2):
    """b(p,q) ~ b(p',q') iff p = p' and q = q' or qq' = 1 (mod p)."""
    if k1.p != k2.p:
        return False
    p = k1.p
    return (k1.q - k2.q) % p == 0 or (k1.q * k2.q - 1) % p == 0


def mirror(k):
    return normalize(k.p, -k.q)


def is_fibered(w):
    w = as_word(w)
    require_even(w)
    return all(a in (1, -1) for a in w)


def word_equivalent(w1, w2):
    """Equal words or reversed-equal words name the same D-knot."""
    w1, w2 = tuple(w1), tuple(w2)
    return len(w1) == len(w2) and (w1 == w2 or w1 == w2[::-1])


def negate_word(w):
    return tuple(-a for a in w)


def _even_quotient(x, y):
    """The even c with |x - c*y| < |y|; x odd, y even, or the reverse."""
    m = 2 * abs(y)
    r = x % m
    if r > abs(y):
        r -= m
    return (x - r) // y


def even_cf_expansion(k):
    """
    A D-word for b(p, q) via the even continued fraction of q_even/p,
    where q_even is the even representative of q modulo p.

    Peeling the braid matrices off the left of ``M e_2 = (q, p)`` gives
    an alternating Euclidean algorithm with even quotients; each quotient
    halves to a word entry.
    """
    p = k.p
    q = k.q - p if k.q > 0 else k.q + p
    word = []
    while q != 0:
        c = _even_quotient(p, q)
        word.append(c // 2)
        p -= c * q
        c = _even_quotient(q, p)
        word.append(-c // 2)
        q += -c * p
    w = tuple(word)
    if abs(p) != 1 or not w or not equivalent(evaluate_word(w).knot, k):
        raise ExpansionFailure(f"expansion of {k} did not round-trip: {w}")
    return w
