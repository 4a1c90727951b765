"""
Families of fibered two-bridge knots sharing an Alexander polynomial.

Torus construction:  K_n = D(1^2n) and
    K_n(±1) = D(1^2n, ±1, (-1)^2n, ±1, 1^2n).

Tree construction:  W(0,0) = (1, 1) and, for i with binary digits
eps_0 .. eps_{n-1},
    W(n, i) = W', s, -W', s, W'   with  W' = W(n-1, i mod 2^(n-1)),
                                        s  = (-1)^(eps_{n-1} + 1),
so that K(n, i) = D(W(n, i)) = b(p(n), q(n, i)) with
    p(0) = 3,  p(n+1) = p(n)(4 p(n)^2 - 1),
    q(0,0) = 2, q(n+1, i) = q(n, i')(4 p(n)^2 - 1) + 2 s_n p(n),
and q'(n, i) = q(n, i) - p(n) the odd representative, inverse to q mod p(n).
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .bridge import TwoBridge, as_word, normalize, require_even
from .covering import RecursionTrace, diagonal_recursive
from .errors import BudgetExceeded


@dataclass(frozen=True)
class FamilyIndex:
    n: int
    i: int = 0

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.i < 2**self.n:
            raise ValueError(f"need n >= 0 and 0 <= i < 2^n, got ({self.n}, {self.i})")

    @property
    def bits(self):
        """(eps_0, ..., eps_{n-1}) with i = sum eps_j 2^j."""
        return tuple((self.i >> j) & 1 for j in range(self.n))

    @property
    def signs(self):
        """The step signs (-1)^(eps_j + 1)."""
        return tuple(1 if e else -1 for e in self.bits)

    def parent(self):
        return FamilyIndex(self.n - 1, self.i & ((1 << (self.n - 1)) - 1))

    @classmethod
    def level(cls, n):
        return [cls(n, i) for i in range(2**n)]


def kn_word(n):
    if n < 1:
        raise ValueError("n must be positive")
    return (1,) * (2 * n)


def kn_pm_word(n, sign):
    if sign not in (1, -1):
        raise ValueError("sign must be ±1")
    ones = kn_word(n)
    return ones + (sign,) + (-1,) * (2 * n) + (sign,) + ones


def kn_pm_forms(n, sign):
    """``(p, q_first, q_second)``: the two printed closed forms of K_n(sign)."""
    a, b = 4 * n + 1, 4 * n + 3
    p = (2 * n + 1) * a * b
    return p, 2 * n * a * b + sign * 2 * (2 * n + 1), -a * b + sign * 2 * (2 * n + 1)


def kn_pm_closed_form(n, sign):
    p, q1, q2 = kn_pm_forms(n, sign)
    k1, k2 = normalize(p, q1), normalize(p, q2)
    if k1 != k2:
        raise AssertionError(f"closed forms of K_{n}({sign:+d}) disagree: {k1} vs {k2}")
    return k1


def kn_pm_trace(n, sign):
    """K_n(±1) is one recursion step from b(2n+1, -1) with step sign ±1."""
    return RecursionTrace(TwoBridge(2 * n + 1, -1), (sign,))


def kanenobu_compose(a, sign):
    """The word a, sign, -reverse(a), sign, a."""
    a = as_word(a)
    require_even(a)
    if sign not in (1, -1):
        raise ValueError("sign must be ±1")
    return a + (sign,) + tuple(-x for x in reversed(a)) + (sign,) + a


def w_word(index, *, nmax=config.WORD_NMAX):
    if index.n > nmax:
        raise BudgetExceeded(f"word level {index.n} exceeds cap {nmax}")
    w = (1, 1)
    for s in index.signs:
        w = w + (s,) + tuple(-x for x in w) + (s,) + w
    return w


def word_length(n):
    """L(0) = 2, L(n) = 3 L(n-1) + 2."""
    return 3**n * 3 - 1


def p_of(n):
    p = 3
    for _ in range(n):
        p = p * (4 * p * p - 1)
    return p


def _run(index, q0):
    p, q = 3, q0
    for s in index.signs:
        p, q = p * (4 * p * p - 1), q * (4 * p * p - 1) + 2 * s * p
    return p, q


def pq_recursion(index):
    return _run(index, 2)


def q_prime(index):
    return _run(index, -1)[1]


def q_closed_form(index):
    """q(n, i) = (2/3) p(n) + sum_j 2 s_j p(n) / (4 p(j)^2 - 1), as a Fraction."""
    pn = p_of(index.n)
    total = Fraction(2, 3) * pn
    for j, s in enumerate(index.signs):
        pj = p_of(j)
        total += Fraction(2 * s * pn, 4 * pj * pj - 1)
    return total


def family_knot(index):
    return normalize(*pq_recursion(index))


def family_trace(index):
    return RecursionTrace(TwoBridge(3, -1), index.signs)


def diag_family_set(n, *, budget=config.DIRECT_BUDGET):
    """
    ``(values, distinct_abs)``: the sorted multiset of d(K(n, i)) over all i,
    each from a verified trace, and the number of distinct |d|.
    """
    values = []
    for idx in FamilyIndex.level(n):
        p, q = pq_recursion(idx)
        values.append(diagonal_recursive(p, q, family_trace(idx), budget=budget))
    values.sort()
    return values, len({abs(v) for v in values})


def multiplicities(values):
    return dict(sorted(Counter(values).items()))


@dataclass(frozen=True)
class FamilyMember:
    label: str
    word: tuple
    p: int
    q: int
    knot: TwoBridge
    trace: RecursionTrace
    construction: str = "tree"

    def to_json(self):
        """Fields tagged with the operation that produced each of them."""
        torus = self.construction == "torus"
        return {
            "label": self.label,
            "word": {"op": "kn_pm_word" if torus else "w_word", "value": list(self.word)},
            "pq": {"op": "kn_pm_forms" if torus else "pq_recursion", "value": [self.p, self.q]},
            "knot": {"op": "normalize", "value": str(self.knot)},
            "trace": {"op": "kn_pm_trace" if torus else "family_trace",
                      "value": self.trace.to_json()},
        }


def torus_members(n):
    out = []
    for sign in (1, -1):
        p, q, _ = kn_pm_forms(n, sign)
        out.append(FamilyMember(f"K_{n}({sign:+d})", kn_pm_word(n, sign), p, q,
                                kn_pm_closed_form(n, sign), kn_pm_trace(n, sign), "torus"))
    return out


def tree_members(n, *, nmax=config.WORD_NMAX):
    out = []
    for idx in FamilyIndex.level(n):
        p, q = pq_recursion(idx)
        out.append(FamilyMember(f"K({n},{idx.i})", w_word(idx, nmax=nmax), p, q,
                                normalize(p, q), family_trace(idx)))
    return out
