"""
Symmetrized Alexander polynomials of two-bridge knots.

Two routes are provided and must agree:

* :func:`alexander_from_pq` -- the O(p) closed-form sum
  ``sum_j (-1)^j t^h(j)`` with ``h(j) = sum_{i<=j} (-1)^floor(iq/p)``;
* :func:`alexander_from_word` -- det(V - t V^T) for the plumbing Seifert
  matrix of a D-word, via a tridiagonal recursion.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from . import config
from ._sums import sign_chunks
from .bridge import as_word, evaluate_word, negate_word, require_even
from .errors import EvenQ, HalfExponentAtNonSquare, NotSymmetrizable, PTooLarge
from .laurent import LaurentPoly, equal_up_to_units, evaluate, symmetrize

log = logging.getLogger(__name__)


def seifert_matrix(w):
    """Lower-bidiagonal Seifert matrix: V[i][i] = a_i, V[i+1][i] = 1."""
    m = len(w)
    V = [[0] * m for _ in range(m)]
    for i, a in enumerate(w):
        V[i][i] = a
        if i + 1 < m:
            V[i + 1][i] = 1
    return V


def alexander_from_pq(k, *, budget=config.DIRECT_BUDGET):
    p, q = k.p, k.q
    if q % 2 == 0:
        raise EvenQ(f"the closed-form sum needs odd q, got {k}")
    if p > budget:
        raise PTooLarge(f"p = {p} exceeds the closed-form budget {budget}")
    coeffs = {0: 1}  # j = 0
    h = 0  # running h(j) carried across chunks
    for k0, signs in sign_chunks(p, q, 1, p):
        hs = h + np.cumsum(signs)
        h = int(hs[-1])
        lo = int(hs.min())
        idx = hs - lo
        j = np.arange(k0, k0 + len(signs))
        even = np.bincount(idx[j % 2 == 0], minlength=int(idx.max()) + 1)
        odd = np.bincount(idx[j % 2 == 1], minlength=int(idx.max()) + 1)
        for off in np.nonzero(even - odd)[0]:
            e = lo + int(off)
            coeffs[e] = coeffs.get(e, 0) + int(even[off]) - int(odd[off])
    return symmetrize(LaurentPoly({2 * e: c for e, c in coeffs.items()}))


def _tridiagonal_det(w):
    # D_k = a_k (1 - t) D_{k-1} + t D_{k-2}
    one_minus_t = LaurentPoly({0: 1, 2: -1})
    t = LaurentPoly.t()
    prev, cur = LaurentPoly(), LaurentPoly({0: 1})
    for a in w:
        prev, cur = cur, a * one_minus_t * cur + t * prev
    return cur


def alexander_with_flag(w):
    """As :func:`alexander_from_word`, also reporting whether the mirror retry fired."""
    w = as_word(w)
    require_even(w)
    try:
        return symmetrize(_tridiagonal_det(w)), False
    except NotSymmetrizable:
        log.warning("Seifert determinant of %s not symmetrizable; retrying mirror", w)
    try:
        return symmetrize(_tridiagonal_det(negate_word(w))), True
    except NotSymmetrizable as exc:
        raise NotSymmetrizable(f"Seifert convention failed on {w} and its mirror") from exc


def alexander_from_word(w):
    return alexander_with_flag(w)[0]


@dataclass
class ValidationReport:
    p: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())


def validate_alexander(w, f, *, crosscheck_budget=config.CROSSCHECK_BUDGET):
    """
    Consistency gate for a computed Alexander polynomial of the D-knot w:
    f(1) = ±1, |f(-1)| = p, f palindromic, and (for small p) agreement with
    the closed-form sum.
    """
    knot = evaluate_word(w).knot
    report = ValidationReport(knot.p)
    try:
        report.checks["unit_at_1"] = abs(evaluate(f, 1)) == 1
        report.checks["determinant"] = abs(evaluate(f, -1)) == knot.p
    except (HalfExponentAtNonSquare, ZeroDivisionError):
        report.checks["unit_at_1"] = report.checks.get("unit_at_1", False)
        report.checks["determinant"] = False
    report.checks["palindromic"] = f.is_palindromic()
    if knot.p <= crosscheck_budget:
        report.checks["closed_form_agreement"] = equal_up_to_units(f, alexander_from_pq(knot))
    return report
