"""
Formal Seiberg-Witten polynomials.

Knot surgery multiplies the invariant of the base by the symmetrized
Alexander polynomial; the Z/p-quotient of the covering construction has
invariant Delta(tau) Delta(-tau).  Everything here is Laurent-polynomial
algebra; the variables are formal (t = exp(2[T]), tau = exp([F])).
"""

from dataclasses import dataclass

from .laurent import ONE, equal_up_to_units, substitute_neg, symmetrize

#: Invariant of the K3 surface, the default base manifold.
K3_SW = ONE


@dataclass(frozen=True)
class FormalSW:
    poly: object

    def __str__(self):
        return str(self.poly)


def sw_knot_surgery(sw_base, alex):
    return FormalSW(symmetrize(sw_base * alex))


def sw_covering_base(alex):
    return FormalSW(symmetrize(alex * substitute_neg(alex)))


def sw_equal(a, b):
    return equal_up_to_units(a.poly, b.poly)
