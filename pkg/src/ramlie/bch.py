"""Truncated Campbell-Hausdorff composition and the group it puts on the
underlying set of the Lie algebra.

circle(x, y) = log(exp(x) exp(y)) computed exactly in the truncated word
algebra; with class < p over Z/p^M both series are exact, so no hard-coded
series coefficients are needed, and the conversion back to Lyndon coordinates
doubles as a Lie-ness certificate for every composition.
"""

from __future__ import annotations

from .coeffring import truncated_exp, truncated_log
from .nilpotentlie import LieElement, from_assoc, lie_zero


class GroupElement:
    """Element of G(L): the set of L with the circle composition."""

    __slots__ = ("value",)

    def __init__(self, value: LieElement):
        self.value = value

    def __mul__(self, other):
        return GroupElement(circle(self.value, other.value))

    def inverse(self):
        return GroupElement(-self.value)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.value == other.value

    def __repr__(self):
        return f"GroupElement({self.value!r})"


def circle(x: LieElement, y: LieElement) -> LieElement:
    ring = x.algebra.ring
    ex = truncated_exp(x.to_assoc(), ring.p, ring.modulus)
    ey = truncated_exp(y.to_assoc(), ring.p, ring.modulus)
    return from_assoc(truncated_log(ex * ey, ring.p, ring.modulus))


def power(x: LieElement, e: int) -> LieElement:
    """e-fold circle composition (powers of one element commute, so
    square-and-multiply is sound)."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    acc = lie_zero(x.algebra)
    sq = x
    while e:
        if e & 1:
            acc = circle(acc, sq)
        e >>= 1
        if e:
            sq = circle(sq, sq)
    return acc
