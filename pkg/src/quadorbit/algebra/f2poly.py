"""Polynomials over the field with two elements, packed into Python ints.

Bit i of the backing integer is the coefficient of the i-th power, so the
zero polynomial is 0 and the constant 1 is 1.  Only the small amount of
arithmetic the mod-2 reduction tricks need lives here.
"""

from __future__ import annotations

from .intpoly import IntPolynomial


class F2Polynomial:
    """Polynomial over GF(2) backed by a nonnegative int bitmask."""

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if bits < 0:
            raise ValueError("bitmask must be nonnegative")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("F2Polynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == 1

    def derivative(self) -> "F2Polynomial":
        # Terms of even exponent vanish; bit i (odd) moves to bit i-1.
        out = 0
        bits = self.bits >> 1
        exp = 0
        while bits:
            if bits & 1:
                out |= 1 << exp
            bits >>= 2
            exp += 2
        return F2Polynomial(out)

    def __add__(self, other: "F2Polynomial") -> "F2Polynomial":
        return F2Polynomial(self.bits ^ other.bits)

    __sub__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, F2Polynomial):
            return self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("F2Polynomial", self.bits))

    def __repr__(self) -> str:
        return f"F2Polynomial(0b{self.bits:b})"

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            if (self.bits >> i) & 1:
                parts.append("1" if i == 0 else ("t" if i == 1 else f"t^{i}"))
        return "+".join(parts)


def reduce_mod2(poly: IntPolynomial) -> F2Polynomial:
    """Reduce every coefficient mod 2."""
    bits = 0
    for i, c in enumerate(poly.coeffs):
        if c & 1:
            bits |= 1 << i
    return F2Polynomial(bits)
