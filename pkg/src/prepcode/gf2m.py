"""Arithmetic in GF(2^m) via exp/log tables.

Elements are represented as integers in [0, 2^m): the bits are the
coefficients of a polynomial over GF(2), reduced modulo a primitive
polynomial.  Addition is XOR; multiplication goes through the tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class FieldError(ValueError):
    """Bad field parameters (non-primitive modulus, out-of-range element)."""


#: Default primitive polynomials by extension degree (bitmask, MSB = x^m).
DEFAULT_MODULUS = {
    2: 0b111,        # x^2 + x + 1
    3: 0b1011,       # x^3 + x + 1
    4: 0b10011,      # x^4 + x + 1
    5: 0b100101,     # x^5 + x^2 + 1
    6: 0b1000011,    # x^6 + x + 1
    7: 0b10000011,   # x^7 + x + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
}


@dataclass(frozen=True)
class FieldTable:
    """Immutable GF(2^m) with exp/log tables over a primitive modulus."""

    m: int
    modulus: int
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.m

    def elements(self) -> range:
        return range(self.order)

    def _check(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise FieldError(f"element {a} out of range for GF(2^{self.m})")

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def cube(self, a: int) -> int:
        self._check(a)
        if a == 0:
            return 0
        return self.exp[(3 * self.log[a]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise FieldError("0 has no inverse")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.order - 1)]


def elem_sum(elems) -> int:
    """Sum of field elements (characteristic 2, i.e. an XOR fold)."""
    total = 0
    for a in elems:
        total ^= a
    return total


def field_new(m: int, modulus: int | None = None) -> FieldTable:
    """Build GF(2^m) tables, validating that the modulus is primitive.

    The table fill doubles as the primitivity check: x must have
    multiplicative order exactly 2^m - 1.
    """
    if not 2 <= m <= 8:
        raise FieldError(f"extension degree {m} out of supported range [2, 8]")
    if modulus is None:
        modulus = DEFAULT_MODULUS[m]
    if modulus.bit_length() != m + 1:
        raise FieldError(
            f"modulus {modulus:#b} does not have degree {m}"
        )
    size = 1 << m
    exp = [0] * (size - 1)
    log = [0] * size
    x = 1
    for i in range(size - 1):
        if x == 1 and i > 0:
            raise FieldError(
                f"modulus {modulus:#b} is not primitive: x has order {i}"
            )
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= modulus
    if x != 1:
        # x^(2^m - 1) != 1 means the modulus is not even irreducible.
        raise FieldError(f"modulus {modulus:#b} is not primitive")
    if len(set(exp)) != size - 1:
        raise FieldError(f"modulus {modulus:#b} is reducible")
    return FieldTable(m=m, modulus=modulus, exp=tuple(exp), log=tuple(log))
