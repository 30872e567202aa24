"""Construction of extended Preparata codes and derived codes.

A codeword of length 2^(m+1), m odd, is encoded as a pair of subsets
(X, Y) of GF(2^m): the first half of the word is the indicator vector of
X over the field elements 0..2^m-1 (element e sits at coordinate e+1),
the second half the indicator of Y.  Membership requires

    |X| and |Y| even,
    sum(X) = sum(Y),
    sum(x^3 for x in X) + (sum X)^3 = sum(y^3 for y in Y),

with all sums in GF(2^m).  This yields 2^(n - 2m - 2) codewords of
minimum distance 6; at m=3 (n=16) the code is the Nordstrom-Robinson
code, cross-checked here against the Gray image of the extended lifted
Hamming code over Z4.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .core import BinaryWord, Code, InputError, CapabilityError, weight_distribution
from .gf2m import FieldTable, field_new


class ConstructionError(RuntimeError):
    """Internal validation of a constructed code failed."""


@dataclass(frozen=True)
class PreparataSpec:
    """Parameters of one extended Preparata code in the subset-pair form."""

    m_field: int
    field: FieldTable

    @property
    def n(self) -> int:
        return 1 << (self.m_field + 1)

    @property
    def half(self) -> int:
        return 1 << self.m_field

    @property
    def expected_size(self) -> int:
        return 1 << (self.n - 2 * self.m_field - 2)


def preparata_spec(m_field: int, primpoly: int | None = None) -> PreparataSpec:
    if m_field < 3 or m_field % 2 == 0:
        raise InputError(f"field degree must be odd and >= 3, got {m_field}")
    return PreparataSpec(m_field=m_field, field=field_new(m_field, primpoly))


def _halves(spec: PreparataSpec, w: BinaryWord) -> tuple[int, int]:
    """Split a word into (X, Y) element bitmasks; bit e set means e is in."""
    if w.n != spec.n:
        raise InputError(f"word length {w.n} != code length {spec.n}")
    half = spec.half
    x_mask = 0
    y_mask = 0
    v = w.value
    for e in range(half):
        if (v >> (spec.n - 1 - e)) & 1:
            x_mask |= 1 << e
        if (v >> (half - 1 - e)) & 1:
            y_mask |= 1 << e
    return x_mask, y_mask


def _word_from_masks(spec: PreparataSpec, x_mask: int, y_mask: int) -> BinaryWord:
    half = spec.half
    v = 0
    for e in range(half):
        if (x_mask >> e) & 1:
            v |= 1 << (spec.n - 1 - e)
        if (y_mask >> e) & 1:
            v |= 1 << (half - 1 - e)
    return BinaryWord(spec.n, v)


def _mask_sums(field: FieldTable, mask: int) -> tuple[int, int]:
    """(sum, cube sum) of the field elements named by the mask bits."""
    s = 0
    c = 0
    e = 0
    while mask:
        if mask & 1:
            s ^= e
            c ^= field.cube(e)
        mask >>= 1
        e += 1
    return s, c


def is_member(spec: PreparataSpec, w: BinaryWord) -> bool:
    """Membership test straight from the subset-pair conditions; O(n) field ops."""
    x_mask, y_mask = _halves(spec, w)
    if x_mask.bit_count() % 2 or y_mask.bit_count() % 2:
        return False
    field = spec.field
    sx, cx = _mask_sums(field, x_mask)
    sy, cy = _mask_sums(field, y_mask)
    return sx == sy and cx ^ field.cube(sx) == cy


def build_extended_preparata(m_field: int, primpoly: int | None = None) -> Code:
    """Enumerate the full code; feasible only at m_field=3 (n=16, M=256)."""
    spec = preparata_spec(m_field, primpoly)
    if m_field != 3:
        raise CapabilityError(
            f"full enumeration is supported only at field degree 3, got {m_field}"
        )
    field = spec.field
    half = spec.half
    # Incremental (sum, cube sum) per subset mask.
    sums = [0] * (1 << half)
    cubes = [0] * (1 << half)
    for mask in range(1, 1 << half):
        low = mask & -mask
        e = low.bit_length() - 1
        rest = mask ^ low
        sums[mask] = sums[rest] ^ e
        cubes[mask] = cubes[rest] ^ field.cube(e)
    even = [mask for mask in range(1 << half) if mask.bit_count() % 2 == 0]
    by_sum: dict[int, list[int]] = {}
    for y in even:
        by_sum.setdefault(sums[y], []).append(y)
    words = []
    for x in even:
        sx = sums[x]
        target = cubes[x] ^ field.cube(sx)
        for y in by_sum.get(sx, ()):
            if cubes[y] == target:
                words.append(_word_from_masks(spec, x, y))
    code = Code.from_words(words)
    if code.M != spec.expected_size:
        raise ConstructionError(
            f"enumeration found {code.M} words, expected {spec.expected_size}"
        )
    return code


def reduce(c: Code) -> Code:
    """Translate by the lexicographically smallest codeword; result contains 0."""
    smallest = c.words[0]
    if smallest.value == 0:
        return c
    from .core import translate

    return translate(c, smallest)


# --- Z4 route: lifted Hamming generator, extended, Gray-mapped ------------

_Z4_CYCLIC_LEN = 7

#: Gray images of Z4 digits as (bit at i, bit at i + 8).
_GRAY = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}

_LEE = {0: 0, 1: 1, 2: 2, 3: 1}


def _poly_mul_z4(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % 4
    return out


def _poly_mod_z4(a: list[int], mod: list[int]) -> list[int]:
    # mod must be monic.
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % 4
        if c:
            for j, mj in enumerate(mod):
                a[i - dm + j] = (a[i - dm + j] - c * mj) % 4
    return [x % 4 for x in a[:dm]]


def hensel_lift_cubic(f_bits: int = 0b1011) -> list[int]:
    """Lift a degree-3 binary polynomial to Z4 by one Graeffe step.

    Returns coefficients [c0, c1, c2, c3] of the lift g with g = f mod 2
    and g(x) dividing x^7 - 1 over Z4.
    """
    f = [(f_bits >> i) & 1 for i in range(4)]
    neg = [((-1) ** i * f[i]) % 4 for i in range(4)]  # f(-x) coefficients
    prod = _poly_mul_z4(f, neg)  # even polynomial of degree 6
    # g(x^2) = -f(x) f(-x) for odd-degree f keeps g monic.
    g = [(-prod[2 * i]) % 4 for i in range(4)]
    x7m1 = [-1 % 4] + [0] * 6 + [1]
    if any(_poly_mod_z4(x7m1, g)):
        raise ConstructionError("lift does not divide x^7 - 1 over Z4")
    if any((g[i] - f[i]) % 2 for i in range(4)):
        raise ConstructionError("lift does not reduce to the binary polynomial")
    return g


def _z4_codewords(gen: list[int]) -> list[tuple[int, ...]]:
    """All Z4 multiples of gen modulo x^7 - 1, extended by a parity digit."""
    deg = len(gen) - 1
    k = _Z4_CYCLIC_LEN - deg
    words = set()
    for msg in range(4 ** k):
        m = []
        t = msg
        for _ in range(k):
            m.append(t % 4)
            t //= 4
        prod = _poly_mul_z4(m, gen)
        word = [0] * _Z4_CYCLIC_LEN
        for i, c in enumerate(prod):
            word[i % _Z4_CYCLIC_LEN] = (word[i % _Z4_CYCLIC_LEN] + c) % 4
        parity = (-sum(word)) % 4
        words.add(tuple(word + [parity]))
    return sorted(words)


def _gray_image(z4_word: tuple[int, ...]) -> BinaryWord:
    L = len(z4_word)
    v = 0
    n = 2 * L
    for i, digit in enumerate(z4_word):
        b1, b2 = _GRAY[digit]
        if b1:
            v |= 1 << (n - 1 - i)
        if b2:
            v |= 1 << (n - 1 - (i + L))
    return BinaryWord(n, v)


def build_nr_via_octacode() -> Code:
    """Gray image of the extended lifted-Hamming Z4 code of length 8.

    The construction is accepted only after validating self-duality,
    minimum Lee weight 6, and the expected Gray-image weight distribution.
    """
    gen = hensel_lift_cubic()
    z4 = _z4_codewords(gen)
    if len(z4) != 256:
        raise ConstructionError(f"Z4 code has {len(z4)} words, expected 256")
    # Self-duality: |C| = 4^4 plus pairwise orthogonality of all codewords.
    for u in z4:
        for v in z4:
            if sum(a * b for a, b in zip(u, v)) % 4:
                raise ConstructionError("Z4 code is not self-orthogonal")
    min_lee = min(
        sum(_LEE[d] for d in w) for w in z4 if any(w)
    )
    if min_lee != 6:
        raise ConstructionError(f"minimum Lee weight {min_lee}, expected 6")
    code = Code.from_words(_gray_image(w) for w in z4)
    expected_wd = {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}
    if weight_distribution(code) != expected_wd:
        raise ConstructionError("Gray image weight distribution is off")
    return code


# --- Randomized member sampling (membership-mode spot checks) -------------

def _random_even_mask(order: int, rng: Random) -> int:
    mask = rng.getrandbits(order)
    if mask.bit_count() % 2:
        mask ^= 1 << rng.randrange(order)
    return mask


def _completion_set(field: FieldTable, ds: int, dc: int, rng: Random) -> int | None:
    """A mask T of even size with sum(T) = ds and cubesum(T) = dc, or None.

    Toggling T into a subset fixes its (sum, cube sum) by (ds, dc) without
    changing size parity.  Tries the empty set, then pairs, then quadruples.
    """
    if ds == 0 and dc == 0:
        return 0
    order = field.order
    if ds != 0:
        start = rng.randrange(order)
        for off in range(order):
            a = (start + off) % order
            b = a ^ ds
            if a < b and field.cube(a) ^ field.cube(b) == dc:
                return (1 << a) | (1 << b)
    # Quadruple {a, b, c, a^b^c^ds}; iterate c for random a, b.
    for _ in range(64):
        a = rng.randrange(order)
        b = rng.randrange(order)
        if a == b:
            continue
        partial = field.cube(a) ^ field.cube(b)
        for c in range(order):
            e = a ^ b ^ c ^ ds
            elems = {a, b, c, e}
            if len(elems) != 4:
                continue
            if partial ^ field.cube(c) ^ field.cube(e) == dc:
                return (1 << a) | (1 << b) | (1 << c) | (1 << e)
    return None


def random_member(spec: PreparataSpec, rng: Random) -> BinaryWord:
    """Sample a codeword by completing a random (X, Y) pair to membership."""
    field = spec.field
    order = field.order
    while True:
        x_mask = _random_even_mask(order, rng)
        y_mask = _random_even_mask(order, rng)
        sx, cx = _mask_sums(field, x_mask)
        sy, cy = _mask_sums(field, y_mask)
        ds = sx ^ sy
        dc = cx ^ field.cube(sx) ^ cy
        t = _completion_set(field, ds, dc, rng)
        if t is None:
            continue
        w = _word_from_masks(spec, x_mask, y_mask ^ t)
        if not is_member(spec, w):
            raise ConstructionError("completion produced a non-member")
        return w


def random_even_nonmember(spec: PreparataSpec, rng: Random) -> BinaryWord:
    """Sample an even-weight word that provably fails one membership condition."""
    field = spec.field
    order = field.order
    kind = rng.randrange(3)
    if kind == 0:
        # Odd |X| and odd |Y|: even total weight, parity condition fails.
        x_mask = _random_even_mask(order, rng) ^ (1 << rng.randrange(order))
        y_mask = _random_even_mask(order, rng) ^ (1 << rng.randrange(order))
        return _word_from_masks(spec, x_mask, y_mask)
    member = random_member(spec, rng)
    x_mask, y_mask = _halves(spec, member)
    if kind == 1:
        # Break the sum condition: toggle a pair with nonzero element sum.
        a = rng.randrange(order)
        b = a ^ (rng.randrange(order - 1) + 1)
        w = _word_from_masks(spec, x_mask, y_mask ^ (1 << a) ^ (1 << b))
    else:
        # Keep sums, break the cube condition with a zero-sum quadruple.
        while True:
            a, b, c = (rng.randrange(order) for _ in range(3))
            e = a ^ b ^ c
            if len({a, b, c, e}) != 4:
                continue
            if field.cube(a) ^ field.cube(b) ^ field.cube(c) ^ field.cube(e):
                break
        t = (1 << a) | (1 << b) | (1 << c) | (1 << e)
        w = _word_from_masks(spec, x_mask, y_mask ^ t)
    if is_member(spec, w):
        raise ConstructionError("perturbation failed to leave the code")
    return w
