"""Binary words, codes, Hamming geometry, and the on-disk code format.

Words are fixed-length bit vectors with 1-indexed coordinates.  Internally
a word is an integer whose most significant bit (position ``n - 1``) is
coordinate 1, so numeric order on values equals lexicographic order on the
bit strings and the hex encoding falls out directly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO


class InputError(ValueError):
    """A precondition on operation inputs was violated."""


class ParseError(ValueError):
    """A code file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class StructureError(ValueError):
    """An operation would produce a structurally invalid code."""


class CapabilityError(RuntimeError):
    """The request exceeds a configured size cap of this toolkit."""


#: Exact all-pairs distance scans refuse codes larger than this.
PAIR_SCAN_CAP = 10_000

FILE_MAGIC = "# prepcode v1"


@dataclass(frozen=True, order=True)
class BinaryWord:
    """Fixed-length binary word; coordinate 1 is the most significant bit."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"word length must be >= 1, got {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise InputError(f"value {self.value:#x} out of range for n={self.n}")

    @classmethod
    def zeros(cls, n: int) -> "BinaryWord":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BinaryWord":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_support(cls, n: int, coords: Iterable[int]) -> "BinaryWord":
        value = 0
        for i in coords:
            if not 1 <= i <= n:
                raise InputError(f"coordinate {i} out of range 1..{n}")
            value |= 1 << (n - i)
        return cls(n, value)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BinaryWord":
        value = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise InputError(f"bit must be 0 or 1, got {b!r}")
            value = (value << 1) | b
            n += 1
        return cls(n, value)

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BinaryWord":
        nibbles = (n + 3) // 4
        if len(text) != nibbles:
            raise InputError(
                f"hex word {text!r} has {len(text)} nibbles, expected {nibbles}"
            )
        try:
            padded = int(text, 16)
        except ValueError:
            raise InputError(f"invalid hex word {text!r}") from None
        pad = 4 * nibbles - n
        if padded & ((1 << pad) - 1):
            raise InputError(f"hex word {text!r} has nonzero pad bits")
        return cls(n, padded >> pad)

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def support(self) -> tuple[int, ...]:
        n, v = self.n, self.value
        return tuple(i for i in range(1, n + 1) if (v >> (n - i)) & 1)

    def bit(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise InputError(f"coordinate {i} out of range 1..{self.n}")
        return (self.value >> (self.n - i)) & 1

    def to_hex(self) -> str:
        nibbles = (self.n + 3) // 4
        pad = 4 * nibbles - self.n
        return format(self.value << pad, f"0{nibbles}X")

    def bits(self) -> str:
        return format(self.value, f"0{self.n}b")

    def __xor__(self, other: "BinaryWord") -> "BinaryWord":
        if self.n != other.n:
            raise InputError(f"length mismatch: {self.n} vs {other.n}")
        return BinaryWord(self.n, self.value ^ other.value)

    def __str__(self) -> str:
        return self.to_hex()


def hamming_distance(a: BinaryWord, b: BinaryWord) -> int:
    """Number of coordinates where two equal-length words differ."""
    if a.n != b.n:
        raise InputError(f"length mismatch: {a.n} vs {b.n}")
    return (a.value ^ b.value).bit_count()


def min_distance(words, cap: int = PAIR_SCAN_CAP) -> int:
    """Exact minimum pairwise Hamming distance over a collection of words."""
    values = []
    n = None
    for w in words:
        if n is None:
            n = w.n
        elif w.n != n:
            raise InputError(f"length mismatch: {w.n} vs {n}")
        values.append(w.value)
    values = sorted(set(values))
    if len(values) < 2:
        raise InputError("min_distance needs at least 2 distinct words")
    if len(values) > cap:
        raise CapabilityError(
            f"{len(values)} words exceed the all-pairs scan cap {cap}"
        )
    best = n
    for i, v in enumerate(values):
        for u in values[i + 1:]:
            dist = (v ^ u).bit_count()
            if dist < best:
                best = dist
                if best == 1:
                    return 1
    return best


@dataclass(frozen=True)
class Code:
    """Immutable set of equal-length binary words with cached parameters."""

    n: int
    words: tuple[BinaryWord, ...]

    @classmethod
    def from_words(cls, words: Iterable[BinaryWord]) -> "Code":
        ws = sorted(set(words))
        if not ws:
            raise InputError("a code needs at least one word")
        n = ws[0].n
        for w in ws:
            if w.n != n:
                raise InputError(f"length mismatch: {w.n} vs {n}")
        return cls(n=n, words=tuple(ws))

    @property
    def M(self) -> int:
        return len(self.words)

    @cached_property
    def d(self) -> int:
        if self.M < 2:
            raise InputError("distance undefined for codes with fewer than 2 words")
        return min_distance(self.words)

    @cached_property
    def _values(self) -> frozenset:
        return frozenset(w.value for w in self.words)

    @property
    def reduced(self) -> bool:
        return 0 in self._values

    def __contains__(self, w: BinaryWord) -> bool:
        return w.n == self.n and w.value in self._values

    def __iter__(self):
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)


def weight_distribution(c: Code) -> dict[int, int]:
    """Map weight -> number of codewords of that weight."""
    counts: dict[int, int] = {}
    for w in c.words:
        wt = w.weight
        counts[wt] = counts.get(wt, 0) + 1
    return dict(sorted(counts.items()))


def translate(c: Code, t: BinaryWord) -> Code:
    """XOR every codeword with t; a Hamming isometry of the whole space."""
    if t.n != c.n:
        raise InputError(f"length mismatch: {t.n} vs {c.n}")
    return Code.from_words(BinaryWord(c.n, w.value ^ t.value) for w in c.words)


def puncture(c: Code, pos: int) -> Code:
    """Delete coordinate pos from every codeword.

    Refuses to puncture when two codewords would merge.
    """
    if not 1 <= pos <= c.n:
        raise InputError(f"coordinate {pos} out of range 1..{c.n}")
    if c.n < 2:
        raise InputError("cannot puncture a length-1 code")
    low_bits = c.n - pos  # bits strictly below the deleted coordinate
    low_mask = (1 << low_bits) - 1
    out = []
    for w in c.words:
        v = w.value
        out.append(BinaryWord(c.n - 1, ((v >> (low_bits + 1)) << low_bits) | (v & low_mask)))
    if len(set(out)) != c.M:
        raise StructureError(
            f"puncturing coordinate {pos} merges codewords"
        )
    return Code.from_words(out)


def write_code(c: Code, dest) -> None:
    """Write a code in the v1 text format (header + one hex word per line)."""
    if isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__"):
        with open(dest, "w", encoding="utf-8") as fh:
            write_code(c, fh)
        return
    d_text = "?"
    if c.M >= 2 and c.M <= PAIR_SCAN_CAP:
        d_text = str(c.d)
    dest.write(f"{FILE_MAGIC}\n")
    dest.write(f"n={c.n} m={c.M} d={d_text}\n")
    for w in c.words:
        dest.write(w.to_hex() + "\n")


def read_code(src) -> Code:
    """Parse a code file, validating the header against the content."""
    if isinstance(src, (str, bytes)) or hasattr(src, "__fspath__"):
        with open(src, "r", encoding="utf-8") as fh:
            return read_code(fh)
    return _parse_code(src)


def _parse_code(fh: TextIO) -> Code:
    line1 = fh.readline()
    if line1.rstrip("\n") != FILE_MAGIC:
        raise ParseError(f"expected {FILE_MAGIC!r} header", line=1)
    line2 = fh.readline().rstrip("\n")
    fields = line2.split()
    header: dict[str, str] = {}
    for f in fields:
        if "=" not in f:
            raise ParseError(f"malformed header field {f!r}", line=2)
        key, _, val = f.partition("=")
        header[key] = val
    try:
        n = int(header["n"])
        m = int(header["m"])
    except (KeyError, ValueError):
        raise ParseError(f"header needs integer n= and m=, got {line2!r}", line=2) from None
    d_text = header.get("d", "?")
    if n < 1:
        raise ParseError(f"invalid length n={n}", line=2)
    words = []
    seen = set()
    lineno = 2
    for raw in fh:
        lineno += 1
        text = raw.strip()
        if not text:
            continue
        try:
            w = BinaryWord.from_hex(n, text)
        except InputError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if w.value in seen:
            raise ParseError(f"duplicate word {text}", line=lineno)
        seen.add(w.value)
        words.append(w)
    if len(words) != m:
        raise ParseError(
            f"header says m={m} but file has {len(words)} words", line=lineno
        )
    code = Code.from_words(words)
    if d_text != "?":
        try:
            d_claimed = int(d_text)
        except ValueError:
            raise ParseError(f"invalid d={d_text!r} in header", line=2) from None
        if code.M >= 2 and code.M <= PAIR_SCAN_CAP and code.d != d_claimed:
            raise ParseError(
                f"header says d={d_claimed} but code has d={code.d}", line=2
            )
    return code


def code_to_text(c: Code) -> str:
    buf = io.StringIO()
    write_code(c, buf)
    return buf.getvalue()


def code_from_text(text: str) -> Code:
    return read_code(io.StringIO(text))
