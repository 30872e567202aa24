"""Weak isometry, isometry verification, and equivalence recovery.

A weak isometry between two codes of equal distance d is a codeword
bijection preserving the relation "distance equals d" in both directions,
i.e. an isomorphism of the minimal distance graphs.  An isometry preserves
all pairwise distances.  An equivalence is a space automorphism (coordinate
permutation plus translation) mapping one code onto the other.

Equivalence search enumerates translations of the reduced domain code by
its own codewords (the image of the zero word under any equivalence is a
codeword) and compares canonical certificates of codeword-coordinate
incidence graphs, colored by vertex side and codeword weight.  Certificates
are cached per code, so repeated searches against one base code reuse all
translation canonicalizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .core import BinaryWord, Code, InputError, translate, weight_distribution
from .graphs import Coloring, Graph, build_mdg, canonical_form, find_isomorphism


@dataclass(frozen=True)
class SpaceAutomorphism:
    """Coordinate permutation followed by a translation: F(x) = perm(x) ^ t."""

    perm: tuple[int, ...]  # perm[i-1] = image of coordinate i, 1-indexed
    t: BinaryWord

    def __post_init__(self):
        n = self.t.n
        if sorted(self.perm) != list(range(1, n + 1)):
            raise InputError("perm is not a permutation of 1..n")

    @property
    def n(self) -> int:
        return self.t.n

    @classmethod
    def identity(cls, n: int) -> "SpaceAutomorphism":
        return cls(perm=tuple(range(1, n + 1)), t=BinaryWord.zeros(n))

    @classmethod
    def random(cls, n: int, rng: Random) -> "SpaceAutomorphism":
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        return cls(perm=tuple(perm), t=BinaryWord(n, rng.getrandbits(n)))

    def apply_word(self, w: BinaryWord) -> BinaryWord:
        if w.n != self.n:
            raise InputError(f"length mismatch: {w.n} vs {self.n}")
        n = self.n
        v = w.value
        out = 0
        for i in range(1, n + 1):
            if (v >> (n - i)) & 1:
                out |= 1 << (n - self.perm[i - 1])
        return BinaryWord(n, out ^ self.t.value)

    def inverse(self) -> "SpaceAutomorphism":
        n = self.n
        inv = [0] * n
        for i, img in enumerate(self.perm, start=1):
            inv[img - 1] = i
        # F^-1(y) = perm^-1(y ^ t) = perm^-1(y) ^ perm^-1(t)
        t_back = 0
        tv = self.t.value
        for i in range(1, n + 1):
            if (tv >> (n - i)) & 1:
                t_back |= 1 << (n - inv[i - 1])
        return SpaceAutomorphism(perm=tuple(inv), t=BinaryWord(n, t_back))

    def to_json_dict(self) -> dict:
        return {"perm": list(self.perm), "t": self.t.to_hex()}

    @classmethod
    def from_json_dict(cls, data: dict, n: int) -> "SpaceAutomorphism":
        return cls(perm=tuple(data["perm"]), t=BinaryWord.from_hex(n, data["t"]))


def apply_automorphism(f: SpaceAutomorphism, c: Code) -> Code:
    if f.n != c.n:
        raise InputError(f"length mismatch: {f.n} vs {c.n}")
    return Code.from_words(f.apply_word(w) for w in c.words)


@dataclass(frozen=True)
class CodewordBijection:
    """Total bijection between the codewords of two equal-size codes."""

    source: Code
    target: Code
    pairs: tuple[tuple[BinaryWord, BinaryWord], ...]

    def __post_init__(self):
        if self.source.M != self.target.M or len(self.pairs) != self.source.M:
            raise InputError("mapping is not a bijection between the codes")
        src = {a.value for a, _ in self.pairs}
        dst = {b.value for _, b in self.pairs}
        if src != {w.value for w in self.source.words}:
            raise InputError("mapping domain is not exactly the source code")
        if dst != {w.value for w in self.target.words}:
            raise InputError("mapping range is not exactly the target code")

    def image(self, w: BinaryWord) -> BinaryWord:
        for a, b in self.pairs:
            if a.value == w.value:
                return b
        raise InputError(f"{w} is not in the mapping domain")

    def to_json_list(self) -> list[list[str]]:
        return [[a.to_hex(), b.to_hex()] for a, b in self.pairs]

    @classmethod
    def from_json_list(cls, data, source: Code, target: Code) -> "CodewordBijection":
        pairs = tuple(
            (BinaryWord.from_hex(source.n, a), BinaryWord.from_hex(target.n, b))
            for a, b in data
        )
        return cls(source=source, target=target, pairs=pairs)


def weak_isometry(c1: Code, c2: Code) -> CodewordBijection | None:
    """Bijection preserving d-adjacency both ways, via MDG isomorphism."""
    if c1.M != c2.M or c1.n != c2.n:
        return None
    if c1.d != c2.d:
        return None
    g1 = build_mdg(c1)
    g2 = build_mdg(c2)
    iso = find_isomorphism(g1.graph, g2.graph)
    if iso is None:
        return None
    pairs = tuple(
        (g1.words[v], g2.words[iso.mapping[v]]) for v in range(g1.n_vertices)
    )
    bijection = CodewordBijection(source=c1, target=c2, pairs=pairs)
    if not _preserves_d_adjacency(bijection, c1.d):
        raise AssertionError("MDG isomorphism failed d-adjacency re-verification")
    return bijection


def _preserves_d_adjacency(j: CodewordBijection, d: int) -> bool:
    pairs = j.pairs
    m = len(pairs)
    for a_idx in range(m):
        xa, ya = pairs[a_idx]
        for b_idx in range(a_idx + 1, m):
            xb, yb = pairs[b_idx]
            if ((xa.value ^ xb.value).bit_count() == d) != (
                (ya.value ^ yb.value).bit_count() == d
            ):
                return False
    return True


def verify_isometry(
    j: CodewordBijection,
) -> tuple[bool, tuple[BinaryWord, BinaryWord] | None]:
    """All-pairs distance comparison; returns the first violating pair."""
    pairs = j.pairs
    m = len(pairs)
    for a_idx in range(m):
        xa, ya = pairs[a_idx]
        for b_idx in range(a_idx + 1, m):
            xb, yb = pairs[b_idx]
            if (xa.value ^ xb.value).bit_count() != (ya.value ^ yb.value).bit_count():
                return False, (xa, xb)
    return True, None


# --- equivalence search -----------------------------------------------------

def _incidence_graph(c: Code) -> tuple[Graph, Coloring]:
    """Bipartite codeword-coordinate incidence graph with weight coloring."""
    m, n = c.M, c.n
    total = m + n
    rows = [0] * total
    for idx, w in enumerate(c.words):
        v = w.value
        for coord in range(1, n + 1):
            if (v >> (n - coord)) & 1:
                j = m + coord - 1
                rows[idx] |= 1 << j
                rows[j] |= 1 << idx
    by_weight: dict[int, list[int]] = {}
    for idx, w in enumerate(c.words):
        by_weight.setdefault(w.weight, []).append(idx)
    cells = [list(range(m, total))]
    cells.extend(by_weight[wt] for wt in sorted(by_weight))
    graph = Graph(n=total, adj=tuple(rows))
    return graph, Coloring.from_cells(cells, total)


_incidence_cache: dict[tuple[int, tuple[int, ...]], "CanonIncidence"] = {}


@dataclass(frozen=True)
class CanonIncidence:
    certificate: bytes
    order: tuple[int, ...]  # canonical position -> vertex index
    words: tuple[BinaryWord, ...]


def _canon_incidence(c: Code) -> CanonIncidence:
    key = (c.n, tuple(w.value for w in c.words))
    hit = _incidence_cache.get(key)
    if hit is not None:
        return hit
    graph, coloring = _incidence_graph(c)
    cf = canonical_form(graph, coloring)
    result = CanonIncidence(certificate=cf.certificate, order=cf.order, words=c.words)
    _incidence_cache[key] = result
    return result


def _permutation_between(a: CanonIncidence, b: CanonIncidence, n: int) -> tuple[int, ...]:
    """Coordinate permutation mapping code A onto code B, from the labelings."""
    m = len(a.words)
    pos_a = [0] * (m + n)
    for p, v in enumerate(a.order):
        pos_a[v] = p
    perm = [0] * n
    for coord in range(1, n + 1):
        vertex_a = m + coord - 1
        vertex_b = b.order[pos_a[vertex_a]]
        perm[coord - 1] = vertex_b - m + 1
    return tuple(perm)


def find_equivalence(c1: Code, c2: Code) -> SpaceAutomorphism | None:
    """Space automorphism F with F(c1) = c2, or None.

    Reduces both codes, then for each candidate image of the zero word
    compares incidence-graph certificates; a match yields the permutation,
    the translation follows, and the result is verified by exact set
    equality before being returned.
    """
    if c1.n != c2.n or c1.M != c2.M:
        return None
    if c1.M >= 2 and c2.M >= 2 and c1.d != c2.d:
        return None
    n = c1.n
    base1 = c1.words[0]  # lexicographically smallest; reduction translation
    base2 = c2.words[0]
    r1 = translate(c1, base1)
    r2 = translate(c2, base2)
    target = _canon_incidence(r2)
    target_wd = weight_distribution(r2)
    for u in r1.words:
        cand = translate(r1, u)
        if weight_distribution(cand) != target_wd:
            continue
        canon = _canon_incidence(cand)
        if canon.certificate != target.certificate:
            continue
        perm = _permutation_between(canon, target, n)
        # cand = c1 ^ base1 ^ u and perm(cand) = c2 ^ base2, so
        # F(x) = perm(x) ^ perm(base1 ^ u) ^ base2 maps c1 onto c2.
        shift = SpaceAutomorphism(perm=perm, t=BinaryWord.zeros(n))
        t_word = shift.apply_word(BinaryWord(n, base1.value ^ u.value)) ^ base2
        candidate = SpaceAutomorphism(perm=perm, t=t_word)
        if apply_automorphism(candidate, c1) != c2:
            raise AssertionError("certificate match produced a non-equivalence")
        return candidate
    return None
