"""Minimal distance graphs, color refinement, canonical labeling, isomorphism.

The canonical labeling engine is an individualization-refinement backtracker:
vertices of a target cell are individualized one at a time, partitions are
refined to equitability, and the minimum (invariant path, relabeled adjacency
bytes) over all leaves is the canonical form.  Discovered automorphisms prune
sibling branches (orbit pruning) and allow backjumps to the deepest ancestor
shared with the first root-to-leaf path.  Certificates of two graphs are
equal if and only if the graphs are isomorphic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import BinaryWord, CapabilityError, Code, InputError

#: canonical_form refuses graphs larger than this many vertices.
VERTEX_CAP = 4096

#: Upper bound on stored automorphism generators (pruning quality knob).
MAX_GENERATORS = 512


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adjacency stored as one bitmask per vertex."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"loop at vertex {u} not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n=n, adj=tuple(rows))

    @property
    def n_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)


@dataclass(frozen=True)
class MinDistGraph:
    """Graph on codewords with edges between pairs at distance exactly d."""

    graph: Graph
    words: tuple[BinaryWord, ...]
    d: int

    @property
    def n_vertices(self) -> int:
        return self.graph.n


def build_mdg(c: Code) -> MinDistGraph:
    """Exact d-adjacency by all-pairs scan over the codewords."""
    d = c.d  # raises for degenerate codes
    values = [w.value for w in c.words]
    m = len(values)
    rows = [0] * m
    for i in range(m):
        vi = values[i]
        for j in range(i + 1, m):
            if (vi ^ values[j]).bit_count() == d:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return MinDistGraph(graph=Graph(n=m, adj=tuple(rows)), words=c.words, d=d)


@dataclass(frozen=True)
class Coloring:
    """Ordered partition of the vertex set into color classes."""

    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def trivial(cls, n: int) -> "Coloring":
        return cls(cells=(tuple(range(n)),))

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]], n: int) -> "Coloring":
        seen: set[int] = set()
        out = []
        for cell in cells:
            tc = tuple(sorted(cell))
            if not tc:
                continue
            if seen & set(tc):
                raise InputError("coloring cells overlap")
            seen.update(tc)
            out.append(tc)
        if seen != set(range(n)):
            raise InputError("coloring does not cover all vertices")
        return cls(cells=tuple(out))

    def color_of(self) -> dict[int, int]:
        return {v: i for i, cell in enumerate(self.cells) for v in cell}


def _cell_mask(cell) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(adj: Sequence[int], cells: list[list[int]], splitters=None) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Splits every cell by neighbor counts into each splitter, queueing newly
    created cells as further splitters.  Sub-cells replace their parent in
    place, ordered by count, so the cell order is isomorphism-invariant.
    """
    if splitters is None:
        queue = deque(_cell_mask(c) for c in cells)
    else:
        queue = deque(splitters)
    while queue:
        smask = queue.popleft()
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                for key in sorted(groups):
                    sub = groups[key]
                    new_cells.append(sub)
                    queue.append(_cell_mask(sub))
        cells = new_cells
    return cells


def color_refinement(g: Graph, initial: Coloring | None = None) -> Coloring:
    """Coarsest stable coloring refining the initial one."""
    if initial is None:
        initial = Coloring.trivial(g.n)
    cells = _refine(g.adj, [list(c) for c in initial.cells])
    return Coloring(cells=tuple(tuple(c) for c in cells))


def _node_invariant(adj, cells) -> tuple:
    sizes = tuple(len(c) for c in cells)
    degs = tuple(adj[c[0]].bit_count() for c in cells)
    return (sizes, degs)


def _leaf_bytes(adj, cells, nbytes: int) -> tuple[bytes, list[int]]:
    """Adjacency of the relabeled graph, row-major, plus position->vertex."""
    order = [c[0] for c in cells]
    pos = [0] * len(adj)
    for p, v in enumerate(order):
        pos[v] = p
    chunks = []
    for v in order:
        m = adj[v]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        chunks.append(r.to_bytes(nbytes, "big"))
    return b"".join(chunks), order


def _is_automorphism(adj: Sequence[int], g: Sequence[int]) -> bool:
    for u in range(len(adj)):
        img = 0
        m = adj[u]
        while m:
            low = m & -m
            img |= 1 << g[low.bit_length() - 1]
            m ^= low
        if img != adj[g[u]]:
            return False
    return True


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _CanonSearch:
    """One canonical labeling run (individualization-refinement backtracking)."""

    def __init__(self, adj: Sequence[int], initial_cells: list[list[int]]):
        self.adj = adj
        self.n = len(adj)
        self.nbytes = (self.n + 7) // 8
        self.root_cells = _refine(adj, initial_cells)
        self.first_path: list[int] | None = None
        self.first_invpath: tuple | None = None
        self.first_bytes: bytes | None = None
        self.first_order: list[int] | None = None
        self.best_invpath: tuple | None = None
        self.best_bytes: bytes | None = None
        self.best_order: list[int] | None = None
        self.gens: list[tuple[int, ...]] = []

    def run(self) -> tuple[bytes, list[int]]:
        root_inv = (_node_invariant(self.adj, self.root_cells),)
        self._dfs(self.root_cells, [], root_inv)
        assert self.best_bytes is not None and self.best_order is not None
        return self.best_bytes, self.best_order

    # -- leaf handling ------------------------------------------------------

    def _handle_leaf(self, cells, path, invpath) -> int:
        leaf, order = _leaf_bytes(self.adj, cells, self.nbytes)
        depth = len(path)
        if self.first_bytes is None:
            self.first_path = list(path)
            self.first_invpath = invpath
            self.first_bytes = leaf
            self.first_order = order
            self.best_invpath = invpath
            self.best_bytes = leaf
            self.best_order = order
            return depth - 1
        if leaf == self.first_bytes and invpath == self.first_invpath:
            self._add_generator(order, self.first_order)
            # Resume next to the deepest ancestor shared with the first path.
            common = 0
            fp = self.first_path
            while common < depth and common < len(fp) and path[common] == fp[common]:
                common += 1
            return common
        if (invpath, leaf) < (self.best_invpath, self.best_bytes):
            self.best_invpath = invpath
            self.best_bytes = leaf
            self.best_order = order
        elif leaf == self.best_bytes and invpath == self.best_invpath:
            self._add_generator(order, self.best_order)
        return depth - 1

    def _add_generator(self, order_a: list[int], order_b: list[int]) -> None:
        """Record the automorphism mapping leaf A onto leaf B."""
        if order_b is None or len(self.gens) >= MAX_GENERATORS:
            return
        g = [0] * self.n
        for p, v in enumerate(order_a):
            g[v] = order_b[p]
        if not _is_automorphism(self.adj, g):
            raise AssertionError("equal leaf certificates produced a non-automorphism")
        self.gens.append(tuple(g))

    # -- search -------------------------------------------------------------

    def _dfs(self, cells, path: list[int], invpath: tuple) -> int:
        depth = len(path)
        if self.best_invpath is not None:
            k = min(len(invpath), len(self.best_invpath))
            head, best_head = invpath[:k], self.best_invpath[:k]
            if head > best_head:
                return depth - 1
        target = -1
        target_size = self.n + 1
        for i, cell in enumerate(cells):
            sz = len(cell)
            if 1 < sz < target_size:
                target, target_size = i, sz
        if target < 0:
            return self._handle_leaf(cells, path, invpath)
        candidates = sorted(cells[target])
        uf: _UnionFind | None = None
        uf_gen_count = -1
        tried_reps: set[int] = set()
        tried: list[int] = []
        for v in candidates:
            if tried:
                if uf is None or uf_gen_count != len(self.gens):
                    uf = self._prefix_orbits(path)
                    uf_gen_count = len(self.gens)
                    tried_reps = {uf.find(u) for u in tried}
                if uf.find(v) in tried_reps:
                    tried.append(v)
                    continue
            child = [list(c) for c in cells]
            rest = [u for u in child[target] if u != v]
            child[target:target + 1] = [[v], rest]
            child = _refine(self.adj, child, [1 << v, _cell_mask(rest)])
            child_inv = invpath + (_node_invariant(self.adj, child),)
            jump = self._dfs(child, path + [v], child_inv)
            tried.append(v)
            if uf is not None:
                tried_reps.add(uf.find(v))
            if jump < depth:
                return jump
        return depth - 1

    def _prefix_orbits(self, path: list[int]) -> _UnionFind:
        uf = _UnionFind(self.n)
        for g in self.gens:
            ok = True
            for v in path:
                if g[v] != v:
                    ok = False
                    break
            if ok:
                for v in range(self.n):
                    uf.union(v, g[v])
        return uf


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical labeling plus an exact isomorphism certificate."""

    certificate: bytes
    labeling: tuple[int, ...]  # vertex -> canonical position
    order: tuple[int, ...] = field(repr=False)  # canonical position -> vertex


def canonical_form(
    g: Graph, initial: Coloring | None = None, cap: int = VERTEX_CAP
) -> CanonicalForm:
    """Canonical form of a (possibly colored) graph by full backtracking."""
    if g.n > cap:
        raise CapabilityError(f"{g.n} vertices exceed the canonicalization cap {cap}")
    if initial is None:
        initial = Coloring.trivial(g.n)
    search = _CanonSearch(g.adj, [list(c) for c in initial.cells])
    leaf_bytes, order = search.run()
    header = g.n.to_bytes(4, "big") + len(initial.cells).to_bytes(4, "big")
    header += b"".join(len(c).to_bytes(4, "big") for c in initial.cells)
    labeling = [0] * g.n
    for p, v in enumerate(order):
        labeling[v] = p
    return CanonicalForm(
        certificate=header + leaf_bytes,
        labeling=tuple(labeling),
        order=tuple(order),
    )


@dataclass(frozen=True)
class GraphIsomorphism:
    """Vertex bijection between two graphs, verified edge-exactly."""

    mapping: tuple[int, ...]  # vertex of g1 -> vertex of g2


def _is_isomorphism(g1: Graph, g2: Graph, mapping: Sequence[int]) -> bool:
    if g1.n != g2.n or sorted(mapping) != list(range(g1.n)):
        return False
    for u in range(g1.n):
        img = 0
        m = g1.adj[u]
        while m:
            low = m & -m
            img |= 1 << mapping[low.bit_length() - 1]
            m ^= low
        if img != g2.adj[mapping[u]]:
            return False
    return True


def find_isomorphism(
    g1: Graph,
    g2: Graph,
    initial1: Coloring | None = None,
    initial2: Coloring | None = None,
    cap: int = VERTEX_CAP,
) -> GraphIsomorphism | None:
    """Explicit isomorphism assembled from the two canonical labelings."""
    if g1.n != g2.n or g1.n_edges != g2.n_edges:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    c1 = canonical_form(g1, initial1, cap=cap)
    c2 = canonical_form(g2, initial2, cap=cap)
    if c1.certificate != c2.certificate:
        return None
    mapping = tuple(c2.order[c1.labeling[v]] for v in range(g1.n))
    if not _is_isomorphism(g1, g2, mapping):
        raise AssertionError("canonical labelings disagree with certificate match")
    return GraphIsomorphism(mapping=mapping)


def to_dimacs(mdg: MinDistGraph) -> str:
    """DIMACS-like text: p-line, per-vertex word annotations, edge lines."""
    g = mdg.graph
    lines = [f"p edge {g.n} {g.n_edges}"]
    for i, w in enumerate(mdg.words, start=1):
        lines.append(f"c v {i} {w.to_hex()}")
    for u in range(g.n):
        m = g.adj[u] >> (u + 1)
        v = u + 1
        while m:
            if m & 1:
                lines.append(f"e {u + 1} {v + 1}")
            m >>= 1
            v += 1
    return "\n".join(lines) + "\n"
