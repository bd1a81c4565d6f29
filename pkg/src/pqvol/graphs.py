"""Simple graphs, their bipartite doubles, and polytope vertex maps.

Vertices are labeled 1..n throughout. Edges are unordered pairs stored as
sorted tuples, so every operation that returns a graph returns one with a
normalized edge set. Lattice points are plain integer tuples; their length is
their ambient dimension.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal

Edge = tuple[int, int]
LatticePoint = tuple[int, ...]


def _normalize_edge(e: Iterable[int]) -> Edge:
    u, v = e
    if u == v:
        raise ValueError(f"self-loop at vertex {u} is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 1..n."""

    n: int
    edges: frozenset[Edge]
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        normalized = frozenset(_normalize_edge(e) for e in self.edges)
        for u, v in normalized:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", normalized)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def sorted_edges(self) -> tuple[Edge, ...]:
        try:
            return self._cache["sorted_edges"]
        except KeyError:
            se = tuple(sorted(self.edges))
            self._cache["sorted_edges"] = se
            return se

    def _adj(self) -> tuple[tuple[int, ...], ...]:
        # index 0 unused; neighbor tuples are sorted ascending
        try:
            return self._cache["adj"]
        except KeyError:
            lists: list[list[int]] = [[] for _ in range(self.n + 1)]
            for u, v in self.edges:
                lists[u].append(v)
                lists[v].append(u)
            adj = tuple(tuple(sorted(l)) for l in lists)
            self._cache["adj"] = adj
            return adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj()[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return (min(u, v), max(u, v)) in self.edges

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges


def from_edge_list(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Build a graph on vertices 1..n from an iterable of endpoint pairs.

    Rejects self-loops and out-of-range labels; duplicate edges collapse.
    """
    return Graph(n, frozenset(_normalize_edge(e) for e in edges))


def graph_fingerprint(g: Graph) -> str:
    """Short stable identifier: vertex/edge counts plus an edge-set digest."""
    canon = f"n={g.n};" + ",".join(f"{u}-{v}" for u, v in g.sorted_edges)
    digest = hashlib.sha256(canon.encode()).hexdigest()[:12]
    return f"g{g.n}m{g.m}:{digest}"


# ---------------------------------------------------------------------------
# edge-list file format: header "n m", then m lines "u v"; '#' starts a comment


def parse_edge_list(text: str) -> Graph:
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected integers, got {raw!r}") from exc
    if not rows:
        raise ValueError("empty edge-list input")
    header = rows[0]
    if len(header) != 2:
        raise ValueError(f"header must be 'n m', got {header}")
    n, m = header
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header declares {m} edges but {len(body)} lines follow")
    for row in body:
        if len(row) != 2:
            raise ValueError(f"edge line must be 'u v', got {row}")
    return from_edge_list(n, body)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


# ---------------------------------------------------------------------------
# generators


def _gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return from_edge_list(n, [(i, i + 1) for i in range(1, n)])


def _gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return from_edge_list(n, [(i, i % n + 1) for i in range(1, n + 1)])


def _gen_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return from_edge_list(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def _gen_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite graph needs both sides nonempty")
    return from_edge_list(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def _gen_star(n: int) -> Graph:
    # K_{1,n-1} with center 1
    if n < 1:
        raise ValueError("star needs n >= 1")
    return from_edge_list(n, [(1, i) for i in range(2, n + 1)])


def _gen_wheel(n: int) -> Graph:
    # hub 1 joined to the cycle 2..n+1
    if n < 3:
        raise ValueError("wheel needs rim length n >= 3")
    return join(_gen_complete(1), _gen_cycle(n))


def _gen_complete_minus_matching(n: int, k: int) -> Graph:
    if n < 1 or k < 0 or 2 * k > n:
        raise ValueError(f"need 0 <= k <= n/2, got n={n}, k={k}")
    removed = {(2 * i - 1, 2 * i) for i in range(1, k + 1)}
    g = _gen_complete(n)
    return Graph(n, g.edges - removed)


def _gen_random_tree(n: int, rng: random.Random) -> Graph:
    if n < 1:
        raise ValueError("tree needs n >= 1")
    if n <= 2:
        return _gen_path(n)
    # Pruefer decoding gives the uniform distribution on labeled trees
    seq = [rng.randrange(1, n + 1) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(1, n + 1) if degree[v] == 1)
    import heapq

    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return from_edge_list(n, edges)


def _gen_random_outerplanar(n: int, rng: random.Random) -> Graph:
    """2-connected outerplane graph: outer cycle 1..n plus non-crossing chords.

    Chords come from recursive polygon splitting, so the sample always embeds
    with every vertex on the outer face and may contain faces whose boundary
    is made of chords only.
    """
    if n < 3:
        raise ValueError("outerplanar sample needs n >= 3")
    edges = [(i, i % n + 1) for i in range(1, n + 1)]

    def split(region: tuple[int, ...]) -> None:
        k = len(region)
        if k < 4 or rng.random() >= 0.6:
            return
        # region positions are cyclic; a valid chord skips at least one vertex
        # on both sides of the region boundary
        i = rng.randrange(0, k - 2)
        j = rng.randrange(i + 2, k if i > 0 else k - 1)
        edges.append((region[i], region[j]))
        split(region[i : j + 1])
        split(region[j:] + region[: i + 1])

    split(tuple(range(1, n + 1)))
    return from_edge_list(n, edges)


_FAMILY_ALIASES = {
    "kmm": "complete_minus_matching",
    "kn": "complete",
    "kmn": "complete_bipartite",
}

_FAMILY_ARITY = {
    "path": 1,
    "cycle": 1,
    "complete": 1,
    "complete_bipartite": 2,
    "star": 1,
    "wheel": 1,
    "complete_minus_matching": 2,
    "random_tree": 1,
    "random_outerplanar": 1,
}


def generate(family: str, *params: int, seed: int | None = None) -> Graph:
    """Build a named graph family member.

    Families: path, cycle, complete, complete_bipartite (a, b), star, wheel
    (rim length), complete_minus_matching (n, k), random_tree, random_outerplanar.
    The random families require a seed and are reproducible given one.
    """
    name = _FAMILY_ALIASES.get(family, family)
    if name not in _FAMILY_ARITY:
        raise ValueError(f"unknown family {family!r}")
    if len(params) != _FAMILY_ARITY[name]:
        raise ValueError(f"family {name} takes {_FAMILY_ARITY[name]} parameter(s), got {params}")
    if name == "path":
        return _gen_path(*params)
    if name == "cycle":
        return _gen_cycle(*params)
    if name == "complete":
        return _gen_complete(*params)
    if name == "complete_bipartite":
        return _gen_complete_bipartite(*params)
    if name == "star":
        return _gen_star(*params)
    if name == "wheel":
        return _gen_wheel(*params)
    if name == "complete_minus_matching":
        return _gen_complete_minus_matching(*params)
    if seed is None:
        raise ValueError(f"family {name} requires a seed")
    rng = random.Random(seed)
    if name == "random_tree":
        return _gen_random_tree(params[0], rng)
    return _gen_random_outerplanar(params[0], rng)


# ---------------------------------------------------------------------------
# connectivity and block structure


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, each ascending, ordered by minimum."""
    adj = g._adj()
    seen = [False] * (g.n + 1)
    comps: list[tuple[int, ...]] = []
    for start in range(1, g.n + 1):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def blocks_and_cut_vertices(g: Graph) -> tuple[list[frozenset[Edge]], set[int]]:
    """Biconnected components (as edge sets) and cut vertices, Hopcroft-Tarjan.

    Isolated vertices belong to no block. Bridges form single-edge blocks.
    Blocks are returned sorted by their smallest edge for determinism.
    """
    adj = g._adj()
    disc = [0] * (g.n + 1)  # 0 means unvisited; discovery times start at 1
    low = [0] * (g.n + 1)
    blocks: list[frozenset[Edge]] = []
    cuts: set[int] = set()
    edge_stack: list[Edge] = []
    timer = 1

    # iterative DFS so deep paths cannot hit the recursion limit
    for root in range(1, g.n + 1):
        if disc[root] or not adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        work: list[tuple[int, int, int]] = [(root, 0, 0)]  # vertex, parent, next nbr index
        while work:
            u, parent, i = work.pop()
            if i < len(adj[u]):
                work.append((u, parent, i + 1))
                w = adj[u][i]
                if w == parent:
                    continue
                if not disc[w]:
                    e = (u, w) if u < w else (w, u)
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    work.append((w, u, 0))
                elif disc[w] < disc[u]:
                    edge_stack.append((u, w) if u < w else (w, u))
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            else:
                if parent:
                    if low[u] < low[parent]:
                        low[parent] = low[u]
                    if low[u] >= disc[parent]:
                        if parent != root:
                            cuts.add(parent)
                        e = (u, parent) if u < parent else (parent, u)
                        blk = set()
                        while True:
                            f = edge_stack.pop()
                            blk.add(f)
                            if f == e:
                                break
                        blocks.append(frozenset(blk))
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=min)
    return blocks, cuts


def is_two_connected(g: Graph) -> bool:
    """True when g is connected with no cut vertex and n >= 2 (K_2 counts)."""
    if g.n < 2 or not is_connected(g):
        return False
    return not blocks_and_cut_vertices(g)[1]


# ---------------------------------------------------------------------------
# edit operations


def delete_edge(g: Graph, e: Iterable[int]) -> Graph:
    edge = _normalize_edge(e)
    if edge not in g.edges:
        raise ValueError(f"edge {edge} not in graph")
    return Graph(g.n, g.edges - {edge})


def add_edge(g: Graph, e: Iterable[int]) -> Graph:
    edge = _normalize_edge(e)
    g._check_vertex(edge[0])
    g._check_vertex(edge[1])
    if edge in g.edges:
        raise ValueError(f"edge {edge} already in graph")
    return Graph(g.n, g.edges | {edge})


def relabel_map_after_delete(n: int, v: int) -> dict[int, int]:
    """Order-preserving old->new labels used by delete_vertex."""
    return {u: u if u < v else u - 1 for u in range(1, n + 1) if u != v}


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove v and relabel the remaining vertices 1..n-1 preserving order."""
    g._check_vertex(v)
    if g.n == 1:
        raise ValueError("cannot delete the last vertex")
    remap = relabel_map_after_delete(g.n, v)
    edges = [(remap[u], remap[w]) for u, w in g.edges if u != v and w != v]
    return from_edge_list(g.n - 1, edges)


def block_subgraphs(g: Graph) -> list[Graph]:
    """Each block as its own graph, vertices relabeled 1..k order-preserving.

    Ordering follows blocks_and_cut_vertices, which sorts blocks by edge set,
    so the result is deterministic.
    """
    out = []
    blocks, _ = blocks_and_cut_vertices(g)
    for edge_set in blocks:
        verts = sorted({v for e in edge_set for v in e})
        remap = {v: i + 1 for i, v in enumerate(verts)}
        out.append(from_edge_list(len(verts), [(remap[u], remap[v]) for u, v in edge_set]))
    return out


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph relabeled 1..k by ascending original label."""
    keep = sorted(set(vertices))
    if not keep:
        raise ValueError("induced subgraph needs at least one vertex")
    for v in keep:
        g._check_vertex(v)
    remap = {v: i + 1 for i, v in enumerate(keep)}
    kept = set(keep)
    edges = [(remap[u], remap[w]) for u, w in g.edges if u in kept and w in kept]
    return from_edge_list(len(keep), edges)


def subdivide(g: Graph, e: Iterable[int]) -> Graph:
    """Replace edge uv with the path u, n+1, v. The new vertex gets label n+1."""
    u, v = _normalize_edge(e)
    if (u, v) not in g.edges:
        raise ValueError(f"edge ({u},{v}) not in graph")
    x = g.n + 1
    return Graph(g.n + 1, (g.edges - {(u, v)}) | {(u, x), (v, x)})


def triangle_join(g: Graph, e: Iterable[int]) -> Graph:
    """Glue a new triangle onto edge uv: add vertex n+1 adjacent to u and v."""
    u, v = _normalize_edge(e)
    if (u, v) not in g.edges:
        raise ValueError(f"edge ({u},{v}) not in graph")
    x = g.n + 1
    return Graph(g.n + 1, g.edges | {(u, x), (v, x)})


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """g + h with h's vertices shifted to n_g+1 .. n_g+n_h."""
    off = g.n
    edges = set(g.edges)
    edges.update((u + off, v + off) for u, v in h.edges)
    return Graph(g.n + h.n, frozenset(edges))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex sets."""
    off = g.n
    base = disjoint_union(g, h)
    cross = {(i, off + j) for i in range(1, off + 1) for j in range(1, h.n + 1)}
    return Graph(base.n, base.edges | cross)


def permute_vertices(g: Graph, perm: dict[int, int]) -> Graph:
    """Relabel by a permutation of 1..n (used to state invariance laws)."""
    if sorted(perm) != list(range(1, g.n + 1)) or sorted(perm.values()) != list(range(1, g.n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    return from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges])


# ---------------------------------------------------------------------------
# two-terminal (series-parallel) composition


@dataclass(frozen=True)
class TwoTerminal:
    """A graph with distinguished source and sink terminals."""

    graph: Graph
    source: int
    sink: int

    def __post_init__(self) -> None:
        self.graph._check_vertex(self.source)
        self.graph._check_vertex(self.sink)
        if self.source == self.sink:
            raise ValueError("source and sink must differ")


def two_terminal_edge() -> TwoTerminal:
    return TwoTerminal(from_edge_list(2, [(1, 2)]), 1, 2)


def sp_compose(kind: Literal["series", "parallel"], a: TwoTerminal, b: TwoTerminal) -> TwoTerminal:
    """Series or parallel composition of two-terminal graphs.

    Series identifies a.sink with b.source; parallel identifies both terminal
    pairs. b's interior vertices are appended after a's in label order.
    Duplicate edges created by parallel composition collapse (the polytope is
    unchanged by repeated edges).
    """
    if kind == "series":
        glued = {b.source: a.sink}
    elif kind == "parallel":
        glued = {b.source: a.source, b.sink: a.sink}
    else:
        raise ValueError(f"kind must be 'series' or 'parallel', got {kind!r}")
    remap: dict[int, int] = dict(glued)
    nxt = a.graph.n + 1
    for v in range(1, b.graph.n + 1):
        if v not in remap:
            remap[v] = nxt
            nxt += 1
    edges = set(a.graph.edges)
    for u, v in b.graph.edges:
        uu, vv = remap[u], remap[v]
        if uu == vv:
            raise ValueError("composition would create a self-loop")
        edges.add(_normalize_edge((uu, vv)))
    graph = Graph(nxt - 1, frozenset(edges))
    if kind == "series":
        return TwoTerminal(graph, a.source, remap[b.sink])
    return TwoTerminal(graph, a.source, a.sink)


# ---------------------------------------------------------------------------
# bipartite double cover D(G) and polytope vertex maps


@dataclass(frozen=True)
class BipartiteDouble:
    """Bipartite double of a graph, neighborhoods as right-side bitmasks.

    Left vertex i (1-based) has neighborhood mask ``neighborhoods[i-1]``; bit
    j-1 set means the barred right vertex j is adjacent. Every left vertex is
    adjacent to its own bar, so masks are never zero. Masks are arbitrary
    precision, so any practical n fits.
    """

    n: int
    neighborhoods: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def neighborhood_mask(self, i: int) -> int:
        if not (1 <= i <= self.n):
            raise ValueError(f"vertex {i} out of range for n={self.n}")
        return self.neighborhoods[i - 1]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All (i, jbar) adjacencies as label pairs, sorted."""
        out = []
        for i, mask in enumerate(self.neighborhoods, start=1):
            m = mask
            while m:
                b = m & -m
                out.append((i, b.bit_length()))
                m ^= b
        return tuple(sorted(out))

    def __hash__(self) -> int:
        return hash((self.n, self.neighborhoods))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteDouble):
            return NotImplemented
        return self.n == other.n and self.neighborhoods == other.neighborhoods


def build_double(g: Graph) -> BipartiteDouble:
    """D(G): left i is adjacent to jbar exactly when i = j or ij is an edge."""
    masks = [1 << (i - 1) for i in range(1, g.n + 1)]
    for u, v in g.edges:
        masks[u - 1] |= 1 << (v - 1)
        masks[v - 1] |= 1 << (u - 1)
    return BipartiteDouble(g.n, tuple(masks))


def vertices_pq(g: Graph) -> tuple[LatticePoint, ...]:
    """Vertices (e_i, e_j) of the adjacency polytope, for i = j or ij an edge.

    Points live in R^{2n}; ordered pairs are sorted, so the list length is
    n + 2m.
    """
    pairs = [(i, i) for i in range(1, g.n + 1)]
    for u, v in g.edges:
        pairs.append((u, v))
        pairs.append((v, u))
    pairs.sort()
    out = []
    for i, j in pairs:
        coords = [0] * (2 * g.n)
        coords[i - 1] += 1
        coords[g.n + j - 1] += 1
        out.append(tuple(coords))
    return tuple(out)


def vertices_root(d: BipartiteDouble) -> tuple[LatticePoint, ...]:
    """Root-polytope vertices e_i - e_jbar of D(G), same order as vertices_pq.

    Identifying e_jbar with -e_{n+j} carries these to the adjacency polytope
    vertices, which is the unimodular equivalence the volume count rests on.
    """
    out = []
    for i, j in d.edges():
        coords = [0] * (2 * d.n)
        coords[i - 1] = 1
        coords[d.n + j - 1] = -1
        out.append(tuple(coords))
    return tuple(out)
