"""Outerplanarity recognition and the outer-face volume formula.

A graph is outerplanar exactly when it contains no subdivision of K_4 or
K_{2,3}; recognition searches for those subdivisions directly. For a
2-connected outerplanar graph the Hamiltonian outer cycle is unique, its
remaining edges are non-crossing chords, and the chords cut the polygon into
bounded faces. Each face F contributes its boundary length as the degree of
the corresponding extended-weak-dual vertex, and the volume of the block is

    2^(n - |faces| - 1) * product of face boundary lengths.

The value is conjectural when some bounded face has no edge on the outer
cycle; callers receive that flag and must not treat the number as proven.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .draconian import ResourceCapExceeded
from .graphs import (
    Graph,
    add_edge,
    block_subgraphs,
    delete_vertex,
    is_two_connected,
    relabel_map_after_delete,
)

__all__ = [
    "Face",
    "NotOuterplanarError",
    "NotTwoConnectedError",
    "OuterStructure",
    "ewd_degrees",
    "is_outerplanar",
    "nvol_outerplanar",
    "outer_structure",
]

# Recognition is a backtracking subdivision search, fine at desk scale but
# not beyond; refuse inputs where the candidate branch sets explode.
_RECOGNITION_CAP = 32


class NotTwoConnectedError(ValueError):
    """The operation requires a 2-connected input."""


class NotOuterplanarError(ValueError):
    """The operation requires an outerplanar input."""


@dataclass(frozen=True)
class Face:
    """A bounded face: its boundary cycle, length, and outer-edge count."""

    vertices: tuple[int, ...]
    boundary_length: int
    outer_edges: int


@dataclass(frozen=True)
class OuterStructure:
    """Outer cycle, chords, and bounded faces of a 2-connected block."""

    outer_cycle: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]
    faces: tuple[Face, ...]

    def validate(self) -> None:
        n = len(self.outer_cycle)
        if len(self.faces) != len(self.chords) + 1:
            raise RuntimeError("face count must be chord count + 1")
        if sum(f.outer_edges for f in self.faces) != n:
            raise RuntimeError("outer edges must partition across faces")
        if sum(f.boundary_length for f in self.faces) != n + 2 * len(self.chords):
            raise RuntimeError("boundary lengths must cover cycle and chords twice")
        pos = {v: i for i, v in enumerate(self.outer_cycle)}
        for (a, b), (c, d) in combinations(self.chords, 2):
            pa, pb = sorted((pos[a], pos[b]))
            pc, pd = sorted((pos[c], pos[d]))
            if (pa < pc < pb < pd) or (pc < pa < pd < pb):
                raise RuntimeError(f"chords {(a, b)} and {(c, d)} cross")

    def serialize(self) -> str:
        lines = ["outer-cycle: " + " ".join(str(v) for v in self.outer_cycle)]
        lines.append(
            "chords: " + (" ".join(f"{a}-{b}" for a, b in self.chords) or "(none)")
        )
        for f in self.faces:
            verts = " ".join(str(v) for v in f.vertices)
            lines.append(
                f"face: vertices={verts} length={f.boundary_length} outer={f.outer_edges}"
            )
        return "\n".join(lines) + "\n"


def _disjoint_paths(g: Graph, pairs, branch: frozenset[int]) -> bool:
    """Can the terminal pairs be joined by internally disjoint paths?

    Internal vertices must avoid the branch set and each other; endpoints are
    shared freely. Plain backtracking over the pairs.
    """
    adj = {v: sorted(g.neighbors(v)) for v in range(1, g.n + 1)}
    used = set()

    def connect(k: int) -> bool:
        if k == len(pairs):
            return True
        s, t = pairs[k]

        def walk(v: int, taken: list[int]) -> bool:
            for w in adj[v]:
                if w == t:
                    if connect(k + 1):
                        return True
                elif w not in branch and w not in used:
                    used.add(w)
                    taken.append(w)
                    if walk(w, taken):
                        return True
                    used.discard(w)
                    taken.pop()
            return False

        return walk(s, [])

    return connect(0)


def _has_k4_subdivision(g: Graph) -> bool:
    rich = [v for v in range(1, g.n + 1) if g.degree(v) >= 3]
    for quad in combinations(rich, 4):
        branch = frozenset(quad)
        pairs = list(combinations(quad, 2))
        if _disjoint_paths(g, pairs, branch):
            return True
    return False


def _has_k23_subdivision(g: Graph) -> bool:
    rich = [v for v in range(1, g.n + 1) if g.degree(v) >= 3]
    mid_pool = [v for v in range(1, g.n + 1) if g.degree(v) >= 2]
    for a, b in combinations(rich, 2):
        for mids in combinations([v for v in mid_pool if v != a and v != b], 3):
            branch = frozenset((a, b, *mids))
            pairs = [(a, x) for x in mids] + [(b, x) for x in mids]
            if _disjoint_paths(g, pairs, branch):
                return True
    return False


def is_outerplanar(g: Graph) -> bool:
    """True iff no subgraph is a subdivision of K_4 or K_{2,3}.

    Any such subdivision is 2-connected, so each block is searched on its
    own; blocks violating the outerplanar edge bound m <= 2n - 3 fail fast
    (they necessarily contain a forbidden subdivision).
    """
    if g.n > _RECOGNITION_CAP:
        raise ResourceCapExceeded(
            f"outerplanarity search on {g.n} vertices exceeds the cap of "
            f"{_RECOGNITION_CAP}"
        )
    for block in block_subgraphs(g):
        if block.n < 4:
            continue
        if block.m > 2 * block.n - 3:
            return False
        if _has_k4_subdivision(block) or _has_k23_subdivision(block):
            return False
    return True


def _recover_cycle(g: Graph) -> tuple[int, ...]:
    """Unique Hamiltonian cycle of a 2-connected outerplanar graph.

    Peel a degree-2 vertex, bridge its neighbors, recurse, and reinsert; the
    neighbors of the peeled vertex are consecutive on the smaller cycle.
    """
    if g.n == 3:
        return (1, 2, 3)
    x = next(v for v in range(1, g.n + 1) if g.degree(v) == 2)
    v, w = sorted(g.neighbors(x))
    smaller = delete_vertex(g, x)
    remap = relabel_map_after_delete(g.n, x)
    pair = (remap[v], remap[w])
    if not smaller.has_edge(*pair):
        smaller = add_edge(smaller, pair)
    inner = _recover_cycle(smaller)
    back = {new: old for old, new in remap.items()}
    cycle = [back[y] for y in inner]
    i = cycle.index(v)
    j = cycle.index(w)
    if (i + 1) % len(cycle) == j:
        cycle.insert(j, x)
    elif (j + 1) % len(cycle) == i:
        cycle.insert(i, x)
    else:
        raise RuntimeError("peeled neighbors not adjacent on recovered cycle")
    return tuple(cycle)


def _canonical_rotation(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Start at vertex 1 and walk toward its smaller cycle neighbor."""
    k = len(cycle)
    i = cycle.index(1)
    forward = tuple(cycle[(i + d) % k] for d in range(k))
    backward = tuple(cycle[(i - d) % k] for d in range(k))
    return forward if forward[1] < backward[1] else backward


def _split_regions(region: tuple[int, ...], edges: frozenset) -> list[tuple[int, ...]]:
    k = len(region)
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            a, b = region[i], region[j]
            e = (a, b) if a < b else (b, a)
            if e in edges:
                left = region[i : j + 1]
                right = region[j:] + region[: i + 1]
                return _split_regions(left, edges) + _split_regions(right, edges)
    return [region]


def _face_canonical(face: tuple[int, ...]) -> tuple[int, ...]:
    i = face.index(min(face))
    return face[i:] + face[:i]


def outer_structure(g: Graph) -> OuterStructure:
    """Outer cycle, chords, and bounded faces of a 2-connected outerplanar graph."""
    if g.n < 3 or not is_two_connected(g):
        raise NotTwoConnectedError(
            f"outer structure needs a 2-connected graph on >= 3 vertices, got "
            f"n={g.n}, m={g.m}"
        )
    if not is_outerplanar(g):
        raise NotOuterplanarError("graph contains a K_4 or K_{2,3} subdivision")
    cycle = _canonical_rotation(_recover_cycle(g))
    n = g.n
    cycle_edges = set()
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        cycle_edges.add((a, b) if a < b else (b, a))
    chords = tuple(sorted(e for e in g.edges if e not in cycle_edges))

    faces = []
    for region in _split_regions(cycle, g.edges):
        verts = _face_canonical(region)
        k = len(verts)
        outer = 0
        for i in range(k):
            a, b = verts[i], verts[(i + 1) % k]
            e = (a, b) if a < b else (b, a)
            if e in cycle_edges:
                outer += 1
        faces.append(Face(vertices=verts, boundary_length=k, outer_edges=outer))
    faces.sort(key=lambda f: f.vertices)

    structure = OuterStructure(outer_cycle=cycle, chords=chords, faces=tuple(faces))
    structure.validate()
    return structure


def ewd_degrees(s: OuterStructure) -> list[int]:
    """Extended-weak-dual degree of each bounded face's vertex.

    Every boundary edge of a face contributes one ewd neighbor: the bounded
    face across a chord, or the pendant leaf attached across an outer edge.
    The degree therefore equals the boundary length.
    """
    return [f.boundary_length for f in s.faces]


def _block_value(block: Graph) -> tuple[int, bool]:
    if block.n == 2:
        return 2, False
    s = outer_structure(block)
    value = 1 << (block.n - len(s.faces) - 1)
    for d in ewd_degrees(s):
        value *= d
    conjectural = any(f.outer_edges == 0 for f in s.faces)
    return value, conjectural


def nvol_outerplanar(g: Graph) -> tuple[int, bool]:
    """Volume of an outerplanar graph by the face-product formula.

    Multiplies over components and blocks; a single-edge block contributes 2
    (the formula's exponent n - |faces| - 1 covers it uniformly). The result
    is flagged conjectural when any bounded face misses the outer cycle.
    """
    if not is_outerplanar(g):
        raise NotOuterplanarError("graph contains a K_4 or K_{2,3} subdivision")
    value = 1
    conjectural = False
    for block in block_subgraphs(g):
        bval, bconj = _block_value(block)
        value *= bval
        conjectural = conjectural or bconj
    return value, conjectural
