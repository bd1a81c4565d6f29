"""Deciding, enumerating, and counting draconian sequences.

A sequence (a_1, ..., a_n) of nonnegative integers is draconian for the
bipartite double D of a graph on n vertices when the entries sum to n - 1
and every nonempty subset S of [n] satisfies

    sum(a_i for i in S)  <  |union of the D-neighborhoods of S|.

Two independent deciders are provided: :func:`check_subset` evaluates the
subset inequalities directly, and :func:`check_flow` reformulates them as a
bipartite transportation feasibility question. They must agree everywhere;
the test suite enforces this.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graphs import BipartiteDouble, Graph, build_double, connected_components, from_edge_list

__all__ = [
    "DraconianSequence",
    "DraconianSet",
    "EnumerationConfig",
    "ResourceCapExceeded",
    "check_flow",
    "check_subset",
    "count",
    "enumerate_draconian",
    "neighborhood_union_size",
    "sequences_to_text",
]

# Above this size the dense all-subsets tables become too large and
# check_subset falls back to enumerating cluster-connected subsets only.
_VECTOR_LIMIT = 22


class ResourceCapExceeded(RuntimeError):
    """A requested computation exceeds the configured size cap."""


@dataclass(frozen=True, order=True)
class DraconianSequence:
    """A candidate sequence; ordering is lexicographic on the entries."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(x) for x in self.entries)
        if any(x < 0 for x in entries):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.entries)


@dataclass(frozen=True)
class EnumerationConfig:
    """Resource and strategy knobs for the enumerator.

    max_n caps the vertex count accepted by enumerate/count; leaf_checker
    selects the decider applied to fully assigned sequences ("flow" or
    "subset").
    """

    max_n: int = 18
    leaf_checker: str = "flow"

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError(f"max_n must be positive, got {self.max_n}")
        if self.leaf_checker not in ("flow", "subset"):
            raise ValueError(f"unknown leaf checker {self.leaf_checker!r}")


@dataclass(frozen=True)
class DraconianSet:
    """All draconian sequences of a graph, lexicographically sorted."""

    graph: Graph
    sequences: tuple[DraconianSequence, ...]
    count: int

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        return iter(self.sequences)

    def entry_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s.entries for s in self.sequences)

    def entry_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(s.entries for s in self.sequences)

    def to_text(self) -> str:
        return sequences_to_text(self.entry_tuples())


def sequences_to_text(seqs) -> str:
    """One sequence per line, space-separated integers, newline-terminated."""
    return "".join(" ".join(str(x) for x in s) + "\n" for s in seqs)


def _coerce_double(obj: BipartiteDouble | Graph) -> BipartiteDouble:
    if isinstance(obj, BipartiteDouble):
        return obj
    if isinstance(obj, Graph):
        return build_double(obj)
    raise TypeError(f"expected BipartiteDouble or Graph, got {type(obj).__name__}")


def _validate_sequence(d: BipartiteDouble, a) -> tuple[int, ...]:
    seq = tuple(int(x) for x in a)
    if len(seq) != d.n:
        raise ValueError(f"sequence length {len(seq)} != n = {d.n}")
    if any(x < 0 for x in seq):
        raise ValueError("sequence entries must be nonnegative")
    return seq


def neighborhood_union_size(double: BipartiteDouble | Graph, s) -> int:
    """|union of D-neighborhoods over the vertex subset s|; s must be nonempty."""
    d = _coerce_double(double)
    union = 0
    empty = True
    for v in s:
        empty = False
        if not (1 <= v <= d.n):
            raise ValueError(f"vertex {v} out of range for n={d.n}")
        union |= d.neighborhood_mask(v)
    if empty:
        raise ValueError("subset must be nonempty")
    return union.bit_count()


# ---------------------------------------------------------------------------
# Subset decider


def _popcount_table(d: BipartiteDouble) -> np.ndarray:
    """|union of neighborhoods| for every subset bitmask, cached per double."""
    table = d._cache.get("popcount_table")
    if table is None:
        n = d.n
        union = np.zeros(1 << n, dtype=np.uint32)
        for b in range(n):
            half = 1 << b
            union[half : 2 * half] = union[:half] | np.uint32(d.neighborhoods[b])
        table = np.bitwise_count(union).astype(np.uint8)
        d._cache["popcount_table"] = table
    return table


def _grow_clusters(sub: int, ext: int, adj: list[int], excluded: int):
    """Connected subsets of the overlap graph containing sub, each once."""
    yield sub
    m = ext
    while m:
        b = m & -m
        m ^= b
        child_ext = (m | adj[b.bit_length() - 1]) & ~(sub | b) & ~excluded
        yield from _grow_clusters(sub | b, child_ext, adj, excluded)
        excluded |= b


def _cluster_connected_subsets(adj: list[int], n: int):
    for v in range(n):
        excluded = (1 << v) - 1
        start = 1 << v
        yield from _grow_clusters(start, adj[v] & ~excluded & ~start, adj, excluded)


def _subset_condition(d: BipartiteDouble, seq: tuple[int, ...]) -> bool:
    """All nonempty subsets satisfy the strict inequality; sum already checked."""
    n = d.n
    if n <= _VECTOR_LIMIT:
        bounds = _popcount_table(d)
        sums = np.zeros(1 << n, dtype=np.int16)
        for b in range(n):
            half = 1 << b
            sums[half : 2 * half] = sums[:half] + np.int16(seq[b])
        return bool(np.all(sums[1:] < bounds[1:]))
    # Large n: a subset that splits into parts with disjoint neighborhood
    # unions inherits the inequality from its parts, so only subsets forming
    # one connected cluster in the neighborhood-overlap graph need checking.
    masks = list(d.neighborhoods)
    overlap = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if masks[i] & masks[j]:
                overlap[i] |= 1 << j
                overlap[j] |= 1 << i
    for sub in _cluster_connected_subsets(overlap, n):
        total = 0
        union = 0
        m = sub
        while m:
            b = m & -m
            total += seq[b.bit_length() - 1]
            union |= masks[b.bit_length() - 1]
            m ^= b
        if total >= union.bit_count():
            return False
    return True


def check_subset(double: BipartiteDouble | Graph, a) -> bool:
    """Decide draconian-hood by checking the subset inequalities."""
    d = _coerce_double(double)
    seq = _validate_sequence(d, a)
    if sum(seq) != d.n - 1:
        return False
    return _subset_condition(d, seq)


# ---------------------------------------------------------------------------
# Flow decider


def _neighbor_lists(d: BipartiteDouble) -> list[tuple[int, ...]]:
    """Right-neighbor labels per left vertex, ascending; index 0 unused.

    The double is symmetric (i ~ jbar iff j ~ ibar), so the same lists serve
    as left-neighbor lists of the right vertices.
    """
    lists = d._cache.get("neighbor_lists")
    if lists is None:
        lists = [()]
        for mask in d.neighborhoods:
            row = []
            m = mask
            while m:
                b = m & -m
                row.append(b.bit_length())
                m ^= b
            lists.append(tuple(row))
        d._cache["neighbor_lists"] = lists
    return lists


def _kuhn_augment(i, nbrs, match_right, trail, visited=None) -> bool:
    """Route one more unit from left vertex i; record flips on the trail."""
    if visited is None:
        visited = bytearray(len(match_right))
    for r in nbrs[i]:
        if not visited[r]:
            visited[r] = 1
            j = match_right[r]
            if j == 0 or _kuhn_augment(j, nbrs, match_right, trail, visited):
                trail.append((r, j))
                match_right[r] = i
                return True
    return False


def _undo_trail(trail, match_right) -> None:
    for r, j in reversed(trail):
        match_right[r] = j


def _all_reach_free(nbrs, match_right, n) -> bool:
    """With n-1 units placed, one right vertex z is free; the strict subset
    inequalities hold iff every left vertex has an alternating path to z."""
    z = 0
    for r in range(1, n + 1):
        if match_right[r] == 0:
            z = r
            break
    matched_to: list[list[int]] = [[] for _ in range(n + 1)]
    for r in range(1, n + 1):
        j = match_right[r]
        if j:
            matched_to[j].append(r)
    reached_left = bytearray(n + 1)
    reached_right = bytearray(n + 1)
    reached_right[z] = 1
    stack = [z]
    left_count = 0
    while stack:
        r = stack.pop()
        owner = match_right[r]
        for i in nbrs[r]:
            if i != owner and not reached_left[i]:
                reached_left[i] = 1
                left_count += 1
                for r2 in matched_to[i]:
                    if not reached_right[r2]:
                        reached_right[r2] = 1
                        stack.append(r2)
    return left_count == n


def check_flow(double: BipartiteDouble | Graph, a) -> bool:
    """Decide draconian-hood via transportation feasibility.

    Routing a_i units from each left vertex into unit-capacity right
    vertices leaves exactly one right vertex free; the sequence is draconian
    iff the routing exists and every left vertex can reach the free vertex
    along an alternating path (equivalently, the routing stays feasible with
    any single right vertex removed).
    """
    d = _coerce_double(double)
    seq = _validate_sequence(d, a)
    n = d.n
    if sum(seq) != n - 1:
        return False
    nbrs = _neighbor_lists(d)
    match_right = [0] * (n + 1)
    scratch: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        for _ in range(seq[i - 1]):
            if not _kuhn_augment(i, nbrs, match_right, scratch):
                return False
    return _all_reach_free(nbrs, match_right, n)


# ---------------------------------------------------------------------------
# Enumeration


def _dfs_run(d: BipartiteDouble, prefix, leaf_checker: str, collect: bool):
    """Depth-first enumeration of draconian sequences extending prefix.

    Returns the lexicographic list of full sequences (collect=True) or their
    number (collect=False). Branches are cut by per-vertex caps, remaining-sum
    feasibility, strict pair and prefix-union bounds, and an incrementally
    maintained unit routing that detects infeasible prefixes early.
    """
    n = d.n
    total = n - 1
    masks = [0] * (n + 1)
    for i in range(1, n + 1):
        masks[i] = d.neighborhoods[i - 1]
    nbrs = _neighbor_lists(d)

    caps = [0] * (n + 2)
    for i in range(1, n + 1):
        caps[i] = min(masks[i].bit_count() - 1, total)
    suffix = [0] * (n + 2)
    for i in range(n, 0, -1):
        suffix[i] = suffix[i + 1] + caps[i]

    pair_bound = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            b = (masks[i] | masks[j]).bit_count()
            pair_bound[i][j] = b
            pair_bound[j][i] = b
    prefix_bound = [0] * (n + 1)
    running = 0
    for i in range(1, n + 1):
        running |= masks[i]
        prefix_bound[i] = running.bit_count()

    match_right = [0] * (n + 1)
    current = [0] * (n + 1)
    out: list[tuple[int, ...]] = []
    counter = 0

    if leaf_checker == "subset":
        def leaf_ok() -> bool:
            return _subset_condition(d, tuple(current[1:]))
    else:
        def leaf_ok() -> bool:
            return _all_reach_free(nbrs, match_right, n)

    # Seed the fixed prefix, mirroring the in-loop pruning conditions; any
    # failure means no completion exists.
    k = len(prefix)
    psum = 0
    scratch: list[tuple[int, int]] = []
    for idx in range(k):
        t = idx + 1
        val = prefix[idx]
        if val > caps[t] or psum + val >= prefix_bound[t]:
            return out if collect else 0
        row = pair_bound[t]
        for i in range(1, t):
            if current[i] + val >= row[i]:
                return out if collect else 0
        for _ in range(val):
            if not _kuhn_augment(t, nbrs, match_right, scratch):
                return out if collect else 0
        current[t] = val
        psum += val
    rem = total - psum
    if rem < 0 or rem > suffix[k + 1]:
        return out if collect else 0

    def dfs(t: int, acc: int) -> None:
        nonlocal counter
        if t > n:
            if leaf_ok():
                if collect:
                    out.append(tuple(current[1:]))
                else:
                    counter += 1
            return
        rem_total = total - acc
        hi = caps[t] if caps[t] < rem_total else rem_total
        sfx = suffix[t + 1]
        bound = prefix_bound[t]
        row = pair_bound[t]
        trails: list[list[tuple[int, int]]] = []
        val = 0
        while val <= hi:
            if val > 0:
                trail: list[tuple[int, int]] = []
                if not _kuhn_augment(t, nbrs, match_right, trail):
                    break
                trails.append(trail)
            if rem_total - val <= sfx:
                ok = acc + val < bound
                if ok:
                    for i in range(1, t):
                        if current[i] + val >= row[i]:
                            ok = False
                            break
                if not ok:
                    break
                current[t] = val
                dfs(t + 1, acc + val)
            val += 1
        current[t] = 0
        for trail in reversed(trails):
            _undo_trail(trail, match_right)

    dfs(k + 1, psum)
    return out if collect else counter


def _shard_prefixes(d: BipartiteDouble, workers: int) -> list[tuple[int, ...]]:
    """Fixed first-coordinate prefixes whose completions partition the search.

    Sharding fixes a_1 (and a_2 when more shards help); concatenating shard
    results in prefix order reproduces the unsharded lexicographic output.
    """
    total = d.n - 1
    cap1 = min(d.neighborhoods[0].bit_count() - 1, total)
    if d.n < 2 or cap1 + 1 >= workers:
        return [(v,) for v in range(cap1 + 1)]
    cap2 = min(d.neighborhoods[1].bit_count() - 1, total)
    return [(v1, v2) for v1 in range(cap1 + 1) for v2 in range(cap2 + 1)]


def _shard_enumerate_task(args) -> list[tuple[int, ...]]:
    n, edges, prefix, leaf_checker = args
    d = build_double(from_edge_list(n, edges))
    return _dfs_run(d, prefix, leaf_checker, collect=True)


def _shard_count_task(args) -> int:
    n, edges, prefix, leaf_checker = args
    d = build_double(from_edge_list(n, edges))
    return _dfs_run(d, prefix, leaf_checker, collect=False)


def _guard(g: Graph, cfg: EnumerationConfig) -> None:
    if g.n > cfg.max_n:
        raise ResourceCapExceeded(
            f"enumeration on {g.n} vertices exceeds the cap of {cfg.max_n}; "
            "raise EnumerationConfig.max_n to proceed"
        )


def enumerate_draconian(
    g: Graph, workers: int = 1, config: EnumerationConfig | None = None
) -> DraconianSet:
    """All draconian sequences of g in lexicographic order.

    Disconnected graphs have none: each component's vertex set forces its
    partial sum below the component size, so the totals cannot reach n - 1.
    """
    cfg = config or EnumerationConfig()
    if len(connected_components(g)) != 1:
        return DraconianSet(graph=g, sequences=(), count=0)
    _guard(g, cfg)
    d = build_double(g)
    if workers <= 1:
        raw = _dfs_run(d, (), cfg.leaf_checker, collect=True)
    else:
        jobs = [
            (g.n, g.sorted_edges, p, cfg.leaf_checker) for p in _shard_prefixes(d, workers)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_shard_enumerate_task, jobs))
        raw = [s for part in parts for s in part]
    seqs = tuple(DraconianSequence(s) for s in raw)
    return DraconianSet(graph=g, sequences=seqs, count=len(seqs))


def count(g: Graph, workers: int = 1, config: EnumerationConfig | None = None) -> int:
    """|enumerate_draconian(g)| without materializing the sequences."""
    cfg = config or EnumerationConfig()
    if len(connected_components(g)) != 1:
        return 0
    _guard(g, cfg)
    d = build_double(g)
    if workers <= 1:
        return _dfs_run(d, (), cfg.leaf_checker, collect=False)
    jobs = [(g.n, g.sorted_edges, p, cfg.leaf_checker) for p in _shard_prefixes(d, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_shard_count_task, jobs))


# Public name for the enumeration entry point; the qualified name above
# avoids shadowing the builtin inside this module.
enumerate = enumerate_draconian
