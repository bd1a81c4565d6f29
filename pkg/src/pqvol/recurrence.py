"""Closed-form volumes, recurrences with bijection witnesses, and a planner.

The planner computes the normalized volume of the adjacency polytope of a
graph by decomposing into connected components and blocks, matching blocks
against closed-form families, applying the outer-face formula, undoing
subdivision and triangle moves, and finally falling back to direct
enumeration. Every result carries a derivation trace that can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import draconian, outerplanar
from .graphs import (
    Graph,
    add_edge,
    block_subgraphs,
    build_double,
    connected_components,
    delete_edge,
    delete_vertex,
    graph_fingerprint,
    induced_subgraph,
    is_two_connected,
    relabel_map_after_delete,
    subdivide,
    triangle_join,
)

__all__ = [
    "BijectionWitness",
    "IdentityCheck",
    "TraceNode",
    "VolumeResult",
    "clear_memo",
    "nvol",
    "nvol_complete_minus_matching",
    "nvol_cycle",
    "nvol_forest",
    "nvol_k2m",
    "product_rules",
    "replay_trace",
    "serialize_trace",
    "stirling2",
    "stirling_identity_check",
    "subdivision_eligible",
    "subdivision_step",
    "triangle_eligible",
    "triangle_step",
    "wheel_conjecture_value",
]


# ---------------------------------------------------------------------------
# Closed forms


def nvol_forest(n: int, k: int) -> int:
    """Volume of a forest on n vertices with k components: 2^(n-k)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return 1 << (n - k)


def nvol_cycle(n: int) -> int:
    """Volume of the n-cycle: n * 2^(n-2)."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return n << (n - 2)


def nvol_complete_minus_matching(n: int, k: int) -> int:
    """Volume of K_n minus a k-edge matching: C(2(n-1), n-1) - 2k."""
    if n <= 2:
        raise ValueError(f"need n > 2, got {n}")
    if not 0 <= k <= n // 2:
        raise ValueError(f"need 0 <= k <= n//2, got k={k} for n={n}")
    return comb(2 * (n - 1), n - 1) - 2 * k


def nvol_k2m(n: int) -> int:
    """Volume of K_{2,n-2}: 2^(n-4) * (n^2 - n + 6) - 2, exact for n >= 3.

    At n = 3 the leading factor is 2^(-1) but the product stays integral:
    12 / 2 - 2 = 4, which matches the forest value of K_{2,1} = P_3.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if n == 3:
        return 4
    return (1 << (n - 4)) * (n * n - n + 6) - 2


def wheel_conjecture_value(n: int) -> int:
    """Conjectured volume of the wheel over C_n: 3^n - 2^n + 1."""
    if n < 3:
        raise ValueError(f"wheel needs n >= 3, got {n}")
    return 3**n - 2**n + 1


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if k < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if k > n:
        return 0
    row = [1] + [0] * k
    for _ in range(n):
        new = [0] * (k + 1)
        for j in range(1, k + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def stirling_identity_check(n: int) -> bool:
    """3^n - 2^n + 1 == 2 S(n+1,3) + S(n+1,2) + S(n+1,1)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    rhs = 2 * stirling2(n + 1, 3) + stirling2(n + 1, 2) + stirling2(n + 1, 1)
    return wheel_conjecture_value(n) == rhs


# ---------------------------------------------------------------------------
# Recurrence steps with constructive bijections


@dataclass(frozen=True)
class IdentityCheck:
    """Counted sides of a recurrence identity."""

    kind: str  # "subdivision" | "triangle"
    transformed_count: int
    base_count: int
    deleted_count: int | None
    holds: bool


@dataclass(frozen=True)
class BijectionWitness:
    """Images of the three constructions, each paired with its preimage."""

    kind: str
    set_a: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    set_b: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    set_c: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def images_a(self) -> frozenset[tuple[int, ...]]:
        return frozenset(img for img, _ in self.set_a)

    def images_b(self) -> frozenset[tuple[int, ...]]:
        return frozenset(img for img, _ in self.set_b)

    def images_c(self) -> frozenset[tuple[int, ...]]:
        return frozenset(img for img, _ in self.set_c)

    def is_exact_cover_of(self, target: frozenset[tuple[int, ...]]) -> bool:
        a, b, c = self.images_a(), self.images_b(), self.images_c()
        disjoint = not (a & b or a & c or b & c)
        sizes_ok = (
            len(a) == len(self.set_a)
            and len(b) == len(self.set_b)
            and len(c) == len(self.set_c)
        )
        return disjoint and sizes_ok and (a | b | c) == target


def _pick_degree_two_endpoint(g: Graph, e: tuple[int, int], u: int | None) -> tuple[int, int]:
    a, b = e
    if u is not None:
        if u not in e:
            raise ValueError(f"u={u} is not an endpoint of {e}")
        if g.degree(u) != 2:
            raise ValueError(f"endpoint u={u} must have degree 2, has {g.degree(u)}")
        return u, b if u == a else a
    if g.degree(a) == 2:
        return a, b
    if g.degree(b) == 2:
        return b, a
    raise ValueError(f"edge {e} has no degree-2 endpoint")


def subdivision_eligible(g: Graph, e) -> bool:
    a, b = sorted(e)
    return (
        (a, b) in g.edges
        and (g.degree(a) == 2 or g.degree(b) == 2)
        and is_two_connected(g)
    )


def triangle_eligible(g: Graph, e) -> bool:
    a, b = sorted(e)
    return (
        (a, b) in g.edges
        and (g.degree(a) == 2 or g.degree(b) == 2)
        and len(connected_components(g)) == 1
    )


def subdivision_step(
    g: Graph, e, u: int | None = None
) -> tuple[IdentityCheck, BijectionWitness]:
    """Subdivide e = uv (deg u = 2) in a 2-connected g and certify the count.

    The draconian set of the subdivided graph decomposes into three images:
    A maps c in D(g) to (c, 1); B maps c in D(g minus e) to (c, 0) + e_u; C
    maps c in D(g) to (c, 2) - e_u when that lands in D(g:e), and otherwise
    bumps coordinate u (when c is not in D(g minus e)) or v (when it is).
    """
    edge = tuple(sorted(e))
    if edge not in g.edges:
        raise ValueError(f"edge {edge} not in graph")
    if not is_two_connected(g):
        raise ValueError("subdivision step requires a 2-connected graph")
    u_, v_ = _pick_degree_two_endpoint(g, edge, u)

    g_sub = subdivide(g, edge)
    g_del = delete_edge(g, edge)
    d_base = draconian.enumerate_draconian(g)
    d_del = draconian.enumerate_draconian(g_del)
    d_sub = draconian.enumerate_draconian(g_sub)
    double_del = build_double(g_del)
    double_sub = build_double(g_sub)

    ui, vi = u_ - 1, v_ - 1
    set_a = tuple(((*c, 1), c) for c in d_base.entry_tuples())

    set_b = []
    for c in d_del.entry_tuples():
        img = list(c) + [0]
        img[ui] += 1
        set_b.append((tuple(img), c))

    set_c = []
    for c in d_base.entry_tuples():
        gamma = None
        if c[ui] >= 1:
            cand = list(c) + [2]
            cand[ui] -= 1
            cand_t = tuple(cand)
            if draconian.check_flow(double_sub, cand_t):
                gamma = cand_t
        if gamma is None:
            img = list(c) + [0]
            if draconian.check_flow(double_del, c):
                img[vi] += 1
            else:
                img[ui] += 1
            gamma = tuple(img)
        set_c.append((gamma, c))

    identity = IdentityCheck(
        kind="subdivision",
        transformed_count=d_sub.count,
        base_count=d_base.count,
        deleted_count=d_del.count,
        holds=d_sub.count == 2 * d_base.count + d_del.count,
    )
    witness = BijectionWitness(
        kind="subdivision", set_a=set_a, set_b=tuple(set_b), set_c=tuple(set_c)
    )
    return identity, witness


def triangle_step(
    g: Graph, e, u: int | None = None
) -> tuple[IdentityCheck, BijectionWitness]:
    """Triangle-join e = uv (deg u = 2) in a connected g and certify the count.

    All three images start from D(g): A appends 1; B appends 0 and bumps u;
    C appends 0 and bumps v, falling back to (c, 2) - e_u when the bumped
    image collides with B (exactly when c + e_v - e_u is again draconian).
    """
    edge = tuple(sorted(e))
    if edge not in g.edges:
        raise ValueError(f"edge {edge} not in graph")
    if len(connected_components(g)) != 1:
        raise ValueError("triangle step requires a connected graph")
    u_, v_ = _pick_degree_two_endpoint(g, edge, u)

    g_tri = triangle_join(g, edge)
    d_base = draconian.enumerate_draconian(g)
    d_tri = draconian.enumerate_draconian(g_tri)
    double_base = build_double(g)

    ui, vi = u_ - 1, v_ - 1
    set_a = tuple(((*c, 1), c) for c in d_base.entry_tuples())

    set_b = []
    for c in d_base.entry_tuples():
        img = list(c) + [0]
        img[ui] += 1
        set_b.append((tuple(img), c))

    set_c = []
    for c in d_base.entry_tuples():
        collides = False
        if c[ui] >= 1:
            shifted = list(c)
            shifted[vi] += 1
            shifted[ui] -= 1
            collides = draconian.check_flow(double_base, tuple(shifted))
        if collides:
            img = list(c) + [2]
            img[ui] -= 1
        else:
            img = list(c) + [0]
            img[vi] += 1
        set_c.append((tuple(img), c))

    identity = IdentityCheck(
        kind="triangle",
        transformed_count=d_tri.count,
        base_count=d_base.count,
        deleted_count=None,
        holds=d_tri.count == 3 * d_base.count,
    )
    witness = BijectionWitness(
        kind="triangle", set_a=set_a, set_b=tuple(set_b), set_c=tuple(set_c)
    )
    return identity, witness


# ---------------------------------------------------------------------------
# Planner


@dataclass(frozen=True)
class TraceNode:
    """One derivation step: the rule applied, the graph, and the value."""

    rule: str
    fingerprint: str
    n: int
    m: int
    value: int
    detail: str = ""
    children: tuple[TraceNode, ...] = ()


@dataclass(frozen=True)
class VolumeResult:
    value: int
    trace: TraceNode


def serialize_trace(node: TraceNode, indent: int = 0) -> str:
    pad = "  " * indent
    detail = f" [{node.detail}]" if node.detail else ""
    line = f"{pad}{node.rule} {node.fingerprint} value={node.value}{detail}\n"
    return line + "".join(serialize_trace(c, indent + 1) for c in node.children)


def replay_trace(node: TraceNode) -> int:
    """Recompute the value from the leaves; raises on arithmetic mismatch."""
    if not node.children:
        return node.value
    parts = [replay_trace(c) for c in node.children]
    if node.rule in ("component-product", "block-product"):
        value = 1
        for p in parts:
            value *= p
    elif node.rule == "reverse-subdivision":
        value = 2 * parts[0] + parts[1]
    elif node.rule == "reverse-triangle":
        value = 3 * parts[0]
    else:
        raise ValueError(f"unknown combination rule {node.rule!r}")
    if value != node.value:
        raise ValueError(
            f"trace mismatch at {node.rule} {node.fingerprint}: "
            f"stored {node.value}, replayed {value}"
        )
    return value


_MEMO: dict[tuple[int, tuple[tuple[int, int], ...]], TraceNode] = {}


def clear_memo() -> None:
    _MEMO.clear()


def _leaf(g: Graph, rule: str, value: int, detail: str = "") -> TraceNode:
    return TraceNode(rule, graph_fingerprint(g), g.n, g.m, value, detail)


def _product_node(g: Graph, rule: str, children: list[TraceNode]) -> TraceNode:
    value = 1
    for c in children:
        value *= c.value
    return TraceNode(rule, graph_fingerprint(g), g.n, g.m, value, "", tuple(children))


def _match_cycle(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in range(1, g.n + 1))


def _match_complete_minus_matching(g: Graph) -> int | None:
    """Number of removed matching edges, or None if the pattern fails."""
    if g.n <= 2:
        return None
    missing = []
    for a in range(1, g.n + 1):
        for b in range(a + 1, g.n + 1):
            if (a, b) not in g.edges:
                missing.append((a, b))
    touched = [v for e in missing for v in e]
    if len(set(touched)) != len(touched):
        return None
    return len(missing)


def _match_k2m(g: Graph) -> bool:
    if g.n < 4 or g.m != 2 * (g.n - 2):
        return False
    hubs = [v for v in range(1, g.n + 1) if g.degree(v) == g.n - 2]
    if len(hubs) != 2 or g.has_edge(*hubs):
        return False
    hub_set = set(hubs)
    for v in range(1, g.n + 1):
        if v in hub_set:
            continue
        if g.degree(v) != 2 or set(g.neighbors(v)) != hub_set:
            return False
    return True


def _reverse_move(g: Graph):
    """First applicable reverse step on a 2-connected block, or None.

    Scanning degree-2 vertices in label order: a vertex whose neighbors are
    adjacent undoes a triangle join when one neighbor drops to degree 2; one
    whose neighbors are non-adjacent undoes a subdivision when bridging them
    keeps the graph 2-connected and one neighbor has degree 2.
    """
    for x in range(1, g.n + 1):
        if g.degree(x) != 2:
            continue
        v, w = g.neighbors(x)
        if g.has_edge(v, w):
            if g.degree(v) == 3 or g.degree(w) == 3:
                return "triangle", x, None
        elif g.degree(v) == 2 or g.degree(w) == 2:
            smaller = delete_vertex(g, x)
            remap = relabel_map_after_delete(g.n, x)
            bridged = add_edge(smaller, (remap[v], remap[w]))
            if is_two_connected(bridged):
                return "subdivision", x, (bridged, smaller)
    return None


def _plan(g: Graph, workers: int, config) -> TraceNode:
    key = (g.n, g.sorted_edges)
    node = _MEMO.get(key)
    if node is None:
        node = _plan_uncached(g, workers, config)
        _MEMO[key] = node
    return node


def _plan_uncached(g: Graph, workers: int, config) -> TraceNode:
    comps = connected_components(g)
    if len(comps) > 1:
        children = [_plan(induced_subgraph(g, c), workers, config) for c in comps]
        return _product_node(g, "component-product", children)
    if g.n == 1:
        return _leaf(g, "closed-form:vertex", 1)

    blocks = block_subgraphs(g)
    if len(blocks) > 1:
        children = [_plan(b, workers, config) for b in blocks]
        return _product_node(g, "block-product", children)

    # g is a single 2-connected block from here on.
    if g.n == 2:
        return _leaf(g, "closed-form:edge", 2)
    if _match_cycle(g):
        return _leaf(g, "closed-form:cycle", nvol_cycle(g.n), f"n={g.n}")
    k = _match_complete_minus_matching(g)
    if k is not None:
        return _leaf(
            g,
            "closed-form:complete-minus-matching",
            nvol_complete_minus_matching(g.n, k),
            f"n={g.n} k={k}",
        )
    if _match_k2m(g):
        return _leaf(g, "closed-form:k2m", nvol_k2m(g.n), f"n={g.n}")

    try:
        if outerplanar.is_outerplanar(g):
            value, conjectural = outerplanar.nvol_outerplanar(g)
            if not conjectural:
                return _leaf(g, "outerplanar-formula", value)
    except draconian.ResourceCapExceeded:
        pass

    move = _reverse_move(g)
    if move is not None:
        kind, x, payload = move
        if kind == "triangle":
            child = _plan(delete_vertex(g, x), workers, config)
            return TraceNode(
                "reverse-triangle",
                graph_fingerprint(g),
                g.n,
                g.m,
                3 * child.value,
                f"x={x}",
                (child,),
            )
        bridged, smaller = payload
        child_b = _plan(bridged, workers, config)
        child_s = _plan(smaller, workers, config)
        return TraceNode(
            "reverse-subdivision",
            graph_fingerprint(g),
            g.n,
            g.m,
            2 * child_b.value + child_s.value,
            f"x={x}",
            (child_b, child_s),
        )

    value = draconian.count(g, workers=workers, config=config)
    return _leaf(g, "enumeration", value)


def _oracle_plan(g: Graph, workers: int, config) -> TraceNode:
    comps = connected_components(g)
    if len(comps) > 1:
        children = []
        for c in comps:
            sub = induced_subgraph(g, c)
            children.append(
                _leaf(sub, "enumeration", draconian.count(sub, workers=workers, config=config))
            )
        return _product_node(g, "component-product", children)
    return _leaf(g, "enumeration", draconian.count(g, workers=workers, config=config))


_STRATEGIES = {
    "auto": "auto",
    "enumerate": "enumerate-only",
    "enumerate-only": "enumerate-only",
}


def nvol(
    g: Graph,
    strategy: str = "auto",
    workers: int = 1,
    config: draconian.EnumerationConfig | None = None,
) -> VolumeResult:
    """Exact normalized volume of the adjacency polytope of g, with trace.

    strategy "auto" runs the full planner; "enumerate" (or "enumerate-only")
    bypasses every rule except the component product and enumerates directly,
    serving as the oracle mode.
    """
    try:
        mode = _STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}") from None
    if mode == "auto":
        node = _plan(g, workers, config)
    else:
        node = _oracle_plan(g, workers, config)
    return VolumeResult(value=node.value, trace=node)


def product_rules(g: Graph, workers: int = 1) -> VolumeResult:
    """Explicit component-times-block decomposition with planner leaf values."""
    comp_nodes = []
    for c in connected_components(g):
        sub = induced_subgraph(g, c)
        block_nodes = [_plan(b, workers, None) for b in block_subgraphs(sub)]
        comp_nodes.append(_product_node(sub, "block-product", block_nodes))
    root = _product_node(g, "component-product", comp_nodes)
    return VolumeResult(value=root.value, trace=root)
