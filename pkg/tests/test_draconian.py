from __future__ import annotations

import pytest

from pqvol import draconian
from pqvol.draconian import (
    DraconianSequence,
    EnumerationConfig,
    ResourceCapExceeded,
    check_flow,
    check_subset,
    count,
    enumerate_draconian,
    neighborhood_union_size,
    sequences_to_text,
)
from pqvol.graphs import (
    build_double,
    disjoint_union,
    from_edge_list,
    generate,
    permute_vertices,
)

from conftest import compositions, connected_catalog


def test_sequence_type_validates():
    s = DraconianSequence((1, 0, 2))
    assert s.total == 3
    with pytest.raises(ValueError):
        DraconianSequence((1, -1, 3))


def test_star_listing_is_byte_exact():
    star = from_edge_list(4, [(1, 2), (2, 3), (2, 4)])
    got = enumerate_draconian(star)
    expected = [
        (0, 1, 1, 1),
        (0, 2, 0, 1),
        (0, 2, 1, 0),
        (0, 3, 0, 0),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 1, 0),
        (1, 2, 0, 0),
    ]
    assert got.entry_tuples() == tuple(expected)
    assert got.to_text() == sequences_to_text(expected)
    assert got.count == 8


def test_triangle_sequences():
    got = enumerate_draconian(generate("cycle", 3)).entry_set()
    assert got == {(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)}


@pytest.mark.parametrize(
    "g,expected",
    [
        (generate("complete", 1), 1),
        (generate("path", 2), 2),
        (generate("cycle", 4), 16),
        (generate("complete", 4), 20),
    ],
)
def test_small_counts(g, expected):
    assert count(g) == expected


def test_disconnected_graph_has_no_sequences():
    two_edges = disjoint_union(generate("path", 2), generate("path", 2))
    assert enumerate_draconian(two_edges).count == 0
    assert count(two_edges) == 0


def test_all_enumerated_sequences_satisfy_both_checkers():
    g = generate("wheel", 4)
    d = build_double(g)
    ds = enumerate_draconian(g)
    assert ds.count == 66
    for s in ds:
        assert sum(s.entries) == g.n - 1
        assert check_subset(d, s.entries)
        assert check_flow(d, s.entries)


def test_count_is_invariant_under_relabeling(rng):
    g = generate("wheel", 4)
    base = count(g)
    labels = list(range(1, g.n + 1))
    for _ in range(5):
        rng.shuffle(labels)
        perm = {i + 1: labels[i] for i in range(g.n)}
        assert count(permute_vertices(g, perm)) == base


def test_neighborhood_union_size():
    d = build_double(generate("path", 3))
    assert neighborhood_union_size(d, [2]) == 3
    assert neighborhood_union_size(d, [1]) == 2
    assert neighborhood_union_size(d, [1, 2, 3]) == 3
    with pytest.raises(ValueError):
        neighborhood_union_size(d, [])
    with pytest.raises(ValueError):
        neighborhood_union_size(d, [0])
    with pytest.raises(ValueError):
        neighborhood_union_size(d, [4])


@pytest.mark.parametrize("checker", [check_subset, check_flow])
def test_checkers_validate_input(checker):
    d = build_double(generate("cycle", 3))
    with pytest.raises(ValueError):
        checker(d, (1, 1))
    with pytest.raises(ValueError):
        checker(d, (1, 1, -1))


def test_checkers_accept_graph_argument():
    g = generate("cycle", 3)
    assert check_subset(g, (1, 1, 0)) == check_flow(g, (1, 1, 0)) is True
    assert check_subset(g, (2, 0, 0)) == check_flow(g, (2, 0, 0)) is True
    assert check_subset(g, (0, 0, 0)) == check_flow(g, (0, 0, 0)) is False


def test_checker_equivalence_on_small_catalog():
    for g in connected_catalog(5):
        d = build_double(g)
        for comp in compositions(g.n - 1, g.n):
            assert check_subset(d, comp) == check_flow(d, comp)


def test_cluster_fallback_matches_vectorized_path(monkeypatch, rng):
    for _ in range(30):
        n = rng.randint(2, 7)
        from pqvol.sampling import random_connected_graph

        g = random_connected_graph(n, rng)
        d = build_double(g)
        seq = [0] * n
        for _ in range(n - 1):
            seq[rng.randrange(n)] += 1
        fast = check_subset(d, seq)
        monkeypatch.setattr(draconian, "_VECTOR_LIMIT", 0)
        d_fresh = build_double(g)
        assert check_subset(d_fresh, seq) == fast
        monkeypatch.undo()


def test_config_validation_and_cap():
    with pytest.raises(ValueError):
        EnumerationConfig(max_n=0)
    with pytest.raises(ValueError):
        EnumerationConfig(leaf_checker="magic")
    with pytest.raises(ResourceCapExceeded):
        count(generate("complete", 19))
    cfg = EnumerationConfig(max_n=19)
    small = EnumerationConfig(max_n=4)
    assert count(generate("cycle", 4), config=small) == 16
    with pytest.raises(ResourceCapExceeded):
        count(generate("cycle", 5), config=small)
    assert cfg.max_n == 19


def test_subset_leaf_checker_agrees_with_flow():
    g = generate("wheel", 5)
    by_flow = enumerate_draconian(g, config=EnumerationConfig(leaf_checker="flow"))
    by_subset = enumerate_draconian(g, config=EnumerationConfig(leaf_checker="subset"))
    assert by_flow.entry_tuples() == by_subset.entry_tuples()


@pytest.mark.parametrize("g", [generate("wheel", 5), generate("complete", 5), generate("star", 6)])
def test_worker_counts_agree_byte_for_byte(g):
    texts = {w: enumerate_draconian(g, workers=w).to_text() for w in (1, 2, 8)}
    assert texts[1] == texts[2] == texts[8]
    assert count(g, workers=8) == enumerate_draconian(g).count


def test_enumerate_alias_is_exported():
    assert draconian.enumerate is enumerate_draconian
