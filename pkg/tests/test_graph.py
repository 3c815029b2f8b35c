import itertools

import pytest
from hypothesis import given, settings, strategies as st

from zfthrottle.graph import (
    EdgeKind,
    Graph,
    GuardError,
    canonical_form,
    cartesian_product_complete_path,
    contract_edge,
    contract_edges,
    delete_vertex,
    find_spanning_embedding,
    generate,
    graphs_of_order,
    independence_number,
    is_connected,
    is_isomorphic,
    parse_graph6,
    relabel,
    spanning_supergraphs,
    write_graph6,
)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


def brute_iso(g, h):
    if g.n != h.n or g.m != h.m:
        return False
    he = set(h.edges())
    for p in itertools.permutations(range(g.n)):
        if all(tuple(sorted((p[u], p[v]))) in he for u, v in g.edges()):
            return True
    return False


def brute_alpha(g):
    for k in range(g.n, 0, -1):
        for s in itertools.combinations(range(g.n), k):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(s, 2)):
                return k
    return 0


def test_graph6_known_strings():
    assert write_graph6(generate("path", 3)) == "Bg"
    assert write_graph6(generate("complete", 3)) == "Bw"
    assert parse_graph6(">>graph6<<Bw") == generate("complete", 3)


@pytest.mark.parametrize("bad", ["", "B~", "Bx", "B", "~~~~"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_graph6(bad)


@given(graphs(max_n=12))
def test_graph6_roundtrip(g):
    assert parse_graph6(write_graph6(g)) == g


def test_generators():
    assert generate("cycle", 5).degree_sequence() == (2,) * 5
    assert generate("star", 6).degree_sequence() == (5, 1, 1, 1, 1, 1)
    assert generate("wheel", 6).degree_sequence() == (5, 3, 3, 3, 3, 3)
    assert generate("empty", 3).m == 0
    with pytest.raises(ValueError):
        generate("cycle", 2)
    with pytest.raises(GuardError):
        generate("path", 40)


def test_product_labels():
    g = cartesian_product_complete_path(3, 3)
    assert g.n == 9 and g.m == 15
    assert len(g.edges_of_kind(EdgeKind.PATH)) == 6
    assert len(g.edges_of_kind(EdgeKind.COMPLETE)) == 9
    assert g.label(0, 3) is EdgeKind.PATH and g.label(0, 1) is EdgeKind.COMPLETE
    assert cartesian_product_complete_path(2, 2).unlabeled() == Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_contract_and_delete_maps():
    g = generate("path", 4)
    q, vmap = contract_edge(g, (1, 2))
    assert q == generate("path", 3)
    assert vmap == (0, 1, 1, 2)
    q, vmap = delete_vertex(g, 1)
    assert vmap == (0, None, 1, 2)
    assert q.edges() == [(1, 2)]


def test_contract_keeps_path_label_only_when_all_preimages_are_path():
    k = cartesian_product_complete_path(2, 2)
    q, _ = contract_edges(k, [(0, 2)])
    # the two copies of row 0 merge; row 1's path edge survives
    assert q.n == 3
    kinds = sorted(q.label(u, v).value for u, v in q.edges())
    assert kinds == ["complete", "complete", "path"]


def test_graph_counts():
    assert [len(graphs_of_order(n)) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]


@settings(max_examples=60)
@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(relabel(g, perm)) == canonical_form(g)


@settings(max_examples=60)
@given(graphs(max_n=6), graphs(max_n=6))
def test_isomorphism_matches_brute_force(g, h):
    assert is_isomorphic(g, h) == brute_iso(g, h)


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_independence_number_matches_brute_force(g):
    assert independence_number(g) == brute_alpha(g)


@settings(max_examples=40)
@given(graphs(max_n=6), graphs(max_n=6))
def test_spanning_embedding_matches_supergraphs(g, h):
    if g.n != h.n:
        return
    pi = find_spanning_embedding(g, h)
    want = any(is_isomorphic(s, h) for s in spanning_supergraphs(g)) if h.m - g.m <= 8 else None
    if pi is not None:
        assert all(h.has_edge(pi[u], pi[v]) for u, v in g.edges())
    if want is not None:
        assert (pi is not None) == want


def test_connectivity():
    assert is_connected(generate("cycle", 5))
    assert not is_connected(Graph.from_edges(3, [(0, 1)]))
