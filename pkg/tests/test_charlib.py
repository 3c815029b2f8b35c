import json

import pytest

from zfthrottle.charlib import (
    Witness,
    build_extension,
    catalog,
    collapse_extension,
    contract_chain_edge,
    find_non_monotone_minor,
    obtainable_floor,
    obtainable_standard,
    optimal_force_sets,
)
from zfthrottle.graph import (
    EdgeKind,
    Graph,
    GuardError,
    canonical_form,
    cartesian_product_complete_path,
    contract_edge,
    generate,
    parse_graph6,
)
from zfthrottle.propagation import propagate_force_set
from zfthrottle.rules import Force, RuleId
from zfthrottle.throttling import order_upper_bound, throttling_number


def chain(*vs):
    return [(a, b) for a, b in zip(vs, vs[1:])]


def three_chain_example():
    # chains v1v2v3, v4v5v6, v7v8v9 (0-based) with cross edges v2v5 and v6v8
    g = Graph.from_edges(9, chain(0, 1, 2) + chain(3, 4, 5) + chain(6, 7, 8) + [(1, 4), (5, 7)])
    forces = chain(0, 1, 2) + chain(3, 4, 5) + chain(6, 7, 8)
    return g, {0, 3, 6}, forces


def canon(n, edges):
    return canonical_form(Graph.from_edges(n, edges)).decode()


# extensions ---------------------------------------------------------------

def test_extension_with_a_doubled_vertex():
    g, b, fs = three_chain_example()
    sched = propagate_force_set(RuleId.Z, g, b, fs)
    assert sched.pt == 3
    ext = build_extension(g, b, fs)
    assert (ext.rows, ext.columns) == (3, 4)
    assert ext.tau[7] == 2
    assert sorted(x for x, v in ext.origin.items() if v == 7) == [5, 8]
    assert all(sum(ext.tau[v] for v in ch) == 4 for ch in ext.chains)
    assert collapse_extension(ext) == g


def test_extension_of_a_path_is_the_path():
    p4 = generate("path", 4)
    ext = build_extension(p4, {0}, chain(0, 1, 2, 3))
    assert ext.graph.unlabeled() == p4
    assert set(ext.tau.values()) == {1}


def test_extension_of_c4_is_the_product():
    c4 = generate("cycle", 4)
    ext = build_extension(c4, {0, 1}, [(0, 3), (1, 2)])
    assert ext.graph == cartesian_product_complete_path(2, 2)
    assert ext.graph.labels == cartesian_product_complete_path(2, 2).labels


def test_extension_rejects_slow_forces():
    # one chain doing all the work takes two steps where one suffices; an
    # incomplete set of forces never colours everything
    with pytest.raises(ValueError):
        build_extension(generate("path", 4), {0, 3}, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        build_extension(generate("path", 3), {0}, [(0, 1)])


def test_extension_json_layout():
    out = build_extension(generate("cycle", 4), {0, 1}, [(0, 3), (1, 2)]).to_json()
    assert out["layout"] == [[0, 3], [1, 2]]
    json.dumps(out)


# chain contraction -----------------------------------------------------------

def test_contract_first_edge_of_three_chain():
    out = contract_chain_edge(generate("path", 3), {0}, chain(0, 1, 2), (0, 1), check=True)
    ve = out.merged
    assert out.blue == frozenset({ve})
    assert out.forces == frozenset({Force(ve, out.vertex_map[2])})


def test_contract_single_edge_chain():
    out = contract_chain_edge(generate("path", 2), {0}, [(0, 1)], (0, 1), check=True)
    assert out.forces == frozenset() and out.blue == frozenset({out.merged})
    assert propagate_force_set(RuleId.Z, out.graph, out.blue, out.forces).pt == 0


def test_contract_inner_edge_of_four_chain():
    out = contract_chain_edge(generate("path", 4), {0}, chain(0, 1, 2, 3), (1, 2), check=True)
    vm, ve = out.vertex_map, out.merged
    assert out.forces == frozenset({Force(vm[0], ve), Force(ve, vm[3])})
    assert propagate_force_set(RuleId.Z, out.graph, out.blue, out.forces).pt == 2


def test_contract_last_edge():
    out = contract_chain_edge(generate("path", 4), {0}, chain(0, 1, 2, 3), (2, 3), check=True)
    vm, ve = out.vertex_map, out.merged
    assert out.forces == frozenset({Force(vm[0], vm[1]), Force(vm[1], ve)})


def test_contract_rejects_unused_edge():
    with pytest.raises(ValueError):
        contract_chain_edge(generate("cycle", 4), {0, 1}, [(0, 3), (1, 2)], (0, 1))


def test_contraction_never_raises_throttling():
    for g6 in ["D~{", "DQw", "Dhc", "CF"]:
        g = parse_graph6(g6)
        th = throttling_number(RuleId.Z, g)
        for fs in optimal_force_sets(g, th.witness_blue):
            for f in fs:
                e = (min(f.source, f.target), max(f.source, f.target))
                out = contract_chain_edge(g, th.witness_blue, fs, e, check=True)
                assert throttling_number(RuleId.Z, out.graph).value <= th.value


# characterisations -----------------------------------------------------------

def test_floor_examples():
    ok, w = obtainable_floor(generate("cycle", 4), 3)
    assert ok and (w.a, w.b, w.contracted, w.deleted) == (2, 1, (), ())
    assert obtainable_floor(Graph.from_edges(4, []), 3)[0]
    assert not obtainable_floor(generate("star", 4), 3)[0]
    assert not obtainable_floor(generate("path", 5), 3)[0]


def test_standard_examples():
    star = generate("star", 4)
    assert obtainable_standard(star, 4)[0]
    assert not obtainable_standard(star, 3)[0]
    assert obtainable_standard(generate("path", 4), 3)[0]
    assert obtainable_standard(generate("complete", 3), 3)[0]
    assert obtainable_standard(Graph.from_edges(1, []), 1)[0]


@pytest.mark.parametrize("test", [obtainable_floor, obtainable_standard])
def test_witnesses_replay(test):
    for g6 in ["Cr", "C^", "DQw", "D?{", "Bw", "E?bw"]:
        g = parse_graph6(g6)
        for t in range(1, 6):
            ok, w = test(g, t)
            if ok:
                assert canonical_form(w.replay()) == canonical_form(g)
                assert set(w.to_json()) == {"a", "b", "contracted", "deleted", "order"}
                if w.order == "contract_then_delete":
                    host = cartesian_product_complete_path(w.a, w.b + 1)
                    assert all(host.label(*e) is EdgeKind.PATH for e in w.contracted)


def test_standard_witness_deletes_complete_edges_only():
    ok, w = obtainable_standard(generate("path", 4), 3)
    host = cartesian_product_complete_path(w.a, w.b + 1)
    assert all(host.label(*e) is EdgeKind.COMPLETE for e in w.deleted)


def test_guards():
    with pytest.raises(GuardError):
        obtainable_floor(generate("path", 3), 7)
    with pytest.raises(GuardError):
        catalog(RuleId.FLOOR_Z, 5)


# catalogues -----------------------------------------------------------------

def test_floor_catalog_small():
    assert catalog(RuleId.FLOOR_Z, 1, exact=True) == [canon(1, [])]
    assert set(catalog(RuleId.FLOOR_Z, 2, exact=True)) == {canon(2, [(0, 1)]), canon(2, [])}


def test_floor_catalog_three():
    want = {
        canon(4, chain(0, 1, 2, 3, 0)), canon(4, chain(0, 1, 2, 3)), canon(4, [(0, 1), (2, 3)]),
        canon(4, chain(1, 2, 3)), canon(4, [(0, 1)]), canon(4, []),
        canon(3, chain(0, 1, 2, 0)), canon(3, chain(0, 1, 2)), canon(3, [(1, 2)]), canon(3, []),
    }
    assert set(catalog(RuleId.FLOOR_Z, 3, exact=True)) == want


@pytest.mark.parametrize("rule", [RuleId.Z, RuleId.FLOOR_Z])
def test_catalogs_are_nested_and_bounded(rule):
    for t in range(2, 5):
        small, big = set(catalog(rule, t - 1)), set(catalog(rule, t))
        assert small <= big
        assert all(ord(s[0]) - 63 <= order_upper_bound(t) for s in big)


@pytest.mark.parametrize("rule", [RuleId.Z, RuleId.FLOOR_Z])
def test_catalog_members_have_the_right_throttling_number(rule):
    for t in range(1, 5):
        for s in catalog(rule, t, exact=True):
            assert throttling_number(rule, parse_graph6(s)).value == t


# non-monotonicity -------------------------------------------------------------

def test_single_contraction_degrees():
    host = cartesian_product_complete_path(3, 3)
    q, _ = contract_edge(host, (0, 3))
    assert q.degree_sequence() == (5, 4, 4, 3, 3, 3, 3, 3)


def test_non_monotone_minor():
    w = find_non_monotone_minor()
    assert w.th_host == 5 and w.th_minor == 6
    assert w.degree_sequence == (5, 3, 3, 3, 3, 3, 3, 3)
    assert throttling_number(RuleId.FLOOR_Z, w.graph).value == 6
    assert w.to_json()["graph6"]


def test_witness_json_roundtrip():
    w = Witness(2, 1, ((0, 2),), (), "delete_then_contract")
    assert w.to_json() == {"a": 2, "b": 1, "contracted": [[0, 2]], "deleted": [], "order": "delete_then_contract"}
    assert w.replay().n == 3
