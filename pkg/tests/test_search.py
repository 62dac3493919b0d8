import random

import pytest

from toricnash import fixtures
from toricnash.cone import Cone
from toricnash.exactmath import identity
from toricnash.iso import find_isomorphism
from toricnash.search import (
    TERMINATION_CYCLE,
    TERMINATION_DEPTH,
    TERMINATION_EXHAUSTED,
    TERMINATION_NODES,
    CycleRecord,
    GraphEdge,
    GraphFormatError,
    GraphNode,
    explore,
    find_cycles,
    load_graph,
    save_graph,
    verify_report_cycles,
)
from toricnash.semigroup import AffineSemigroup, saturation_hilbert_basis


def _saturated(columns, dim):
    s = AffineSemigroup(saturation_hilbert_basis(Cone(columns, dim)), dim)
    s._hilbert = s.generators
    s._saturated = True
    return s


def test_smooth_start_is_single_node():
    s = AffineSemigroup(((1, 0), (0, 1)), 2)
    r = explore(s, 0, cycle_lengths=(1, 2))
    assert r.nodes_explored == 1
    assert r.edges == []
    assert r.cycles == []
    assert r.termination == TERMINATION_EXHAUSTED
    assert r.nodes[r.start_key].smooth


def test_a2_resolves_in_one_step():
    s = _saturated(((1, 0), (1, 2)), 2)
    r = explore(s, 0, cycle_lengths=(1, 2))
    assert r.nodes_explored == 2
    assert r.termination == TERMINATION_EXHAUSTED
    assert r.cycles == []
    smooth = [n for n in r.nodes.values() if n.smooth]
    assert len(smooth) == 1 and smooth[0].depth == 1


def test_loop_example_depth_one():
    s = fixtures.source_semigroup()
    r = explore(s, 3, max_depth=1, cycle_lengths=(1,))
    assert r.nodes_explored == 14
    assert len(r.edges) == 21
    assert r.cycle_lengths_found() == {1}
    assert r.termination == TERMINATION_DEPTH
    assert verify_report_cycles(r)
    loop = [c for c in r.cycles if c.length == 1]
    assert loop and loop[0].node_keys == (r.start_key,)


def test_halt_on_cycle_stops_early():
    s = fixtures.source_semigroup()
    r = explore(s, 3, cycle_lengths=(1,), halt_on_cycle=True)
    assert r.termination == TERMINATION_CYCLE
    assert 1 in r.cycle_lengths_found()
    assert verify_report_cycles(r)


def test_node_limit():
    s = fixtures.source_semigroup()
    r = explore(s, 3, max_depth=3, max_nodes=5, cycle_lengths=(1,))
    assert r.termination == TERMINATION_NODES
    assert r.nodes_explored <= 5


def test_four_dimensional_two_cycle():
    s = _saturated(fixtures.DIM4_CHAR3_COLUMNS, 4)
    r = explore(s, 3, max_depth=2, cycle_lengths=(1, 2))
    assert 2 in r.cycle_lengths_found()
    assert 1 not in r.cycle_lengths_found()
    two = [c for c in r.cycles if c.length == 2]
    assert any(r.start_key in c.node_keys for c in two)
    assert verify_report_cycles(r)


def test_threads_do_not_change_result():
    s = fixtures.source_semigroup()
    r1 = explore(s, 3, max_depth=1, cycle_lengths=(1,))
    r2 = explore(s, 3, max_depth=1, cycle_lengths=(1,), threads=3)
    assert set(r1.nodes) == set(r2.nodes)
    assert [(e.src, e.dst, e.subset) for e in r1.edges] == [
        (e.src, e.dst, e.subset) for e in r2.edges
    ]


def test_no_false_merging():
    # distinct node classes really are pairwise non-equivalent
    s = fixtures.source_semigroup()
    r = explore(s, 3, max_depth=1, cycle_lengths=(1,))
    keys = sorted(r.nodes)[:6]
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            assert find_isomorphism(r.nodes[a].semigroup, r.nodes[b].semigroup) is None


def test_explore_validates_start():
    with pytest.raises(ValueError):
        explore(AffineSemigroup(((1,), (-1,)), 1), 0)
    with pytest.raises(ValueError):
        explore(AffineSemigroup(((1, 0), (1, 1), (1, 3)), 2), 0)  # not saturated
    with pytest.raises(ValueError):
        explore(AffineSemigroup(((2, 0), (0, 2)), 2), 0)  # not the full lattice
    with pytest.raises(ValueError):
        explore(AffineSemigroup(((1, 0), (0, 1)), 2), 0, cycle_lengths=(0,))


def test_find_cycles_on_hand_built_graph():
    s = AffineSemigroup(((1, 0), (0, 1)), 2)
    nodes = {k: GraphNode(k, s, 0, False) for k in ("a", "b", "c")}
    ident = identity(2)
    edges = [
        GraphEdge("a", "a", (0,), ident),
        GraphEdge("a", "b", (1,), ident),
        GraphEdge("b", "a", (0,), ident),
        GraphEdge("b", "a", (2,), ident),  # parallel edge collapses
        GraphEdge("b", "c", (0,), ident),
        GraphEdge("c", "b", (0,), ident),
    ]
    cycles = find_cycles(nodes, edges, (1, 2))
    assert [(c.length, c.node_keys) for c in cycles] == [
        (1, ("a",)),
        (2, ("a", "b")),
        (2, ("b", "c")),
    ]
    assert find_cycles(nodes, edges, (2,)) == [
        CycleRecord(2, ("a", "b"), cycles[1].certificates),
        CycleRecord(2, ("b", "c"), cycles[2].certificates),
    ]
    assert find_cycles(nodes, edges, ()) == []
    three = find_cycles(nodes, edges, (3,))
    assert three == []  # no simple 3-cycle in this graph


def test_save_load_roundtrip(tmp_path):
    s = fixtures.source_semigroup()
    r = explore(s, 3, max_depth=1, cycle_lengths=(1,))
    path = str(tmp_path / "graph.txt")
    save_graph(r, path)
    r2 = load_graph(path)
    assert set(r2.nodes) == set(r.nodes)
    assert r2.start_key == r.start_key
    assert r2.termination == r.termination
    assert r2.characteristic == 3 and r2.normalized
    assert sorted(r2.frontier) == sorted(r.frontier)
    assert [(e.src, e.dst, e.subset, e.certificate) for e in r2.edges] == [
        (e.src, e.dst, e.subset, e.certificate) for e in r.edges
    ]
    for k in r.nodes:
        assert r2.nodes[k].depth == r.nodes[k].depth
        assert r2.nodes[k].smooth == r.nodes[k].smooth
        assert set(r2.nodes[k].semigroup.hilbert_basis()) == set(
            r.nodes[k].semigroup.hilbert_basis()
        )
    assert {c.length for c in r2.cycles} >= {1}


def test_resume_matches_fresh_run(tmp_path):
    s = _saturated(fixtures.DIM4_CHAR3_COLUMNS, 4)
    shallow = explore(s, 3, max_depth=1, cycle_lengths=(1, 2))
    path = str(tmp_path / "g.txt")
    save_graph(shallow, path)
    resumed = explore(
        s, 3, max_depth=2, max_nodes=10_000, cycle_lengths=(1, 2), state=load_graph(path)
    )
    fresh = explore(s, 3, max_depth=2, max_nodes=10_000, cycle_lengths=(1, 2))
    assert set(resumed.nodes) == set(fresh.nodes)
    assert {(e.src, e.dst, e.subset) for e in resumed.edges} == {
        (e.src, e.dst, e.subset) for e in fresh.edges
    }
    assert resumed.cycle_lengths_found() == fresh.cycle_lengths_found() == {2}


def test_resume_rejects_mismatched_state(tmp_path):
    s = fixtures.source_semigroup()
    r = explore(s, 3, max_depth=1, cycle_lengths=(1,))
    with pytest.raises(ValueError):
        explore(s, 5, state=r)
    with pytest.raises(ValueError):
        explore(s, 3, normalized=False, state=r)


def test_load_rejects_malformed_files(tmp_path):
    cases = {
        "dup-meta": "meta 3 1 exhausted k\nmeta 3 1 exhausted k\n",
        "dup-node": (
            "meta 3 1 exhausted a\n"
            "node a 0 0 2 2 1 0 0 1\n"
            "node a 0 0 2 2 1 0 0 1\n"
        ),
        "bad-entries": "meta 3 1 exhausted a\nnode a 0 0 2 2 1 0 0\n",
        "bad-kind": "meta 3 1 exhausted a\nblob x\n",
        "missing-node": (
            "meta 3 1 exhausted a\n"
            "node a 0 0 2 2 1 0 0 1\n"
            "edge a ghost 0 2 1 0 0 1\n"
        ),
        "headless": "node a 0 0 2 2 1 0 0 1\n",
    }
    for name, text in cases.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        with pytest.raises(GraphFormatError):
            load_graph(str(p))


def test_load_empty_file(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("")
    r = load_graph(str(p))
    assert r.nodes == {} and r.edges == [] and r.frontier == []


def test_graph_format_errors_carry_line_numbers(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("meta 3 1 exhausted a\nnode a 0 0 2 2 1 0 0\n")
    with pytest.raises(GraphFormatError) as err:
        load_graph(str(p))
    assert "line 2" in str(err.value)
