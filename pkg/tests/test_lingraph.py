import itertools
import random

import pytest

from flm import ConceptGraph, ExpertCollection, LinguisticSpace, Strength, classify_experts, graph_to_matrix
from flm import is_connected, load_model
from flm.errors import DuplicateEdge, EmptyCollection, SelfLoop, ZeroEdge
from flm.lingraph import matrix_to_graph

from fixtures import MODELS, STRENGTH, TEN_EDGES

SP = LinguisticSpace.chain("strength", STRENGTH)
TEN = [f"C{k}" for k in range(1, 11)]


def ten_graph():
    return ConceptGraph.from_labels(SP, TEN, TEN_EDGES, name="G")


def test_ten_concept_matrix():
    m = graph_to_matrix(ten_graph())
    idx = {c: k for k, c in enumerate(TEN)}
    assert m.shape == (10, 10)
    assert m[idx["C1"], idx["C2"]].name == "good"
    assert m[idx["C3"], idx["C2"]].name == "just_fair"
    assert m[idx["C5"], idx["C10"]].name == "bad"
    assert m[idx["C2"], idx["C1"]].is_zero
    assert all(m[i, i].is_zero for i in range(10))
    assert sum(not t.is_zero for t in m.flat()) == len(TEN_EDGES)


def test_file_graph_matches_fixture():
    assert load_model(MODELS / "graphs.flm").graphs["G"] == ten_graph()


def test_empty_graph_is_zero_matrix():
    assert graph_to_matrix(ConceptGraph(SP, ["a", "b", "c"])).is_zero()


def test_undirected_matrix_is_symmetric():
    g = ConceptGraph.from_labels(SP, ["a", "b", "c"], [("a", "b", "good"), ("c", "b", "bad")], directed=False)
    m = graph_to_matrix(g)
    assert m == m.transpose()


def test_round_trip_edge_set():
    for directed in (True, False):
        g = ten_graph() if directed else ConceptGraph.from_labels(SP, TEN, TEN_EDGES[:5], directed=False)
        back = matrix_to_graph(graph_to_matrix(g), list(g.concepts), directed)
        assert back.edge_set() == g.edge_set()


def test_invalid_edges():
    with pytest.raises(SelfLoop):
        ConceptGraph.from_labels(SP, ["a", "b"], [("a", "a", "good")])
    with pytest.raises(ZeroEdge):
        ConceptGraph.from_labels(SP, ["a", "b"], [("a", "b", "0")])
    g = ConceptGraph.from_labels(SP, ["a", "b"], [("a", "b", "good"), ("a", "b", "bad")])
    with pytest.raises(DuplicateEdge):
        graph_to_matrix(g)


def test_connectivity_basics():
    assert is_connected(ConceptGraph(SP, ["a"]))
    assert not is_connected(ConceptGraph(SP, ["a", "b"]))
    assert is_connected(ten_graph())
    # direction is ignored
    assert is_connected(ConceptGraph.from_labels(SP, ["a", "b", "c"], [("a", "b", "good"), ("c", "b", "bad")]))


def test_expert_graphs_from_file():
    b = load_model(MODELS / "graphs.flm")
    assert not is_connected(b.graphs["E1"])
    assert is_connected(b.graphs["E2"]) and is_connected(b.graphs["E3"])
    panel = classify_experts(b.experts["panel"])
    assert panel.kind is Strength.MIXED and (panel.connected, panel.total) == (2, 3)
    assert str(panel) == "2-strong (mixed 2/3)"
    assert classify_experts(b.experts["connected_panel"]).kind is Strength.SUPER_STRONG
    assert classify_experts(b.experts["scattered_panel"]).kind is Strength.TOTALLY_DISCONNECTED


def test_mixed_three_of_five():
    rng = random.Random(5)
    concepts = ["a", "b", "c", "d"]
    path = [("a", "b", "good"), ("b", "c", "fair"), ("c", "d", "bad")]
    connected = [ConceptGraph.from_labels(SP, concepts, path, name=f"g{k}") for k in range(3)]
    split = [ConceptGraph.from_labels(SP, concepts, [("a", "b", "good")], name=f"h{k}") for k in range(2)]
    graphs = connected + split
    rng.shuffle(graphs)
    v = classify_experts(ExpertCollection(graphs))
    assert v.kind is Strength.MIXED and v.connected == 3


def test_empty_collection_and_mismatched_concepts():
    with pytest.raises(EmptyCollection):
        classify_experts(ExpertCollection([]))
    with pytest.raises(ValueError):
        ExpertCollection([ConceptGraph(SP, ["a"]), ConceptGraph(SP, ["b"])])


def test_single_graph_collection():
    for g in (ten_graph(), ConceptGraph(SP, ["a", "b"])):
        assert (classify_experts(ExpertCollection([g])).kind is Strength.SUPER_STRONG) == is_connected(g)


def test_connectivity_invariant_under_relabeling():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 7)
        pairs = [(i, j) for i, j in itertools.permutations(range(n), 2)]
        edges = [(i, j, rng.choice(SP.terms[1:])) for i, j in rng.sample(pairs, min(len(pairs), rng.randint(0, n)))]
        seen, uniq = set(), []
        for e in edges:
            if (e[0], e[1]) not in seen:
                seen.add((e[0], e[1]))
                uniq.append(e)
        g = ConceptGraph(SP, [f"c{k}" for k in range(n)], uniq)
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert is_connected(h) == is_connected(g)
        assert all(graph_to_matrix(h)[i, i].is_zero for i in range(n))
