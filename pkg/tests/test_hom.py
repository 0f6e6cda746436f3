import pytest

from termgraph.core import TermGraph
from termgraph.errors import NotAHomomorphism, UnknownNode
from termgraph.hom import (
    NodeMap,
    check_homomorphism,
    find_delta_hom,
    find_rigid_bot_hom,
    is_delta_isomorphic,
    is_isomorphic,
    is_rigid,
    position_sets_intersect,
    synchronized_pairs,
    unravel_eq,
)


def test_homomorphism_collapses_equal_leaves(load):
    doc = load("homomorphism")
    phi = find_delta_hom(doc.graph("g1"), doc.graph("g2"))
    assert dict(phi.items()) == {"r": "r", "n1": "n1", "n2": "n2", "n3": "n2"}
    assert phi.image() == {"r", "n1", "n2"}
    assert find_delta_hom(doc.graph("g2"), doc.graph("g1")) is None


def test_delta_nodes_map_anywhere(load):
    doc = load("homomorphism")
    g3, g4 = doc.graph("g3"), doc.graph("g4")
    assert find_delta_hom(g3, g4) is None
    phi = find_delta_hom(g3, g4, {"a", "b"})
    assert dict(phi.items()) == {"r": "r", "n1": "n1", "n2": "r"}
    check_homomorphism(phi, g3, g4)


def test_check_homomorphism_names_the_failing_condition(load):
    doc = load("homomorphism")
    g1, g2 = doc.graph("g1"), doc.graph("g2")
    with pytest.raises(NotAHomomorphism) as excinfo:
        check_homomorphism(NodeMap({"r": "r", "n1": "n1", "n2": "n2"}), g1, g2)
    assert excinfo.value.condition == "totality"
    with pytest.raises(NotAHomomorphism) as excinfo:
        check_homomorphism(NodeMap({"r": "n1", "n1": "n1", "n2": "n2", "n3": "n2"}), g1, g2)
    assert excinfo.value.condition == "root"
    with pytest.raises(NotAHomomorphism) as excinfo:
        check_homomorphism(NodeMap({"r": "r", "n1": "n2", "n2": "n2", "n3": "n2"}), g1, g2)
    assert excinfo.value.condition == "successor"
    g3, g4 = doc.graph("g3"), doc.graph("g4")
    with pytest.raises(NotAHomomorphism) as excinfo:
        check_homomorphism(NodeMap({"r": "r", "n1": "n1", "n2": "r"}), g3, g4)
    assert excinfo.value.condition == "labelling"
    assert excinfo.value.node == "n1"


def test_collapsing_a_shared_leaf_is_not_rigid(load):
    doc = load("sharing")
    g0, g1 = doc.graph("g0"), doc.graph("g1")
    phi = find_delta_hom(g0, g1, {"_|_"})
    assert phi is not None
    assert not is_rigid(phi, g0, g1)
    assert find_rigid_bot_hom(g0, g1) is None


def test_rigid_bot_hom_into_lower_bound(load):
    doc = load("lower-bounds")
    phi = find_rigid_bot_hom(doc.graph("g5"), doc.graph("g1"))
    assert phi["l"] == "l"
    assert phi["b1"] == "n1"


def test_isomorphism_ignores_node_names(load):
    doc = load("term-graph")
    assert is_isomorphic(doc.graph("g"), doc.graph("g_renamed"))
    assert is_delta_isomorphic(doc.graph("g"), doc.graph("g_renamed"), ())
    homs = load("homomorphism")
    assert not is_isomorphic(homs.graph("g1"), homs.graph("g2"))
    assert not is_delta_isomorphic(homs.graph("g1"), homs.graph("g2"), ())


def test_synchronized_pairs_follow_common_positions(load):
    doc = load("lub")
    g, h = doc.graph("g"), doc.graph("h")
    assert synchronized_pairs(g, h) == {("r1", "r2"), ("r1", "n2"), ("n1", "n2")}
    assert position_sets_intersect(g, "r1", h, "n2")
    assert not position_sets_intersect(g, "n1", h, "r2")
    with pytest.raises(UnknownNode):
        position_sets_intersect(g, "missing", h, "r2")


def test_unravel_eq_ignores_sharing(load):
    doc = load("glb-unravel")
    assert unravel_eq(doc.graph("g"), doc.graph("h"))
    sharing = load("sharing")
    assert unravel_eq(sharing.graph("g0"), sharing.graph("g1"))


def test_unravel_eq_on_cycles(load):
    cons = load("cons")
    unrolled = TermGraph.from_dict("r", {"r": ("cons", ["n1", "k"]), "n1": "b", "k": ("cons", ["n2", "r"]), "n2": "b"})
    assert unravel_eq(cons.graph("g2"), unrolled)
    assert not unravel_eq(cons.graph("g2"), cons.graph("h0"))
    assert not unravel_eq(cons.graph("h1"), cons.graph("h2"))
