import pytest

from termgraph.config import Settings, use_settings
from termgraph import order
from termgraph.core import BOT, Signature, TermGraph, bottom, canonicalize, unravel_to_depth
from termgraph.errors import EmptySequence, EmptySet, NotALowerBound, NotDirected, SizeLimit
from termgraph.order import (
    DepthExact,
    Exact,
    FiniteSeq,
    PeriodicSeq,
    PrefixSeq,
    WindowStable,
    compatible,
    enumerate_canonical,
    glb,
    glb2,
    is_maximal_total,
    leq_injective,
    leq_rigid,
    leq_simple,
    liminf,
    lub_compatible,
    lub_directed_finite,
    suffix_glbs,
)


def test_rigid_glb_of_two_lower_bounds(graph):
    g1, g2 = graph("lower-bounds", "g1"), graph("lower-bounds", "g2")
    assert glb2(g1, g2) == graph("lower-bounds", "g5")
    assert glb2(g2, g1) == graph("lower-bounds", "g5")


def test_injective_lower_bounds_are_not_rigid(graph):
    for lower in ("g3", "g4"):
        for upper in ("g1", "g2"):
            assert leq_injective(graph("lower-bounds", lower), graph("lower-bounds", upper))
        assert not leq_rigid(graph("lower-bounds", lower), graph("lower-bounds", "g1"))
    assert leq_rigid(graph("lower-bounds", "g5"), graph("lower-bounds", "g3"))


def test_sharing_separates_simple_and_rigid_orders(graph):
    g0, g1 = graph("sharing", "g0"), graph("sharing", "g1")
    assert leq_simple(g0, g1)
    assert not leq_rigid(g0, g1)
    assert not leq_injective(g0, g1)
    assert not leq_simple(g1, g0)


def test_bottom_is_least(graph):
    for name, item in [("cons", "g2"), ("lub", "g"), ("term-graph", "g")]:
        assert leq_rigid(bottom(), graph(name, item))


def test_glb_of_sets(graph):
    g1 = graph("lower-bounds", "g1")
    assert glb([g1]) == g1
    assert glb([g1, graph("lower-bounds", "g2"), g1]) == graph("lower-bounds", "g5")
    with pytest.raises(EmptySet):
        glb([])


def test_glb_loses_shared_arguments(graph):
    assert glb2(graph("glb-unravel", "g"), graph("glb-unravel", "h")) == graph("glb-unravel", "glb")


def test_glb_respects_node_cap(load):
    doc = load("cons")
    use_settings(Settings(node_cap=2))
    with pytest.raises(SizeLimit):
        glb2(doc.graph("h1"), doc.graph("h2"))


def ring(k):
    """cons(b, cons(b, ...)) closing back to the root after k cons nodes"""
    labels = {("c", i): "cons" for i in range(k)}
    labels.update({("b", i): "b" for i in range(k)})
    successors = {("c", i): (("b", i), ("c", (i + 1) % k)) for i in range(k)}
    return TermGraph(("c", 0), labels, successors)


def b_chain(k):
    """k cons nodes over b ending in bottom"""
    labels = {("c", i): "cons" for i in range(k)}
    labels.update({("b", i): "b" for i in range(k)})
    labels[("c", k)] = BOT
    successors = {("c", i): (("b", i), ("c", i + 1)) for i in range(k)}
    return TermGraph(("c", 0), labels, successors)


def test_glb_of_cycles_with_coprime_lengths():
    meet = glb2(ring(8), ring(9))
    assert meet == canonicalize(b_chain(8))
    assert glb2(ring(9), ring(8)) == meet
    assert leq_rigid(meet, ring(8)) and leq_rigid(meet, ring(9))


def test_glb_checks_its_result_is_a_lower_bound(graph, monkeypatch):
    monkeypatch.setattr(order, "_rigidity_violations", lambda candidate, g, h: [])
    with pytest.raises(NotALowerBound):
        glb2(graph("glb-unravel", "g"), graph("glb-unravel", "h"))


def test_lub_identifies_synchronized_nodes(graph):
    g, h = graph("lub", "g"), graph("lub", "h")
    assert lub_compatible(g, h) == graph("lub", "lub")
    assert compatible(g, h)


def test_lub_of_incompatible_graphs(graph):
    assert lub_compatible(graph("sharing", "g0"), graph("sharing", "g1")) is None
    assert not compatible(graph("cons", "g2"), graph("cons", "h0"))


def test_lub_with_bottom(graph):
    g2 = graph("cons", "g2")
    assert lub_compatible(bottom(), g2) == g2
    assert lub_compatible(g2, g2) == g2


def test_lub_of_directed_set(graph):
    lower = [graph("lower-bounds", name) for name in ("g5", "g3")]
    assert lub_directed_finite(lower) == graph("lower-bounds", "g3")
    assert lub_directed_finite([graph("lower-bounds", "g1"), graph("lower-bounds", "g5")]) == graph("lower-bounds", "g1")
    with pytest.raises(NotDirected):
        lub_directed_finite([graph("lower-bounds", "g3"), graph("lower-bounds", "g4")])
    with pytest.raises(EmptySet):
        lub_directed_finite([])


def test_total_graphs_are_maximal(graph):
    assert is_maximal_total(graph("cons", "g2"))
    assert not is_maximal_total(graph("lub", "h"))


def test_suffix_glbs(graph):
    g1, g2, g5 = (graph("lower-bounds", name) for name in ("g1", "g2", "g5"))
    assert suffix_glbs([g1, g2, g1]) == [g5, g5, g1]


def test_liminf_of_closed_sequence(graph):
    result = liminf(FiniteSeq([graph("cons", "g1"), graph("cons", "g2")]), 4)
    assert result.graph == graph("cons", "g2")
    assert result.exactness == Exact()
    with pytest.raises(EmptySequence):
        liminf(FiniteSeq([]), 4)


def test_liminf_of_periodic_sequence(graph):
    g1, g2 = graph("lower-bounds", "g1"), graph("lower-bounds", "g2")
    result = liminf(PeriodicSeq([graph("cons", "g2")], [g1, g2]), 3)
    assert result.graph == graph("lower-bounds", "g5")
    assert result.exactness == Exact()
    with pytest.raises(ValueError):
        PeriodicSeq([g1], [])


def test_liminf_of_periodic_sequence_skips_the_prefix():
    result = liminf(PeriodicSeq([ring(8)], [ring(9)]), 3)
    assert result.graph == canonicalize(ring(9))
    assert result.exactness == Exact()


def test_liminf_of_constant_prefix(graph):
    g2 = graph("cons", "g2")
    result = liminf(PrefixSeq([g2] * 4), 6)
    assert result.graph == g2
    assert result.exactness == DepthExact(6)


def test_liminf_of_single_graph_prefix(graph):
    result = liminf(PrefixSeq([graph("cons", "g2")]), 6)
    assert result.exactness == WindowStable(1)


def test_liminf_of_growing_prefix(graph):
    g2 = graph("cons", "g2")
    approximations = [unravel_to_depth(g2, k) for k in range(1, 5)]
    result = liminf(PrefixSeq(approximations), 6)
    assert result.graph == approximations[2]
    assert result.exactness == WindowStable(3)


def test_liminf_of_short_prefix_uses_the_whole_chain(graph):
    g1, g5 = graph("lower-bounds", "g1"), graph("lower-bounds", "g5")
    result = liminf(PrefixSeq([g1, g5]), 4)
    assert result.graph == g5
    assert result.exactness == DepthExact(2)


def test_enumeration_counts():
    sig = Signature({"a": 0, "f": 2})
    assert len(enumerate_canonical(sig, 2)) == 17
    assert len(enumerate_canonical(sig, 2, include_bot=True)) == 21
    assert len(enumerate_canonical(sig, 1)) == 2


def test_enumeration_yields_distinct_canonical_graphs():
    found = enumerate_canonical(Signature({"a": 0, "f": 2}), 3)
    assert len(set(found)) == len(found)
    assert all(canonicalize(TermGraph(g.root, g.labels, g.successors)) == g for g in found)


def test_enumeration_respects_limit():
    use_settings(Settings(enum_limit=100))
    with pytest.raises(SizeLimit):
        enumerate_canonical(Signature({"a": 0, "f": 2}), 3)
