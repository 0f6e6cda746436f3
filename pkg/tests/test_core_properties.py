import itertools

from hypothesis import given
from hypothesis import strategies as st

from termgraph.core import acyclic_positions, aliases, canonicalize, node_at, term_truncate, unravel_to_depth

from . import term_oracle as oracle
from .strategies import depths, raw_term_graphs, renamings, term_graphs, terms


def positions(g, max_length=4):
    """Every position of g no longer than max_length"""
    found = [()]
    frontier = [()]
    for _ in range(max_length):
        frontier = [p + (i,) for p in frontier for i in range(len(g.succ(node_at(g, p))))]
        found.extend(frontier)
    return found


@given(term_graphs())
def test_every_node_has_an_acyclic_position(g):
    for n in g.nodes:
        assert acyclic_positions(g, n)


@given(raw_term_graphs())
def test_canonical_form_keeps_labels_and_aliasing(g):
    c = canonicalize(g)
    assert c.root == 0 and c.nodes == tuple(range(len(g)))
    assert canonicalize(c) is c
    walk = positions(g)
    for p in walk:
        assert c.label(node_at(c, p)) == g.label(node_at(g, p))
    for p, q in itertools.combinations(walk, 2):
        assert aliases(c, p, q) == aliases(g, p, q)


@given(terms(), depths)
def test_unravelling_a_term_is_truncation(t, d):
    tree = oracle.to_graph(t)
    assert unravel_to_depth(tree, d) == term_truncate(tree, d)


@given(raw_term_graphs(), st.data())
def test_canonical_form_ignores_node_names(g, data):
    h = data.draw(renamings(g))
    assert canonicalize(h) == canonicalize(g)
    assert canonicalize(h) != h
