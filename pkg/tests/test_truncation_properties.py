from hypothesis import given

from termgraph.core import BOT, bot_depth
from termgraph.hom import find_rigid_bot_hom
from termgraph.metric import truncate, truncation_parts
from termgraph.order import leq_rigid

from .strategies import depths, term_graphs


@given(term_graphs(), depths)
def test_truncation_maps_rigidly_into_the_graph(g, d):
    t = truncate(g, d)
    phi = find_rigid_bot_hom(t, g)
    assert phi is not None
    assert bot_depth(t) >= min(d, bot_depth(g))


@given(term_graphs(), depths)
def test_truncation_keeps_exactly_the_retained_nodes(g, d):
    t = truncate(g, d)
    phi = find_rigid_bot_hom(t, g)
    kept = {phi[n] for n in t.nodes if t.label(n) != BOT}
    retained = truncation_parts(g, d).retained
    assert kept == {n for n in retained if g.label(n) != BOT}


@given(term_graphs(), depths, depths)
def test_truncation_is_monotone_in_depth(g, d, e):
    d, e = sorted((d, e))
    assert leq_rigid(truncate(g, d), truncate(g, e))


@given(term_graphs(), depths, depths)
def test_truncating_a_truncation(h, k, d):
    g = truncate(h, k)
    assert leq_rigid(truncate(g, d), truncate(h, d))


@given(term_graphs(), depths, depths)
def test_nested_truncation(g, d, e):
    e, d = sorted((d, e))
    assert truncate(truncate(g, d), e) == truncate(g, e)


@given(term_graphs(allow_bot=False), depths, depths)
def test_lower_bounds_share_shallow_truncations(h, k, d):
    g = truncate(h, k)
    if bot_depth(g) >= d:
        assert truncate(g, d) == truncate(h, d)


@given(term_graphs(allow_bot=False), depths, depths)
def test_rigid_maps_preserve_retained_and_fringe(h, k, d):
    g = truncate(h, k)
    if d == 0 or bot_depth(g) < d:
        return
    phi = find_rigid_bot_hom(g, h)
    below, above = truncation_parts(g, d), truncation_parts(h, d)
    assert {phi[n] for n in below.retained} == above.retained
    for n in below.retained:
        for i in range(len(g.succ(n))):
            assert ((n, i) in below.fringe) == ((phi[n], i) in above.fringe)
