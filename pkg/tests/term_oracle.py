"""Terms as nested tuples (label, (children...)) and the textbook operations on them.

Used as an independent oracle for term graphs without sharing.
"""
from termgraph.core import BOT, OMEGA, TermGraph, canonicalize

BOTTOM = (BOT, ())


def to_graph(term):
    labels, successors = {}, {}

    def build(t):
        k = len(labels)
        labels[k] = t[0]
        successors[k] = tuple(build(child) for child in t[1])
        return k

    build(term)
    return canonicalize(TermGraph(0, labels, successors))


def leq(s, t):
    if s[0] == BOT:
        return True
    return s[0] == t[0] and all(leq(a, b) for a, b in zip(s[1], t[1]))


def glb(s, t):
    if s[0] != t[0] or s[0] == BOT:
        return BOTTOM
    return (s[0], tuple(glb(a, b) for a, b in zip(s[1], t[1])))


def truncate(t, d):
    if d == 0:
        return BOTTOM
    return (t[0], tuple(truncate(child, d - 1) for child in t[1]))


def similarity(s, t):
    """Depth of the shallowest position where the labels differ, OMEGA if none"""
    if s[0] != t[0]:
        return 0
    below = [similarity(a, b) for a, b in zip(s[1], t[1])]
    finite = [d for d in below if d != OMEGA]
    return 1 + min(finite) if finite else OMEGA


def bot_depth(t):
    if t[0] == BOT:
        return 0
    below = [bot_depth(child) for child in t[1]]
    finite = [d for d in below if d != OMEGA]
    return 1 + min(finite) if finite else OMEGA
