# Delta-homomorphisms between term graphs: search, rigidity, isomorphism and bisimilarity
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, Mapping, Optional, Set, Tuple

from .core import BOT, Node, TermGraph, acyclic_positions, canonicalize, is_position_of
from .errors import NotAHomomorphism, UnknownNode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeMap:
    """Total node map from a source graph to a target graph, computed for a set delta"""

    mapping: Mapping[Node, Node]
    delta: FrozenSet[str] = field(default_factory=frozenset)

    def __getitem__(self, n: Node) -> Node:
        return self.mapping[n]

    def __len__(self):
        return len(self.mapping)

    def items(self):
        return self.mapping.items()

    def image(self) -> Set[Node]:
        return set(self.mapping.values())


def find_delta_hom(g: TermGraph, h: TermGraph, delta: Iterable[str] = ()) -> Optional[NodeMap]:
    """The unique delta-homomorphism g -> h, or None"""
    delta = frozenset(delta)
    mapping: Dict[Node, Node] = {}
    worklist = deque([(g.root, h.root)])
    while worklist:
        n, m = worklist.popleft()
        if n in mapping:
            if mapping[n] != m:
                logger.debug("[hom] %r would map to %r and %r", n, mapping[n], m)
                return None
            continue
        mapping[n] = m
        label = g.label(n)
        if label in delta:
            continue
        if h.label(m) != label:
            return None
        worklist.extend(zip(g.succ(n), h.succ(m)))
    return NodeMap(mapping, delta)


def check_homomorphism(phi: NodeMap, g: TermGraph, h: TermGraph) -> None:
    """Raise NotAHomomorphism unless phi satisfies the root, labelling and successor conditions"""
    for n in g.nodes:
        if n not in phi.mapping or phi[n] not in h:
            raise NotAHomomorphism("totality", n)
    if phi[g.root] != h.root:
        raise NotAHomomorphism("root", g.root)
    for n in g.nodes:
        label = g.label(n)
        if label in phi.delta:
            continue
        m = phi[n]
        if h.label(m) != label:
            raise NotAHomomorphism("labelling", n)
        if tuple(phi[s] for s in g.succ(n)) != h.succ(m):
            raise NotAHomomorphism("successor", n)


def is_rigid(phi: NodeMap, g: TermGraph, h: TermGraph) -> bool:
    """Every acyclic position of phi(n) in h is a position of n in g, for each non-delta node n"""
    check_homomorphism(phi, g, h)
    for n in g.nodes:
        if g.label(n) in phi.delta:
            continue
        for position in acyclic_positions(h, phi[n]):
            if not is_position_of(g, position, n):
                logger.debug("[rigid] %r misses acyclic position %s of %r", n, position, phi[n])
                return False
    return True


def find_rigid_bot_hom(g: TermGraph, h: TermGraph) -> Optional[NodeMap]:
    phi = find_delta_hom(g, h, {BOT})
    if phi is not None and is_rigid(phi, g, h):
        return phi
    return None


def is_isomorphic(g: TermGraph, h: TermGraph) -> bool:
    return canonicalize(g) == canonicalize(h)


def is_delta_isomorphic(g: TermGraph, h: TermGraph, delta: Iterable[str]) -> bool:
    """Delta-homomorphisms exist both ways and are mutually inverse"""
    forth = find_delta_hom(g, h, delta)
    back = find_delta_hom(h, g, delta)
    if forth is None or back is None:
        return False
    return all(back[forth[n]] == n for n in g.nodes) and all(forth[back[m]] == m for m in h.nodes)


def synchronized_pairs(g: TermGraph, h: TermGraph) -> Set[Tuple[Node, Node]]:
    """Node pairs reached by walking the same position in g and in h"""
    seen = {(g.root, h.root)}
    queue = deque(seen)
    while queue:
        n, m = queue.popleft()
        for pair in zip(g.succ(n), h.succ(m)):
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return seen


def position_sets_intersect(g: TermGraph, n: Node, h: TermGraph, m: Node) -> bool:
    if n not in g:
        raise UnknownNode(n)
    if m not in h:
        raise UnknownNode(m)
    return (n, m) in synchronized_pairs(g, h)


def unravel_eq(g: TermGraph, h: TermGraph) -> bool:
    """Equal unravellings, decided by partition refinement on the disjoint union"""
    graphs = {0: g, 1: h}
    nodes = [(side, n) for side, graph in graphs.items() for n in graph.nodes]
    block = {v: graphs[v[0]].label(v[1]) for v in nodes}
    count = len(set(block.values()))
    while True:
        signature = {
            v: (block[v], tuple(block[(v[0], s)] for s in graphs[v[0]].succ(v[1])))
            for v in nodes
        }
        numbering: Dict[Hashable, int] = {}
        refined = {v: numbering.setdefault(signature[v], len(numbering)) for v in nodes}
        block = refined
        if len(numbering) == count:
            break
        count = len(numbering)
    logger.debug("[uneq] %d blocks over %d nodes", count, len(nodes))
    return block[(0, g.root)] == block[(1, h.root)]
