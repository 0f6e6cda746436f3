# Rigid truncation, similarity and the dyadic ultrametric on term graphs
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import FrozenSet, Hashable, Optional, Union

from .core import (
    BOT,
    OMEGA,
    CanonicalTermGraph,
    Depth,
    Node,
    Position,
    TermGraph,
    acyclic_predecessors,
    bot_depth,
    bottom,
    canonicalize,
    depth,
    graph_depth,
    is_total,
)
from .errors import PartialInput, format_position
from .hom import is_isomorphic
from .order import ApproxResult, DepthExact, FiniteSeq, PeriodicSeq, SequenceProvider, liminf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncationParts:
    """Retained nodes and fringe edges (node, index); at depth 0 the fringe is just the root"""

    retained: FrozenSet[Node]
    fringe: FrozenSet[Hashable]


def truncation_parts(g: TermGraph, d: int) -> TruncationParts:
    if d == 0:
        return TruncationParts(frozenset(), frozenset({g.root}))

    retained = {n for n in g.nodes if depth(g, n) < d}
    pending = list(retained)
    while pending:
        n = pending.pop()
        for m in acyclic_predecessors(g, n):
            if m not in retained:
                retained.add(m)
                pending.append(m)

    fringe = set()
    for n in retained:
        shallow = depth(g, n) < d - 1
        for i, m in enumerate(g.succ(n)):
            if m not in retained:
                fringe.add((n, i))
            elif not shallow and n not in acyclic_predecessors(g, m):
                fringe.add((n, i))
    return TruncationParts(frozenset(retained), frozenset(fringe))


@dataclass(frozen=True)
class _FringeNode:
    parent: Node
    index: int


def truncate(g: TermGraph, d: Depth) -> CanonicalTermGraph:
    if d == OMEGA:
        return canonicalize(g)
    if d == 0:
        return bottom()
    parts = truncation_parts(g, d)
    labels = {}
    successors = {}
    for n in parts.retained:
        labels[n] = g.label(n)
        successors[n] = tuple(
            _FringeNode(n, i) if (n, i) in parts.fringe else m for i, m in enumerate(g.succ(n))
        )
    for n, i in parts.fringe:
        labels[_FringeNode(n, i)] = BOT
    return canonicalize(TermGraph(g.root, labels, successors))


def similarity(g: TermGraph, h: TermGraph) -> Depth:
    """Largest depth at which the rigid truncations of g and h are isomorphic"""
    if is_isomorphic(g, h):
        return OMEGA
    bound = max(graph_depth(g), graph_depth(h)) + 2
    for d in range(1, bound + 1):
        if truncate(g, d) != truncate(h, d):
            return d - 1
    return OMEGA


@total_ordering
@dataclass(frozen=True)
class DyadicDistance:
    """Either zero or 2^-exponent"""

    exponent: Optional[int] = None

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def as_fraction(self) -> Fraction:
        return Fraction(0) if self.is_zero else Fraction(1, 2 ** self.exponent)

    def __lt__(self, other):
        if not isinstance(other, DyadicDistance):
            return NotImplemented
        if other.is_zero:
            return False
        return self.is_zero or self.exponent > other.exponent

    def __str__(self):
        return "0" if self.is_zero else f"2^-{self.exponent}"


ZERO = DyadicDistance()


def exp(k: int) -> DyadicDistance:
    return DyadicDistance(k)


def distance(g: TermGraph, h: TermGraph) -> DyadicDistance:
    s = similarity(g, h)
    return ZERO if s == OMEGA else exp(s)


@dataclass(frozen=True)
class NotCauchy:
    """A bottom persists above the depth goal: the sequence has no metric limit"""

    witness: Position
    evidence: str = ""

    def __str__(self):
        return f"not_cauchy {format_position(self.witness)}"


def shallowest_bottom(g: TermGraph) -> Optional[Position]:
    positions = [p for n, p in g.minimal_positions.items() if g.label(n) == BOT]
    return min(positions, key=lambda p: (len(p), p)) if positions else None


def limit_of_sequence(seq: SequenceProvider, depth_goal: int) -> Union[ApproxResult, NotCauchy]:
    for g in seq.graphs:
        if not is_total(g):
            raise PartialInput(f"sequence element {g!r} contains a bottom node")

    if isinstance(seq, PeriodicSeq):
        result = liminf(seq, depth_goal)
        if is_total(result.graph):
            return result
        witness = shallowest_bottom(result.graph)
        return NotCauchy(witness, f"the period does not stabilize: glb has bottom at {format_position(witness)}")

    result = liminf(seq, depth_goal)
    if isinstance(seq, FiniteSeq) or bot_depth(result.graph) >= depth_goal:
        return result

    if isinstance(result.exactness, DepthExact):
        witness = shallowest_bottom(result.graph)
        logger.debug("[limit] stable bottom at %s", format_position(witness))
        return NotCauchy(witness, f"bottom at {format_position(witness)} is stable: {result.evidence}")
    return result

