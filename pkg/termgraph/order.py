# The rigid partial order on partial term graphs: comparisons, glb/lub, limit inferior, enumeration
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from networkx.utils import UnionFind

from .config import get_settings
from .core import (
    BOT,
    CanonicalTermGraph,
    Node,
    Signature,
    TermGraph,
    acyclic_positions,
    bot_depth,
    canonicalize,
    depth,
    is_position_of,
    is_total,
)
from .errors import EmptySequence, EmptySet, NotALowerBound, NotDirected, SizeLimit
from .hom import find_delta_hom, find_rigid_bot_hom, synchronized_pairs

logger = logging.getLogger(__name__)


def leq_rigid(g: TermGraph, h: TermGraph) -> bool:
    return find_rigid_bot_hom(g, h) is not None


def leq_simple(g: TermGraph, h: TermGraph) -> bool:
    return find_delta_hom(g, h, {BOT}) is not None


def leq_injective(g: TermGraph, h: TermGraph) -> bool:
    """A bottom-homomorphism exists and is injective on non-bottom nodes"""
    phi = find_delta_hom(g, h, {BOT})
    if phi is None:
        return False
    images = [phi[n] for n in g.nodes if g.label(n) != BOT]
    return len(images) == len(set(images))


def is_maximal_total(g: TermGraph) -> bool:
    return is_total(g)


# Greatest lower bounds


def _product(g: TermGraph, h: TermGraph) -> Tuple[Dict, Dict]:
    """Synchronized product from the roots; pairs with different or bottom labels become bottom leaves

    Pairs whose components sit at different depths are bottom leaves too; rigid
    bottom-homomorphisms preserve the depth of non-bottom nodes.
    """
    cap = get_settings().node_cap
    labels, successors = {}, {}
    stack = [(g.root, h.root)]
    pruned = 0
    while stack:
        pair = stack.pop()
        if pair in labels:
            continue
        n, m = pair
        label = g.label(n)
        if label != BOT and label == h.label(m) and depth(g, n) == depth(h, m):
            labels[pair] = label
            successors[pair] = tuple(zip(g.succ(n), h.succ(m)))
            stack.extend(successors[pair])
        else:
            pruned += label != BOT and label == h.label(m)
            labels[pair] = BOT
            successors[pair] = ()
        if len(labels) > cap:
            raise SizeLimit("glb product", len(labels), cap)
    logger.debug("[glb2] product of %d pairs, %d cut by depth", len(labels), pruned)
    return labels, successors


def _rigidity_violations(candidate: TermGraph, g: TermGraph, h: TermGraph) -> List[Node]:
    violations = []
    for pair in candidate.nodes:
        if candidate.label(pair) == BOT:
            continue
        n, m = pair
        if any(not is_position_of(candidate, pos, pair) for pos in acyclic_positions(g, n)) or any(
            not is_position_of(candidate, pos, pair) for pos in acyclic_positions(h, m)
        ):
            violations.append(pair)
    return violations


def glb2(g: TermGraph, h: TermGraph) -> CanonicalTermGraph:
    labels, successors = _product(g, h)
    root = (g.root, h.root)
    rounds = 0
    while True:
        candidate = TermGraph(root, labels, successors).rooted_at(root)
        violations = _rigidity_violations(candidate, g, h)
        if not violations:
            break
        rounds += 1
        labels = dict(candidate.labels)
        successors = dict(candidate.successors)
        for pair in violations:
            labels[pair] = BOT
            successors[pair] = ()
    logger.debug("[glb2] %d product nodes after %d rigidity rounds", len(candidate), rounds)
    result = canonicalize(candidate)
    if not (leq_rigid(result, g) and leq_rigid(result, h)):
        raise NotALowerBound(f"glb candidate {result!r} is not below both inputs")
    return result


def glb(graphs: Sequence[TermGraph]) -> CanonicalTermGraph:
    if not graphs:
        raise EmptySet("glb of an empty set")
    result = canonicalize(graphs[0])
    for g in graphs[1:]:
        result = glb2(result, g)
    return result


# Least upper bounds


def lub_compatible(g: TermGraph, h: TermGraph) -> Optional[CanonicalTermGraph]:
    """Least upper bound of g and h, or None when they are incompatible"""
    classes = UnionFind()
    for n in g.nodes:
        classes[(0, n)]
    for m in h.nodes:
        classes[(1, m)]
    for n, m in synchronized_pairs(g, h):
        classes.union((0, n), (1, m))

    graphs = {0: g, 1: h}
    labels: Dict[Node, str] = {}
    members: Dict[Node, List[Tuple[int, Node]]] = {}
    for side, graph in graphs.items():
        for n in graph.nodes:
            members.setdefault(classes[(side, n)], []).append((side, n))

    successors: Dict[Node, Tuple[Node, ...]] = {}
    for leader, group in members.items():
        symbols = {graphs[side].label(n) for side, n in group} - {BOT}
        if len(symbols) > 1:
            logger.debug("[lub] label clash %s in class of %r", sorted(symbols), leader)
            return None
        labels[leader] = symbols.pop() if symbols else BOT
        targets = {
            tuple(classes[(side, s)] for s in graphs[side].succ(n))
            for side, n in group
            if graphs[side].label(n) != BOT
        }
        if len(targets) > 1:
            logger.debug("[lub] inconsistent successors in class of %r", leader)
            return None
        successors[leader] = targets.pop() if targets else ()

    result = canonicalize(TermGraph(classes[(0, g.root)], labels, successors))
    if leq_rigid(g, result) and leq_rigid(h, result):
        return result
    logger.debug("[lub] quotient is not a rigid upper bound")
    return None


def compatible(g: TermGraph, h: TermGraph) -> bool:
    return lub_compatible(g, h) is not None


def lub_directed_finite(graphs: Sequence[TermGraph]) -> CanonicalTermGraph:
    """Maximum of a finite directed set"""
    if not graphs:
        raise EmptySet("lub of an empty set")
    for candidate in graphs:
        if all(leq_rigid(g, candidate) for g in graphs):
            return canonicalize(candidate)
    raise NotDirected("no element of the set is above all others")


# Limit inferior


@dataclass(frozen=True)
class Exact:
    def __str__(self):
        return "exact"


@dataclass(frozen=True)
class DepthExact:
    depth: int

    def __str__(self):
        return f"depth-exact({self.depth})"


@dataclass(frozen=True)
class WindowStable:
    window: int

    def __str__(self):
        return f"window-stable({self.window})"


Exactness = Union[Exact, DepthExact, WindowStable]


@dataclass(frozen=True)
class ApproxResult:
    graph: CanonicalTermGraph
    exactness: Exactness
    evidence: str = ""


@dataclass(frozen=True)
class FiniteSeq:
    """A closed sequence; its last element is the final graph"""

    graphs: Tuple[TermGraph, ...]

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))


@dataclass(frozen=True)
class PeriodicSeq:
    """The omega-sequence prefix . period . period . ..."""

    prefix: Tuple[TermGraph, ...]
    period: Tuple[TermGraph, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must not be empty")

    @property
    def graphs(self) -> Tuple[TermGraph, ...]:
        return self.prefix + self.period


@dataclass(frozen=True)
class PrefixSeq:
    """Finite window onto an omega-sequence whose continuation is unknown"""

    graphs: Tuple[TermGraph, ...]

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))


SequenceProvider = Union[FiniteSeq, PeriodicSeq, PrefixSeq]


def suffix_glbs(graphs: Sequence[TermGraph]) -> List[CanonicalTermGraph]:
    """glb(graphs[b:]) for every b, computed right to left"""
    result = [canonicalize(graphs[-1])]
    for g in reversed(graphs[:-1]):
        result.append(glb2(g, result[-1]))
    result.reverse()
    return result


def liminf(seq: SequenceProvider, depth_goal: int) -> ApproxResult:
    if not seq.graphs:
        raise EmptySequence("liminf of an empty sequence")

    if isinstance(seq, FiniteSeq):
        return ApproxResult(canonicalize(seq.graphs[-1]), Exact(), "closed sequence: last element")

    if isinstance(seq, PeriodicSeq):
        # from the end of the prefix on, every suffix holds exactly the period's graphs
        stable = glb(seq.period)
        return ApproxResult(stable, Exact(), f"glb of a period of {len(seq.period)} after {len(seq.prefix)} prefix graphs")

    return _open_prefix_liminf(seq.graphs, depth_goal)


def _open_prefix_liminf(graphs: Sequence[TermGraph], depth_goal: int) -> ApproxResult:
    from .metric import truncate

    if len(graphs) == 1:
        return ApproxResult(canonicalize(graphs[0]), WindowStable(1), "single graph")
    chain = suffix_glbs(graphs)[:-1]
    candidate = chain[-1]
    d = min(depth_goal, bot_depth(candidate))
    window = min(get_settings().window, len(chain))
    recent = [truncate(h, d) for h in chain[-window:]]
    if all(t == recent[-1] for t in recent):
        evidence = f"last {window} suffix glbs agree up to depth {d}"
        logger.debug("[liminf] %s", evidence)
        return ApproxResult(candidate, DepthExact(d), evidence)
    return ApproxResult(candidate, WindowStable(window), f"suffix glbs still change above depth {d}")


# Enumeration


def _candidate_count(choices: Sequence[Tuple[str, int]], size: int) -> int:
    return sum(size ** arity for _, arity in choices) ** size


def enumerate_canonical(sig: Signature, max_nodes: int, include_bot: bool = False) -> List[CanonicalTermGraph]:
    """Every canonical term graph over sig with at most max_nodes nodes, each once"""
    choices = sorted(sig.symbols.items())
    if include_bot:
        choices.append((BOT, 0))
    limit = get_settings().enum_limit
    total = sum(_candidate_count(choices, size) for size in range(1, max_nodes + 1))
    if total > limit:
        raise SizeLimit("enumeration candidates", total, limit)

    found = []
    for size in range(1, max_nodes + 1):
        for assignment in itertools.product(choices, repeat=size):
            options = [itertools.product(range(size), repeat=arity) for _, arity in assignment]
            for targets in itertools.product(*options):
                labels = {k: label for k, (label, _) in enumerate(assignment)}
                g = TermGraph(0, labels, dict(enumerate(targets)))
                if list(g.minimal_positions) == list(range(size)):
                    found.append(CanonicalTermGraph(0, labels, g.successors))
    logger.debug("[enum] %d canonical graphs from %d candidates", len(found), total)
    return found

