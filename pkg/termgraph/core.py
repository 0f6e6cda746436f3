# Term graphs over a ranked signature: positions, depths, canonical forms and unravelling
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from types import MappingProxyType
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import get_settings
from .errors import (
    ArityMismatch,
    DanglingSuccessor,
    InvalidPosition,
    NotATerm,
    SizeLimit,
    UndeclaredSymbol,
    UnknownNode,
    UnreachableNode,
    ValidationError,
    Violation,
)

logger = logging.getLogger(__name__)

BOT = "_|_"
VARIABLE_PREFIX = "$"

Node = Hashable
Position = Tuple[int, ...]


def is_variable(label: str) -> bool:
    return label.startswith(VARIABLE_PREFIX)


def variable(name: str) -> str:
    """Label of the variable called name"""
    return VARIABLE_PREFIX + name


@total_ordering
class _Omega:
    """Depth larger than every natural number"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, _Omega)

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("omega")

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "omega"


OMEGA = _Omega()
Depth = Union[int, _Omega]


@dataclass(frozen=True)
class Signature:
    """Ranked alphabet; bottom and variables are always available with arity 0"""

    symbols: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for name, arity in self.symbols.items():
            if name == BOT or is_variable(name):
                raise ValueError(f"symbol {name!r} is reserved")
            if arity < 0:
                raise ValueError(f"symbol {name!r} has negative arity")

    def arity(self, label: str) -> Optional[int]:
        if label == BOT or is_variable(label):
            return 0
        return self.symbols.get(label)

    def declares(self, label: str) -> bool:
        return self.arity(label) is not None

    def merged(self, other: "Signature") -> "Signature":
        symbols = dict(self.symbols)
        for name, arity in other.symbols.items():
            if symbols.get(name, arity) != arity:
                raise ValueError(f"symbol {name!r} declared with arities {symbols[name]} and {arity}")
            symbols[name] = arity
        return Signature(symbols)


class TermGraph:
    """Rooted graph with labelled nodes and ordered successors; never mutated"""

    def __init__(self, root: Node, labels: Mapping[Node, str], successors: Optional[Mapping[Node, Sequence[Node]]] = None):
        if root not in labels:
            raise UnknownNode(root)
        successors = successors or {}
        self.root = root
        self._labels = MappingProxyType(dict(labels))
        self._successors = MappingProxyType({n: tuple(successors.get(n, ())) for n in self._labels})

    @classmethod
    def from_dict(cls, root: Node, nodes: Mapping[Node, Union[str, Tuple[str, Sequence[Node]]]]) -> "TermGraph":
        """Build from {node: label} or {node: (label, [successors])}"""
        labels, successors = {}, {}
        for n, spec in nodes.items():
            if isinstance(spec, str):
                labels[n], successors[n] = spec, ()
            else:
                labels[n], successors[n] = spec[0], tuple(spec[1])
        return cls(root, labels, successors)

    @property
    def labels(self) -> Mapping[Node, str]:
        return self._labels

    @property
    def successors(self) -> Mapping[Node, Tuple[Node, ...]]:
        return self._successors

    @property
    def nodes(self) -> Tuple[Node, ...]:
        return tuple(self._labels)

    def label(self, n: Node) -> str:
        try:
            return self._labels[n]
        except KeyError:
            raise UnknownNode(n) from None

    def succ(self, n: Node) -> Tuple[Node, ...]:
        try:
            return self._successors[n]
        except KeyError:
            raise UnknownNode(n) from None

    def edges(self) -> Iterator[Tuple[Node, int, Node]]:
        for n, targets in self._successors.items():
            for i, m in enumerate(targets):
                yield n, i, m

    def __len__(self):
        return len(self._labels)

    def __contains__(self, n):
        return n in self._labels

    def __iter__(self):
        return iter(self._labels)

    def __eq__(self, other):
        if not isinstance(other, TermGraph):
            return NotImplemented
        return (
            self.root == other.root
            and dict(self._labels) == dict(other._labels)
            and dict(self._successors) == dict(other._successors)
        )

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.root, frozenset(self._labels.items()), frozenset(self._successors.items())))

    def __repr__(self):
        parts = []
        for n in self.nodes:
            targets = self._successors[n]
            args = "(" + ", ".join(repr(m) for m in targets) + ")" if targets else ""
            parts.append(f"{n!r}: {self._labels[n]}{args}")
        return f"{type(self).__name__}(root={self.root!r}; " + "; ".join(parts) + ")"

    def reachable_from(self, start: Node) -> List[Node]:
        """Nodes reachable from start in breadth-first order; dangling targets are skipped"""
        seen = {start: None}
        queue = deque([start])
        while queue:
            n = queue.popleft()
            for m in self._successors.get(n, ()):
                if m in self._labels and m not in seen:
                    seen[m] = None
                    queue.append(m)
        return list(seen)

    def rooted_at(self, n: Node) -> "TermGraph":
        """Sub-term graph g|n: the nodes reachable from n, rooted at n"""
        if n not in self:
            raise UnknownNode(n)
        keep = self.reachable_from(n)
        return TermGraph(n, {m: self._labels[m] for m in keep}, {m: self._successors[m] for m in keep})

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for n in self.nodes:
            graph.add_node(n, label=self._labels[n])
        for n, i, m in self.edges():
            graph.add_edge(n, m, key=i)
        return graph

    @cached_property
    def minimal_positions(self) -> Dict[Node, Position]:
        # breadth-first with successors in index order: first visit is shortest, then lexicographically least
        positions = {self.root: ()}
        queue = deque([self.root])
        while queue:
            n = queue.popleft()
            for i, m in enumerate(self._successors[n]):
                if m not in positions:
                    positions[m] = positions[n] + (i,)
                    queue.append(m)
        return positions

    @cached_property
    def acyclic_position_map(self) -> Dict[Node, FrozenSet[Position]]:
        cap = get_settings().node_cap
        if len(self) > cap:
            raise SizeLimit("acyclic position search", len(self), cap)
        graph = self.to_networkx()
        found = {}
        for n in self.nodes:
            if n == self.root:
                found[n] = frozenset({()})
                continue
            paths = nx.all_simple_edge_paths(graph, self.root, n)
            found[n] = frozenset(tuple(key for _, _, key in path) for path in paths)
        logger.debug("[acyclic] %d nodes, %d positions", len(self), sum(len(p) for p in found.values()))
        return found

    @cached_property
    def acyclic_predecessor_map(self) -> Dict[Node, FrozenSet[Node]]:
        return {
            n: frozenset(node_at(self, pos[:-1]) for pos in positions if pos)
            for n, positions in self.acyclic_position_map.items()
        }


class CanonicalTermGraph(TermGraph):
    """Term graph numbered 0..k-1 by minimal position; only canonicalize builds these"""


def bottom() -> CanonicalTermGraph:
    return CanonicalTermGraph(0, {0: BOT}, {0: ()})


def validate(g: TermGraph, sig: Signature) -> List[Violation]:
    """Arity, declaration and reachability violations of g; empty when g is valid"""
    violations: List[Violation] = []
    for n in g.nodes:
        label = g.label(n)
        targets = g.succ(n)
        arity = sig.arity(label)
        if arity is None:
            violations.append(UndeclaredSymbol(n, name=label))
        elif arity != len(targets):
            violations.append(ArityMismatch(n, expected=arity, actual=len(targets)))
        for i, m in enumerate(targets):
            if m not in g:
                violations.append(DanglingSuccessor(n, index=i))
    reachable = set(g.reachable_from(g.root))
    violations.extend(UnreachableNode(n) for n in g.nodes if n not in reachable)
    return violations


def ensure_valid(g: TermGraph, sig: Signature) -> TermGraph:
    violations = validate(g, sig)
    if violations:
        raise ValidationError(violations)
    return g


def node_at(g: TermGraph, position: Sequence[int]) -> Node:
    n = g.root
    for step, i in enumerate(position):
        targets = g.succ(n)
        if not 0 <= i < len(targets):
            raise InvalidPosition(position, step)
        n = targets[i]
    return n


def aliases(g: TermGraph, first: Sequence[int], second: Sequence[int]) -> bool:
    return node_at(g, first) == node_at(g, second)


def is_position_of(g: TermGraph, position: Sequence[int], n: Node) -> bool:
    try:
        return node_at(g, position) == n
    except InvalidPosition:
        return False


def acyclic_positions(g: TermGraph, n: Node) -> FrozenSet[Position]:
    if n not in g:
        raise UnknownNode(n)
    return g.acyclic_position_map[n]


def acyclic_predecessors(g: TermGraph, n: Node) -> FrozenSet[Node]:
    if n not in g:
        raise UnknownNode(n)
    return g.acyclic_predecessor_map[n]


def minimal_position(g: TermGraph, n: Node) -> Position:
    if n not in g:
        raise UnknownNode(n)
    return g.minimal_positions[n]


def depth(g: TermGraph, n: Node) -> int:
    return len(minimal_position(g, n))


def graph_depth(g: TermGraph) -> int:
    return max(len(p) for p in g.minimal_positions.values())


def delta_depth(g: TermGraph, delta: Iterable[str]) -> Depth:
    delta = frozenset(delta)
    depths = [len(p) for n, p in g.minimal_positions.items() if g.label(n) in delta]
    return min(depths) if depths else OMEGA


def bot_depth(g: TermGraph) -> Depth:
    return delta_depth(g, {BOT})


def is_total(g: TermGraph) -> bool:
    return all(label != BOT for label in g.labels.values())


def canonical_renaming(g: TermGraph) -> Dict[Node, int]:
    """Map each reachable node to its rank in minimal-position order"""
    return {n: k for k, n in enumerate(g.minimal_positions)}


def canonicalize(g: TermGraph) -> CanonicalTermGraph:
    """Isomorphic copy numbered by minimal positions; unreachable nodes are dropped"""
    if isinstance(g, CanonicalTermGraph):
        return g
    renaming = canonical_renaming(g)
    labels = {renaming[n]: g.label(n) for n in renaming}
    successors = {renaming[n]: tuple(renaming[m] for m in g.succ(n)) for n in renaming}
    return CanonicalTermGraph(0, labels, successors)


def is_term_tree(g: TermGraph) -> bool:
    incoming = {n: 0 for n in g.nodes}
    for _, _, m in g.edges():
        incoming[m] += 1
    return incoming[g.root] == 0 and all(count == 1 for n, count in incoming.items() if n != g.root)


def unravel_to_depth(g: TermGraph, d: Depth) -> CanonicalTermGraph:
    """Term tree carrying g's labels at positions shorter than d and bottom at depth d"""
    limit = get_settings().unravel_limit
    labels: Dict[int, str] = {}
    successors: Dict[int, Tuple[int, ...]] = {}
    queue = deque([(0, g.root, 0)])
    next_id = 1
    while queue:
        k, n, level = queue.popleft()
        if level == d:
            labels[k], successors[k] = BOT, ()
            continue
        labels[k] = g.label(n)
        children = []
        for m in g.succ(n):
            children.append(next_id)
            queue.append((next_id, m, level + 1))
            next_id += 1
        successors[k] = tuple(children)
        if next_id > limit:
            raise SizeLimit("unravelling", next_id, limit)
    return CanonicalTermGraph(0, labels, successors)


def term_truncate(t: TermGraph, d: Depth) -> CanonicalTermGraph:
    if not is_term_tree(t):
        raise NotATerm(f"{t!r} is not a term tree")
    if d == OMEGA:
        return canonicalize(t)
    return unravel_to_depth(t, d)
