# Term graph rewriting: rules, matching, rule application, traces and convergence analysis
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from .core import (
    BOT,
    CanonicalTermGraph,
    Node,
    Position,
    Signature,
    TermGraph,
    acyclic_positions,
    canonical_renaming,
    canonicalize,
    is_variable,
    minimal_position,
    node_at,
    unravel_to_depth,
)
from .errors import (
    ArityMismatch,
    BottomInRule,
    DanglingSuccessor,
    DuplicateVariableNode,
    InvalidPosition,
    NotApplicable,
    ScriptMismatch,
    UndeclaredSymbol,
    UnknownNode,
    UnreachableNode,
    VariableAtLhsRoot,
    VariableNotInLhs,
    Violation,
    format_position,
)
from .hom import NodeMap, find_delta_hom
from .metric import NotCauchy, limit_of_sequence
from .order import ApproxResult, FiniteSeq, PeriodicSeq, PrefixSeq, SequenceProvider, liminf

logger = logging.getLogger(__name__)


class Rule:
    """A term graph rule: one graph over symbols and variables with a left and a right root"""

    def __init__(self, name: str, labels: Mapping[Node, str], successors: Mapping[Node, Sequence[Node]],
                 lhs_root: Node, rhs_root: Node):
        self.name = name
        self.labels = dict(labels)
        self.successors = {n: tuple(successors.get(n, ())) for n in self.labels}
        self.lhs_root = lhs_root
        self.rhs_root = rhs_root
        for root in (lhs_root, rhs_root):
            if root not in self.labels:
                raise UnknownNode(root)

    def __repr__(self):
        return f"Rule({self.name!r}, lhs={self.lhs_root!r}, rhs={self.rhs_root!r}, {len(self.labels)} nodes)"

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return (self.name, self.labels, self.successors, self.lhs_root, self.rhs_root) == (
            other.name, other.labels, other.successors, other.lhs_root, other.rhs_root)

    __hash__ = None

    def _graph(self) -> TermGraph:
        return TermGraph(self.lhs_root, self.labels, self.successors)

    @property
    def lhs(self) -> TermGraph:
        return self._graph().rooted_at(self.lhs_root)

    @property
    def rhs(self) -> TermGraph:
        return self._graph().rooted_at(self.rhs_root)

    @property
    def variables(self) -> frozenset:
        return frozenset(label for label in self.labels.values() if is_variable(label))


@dataclass(frozen=True)
class GRS:
    signature: Signature
    rules: Tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def rule(self, name: str) -> Rule:
        for rule in self.rules:
            if rule.name == name:
                return rule
        raise KeyError(name)


def validate_rule(rule: Rule, sig: Signature) -> List[Violation]:
    violations: List[Violation] = []
    graph = rule._graph()
    for n, label in rule.labels.items():
        targets = rule.successors[n]
        if label == BOT:
            violations.append(BottomInRule(n))
        arity = sig.arity(label)
        if arity is None:
            violations.append(UndeclaredSymbol(n, name=label))
        elif arity != len(targets):
            violations.append(ArityMismatch(n, expected=arity, actual=len(targets)))
        for i, m in enumerate(targets):
            if m not in rule.labels:
                violations.append(DanglingSuccessor(n, index=i))

    from_lhs = set(graph.reachable_from(rule.lhs_root))
    from_rhs = set(graph.reachable_from(rule.rhs_root))
    violations.extend(UnreachableNode(n) for n in rule.labels if n not in from_lhs | from_rhs)

    if is_variable(rule.labels[rule.lhs_root]):
        violations.append(VariableAtLhsRoot(rule.lhs_root))
    seen: Dict[str, Node] = {}
    for n, label in rule.labels.items():
        if not is_variable(label):
            continue
        if label in seen:
            violations.append(DuplicateVariableNode(n, name=label))
        seen.setdefault(label, n)
        if n not in from_lhs:
            violations.append(VariableNotInLhs(n))
    return violations


def validate_grs(grs: GRS) -> List[Violation]:
    return [v for rule in grs.rules for v in validate_rule(rule, grs.signature)]


# Matching


def match_rule(rule: Rule, g: TermGraph, n: Node) -> Optional[NodeMap]:
    """The matching V-homomorphism from the left-hand side onto g|n, if any"""
    if n not in g:
        raise UnknownNode(n)
    return find_delta_hom(rule.lhs, g.rooted_at(n), rule.variables)


@dataclass(frozen=True)
class Redex:
    node: Node
    rule: str


def find_redexes(grs: GRS, g: TermGraph) -> List[Redex]:
    """Applicable (node, rule) pairs by minimal position, then rule order"""
    redexes = []
    for n in sorted(g.minimal_positions, key=lambda m: _shortlex(g.minimal_positions[m])):
        for rule in grs.rules:
            if match_rule(rule, g, n) is not None:
                redexes.append(Redex(n, rule.name))
    return redexes


def is_normal_form(grs: GRS, g: TermGraph) -> bool:
    return not find_redexes(grs, g)


def _shortlex(position: Position) -> Tuple[int, Position]:
    return len(position), position


# Rule application


@dataclass(frozen=True)
class RuleCopy:
    """Fresh node standing for a rule node copied into the host graph"""

    rule: str
    node: Hashable


@dataclass(frozen=True)
class PreReductionStep:
    source: TermGraph
    redex: Node
    rule: str
    result_node: Node
    graph: TermGraph


def apply_rule(g: TermGraph, n: Node, rule: Rule) -> PreReductionStep:
    phi = match_rule(rule, g, n)
    if phi is None:
        raise NotApplicable(f"rule {rule.name} does not match at node {n!r}")
    lhs_nodes = set(rule.lhs.nodes)
    added = [m for m in rule.labels if m not in lhs_nodes]

    def host(m: Node) -> Node:
        return phi[m] if m in lhs_nodes else RuleCopy(rule.name, m)

    # g1: add the part of the rule outside its left-hand side
    labels = dict(g.labels)
    successors = dict(g.successors)
    for m in added:
        labels[RuleCopy(rule.name, m)] = rule.labels[m]
        successors[RuleCopy(rule.name, m)] = tuple(host(s) for s in rule.successors[m])

    # g2: redirect edges ending in the redex
    target = host(rule.rhs_root)
    successors = {m: tuple(target if s == n else s for s in targets) for m, targets in successors.items()}

    # g3: move the root if needed and drop what became unreachable
    root = target if g.root == n else g.root
    result = TermGraph(root, labels, successors).rooted_at(root)
    logger.debug("[apply] %s at %r: %d -> %d nodes", rule.name, n, len(g), len(result))
    return PreReductionStep(g, n, rule.name, target, result)


@dataclass(frozen=True)
class ReductionStep:
    source: CanonicalTermGraph
    redex_node: int
    rule: str
    result_node: int
    target: CanonicalTermGraph

    @property
    def redex_position(self) -> Position:
        return minimal_position(self.source, self.redex_node)


def step(g: TermGraph, n: Node, rule: Rule) -> ReductionStep:
    source = canonicalize(g)
    redex = canonical_renaming(g)[n] if n in g else n
    pre = apply_rule(source, redex, rule)
    renaming = canonical_renaming(pre.graph)
    return ReductionStep(source, redex, rule.name, renaming[pre.result_node], canonicalize(pre.graph))


# Traces and strategies


class Strategy(str, Enum):
    LEFTMOST_OUTERMOST = "leftmost-outermost"
    BREADTH_FIRST = "breadth-first"
    BY_SCRIPT = "by-script"


class TerminationReason(str, Enum):
    NORMAL_FORM = "normal-form"
    STEP_CAP = "step-cap"
    SCRIPT_END = "script-end"


@dataclass(frozen=True)
class ReductionTrace:
    start: CanonicalTermGraph
    steps: Tuple[ReductionStep, ...]
    strategy: Strategy
    reason: TerminationReason

    @property
    def graphs(self) -> Tuple[CanonicalTermGraph, ...]:
        return (self.start,) + tuple(s.target for s in self.steps)

    @property
    def final(self) -> CanonicalTermGraph:
        return self.graphs[-1]


def _leftmost_key(g: TermGraph, n: Node) -> Position:
    return min(acyclic_positions(g, n))


def _choose(grs: GRS, g: CanonicalTermGraph, strategy: Strategy) -> Optional[Redex]:
    redexes = find_redexes(grs, g)
    if not redexes:
        return None
    if strategy is Strategy.BREADTH_FIRST:
        return redexes[0]
    order = {rule.name: k for k, rule in enumerate(grs.rules)}
    return min(redexes, key=lambda r: (_leftmost_key(g, r.node), order[r.rule]))


def run(grs: GRS, g: TermGraph, strategy: Union[Strategy, str] = Strategy.LEFTMOST_OUTERMOST,
        max_steps: int = 16, script: Sequence[Tuple[Position, str]] = ()) -> ReductionTrace:
    strategy = Strategy(strategy)
    current = canonicalize(g)
    steps: List[ReductionStep] = []
    reason = TerminationReason.STEP_CAP

    while len(steps) < max_steps:
        if strategy is Strategy.BY_SCRIPT:
            if len(steps) == len(script):
                reason = TerminationReason.SCRIPT_END
                break
            position, name = script[len(steps)]
            node = _scripted_node(current, position)
            try:
                rule = grs.rule(name)
            except KeyError:
                raise ScriptMismatch(f"unknown rule {name}") from None
            if match_rule(rule, current, node) is None:
                raise ScriptMismatch(f"rule {name} does not match at {format_position(position)}")
        else:
            redex = _choose(grs, current, strategy)
            if redex is None:
                reason = TerminationReason.NORMAL_FORM
                break
            node, rule = redex.node, grs.rule(redex.rule)
        taken = step(current, node, rule)
        steps.append(taken)
        current = taken.target

    if strategy is not Strategy.BY_SCRIPT and reason is TerminationReason.STEP_CAP and is_normal_form(grs, current):
        reason = TerminationReason.NORMAL_FORM
    logger.debug("[run] %s: %d steps, %s", strategy.value, len(steps), reason.value)
    return ReductionTrace(canonicalize(g), tuple(steps), strategy, reason)


def _scripted_node(g: TermGraph, position: Position) -> Node:
    try:
        return node_at(g, position)
    except InvalidPosition:
        raise ScriptMismatch(f"position {format_position(position)} is not in the graph") from None


# Convergence analysis


def trace_sequence(trace: ReductionTrace, period: Optional[int] = None) -> SequenceProvider:
    """Sequence provider for the graphs of a trace"""
    graphs = trace.graphs
    if trace.reason is TerminationReason.NORMAL_FORM:
        return FiniteSeq(graphs)
    if period:
        if period > len(graphs):
            raise ValueError(f"period {period} is longer than the trace")
        return PeriodicSeq(graphs[:-period], graphs[-period:])
    if trace.strategy is not Strategy.BY_SCRIPT:
        first_seen: Dict[CanonicalTermGraph, int] = {}
        for k, g in enumerate(graphs):
            if g in first_seen:
                j = first_seen[g]
                logger.debug("[trace] graph %d repeats graph %d", k, j)
                return PeriodicSeq(graphs[:j], graphs[j:k])
            first_seen[g] = k
    return PrefixSeq(graphs)


def analyze_m_convergence(trace: Union[ReductionTrace, SequenceProvider], depth_goal: int,
                          period: Optional[int] = None) -> Union[ApproxResult, NotCauchy]:
    seq = trace_sequence(trace, period) if isinstance(trace, ReductionTrace) else trace
    return limit_of_sequence(seq, depth_goal)


def analyze_p_convergence(trace: Union[ReductionTrace, SequenceProvider], depth_goal: int,
                          period: Optional[int] = None) -> ApproxResult:
    seq = trace_sequence(trace, period) if isinstance(trace, ReductionTrace) else trace
    return liminf(seq, depth_goal)


def unravel_rule(rule: Rule, d: int) -> Tuple[CanonicalTermGraph, CanonicalTermGraph]:
    return unravel_to_depth(rule.lhs, d), unravel_to_depth(rule.rhs, d)
