# Error types and validation records for term graphs, rules and documents
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence


class TermGraphError(Exception):
    """Base class for every error raised by the library"""


class InvalidPosition(TermGraphError):
    """A position leaves the graph (an index exceeds the arity on the walk)"""

    def __init__(self, position, step: int):
        self.position = tuple(position)
        self.step = step
        super().__init__(f"position {format_position(self.position)} is invalid at step {step}")


class UnknownNode(TermGraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node {node!r}")


class SizeLimit(TermGraphError):
    """An operation would exceed a configured size bound"""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: {size} exceeds the limit {limit}")


class EmptySet(TermGraphError):
    pass


class NotDirected(TermGraphError):
    pass


class EmptySequence(TermGraphError):
    pass


class PartialInput(TermGraphError):
    """A metric operation received a graph containing a bottom node"""


class NotApplicable(TermGraphError):
    pass


class ScriptMismatch(TermGraphError):
    pass


class NotAHomomorphism(TermGraphError):
    def __init__(self, condition: str, node=None):
        self.condition = condition
        self.node = node
        where = "" if node is None else f" at node {node!r}"
        super().__init__(f"not a homomorphism: {condition} condition fails{where}")


class NotATerm(TermGraphError):
    """The graph has sharing or cycles where a term tree is required"""


class NotALowerBound(TermGraphError):
    """A computed greatest lower bound fails to sit rigidly below one of its inputs"""


class ParseError(TermGraphError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


# Validation records; validate() returns these instead of raising

@dataclass(frozen=True)
class Violation:
    node: Optional[Hashable] = None

    @property
    def kind(self) -> str:
        return type(self).__name__

    def __str__(self):
        return f"{self.kind}({self.node!r})"


@dataclass(frozen=True)
class ArityMismatch(Violation):
    expected: int = 0
    actual: int = 0

    def __str__(self):
        return f"ArityMismatch({self.node!r}): expected {self.expected} successors, got {self.actual}"


@dataclass(frozen=True)
class UnreachableNode(Violation):
    pass


@dataclass(frozen=True)
class UndeclaredSymbol(Violation):
    name: str = ""

    def __str__(self):
        return f"UndeclaredSymbol({self.name!r}) at node {self.node!r}"


@dataclass(frozen=True)
class DanglingSuccessor(Violation):
    index: int = 0

    def __str__(self):
        return f"DanglingSuccessor({self.node!r}, {self.index})"


@dataclass(frozen=True)
class VariableNotInLhs(Violation):
    pass


@dataclass(frozen=True)
class DuplicateVariableNode(Violation):
    name: str = ""

    def __str__(self):
        return f"DuplicateVariableNode({self.name!r}) at node {self.node!r}"


@dataclass(frozen=True)
class VariableAtLhsRoot(Violation):
    pass


@dataclass(frozen=True)
class BottomInRule(Violation):
    pass


class ValidationError(TermGraphError):
    def __init__(self, violations: Sequence[Violation], subject: str = "graph"):
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid {subject}: {details}")


def format_position(position) -> str:
    """Render a position as <i.j.k>"""
    return "<" + ".".join(str(i) for i in position) + ">"
