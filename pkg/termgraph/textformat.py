"""The .tg text format: a signature, named graphs, named rules and named systems.

    sig { cons/2; a/0; b/0; c/0; }
    graph g { root n0; n0: cons(n1, n0); n1: b; }
    rule rho { lhs l; rhs r; l: cons(x1, x); x1: a; x: $x; r: cons(y, l); y: b; }
    system s { rho; }

`_|_` is the bottom symbol, `$name` a variable, `#` starts a comment.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from arpeggio import EOF, NoMatch, Optional as Opt, ParserPython, PTNodeVisitor, ZeroOrMore, visit_parse_tree
from arpeggio import RegExMatch as _

from .core import BOT, Signature, TermGraph, canonicalize, validate
from .errors import ParseError, Violation
from .rewriting import GRS, Rule, validate_rule

logger = logging.getLogger(__name__)


# Grammar

def comment():
    return _(r"#[^\n]*")


def ident():
    return _(r"[A-Za-z0-9_][A-Za-z0-9_']*")


def nat():
    return _(r"\d+")


def bottom():
    return _(r"_\|_")


def variable():
    return _(r"\$[A-Za-z_][A-Za-z0-9_']*")


def label():
    return [bottom, variable, ident]


def successors():
    return "(", ident, ZeroOrMore(",", ident), ")"


def nodedef():
    return ident, ":", label, Opt(successors), ";"


def symbol_decl():
    return ident, "/", nat, ";"


def signature():
    return "sig", "{", ZeroOrMore(symbol_decl), "}"


def root_decl():
    return "root", ident, ";"


def graph():
    return "graph", ident, "{", root_decl, ZeroOrMore(nodedef), "}"


def lhs_decl():
    return "lhs", ident, ";"


def rhs_decl():
    return "rhs", ident, ";"


def rule():
    return "rule", ident, "{", lhs_decl, rhs_decl, ZeroOrMore(nodedef), "}"


def member():
    return ident, ";"


def system():
    return "system", ident, "{", ZeroOrMore(member), "}"


def document():
    return ZeroOrMore([signature, graph, rule, system]), EOF


_parser = None


def _get_parser() -> ParserPython:
    global _parser
    if _parser is None:
        _parser = ParserPython(document, comment, autokwd=True)
    return _parser


@dataclass
class Document:
    signature: Signature = field(default_factory=Signature)
    graphs: Dict[str, TermGraph] = field(default_factory=dict)
    rules: Dict[str, Rule] = field(default_factory=dict)
    systems: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def graph(self, name: Optional[str] = None) -> TermGraph:
        """Named graph, or the first graph of the document"""
        if name is None:
            if not self.graphs:
                raise KeyError("document has no graph")
            return next(iter(self.graphs.values()))
        return self.graphs[name]

    def first_graph(self) -> TermGraph:
        return self.graph()

    def system(self, name: Optional[str] = None) -> GRS:
        """Named system, or the first one; a document without systems yields all its rules"""
        if name is None:
            members = next(iter(self.systems.values())) if self.systems else tuple(self.rules)
        else:
            members = self.systems[name]
        return GRS(self.signature, tuple(self.rules[m] for m in members))

    def violations(self) -> Dict[str, List[Violation]]:
        found = {}
        for name, g in self.graphs.items():
            found[f"graph {name}"] = validate(g, self.signature)
        for name, r in self.rules.items():
            found[f"rule {name}"] = validate_rule(r, self.signature)
        return {k: v for k, v in found.items() if v}


@dataclass(frozen=True)
class _NodeDef:
    name: str
    label: str
    successors: Tuple[str, ...]
    position: int


class _DocumentBuilder(PTNodeVisitor):
    def __init__(self, parser: ParserPython):
        super().__init__()
        self.parser = parser

    def fail(self, message: str, position: int):
        line, column = self.parser.pos_to_linecol(position)
        raise ParseError(message, line, column)

    def visit_ident(self, node, children):
        return node.value

    def visit_nat(self, node, children):
        return int(node.value)

    def visit_bottom(self, node, children):
        return BOT

    def visit_variable(self, node, children):
        return node.value

    def visit_label(self, node, children):
        return children[0]

    def visit_successors(self, node, children):
        return tuple(children.results["ident"])

    def visit_nodedef(self, node, children):
        targets = children.results.get("successors", [()])[0]
        return _NodeDef(children.results["ident"][0], children.results["label"][0], targets, node.position)

    def visit_symbol_decl(self, node, children):
        return children.results["ident"][0], children.results["nat"][0], node.position

    def visit_signature(self, node, children):
        return ("sig", children.results.get("symbol_decl", []), node.position)

    def visit_root_decl(self, node, children):
        return children.results["ident"][0]

    def visit_lhs_decl(self, node, children):
        return children.results["ident"][0]

    def visit_rhs_decl(self, node, children):
        return children.results["ident"][0]

    def visit_member(self, node, children):
        return children.results["ident"][0]

    def _nodes(self, defs: List[_NodeDef]) -> Tuple[Dict[str, str], Dict[str, Tuple[str, ...]]]:
        labels, successors = {}, {}
        for d in defs:
            if d.name in labels:
                self.fail(f"node {d.name} defined twice", d.position)
            labels[d.name] = d.label
            successors[d.name] = d.successors
        return labels, successors

    def visit_graph(self, node, children):
        name = children.results["ident"][0]
        root = children.results["root_decl"][0]
        labels, successors = self._nodes(children.results.get("nodedef", []))
        if root not in labels:
            self.fail(f"root {root} of graph {name} is not defined", node.position)
        return ("graph", name, TermGraph(root, labels, successors), node.position)

    def visit_rule(self, node, children):
        name = children.results["ident"][0]
        lhs = children.results["lhs_decl"][0]
        rhs = children.results["rhs_decl"][0]
        labels, successors = self._nodes(children.results.get("nodedef", []))
        for root in (lhs, rhs):
            if root not in labels:
                self.fail(f"root {root} of rule {name} is not defined", node.position)
        return ("rule", name, Rule(name, labels, successors, lhs, rhs), node.position)

    def visit_system(self, node, children):
        name = children.results["ident"][0]
        return ("system", name, tuple(children.results.get("member", [])), node.position)

    def visit_document(self, node, children):
        doc = Document()
        symbols: Dict[str, int] = {}
        for item in children:
            if not isinstance(item, tuple):
                continue
            kind = item[0]
            if kind == "sig":
                for symbol, arity, position in item[1]:
                    if symbol in symbols and symbols[symbol] != arity:
                        self.fail(f"symbol {symbol} declared with arities {symbols[symbol]} and {arity}", position)
                    symbols[symbol] = arity
                continue
            _, name, value, position = item
            table = {"graph": doc.graphs, "rule": doc.rules, "system": doc.systems}[kind]
            if name in table:
                self.fail(f"{kind} {name} defined twice", position)
            if kind == "system":
                for member_name in value:
                    if member_name not in doc.rules:
                        self.fail(f"system {name} names unknown rule {member_name}", position)
            table[name] = value
        try:
            doc.signature = Signature(symbols)
        except ValueError as e:
            self.fail(str(e), 0)
        return doc


def parse(text: str) -> Document:
    parser = _get_parser()
    try:
        tree = parser.parse(text)
    except NoMatch as e:
        line, column = parser.pos_to_linecol(e.position)
        raise ParseError(str(e), line, column) from None
    doc = visit_parse_tree(tree, _DocumentBuilder(parser))
    logger.debug("[parse] %d graphs, %d rules, %d systems", len(doc.graphs), len(doc.rules), len(doc.systems))
    return doc


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


# Serialization

def _node_line(name: str, label: str, targets) -> str:
    args = "(" + ", ".join(targets) + ")" if targets else ""
    return f"  {name}: {label}{args};"


def serialize_graph(name: str, g: TermGraph) -> str:
    g = canonicalize(g)
    lines = [f"graph {name} {{", f"  root n{g.root};"]
    for n in g.nodes:
        lines.append(_node_line(f"n{n}", g.label(n), [f"n{m}" for m in g.succ(n)]))
    lines.append("}")
    return "\n".join(lines)


def rule_node_order(r: Rule) -> Dict[object, int]:
    graph = TermGraph(r.lhs_root, r.labels, r.successors)
    order: Dict[object, int] = {}
    for start in (r.lhs_root, r.rhs_root):
        for n in graph.reachable_from(start):
            order.setdefault(n, len(order))
    for n in r.labels:
        order.setdefault(n, len(order))
    return order


def serialize_rule(r: Rule) -> str:
    order = rule_node_order(r)
    lines = [f"rule {r.name} {{", f"  lhs n{order[r.lhs_root]};", f"  rhs n{order[r.rhs_root]};"]
    for n in order:
        lines.append(_node_line(f"n{order[n]}", r.labels[n], [f"n{order[m]}" for m in r.successors[n]]))
    lines.append("}")
    return "\n".join(lines)


def serialize_signature(sig: Signature) -> str:
    lines = ["sig {"] + [f"  {name}/{arity};" for name, arity in sig.symbols.items()] + ["}"]
    return "\n".join(lines)


def serialize(doc: Document) -> str:
    blocks = []
    if doc.signature.symbols:
        blocks.append(serialize_signature(doc.signature))
    blocks.extend(serialize_graph(name, g) for name, g in doc.graphs.items())
    blocks.extend(serialize_rule(r) for r in doc.rules.values())
    for name, members in doc.systems.items():
        blocks.append("\n".join([f"system {name} {{"] + [f"  {m};" for m in members] + ["}"]))
    return "\n\n".join(blocks) + "\n"
