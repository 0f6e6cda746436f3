"""
Export term graphs and rules for plotting with graphviz' dot

Nodes are records "{id|label}", edges carry the successor index and the
root gets a double border. For example:

    tg dot fixtures/cons.tg:g2 > g2.gv
    dot -Tpng -O g2.gv
"""
from typing import List, Optional, Union

from .core import BOT, TermGraph, canonicalize
from .rewriting import Rule
from .textformat import rule_node_order

BOT_ENTITY = "&#8869;"


def _escape(label: str) -> str:
    if label == BOT:
        return BOT_ENTITY
    for ch in '\\{}|<>"':
        label = label.replace(ch, "\\" + ch)
    return label


def _node_line(name: str, label: str, is_root: bool, indent: str) -> str:
    extra = ", peripheries=2" if is_root else ""
    return f'{indent}{name} [label="{{{name}|{_escape(label)}}}"{extra}];'


def _graph_lines(g: TermGraph) -> List[str]:
    g = canonicalize(g)
    lines = [_node_line(f"n{n}", g.label(n), n == g.root, "\t") for n in g.nodes]
    lines += [f'\tn{n} -> n{m} [label="{i}"];' for n, i, m in g.edges()]
    return lines


def _rule_lines(rule: Rule) -> List[str]:
    order = rule_node_order(rule)
    lhs_nodes = set(rule.lhs.nodes)
    lines = []
    for cluster, members in (("lhs", [n for n in order if n in lhs_nodes]),
                             ("rhs", [n for n in order if n not in lhs_nodes])):
        lines.append(f"\tsubgraph cluster_{cluster} {{")
        lines.append(f'\t\tlabel="{cluster}";')
        for n in members:
            marked = n == rule.lhs_root or n == rule.rhs_root
            lines.append(_node_line(f"n{order[n]}", rule.labels[n], marked, "\t\t"))
        lines.append("\t}")
    lines.append('\tlhs_root [shape=plaintext, label="lhs"];')
    lines.append('\trhs_root [shape=plaintext, label="rhs"];')
    lines.append(f"\tlhs_root -> n{order[rule.lhs_root]} [style=dashed];")
    lines.append(f"\trhs_root -> n{order[rule.rhs_root]} [style=dashed];")
    for n in order:
        for i, m in enumerate(rule.successors[n]):
            lines.append(f'\tn{order[n]} -> n{order[m]} [label="{i}"];')
    return lines


def export_dot(item: Union[TermGraph, Rule], name: Optional[str] = None) -> str:
    if isinstance(item, Rule):
        title, body = name or item.name, _rule_lines(item)
    else:
        title, body = name or "g", _graph_lines(item)
    lines = [f'digraph "{title}" {{', "\tnode [shape=record];"] + body + ["}"]
    return "\n".join(lines) + "\n"
