"""Regenerate the golden files under tests/golden from the fixtures

Run from the repository root:

    python -m scripts.freeze_golden
"""
from pathlib import Path

from tqdm import tqdm

from termgraph.dot import export_dot
from termgraph.order import enumerate_canonical
from termgraph.textformat import Document, parse_file, serialize

FIXTURES = Path("fixtures")
GOLDEN = Path("tests/golden")


def freeze_enumeration(max_nodes=2):
    """All canonical graphs over the enumeration signature, in generation order"""
    signature = parse_file(FIXTURES / "enum-sig.tg").signature
    graphs = enumerate_canonical(signature, max_nodes)
    doc = Document(signature, {f"e{k}": g for k, g in enumerate(tqdm(graphs, desc="enumeration"))})
    output = GOLDEN / f"enum_n{max_nodes}.tg"
    output.write_text(serialize(doc), encoding="utf-8")
    print(f"Wrote {len(graphs)} graphs to {output}")
    return len(graphs)


def freeze_dot():
    """DOT exports of the cons graph g2 and the rule rho2"""
    doc = parse_file(FIXTURES / "cons.tg")
    exports = {
        "g2.dot": export_dot(doc.graph("g2"), "g2"),
        "rho2.dot": export_dot(doc.rules["rho2"]),
    }
    for name, text in tqdm(exports.items(), desc="dot"):
        (GOLDEN / name).write_text(text, encoding="utf-8")
    print(f"Wrote {len(exports)} DOT files to {GOLDEN}")
    return len(exports)


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    count = freeze_enumeration()
    files = freeze_dot()
    print(f"Golden files refreshed: {count} enumerated graphs, {files} DOT exports")
