"""Command line interface: tg <command> FILE[:NAME] ...

Exit codes: 0 success, 1 negative answer, 2 usage or input error, 3 size limit.
"""
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click
import pydantic
import toml

from .config import NODE_CAP_ENV, load_settings, use_settings
from .core import OMEGA, canonicalize, ensure_valid, unravel_to_depth
from .dot import export_dot
from .errors import ParseError, SizeLimit, TermGraphError, format_position
from .hom import find_delta_hom, find_rigid_bot_hom, is_isomorphic, unravel_eq
from .metric import NotCauchy, distance, similarity, truncate
from .order import (
    FiniteSeq,
    PeriodicSeq,
    PrefixSeq,
    enumerate_canonical,
    glb,
    leq_injective,
    leq_rigid,
    leq_simple,
    liminf,
    lub_compatible,
)
from .rewriting import Strategy, analyze_m_convergence, analyze_p_convergence, run
from .textformat import Document, parse_file, serialize_graph

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


@dataclass(frozen=True)
class Ref:
    """A parsed file plus an optional item name, written FILE[:NAME]"""

    path: str
    name: Optional[str]
    doc: Document

    @property
    def label(self) -> str:
        return self.name or Path(self.path).stem


class DocumentRef(click.ParamType):
    name = "FILE[:NAME]"

    def convert(self, value, param, ctx):
        if isinstance(value, Ref):
            return value
        path, name = value, None
        if not Path(value).is_file() and ":" in value:
            path, name = value.rsplit(":", 1)
        if not Path(path).is_file():
            self.fail(f"{path} is not a file", param, ctx)
        try:
            return Ref(path, name or None, parse_file(path))
        except ParseError as e:
            self.fail(f"{path}:{e}", param, ctx)


class DepthType(click.ParamType):
    name = "DEPTH"

    def convert(self, value, param, ctx):
        if value == OMEGA or isinstance(value, int):
            return value
        if str(value).lower() == "omega":
            return OMEGA
        try:
            d = int(value)
        except ValueError:
            self.fail(f"{value!r} is neither a natural number nor omega", param, ctx)
        if d < 0:
            self.fail(f"depth {d} is negative", param, ctx)
        return d


DOC = DocumentRef()
DEPTH = DepthType()


def _graph(ref: Ref):
    try:
        g = ref.doc.graph(ref.name)
    except KeyError:
        raise click.UsageError(f"{ref.path} has no graph {ref.name or ''}".rstrip()) from None
    return ensure_valid(g, ref.doc.signature)


def _system(ref: Ref):
    try:
        return ref.doc.system(ref.name)
    except KeyError:
        raise click.UsageError(f"{ref.path} has no system {ref.name}") from None


def _answer(ctx: click.Context, value: bool):
    click.echo("true" if value else "false")
    if not value:
        ctx.exit(EXIT_NEGATIVE)


def parse_position(text: str) -> Tuple[int, ...]:
    text = text.strip().strip("<>")
    if not text:
        return ()
    try:
        return tuple(int(i) for i in text.split("."))
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a position like 0.1.0") from None


def parse_script(text: str) -> List[Tuple[Tuple[int, ...], str]]:
    """'0.1:rho1;:rho2' -> [((0, 1), 'rho1'), ((), 'rho2')]"""
    script = []
    for entry in filter(None, (part.strip() for part in text.split(";"))):
        if ":" not in entry:
            raise click.BadParameter(f"script entry {entry!r} is not POS:RULE")
        position, rule = entry.rsplit(":", 1)
        script.append((parse_position(position), rule.strip()))
    return script


class TermGraphGroup(click.Group):
    """Maps library errors onto exit codes"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SizeLimit as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_LIMIT)
        except (TermGraphError, pydantic.ValidationError, toml.TomlDecodeError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_USAGE)


@click.group(cls=TermGraphGroup)
@click.option("--config", type=click.Path(exists=True, dir_okay=False), help="TOML settings file")
@click.option("--node-cap", type=click.IntRange(min=1), envvar=NODE_CAP_ENV, help="Largest graph for position search")
@click.option("-v", "--verbose", is_flag=True, help="Log debug messages to stderr")
@click.pass_context
def tg(ctx, config, node_cap, verbose):
    """Rigid partial order, metric and rewriting on term graphs"""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)
    settings = load_settings(config)
    if node_cap is not None:
        settings = settings.model_copy(update={"node_cap": node_cap})
    previous = use_settings(settings)
    ctx.call_on_close(lambda: use_settings(previous))
    ctx.obj = settings
    logger.debug("[cli] %s", settings)


@tg.command()
@click.argument("graph", type=DOC)
def canon(graph):
    """Print the canonical form of a graph"""
    click.echo(serialize_graph(graph.label, canonicalize(_graph(graph))))


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
@click.pass_context
def iso(ctx, first, second):
    """Are the two graphs isomorphic?"""
    _answer(ctx, is_isomorphic(_graph(first), _graph(second)))


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
@click.option("--delta", multiple=True, help="Label exempt from the conditions (repeatable)")
@click.pass_context
def hom(ctx, first, second, delta):
    """Print the delta-homomorphism between canonical forms, if any"""
    phi = find_delta_hom(canonicalize(_graph(first)), canonicalize(_graph(second)), delta)
    if phi is None:
        click.echo("none")
        ctx.exit(EXIT_NEGATIVE)
    for n, m in sorted(phi.items()):
        click.echo(f"n{n} -> n{m}")


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
@click.pass_context
def rigid(ctx, first, second):
    """Is there a rigid bottom-homomorphism from the first graph to the second?"""
    _answer(ctx, find_rigid_bot_hom(_graph(first), _graph(second)) is not None)


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
@click.option("--simple", "mode", flag_value="simple", help="Bottom-homomorphism order")
@click.option("--injective", "mode", flag_value="injective", help="Injective bottom-homomorphism order")
@click.pass_context
def leq(ctx, first, second, mode):
    """Is the first graph below the second (rigid order by default)?"""
    check = {"simple": leq_simple, "injective": leq_injective}.get(mode, leq_rigid)
    _answer(ctx, check(_graph(first), _graph(second)))


@tg.command("glb")
@click.argument("graphs", type=DOC, nargs=-1, required=True)
def glb_command(graphs):
    """Greatest lower bound of one or more graphs"""
    click.echo(serialize_graph("glb", glb([_graph(ref) for ref in graphs])))


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
@click.pass_context
def lub(ctx, first, second):
    """Least upper bound of two compatible graphs"""
    result = lub_compatible(_graph(first), _graph(second))
    if result is None:
        click.echo("incompatible")
        ctx.exit(EXIT_NEGATIVE)
    click.echo(serialize_graph("lub", result))


@tg.command()
@click.argument("graph", type=DOC)
@click.option("-d", "--depth", type=DEPTH, required=True)
def trunc(graph, depth):
    """Rigid truncation at a depth"""
    click.echo(serialize_graph(graph.label, truncate(_graph(graph), depth)))


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
def dist(first, second):
    """Distance 2^-k, or 0 for isomorphic graphs"""
    click.echo(str(distance(_graph(first), _graph(second))))


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
def sim(first, second):
    """Similarity: the largest depth with isomorphic truncations"""
    click.echo(str(similarity(_graph(first), _graph(second))))


@tg.command()
@click.argument("graph", type=DOC)
@click.option("-d", "--depth", type=click.IntRange(min=0), required=True)
def unravel(graph, depth):
    """Term tree of the unravelling, cut at a depth"""
    click.echo(serialize_graph(graph.label, unravel_to_depth(_graph(graph), depth)))


@tg.command()
@click.argument("first", type=DOC)
@click.argument("second", type=DOC)
@click.pass_context
def uneq(ctx, first, second):
    """Do the two graphs have the same unravelling?"""
    _answer(ctx, unravel_eq(_graph(first), _graph(second)))


def _print_approximation(name: str, result) -> None:
    click.echo(serialize_graph(name, result.graph))
    click.echo(f"# {result.exactness}: {result.evidence}" if result.evidence else f"# {result.exactness}")


@tg.command("liminf")
@click.argument("graphs", type=DOC, nargs=-1, required=True)
@click.option("--depth", type=click.IntRange(min=0), required=True, help="Depth goal")
@click.option("--period", type=click.IntRange(min=1), help="The last K graphs repeat forever")
@click.option("--closed", is_flag=True, help="The sequence ends with its last graph")
def liminf_command(graphs, depth, period, closed):
    """Limit inferior of a sequence of graphs"""
    items = tuple(_graph(ref) for ref in graphs)
    if closed and period:
        raise click.UsageError("--closed and --period exclude each other")
    if period and period > len(items):
        raise click.UsageError(f"period {period} is longer than the sequence")
    if closed:
        seq = FiniteSeq(items)
    elif period:
        seq = PeriodicSeq(items[:-period], items[-period:])
    else:
        seq = PrefixSeq(items)
    _print_approximation("liminf", liminf(seq, depth))


@tg.command()
@click.argument("system", type=DOC)
@click.argument("graph", type=DOC)
@click.option("--strategy", type=click.Choice([s.value for s in Strategy]), default=Strategy.LEFTMOST_OUTERMOST.value)
@click.option("--script", default="", help="Steps as POS:RULE;POS:RULE for by-script")
@click.option("--steps", type=click.IntRange(min=0), help="Step cap (default from settings)")
@click.option("--analyze", type=click.Choice(["m", "p"]), help="Metric or partial order convergence")
@click.option("--depth", type=click.IntRange(min=0), default=5, show_default=True, help="Depth goal of the analysis")
@click.option("--period", type=click.IntRange(min=1), help="The last K graphs of the trace repeat forever")
@click.pass_obj
def rewrite(settings, system, graph, strategy, script, steps, analyze, depth, period):
    """Reduce a graph with a system and optionally analyse convergence"""
    grs = _system(system)
    start = _graph(graph)
    if script and strategy != Strategy.BY_SCRIPT.value:
        raise click.UsageError("--script needs --strategy by-script")
    steps = settings.max_steps if steps is None else steps
    trace = run(grs, start, strategy, steps, parse_script(script))
    if period and period > len(trace.graphs):
        raise click.UsageError(f"period {period} is longer than the trace")
    for k, taken in enumerate(trace.steps):
        click.echo(f"# step {k + 1}: {taken.rule} at {format_position(taken.redex_position)}")
    click.echo(f"# {trace.reason.value} after {len(trace.steps)} steps")

    if analyze is None:
        click.echo(serialize_graph(graph.label, trace.final))
        return
    if analyze == "p":
        _print_approximation("p_limit", analyze_p_convergence(trace, depth, period))
        return
    result = analyze_m_convergence(trace, depth, period)
    if isinstance(result, NotCauchy):
        click.echo(str(result))
        if result.evidence:
            click.echo(f"# {result.evidence}")
        click.get_current_context().exit(EXIT_NEGATIVE)
    _print_approximation("m_limit", result)


@tg.command("enum")
@click.argument("sigfile", type=DOC)
@click.option("--max-nodes", type=click.IntRange(min=1), required=True)
@click.option("--bot", is_flag=True, help="Also label nodes with bottom")
def enum_command(sigfile, max_nodes, bot):
    """Every canonical graph over a file's signature, up to a size"""
    graphs = enumerate_canonical(sigfile.doc.signature, max_nodes, bot)
    click.echo("\n\n".join(serialize_graph(f"e{k}", g) for k, g in enumerate(graphs)))


@tg.command()
@click.argument("source", type=DOC)
@click.option("--rule", "rule_name", help="Export this rule instead of a graph")
def dot(source, rule_name):
    """Graphviz DOT for a graph or a rule"""
    if rule_name is None:
        click.echo(export_dot(_graph(source), source.label), nl=False)
        return
    if rule_name not in source.doc.rules:
        raise click.UsageError(f"{source.path} has no rule {rule_name}")
    click.echo(export_dot(source.doc.rules[rule_name]), nl=False)


@tg.command()
@click.argument("source", type=DOC)
@click.pass_context
def validate(ctx, source):
    """Check every graph and rule against the file's signature"""
    found = source.doc.violations()
    if not found:
        click.echo("ok")
        return
    for subject, violations in found.items():
        for violation in violations:
            click.echo(f"{subject}: {violation}")
    ctx.exit(EXIT_NEGATIVE)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        tg.main(args=argv, prog_name="tg")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
