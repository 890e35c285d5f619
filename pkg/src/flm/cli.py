"""Command-line driver: ``flm SUBCOMMAND MODEL [options]``.

Exit codes: 0 success, 1 diagnostics (written to stderr), 2 usage errors.
"""
from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .errors import FlmError
from .inference import (StateVector, feedforward_eval, flcm_run, flre_compose, flrm_run, relation_to_matrix)
from .lingraph import classify_experts, graph_to_matrix, is_connected
from .matrix import LingMatrix, Op, OperatorPair, compose
from .metric import classify_topology, validate_metric
from .modelfile import _KINDS, ModelBundle, ModelError, load_model
from .poly import poly_op


class UsageError(Exception):
    pass


class Failure(Exception):
    """Runtime diagnostics: exit 1."""

    def __init__(self, lines: list[str]):
        self.lines = lines
        super().__init__("\n".join(lines))


# -- output helpers -------------------------------------------------------

def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _record(**fields) -> str:
    parts = []
    for k in sorted(fields):
        v = fields[k]
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, (list, tuple)):
            v = ",".join(str(x) for x in v)
        parts.append(f"{k}={v}")
    return " ".join(parts)


def _vec(m: LingMatrix) -> str:
    return " ".join(m.names()[0])


def _matrix_records(m: LingMatrix, **extra) -> list[str]:
    return [_record(col=j + 1, row=i + 1, value=t.name, **extra)
            for i, row in enumerate(m.data) for j, t in enumerate(row)]


def _labelled_grid(m: LingMatrix, rows: Sequence[str], cols: Sequence[str]) -> str:
    cells = [[""] + list(cols)] + [[r] + [t.name for t in row] for r, row in zip(rows, m.data)]
    widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells)


# -- lookups --------------------------------------------------------------

def _pick(table: dict, name: str | None, kind: str, option: str):
    if name is None:
        if len(table) == 1:
            return next(iter(table.items()))
        if not table:
            raise Failure([f"error: NotFound: model file defines no {kind}"])
        raise UsageError(f"model file defines several {kind} definitions ({', '.join(table)}); choose one with {option}")
    if name not in table:
        raise Failure([f"error: UnknownName: no {kind} named {name!r}"])
    return name, table[name]


def _pair(text: str | None, default: OperatorPair) -> OperatorPair:
    return default if text is None else OperatorPair.parse(text)


def _state(bundle: ModelBundle, text: str, space, what: str = "--initial") -> StateVector:
    """A named state, or an inline tuple like ``(often, 0, some)``."""
    if text in bundle.states:
        return bundle.states[text]
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise Failure([f"error: UnknownName: {what} {text!r} is neither a state name nor a tuple"])
    names = [x for x in re.split(r"[\s,]+", body[1:-1]) if x]
    if not names:
        raise Failure([f"error: ShapeMismatch: {what} is an empty tuple"])
    return StateVector.of(space, names)


# -- subcommands ----------------------------------------------------------

def cmd_validate(bundle: ModelBundle, args) -> list[str]:
    out = []
    for name, mt in bundle.metrics.items():
        out += [f"warning: {d.code}: metric {name}: {d.message}" for d in validate_metric(mt)]
    if out:
        raise Failure([f"error: {line[len('warning: '):]}" for line in out])
    if args.format == "records":
        return [_record(count=len(getattr(bundle, attr)), kind=one.replace(" ", "_"))
                for attr, one, _ in _KINDS if getattr(bundle, attr)]
    return [f"ok: {bundle.summary()}"]


def cmd_classify_space(bundle: ModelBundle, args) -> list[str]:
    if args.space is not None:
        spaces = [_pick(bundle.spaces, args.space, "space", "--space")]
    else:
        spaces = list(bundle.spaces.items())
        if not spaces:
            raise Failure(["error: NotFound: model file defines no space"])
    out = []
    for name, sp in spaces:
        cls = sp.classify_comparability(sp.partition)
        comp = cls.kind.value
        if args.format == "records":
            out.append(_record(chain_lattice=sp.is_chain_lattice(), comparability=comp,
                               exact_bounds=sp.has_exact_bounds(), kind=sp.kind.value, lattice=sp.is_lattice(),
                               space=name, terms=len(sp)))
            continue
        out.append(f"space {name}: {sp.kind.value}, {len(sp)} terms")
        out.append(f"  comparability: {comp}")
        out.append(f"  chain lattice: {_yn(sp.is_chain_lattice())}")
        out.append(f"  lattice: {_yn(sp.is_lattice())}")
        out.append(f"  exact meets and joins: {_yn(sp.has_exact_bounds())}")
    return out


def cmd_classify_topology(bundle: ModelBundle, args) -> list[str]:
    name, mt = _pick(bundle.metrics, args.metric, "metric", "--metric")
    problems = validate_metric(mt)
    if problems:
        raise Failure([f"error: {d.code}: metric {name}: {d.message}" for d in problems])
    graphs = None
    if args.experts is not None:
        graphs = _pick(bundle.experts, args.experts, "expert collection", "--experts")[1]
    rep = classify_topology(mt.source, mt, graphs)
    if args.format == "records":
        fields = dict(chain_connected=rep.chain_connected, lattice_connected=rep.lattice_connected,
                      metric=name, space=mt.source.name, topology=rep.metric_kind.value)
        if rep.graphs is not None:
            fields["experts"] = str(rep.graphs).replace(" ", "_")
        return [_record(**fields)]
    out = [f"metric {name} over {mt.source.name}: {rep.metric_kind.value}",
           f"  chain connected: {_yn(rep.chain_connected)}",
           f"  lattice connected: {_yn(rep.lattice_connected)}"]
    if rep.graphs is not None:
        out.append(f"  experts: {rep.graphs}")
    return out


def cmd_compose(bundle: ModelBundle, args) -> list[str]:
    a = _pick(bundle.matrices, args.a, "matrix", "--a")[1]
    b = _pick(bundle.matrices, args.b, "matrix", "--b")[1]
    r = compose(a, b, _pair(args.pair, OperatorPair.MAXMIN))
    if args.format == "records":
        return _matrix_records(r)
    return [r.to_text()]


def cmd_compose_flre(bundle: ModelBundle, args) -> list[str]:
    if args.relation is not None:
        rel, sp = _pick(bundle.relations, args.relation, "relation", "--relation")[1]
        m = relation_to_matrix(rel, sp)
        if args.format == "records":
            return _matrix_records(m)
        return [_labelled_grid(m, rel.left, rel.right)]
    p = _pick(bundle.matrices, args.p, "matrix", "--p")[1]
    q = _pick(bundle.matrices, args.q, "matrix", "--q")[1]
    r = flre_compose(p, q, _pair(args.pair, OperatorPair.MAXMIN))
    if args.format == "records":
        return _matrix_records(r)
    return [r.to_text()]


def cmd_graph(bundle: ModelBundle, args) -> list[str]:
    if args.experts is not None or (args.graph is None and bundle.experts and len(bundle.graphs) != 1):
        name, coll = _pick(bundle.experts, args.experts, "expert collection", "--experts")
        verdict = classify_experts(coll)
        if args.format == "records":
            rows = [_record(connected=is_connected(g), experts=name, graph=g.name) for g in coll.graphs]
            return rows + [_record(connected=verdict.connected, experts=name, strength=verdict.kind.value,
                                   total=verdict.total)]
        out = [f"experts {name}: {verdict}"]
        out += [f"  {g.name}: {'connected' if is_connected(g) else 'disconnected'}" for g in coll.graphs]
        return out
    name, g = _pick(bundle.graphs, args.graph, "graph", "--graph")
    m = graph_to_matrix(g)
    conn = is_connected(g)
    if args.format == "records":
        return [_record(concepts=len(g.concepts), connected=conn, directed=g.directed, edges=len(g.edges),
                        graph=name)] + _matrix_records(m, graph=name)
    style = "directed" if g.directed else "undirected"
    head = f"graph {name}: {style}, {len(g.concepts)} concepts, {len(g.edges)} edges, " \
           f"{'connected' if conn else 'disconnected'}"
    return [head, _labelled_grid(m, g.concepts, g.concepts)]


def _trace_lines(pattern, labels: str, fmt: str, **extra) -> list[str]:
    out = []
    for k, s in enumerate(pattern.trace):
        if fmt == "records":
            out.append(_record(step=k, state=s.names()[0], **extra))
        else:
            out.append(f"{labels}{k}: {_vec(s)}")
    cycle = " | ".join(_vec(s) for s in pattern.cycle)
    if fmt == "records":
        out.append(_record(iterations=pattern.iterations, pattern=pattern.kind.value,
                           states="|".join(",".join(s.names()[0]) for s in pattern.cycle), **extra))
    else:
        out.append(f"{pattern.kind.value}: {cycle}")
    return out


def cmd_run_flcm(bundle: ModelBundle, args) -> list[str]:
    name, model = _pick(bundle.flcm_models, args.flcm, "flcm model", "--flcm")
    if args.pair is not None:
        model = type(model)(model.concepts, model.matrix, OperatorPair.parse(args.pair), model.name)
    init = _state(bundle, args.initial, model.space)
    pat = flcm_run(model, init, args.max_iters)
    if args.format == "records":
        return _trace_lines(pat, "X", "records", model=name)
    return [f"flcm {name} ({model.pair.label}): " + " ".join(model.concepts)] + _trace_lines(pat, "X", "text")


def cmd_run_flrm(bundle: ModelBundle, args) -> list[str]:
    name, model = _pick(bundle.flrm_models, args.flrm, "flrm model", "--flrm")
    if args.pair is not None:
        model = type(model)(model.domain_concepts, model.range_concepts, model.matrix,
                            OperatorPair.parse(args.pair), model.name)
    init = _state(bundle, args.initial, model.space)
    res = flrm_run(model, init, args.side, args.max_iters)
    if args.format == "records":
        return (_trace_lines(res.domain, "X", "records", model=name, side="domain")
                + _trace_lines(res.range, "Y", "records", model=name, side="range"))
    out = [f"flrm {name} ({model.pair.label})"]
    for k, (x, y) in enumerate(zip(res.domain.trace, res.range.trace)):
        out.append(f"X{k}: {_vec(x)}")
        out.append(f"Y{k}: {_vec(y)}")
    out.append(f"domain {res.domain.kind.value}: " + " | ".join(_vec(s) for s in res.domain.cycle))
    out.append(f"range {res.range.kind.value}: " + " | ".join(_vec(s) for s in res.range.cycle))
    return out


def cmd_poly(bundle: ModelBundle, args) -> list[str]:
    pname, p = _pick(bundle.polynomials, args.p, "polynomial", "--p")
    results = [(pname, p)]
    if args.q is not None:
        qname, q = _pick(bundle.polynomials, args.q, "polynomial", "--q")
        ops = [Op.MIN, Op.MAX] if args.op == "both" else [Op(args.op)]
        results = [(f"{op.value}({pname}, {qname})", poly_op(op, p, q)) for op in ops]
    out = []
    for label, r in results:
        deg = r.degree()
        deg_text = "-inf" if deg == float("-inf") else str(deg)
        if args.format == "records":
            out.append(_record(degree=deg_text, poly=label.replace(" ", ""), value=r.to_text().replace(" ", "")))
        else:
            out.append(f"{label} = {r.to_text()}  (degree {deg_text})")
    return out


def cmd_feedforward(bundle: ModelBundle, args) -> list[str]:
    name, net = _pick(bundle.networks, args.network, "network", "--network")
    inp = _state(bundle, args.input, net.layers[0].space, "--input")
    out = feedforward_eval(net.layers, inp.values, _pair(args.pair, net.pair), net.activations)
    if args.format == "records":
        return [_record(network=name, output=out.names()[0])]
    return [f"network {name}: {_vec(out)}"]


COMMANDS = {
    "validate": (cmd_validate, "parse a model file and report what it defines"),
    "classify-space": (cmd_classify_space, "comparability class and lattice properties of spaces"),
    "classify-topology": (cmd_classify_topology, "discrete/overlapping verdict for a metric table"),
    "compose": (cmd_compose, "compose two matrices under an operator pair"),
    "graph": (cmd_graph, "adjacency matrix and connectivity of a graph or expert collection"),
    "run-flcm": (cmd_run_flcm, "iterate a cognitive map to its hidden pattern"),
    "run-flrm": (cmd_run_flrm, "iterate a relational map to its hidden pattern"),
    "compose-flre": (cmd_compose_flre, "relation-equation composition, or a relation as a matrix"),
    "poly": (cmd_poly, "coefficientwise min/max and degree of polynomials"),
    "feedforward": (cmd_feedforward, "evaluate a feed-forward network"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flm", description="Linguistic term models: spaces, matrices, maps.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for cmd, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(cmd, help=help_text, description=help_text)
        sp.add_argument("model_pos", nargs="?", metavar="MODEL", help="model file (.flm)")
        sp.add_argument("--model", help="model file, alternative to the positional argument")
        sp.add_argument("--format", choices=("text", "records"), default="text")
        if cmd == "classify-space":
            sp.add_argument("--space")
        elif cmd == "classify-topology":
            sp.add_argument("--metric")
            sp.add_argument("--experts")
        elif cmd == "compose":
            sp.add_argument("--a")
            sp.add_argument("--b")
        elif cmd == "compose-flre":
            sp.add_argument("--p")
            sp.add_argument("--q")
            sp.add_argument("--relation")
        elif cmd == "graph":
            sp.add_argument("--graph")
            sp.add_argument("--experts")
        elif cmd == "run-flcm":
            sp.add_argument("--flcm")
            sp.add_argument("--initial", required=True, help="state name or tuple like '(often, 0, some)'")
        elif cmd == "run-flrm":
            sp.add_argument("--flrm")
            sp.add_argument("--initial", required=True)
            sp.add_argument("--side", choices=("domain", "range"), default="domain")
        elif cmd == "poly":
            sp.add_argument("--p")
            sp.add_argument("--q")
            sp.add_argument("--op", choices=("min", "max", "both"), default="both")
        elif cmd == "feedforward":
            sp.add_argument("--network")
            sp.add_argument("--input", required=True)
        if cmd in ("compose", "compose-flre", "run-flcm", "run-flrm", "feedforward"):
            sp.add_argument("--pair", help="maxmin, minmax, minmin or maxmax")
        if cmd in ("run-flcm", "run-flrm"):
            sp.add_argument("--max-iters", type=int, help="iteration cap (default FLM_MAX_ITERS or 1000)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.model_pos and args.model and args.model_pos != args.model:
        print("flm: error: give the model file once, positionally or with --model", file=sys.stderr)
        return 2
    path = args.model or args.model_pos
    if not path:
        print(f"flm {args.command}: error: a model file is required", file=sys.stderr)
        return 2
    if getattr(args, "pair", None) is not None:
        try:
            OperatorPair.parse(args.pair)
        except ValueError as e:
            print(f"flm {args.command}: error: {e}", file=sys.stderr)
            return 2
    try:
        bundle = load_model(path)
    except OSError as e:
        print(f"{path}: error: FileError: {e.strerror or e}", file=sys.stderr)
        return 1
    except ModelError as e:
        for d in e.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        return 1
    for w in bundle.warnings:
        print(f"{path}:{w}", file=sys.stderr)
    try:
        lines = COMMANDS[args.command][0](bundle, args)
    except UsageError as e:
        print(f"flm {args.command}: error: {e}", file=sys.stderr)
        return 2
    except Failure as e:
        for line in e.lines:
            print(line, file=sys.stderr)
        return 1
    except (FlmError, ValueError) as e:
        print(f"error: {getattr(e, 'code', 'InvalidValue')}: {e}", file=sys.stderr)
        return 1
    for line in lines:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
