"""Reader and writer for ``.flm`` model files.

A file is a sequence of blocks.  A block starts with a keyword at column
zero; indented lines that follow belong to it.  ``#`` starts a comment.
Multi-word terms use underscores (``very_much``).  Example::

    space perf: chain 0 < bad < fair < good < best
      alias excellent = best
    matrix P over perf: 2x2 [good bad; fair best]
    graph g over perf: C1 C2 C3
      C1 -good-> C2
    flcm m: concepts A B; matrix Z; pair maxmin

Parsing either returns a fully resolved :class:`ModelBundle` or raises
:class:`ModelError` carrying coded, located diagnostics.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FlmError
from .inference import (BipartiteRelation, FeedForwardNetwork, FLCMModel, FLRMModel, StateVector,
                        relation_to_matrix)
from .lingraph import ConceptGraph, ExpertCollection, graph_to_matrix
from .matrix import LingMatrix, OperatorPair
from .metric import MetricTable
from .poly import LingPolynomial
from .space import ZERO, LinguisticSpace, OrderKind, Term


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    line: int
    col: int
    message: str
    code: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.severity.value}: {self.code}: {self.message}"


class ModelError(FlmError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass
class ModelBundle:
    spaces: dict[str, LinguisticSpace] = field(default_factory=dict)
    metrics: dict[str, MetricTable] = field(default_factory=dict)
    matrices: dict[str, LingMatrix] = field(default_factory=dict)
    states: dict[str, StateVector] = field(default_factory=dict)
    polynomials: dict[str, LingPolynomial] = field(default_factory=dict)
    graphs: dict[str, ConceptGraph] = field(default_factory=dict)
    experts: dict[str, ExpertCollection] = field(default_factory=dict)
    relations: dict[str, tuple[BipartiteRelation, LinguisticSpace]] = field(default_factory=dict)
    flcm_models: dict[str, FLCMModel] = field(default_factory=dict)
    flrm_models: dict[str, FLRMModel] = field(default_factory=dict)
    networks: dict[str, FeedForwardNetwork] = field(default_factory=dict)
    warnings: list[Diagnostic] = field(default_factory=list, compare=False)

    def summary(self) -> str:
        """Counts per kind; matrices used only as model weights are not counted."""
        used = {id(m.matrix) for m in (*self.flcm_models.values(), *self.flrm_models.values())}
        used |= {id(w) for net in self.networks.values() for w in net.layers}
        parts = []
        for attr, one, many in _KINDS:
            items = getattr(self, attr)
            n = len(items) if attr != "matrices" else sum(1 for m in items.values() if id(m) not in used)
            if n:
                parts.append(f"{n} {one if n == 1 else many}")
        return ", ".join(parts) if parts else "empty model"


_KINDS = [
    ("spaces", "space", "spaces"),
    ("metrics", "metric", "metrics"),
    ("matrices", "matrix", "matrices"),
    ("states", "state", "states"),
    ("polynomials", "polynomial", "polynomials"),
    ("graphs", "graph", "graphs"),
    ("experts", "expert collection", "expert collections"),
    ("relations", "relation", "relations"),
    ("flcm_models", "flcm model", "flcm models"),
    ("flrm_models", "flrm model", "flrm models"),
    ("networks", "network", "networks"),
]

# -- tokens ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<comment>\#.*)
  | (?P<edge>-(?P<label>[+-]?(?:[A-Za-z_][A-Za-z0-9_.']*|0))-(?P<head>>?))
  | (?P<arrow>->)
  | (?P<shape>\d+x\d+(?![A-Za-z0-9_]))
  | (?P<ident>[+-]?[A-Za-z_](?:[A-Za-z0-9_.']|-(?=[A-Za-z0-9_]))*)
  | (?P<num>\d+)
  | (?P<punct>[:<{}\[\](),;=^+])
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str  # ident, num, shape, edge, arrow, punct, eol
    text: str
    line: int
    col: int
    directed: bool = False


class ParseError(FlmError):
    def __init__(self, code: str, message: str, line: int, col: int):
        self._code, self.line, self.col = code, line, col
        super().__init__(message)

    @property
    def code(self):
        return self._code


def _tokenize_line(text: str, lineno: int) -> list[Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("Syntax", f"unexpected character {text[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind == "label" or kind == "head":
            kind = "edge"
        col = pos + 1
        pos = m.end()
        if kind in ("ws", "comment"):
            continue
        if kind == "edge":
            toks.append(Tok("edge", m.group("label"), lineno, col, directed=bool(m.group("head"))))
        else:
            toks.append(Tok(kind, m.group(kind), lineno, col))
    return toks


class Stream:
    def __init__(self, toks: list[Tok], end: tuple[int, int]):
        self.toks = toks
        self.pos = 0
        self.end = end

    def peek(self, offset: int = 0) -> Tok:
        k = self.pos + offset
        if k < len(self.toks):
            return self.toks[k]
        return Tok("eol", "", *self.end)

    def next(self) -> Tok:
        t = self.peek()
        self.pos += 1
        return t

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def is_punct(self, ch: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.text == ch

    def accept(self, ch: str) -> bool:
        if self.is_punct(ch):
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> Tok:
        t = self.next()
        if t.kind != "punct" or t.text != ch:
            raise ParseError("Syntax", f"expected {ch!r}, found {_describe(t)}", t.line, t.col)
        return t

    def word(self, what: str = "a name") -> Tok:
        t = self.next()
        if t.kind != "ident":
            raise ParseError("Syntax", f"expected {what}, found {_describe(t)}", t.line, t.col)
        return t

    def keyword(self, kw: str) -> Tok:
        t = self.next()
        if t.kind != "ident" or t.text != kw:
            raise ParseError("Syntax", f"expected {kw!r}, found {_describe(t)}", t.line, t.col)
        return t

    def term(self) -> Tok:
        t = self.next()
        if t.kind == "ident" or (t.kind == "num" and t.text == ZERO):
            return t
        raise ParseError("Syntax", f"expected a term, found {_describe(t)}", t.line, t.col)

    def is_term(self) -> bool:
        t = self.peek()
        return t.kind == "ident" or (t.kind == "num" and t.text == ZERO)

    def number(self) -> Tok:
        t = self.next()
        if t.kind != "num":
            raise ParseError("Syntax", f"expected a number, found {_describe(t)}", t.line, t.col)
        return t

    def done(self):
        if not self.at_end():
            t = self.peek()
            raise ParseError("Syntax", f"unexpected {_describe(t)}", t.line, t.col)


def _describe(t: Tok) -> str:
    if t.kind == "eol":
        return "end of statement"
    if t.kind == "edge":
        return f"edge '-{t.text}-{'>' if t.directed else ''}'"
    return repr(t.text)


# -- blocks ---------------------------------------------------------------

@dataclass
class _Block:
    keyword: str
    header: Tok
    stream: Stream
    body: list[list[Tok]]


_ORDER = ["space", "metric", "matrix", "state", "poly", "graph", "experts", "relation", "flcm", "flrm", "network"]
# body lines starting with one of these are directives; other body lines continue the header
_DIRECTIVES = {
    "space": {"greatest", "alias", "overlap-terms", "partition"},
    "matrix": set(), "state": set(), "poly": set(),
    "experts": set(), "flcm": set(), "flrm": set(),
}


def _split_blocks(text: str, diags: list[Diagnostic]) -> list[_Block]:
    raw: list[tuple[list[Tok], list[list[Tok]]]] = []
    last_line = 1
    for lineno, line in enumerate(text.splitlines(), start=1):
        last_line = lineno
        try:
            toks = _tokenize_line(line, lineno)
        except ParseError as e:
            diags.append(Diagnostic(Severity.ERROR, e.line, e.col, str(e), e.code))
            toks = None
        if toks == []:
            continue
        indented = line[:1] in (" ", "\t")
        if toks is None:
            if not indented:
                raw.append(([], []))  # poison: swallow the body of a broken header
            elif raw:
                raw[-1][1].append([])
            continue
        if indented:
            if not raw:
                diags.append(Diagnostic(Severity.ERROR, lineno, toks[0].col,
                                        "indented line outside any block", "Syntax"))
                continue
            raw[-1][1].append(toks)
        else:
            raw.append((toks, []))
    blocks = []
    for header, body in raw:
        if not header or any(b == [] for b in body):
            continue  # tokenizer already reported
        first = header[0]
        if first.kind != "ident" or first.text not in _ORDER:
            diags.append(Diagnostic(Severity.ERROR, first.line, first.col,
                                    f"unknown statement {first.text!r}", "UnknownStatement"))
            continue
        directives = _DIRECTIVES.get(first.text)
        stream_toks = list(header[1:])
        kept_body = []
        for line in body:
            if directives is not None and not (line[0].kind == "ident" and line[0].text in directives):
                stream_toks.extend(line)
            else:
                kept_body.append(line)
        last = stream_toks[-1] if stream_toks else first
        end = (last.line, last.col + len(last.text) + (3 if last.kind == "edge" else 0))
        blocks.append(_Block(first.text, first, Stream(stream_toks, end), kept_body))
    return blocks


class _Builder:
    def __init__(self):
        self.bundle = ModelBundle()
        self.diags: list[Diagnostic] = []

    # helpers

    def _name(self, s: Stream, table: dict, kind: str) -> Tok:
        t = s.word(f"a {kind} name")
        if t.text in table:
            raise ParseError("DuplicateName", f"{kind} {t.text!r} is already defined", t.line, t.col)
        return t

    def _ref(self, tok: Tok, table: dict, kind: str, code: str):
        if tok.text not in table:
            raise ParseError(code, f"unknown {kind} {tok.text!r}", tok.line, tok.col)
        return table[tok.text]

    def _space_ref(self, s: Stream) -> LinguisticSpace:
        s.keyword("over")
        return self._ref(s.word("a space name"), self.bundle.spaces, "space", "UnknownSpace")

    def _term(self, space: LinguisticSpace, tok: Tok) -> Term:
        if not space.has_name(tok.text):
            raise ParseError("UnknownTerm", f"unknown term {tok.text!r} in space {space.name}", tok.line, tok.col)
        return space.term(tok.text)

    def _row(self, s: Stream, space: LinguisticSpace, close: str) -> list[tuple[Term, Tok]]:
        out = []
        while True:
            if s.is_punct(close) or s.is_punct(";"):
                return out
            tok = s.term()
            out.append((self._term(space, tok), tok))
            s.accept(",")

    def _matrix_literal(self, s: Stream, space: LinguisticSpace, shape: tuple[int, int] | None) -> LingMatrix:
        open_tok = s.expect("[")
        rows: list[tuple[list[Term], Tok]] = []
        while True:
            start = s.peek()
            row = self._row(s, space, "]")
            end = s.next()  # ';' or ']'
            if row:
                rows.append(([t for t, _ in row], row[0][1]))
            elif end.text == ";":
                raise ParseError("Syntax", "empty matrix row", end.line, end.col)
            if end.text == "]":
                break
        if not rows:
            raise ParseError("ShapeMismatch", "matrix literal has no rows", open_tok.line, open_tok.col)
        width = shape[1] if shape else len(rows[0][0])
        for k, (row, tok) in enumerate(rows):
            if len(row) != width:
                raise ParseError("ShapeMismatch", f"row {k + 1} has {len(row)} entries, expected {width}",
                                 tok.line, tok.col)
        if shape and len(rows) != shape[0]:
            raise ParseError("ShapeMismatch", f"matrix has {len(rows)} rows, expected {shape[0]}",
                             open_tok.line, open_tok.col)
        return LingMatrix(space, [r for r, _ in rows])

    def _tuple_literal(self, s: Stream, space: LinguisticSpace) -> list[Term]:
        open_tok = s.expect("(")
        row = self._row(s, space, ")")
        if s.is_punct(";"):
            t = s.peek()
            raise ParseError("Syntax", "';' inside a row tuple", t.line, t.col)
        s.expect(")")
        if not row:
            raise ParseError("ShapeMismatch", "empty tuple", open_tok.line, open_tok.col)
        return [t for t, _ in row]

    def _labels(self, s: Stream, stop=(";",)) -> list[Tok]:
        out = []
        while not s.at_end() and not any(s.is_punct(c) for c in stop):
            t = s.next()
            if t.kind not in ("ident", "num"):
                raise ParseError("Syntax", f"expected a label, found {_describe(t)}", t.line, t.col)
            out.append(t)
        seen = set()
        for t in out:
            if t.text in seen:
                raise ParseError("DuplicateName", f"label {t.text!r} repeated", t.line, t.col)
            seen.add(t.text)
        return out

    def _pair(self, s: Stream) -> OperatorPair:
        t = s.word("an operator pair")
        try:
            return OperatorPair.parse(t.text)
        except ValueError as e:
            raise ParseError("UnknownPair", str(e), t.line, t.col) from None

    def _clauses(self, s: Stream, allowed: set[str]) -> dict[str, tuple[Tok, Stream]]:
        """Split ``kw args ; kw args ; ...`` into per-keyword sub-streams."""
        out: dict[str, tuple[Tok, Stream]] = {}
        while not s.at_end():
            kw = s.word("a clause keyword")
            if kw.text not in allowed:
                raise ParseError("Syntax", f"unknown clause {kw.text!r} (expected one of {', '.join(sorted(allowed))})",
                                 kw.line, kw.col)
            if kw.text in out:
                raise ParseError("Syntax", f"clause {kw.text!r} given twice", kw.line, kw.col)
            toks = []
            while not s.at_end() and not s.is_punct(";"):
                toks.append(s.next())
            s.accept(";")
            last = toks[-1] if toks else kw
            out[kw.text] = (kw, Stream(toks, (last.line, last.col + len(last.text))))
        return out

    def _warn(self, tok: Tok, message: str, code: str):
        self.diags.append(Diagnostic(Severity.WARNING, tok.line, tok.col, message, code))

    # statements

    def space(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.spaces, "space")
        s.expect(":")
        kind_tok = s.word("chain, signed-chain or poset")
        greatest = None
        aliases: dict[str, str] = {}
        overlap: list[str] = []
        partition = None
        for line in b.body:
            d = Stream(line[1:], (line[-1].line, line[-1].col + len(line[-1].text)))
            kw = line[0].text
            if kw == "greatest":
                if greatest is not None:
                    raise ParseError("Syntax", "greatest declared twice", line[0].line, line[0].col)
                greatest = d.term().text
            elif kw == "alias":
                a = d.term()
                d.expect("=")
                tgt = d.term()
                if a.text in aliases:
                    raise ParseError("DuplicateName", f"alias {a.text!r} declared twice", a.line, a.col)
                aliases[a.text] = tgt.text
            elif kw == "overlap-terms":
                d.expect("{")
                while not d.accept("}"):
                    overlap.append(d.term().text)
                    d.accept(",")
            elif kw == "partition":
                if partition is not None:
                    raise ParseError("Syntax", "partition declared twice", line[0].line, line[0].col)
                d.expect("{")
                partition, block = [], []
                while True:
                    if d.accept(";"):
                        partition.append(block)
                        block = []
                    elif d.accept("}"):
                        if block:
                            partition.append(block)
                        break
                    else:
                        block.append(d.term().text)
                        d.accept(",")
            d.done()
        kw_args = dict(greatest=greatest, aliases=aliases, overlap=overlap, partition=partition)
        if kind_tok.text in ("chain", "signed-chain"):
            items = [s.term().text]
            while s.accept("<"):
                items.append(s.term().text)
            s.done()
            if kind_tok.text == "chain":
                sp = LinguisticSpace.chain(name.text, items, **kw_args)
            else:
                sp = LinguisticSpace.signed_chain(name.text, items, **kw_args)
        elif kind_tok.text == "poset":
            s.expect("{")
            covers, terms = [], []
            while not s.accept("}"):
                chain = [s.term().text]
                while s.accept("<"):
                    chain.append(s.term().text)
                if len(chain) == 1:
                    terms.append(chain[0])
                covers.extend(zip(chain, chain[1:]))
                if not s.accept(","):
                    s.expect("}")
                    break
            s.done()
            greatest_arg = kw_args.pop("greatest")
            sp = LinguisticSpace.poset(name.text, covers, terms, greatest=greatest_arg, **kw_args)
        else:
            raise ParseError("Syntax", f"unknown order kind {kind_tok.text!r}", kind_tok.line, kind_tok.col)
        self.bundle.spaces[name.text] = sp

    def metric(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.metrics, "metric")
        src = self._space_ref(s)
        s.keyword("dist")
        dist = self._ref(s.word("a space name"), self.bundle.spaces, "space", "UnknownSpace")
        s.expect(":")
        s.done()
        entries: dict[tuple[Term, Term], Term] = {}
        partial = None
        for line in b.body:
            d = Stream(line, (line[-1].line, line[-1].col + len(line[-1].text)))
            if line[0].kind == "ident" and line[0].text == "partial":
                d.next()
                partial = self._term(dist, d.term())
                d.done()
                continue
            open_tok = d.expect("(")
            a = self._term(src, d.term())
            d.expect(",")
            c = self._term(src, d.term())
            d.expect(")")
            d.expect("=")
            v = self._term(dist, d.term())
            d.done()
            if (a, c) in entries or (c, a) in entries:
                prev = entries.get((a, c), entries.get((c, a)))
                if prev != v:
                    raise ParseError("AsymmetricDistance", f"({a}, {c}) declared as both {prev} and {v}",
                                     open_tok.line, open_tok.col)
                raise ParseError("DuplicatePair", f"({a}, {c}) declared twice", open_tok.line, open_tok.col)
            entries[(a, c)] = v
        self.bundle.metrics[name.text] = MetricTable(name.text, src, dist, entries, partial)

    def matrix(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.matrices, "matrix")
        space = self._space_ref(s)
        s.expect(":")
        shape_tok = s.next()
        if shape_tok.kind != "shape":
            raise ParseError("Syntax", f"expected a shape like 2x3, found {_describe(shape_tok)}",
                             shape_tok.line, shape_tok.col)
        r, c = (int(x) for x in shape_tok.text.split("x"))
        if r < 1 or c < 1:
            raise ParseError("ShapeMismatch", "matrix dimensions must be at least 1", shape_tok.line, shape_tok.col)
        m = self._matrix_literal(s, space, (r, c))
        s.done()
        self.bundle.matrices[name.text] = m

    def state(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.states, "state")
        space = self._space_ref(s)
        s.expect(":")
        row = self._tuple_literal(s, space)
        s.done()
        self.bundle.states[name.text] = StateVector.initial(LingMatrix(space, [row]))

    def poly(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.polynomials, "polynomial")
        space = self._space_ref(s)
        s.expect(":")
        coeffs: dict[int, Term | LingMatrix] = {}
        shape = None
        while True:
            start = s.peek()
            if s.is_punct("("):
                c = LingMatrix(space, [self._tuple_literal(s, space)])
            elif s.is_punct("["):
                c = self._matrix_literal(s, space, None)
            else:
                c = self._term(space, s.term())
            exp = 0
            if s.peek().kind == "ident" and s.peek().text == "x":
                s.next()
                exp = 1
                if s.accept("^"):
                    exp = int(s.number().text)
            if isinstance(c, LingMatrix):
                if shape is None and not coeffs:
                    shape = c.shape
                if shape != c.shape:
                    got = f"{c.rows}x{c.cols}"
                    want = "scalar" if shape is None else f"{shape[0]}x{shape[1]}"
                    raise ParseError("ShapeMismatch", f"coefficient is {got}, expected {want}", start.line, start.col)
            elif shape is not None:
                raise ParseError("ShapeMismatch", "scalar coefficient in a matrix-coefficient polynomial",
                                 start.line, start.col)
            if exp in coeffs:
                raise ParseError("DuplicateExponent", f"x^{exp} appears twice", start.line, start.col)
            coeffs[exp] = c
            if not s.accept("+"):
                break
        s.done()
        self.bundle.polynomials[name.text] = LingPolynomial(space, coeffs, shape)

    def _edges(self, b: _Block, left: dict[str, int], right: dict[str, int], directed: bool | None):
        out = []
        for line in b.body:
            d = Stream(line, (line[-1].line, line[-1].col + len(line[-1].text)))
            a = d.next()
            e = d.next()
            c = d.next()
            d.done()
            if a.kind not in ("ident", "num") or e.kind != "edge" or c.kind not in ("ident", "num"):
                raise ParseError("Syntax", "expected an edge like 'A -label-> B'", line[0].line, line[0].col)
            if directed is not None and e.directed != directed:
                want = "'-label->'" if directed else "'-label-'"
                raise ParseError("Syntax", f"edge style does not match the graph, use {want}", e.line, e.col)
            for tok, table in ((a, left), (c, right)):
                if tok.text not in table:
                    raise ParseError("UnknownLabel", f"unknown label {tok.text!r}", tok.line, tok.col)
            out.append((a, e, c))
        return out

    def graph(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.graphs, "graph")
        space = self._space_ref(s)
        directed = True
        if s.peek().kind == "ident" and s.peek().text in ("directed", "undirected"):
            directed = s.next().text == "directed"
        s.expect(":")
        concepts = self._labels(s)
        s.done()
        idx = {t.text: k for k, t in enumerate(concepts)}
        edges = []
        seen = {}
        for a, e, c in self._edges(b, idx, idx, directed):
            key = (idx[a.text], idx[c.text]) if directed else tuple(sorted((idx[a.text], idx[c.text])))
            if key in seen:
                raise ParseError("DuplicateEdge", f"edge {a.text} - {c.text} declared twice", a.line, a.col)
            if a.text == c.text:
                raise ParseError("SelfLoop", f"self-loop on {a.text}", a.line, a.col)
            label = self._term(space, Tok("ident", e.text, e.line, e.col + 1))
            if label.is_zero:
                raise ParseError("ZeroEdge", "edge labelled 0", e.line, e.col)
            seen[key] = True
            edges.append((idx[a.text], idx[c.text], label))
        g = ConceptGraph(space, [t.text for t in concepts], edges, directed, name.text)
        graph_to_matrix(g)
        self.bundle.graphs[name.text] = g

    def experts(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.experts, "expert collection")
        s.expect(":")
        refs = self._labels(s)
        s.done()
        if not refs:
            raise ParseError("EmptyCollection", "expert collection lists no graphs", name.line, name.col)
        graphs = [self._ref(t, self.bundle.graphs, "graph", "UnknownGraph") for t in refs]
        try:
            self.bundle.experts[name.text] = ExpertCollection(graphs, name.text)
        except ValueError as e:
            raise ParseError("ConceptMismatch", str(e), name.line, name.col) from None

    def relation(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.relations, "relation")
        space = self._space_ref(s)
        s.expect(":")
        cl = self._clauses(s, {"left", "right"})
        for need in ("left", "right"):
            if need not in cl:
                raise ParseError("Syntax", f"relation needs a {need!r} clause", name.line, name.col)
        left = [t.text for t in self._labels(cl["left"][1])]
        right = [t.text for t in self._labels(cl["right"][1])]
        links = []
        seen = set()
        for a, e, c in self._edges(b, dict.fromkeys(left, 0), dict.fromkeys(right, 0), True):
            t = self._term(space, Tok("ident", e.text, e.line, e.col + 1))
            if t.is_zero:
                raise ParseError("ZeroEdge", "link labelled 0", e.line, e.col)
            if (a.text, c.text) in seen:
                raise ParseError("DuplicateLink", f"link {a.text} -> {c.text} declared twice", a.line, a.col)
            seen.add((a.text, c.text))
            links.append((a.text, c.text, t))
        rel = BipartiteRelation(tuple(left), tuple(right), tuple(links), name.text)
        relation_to_matrix(rel, space)
        self.bundle.relations[name.text] = (rel, space)

    def flcm(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.flcm_models, "flcm model")
        s.expect(":")
        cl = self._clauses(s, {"concepts", "matrix", "pair"})
        if "matrix" not in cl:
            raise ParseError("Syntax", "flcm model needs a 'matrix' clause", name.line, name.col)
        ms = cl["matrix"][1]
        m = self._ref(ms.word("a matrix name"), self.bundle.matrices, "matrix", "UnknownMatrix")
        ms.done()
        if "concepts" in cl:
            concepts = [t.text for t in self._labels(cl["concepts"][1])]
        else:
            concepts = [f"C{k + 1}" for k in range(m.rows)]
        pair = self._pair_clause(cl, name)
        if m.rows != m.cols or len(concepts) != m.rows:
            kw = cl.get("concepts", cl["matrix"])[0]
            raise ParseError("ShapeMismatch", f"{len(concepts)} concepts for a {m.rows}x{m.cols} matrix",
                             kw.line, kw.col)
        self.bundle.flcm_models[name.text] = FLCMModel(tuple(concepts), m, pair, name.text)

    def _pair_clause(self, cl, name: Tok) -> OperatorPair:
        if "pair" in cl:
            ps = cl["pair"][1]
            pair = self._pair(ps)
            ps.done()
            return pair
        self._warn(name, f"{name.text}: no operator pair given, using maxmin", "DefaultPair")
        return OperatorPair.MAXMIN

    def flrm(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.flrm_models, "flrm model")
        s.expect(":")
        cl = self._clauses(s, {"domain", "range", "matrix", "pair"})
        if "matrix" not in cl:
            raise ParseError("Syntax", "flrm model needs a 'matrix' clause", name.line, name.col)
        ms = cl["matrix"][1]
        m = self._ref(ms.word("a matrix name"), self.bundle.matrices, "matrix", "UnknownMatrix")
        ms.done()
        dom = [t.text for t in self._labels(cl["domain"][1])] if "domain" in cl else [f"D{k + 1}" for k in range(m.rows)]
        rng = [t.text for t in self._labels(cl["range"][1])] if "range" in cl else [f"R{k + 1}" for k in range(m.cols)]
        pair = self._pair_clause(cl, name)
        if (len(dom), len(rng)) != m.shape:
            raise ParseError("ShapeMismatch", f"{len(dom)} domain and {len(rng)} range concepts for a "
                             f"{m.rows}x{m.cols} matrix", name.line, name.col)
        self.bundle.flrm_models[name.text] = FLRMModel(tuple(dom), tuple(rng), m, pair, name.text)

    def network(self, b: _Block):
        s = b.stream
        name = self._name(s, self.bundle.networks, "network")
        s.expect(":")
        cl = self._clauses(s, {"layers", "pair"})
        if "layers" not in cl:
            raise ParseError("Syntax", "network needs a 'layers' clause", name.line, name.col)
        refs = []
        ls = cl["layers"][1]
        while not ls.at_end():
            refs.append(ls.word("a matrix name"))
        if not refs:
            raise ParseError("Syntax", "network lists no layers", name.line, name.col)
        layers = [self._ref(t, self.bundle.matrices, "matrix", "UnknownMatrix") for t in refs]
        pair = self._pair_clause(cl, name)
        for k in range(1, len(layers)):
            if layers[k - 1].cols != layers[k].rows:
                t = refs[k]
                raise ParseError("ShapeMismatch", f"layer {t.text} is {layers[k].rows}x{layers[k].cols}, "
                                 f"previous layer has {layers[k - 1].cols} outputs", t.line, t.col)
        acts: list[dict | None] = [None] * len(layers)
        for line in b.body:
            d = Stream(line, (line[-1].line, line[-1].col + len(line[-1].text)))
            d.keyword("activation")
            k_tok = d.number()
            k = int(k_tok.text)
            if not 1 <= k <= len(layers):
                raise ParseError("Syntax", f"layer index {k} out of range 1..{len(layers)}", k_tok.line, k_tok.col)
            if acts[k - 1] is not None:
                raise ParseError("Syntax", f"activation for layer {k} given twice", k_tok.line, k_tok.col)
            d.expect(":")
            space = layers[k - 1].space
            mapping = {}
            while not d.at_end():
                a = self._term(space, d.term())
                arrow = d.next()
                if arrow.kind != "arrow":
                    raise ParseError("Syntax", f"expected '->', found {_describe(arrow)}", arrow.line, arrow.col)
                mapping[a] = self._term(space, d.term())
                if not d.accept(","):
                    d.done()
            acts[k - 1] = mapping
        self.bundle.networks[name.text] = FeedForwardNetwork(tuple(layers), pair, tuple(acts), name.text)


def parse_model(text: str | bytes) -> ModelBundle:
    """Parse model-file text; raise :class:`ModelError` on any error diagnostic."""
    diags: list[Diagnostic] = []
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            line = text[:e.start].count(b"\n") + 1
            raise ModelError([Diagnostic(Severity.ERROR, line, 1, f"file is not valid UTF-8 ({e.reason})",
                                         "Encoding")]) from None
    if text.startswith("﻿"):
        text = text[1:]
    blocks = _split_blocks(text, diags)
    builder = _Builder()
    blocks.sort(key=lambda blk: _ORDER.index(blk.keyword))
    for blk in blocks:
        try:
            getattr(builder, blk.keyword)(blk)
        except ParseError as e:
            diags.append(Diagnostic(Severity.ERROR, e.line, e.col, str(e), e.code))
        except (FlmError, ValueError) as e:
            diags.append(Diagnostic(Severity.ERROR, blk.header.line, blk.header.col, str(e),
                                    getattr(e, "code", "InvalidValue")))
    diags.extend(builder.diags)
    errors = [d for d in diags if d.severity is Severity.ERROR]
    if errors:
        raise ModelError(sorted(diags, key=lambda d: (d.line, d.col)))
    bundle = builder.bundle
    bundle.warnings = sorted(diags, key=lambda d: (d.line, d.col))
    return bundle


def load_model(path: str | Path) -> ModelBundle:
    return parse_model(Path(path).read_bytes())


# -- serialization ----------------------------------------------------------

def _find(table: dict, obj, kind: str) -> str:
    for k, v in table.items():
        if v is obj:
            return k
    for k, v in table.items():
        if v == obj:
            return k
    raise KeyError(f"{kind} is not part of the bundle")


def _matrix_literal(m: LingMatrix) -> str:
    return "[" + "; ".join(" ".join(t.name for t in row) for row in m.data) + "]"


def _dump_space(sp: LinguisticSpace) -> list[str]:
    if sp.kind is OrderKind.CHAIN:
        head = "chain " + " < ".join(sp.declaration)
    elif sp.kind is OrderKind.SIGNED_CHAIN:
        head = "signed-chain " + " < ".join(sp.declaration)
    else:
        names, covers = sp.declaration[0], sp.declaration[1]
        in_covers = {x for c in covers for x in c}
        items = [t for t in names if t != ZERO and t not in in_covers]
        items += [f"{a} < {b}" for a, b in covers]
        head = "poset { " + ", ".join(items) + " }"
    lines = [f"space {sp.name}: {head}"]
    if sp.declared_greatest is not None:
        lines.append(f"  greatest {sp.declared_greatest}")
    for a, t in sp.aliases.items():
        lines.append(f"  alias {a} = {t}")
    if sp.overlap_terms:
        lines.append("  overlap-terms { " + ", ".join(t.name for t in sorted(sp.overlap_terms, key=lambda t: t.index)) + " }")
    if sp.partition is not None:
        lines.append("  partition { " + "; ".join(" ".join(b) for b in sp.partition) + " }")
    return lines


def _poly_text(p: LingPolynomial) -> str:
    if p.coeffs:
        return p.to_text()
    if p.shape is None:
        return ZERO
    return _matrix_literal(LingMatrix.zeros(p.space, *p.shape))


def dump_model(bundle: ModelBundle) -> str:
    """Serialize a bundle; ``parse_model(dump_model(b)) == b``."""
    out: list[str] = []
    for sp in bundle.spaces.values():
        out += _dump_space(sp)
    for name, mt in bundle.metrics.items():
        out.append(f"metric {name} over {mt.source.name} dist {mt.distance_space.name}:")
        for (a, b), d in mt.entries.items():
            out.append(f"  ({a}, {b}) = {d}")
        if mt.not_comparable is not None:
            out.append(f"  partial {mt.not_comparable}")
    for name, m in bundle.matrices.items():
        out.append(f"matrix {name} over {m.space.name}: {m.rows}x{m.cols} {_matrix_literal(m)}")
    for name, st in bundle.states.items():
        out.append(f"state {name} over {st.values.space.name}: (" + ", ".join(t.name for t in st.terms) + ")")
    for name, p in bundle.polynomials.items():
        out.append(f"poly {name} over {p.space.name}: {_poly_text(p)}")
    for name, g in bundle.graphs.items():
        style = "" if g.directed else " undirected"
        out.append(f"graph {name} over {g.space.name}{style}: " + " ".join(g.concepts))
        arrow = ">" if g.directed else ""
        for e in g.edges:
            out.append(f"  {g.concepts[e.source]} -{e.label}-{arrow} {g.concepts[e.target]}")
    for name, ex in bundle.experts.items():
        out.append(f"experts {name}: " + " ".join(_find(bundle.graphs, g, "graph") for g in ex.graphs))
    for name, (rel, sp) in bundle.relations.items():
        out.append(f"relation {name} over {sp.name}: left {' '.join(rel.left)}; right {' '.join(rel.right)}")
        for a, b, t in rel.links:
            out.append(f"  {a} -{t}-> {b}")
    for name, m in bundle.flcm_models.items():
        out.append(f"flcm {name}: concepts {' '.join(m.concepts)}; matrix {_find(bundle.matrices, m.matrix, 'matrix')};"
                   f" pair {m.pair.label}")
    for name, m in bundle.flrm_models.items():
        out.append(f"flrm {name}: domain {' '.join(m.domain_concepts)}; range {' '.join(m.range_concepts)};"
                   f" matrix {_find(bundle.matrices, m.matrix, 'matrix')}; pair {m.pair.label}")
    for name, net in bundle.networks.items():
        layers = " ".join(_find(bundle.matrices, w, "matrix") for w in net.layers)
        out.append(f"network {name}: layers {layers}; pair {net.pair.label}")
        for k, act in enumerate(net.activations, start=1):
            if act:
                out.append(f"  activation {k}: " + ", ".join(f"{a} -> {b}" for a, b in act.items()))
    return "\n".join(out) + "\n"
