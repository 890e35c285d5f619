"""Linguistic matrices and the four min/max composition operators."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NoJoin, ShapeMismatch, SpaceMismatch
from .space import LinguisticSpace, Term


class Op(enum.Enum):
    MIN = "min"
    MAX = "max"


class OperatorPair(enum.Enum):
    """Outer reduction and inner pairing, e.g. MAXMIN = max over t of min(a, b)."""

    MINMIN = ("min", "min")
    MINMAX = ("min", "max")
    MAXMIN = ("max", "min")
    MAXMAX = ("max", "max")

    @property
    def outer(self) -> Op:
        return Op(self.value[0])

    @property
    def inner(self) -> Op:
        return Op(self.value[1])

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> OperatorPair:
        key = text.replace("-", "").replace("_", "").replace(" ", "").upper()
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown operator pair {text!r} (expected minmin, minmax, maxmin or maxmax)") from None


class LingMatrix:
    """Immutable rows x cols grid of terms from a single space."""

    __slots__ = ("space", "rows", "cols", "data")

    def __init__(self, space: LinguisticSpace, data: Sequence[Sequence[Term]]):
        grid = tuple(tuple(row) for row in data)
        if not grid or not grid[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        width = len(grid[0])
        for i, row in enumerate(grid):
            if len(row) != width:
                raise ShapeMismatch(f"row {i + 1} has {len(row)} entries, expected {width}")
            for t in row:
                if t not in space:
                    raise SpaceMismatch(f"{t!r} is not a term of space {space.name}")
        self.space = space
        self.rows = len(grid)
        self.cols = width
        self.data = grid

    @classmethod
    def from_names(cls, space: LinguisticSpace, rows: Iterable[Iterable[str]]) -> LingMatrix:
        return cls(space, [[space.term(x) for x in row] for row in rows])

    @classmethod
    def row(cls, space: LinguisticSpace, names: Iterable[str | Term]) -> LingMatrix:
        return cls(space, [[x if isinstance(x, Term) else space.term(x) for x in names]])

    @classmethod
    def column(cls, space: LinguisticSpace, names: Iterable[str | Term]) -> LingMatrix:
        return cls.row(space, names).transpose()

    @classmethod
    def zeros(cls, space: LinguisticSpace, rows: int, cols: int) -> LingMatrix:
        return cls(space, [[space.zero] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Term:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, LingMatrix) and self.space == other.space and self.data == other.data

    def __hash__(self):
        return hash((self.space.name, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(t.name for t in row) for row in self.data)
        return f"LingMatrix({self.space.name}, {self.rows}x{self.cols} [{body}])"

    def names(self) -> list[list[str]]:
        return [[t.name for t in row] for row in self.data]

    def flat(self) -> tuple[Term, ...]:
        return tuple(t for row in self.data for t in row)

    def is_zero(self) -> bool:
        return all(t.is_zero for row in self.data for t in row)

    def transpose(self) -> LingMatrix:
        return LingMatrix(self.space, list(zip(*self.data)))

    def replace(self, i: int, j: int, t: Term) -> LingMatrix:
        grid = [list(r) for r in self.data]
        grid[i][j] = t
        return LingMatrix(self.space, grid)

    def to_text(self) -> str:
        """Aligned text grid, one row per line."""
        widths = [max(len(self.data[i][j].name) for i in range(self.rows)) for j in range(self.cols)]
        lines = []
        for row in self.data:
            lines.append("  ".join(t.name.ljust(w) for t, w in zip(row, widths)).rstrip())
        return "\n".join(lines)


def _same_space(a: LingMatrix, b: LingMatrix) -> LinguisticSpace:
    if a.space is not b.space and a.space != b.space:
        raise SpaceMismatch(f"matrices live in different spaces ({a.space.name} vs {b.space.name})")
    return a.space


def _binary(space: LinguisticSpace, op: Op):
    if op is Op.MIN:
        return space.meet_index
    return space.join_index


def elementwise(op: Op, a: LingMatrix, b: LingMatrix) -> LingMatrix:
    space = _same_space(a, b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"elementwise {op.value} needs equal shapes, got {a.shape} and {b.shape}")
    f = _binary(space, op)
    terms = space.terms
    out = []
    for i in range(a.rows):
        row = []
        for j in range(a.cols):
            x, y = a.data[i][j], b.data[i][j]
            k = f(x.index, y.index)
            if k is None:
                raise NoJoin(x, y, where=(i, j))
            row.append(terms[k])
        out.append(row)
    return LingMatrix(space, out)


def transpose(a: LingMatrix) -> LingMatrix:
    return a.transpose()


def compose(a: LingMatrix, b: LingMatrix, pair: OperatorPair = OperatorPair.MAXMIN) -> LingMatrix:
    """C(i, j) = outer over every t of inner(A(i, t), B(t, j)).

    Zeros participate like any other term.  A missing join anywhere aborts
    the whole composition.
    """
    space = _same_space(a, b)
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot compose {a.rows}x{a.cols} with {b.rows}x{b.cols}")
    inner = _binary(space, pair.inner)
    outer = _binary(space, pair.outer)
    terms = space.terms
    ai = [[t.index for t in row] for row in a.data]
    bi = [[t.index for t in row] for row in b.data]
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = None
            for t in range(a.cols):
                v = inner(ai[i][t], bi[t][j])
                if v is None:
                    raise NoJoin(terms[ai[i][t]], terms[bi[t][j]], where=(i, j))
                if acc is None:
                    acc = v
                else:
                    w = outer(acc, v)
                    if w is None:
                        raise NoJoin(terms[acc], terms[v], where=(i, j))
                    acc = w
            row.append(terms[acc])
        out.append(row)
    return LingMatrix(space, out)


@dataclass(frozen=True)
class ZeroDivisor:
    """Partner matrix whose elementwise min with the source is all zero.

    ``exists`` is False when the source has no zero entry; then only the
    all-zero partner works and that is what ``matrix`` holds.
    """

    matrix: LingMatrix
    exists: bool


def _fill_term(space: LinguisticSpace) -> Term:
    # meet(0, fill) must be 0, so fill has to sit above zero
    above = [t for t in space.terms if not t.is_zero and space.leq(space.zero, t)]
    if space.greatest is not None and not space.greatest.is_zero:
        return space.greatest
    return above[-1]


def make_zero_divisor(a: LingMatrix, fill: Term | None = None) -> ZeroDivisor:
    space = a.space
    if fill is None:
        fill = _fill_term(space)
    space.check(fill)
    if fill.is_zero or space.meet(space.zero, fill) != space.zero:
        raise ValueError(f"fill term {fill} must be nonzero and above zero")
    if any(not space.leq(space.zero, t) for t in a.flat()):
        raise ValueError("zero divisors need every entry at or above zero")
    if not any(t.is_zero for t in a.flat()):
        return ZeroDivisor(LingMatrix.zeros(space, a.rows, a.cols), False)
    grid = [[fill if t.is_zero else space.zero for t in row] for row in a.data]
    return ZeroDivisor(LingMatrix(space, grid), True)

