"""Cognitive maps, relational maps and relation equations over linguistic terms."""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Sequence, Union

from .errors import (DuplicateLink, InvalidActivation, InvalidModel, IterationCapExceeded, ShapeMismatch,
                     SpaceMismatch, UnknownLabel, ZeroEdge)
from .matrix import LingMatrix, OperatorPair, compose
from .space import LinguisticSpace, Term

DEFAULT_PAIR = OperatorPair.MAXMIN
DEFAULT_MAX_ITERS = 1000


def resolve_max_iters(max_iters: int | None = None) -> int:
    """Explicit cap, else ``FLM_MAX_ITERS``, else 1000."""
    if max_iters is None:
        raw = os.environ.get("FLM_MAX_ITERS")
        if raw is None or raw.strip() == "":
            return DEFAULT_MAX_ITERS
        try:
            max_iters = int(raw)
        except ValueError:
            raise ValueError(f"FLM_MAX_ITERS must be an integer, got {raw!r}") from None
    if max_iters < 1:
        raise ValueError(f"iteration cap must be at least 1, got {max_iters}")
    return max_iters


@dataclass(frozen=True)
class StateVector:
    """A 1 x n row of terms plus the coordinates held at their initial value."""

    values: LingMatrix
    clamp_mask: tuple[bool, ...]

    def __post_init__(self):
        if self.values.rows != 1:
            raise ShapeMismatch(f"state must be a row vector, got {self.values.rows}x{self.values.cols}")
        if len(self.clamp_mask) != self.values.cols:
            raise ShapeMismatch(f"clamp mask has {len(self.clamp_mask)} entries for {self.values.cols} coordinates")
        for t, c in zip(self.values.data[0], self.clamp_mask):
            if c and t.is_zero:
                raise ValueError("clamped coordinates must hold nonzero terms")

    @classmethod
    def initial(cls, values: LingMatrix) -> StateVector:
        """Clamp every nonzero coordinate."""
        return cls(values, tuple(not t.is_zero for t in values.data[0]))

    @classmethod
    def free(cls, values: LingMatrix) -> StateVector:
        return cls(values, (False,) * values.cols)

    @classmethod
    def of(cls, space: LinguisticSpace, names: Sequence[str], clamp: bool = True) -> StateVector:
        row = LingMatrix.row(space, names)
        return cls.initial(row) if clamp else cls.free(row)

    @property
    def terms(self) -> tuple[Term, ...]:
        return self.values.data[0]

    def __len__(self):
        return self.values.cols


class PatternKind(enum.Enum):
    FIXED_POINT = "fixed-point"
    LIMIT_CYCLE = "limit-cycle"


@dataclass(frozen=True)
class HiddenPattern:
    kind: PatternKind
    trace: tuple[LingMatrix, ...]
    cycle: tuple[LingMatrix, ...]
    iterations: int

    @property
    def state(self) -> LingMatrix:
        """The fixed point, or the first state of the cycle."""
        return self.cycle[0]


class FLRMResult(NamedTuple):
    domain: HiddenPattern
    range: HiddenPattern


def _check_pair(pair) -> OperatorPair:
    if not isinstance(pair, OperatorPair):
        raise TypeError(f"expected an OperatorPair, got {pair!r}")
    return pair


@dataclass(frozen=True)
class FLCMModel:
    concepts: tuple[str, ...]
    matrix: LingMatrix
    pair: OperatorPair = DEFAULT_PAIR
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))
        _check_pair(self.pair)
        m = self.matrix
        if m.rows != m.cols:
            raise ShapeMismatch(f"cognitive map matrix must be square, got {m.rows}x{m.cols}")
        if len(self.concepts) != m.rows:
            raise ShapeMismatch(f"{len(self.concepts)} concepts for a {m.rows}x{m.rows} matrix")
        for i in range(m.rows):
            if not m.data[i][i].is_zero:
                raise InvalidModel(f"diagonal entry for {self.concepts[i]} must be 0, got {m.data[i][i]}")

    @property
    def space(self) -> LinguisticSpace:
        return self.matrix.space


@dataclass(frozen=True)
class FLRMModel:
    domain_concepts: tuple[str, ...]
    range_concepts: tuple[str, ...]
    matrix: LingMatrix
    pair: OperatorPair = DEFAULT_PAIR
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "domain_concepts", tuple(self.domain_concepts))
        object.__setattr__(self, "range_concepts", tuple(self.range_concepts))
        _check_pair(self.pair)
        if self.matrix.shape != (len(self.domain_concepts), len(self.range_concepts)):
            raise ShapeMismatch(f"{len(self.domain_concepts)} domain and {len(self.range_concepts)} range concepts "
                                f"for a {self.matrix.rows}x{self.matrix.cols} matrix")

    @property
    def space(self) -> LinguisticSpace:
        return self.matrix.space


def _clamp(raw: LingMatrix, initial: StateVector) -> LingMatrix:
    row = [init if c else t for t, init, c in zip(raw.data[0], initial.terms, initial.clamp_mask)]
    return LingMatrix(raw.space, [row])


def _check_state(state: StateVector, n: int, space: LinguisticSpace, what: str) -> None:
    if len(state) != n:
        raise ShapeMismatch(f"{what} has {len(state)} coordinates, model expects {n}")
    if state.values.space is not space and state.values.space != space:
        raise SpaceMismatch(f"{what} is over {state.values.space.name}, model is over {space.name}")


def flcm_step(model: FLCMModel, state: StateVector, initial: StateVector) -> StateVector:
    n = len(model.concepts)
    _check_state(state, n, model.space, "state")
    _check_state(initial, n, model.space, "initial state")
    raw = compose(state.values, model.matrix, model.pair)
    return StateVector(_clamp(raw, initial), initial.clamp_mask)


class _Tracker:
    """Full-history repetition detection over hashable states."""

    def __init__(self, first):
        self.history = [first]
        self.seen = {first: 0}

    def push(self, state) -> int | None:
        self.history.append(state)
        k = self.seen.get(state)
        if k is None:
            self.seen[state] = len(self.history) - 1
        return k


def _pattern(history: Sequence[LingMatrix], k: int, iterations: int) -> HiddenPattern:
    last = len(history) - 1
    if k == last - 1:
        return HiddenPattern(PatternKind.FIXED_POINT, tuple(history), (history[-1],), iterations)
    return HiddenPattern(PatternKind.LIMIT_CYCLE, tuple(history), tuple(history[k:last]), iterations)


def flcm_run(model: FLCMModel, initial: StateVector, max_iters: int | None = None) -> HiddenPattern:
    """Iterate the clamped update until a state repeats."""
    cap = resolve_max_iters(max_iters)
    _check_state(initial, len(model.concepts), model.space, "initial state")
    tracker = _Tracker(initial.values)
    state = initial
    for it in range(1, cap + 1):
        state = flcm_step(model, state, initial)
        k = tracker.push(state.values)
        if k is not None:
            return _pattern(tracker.history, k, it)
    raise IterationCapExceeded(f"no repeated state within {cap} iterations")


def flrm_run(model: FLRMModel, initial: StateVector, side: str = "domain",
             max_iters: int | None = None) -> FLRMResult:
    """Alternate through the matrix and its transpose until a (domain, range) pair repeats.

    Only the side the initial vector was given on is clamped.
    """
    cap = resolve_max_iters(max_iters)
    n_matrix = model.matrix
    n_t = n_matrix.transpose()
    pair = model.pair
    if side == "domain":
        _check_state(initial, len(model.domain_concepts), model.space, "initial domain state")
        x = initial.values
        y = compose(x, n_matrix, pair)
    elif side == "range":
        _check_state(initial, len(model.range_concepts), model.space, "initial range state")
        y = initial.values
        x = compose(y, n_t, pair)
    else:
        raise ValueError(f"side must be 'domain' or 'range', got {side!r}")
    tracker = _Tracker((x, y))
    for it in range(1, cap + 1):
        if side == "domain":
            x = _clamp(compose(y, n_t, pair), initial)
            y = compose(x, n_matrix, pair)
        else:
            y = _clamp(compose(x, n_matrix, pair), initial)
            x = compose(y, n_t, pair)
        k = tracker.push((x, y))
        if k is not None:
            xs = [p[0] for p in tracker.history]
            ys = [p[1] for p in tracker.history]
            return FLRMResult(_pattern(xs, k, it), _pattern(ys, k, it))
    raise IterationCapExceeded(f"no repeated state pair within {cap} alternations")


# -- relation equations ---------------------------------------------------

def flre_compose(p: LingMatrix, q: LingMatrix, pair: OperatorPair = DEFAULT_PAIR) -> LingMatrix:
    """Relation composition P o Q = R."""
    return compose(p, q, pair)


@dataclass(frozen=True)
class BipartiteRelation:
    left: tuple[str, ...]
    right: tuple[str, ...]
    links: tuple[tuple[str, str, Term], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "links", tuple(tuple(x) for x in self.links))


def relation_to_matrix(r: BipartiteRelation, space: LinguisticSpace) -> LingMatrix:
    li = {x: k for k, x in enumerate(r.left)}
    ri = {y: k for k, y in enumerate(r.right)}
    grid = [[space.zero] * len(r.right) for _ in r.left]
    seen = set()
    for a, b, t in r.links:
        if a not in li:
            raise UnknownLabel(f"unknown left label {a!r}")
        if b not in ri:
            raise UnknownLabel(f"unknown right label {b!r}")
        if isinstance(t, str):
            t = space.term(t)
        space.check(t)
        if t.is_zero:
            raise ZeroEdge(f"link {a} -> {b} has zero membership")
        if (a, b) in seen:
            raise DuplicateLink(f"two memberships for {a} -> {b}")
        seen.add((a, b))
        grid[li[a]][ri[b]] = t
    return LingMatrix(space, grid)


def matrix_to_relation(m: LingMatrix, left: Sequence[str], right: Sequence[str], name: str = "") -> BipartiteRelation:
    if (len(left), len(right)) != m.shape:
        raise ShapeMismatch(f"{len(left)}x{len(right)} labels for a {m.rows}x{m.cols} matrix")
    links = [(left[i], right[j], m.data[i][j]) for i in range(m.rows) for j in range(m.cols)
             if not m.data[i][j].is_zero]
    return BipartiteRelation(tuple(left), tuple(right), tuple(links), name)


# -- feed-forward evaluation ------------------------------------------------

Activation = Union[Mapping[Term, Term], Callable[[Term], Term], None]


def activation_table(space: LinguisticSpace, f: Activation) -> dict[Term, Term] | None:
    """Tabulate an activation over the whole space and check it is monotone.

    Terms missing from a mapping pass through unchanged.
    """
    if f is None:
        return None
    table = {}
    for t in space.terms:
        v = f.get(t, t) if isinstance(f, Mapping) else f(t)
        if v not in space:
            raise InvalidActivation(f"activation maps {t} to {v!r}, which is not a term of {space.name}")
        table[t] = v
    for a in space.terms:
        for b in space.terms:
            if space.leq(a, b) and not space.leq(table[a], table[b]):
                raise InvalidActivation(f"activation is not monotone: {a} <= {b} but {table[a]} > {table[b]}")
    return table


def feedforward_eval(layers: Sequence[LingMatrix], input: LingMatrix, pair: OperatorPair = DEFAULT_PAIR,
                     activations: Sequence[Activation] | None = None) -> LingMatrix:
    """Fold composition over the layers, applying each layer's activation after it."""
    if not layers:
        raise ShapeMismatch("network needs at least one layer")
    if input.rows != 1:
        raise ShapeMismatch(f"input must be a row vector, got {input.rows}x{input.cols}")
    if activations is not None and len(activations) != len(layers):
        raise ShapeMismatch(f"{len(activations)} activations for {len(layers)} layers")
    out = input
    for k, w in enumerate(layers):
        out = compose(out, w, pair)
        f = activations[k] if activations is not None else None
        table = activation_table(out.space, f)
        if table is not None:
            out = LingMatrix(out.space, [[table[t] for t in out.data[0]]])
    return out


@dataclass(frozen=True)
class FeedForwardNetwork:
    layers: tuple[LingMatrix, ...]
    pair: OperatorPair = DEFAULT_PAIR
    activations: tuple[Mapping[Term, Term] | None, ...] = field(default=())
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        acts = tuple(self.activations) or (None,) * len(self.layers)
        if len(acts) != len(self.layers):
            raise ShapeMismatch(f"{len(acts)} activations for {len(self.layers)} layers")
        object.__setattr__(self, "activations", acts)
        for a, b in zip(self.layers, self.layers[1:]):
            if a.cols != b.rows:
                raise ShapeMismatch(f"layer {a.rows}x{a.cols} cannot feed layer {b.rows}x{b.cols}")
        for w, act in zip(self.layers, acts):
            activation_table(w.space, act)

    def evaluate(self, input: LingMatrix) -> LingMatrix:
        return feedforward_eval(self.layers, input, self.pair, self.activations)
