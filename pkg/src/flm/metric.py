"""Linguistic distance tables and topology classification."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ForeignTerm, MissingPair
from .space import LinguisticSpace, Ordering, Term


class MetricKind(enum.Enum):
    DISCRETE = "discrete"
    OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class MetricDiagnostic:
    code: str
    a: str
    b: str
    message: str


@dataclass(frozen=True)
class TopologyReport:
    metric_kind: MetricKind
    chain_connected: bool
    lattice_connected: bool
    graphs: object = None  # ExpertStrength when graphs were supplied


class MetricTable:
    """Distance terms between pairs of terms of ``source``.

    Entries are kept as declared; lookups are order-insensitive.  A table
    marked partial names the distance term used for incomparable pairs that
    were left out.
    """

    def __init__(self, name: str, source: LinguisticSpace, distance_space: LinguisticSpace,
                 entries: Mapping[tuple[Term, Term], Term], not_comparable: Term | None = None):
        self.name = name
        self.source = source
        self.distance_space = distance_space
        self.entries = dict(entries)
        self.not_comparable = not_comparable
        if not_comparable is not None:
            distance_space.check(not_comparable)

    @classmethod
    def from_names(cls, name: str, source: LinguisticSpace, distance_space: LinguisticSpace,
                   rows: Iterable[tuple[str, str, str]], not_comparable: str | None = None) -> MetricTable:
        entries = {}
        for a, b, d in rows:
            entries[(source.term(a), source.term(b))] = distance_space.term(d)
        nc = distance_space.term(not_comparable) if not_comparable is not None else None
        return cls(name, source, distance_space, entries, nc)

    @property
    def partial(self) -> bool:
        return self.not_comparable is not None

    def __eq__(self, other):
        return (isinstance(other, MetricTable) and self.name == other.name and self.source == other.source
                and self.distance_space == other.distance_space and self.entries == other.entries
                and self.not_comparable == other.not_comparable)

    def __repr__(self):
        return f"MetricTable({self.name!r}, {self.source.name} -> {self.distance_space.name}, {len(self.entries)} entries)"

    def distance(self, a: Term, b: Term) -> Term:
        self.source.check(a, b)
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        if (b, a) in self.entries:
            return self.entries[(b, a)]
        if a == b:
            return self.distance_space.zero
        if self.partial and self.source.compare(a, b) is Ordering.INCOMPARABLE:
            return self.not_comparable
        raise MissingPair(f"no distance declared for ({a}, {b}) in {self.name}")

    def restrict(self, sub: LinguisticSpace) -> MetricTable:
        """Table over a subspace, matching terms by name."""
        entries = {}
        for (a, b), d in self.entries.items():
            if sub.has_name(a.name) and sub.has_name(b.name):
                entries[(sub.term(a.name), sub.term(b.name))] = d
        return MetricTable(f"{self.name}|{sub.name}", sub, self.distance_space, entries, self.not_comparable)

    def is_overlap(self, d: Term) -> bool:
        return d in self.distance_space.overlap_terms


def distance(table: MetricTable, a: Term, b: Term) -> Term:
    return table.distance(a, b)


def validate_metric(table: MetricTable) -> list[MetricDiagnostic]:
    """Check self-distance zero, symmetry and coverage; one diagnostic per violation."""
    out = []
    src, dist = table.source, table.distance_space
    for (a, b), d in table.entries.items():
        if a not in src or b not in src:
            bad = a if a not in src else b
            out.append(MetricDiagnostic("ForeignTerm", a.name, b.name, f"{bad} is not a term of {src.name}"))
            continue
        if d not in dist:
            out.append(MetricDiagnostic("ForeignTerm", a.name, b.name, f"{d} is not a term of {dist.name}"))
            continue
        if a == b and not d.is_zero:
            out.append(MetricDiagnostic("NonZeroSelfDistance", a.name, b.name,
                                        f"distance({a}, {a}) = {d}, expected 0"))
        back = table.entries.get((b, a))
        if a != b and back is not None and back != d and a.index < b.index:
            out.append(MetricDiagnostic("AsymmetricDistance", a.name, b.name,
                                        f"distance({a}, {b}) = {d} but distance({b}, {a}) = {back}"))
    for a, b in itertools.combinations(src.terms, 2):
        if (a, b) in table.entries or (b, a) in table.entries:
            continue
        if table.partial and src.compare(a, b) is Ordering.INCOMPARABLE:
            continue
        out.append(MetricDiagnostic("MissingPair", a.name, b.name, f"no distance declared for ({a}, {b})"))
    return out


def metric_kind(table: MetricTable) -> MetricKind:
    for (a, b), d in table.entries.items():
        if a != b and table.is_overlap(d):
            return MetricKind.OVERLAPPING
    return MetricKind.DISCRETE


def classify_topology(space: LinguisticSpace, table: MetricTable, graphs: Sequence | None = None) -> TopologyReport:
    if table.source is not space and table.source != space:
        raise ForeignTerm(f"metric {table.name} is over {table.source.name}, not {space.name}")
    strength = None
    if graphs:
        from .lingraph import ExpertCollection, classify_experts
        strength = classify_experts(graphs if isinstance(graphs, ExpertCollection) else ExpertCollection(list(graphs)))
    return TopologyReport(metric_kind(table), space.is_chain_lattice(), space.is_lattice(), strength)


def discrete_witness(space: LinguisticSpace, table: MetricTable) -> LinguisticSpace | None:
    """A subspace classifying discrete: {0, t} for some term t, or None."""
    for t in space.terms:
        if t.is_zero:
            continue
        sub = space.subspace([t])
        if metric_kind(table.restrict(sub)) is MetricKind.DISCRETE:
            return sub
    return None
