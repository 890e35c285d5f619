"""Finite linguistic spaces: terms, order relations, meet/join, negation.

A space is a small finite set of terms containing a distinguished zero,
ordered as a chain, a poset (given by cover edges) or a signed chain
(``-m_k < ... < -m_1 < 0 < +m_1 < ... < +m_k``).  All order queries are
answered from tables computed once at construction, so spaces are
immutable and safe to share.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ForeignTerm, InvalidPartition, InvalidSpace, NoJoin, UnknownTerm, UnsignedSpace

ZERO = "0"


class Sign(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    UNSIGNED = ""


class OrderKind(enum.Enum):
    CHAIN = "chain"
    POSET = "poset"
    SIGNED_CHAIN = "signed-chain"


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class ComparabilityKind(enum.Enum):
    TYPE_ONE = "type-one"
    TYPE_TWO = "type-two"
    TYPE_THREE = "type-three"


@dataclass(frozen=True)
class Term:
    space: str
    name: str
    sign: Sign = Sign.UNSIGNED
    is_zero: bool = False
    index: int = field(default=-1, compare=False, repr=False)

    @property
    def magnitude(self) -> str:
        if self.sign is Sign.UNSIGNED:
            return self.name
        return self.name[1:]

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Term({self.name!r})"


@dataclass(frozen=True)
class ComparabilityClass:
    kind: ComparabilityKind
    blocks: tuple[tuple[Term, ...], ...] | None = None


def _closure(n: int, edges: Iterable[tuple[int, int]]) -> list[list[bool]]:
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in edges:
        leq[a][b] = True
    # Warshall; n is tiny
    for k in range(n):
        row_k = leq[k]
        for i in range(n):
            if leq[i][k]:
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


class LinguisticSpace:
    """An immutable finite linguistic space.

    Build one with :meth:`chain`, :meth:`signed_chain` or :meth:`poset`.
    """

    def __init__(self, name: str, kind: OrderKind, names: Sequence[str], leq: list[list[bool]], *,
                 declaration: tuple, greatest: str | None = None, aliases: Mapping[str, str] | None = None,
                 overlap: Iterable[str] = (), partition: Sequence[Sequence[str]] | None = None,
                 zero_interior: bool = False):
        if not name:
            raise InvalidSpace("space needs a name")
        if len(set(names)) != len(names):
            dup = sorted({x for x in names if names.count(x) > 1})
            raise InvalidSpace(f"space {name}: duplicate terms {', '.join(dup)}")
        if ZERO not in names:
            raise InvalidSpace(f"space {name}: missing zero term")
        self.name = name
        self.kind = kind
        self.declaration = declaration
        self.declared_greatest = greatest
        n = len(names)
        for i in range(n):
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise InvalidSpace(f"space {name}: order has a cycle through {names[i]} and {names[j]}")
        zi = names.index(ZERO)
        if not zero_interior and not all(leq[zi][j] for j in range(n)):
            raise InvalidSpace(f"space {name}: zero must be the least element")
        terms = []
        for i, t in enumerate(names):
            if t == ZERO:
                sign = Sign.UNSIGNED
            elif kind is OrderKind.SIGNED_CHAIN or zero_interior:
                sign = Sign.NEGATIVE if t.startswith("-") else Sign.POSITIVE if t.startswith("+") else Sign.UNSIGNED
            else:
                sign = Sign.UNSIGNED
            terms.append(Term(name, t, sign, t == ZERO, i))
        self.terms: tuple[Term, ...] = tuple(terms)
        self.zero = self.terms[zi]
        self._by_name = {t.name: t for t in self.terms}
        self._leq = leq

        self.aliases: dict[str, str] = {}
        for alias, target in (aliases or {}).items():
            if alias in self._by_name:
                raise InvalidSpace(f"space {name}: alias {alias} shadows a term")
            if target not in self._by_name:
                raise InvalidSpace(f"space {name}: alias {alias} targets unknown term {target}")
            self.aliases[alias] = target

        self.overlap_terms = frozenset(self.term(t) for t in overlap)

        tops = [t for t in self.terms if all(leq[u.index][t.index] for u in self.terms)]
        self.greatest: Term | None = tops[0] if tops else None
        if greatest is not None and (self.greatest is None or self.greatest.name != self._resolve(greatest)):
            raise InvalidSpace(f"space {name}: declared greatest {greatest} is not above every term")

        self._meet = [[0] * n for _ in range(n)]
        self._join: list[list[int | None]] = [[None] * n for _ in range(n)]
        self._exact = True
        for i in range(n):
            for j in range(i, n):
                lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
                glb = [k for k in lower if all(leq[m][k] for m in lower)]
                if glb:
                    m = glb[0]
                else:
                    m, self._exact = zi, False
                upper = [k for k in range(n) if leq[i][k] and leq[j][k]]
                lub = [k for k in upper if all(leq[k][m2] for m2 in upper)]
                if lub:
                    jn = lub[0]
                else:
                    jn, self._exact = (self.greatest.index if self.greatest is not None else None), False
                self._meet[i][j] = self._meet[j][i] = m
                self._join[i][j] = self._join[j][i] = jn

        self.partition = None
        if partition is not None:
            self.partition = tuple(tuple(self._resolve(t) for t in block) for block in partition)

    # -- constructors ---------------------------------------------------

    @classmethod
    def chain(cls, name: str, ranked: Sequence[str], **kw) -> LinguisticSpace:
        """Chain from lowest to highest; zero is prepended when absent."""
        ranked = list(ranked)
        if ZERO not in ranked:
            ranked.insert(0, ZERO)
        elif ranked[0] != ZERO:
            raise InvalidSpace(f"space {name}: zero must be the lowest term of a chain")
        n = len(ranked)
        leq = [[i <= j for j in range(n)] for i in range(n)]
        return cls(name, OrderKind.CHAIN, ranked, leq, declaration=tuple(ranked), **kw)

    @classmethod
    def signed_chain(cls, name: str, magnitudes: Sequence[str], **kw) -> LinguisticSpace:
        """Signed chain over magnitudes listed from smallest to largest."""
        mags = list(magnitudes)
        if not mags:
            raise InvalidSpace(f"space {name}: signed chain needs at least one magnitude")
        for m in mags:
            if m == ZERO or m[:1] in "+-":
                raise InvalidSpace(f"space {name}: bad magnitude {m}")
        names = ["-" + m for m in reversed(mags)] + [ZERO] + ["+" + m for m in mags]
        n = len(names)
        leq = [[i <= j for j in range(n)] for i in range(n)]
        return cls(name, OrderKind.SIGNED_CHAIN, names, leq, declaration=tuple(mags), zero_interior=True, **kw)

    @classmethod
    def poset(cls, name: str, covers: Sequence[tuple[str, str]], terms: Sequence[str] = (),
              greatest: str | None = None, **kw) -> LinguisticSpace:
        """Poset from cover edges ``(lower, upper)``.

        Zero is implicitly below every term.  Declaring ``greatest`` places
        that term above every other term.
        """
        names = [ZERO]
        for t in itertools.chain(terms, itertools.chain.from_iterable(covers)):
            if t not in names:
                names.append(t)
        aliases = kw.get("aliases") or {}
        g = aliases.get(greatest, greatest) if greatest is not None else None
        if g is not None and g not in names:
            names.append(g)
        idx = {t: i for i, t in enumerate(names)}
        edges = []
        for a, b in covers:
            if a == b:
                raise InvalidSpace(f"space {name}: reflexive cover {a} < {b}")
            if b == ZERO:
                raise InvalidSpace(f"space {name}: nothing may lie below zero ({a} < 0)")
            edges.append((idx[a], idx[b]))
        zi = idx[ZERO]
        edges += [(zi, i) for i in range(len(names)) if i != zi]
        if g is not None:
            edges += [(i, idx[g]) for i in range(len(names)) if i != idx[g]]
        leq = _closure(len(names), edges)
        decl = (tuple(names), tuple((a, b) for a, b in covers))
        return cls(name, OrderKind.POSET, names, leq, declaration=decl, greatest=greatest, **kw)

    # -- lookup ---------------------------------------------------------

    def _resolve(self, name: str) -> str:
        name = self.aliases.get(name, name)
        if name not in self._by_name:
            raise UnknownTerm(f"unknown term {name!r} in space {self.name}")
        return name

    def term(self, name: str) -> Term:
        """Canonical term for ``name`` (aliases resolved)."""
        return self._by_name[self._resolve(name)]

    def has_name(self, name: str) -> bool:
        return self.aliases.get(name, name) in self._by_name

    def __contains__(self, t) -> bool:
        return isinstance(t, Term) and t.space == self.name and self._by_name.get(t.name) == t

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"LinguisticSpace({self.name!r}, {self.kind.value}, {[t.name for t in self.terms]})"

    def _key(self):
        decl = self.declaration
        if self.kind is OrderKind.POSET:
            decl = (frozenset(decl[0]), frozenset(decl[1]))
        return (self.name, self.kind, decl, self.declared_greatest,
                tuple(sorted(self.aliases.items())), tuple(sorted(t.name for t in self.overlap_terms)),
                self.partition)

    def __eq__(self, other):
        return isinstance(other, LinguisticSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def check(self, *terms: Term) -> None:
        for t in terms:
            if t not in self:
                raise ForeignTerm(f"{t!r} is not a term of space {self.name}")

    # -- order ----------------------------------------------------------

    def leq(self, a: Term, b: Term) -> bool:
        self.check(a, b)
        return self._leq[a.index][b.index]

    def compare(self, a: Term, b: Term) -> Ordering:
        self.check(a, b)
        if a.index == b.index:
            return Ordering.EQUAL
        if self._leq[a.index][b.index]:
            return Ordering.LESS
        if self._leq[b.index][a.index]:
            return Ordering.GREATER
        return Ordering.INCOMPARABLE

    def meet(self, a: Term, b: Term) -> Term:
        """Greatest lower bound, or zero when none exists."""
        self.check(a, b)
        return self.terms[self._meet[a.index][b.index]]

    def join(self, a: Term, b: Term) -> Term:
        """Least upper bound, else the greatest term; raises :class:`NoJoin`."""
        self.check(a, b)
        j = self._join[a.index][b.index]
        if j is None:
            raise NoJoin(a, b)
        return self.terms[j]

    def meet_index(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join_index(self, i: int, j: int) -> int | None:
        return self._join[i][j]

    def negate(self, a: Term) -> Term:
        if self.kind is not OrderKind.SIGNED_CHAIN:
            raise UnsignedSpace(f"space {self.name} has no signed terms")
        self.check(a)
        if a.is_zero:
            return a
        flipped = ("-" if a.sign is Sign.POSITIVE else "+") + a.magnitude
        return self._by_name[flipped]

    @property
    def maximal(self) -> tuple[Term, ...]:
        n = len(self.terms)
        return tuple(t for t in self.terms
                     if not any(self._leq[t.index][k] and k != t.index for k in range(n)))

    # -- classification -------------------------------------------------

    def is_chain_lattice(self) -> bool:
        n = len(self.terms)
        return all(self._leq[i][j] or self._leq[j][i] for i in range(n) for j in range(n))

    def is_lattice(self) -> bool:
        """Every pair has a meet and a join under the zero/greatest fallbacks."""
        return all(j is not None for row in self._join for j in row)

    def has_exact_bounds(self) -> bool:
        """Every pair has a genuine glb and lub, no fallback needed."""
        return self._exact

    def classify_comparability(self, partition: Sequence[Sequence[str | Term]] | None = None) -> ComparabilityClass:
        if partition is None and self.partition is not None:
            partition = self.partition
        blocks = None
        if partition is not None:
            blocks = self._check_partition(partition)
        if self.is_chain_lattice():
            return ComparabilityClass(ComparabilityKind.TYPE_ONE)
        if blocks is not None:
            return ComparabilityClass(ComparabilityKind.TYPE_THREE, blocks)
        return ComparabilityClass(ComparabilityKind.TYPE_TWO)

    def _check_partition(self, partition) -> tuple[tuple[Term, ...], ...]:
        seen: set[Term] = set()
        blocks = []
        for raw in partition:
            try:
                block = tuple(t if isinstance(t, Term) else self.term(t) for t in raw)
            except UnknownTerm as e:
                raise InvalidPartition(str(e)) from None
            self.check(*block)
            nonzero = [t for t in block if not t.is_zero]
            if len(set(nonzero)) < 2:
                raise InvalidPartition(f"block {[t.name for t in block]} has fewer than two nonzero terms")
            for a, b in itertools.combinations(block, 2):
                if self.compare(a, b) is Ordering.INCOMPARABLE:
                    raise InvalidPartition(f"block is not a chain: {a} and {b} are incomparable")
            overlap = seen.intersection(nonzero)
            if overlap:
                raise InvalidPartition(f"term {sorted(t.name for t in overlap)[0]} appears in two blocks")
            seen.update(nonzero)
            blocks.append(block)
        missing = [t.name for t in self.terms if not t.is_zero and t not in seen]
        if missing:
            raise InvalidPartition(f"partition does not cover {', '.join(missing)}")
        return tuple(blocks)

    # -- derived spaces -------------------------------------------------

    def subspace(self, names: Iterable[str | Term], name: str | None = None) -> LinguisticSpace:
        """Subset containing zero, with the induced order."""
        picked = [ZERO]
        for x in names:
            t = x if isinstance(x, Term) else self.term(x)
            self.check(t)
            if t.name not in picked:
                picked.append(t.name)
        picked.sort(key=lambda s: self._by_name[s].index)
        idx = [self._by_name[s].index for s in picked]
        leq = [[self._leq[i][j] for j in idx] for i in idx]
        total = all(leq[i][j] or leq[j][i] for i in range(len(idx)) for j in range(len(idx)))
        kind = OrderKind.CHAIN if total else OrderKind.POSET
        return LinguisticSpace(name or f"{self.name}[{','.join(picked)}]", kind, picked, leq,
                               declaration=(tuple(picked),), zero_interior=self.kind is OrderKind.SIGNED_CHAIN)


# Module-level spellings of the space operations.

def compare(space: LinguisticSpace, a: Term, b: Term) -> Ordering:
    return space.compare(a, b)


def meet(space: LinguisticSpace, a: Term, b: Term) -> Term:
    return space.meet(a, b)


def join(space: LinguisticSpace, a: Term, b: Term) -> Term:
    return space.join(a, b)


def negate(space: LinguisticSpace, a: Term) -> Term:
    return space.negate(a)


def classify_comparability(space: LinguisticSpace, declared_partition=None) -> ComparabilityClass:
    return space.classify_comparability(declared_partition)
