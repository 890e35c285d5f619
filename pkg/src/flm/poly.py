"""Polynomials whose coefficients are terms or linguistic matrices.

Only coefficientwise min/max and degree are defined; there is no addition
or multiplication of such polynomials.
"""
from __future__ import annotations

from typing import Mapping, Union

from .errors import ShapeMismatch, SpaceMismatch
from .matrix import LingMatrix, Op, elementwise
from .space import LinguisticSpace, Term

NEG_INFINITY = float("-inf")

Coefficient = Union[Term, LingMatrix]


def _is_zero(c: Coefficient) -> bool:
    return c.is_zero if isinstance(c, Term) else c.is_zero()


class LingPolynomial:
    """Sparse exponent -> coefficient map; zero coefficients are never stored.

    ``shape`` is None for scalar coefficients, else the (rows, cols) every
    matrix coefficient shares.
    """

    __slots__ = ("space", "shape", "coeffs")

    def __init__(self, space: LinguisticSpace, coeffs: Mapping[int, Coefficient], shape: tuple[int, int] | None = None):
        kept = {}
        for exp, c in coeffs.items():
            if not isinstance(exp, int) or isinstance(exp, bool) or exp < 0:
                raise ValueError(f"exponent must be a non-negative integer, got {exp!r}")
            if isinstance(c, Term):
                if shape is not None:
                    raise ShapeMismatch(f"scalar coefficient at x^{exp} in a {shape[0]}x{shape[1]} polynomial")
                space.check(c)
            elif isinstance(c, LingMatrix):
                if shape is None:
                    shape = c.shape
                if c.shape != shape:
                    raise ShapeMismatch(f"coefficient at x^{exp} is {c.rows}x{c.cols}, expected {shape[0]}x{shape[1]}")
                if c.space is not space and c.space != space:
                    raise SpaceMismatch(f"coefficient at x^{exp} is over {c.space.name}, expected {space.name}")
            else:
                raise TypeError(f"coefficient must be a Term or LingMatrix, got {type(c).__name__}")
            if not _is_zero(c):
                kept[exp] = c
        self.space = space
        self.shape = shape
        self.coeffs = dict(sorted(kept.items()))

    @classmethod
    def from_names(cls, space: LinguisticSpace, coeffs: Mapping[int, str]) -> LingPolynomial:
        return cls(space, {e: space.term(n) for e, n in coeffs.items()})

    def coefficient(self, exp: int) -> Coefficient:
        if exp in self.coeffs:
            return self.coeffs[exp]
        return self._zero()

    def _zero(self) -> Coefficient:
        if self.shape is None:
            return self.space.zero
        return LingMatrix.zeros(self.space, *self.shape)

    def degree(self) -> int | float:
        return max(self.coeffs) if self.coeffs else NEG_INFINITY

    def __eq__(self, other):
        return (isinstance(other, LingPolynomial) and self.space == other.space
                and self.shape == other.shape and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.space.name, self.shape, tuple(self.coeffs.items())))

    def __repr__(self):
        return f"LingPolynomial({self.space.name}, {self.to_text()})"

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exp, c in self.coeffs.items():
            if isinstance(c, Term):
                body = c.name
            elif c.rows == 1:
                body = "(" + ", ".join(t.name for t in c.data[0]) + ")"
            else:
                body = "[" + "; ".join(" ".join(t.name for t in row) for row in c.data) + "]"
            parts.append(body if exp == 0 else f"{body} x^{exp}")
        return " + ".join(parts)


def _combine(op: Op, a: Coefficient, b: Coefficient, space: LinguisticSpace) -> Coefficient:
    if isinstance(a, Term):
        return space.meet(a, b) if op is Op.MIN else space.join(a, b)
    return elementwise(op, a, b)


def poly_op(op: Op, p: LingPolynomial, q: LingPolynomial) -> LingPolynomial:
    """Coefficientwise meet or join, missing coefficients read as zero."""
    if p.space is not q.space and p.space != q.space:
        raise SpaceMismatch(f"polynomials live in different spaces ({p.space.name} vs {q.space.name})")
    if p.shape != q.shape and p.coeffs and q.coeffs:
        raise ShapeMismatch(f"coefficient shapes differ: {p.shape} vs {q.shape}")
    shape = p.shape if p.coeffs else q.shape
    p2 = p if p.shape == shape else LingPolynomial(p.space, {}, shape)
    q2 = q if q.shape == shape else LingPolynomial(q.space, {}, shape)
    out = {}
    for exp in sorted(set(p2.coeffs) | set(q2.coeffs)):
        out[exp] = _combine(op, p2.coefficient(exp), q2.coefficient(exp), p.space)
    return LingPolynomial(p.space, out, shape)


def degree(p: LingPolynomial) -> int | float:
    return p.degree()
