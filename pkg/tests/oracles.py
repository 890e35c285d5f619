"""Naive reference implementations used to cross-check the library.

These work on plain name lists and never touch the library's precomputed
tables, so agreement is meaningful.
"""
from __future__ import annotations

from itertools import product


def chain_min(order: list[str], a: str, b: str) -> str:
    return a if order.index(a) <= order.index(b) else b


def chain_max(order: list[str], a: str, b: str) -> str:
    return a if order.index(a) >= order.index(b) else b


def naive_compose(order: list[str], a: list[list[str]], b: list[list[str]], outer: str, inner: str) -> list[list[str]]:
    """Triple loop: R[i][j] = outer_k inner(A[i][k], B[k][j]) over a chain."""
    pick = {"min": chain_min, "max": chain_max}
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = None
            for k in range(len(b)):
                v = pick[inner](order, a[i][k], b[k][j])
                acc = v if acc is None else pick[outer](order, acc, v)
            row.append(acc)
        out.append(row)
    return out


def reachable(covers: list[tuple[str, str]], names: list[str]) -> dict[str, set[str]]:
    """Upward closure by depth-first search; zero sits below everything."""
    up = {n: set() for n in names}
    for a, b in covers:
        up[a].add(b)
    for n in names:
        if n != "0":
            up["0"].add(n)
    result = {}
    for n in names:
        seen, stack = {n}, [n]
        while stack:
            for m in up[stack.pop()]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        result[n] = seen
    return result


def naive_meet(above: dict[str, set[str]], a: str, b: str) -> str:
    lower = [x for x in above if a in above[x] and b in above[x]]
    best = [x for x in lower if all(x in above[y] for y in lower)]
    return best[0] if best else "0"


def naive_join(above: dict[str, set[str]], a: str, b: str) -> str | None:
    upper = [x for x in above[a] & above[b]]
    best = [x for x in upper if all(y in above[x] for y in upper)]
    if best:
        return best[0]
    tops = [x for x in above if all(x in above[y] for y in above)]
    return tops[0] if tops else None


def all_pairs(names):
    return product(names, repeat=2)
