"""0/1 sequences, their inversion statistics and cup diagrams.

A sequence entry ``1`` is drawn as an up arrow and ``0`` as a down arrow.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .laurent import LaurentPoly, qbinom


def _bits(a: Iterable[int]) -> tuple:
    a = tuple(int(x) for x in a)
    if any(x not in (0, 1) for x in a):
        raise ValueError(f"not a 0/1 sequence: {a}")
    return a


def stat_l(a: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``a_i < a_j``."""
    a = _bits(a)
    zeros = total = 0
    for x in a:
        if x:
            total += zeros
        else:
            zeros += 1
    return total


def stat_b(a: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``a_i > a_j``."""
    a = _bits(a)
    ones = total = 0
    for x in a:
        if x:
            ones += 1
        else:
            total += ones
    return total


def sequences(n: int, weight: int | None = None):
    """All 0/1 sequences of length ``n``, optionally with fixed number of ones."""
    if weight is None:
        yield from itertools.product((0, 1), repeat=n)
        return
    for pos in itertools.combinations(range(n), weight):
        s = [0] * n
        for p in pos:
            s[p] = 1
        yield tuple(s)


@dataclass(frozen=True)
class CupDiagram:
    """Cups as 1-based position pairs ``(left, right)`` plus ray positions."""

    n: int
    cups: tuple
    rays: tuple

    @property
    def num_cups(self) -> int:
        return len(self.cups)

    def __str__(self):
        c = ";".join(f"({a},{b})" for a, b in self.cups)
        r = ",".join(map(str, self.rays))
        return f"cups={c} rays={r}"

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "CupDiagram":
        m = re.fullmatch(r"\s*cups=(.*?)\s+rays=(.*?)\s*", text)
        if not m:
            raise ValueError(f"malformed cup diagram: {text!r}")
        cups = tuple(sorted((int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", m.group(1))))
        rays = tuple(int(x) for x in m.group(2).split(",") if x.strip())
        pts = [p for c in cups for p in c] + list(rays)
        if n is None:
            n = max(pts, default=0)
        if sorted(pts) != list(range(1, n + 1)):
            raise ValueError(f"cup diagram does not cover 1..{n} exactly once")
        return cls(n, cups, tuple(sorted(rays)))

    def is_noncrossing(self) -> bool:
        for (a, b), (c, d) in itertools.combinations(self.cups, 2):
            if a < c < b < d or c < a < d < b:
                return False
        return all(not (a < r < b) for a, b in self.cups for r in self.rays)


def cup_diagram(a: Sequence[int]) -> CupDiagram:
    """Match each ``1`` with the nearest later free ``0``; leftovers become rays."""
    a = _bits(a)
    stack: list[int] = []
    cups = []
    for pos, x in enumerate(a, start=1):
        if x:
            stack.append(pos)
        elif stack:
            cups.append((stack.pop(), pos))
        # an unmatched 0 is a ray; nothing to do yet
    matched = {p for c in cups for p in c}
    rays = tuple(p for p in range(1, len(a) + 1) if p not in matched)
    return CupDiagram(len(a), tuple(sorted(cups)), rays)


def cup_diagram_any_order(a: Sequence[int], choose=min) -> CupDiagram:
    """Repeatedly match a neighbouring ``1,0`` pair among the unmatched symbols.

    ``choose`` picks which available pair to match; the result does not
    depend on it.  Used as an independent check of :func:`cup_diagram`.
    """
    a = _bits(a)
    free = list(range(len(a)))
    cups = []
    while True:
        options = [k for k in range(len(free) - 1) if a[free[k]] == 1 and a[free[k + 1]] == 0]
        if not options:
            break
        k = choose(options)
        cups.append((free[k] + 1, free[k + 1] + 1))
        del free[k:k + 2]
    return CupDiagram(len(a), tuple(sorted(cups)), tuple(p + 1 for p in free))


def gk_dim(a: Sequence[int]) -> int:
    """``n(n-1)/2 - #cups`` for a sequence of length ``n``."""
    n = len(a)
    return n * (n - 1) // 2 - cup_diagram(a).num_cups


def gk_dim_bimodule(a: Sequence[int]) -> int:
    n = len(a)
    return n * (n - 1) - 2 * cup_diagram(a).num_cups


def cup_diagrams(n: int, r: int):
    """All noncrossing diagrams on ``n`` points with ``r`` cups and no ray inside a cup."""
    out = set()
    for s in sequences(n):
        d = cup_diagram(s)
        if d.num_cups == r:
            out.add(d)
    return sorted(out, key=lambda d: (d.cups, d.rays))


def cup_diagrams_brute(n: int, r: int):
    """Enumerate diagrams directly as matchings, without going through sequences."""
    out = []
    pts = range(1, n + 1)
    for chosen in itertools.combinations(itertools.combinations(pts, 2), r):
        used = [p for c in chosen for p in c]
        if len(set(used)) != 2 * r:
            continue
        rays = tuple(p for p in pts if p not in used)
        d = CupDiagram(n, tuple(sorted(chosen)), rays)
        if d.is_noncrossing():
            out.append(d)
    return out


def isotypic_multiplicity(n: int, r: int) -> int:
    """Multiplicity of ``V_{n-2r}`` in ``V_1^{(x) n}``: ``C(n, r) - C(n, r-1)``."""
    if r < 0 or 2 * r > n:
        return 0
    return comb(n, r) - (comb(n, r - 1) if r >= 1 else 0)


def coset_sum(m: int, n: int) -> LaurentPoly:
    """``sum_w q^(2 b(w) - m n)`` over sequences with ``m`` ones and ``n`` zeros."""
    total: dict = {}
    for w in sequences(m + n, m):
        e = 2 * stat_b(w) - m * n
        total[e] = total.get(e, 0) + 1
    return LaurentPoly(total)


def quantum_coset_identity_check(m: int, n: int) -> bool:
    return coset_sum(m, n) == qbinom(m + n, m)
