"""Ungraded projective resolutions of standard modules ``Delta(r,i|s,j)``.

Everything here is evaluated at ``q = 1``.  Projective classes are labelled
by ``(r', s')`` for ``P(r',i|s',j)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .bases import BasisExpansion, projective_class_in_standard


def compositions(total: int, parts: int):
    """Compositions of ``total`` into ``parts`` positive integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_nm(n: int, m: int):
    if n < 0 or m < 0:
        raise ValueError(f"need n, m >= 0, got ({n}, {m})")


@lru_cache(maxsize=None)
def _chain_sum(n: int, m: int, rho: int) -> int:
    """``sum_d prod_p binom(rho + m + n - d_1 - ... - d_{p-1}, d_p)`` over compositions of ``m+n``."""
    _check_nm(n, m)
    total = 0
    for d in compositions(m + n, m):
        top = rho + m + n
        term = 1
        for dp in d:
            term *= comb(top, dp)
            top -= dp
        total += term
    return total


@lru_cache(maxsize=None)
def _closed_sum(n: int, m: int, rho: int) -> int:
    """``binom(rho+N, N) * sum_d multinomial(N; d)`` with ``N = m + n``."""
    _check_nm(n, m)
    N = m + n
    multi = 0
    for d in compositions(N, m):
        x = factorial(N)
        for dp in d:
            x //= factorial(dp)
        multi += x
    return comb(rho + N, N) * multi


def a_num(n: int, m: int, r: int, s: int | None = None, route: str = "compositions") -> int:
    """``a_{n,m}^{r,s}``; it does not depend on ``s``."""
    if route == "compositions":
        return _chain_sum(n, m, r)
    if route == "closed":
        return _closed_sum(n, m, r)
    raise ValueError(f"unknown route {route!r}")


def b_num(n: int, m: int, r: int, s: int, j: int, route: str = "compositions") -> int:
    """``b_{n,m}^{r,s}``: the ``a``-numbers with ``r`` replaced by ``j - s``."""
    if j < s:
        raise ValueError(f"need s <= j, got s={s}, j={j}")
    return a_num(n, m, j - s, route=route)


def alternating_sum_check(n: int, r: int, s: int | None = None, j: int | None = None) -> int:
    """``a_{n,1} - a_{n-1,2} + ... + (-1)^n a_{0,n+1}``, asserted equal to ``(-1)^n binom(r+n+1, n+1)``.

    With ``j`` given, the same identity is checked for the ``b``-numbers.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    total = sum((-1) ** (m + 1) * a_num(n + 1 - m, m, r) for m in range(1, n + 2))
    expected = (-1) ** n * comb(r + n + 1, n + 1)
    if total != expected:
        raise ArithmeticError(f"alternating sum {total} != {expected} at n={n}, r={r}")
    if j is not None:
        rho = j - s
        btotal = sum((-1) ** (m + 1) * b_num(n + 1 - m, m, r, s, j) for m in range(1, n + 2))
        if btotal != (-1) ** n * comb(rho + n + 1, n + 1):
            raise ArithmeticError(f"b alternating sum fails at n={n}, s={s}, j={j}")
    return total


def recursion_check(n: int, m: int, r: int, s: int, j: int | None = None) -> bool:
    """Both recursions expressing ``a_{n,m}`` and ``b_{n,m}`` through level ``m - 1``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    _check_nm(n, 0)
    if j is None:
        j = r + s
    lhs = a_num(n, m, r, s)
    rhs = sum(comb(r + g + 1, g + 1) * a_num(n - g, m - 1, r + g + 1, s - g - 1) for g in range(n + 1))
    blhs = b_num(n, m, r, s, j)
    brhs = sum(
        comb(j - s + g + 1, g + 1) * b_num(n - g, m - 1, r + g + 1, s - g - 1, j) for g in range(n + 1)
    )
    return lhs == rhs and blhs == brhs


def _check(r, s, i, j):
    if not (0 <= r <= i and 0 <= s <= j):
        raise ValueError(f"({r}, {s}) out of range for i={i}, j={j}")


@dataclass
class ResolutionTable:
    """Row ``m`` maps projective labels ``(r', s')`` to multiplicities in ``Q_m``."""

    r: int
    s: int
    i: int
    j: int
    rows: list

    @property
    def branch(self) -> int:
        return 1 if self.r + self.s <= self.j else 2

    @property
    def printed_length(self) -> int:
        """The length ``l`` as stated for each branch (``s`` or ``r``)."""
        return self.s if self.branch == 1 else self.r

    def euler(self) -> dict:
        out: dict = {}
        for m, row in enumerate(self.rows):
            for key, mult in row.items():
                out[key] = out.get(key, 0) + (-1) ** m * mult
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "i": self.i,
            "j": self.j,
            "rows": [
                [{"class": [rr, ss], "multiplicity": mult} for (rr, ss), mult in sorted(row.items())]
                for row in self.rows
            ],
        }


def resolution_table(r: int, s: int, i: int, j: int) -> ResolutionTable:
    """Terms ``Q_0, ..., Q_L`` of the minimal projective resolution of ``Delta(r,i|s,j)``.

    ``Q_m`` holds ``P(r+m+n, s-m-n)`` with multiplicity ``a_{n,m}`` (or
    ``b_{n,m}`` on the second branch).  Labels with ``r' > i`` do not exist
    and are dropped, so ``L = min(s, i - r)``.
    """
    _check(r, s, i, j)
    length = min(s, i - r)
    first = r + s <= j
    rows = [{(r, s): 1}]
    for m in range(1, length + 1):
        row = {}
        for n in range(0, s - m + 1):
            if r + m + n > i:
                break
            mult = a_num(n, m, r, s) if first else b_num(n, m, r, s, j)
            if mult:
                row[(r + m + n, s - m - n)] = mult
        rows.append(row)
    return ResolutionTable(r, s, i, j, rows)


def delta_in_projectives(r: int, s: int, i: int, j: int) -> BasisExpansion:
    """``[Delta(r,i|s,j)]`` as an alternating sum of projective classes."""
    _check(r, s, i, j)
    base = r if r + s <= j else j - s
    out = {}
    for g in range(0, min(s, i - r) + 1):
        out[(r + g, s - g)] = (-1) ** g * comb(base + g, g)
    return BasisExpansion("projective_class", out)


def projective_matrix_at_one(i: int, j: int) -> dict:
    """``[P(r,s)]`` in standard classes at ``q = 1``, as nested dicts of integers."""
    out = {}
    for r in range(i + 1):
        for s in range(j + 1):
            exp = projective_class_in_standard(r, s, i, j)
            out[(r, s)] = {k: int(v.at_one()) for k, v in exp.items()}
    return out


def inverse_check(i: int, j: int) -> bool:
    """``delta_in_projectives`` composed with the ``[P]``-in-``[Delta]`` matrix is the identity."""
    pmat = projective_matrix_at_one(i, j)
    for r in range(i + 1):
        for s in range(j + 1):
            total: dict = {}
            for key, c in delta_in_projectives(r, s, i, j).items():
                for key2, d in pmat[key].items():
                    total[key2] = total.get(key2, 0) + int(c.at_one()) * d
            total = {k: v for k, v in total.items() if v}
            if total != {(r, s): 1}:
                return False
    return True
