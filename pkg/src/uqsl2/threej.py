"""Quantum 3j-symbols: network evaluation, closed sums and line arrangements.

``C(i,j,k; r,s,t)`` is the coefficient of the dual standard vector ``v^t``
in ``A(v_r (x) v_s)``, where ``A = pi_k o Phi o (iota_i (x) iota_j)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .bases import twisted_canonical
from .laurent import LaurentPoly, RationalQ, qbinom, qpow
from .networks import (
    AdmissibilityError,
    Intertwiner,
    admissible,
    intertwiner_A,
    nested_cups,
    phi,
    proj,
    tensor_maps,
    triangle,
)
from .tensor_rep import TensorVector, dual_coefficient, tensor

ROUTES = ("direct", "sum", "classical", "twisted", "positivity", "alternating")
# routes computing C (classical gives its value at q = 1) and routes computing D
C_ROUTES = ("direct", "sum", "classical", "alternating")
D_ROUTES = ("twisted", "positivity")


def _check(i, j, k, r, s, t):
    triangle(i, j, k)
    if not (0 <= r <= i and 0 <= s <= j and 0 <= t <= k):
        raise ValueError(f"indices ({r}, {s}, {t}) out of range for ({i}, {j}, {k})")


def triangle_shape(i: int, j: int, k: int) -> tuple:
    """``(x, y, z)`` arc counts of the unique line arrangement."""
    return triangle(i, j, k)


# ---------------------------------------------------------------------------
# oriented line arrangements

@dataclass(frozen=True)
class Arrangement:
    """Orientation of each arc; arcs are grouped as ``x`` (i-k), ``y`` (j-k), ``z`` (i-j).

    ``xo[m]`` is True when the m-th i-k arc points from the i side to the k side,
    ``yo[m]`` True for j to k, ``zo[m]`` True for i to j.
    """

    xo: tuple
    yo: tuple
    zo: tuple

    @property
    def r(self) -> int:
        return sum(self.xo) + sum(self.zo)

    @property
    def s(self) -> int:
        return sum(self.yo) + sum(1 for o in self.zo if not o)

    @property
    def t(self) -> int:
        return sum(self.xo) + sum(self.yo)

    @property
    def negative(self) -> int:
        """Arcs from i to j, or from k into the i or j side."""
        return sum(self.zo) + sum(1 for o in self.xo if not o) + sum(1 for o in self.yo if not o)

    @property
    def sign(self) -> int:
        return -1 if self.negative % 2 else 1

    def __str__(self):
        parts = [f"i{'->' if o else '<-'}k" for o in self.xo]
        parts += [f"j{'->' if o else '<-'}k" for o in self.yo]
        parts += [f"i{'->' if o else '<-'}j" for o in self.zo]
        return f"{'+' if self.sign > 0 else '-'} " + " ".join(parts)


def oriented_arrangements(i: int, j: int, k: int, r=None, s=None, t=None) -> list:
    """Enumerate every orientation of the arcs, filtered by ``r, s, t`` when given."""
    x, y, z = triangle(i, j, k)
    out = []
    for xo in itertools.product((False, True), repeat=x):
        for yo in itertools.product((False, True), repeat=y):
            for zo in itertools.product((False, True), repeat=z):
                L = Arrangement(xo, yo, zo)
                if (r is None or L.r == r) and (s is None or L.s == s) and (t is None or L.t == t):
                    out.append(L)
    return out


@dataclass(frozen=True)
class ArrangementClass:
    """Arrangements with ``a`` arcs oriented from the i side to the j side."""

    i: int
    j: int
    k: int
    r: int
    s: int
    t: int
    a: int
    multiplicity: int
    sign: int
    gamma: int

    def to_json(self) -> dict:
        return {"a": self.a, "multiplicity": self.multiplicity, "sign": self.sign, "gamma": self.gamma}


def arrangements(i: int, j: int, k: int, r: int, s: int, t: int) -> list:
    """Arrangement classes with nonzero multiplicity ``C(z,a) C(x,r-a) C(y,j-s-a)``."""
    _check(i, j, k, r, s, t)
    x, y, z = triangle(i, j, k)
    if t != r + s - z:
        return []
    glob = (-1) ** ((i + j + k) // 2 + r + s)
    out = []
    for a in range(z + 1):
        if 0 <= r - a <= x and 0 <= j - s - a <= y:
            m = comb(z, a) * comb(x, r - a) * comb(y, j - s - a)
            out.append(ArrangementClass(i, j, k, r, s, t, a, m, (-1) ** a * glob, gamma(i, j, k, r, s, a)))
    return out


def arrangement_count(i, j, k, r, s, t) -> tuple:
    """``(signed sum, number of arrangements)`` by explicit enumeration."""
    arr = oriented_arrangements(i, j, k, r, s, t)
    return sum(L.sign for L in arr), len(arr)


# ---------------------------------------------------------------------------
# routes

def threej_direct(i, j, k, r, s, t) -> RationalQ:
    """Evaluate the network: dual-standard coefficient of ``A(v_r (x) v_s)`` at ``t``."""
    _check(i, j, k, r, s, t)
    A = intertwiner_A(i, j, k)
    w = A.column((r, s))
    return dual_coefficient(w, (t,))


def gamma(i, j, k, r, s, a) -> int:
    x, y, z = triangle(i, j, k)
    return (
        ((z - a) + (r - a)) * (y - s + z - a)
        + (r - a) * ((x - r + a) + (z - a))
        + a * (z - a)
        + (j - s - a) * (y - j + s + a)
    )


def threej_sum_terms(i, j, k, r, s, t) -> list:
    """Per-``a`` summands of the weighted arrangement formula, before the ``q^(-t(k-t))`` factor."""
    _check(i, j, k, r, s, t)
    x, y, z = triangle(i, j, k)
    if t != r + s - z:
        return []
    out = []
    for a in range(z + 1):
        b = qbinom(z, a) * qbinom(x, r - a) * qbinom(y, j - s - a)
        if b:
            out.append((a, (b * qpow(gamma(i, j, k, r, s, a) - a)) * (-1) ** a))
    return out


def threej_quantum_sum(i, j, k, r, s, t) -> LaurentPoly:
    terms = threej_sum_terms(i, j, k, r, s, t)
    total = sum((p for _, p in terms), LaurentPoly())
    return total.shift(-t * (k - t))


def threej_classical(i, j, k, r, s, t) -> int:
    """Value at ``q = 1``: ``sum_a (-1)^a C(z,a) C(x,r-a) C(y,j-s-a)``."""
    _check(i, j, k, r, s, t)
    x, y, z = triangle(i, j, k)
    if t != r + s - z:
        return 0
    total = 0
    for a in range(z + 1):
        if 0 <= r - a <= x and 0 <= j - s - a <= y:
            total += (-1) ** a * comb(z, a) * comb(x, r - a) * comb(y, j - s - a)
    return total


def threej_arrangements(i, j, k, r, s, t) -> int:
    """Classical value via signed arrangement counting."""
    _check(i, j, k, r, s, t)
    signed, _ = arrangement_count(i, j, k, r, s, t)
    return (-1) ** ((i + j + k) // 2 + r + s) * signed


def threej_twisted(i, j, k, r, s, t) -> RationalQ:
    """``D``: dual-standard coefficient of ``A(v_r spade v_s)`` at ``t``."""
    _check(i, j, k, r, s, t)
    v = twisted_canonical(r, s, i, j)
    w = intertwiner_A(i, j, k).apply(v)
    return dual_coefficient(w, (t,))


# ---------------------------------------------------------------------------
# closed forms in the twisted canonical basis
#
# Audit against threej_twisted over every admissible tuple with i+j <= 8:
# the value is always (-1)^z q^(-z) times the two printed binomials.  The
# printed exponents eta_1, eta_2 (with h := j, or any constant h) do not
# reproduce this, so the fitted exponent -z is used; the printed forms are
# kept in positivity_exponent_printed for comparison.

def _positivity_binomials(i, j, k, r, s, t) -> LaurentPoly:
    if r + s <= j:
        return qbinom(k - t + s, s) * qbinom(t - s + i - r, t - s)
    return qbinom(i - r + t, t) * qbinom(k - i + r - t + s, s)


def positivity_exponent_printed(i, j, k, r, s, t, h=None) -> int:
    """The exponents eta_1 / eta_2 as printed, with the undefined ``h`` defaulting to ``j``."""
    x, y, z = triangle(i, j, k)
    h = j if h is None else h
    if r + s <= j:
        return s * (k + s - 2 * r) + (i - r) * (h - i - r) + t * (k - t) + z + x * y
    return (i - r) * (2 * s + r - h) + s * (k - s - 2 * i) + t * (k - t) + x * y


def positivity_exponent(i, j, k, r, s, t) -> int:
    """Fitted exponent of the positivity formula: ``-(i+j-k)/2``."""
    return -triangle(i, j, k)[2]


def threej_positivity(i, j, k, r, s, t, printed: bool = False) -> LaurentPoly:
    """``(-1)^z q^e [..][..]``; ``printed=True`` uses the printed exponent with ``h = j``."""
    _check(i, j, k, r, s, t)
    x, y, z = triangle(i, j, k)
    if t != r + s - z:
        return LaurentPoly()
    e = positivity_exponent_printed(i, j, k, r, s, t) if printed else positivity_exponent(i, j, k, r, s, t)
    return (_positivity_binomials(i, j, k, r, s, t) * (-1) ** z).shift(e)


def _inverse_coefficient(i, j, r, s, g) -> LaurentPoly:
    if r + s <= j:
        return (qbinom(r + g, g) * (-1) ** g).shift(g * (j - s + 1))
    return (qbinom(j - s + g, g) * (-1) ** g).shift(g * (r + 1))


def threej_alternating(i, j, k, r, s, t) -> LaurentPoly:
    """Alternating sum: expand ``v_r (x) v_s`` in the twisted basis and apply the positivity formula.

    Summand ``g`` is ``(-1)^(g+z) q^(g(j-s+1) - z) [r+g r][k-t+s-g s-g][t-s+i-r t-s+g]``
    when ``r+s <= j``, and ``(-1)^(g+z) q^(g(r+1) - z) [j-s+g g][i-r-g+t t][k-i+r-t+s s-g]``
    otherwise.
    """
    _check(i, j, k, r, s, t)
    total = LaurentPoly()
    for g in range(min(i - r, s) + 1):
        total = total + _inverse_coefficient(i, j, r, s, g) * threej_positivity(i, j, k, r + g, s - g, t)
    return total


def alternating_exponent_printed(i, j, k, r, s, t, g) -> int:
    if r + s <= j:
        return (
            -g * (j - s + 1)
            + (s - g) * (k - 2 * t + s - g)
            + (i - r - g) * (k - 2 * t + 2 * s + i + r - 3 * g)
            - r - s + t
        )
    return (
        -g * (r + 1)
        + (i - r - g) * (2 * t - k + i - r - g)
        + (s - g) * (k - 2 * i + 2 * r - 2 * t + s + g)
        - r - s + t
    )


def threej_alternating_printed(i, j, k, r, s, t) -> LaurentPoly:
    """The alternating formula with the printed exponents and signs, kept for the audit."""
    _check(i, j, k, r, s, t)
    total = LaurentPoly()
    for g in range(min(i - r, s) + 1):
        e = alternating_exponent_printed(i, j, k, r, s, t, g)
        if r + s <= j:
            b = qbinom(r + g, r) * qbinom(k - t + s - g, s - g) * qbinom(t - s + i - r, t - s + g)
            sign = (-1) ** (g + (r + s + t) // 2)
        else:
            b = qbinom(j - s + g, g) * qbinom(i - r - g + t, t) * qbinom(k - i + r - t + s, s - g)
            sign = 1
        total = total + (b * sign).shift(e)
    return total


# ---------------------------------------------------------------------------
# the bent network

@lru_cache(maxsize=None)
def bent_network(i: int, j: int, k: int) -> TensorVector:
    """Nested cups on ``i`` and ``j`` strands, ``pi_k o Phi`` in the middle, then ``pi_i``, ``pi_j``.

    The result lies in ``V_i (x) V_k (x) V_j``.
    """
    triangle(i, j, k)
    h = tensor(nested_cups(i), nested_cups(j))
    mid = tensor_maps(Intertwiner.identity((1,) * i), proj(k) @ phi(i, j, k), Intertwiner.identity((1,) * j))
    h = mid.apply(h)
    return tensor_maps(proj(i), Intertwiner.identity((k,)), proj(j)).apply(h)


def hat_C(i, j, k, r, s, t) -> RationalQ:
    """Renormalized 3j-symbol: dual-standard coefficient of the bent network at ``(i-r, t, j-s)``."""
    _check(i, j, k, r, s, t)
    return dual_coefficient(bent_network(i, j, k), (i - r, t, j - s))


def kl_constant(i, j, k, r, s, t, printed: bool = False) -> LaurentPoly:
    """Monomial ``c`` with ``C = c * hat_C``.

    The printed constant ``(-1)^(-r) (-q)^(s-j) q^(r(i-r)) q^(s(j-s))`` is off by
    ``q^(-r)``; fitting against the direct route over all ``i, j <= 4`` gives
    ``(-q)^(-r) (-q)^(s-j) q^(r(i-r)) q^(s(j-s))``.
    """
    e = r * (i - r) + s * (j - s) + (s - j)
    if not printed:
        e -= r
    sign = -1 if (r + s + j) % 2 else 1
    return LaurentPoly.monomial(e, sign)


def kl_shift(i, j, k, r, s, t) -> int:
    """``r(i-r) + s(j-s) + t(k-t)``; ``q^shift * hat_C`` is the Ext Poincare polynomial value."""
    return r * (i - r) + s * (j - s) + t * (k - t)


# ---------------------------------------------------------------------------
# dispatch

def threej(i, j, k, r, s, t, route: str = "direct"):
    if route == "direct":
        return threej_direct(i, j, k, r, s, t)
    if route == "sum":
        return threej_quantum_sum(i, j, k, r, s, t)
    if route == "classical":
        return threej_classical(i, j, k, r, s, t)
    if route == "twisted":
        return threej_twisted(i, j, k, r, s, t)
    if route == "positivity":
        return threej_positivity(i, j, k, r, s, t)
    if route == "alternating":
        return threej_alternating(i, j, k, r, s, t)
    raise ValueError(f"unknown route {route!r}; choose from {', '.join(ROUTES)}")
