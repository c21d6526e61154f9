"""Graded Euler characteristics of complete-intersection Ext algebras.

The variable ``t`` records homological degree, ``q`` the internal degree.
All Poincare polynomials use the renormalized convention (lowest degree 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .laurent import (
    DEFAULT_Q_ORDER,
    ONE,
    LaurentPoly,
    LaurentSeries,
    qbinom_renorm,
)

DEFAULT_T_ORDER = 20


@dataclass
class BigradedSeries:
    """``sum_m P_m(q) t^m`` known exactly for ``m < t_order``."""

    coefficients: dict = field(default_factory=dict)
    t_order: int = DEFAULT_T_ORDER

    def __getitem__(self, m: int) -> LaurentPoly:
        if m >= self.t_order:
            raise ValueError(f"t-degree {m} unknown beyond order {self.t_order}")
        return self.coefficients.get(m, LaurentPoly(0))

    def ranks(self) -> list:
        return [self[m] for m in range(self.t_order)]

    def at_q_one(self) -> list:
        return [sum(c for _, c in self[m].items()) for m in range(self.t_order)]

    def to_json(self) -> dict:
        return {
            "t_order": self.t_order,
            "ranks": {str(m): str(self[m]) for m in range(self.t_order)},
        }


@dataclass
class DeviationProfile:
    """Exponents ``c_1, ..., c_M`` of the product decomposition."""

    c: list

    def __getitem__(self, m: int) -> int:
        return self.c[m - 1]

    def to_json(self) -> dict:
        return {"c": list(self.c)}


def _check_degrees(degrees):
    for d in degrees:
        if not isinstance(d, int) or d <= 0 or d % 2:
            raise ValueError(f"degrees must be positive even integers, got {d!r}")


def _mul_trunc(a: list, b: list, order: int) -> list:
    out = [LaurentPoly(0)] * order
    for i, x in enumerate(a[:order]):
        if not x:
            continue
        for j, y in enumerate(b[: order - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def ci_poincare(gen_degrees: Sequence[int], rel_degrees: Sequence[int], t_order: int = DEFAULT_T_ORDER) -> BigradedSeries:
    """Expand ``prod (1 + q^g t) / prod (1 - q^r t^2)`` below ``t^t_order``."""
    gen_degrees, rel_degrees = list(gen_degrees), list(rel_degrees)
    _check_degrees(gen_degrees + rel_degrees)
    if t_order <= 0:
        return BigradedSeries({}, max(t_order, 0))
    series = [ONE] + [LaurentPoly(0)] * (t_order - 1)
    for g in gen_degrees:
        series = _mul_trunc(series, [ONE, LaurentPoly.monomial(g)], t_order)
    for r in rel_degrees:
        geo = [LaurentPoly(0)] * t_order
        for m in range(0, t_order, 2):
            geo[m] = LaurentPoly.monomial(r * m // 2)
        series = _mul_trunc(series, geo, t_order)
    return BigradedSeries({m: p for m, p in enumerate(series) if p}, t_order)


def flag_degrees(n: int) -> tuple:
    """Generator and relation degrees of the coinvariant algebra of ``S_n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return [2] * (n - 1), [2 * j for j in range(2, n + 1)]


def grassmannian_degrees(k: int, n: int) -> tuple:
    """Chern-class presentation of ``H*(Gr(k, n))``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({k}, {n})")
    return [2 * i for i in range(1, k + 1)], [2 * i for i in range(n - k + 1, n + 1)]


def euler_inverse(gen_degrees, rel_degrees, q_order: int = DEFAULT_Q_ORDER) -> LaurentSeries:
    """The ``t = -1`` specialization, summed q-adically below ``q^q_order``."""
    gen_degrees, rel_degrees = list(gen_degrees), list(rel_degrees)
    _check_degrees(gen_degrees + rel_degrees)
    # t^m has q-valuation >= 2m since every degree is at least 2
    t_order = max(q_order, 0) // 2 + 1
    ps = ci_poincare(gen_degrees, rel_degrees, t_order)
    total = LaurentPoly(0)
    for m in range(t_order):
        p = ps[m]
        total = total + (p if m % 2 == 0 else -p)
    return LaurentSeries.from_poly(total, q_order)


def _gen_binom(c: int, n: int) -> int:
    """``binom(c, n)`` for any integer ``c``."""
    num = 1
    den = 1
    for k in range(n):
        num *= c - k
        den *= k + 1
    return num // den


def _factor_series(i: int, c: int, order: int) -> list:
    """Coefficients of ``(1 - (-t)^i)^{(-1)^{i+1} c}`` below ``t^order``."""
    if i % 2:
        base, e = 1, c  # (1 + t^i)^c
    else:
        base, e = -1, -c  # (1 - t^i)^(-c)
    out = [0] * order
    n = 0
    while n * i < order:
        out[n * i] = _gen_binom(e, n) * base**n
        n += 1
    return out


def _int_mul(a: list, b: list, order: int) -> list:
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[: order - i]):
                out[i + j] += x * y
    return out


def _t_coefficients(P, order: int) -> list:
    if isinstance(P, LaurentSeries):
        if P.min_exponent < 0 and any(P.coeff(e) for e in range(P.min_exponent, 0)):
            raise ValueError("series must be a power series in t")
        if P.order < order:
            raise ValueError(f"series known only below t^{P.order}, need t^{order - 1}")
        return [P.coeff(e) for e in range(order)]
    if isinstance(P, LaurentPoly):
        return [P.coeff(e) for e in range(order)]
    coeffs = [int(x) for x in P]
    if len(coeffs) < order:
        coeffs += [0] * (order - len(coeffs))
    return coeffs[:order]


def deviations(P, M: int) -> DeviationProfile:
    """Exponents ``c_1..c_M`` with ``P = prod (1+t^{odd})^c / prod (1-t^{even})^c`` mod ``t^{M+1}``.

    ``P`` is a ``LaurentSeries`` in ``t``, a ``LaurentPoly``, or a list of
    coefficients starting at ``t^0``.
    """
    order = M + 1
    p = _t_coefficients(P, order)
    if p[0] != 1:
        raise ValueError("series must have constant term 1")
    Q = [1] + [0] * M
    c = []
    for m in range(1, M + 1):
        # each factor for index m is 1 + c t^m + O(t^{m+1})
        cm = p[m] - Q[m]
        c.append(cm)
        if cm:
            Q = _int_mul(Q, _factor_series(m, cm, order), order)
    return DeviationProfile(c)


def reconstruct(prof: DeviationProfile, M: int) -> LaurentSeries:
    """Expand the product determined by ``prof`` below ``t^{M+1}``."""
    order = M + 1
    Q = [1] + [0] * M
    for m, cm in enumerate(prof.c[:M], start=1):
        if cm:
            Q = _int_mul(Q, _factor_series(m, cm, order), order)
    return LaurentSeries(0, Q, order)


def grassmannian_poincare(k: int, n: int) -> LaurentPoly:
    """Graded dimension of ``H*(Gr(k, n))``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({k}, {n})")
    return qbinom_renorm(n, k)


def _check_kd(kd):
    kd = [(int(k), int(d)) for k, d in kd]
    for k, d in kd:
        if not 0 <= k <= d:
            raise ValueError(f"label ({k}, {d}) out of range")
    return kd


def endring_graded_dim(kd) -> LaurentPoly:
    """Graded dimension of the endomorphism ring of a standard module."""
    out = ONE
    for k, d in _check_kd(kd):
        out = out * grassmannian_poincare(k, d)
    return out


def standard_ext_euler(kd, q_order: int = DEFAULT_Q_ORDER) -> LaurentSeries:
    """``1 / prod [d_i k_i]`` (renormalized), via the tensor product of the Grassmannian presentations."""
    gens: list = []
    rels: list = []
    for k, d in _check_kd(kd):
        g, r = grassmannian_degrees(k, d)
        gens += g
        rels += r
    return euler_inverse(gens, rels, q_order)
