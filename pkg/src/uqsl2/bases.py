"""Twisted canonical basis of ``V_i (x) V_j`` and Grothendieck group shadows."""
from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import ONE, LaurentPoly, RationalQ, as_rational, qbinom, qpow
from .tensor_rep import ModuleShape, TensorVector, act_divided

BASES = ("standard", "twisted_canonical", "proper_standard_class", "projective_class")


@dataclass
class BasisExpansion:
    """Coefficients of a vector in a named basis, keyed by index tuples."""

    basis: str
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        self.coefficients = {tuple(k): as_rational(v) for k, v in self.coefficients.items() if v}

    def __getitem__(self, key):
        return self.coefficients.get(tuple(key), RationalQ(0))

    def __eq__(self, other):
        if not isinstance(other, BasisExpansion):
            return NotImplemented
        return self.basis == other.basis and self.coefficients == other.coefficients

    def items(self):
        return sorted(self.coefficients.items())

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"index": list(k), "coeff": v.to_json()} for k, v in self.items()],
        }


def _check(r, s, i, j):
    if not (0 <= r <= i and 0 <= s <= j):
        raise ValueError(f"({r}, {s}) out of range for V_{i} (x) V_{j}")


def twisted_canonical_action(r: int, s: int, i: int, j: int) -> TensorVector:
    """``E^(s) F^(i-r) (v_i (x) v_0)`` if ``r+s <= j``, else ``F^(i-r) E^(s) (v_i (x) v_0)``."""
    _check(r, s, i, j)
    v = TensorVector.basis_vector((i, j), (i, 0))
    if r + s <= j:
        return act_divided("E", s, act_divided("F", i - r, v))
    return act_divided("F", i - r, act_divided("E", s, v))


def twisted_canonical_sum(r: int, s: int, i: int, j: int, branch: int | None = None) -> TensorVector:
    """Closed summation for ``v_r spade v_s``; ``branch`` forces one of the two formulas."""
    _check(r, s, i, j)
    if branch is None:
        branch = 1 if r + s <= j else 2
    shape = ModuleShape((i, j))
    out = {}
    if branch == 1:
        for p in range(s + 1):
            if r + p <= i:
                out[(r + p, s - p)] = qbinom(p + r, p).shift(p * (p - s + j))
    else:
        for p in range(i - r + 1):
            if s - p >= 0:
                out[(r + p, s - p)] = qbinom(j - s + p, p).shift(p * (p + r))
    return TensorVector(shape, out)


def twisted_canonical(r: int, s: int, i: int, j: int) -> TensorVector:
    """``v_r spade v_s``, computed by both routes which must agree."""
    a = twisted_canonical_action(r, s, i, j)
    b = twisted_canonical_sum(r, s, i, j)
    if a != b:
        raise ArithmeticError(f"twisted canonical routes disagree at {(r, s, i, j)}: {a} vs {b}")
    return a


def standard_in_twisted(r: int, s: int, i: int, j: int) -> BasisExpansion:
    """``v_r (x) v_s`` as a combination of ``v_{r+g} spade v_{s-g}``."""
    _check(r, s, i, j)
    out = {}
    for g in range(0, min(i - r, s) + 1):
        if r + s <= j:
            c = qbinom(r + g, g).shift(g * (j - s + 1))
        else:
            c = qbinom(j - s + g, g).shift(g * (r + 1))
        out[(r + g, s - g)] = c * (-1) ** g
    return BasisExpansion("twisted_canonical", out)


def expand_twisted(exp: BasisExpansion, i: int, j: int) -> TensorVector:
    """Substitute the ``spade`` vectors back into a twisted expansion."""
    total = TensorVector.zero((i, j))
    for (r, s), c in exp.items():
        total = total + twisted_canonical(r, s, i, j).scale(c)
    return total


def standard_in_twisted_solve(r: int, s: int, i: int, j: int) -> BasisExpansion:
    """Same expansion by back substitution in the unitriangular change of basis."""
    _check(r, s, i, j)
    target = TensorVector.basis_vector((i, j), (r, s))
    out = {}
    residual = target
    # spade(r', s') has leading term v_{r'} (x) v_{s'} and other terms with larger first index
    for rr in range(r, i + 1):
        ss = r + s - rr
        if ss < 0:
            break
        c = residual[(rr, ss)]
        if c:
            out[(rr, ss)] = c
            residual = residual - twisted_canonical(rr, ss, i, j).scale(c)
    if residual:
        raise ArithmeticError("back substitution left a residual")
    return BasisExpansion("twisted_canonical", out)


def standard_class_in_proper(kd) -> LaurentPoly:
    """``[Delta] = prod [d_i k_i] [proper standard]``."""
    out = ONE
    for k, d in kd:
        if not 0 <= k <= d:
            raise ValueError(f"label ({k}, {d}) out of range")
        out = out * qbinom(d, k)
    return out


def projective_class_in_standard(r: int, s: int, i: int, j: int) -> BasisExpansion:
    """``[P(r,i|s,j)]`` in the classes ``[Delta(r',i|s',j)]``: the standard coordinates of ``v_r spade v_s``."""
    v = twisted_canonical(r, s, i, j)
    return BasisExpansion("standard", dict(v.coeffs))
