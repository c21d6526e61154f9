"""The modules V_d, their tensor products and the three forms on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .laurent import ONE, LaurentPoly, RationalQ, as_rational, qbinom, qfact, qint, qpow

GENERATORS = ("E", "F", "K", "Kinv")


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ModuleShape:
    """``V_{d1} (x) ... (x) V_{dr}``."""

    d: tuple

    def __init__(self, d: Iterable[int] = ()):
        d = tuple(int(x) for x in d)
        if any(x < 0 for x in d):
            raise ValueError(f"negative module label in {d}")
        object.__setattr__(self, "d", d)

    def __len__(self):
        return len(self.d)

    def __iter__(self):
        return iter(self.d)

    def __getitem__(self, i):
        return self.d[i]

    @property
    def total(self) -> int:
        return sum(self.d)

    @property
    def dim(self) -> int:
        out = 1
        for x in self.d:
            out *= x + 1
        return out

    def basis(self) -> Iterator[tuple]:
        return itertools.product(*(range(x + 1) for x in self.d))

    def weight_basis(self, weight: int) -> Iterator[tuple]:
        """Indices with ``sum(a) == weight``."""
        return (a for a in self.basis() if sum(a) == weight)

    def contains(self, index: tuple) -> bool:
        return len(index) == len(self.d) and all(0 <= a <= x for a, x in zip(index, self.d))

    def __str__(self):
        return "V(" + ",".join(map(str, self.d)) + ")"


def _shape(s) -> ModuleShape:
    return s if isinstance(s, ModuleShape) else ModuleShape(s)


class TensorVector:
    """Finite combination of standard basis vectors ``v_a`` of a tensor module."""

    __slots__ = ("shape", "_coeffs")

    def __init__(self, shape, coeffs: Mapping | None = None):
        self.shape = _shape(shape)
        c = {}
        for idx, val in (coeffs or {}).items():
            idx = tuple(idx)
            if not self.shape.contains(idx):
                raise ShapeMismatch(f"index {idx} outside {self.shape}")
            val = as_rational(val)
            if val:
                c[idx] = val
        self._coeffs = c

    @classmethod
    def _raw(cls, shape: ModuleShape, coeffs: dict) -> "TensorVector":
        obj = cls.__new__(cls)
        obj.shape = shape
        obj._coeffs = coeffs
        return obj

    @classmethod
    def basis_vector(cls, shape, index) -> "TensorVector":
        return cls(shape, {tuple(index): 1})

    @classmethod
    def zero(cls, shape) -> "TensorVector":
        return cls(shape)

    # access ---------------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __getitem__(self, index) -> RationalQ:
        return self._coeffs.get(tuple(index), RationalQ(0))

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def weights(self) -> set:
        return {sum(a) for a in self._coeffs}

    # linear structure -----------------------------------------------------
    def _check(self, other: "TensorVector"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        self._check(other)
        c = dict(self._coeffs)
        for idx, val in other._coeffs.items():
            v = c[idx] + val if idx in c else val
            if v:
                c[idx] = v
            else:
                c.pop(idx, None)
        return TensorVector._raw(self.shape, c)

    def __neg__(self):
        return TensorVector._raw(self.shape, {i: -v for i, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorVector":
        c = as_rational(c)
        if not c:
            return TensorVector.zero(self.shape)
        return TensorVector._raw(self.shape, {i: v * c for i, v in self._coeffs.items()})

    def __mul__(self, c):
        if isinstance(c, (int, LaurentPoly, RationalQ)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.shape == other.shape and self._coeffs == other._coeffs

    def __repr__(self):
        if not self._coeffs:
            return f"TensorVector({self.shape}, 0)"
        body = " + ".join(f"({v})*v{list(i)}" for i, v in self.items())
        return f"TensorVector({self.shape}, {body})"

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape.d),
            "terms": [{"index": list(i), "coeff": v.to_json()} for i, v in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "TensorVector":
        return cls(data["shape"], {tuple(t["index"]): RationalQ.from_json(t["coeff"]) for t in data["terms"]})


def tensor(*vectors: TensorVector) -> TensorVector:
    """Tensor product of vectors, concatenating shapes."""
    shape = ModuleShape(sum((v.shape.d for v in vectors), ()))
    out: dict = {(): RationalQ(1)}
    for v in vectors:
        nxt = {}
        for idx, c in out.items():
            for j, d in v._coeffs.items():
                nxt[idx + j] = c * d
        out = nxt
    return TensorVector._raw(shape, {i: c for i, c in out.items() if c})


def standard(shape, index) -> TensorVector:
    return TensorVector.basis_vector(shape, index)


def dual_standard(k: int, n: int) -> TensorVector:
    """``v^k = v_k / [n k]`` in ``V_n``."""
    if not 0 <= k <= n:
        raise ValueError(f"dual standard index {k} outside 0..{n}")
    return TensorVector(ModuleShape((n,)), {(k,): RationalQ(1, qbinom(n, k))})


def dual_standard_tensor(shape, index) -> TensorVector:
    shape = _shape(shape)
    c = ONE
    for a, d in zip(index, shape.d):
        c = c * qbinom(d, a)
    return TensorVector(shape, {tuple(index): RationalQ(1, c)})


# ---------------------------------------------------------------------------
# the quantum group action

def _weight(index: tuple, d: tuple, lo: int, hi: int) -> int:
    return sum(2 * index[m] - d[m] for m in range(lo, hi))


def _single(gen: str, a: int, n: int):
    """Single-factor action; returns (new index, coefficient) or None."""
    if gen == "E":
        return (a + 1, qint(a + 1)) if a < n else None
    if gen == "F":
        return (a - 1, qint(n - a + 1)) if a > 0 else None
    if gen == "K":
        return a, qpow(2 * a - n)
    if gen == "Kinv":
        return a, qpow(n - 2 * a)
    raise ValueError(f"unknown generator {gen!r}")


def act(generator: str, v: TensorVector) -> TensorVector:
    """Action of E, F, K or K^-1 through the iterated coproduct.

    E acts as ``sum_m 1 (x) .. (x) E (x) K^-1 (x) .. (x) K^-1`` and
    F as ``sum_m K (x) .. (x) K (x) F (x) 1 (x) .. (x) 1``.
    """
    d = v.shape.d
    r = len(d)
    out: dict = {}

    def add(idx, c):
        cur = out.get(idx)
        val = c if cur is None else cur + c
        if val:
            out[idx] = val
        else:
            out.pop(idx, None)

    for idx, c in v._coeffs.items():
        if generator in ("K", "Kinv"):
            w = _weight(idx, d, 0, r)
            add(idx, c * qpow(w if generator == "K" else -w))
            continue
        for m in range(r):
            res = _single(generator, idx[m], d[m])
            if res is None:
                continue
            a, coeff = res
            if generator == "E":
                coeff = coeff.shift(-_weight(idx, d, m + 1, r))
            else:
                coeff = coeff.shift(_weight(idx, d, 0, m))
            new = idx[:m] + (a,) + idx[m + 1:]
            add(new, c * coeff)
    return TensorVector._raw(v.shape, out)


def act_word(word: Iterable[str], v: TensorVector) -> TensorVector:
    """Apply generators right-to-left, as in the product ``g1 g2 ... gk``."""
    for g in reversed(list(word)):
        v = act(g, v)
    return v


def act_divided(generator: str, r: int, v: TensorVector) -> TensorVector:
    """Divided power ``E^(r)`` or ``F^(r)``: ``r`` fold action then exact division by ``[r]!``."""
    if generator not in ("E", "F"):
        raise ValueError("divided powers exist for E and F only")
    if r < 0:
        raise ValueError("negative divided power")
    w = v
    for _ in range(r):
        w = act(generator, w)
    if r <= 1:
        return w
    f = qfact(r)
    out = {}
    for idx, c in w._coeffs.items():
        if c.is_laurent():
            out[idx] = RationalQ(c.num.exact_div(f))
        else:
            out[idx] = c / f
    return TensorVector._raw(v.shape, out)


def _divided_single(gen: str, r: int, a: int, n: int):
    if gen == "E":
        return (a + r, qbinom(a + r, r)) if a + r <= n else None
    return (a - r, qbinom(n - a + r, r)) if a - r >= 0 else None


def act_divided_coproduct(generator: str, r: int, v: TensorVector) -> TensorVector:
    """Divided power computed from the divided-power coproduct formula.

    ``D(E^(r)) = sum q^(-r'r'') E^(r') (x) E^(r'') K^(-r')`` and
    ``D(F^(r)) = sum q^(-r'r'') F^(r') K^(r'') (x) F^(r'')``, applied
    recursively by splitting off the first tensor factor.
    """
    if generator not in ("E", "F"):
        raise ValueError("divided powers exist for E and F only")
    d = v.shape.d

    def rec(idx: tuple, r: int) -> dict:
        if not idx:
            return {(): ONE} if r == 0 else {}
        a, n, rest, drest = idx[0], d[len(d) - len(idx)], idx[1:], d[len(d) - len(idx) + 1:]
        res: dict = {}
        for r1 in range(r + 1):
            r2 = r - r1
            one = _divided_single(generator, r1, a, n)
            if one is None:
                continue
            a1, c1 = one
            if generator == "E":
                # K^(-r1) acts first on the remaining factors
                shift = -r1 * sum(2 * x - y for x, y in zip(rest, drest))
            else:
                # K^(r2) acts on the first factor before F^(r1)
                shift = r2 * (2 * a - n)
            for tail, c2 in rec(rest, r2).items():
                key = (a1,) + tail
                val = res.get(key, LaurentPoly()) + (c1 * c2).shift(shift - r1 * r2)
                res[key] = val
        return {k: c for k, c in res.items() if c}

    out: dict = {}
    for idx, c in v._coeffs.items():
        for new, coeff in rec(idx, r).items():
            val = out.get(new, RationalQ(0)) + c * coeff
            if val:
                out[new] = val
            else:
                out.pop(new, None)
    return TensorVector._raw(v.shape, out)


# ---------------------------------------------------------------------------
# forms

def _basis_norm(index: tuple, d: tuple) -> LaurentPoly:
    """``<v_a, v_a>`` for the evaluation form: prod q^(a(d-a)) [d a]."""
    out = ONE
    for a, n in zip(index, d):
        out = out * qbinom(n, a).shift(a * (n - a))
    return out


def form_irr(v: TensorVector, w: TensorVector, semilinear: bool = False) -> RationalQ:
    """``<v_k, v_l>' = delta_kl q^(k(n-k)) [n k]`` on a single ``V_n``.

    Bilinear by default; ``semilinear=True`` conjugates the first slot.
    """
    if len(v.shape) != 1 or v.shape != w.shape:
        raise ShapeMismatch("form_irr needs two vectors of the same V_n")
    n = v.shape.d[0]
    total = RationalQ(0)
    for idx, c in v._coeffs.items():
        other = w._coeffs.get(idx)
        if other is None:
            continue
        k = idx[0]
        left = c.bar() if semilinear else c
        total = total + left * other * qbinom(n, k).shift(k * (n - k))
    return total


def form_eval(v: TensorVector, w: TensorVector) -> RationalQ:
    """Evaluation form: anti-linear in ``v``, linear in ``w``,
    ``<v_a, v^b> = delta_ab prod q^(a_i(d_i-a_i))``."""
    if v.shape != w.shape:
        raise ShapeMismatch(f"{v.shape} vs {w.shape}")
    total = RationalQ(0)
    for idx, c in v._coeffs.items():
        other = w._coeffs.get(idx)
        if other is not None:
            total = total + c.bar() * other * _basis_norm(idx, v.shape.d)
    return total


def form_pair(v: TensorVector, w: TensorVector) -> RationalQ:
    """Pairing anti-linear in both slots, ``(v_a, v^b) = delta_ab prod q^(a_i(d_i-a_i))``."""
    if v.shape != w.shape:
        raise ShapeMismatch(f"{v.shape} vs {w.shape}")
    total = RationalQ(0)
    for idx, c in v._coeffs.items():
        other = w._coeffs.get(idx)
        if other is not None:
            total = total + c.bar() * other.bar() * _basis_norm(idx, v.shape.d)
    return total


def dual_coefficient(w: TensorVector, index) -> RationalQ:
    """Coefficient of the dual standard vector ``v^index`` in ``w``.

    Equal to ``q^(-sum a(d-a)) <v_index, w>``.
    """
    index = tuple(index)
    c = w[index]
    norm = ONE
    for a, n in zip(index, w.shape.d):
        norm = norm * qbinom(n, a)
    return c * norm


def bar_vector(v: TensorVector) -> TensorVector:
    """Apply ``q -> q^-1`` to every coefficient."""
    return TensorVector._raw(v.shape, {i: c.bar() for i, c in v.coeffs.items()})
