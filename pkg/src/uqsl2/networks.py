"""Intertwiners between tensor modules and evaluation of small networks.

Maps are stored column-wise: for each input basis index, a dict of output
index to coefficient.  Only ``V_1`` strands may be capped or cupped.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .diagrams import sequences, stat_b, stat_l
from .laurent import ONE, LaurentPoly, RationalQ, as_rational, qbinom, qfact, qint, qpow
from .tensor_rep import ModuleShape, ShapeMismatch, TensorVector, bar_vector, form_eval


class AdmissibilityError(ValueError):
    """Raised for a triple ``(i, j, k)`` violating parity or the triangle inequalities."""


def admissible(i: int, j: int, k: int) -> bool:
    return (
        min(i, j, k) >= 0
        and (i + j + k) % 2 == 0
        and i <= j + k
        and j <= i + k
        and k <= i + j
    )


def triangle(i: int, j: int, k: int) -> tuple:
    """``(x, y, z)``: arcs between ``i,k``, ``j,k`` and ``i,j`` respectively."""
    if min(i, j, k) < 0:
        raise AdmissibilityError(f"({i}, {j}, {k}) is not admissible: negative label")
    if i > j + k or j > i + k or k > i + j:
        raise AdmissibilityError(f"({i}, {j}, {k}) is not admissible: triangle inequality fails")
    if (i + j + k) % 2:
        raise AdmissibilityError(f"({i}, {j}, {k}) is not admissible: parity, i+j+k is odd")
    return (i + k - j) // 2, (j + k - i) // 2, (i + j - k) // 2


class Intertwiner:
    """Linear map ``V_domain -> V_codomain`` with exact coefficients."""

    __slots__ = ("domain", "codomain", "cols")

    def __init__(self, domain, codomain, cols: dict | None = None):
        self.domain = domain if isinstance(domain, ModuleShape) else ModuleShape(domain)
        self.codomain = codomain if isinstance(codomain, ModuleShape) else ModuleShape(codomain)
        self.cols = {}
        for i, col in (cols or {}).items():
            c = {tuple(o): as_rational(v) for o, v in col.items() if v}
            c = {o: v for o, v in c.items() if v}
            if c:
                self.cols[tuple(i)] = c

    @classmethod
    def identity(cls, shape) -> "Intertwiner":
        shape = shape if isinstance(shape, ModuleShape) else ModuleShape(shape)
        return cls(shape, shape, {a: {a: 1} for a in shape.basis()})

    def apply(self, v: TensorVector) -> TensorVector:
        if v.shape != self.domain:
            raise ShapeMismatch(f"cannot apply map on {self.domain} to vector in {v.shape}")
        out: dict = {}
        for i, c in v.coeffs.items():
            for o, m in self.cols.get(i, {}).items():
                val = out.get(o, RationalQ(0)) + c * m
                if val:
                    out[o] = val
                else:
                    out.pop(o, None)
        return TensorVector._raw(self.codomain, out)

    __call__ = apply

    def column(self, index) -> TensorVector:
        return TensorVector._raw(self.codomain, dict(self.cols.get(tuple(index), {})))

    def entry(self, out_index, in_index) -> RationalQ:
        return self.cols.get(tuple(in_index), {}).get(tuple(out_index), RationalQ(0))

    def compose(self, other: "Intertwiner") -> "Intertwiner":
        """``self o other``."""
        if other.codomain != self.domain:
            raise ShapeMismatch(f"cannot compose {self.domain} <- {other.codomain}")
        cols = {}
        for i, col in other.cols.items():
            out: dict = {}
            for mid, c in col.items():
                for o, m in self.cols.get(mid, {}).items():
                    val = out.get(o, RationalQ(0)) + c * m
                    if val:
                        out[o] = val
                    else:
                        out.pop(o, None)
            if out:
                cols[i] = out
        res = Intertwiner.__new__(Intertwiner)
        res.domain, res.codomain, res.cols = other.domain, self.codomain, cols
        return res

    def __matmul__(self, other):
        return self.compose(other)

    def tensor(self, other: "Intertwiner") -> "Intertwiner":
        cols = {}
        for i, ci in self.cols.items():
            for j, cj in other.cols.items():
                cols[i + j] = {o + p: a * b for o, a in ci.items() for p, b in cj.items()}
        res = Intertwiner.__new__(Intertwiner)
        res.domain = ModuleShape(self.domain.d + other.domain.d)
        res.codomain = ModuleShape(self.codomain.d + other.codomain.d)
        res.cols = cols
        return res

    def __eq__(self, other):
        if not isinstance(other, Intertwiner):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain and self.cols == other.cols

    def is_scalar(self) -> bool:
        return not self.domain.d and not self.codomain.d

    def scalar(self) -> RationalQ:
        if not self.is_scalar():
            raise ShapeMismatch("not a scalar map")
        return self.entry((), ())

    def to_json(self) -> dict:
        return {
            "domain": list(self.domain.d),
            "codomain": list(self.codomain.d),
            "columns": [
                {"index": list(i), "image": self.column(i).to_json()["terms"]}
                for i in sorted(self.cols)
            ],
        }


def tensor_maps(*maps: Intertwiner) -> Intertwiner:
    out = Intertwiner.identity(())
    for m in maps:
        out = out.tensor(m)
    return out


def _ones(n: int) -> ModuleShape:
    return ModuleShape((1,) * n)


# ---------------------------------------------------------------------------
# elementary pieces

def cup_vector() -> TensorVector:
    """Image of 1 under the cup: ``v_1 (x) v_0 - q v_0 (x) v_1``."""
    return TensorVector(_ones(2), {(1, 0): 1, (0, 1): -LaurentPoly.monomial(1)})


_CAP = {(0, 1): ONE, (1, 0): -LaurentPoly.monomial(-1)}


def cap_matrix(i: int, n: int) -> Intertwiner:
    """Cap on strands ``i, i+1`` (1-based) of ``V_1^{(x) n}``."""
    if not 1 <= i < n:
        raise ValueError(f"cap position {i} invalid on {n} strands")
    return cap_at(i, _ones(n))


def cup_matrix(i: int, n: int) -> Intertwiner:
    """Cup inserted as new strands ``i, i+1`` (1-based) into ``V_1^{(x) n}``."""
    if not 1 <= i <= n + 1:
        raise ValueError(f"cup position {i} invalid on {n} strands")
    return cup_at(i, _ones(n))


def cap_at(i: int, shape: ModuleShape) -> Intertwiner:
    """Cap on factors ``i, i+1`` of an arbitrary shape; both must be ``V_1``."""
    d = shape.d
    if not 1 <= i < len(d) or d[i - 1] != 1 or d[i] != 1:
        raise ShapeMismatch(f"cap at {i} needs two V_1 factors in {shape}")
    cod = ModuleShape(d[: i - 1] + d[i + 1:])
    cols = {}
    for a in shape.basis():
        c = _CAP.get((a[i - 1], a[i]))
        if c is not None:
            cols[a] = {a[: i - 1] + a[i + 1:]: c}
    return Intertwiner(shape, cod, cols)


def cup_at(i: int, shape: ModuleShape) -> Intertwiner:
    d = shape.d
    if not 1 <= i <= len(d) + 1:
        raise ShapeMismatch(f"cup at {i} outside {shape}")
    cod = ModuleShape(d[: i - 1] + (1, 1) + d[i - 1:])
    cup = cup_vector().coeffs
    cols = {a: {a[: i - 1] + p + a[i - 1:]: c for p, c in cup.items()} for a in shape.basis()}
    return Intertwiner(shape, cod, cols)


@lru_cache(maxsize=None)
def proj(n: int) -> Intertwiner:
    """``pi_n(v_a) = q^(-l(a)) v^{|a|}`` from ``V_1^{(x) n}`` onto ``V_n``."""
    cols = {}
    for a in sequences(n):
        k = sum(a)
        cols[a] = {(k,): RationalQ(qpow(-stat_l(a)), qbinom(n, k))}
    return Intertwiner(_ones(n), ModuleShape((n,)), cols)


@lru_cache(maxsize=None)
def incl(n: int) -> Intertwiner:
    """``iota_n(v_k) = sum_{|a|=k} q^(b(a)) v_a``."""
    cols = {}
    for k in range(n + 1):
        cols[(k,)] = {a: qpow(stat_b(a)) for a in sequences(n, k)}
    return Intertwiner(ModuleShape((n,)), _ones(n), cols)


@lru_cache(maxsize=None)
def jw(n: int) -> Intertwiner:
    """Jones-Wenzl projector ``iota_n o pi_n``."""
    return incl(n) @ proj(n)


def proj_blocks(d: Sequence[int]) -> Intertwiner:
    return tensor_maps(*(proj(x) for x in d))


def incl_blocks(d: Sequence[int]) -> Intertwiner:
    return tensor_maps(*(incl(x) for x in d))


def jw_blocks(d: Sequence[int]) -> Intertwiner:
    return tensor_maps(*(jw(x) for x in d))


def nested_cups(n: int) -> TensorVector:
    """``n`` nested cups on ``2n`` strands, the innermost at positions ``n, n+1``."""
    v = TensorVector(ModuleShape(()), {(): 1})
    for m in range(n):
        # wrap the current picture in one more cup
        shape = v.shape
        v = cup_at(1, shape).apply(v)
        v = _move_last(v, 2)
    return v


def _move_last(v: TensorVector, src: int) -> TensorVector:
    """Move factor ``src`` (1-based) to the end; used to build nested cups."""
    d = list(v.shape.d)
    new_shape = ModuleShape(d[: src - 1] + d[src:] + [d[src - 1]])
    out = {}
    for a, c in v.coeffs.items():
        out[a[: src - 1] + a[src:] + (a[src - 1],)] = c
    return TensorVector(new_shape, out)


def nested_caps_map(n: int, shape: ModuleShape | None = None, at: int = 1) -> Intertwiner:
    """``n`` nested caps on factors ``at .. at+2n-1``."""
    shape = shape or _ones(2 * n)
    m = Intertwiner.identity(shape)
    for t in range(n):
        pos = at + n - 1 - t
        m = cap_at(pos, m.codomain) @ m
    return m


def phi(i: int, j: int, k: int) -> Intertwiner:
    """``z`` nested caps on ``V_1^{(x)(i+j)}``, the innermost at position ``x + z``."""
    x, y, z = triangle(i, j, k)
    m = Intertwiner.identity(_ones(i + j))
    for t in range(z):
        m = cap_at(x + z - t, m.codomain) @ m
    return m


@lru_cache(maxsize=None)
def intertwiner_A(i: int, j: int, k: int) -> Intertwiner:
    """``pi_k o Phi o (iota_i (x) iota_j): V_i (x) V_j -> V_k``."""
    return proj(k) @ phi(i, j, k) @ incl(i).tensor(incl(j))


# ---------------------------------------------------------------------------
# closed networks

def theta_formula(i: int, j: int, k: int) -> RationalQ:
    """Closed form of the theta network with edge labels ``i, j, k``."""
    x, y, z = triangle(i, j, k)
    num = qfact(x) * qfact(y) * qfact(z) * qfact(x + y + z + 1)
    den = qfact(x + z) * qfact(y + z) * qfact(x + y)
    return RationalQ(num, den) * (-1) ** (x + y + z)


def theta_state(i: int, j: int, k: int) -> TensorVector:
    """Arcs ``i-j``, ``j-k``, ``i-k`` projected into ``V_i (x) V_j (x) V_k``."""
    x, y, z = triangle(i, j, k)
    # strand order: x arcs to k, z arcs to j, y arcs to k, then the far ends of the x arcs
    v = nested_cups(x)
    v = _insert(v, x, nested_cups(y))
    v = _insert(v, x, nested_cups(z))
    return proj_blocks((i, j, k)).apply(v)


def _insert(v: TensorVector, pos: int, w: TensorVector) -> TensorVector:
    """Insert the factors of ``w`` after the first ``pos`` factors of ``v``."""
    d = v.shape.d
    shape = ModuleShape(d[:pos] + w.shape.d + d[pos:])
    out = {}
    for a, c in v.coeffs.items():
        for b, e in w.coeffs.items():
            out[a[:pos] + b + a[pos:]] = c * e
    return TensorVector(shape, out)


def theta_closed(i: int, j: int, k: int) -> RationalQ:
    """The theta network evaluated as a closed diagram: cups, projectors, caps."""
    x, y, z = triangle(i, j, k)
    v = theta_state(i, j, k)
    v = incl_blocks((i, j, k)).apply(v)
    # close: caps mirror the cups
    m = Intertwiner.identity(v.shape)
    m = nested_caps_map(z, m.codomain, at=x + 1) @ m
    m = nested_caps_map(y, m.codomain, at=x + 1) @ m
    m = nested_caps_map(x, m.codomain, at=1) @ m
    return m.apply(v)[()]


def theta_network(i: int, j: int, k: int) -> RationalQ:
    """Evaluation form of the projected theta state against its mirror image.

    The mirrored top half carries bar-conjugated coefficients, so this is
    ``<bar(w), w>``; it equals ``(-q)^((i+j+k)/2)`` times :func:`theta_formula`.
    """
    w = theta_state(i, j, k)
    return form_eval(bar_vector(w), w)


def unknot_value(n: int) -> RationalQ:
    """``n`` nested caps o (p_n (x) id) o ``n`` nested cups; equals ``(-1)^n [n+1]``."""
    v = nested_cups(n)
    v = jw(n).tensor(Intertwiner.identity(_ones(n))).apply(v)
    return nested_caps_map(n).apply(v)[()]


def unknot_state(n: int) -> TensorVector:
    """Nested cups projected into ``V_n (x) V_n``."""
    return proj_blocks((n, n)).apply(nested_cups(n))


def unknot_resolution(n: int) -> list:
    """Verma terms ``(a, shift)`` resolving the cabled cup simple.

    ``a = u + reversed(complement(u))`` with shift the number of zeros in ``u``.
    """
    out = []
    for u in sequences(n):
        tail = tuple(1 - x for x in reversed(u))
        out.append((u + tail, n - sum(u)))
    return sorted(out, key=lambda t: (-t[1], t[0]))


def unknot_ext_contributions(n: int) -> dict:
    """Contribution of the proper standard with first label ``m`` to the Ext Euler characteristic.

    The graded multiplicity of that term is the sum of ``q^(shift + 2 b(u))``
    over resolution terms with ``|u| = m``; it is paired with its dual and
    renormalized by ``q^(-2m(n-m)) / [n m]^2``.
    """
    mult: dict = {m: LaurentPoly() for m in range(n + 1)}
    for a, shift in unknot_resolution(n):
        u = a[:n]
        mult[sum(u)] = mult[sum(u)] + qpow(shift + 2 * stat_b(u))
    out = {}
    for m, p in mult.items():
        num = (p * p).shift(-2 * m * (n - m))
        b = qbinom(n, m)
        out[m] = num.exact_div(b * b)
    return out


def unknot_ext_euler(n: int) -> LaurentPoly:
    """Graded Euler characteristic of the Ext algebra of the colored unknot; equals ``[[n+1]]``."""
    return sum(unknot_ext_contributions(n).values(), LaurentPoly())


# ---------------------------------------------------------------------------
# network DSL

class NetworkSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NetworkShapeError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"layer at line {line}: {message}")
        self.line = line


@dataclass
class Layer:
    op: str
    args: tuple
    line: int


@dataclass
class Network:
    width: int
    layers: list = field(default_factory=list)


_OPS = ("cup", "cap", "proj", "incl", "jw")


def parse_network(text: str) -> Network:
    """Parse ``input <n>`` followed by ``cup i | cap i | proj d.. | incl d.. | jw n..``.

    In ``proj``, ``incl`` and ``jw`` the token ``id`` passes one factor through.
    """
    width = None
    layers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        head, col = tokens[0]
        if width is None:
            if head != "input":
                raise NetworkSyntaxError("expected 'input <n>'", lineno, col)
            if len(tokens) != 2 or not tokens[1][0].isdigit():
                c = tokens[1][1] if len(tokens) > 1 else col + len(head)
                raise NetworkSyntaxError("input needs one nonnegative integer", lineno, c)
            width = int(tokens[1][0])
            continue
        if head not in _OPS:
            raise NetworkSyntaxError(f"unknown layer {head!r}", lineno, col)
        args = []
        for tok, c in tokens[1:]:
            if tok == "id" and head in ("proj", "incl", "jw"):
                args.append(None)
            elif tok.isdigit():
                args.append(int(tok))
            else:
                raise NetworkSyntaxError(f"bad argument {tok!r}", lineno, c)
        if head in ("cup", "cap") and len(args) != 1:
            raise NetworkSyntaxError(f"{head} takes exactly one position", lineno, col)
        if head not in ("cup", "cap") and not args:
            raise NetworkSyntaxError(f"{head} needs at least one block", lineno, col)
        layers.append(Layer(head, tuple(args), lineno))
    if width is None:
        raise NetworkSyntaxError("empty network", 1, 1)
    return Network(width, layers)


def _block_map(layer: Layer, shape: ModuleShape) -> Intertwiner:
    d = shape.d
    pos = 0
    pieces = []
    for a in layer.args:
        if a is None:
            if pos >= len(d):
                raise NetworkShapeError(f"{layer.op}: 'id' past the last factor of {shape}", layer.line)
            pieces.append(Intertwiner.identity((d[pos],)))
            pos += 1
            continue
        if layer.op == "incl":
            if pos >= len(d) or d[pos] != a:
                raise NetworkShapeError(f"incl {a} does not match factor {pos + 1} of {shape}", layer.line)
            pieces.append(incl(a))
            pos += 1
            continue
        block = d[pos:pos + a]
        if len(block) != a or any(x != 1 for x in block):
            raise NetworkShapeError(
                f"{layer.op} block {a} needs {a} V_1 factors from position {pos + 1} in {shape}", layer.line
            )
        pieces.append(proj(a) if layer.op == "proj" else jw(a))
        pos += a
    if pos != len(d):
        raise NetworkShapeError(
            f"{layer.op} blocks cover {pos} factors but the current shape {shape} has {len(d)}", layer.line
        )
    return tensor_maps(*pieces)


def network_map(net: Network) -> Intertwiner:
    m = Intertwiner.identity(_ones(net.width))
    for layer in net.layers:
        shape = m.codomain
        if layer.op == "cup":
            try:
                step = cup_at(layer.args[0], shape)
            except ShapeMismatch as e:
                raise NetworkShapeError(str(e), layer.line) from None
        elif layer.op == "cap":
            try:
                step = cap_at(layer.args[0], shape)
            except ShapeMismatch as e:
                raise NetworkShapeError(str(e), layer.line) from None
        else:
            step = _block_map(layer, shape)
        m = step @ m
    return m


def eval_network(net: Network | str) -> Intertwiner:
    if isinstance(net, str):
        net = parse_network(net)
    return network_map(net)
