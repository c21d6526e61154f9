"""Command-line front end: ``uqsl2 <command> [flags]``.

Exit codes: 0 success, 1 failed cross-check, 2 usage error, 3 inadmissible input.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import eulerchar, networks, resolutions, threej as tj
from .bases import projective_class_in_standard, standard_in_twisted, twisted_canonical
from .laurent import (
    DEFAULT_Q_ORDER,
    LaurentPoly,
    LaurentSeries,
    RationalQ,
    qbinom,
    qbinom_renorm,
    qfact,
    qfact_renorm,
    qint,
    qint_renorm,
)
from .networks import AdmissibilityError
from .tensor_rep import TensorVector, dual_coefficient

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ADMISSIBILITY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _text(x) -> str:
    if isinstance(x, RationalQ) and x.is_laurent():
        x = x.to_laurent()
    return str(x)


def _value_json(x):
    if isinstance(x, (LaurentPoly, RationalQ, LaurentSeries)):
        return {"text": _text(x), "data": x.to_json()}
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def _index(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    if not re.fullmatch(r"\d+(,\d+)*", text):
        raise UsageError(f"malformed index tuple {text!r}; expected comma-separated integers")
    return tuple(int(x) for x in text.split(","))


class Result:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.value = None
        self.routes: list = []
        self.lines: list = []
        self.exit = EXIT_OK

    def emit(self, as_json: bool, out) -> None:
        if as_json:
            payload = {"command": self.command, "inputs": self.inputs, "value": self.value, "routes": self.routes}
            out.write(json.dumps(payload, sort_keys=True) + "\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


# ---------------------------------------------------------------------------
# commands

_QNUM = {
    "int": lambda n, k: qint(n),
    "renorm": lambda n, k: qint_renorm(n),
    "fact": lambda n, k: qfact(n),
    "fact-renorm": lambda n, k: qfact_renorm(n),
    "binom": lambda n, k: qbinom(n, k),
    "binom-renorm": lambda n, k: qbinom_renorm(n, k),
}


def cmd_qnum(a, res: Result):
    if a.kind.startswith("binom") and a.k is None:
        raise UsageError("qnum: --k is required for binomials")
    v = _QNUM[a.kind](a.n, a.k)
    res.value = _value_json(v)
    res.lines.append(str(v))


def _tuple_args(a) -> tuple:
    return a.i, a.j, a.k, a.r, a.s, a.t


def cmd_threej(a, res: Result):
    args = _tuple_args(a)
    routes = tj.ROUTES if a.route == "all" else (a.route,)
    values = {}
    for route in routes:
        values[route] = tj.threej(*args, route=route)
    res.routes = list(routes)
    res.value = {route: _value_json(v) for route, v in values.items()}
    if len(routes) == 1:
        res.value = res.value[routes[0]]
        res.lines.append(_text(values[routes[0]]))
        return
    disagree = []
    for group in (tj.C_ROUTES, tj.D_ROUTES):
        reference = RationalQ(values[group[0]])
        for route in group:
            v = values[route]
            label = {"classical": "classical (q=1)", "twisted": "twisted (D)", "positivity": "positivity (D)"}.get(route, route)
            res.lines.append(f"{label}: {_text(v)}")
            if route == "classical":
                if v != reference.at_one():
                    disagree.append(route)
            elif RationalQ(v) != reference:
                disagree.append(route)
    if disagree:
        res.lines.append(f"disagreement: {', '.join(disagree)}")
        res.exit = 1
    else:
        res.lines.append("agreement: C routes agree; D routes agree")
    res.value = {"routes": res.value, "agree": not disagree}


def cmd_arrangements(a, res: Result):
    args = _tuple_args(a)
    classes = tj.arrangements(*args)
    signed, raw = tj.arrangement_count(*args)
    res.value = {
        "classes": [c.to_json() for c in classes],
        "signed_count": signed,
        "raw_count": raw,
        "classical": tj.threej_classical(*args),
    }
    res.lines.append("a multiplicity sign gamma")
    for c in classes:
        res.lines.append(f"{c.a} {c.multiplicity} {c.sign:+d} {c.gamma}")
    res.lines.append(f"raw count: {raw}")
    res.lines.append(f"signed count: {signed}")
    res.lines.append(f"classical value: {res.value['classical']}")
    if a.list:
        arrs = tj.oriented_arrangements(a.i, a.j, a.k, a.r, a.s, a.t)
        res.value["arrangements"] = [str(x) for x in arrs]
        for x in arrs:
            res.lines.append(str(x))


def cmd_network(a, res: Result):
    path = Path(a.file)
    try:
        text = path.read_text()
    except OSError as e:
        raise UsageError(f"network: cannot read {a.file}: {e.strerror}") from None
    m = networks.eval_network(text)
    res.inputs["domain"] = list(m.domain.d)
    res.inputs["codomain"] = list(m.codomain.d)
    if a.apply is not None or a.pair is not None:
        src = _index(a.apply) if a.apply is not None else ()
        if not m.domain.contains(src):
            raise UsageError(f"network: index {src} is not a basis index of {m.domain}")
        image = m.apply(TensorVector.basis_vector(m.domain, src))
        if a.pair is not None:
            dst = _index(a.pair)
            if not m.codomain.contains(dst):
                raise UsageError(f"network: index {dst} is not a basis index of {m.codomain}")
            v = dual_coefficient(image, dst)
            res.value = _value_json(v)
            res.lines.append(_text(v))
        else:
            res.value = image.to_json()
            for idx, c in image.items():
                res.lines.append(f"{','.join(map(str, idx))}: {_text(c)}")
        return
    if m.is_scalar():
        v = m.scalar()
        res.value = _value_json(v)
        res.lines.append(_text(v))
        return
    res.value = m.to_json()
    res.lines.append(f"map {m.domain} -> {m.codomain}")
    for idx in m.domain.basis():
        col = m.column(idx)
        body = " ; ".join(f"{','.join(map(str, o))}: {_text(c)}" for o, c in col.items())
        res.lines.append(f"{','.join(map(str, idx))} -> {body or '0'}")


def cmd_theta(a, res: Result):
    i, j, k = a.i, a.j, a.k
    formula = networks.theta_formula(i, j, k)
    closed = networks.theta_closed(i, j, k)
    net = networks.theta_network(i, j, k)
    ratio = (net / formula).to_laurent()
    res.routes = ["formula", "closed", "network"]
    res.value = {
        "formula": _value_json(formula),
        "closed": _value_json(closed),
        "network": _value_json(net),
        "network_over_formula": str(ratio),
    }
    res.lines += [
        f"formula: {_text(formula)}",
        f"closed: {_text(closed)}",
        f"network: {_text(net)}",
        f"network/formula: {ratio}",
    ]
    if closed != formula:
        res.lines.append("disagreement: closed network differs from formula")
        res.exit = 1


def cmd_unknot(a, res: Result):
    if a.n < 0:
        raise UsageError("unknot: --n must be non-negative")
    if a.ext:
        contrib = networks.unknot_ext_contributions(a.n)
        total = networks.unknot_ext_euler(a.n)
        res.value = {"ext_euler": _value_json(total), "contributions": {str(m): str(p) for m, p in sorted(contrib.items())}}
        res.lines.append(str(total))
        return
    v = networks.unknot_value(a.n)
    res.value = _value_json(v)
    res.lines.append(_text(v))


def _ranks_lines(ps: eulerchar.BigradedSeries) -> list:
    return [f"t^{m}: {ps[m]}" for m in range(ps.t_order)]


def _read_series(path: str) -> list:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"euler: cannot read {path}: {e.strerror}") from None
    text = text.strip()
    try:
        data = json.loads(text)
        if isinstance(data, list):
            return [int(x) for x in data]
    except (ValueError, TypeError):
        pass
    toks = [t for t in re.split(r"[\s,]+", text) if t and not t.startswith("#")]
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise UsageError(f"euler: {path} must hold integer coefficients of t^0, t^1, ...") from None


def cmd_euler(a, res: Result):
    if a.kind in ("flag", "grassmannian"):
        if a.kind == "flag":
            if a.n is None:
                raise UsageError("euler flag: --n is required")
            gens, rels = eulerchar.flag_degrees(a.n)
        else:
            if a.n is None or a.k is None:
                raise UsageError("euler grassmannian: --k and --n are required")
            gens, rels = eulerchar.grassmannian_degrees(a.k, a.n)
        ps = eulerchar.ci_poincare(gens, rels, a.t_order)
        inv = eulerchar.euler_inverse(gens, rels, a.q_order)
        res.value = {
            "gen_degrees": gens,
            "rel_degrees": rels,
            "ranks": {str(m): str(ps[m]) for m in range(ps.t_order)},
            "euler_inverse": _value_json(inv),
        }
        res.lines += _ranks_lines(ps)
        if a.kind == "grassmannian":
            gp = eulerchar.grassmannian_poincare(a.k, a.n)
            res.value["poincare"] = str(gp)
            res.lines.append(f"poincare: {gp}")
        res.lines.append(f"euler: {inv}")
        return
    if a.kind == "standard":
        if not a.kd:
            raise UsageError("euler standard: --kd k,d is required")
        kd = []
        for item in a.kd:
            pair = _index(item)
            if len(pair) != 2:
                raise UsageError(f"euler standard: --kd expects k,d pairs, got {item!r}")
            kd.append(pair)
        end = eulerchar.endring_graded_dim(kd)
        inv = eulerchar.standard_ext_euler(kd, a.q_order)
        res.value = {"endring": str(end), "euler_inverse": _value_json(inv)}
        res.lines += [f"endring: {end}", f"euler: {inv}"]
        return
    # deviations
    if a.series is None:
        raise UsageError("euler deviations: --series <file> is required")
    coeffs = _read_series(a.series)
    M = a.m if a.m is not None else max(len(coeffs) - 1, 0)
    prof = eulerchar.deviations(coeffs, M)
    res.inputs["series_coefficients"] = coeffs
    res.value = prof.to_json()
    res.lines.append(" ".join(f"c{m}={c}" for m, c in enumerate(prof.c, start=1)))


def cmd_resolution(a, res: Result):
    table = resolutions.resolution_table(a.r, a.s, a.i, a.j)
    exp = resolutions.delta_in_projectives(a.r, a.s, a.i, a.j)
    res.value = {"table": table.to_json(), "delta_in_projectives": exp.to_json()}
    for m, row in enumerate(table.rows):
        body = " + ".join(
            f"{mult}*P({rr},{a.i}|{ss},{a.j})" for (rr, ss), mult in sorted(row.items())
        )
        res.lines.append(f"Q_{m}: {body or '0'}")
    terms = " + ".join(f"({_text(c)})*[P({rr},{a.i}|{ss},{a.j})]" for (rr, ss), c in exp.items())
    res.lines.append(f"[Delta({a.r},{a.i}|{a.s},{a.j})] = {terms}")


def cmd_basis(a, res: Result):
    if a.kind == "twisted":
        v = twisted_canonical(a.r, a.s, a.i, a.j)
        res.value = v.to_json()
        items = v.items()
        fmt = "v_{}(x)v_{}"
    elif a.kind == "standard-in-twisted":
        e = standard_in_twisted(a.r, a.s, a.i, a.j)
        res.value = e.to_json()
        items = e.items()
        fmt = "spade({},{})"
    else:
        e = projective_class_in_standard(a.r, a.s, a.i, a.j)
        res.value = e.to_json()
        items = e.items()
        fmt = "[Delta({},{})]"
    for idx, c in items:
        res.lines.append(f"{fmt.format(*idx)}: {_text(c)}")


# ---------------------------------------------------------------------------
# parser

def _add_tuple(p, names=("i", "j", "k", "r", "s", "t")):
    for n in names:
        p.add_argument(f"--{n}", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uqsl2", description="Exact computations in the graphical calculus of quantum sl2.")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    q = sub.add_parser("qnum", help="quantum integers, factorials and binomials")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int)
    q.add_argument("--kind", choices=sorted(_QNUM), default="int")

    t = sub.add_parser("threej", help="3j-symbol C_{i,j}^k(r,s,t)")
    _add_tuple(t)
    t.add_argument("--route", choices=tj.ROUTES + ("all",), default="direct")

    ar = sub.add_parser("arrangements", help="oriented line arrangements of the triangle")
    _add_tuple(ar)
    ar.add_argument("--list", action="store_true", help="also list every oriented arrangement")

    n = sub.add_parser("network", help="evaluate a diagram file")
    nsub = n.add_subparsers(dest="action", parser_class=_Parser)
    ev = nsub.add_parser("eval")
    ev.add_argument("file")
    ev.add_argument("--apply", metavar="INDEX", help="input basis index, e.g. 1,0")
    ev.add_argument("--pair", metavar="INDEX", help="output index whose dual coefficient is printed")

    th = sub.add_parser("theta", help="theta network value")
    _add_tuple(th, ("i", "j", "k"))

    u = sub.add_parser("unknot", help="colored unknot")
    u.add_argument("--n", type=int, required=True)
    u.add_argument("--ext", action="store_true", help="graded Euler characteristic of the Ext algebra")

    e = sub.add_parser("euler", help="fractional graded Euler characteristics")
    e.add_argument("kind", choices=("flag", "grassmannian", "standard", "deviations"))
    e.add_argument("--n", type=int)
    e.add_argument("--k", type=int)
    e.add_argument("--kd", nargs="+", metavar="K,D")
    e.add_argument("--series", metavar="FILE")
    e.add_argument("--m", type=int, help="number of deviations (default: series length - 1)")
    e.add_argument("--t-order", type=int, default=eulerchar.DEFAULT_T_ORDER)
    e.add_argument("--q-order", type=int, default=DEFAULT_Q_ORDER)

    r = sub.add_parser("resolution", help="projective resolution of a standard module")
    _add_tuple(r, ("r", "s", "i", "j"))

    b = sub.add_parser("basis", help="twisted canonical basis computations")
    _add_tuple(b, ("r", "s", "i", "j"))
    b.add_argument(
        "--kind", choices=("twisted", "standard-in-twisted", "projective"), default="twisted"
    )
    # allow --json after the subcommand too
    for sp in (q, t, ar, ev, th, u, e, r, b):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


_COMMANDS = {
    "qnum": cmd_qnum,
    "threej": cmd_threej,
    "arrangements": cmd_arrangements,
    "network": cmd_network,
    "theta": cmd_theta,
    "unknot": cmd_unknot,
    "euler": cmd_euler,
    "resolution": cmd_resolution,
    "basis": cmd_basis,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.command is None:
            raise UsageError("uqsl2: missing command; choose from " + ", ".join(_COMMANDS))
        if a.command == "network" and a.action is None:
            raise UsageError("uqsl2 network: missing action 'eval'")
        inputs = {k: v for k, v in sorted(vars(a).items()) if k not in ("json", "command", "action") and v is not None}
        res = Result(a.command, inputs)
        _COMMANDS[a.command](a, res)
    except UsageError as e:
        err.write(f"{e}\n")
        return EXIT_USAGE
    except AdmissibilityError as e:
        err.write(f"inadmissible: {e}\n")
        return EXIT_ADMISSIBILITY
    except (networks.NetworkSyntaxError, networks.NetworkShapeError) as e:
        err.write(f"network error: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        err.write(f"invalid input: {e}\n")
        return EXIT_USAGE
    res.emit(a.json, out)
    return res.exit


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
