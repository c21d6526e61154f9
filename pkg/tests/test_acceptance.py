"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (also under ``pytest -q``)
and then asserts.  Run standalone with ``python3 tests/test_acceptance.py``.
"""
import itertools
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

from uqsl2.diagrams import gk_dim, quantum_coset_identity_check, sequences
from uqsl2.eulerchar import ci_poincare, deviations, euler_inverse, flag_degrees
from uqsl2.laurent import LaurentPoly, RationalQ, qfact_renorm, qint
from uqsl2.networks import (
    admissible,
    cap_matrix,
    cup_matrix,
    incl,
    jw,
    theta_formula,
    theta_network,
    unknot_value,
)
from uqsl2.resolutions import alternating_sum_check, inverse_check, recursion_check
from uqsl2.threej import (
    arrangement_count,
    arrangements,
    hat_C,
    kl_constant,
    threej_alternating,
    threej_direct,
    threej_positivity,
    threej_quantum_sum,
    threej_twisted,
)

q = LaurentPoly.monomial
TESTS_DIR = Path(__file__).resolve().parent


def poly(*terms):
    out = LaurentPoly()
    for e, c in terms:
        out = out + q(e, c)
    return out


def tuples(pred):
    for i in range(9):
        for j in range(9):
            for k in range(abs(i - j), i + j + 1, 2):
                if not pred(i, j, k):
                    continue
                for r, s, t in itertools.product(range(i + 1), range(j + 1), range(k + 1)):
                    yield i, j, k, r, s, t


def as_poly(v):
    return v if isinstance(v, LaurentPoly) else v.to_laurent()


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        return ok

    return emit


GOLDEN_C = {
    (1, 1, 1): poly((-2, -1), (2, 1)),
    (1, 0, 0): q(-1, -1),
    (2, 0, 1): q(-1, -1),
    (0, 1, 0): q(1),
    (2, 1, 2): q(-1, -1),
    (0, 2, 1): q(-1),
    (1, 2, 2): q(1),
}


def test_criterion_1_golden_table(report):
    start = time.perf_counter()
    bad = []
    for rst, want in GOLDEN_C.items():
        for name, fn in (("direct", threej_direct), ("sum", threej_quantum_sum), ("alternating", threej_alternating)):
            if fn(2, 2, 2, *rst) != want:
                bad.append((name, rst))
    nonzero = {rst for rst in itertools.product(range(3), repeat=3) if threej_direct(2, 2, 2, *rst)}
    elapsed = time.perf_counter() - start
    ok = not bad and nonzero == set(GOLDEN_C) and elapsed < 1.0
    report(1, ok, f"7 golden values x 3 routes, mismatches={bad}, extra nonzero={sorted(nonzero - set(GOLDEN_C))}, {elapsed:.2f}s < 1s")
    assert ok


# the bracket printed in the (4,5,5) example and its printed prefactor exponent
P455 = poly((16, 1), (12, -1), (10, -3), (8, -4), (6, -3), (4, -1), (2, 1), (0, 1), (-2, 1))
PRINTED_PREFACTOR = -3


def test_criterion_2_455_example(report):
    classes = arrangements(4, 5, 5, 2, 2, 2)
    raw = arrangement_count(4, 5, 5, 2, 2, 2)[1]
    terms = [(-1) ** c.a * c.multiplicity for c in classes]
    gammas = [c.gamma for c in classes]
    counts_ok = raw == 16 and terms == [1, -12, 3] and sum(terms) == -8 and gammas == [16, 9, 2]
    printed = P455.shift(PRINTED_PREFACTOR)
    hits = [rst for rst in itertools.product(range(5), range(6), range(6)) if threej_direct(4, 5, 5, *rst) == printed]
    observed = as_poly(threej_direct(4, 5, 5, 2, 2, 2))
    shift = observed.valuation() - P455.valuation()
    bracket_ok = observed == P455.shift(shift)
    ok = counts_ok and bool(hits)
    report(
        2,
        ok,
        f"raw=16, terms (1,-12,3), gamma (16,9,2): {counts_ok}; printed q^{PRINTED_PREFACTOR}*bracket matched by "
        f"{hits or 'no (r,s,t)'}; at (2,2,2) the bracket is reproduced ({bracket_ok}) with prefactor q^{shift}",
    )
    assert ok


def test_criterion_3_route_sweep(report):
    start = time.perf_counter()
    n = 0
    bad = []
    for tup in tuples(lambda i, j, k: i + j <= 8):
        n += 1
        if threej_direct(*tup) != threej_quantum_sum(*tup):
            bad.append(tup)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(3, ok, f"direct = quantum_sum on {n} tuples with i+j <= 8, {len(bad)} mismatches, {elapsed:.1f}s < 60s")
    assert ok


def test_criterion_4_jones_wenzl(report):
    def is_zero(m):
        return all(not c for c in m.cols.values())

    bad = []
    for n in range(2, 6):
        p = jw(n)
        if p @ p != p:
            bad.append((n, "idempotent"))
        for i in range(1, n):
            if not (is_zero(cap_matrix(i, n) @ p) and is_zero(cap_matrix(i, n) @ incl(n))):
                bad.append((n, "cap", i))
            if not is_zero(p @ cup_matrix(i, n - 2)):
                bad.append((n, "cup", i))
    ok = not bad
    report(4, ok, f"idempotence and cap/cup annihilation for n=2..5, failures={bad}")
    assert ok


def test_criterion_5_positivity(report):
    n = 0
    negative = []
    closed = []
    for tup in tuples(lambda i, j, k: i <= 4 and j <= 4):
        i, j, k = tup[:3]
        n += 1
        d = as_poly(threej_twisted(*tup))
        if any(c < 0 for _, c in (d * (-1) ** ((i + j - k) // 2)).items()):
            negative.append(tup)
        if threej_positivity(*tup) != d:
            closed.append(tup)
    ok = not negative and not closed
    report(5, ok, f"{n} tuples with i,j <= 4: sign-corrected D in N[q,q^-1] fails {len(negative)}; closed form (exponent -z) vs direct fails {len(closed)}")
    assert ok


FLAG3_PRINTED = [
    poly((0, 1)),
    poly((2, 2)),
    poly((4, 2), (6, 1)),
    poly((6, 2), (8, 2)),
    poly((8, 2), (10, 2), (12, 1)),
    poly((10, 2), (12, 2), (14, 2)),
    poly((12, 2), (14, 2), (16, 2), (20, 1)),
]


def test_criterion_6_euler(report):
    ps = ci_poincare(*flag_degrees(3), t_order=7)
    rank_bad = [m for m in range(7) if ps[m] != FLAG3_PRINTED[m]]
    inv_bad = [n for n in range(1, 6) if not (euler_inverse(*flag_degrees(n), q_order=40) * qfact_renorm(n)).congruent(q(0), 40)]
    dev_bad = []
    for n in range(1, 6):
        c = deviations(ci_poincare(*flag_degrees(n), t_order=13).at_q_one(), 12).c
        if c != [n - 1, n - 1] + [0] * 10:
            dev_bad.append(n)
    ok = not rank_bad and not inv_bad and not dev_bad
    detail = f"printed ranks t^0..t^6 mismatched at {rank_bad}"
    if rank_bad:
        detail += " (" + "; ".join(f"t^{m}: computed {ps[m]}, printed {FLAG3_PRINTED[m]}" for m in rank_bad) + ")"
    detail += f"; euler_inverse*[n]! = 1 mod q^40 fails for n in {inv_bad}; deviations (n-1,n-1,0,...) fail for n in {dev_bad}"
    report(6, ok, detail)
    assert ok


HAT_222 = {
    (1, 1, 1): poly((2, 1), (-2, -1)),
    (1, 0, 0): q(1),
    (2, 0, 1): q(3, -1),
    (0, 1, 0): q(1, -1),
    (2, 1, 2): q(1),
    (0, 2, 1): q(-1),
    (1, 2, 2): q(1, -1),
}
C_211 = {(2, 0, 1): q(-1, -1), (1, 0, 0): q(-1, -1), (1, 1, 1): q(1), (0, 1, 0): q(0)}
HAT_211 = {(2, 0, 1): q(2), (1, 0, 0): q(0, -1), (1, 1, 1): q(1, -1), (0, 1, 0): q(0)}


def test_criterion_7_networks(report):
    parts = {}
    circle = (cap_matrix(1, 2) @ cup_matrix(1, 0)).scalar()
    parts["circle"] = circle == RationalQ(-poly((1, 1), (-1, 1)))
    parts["unknot"] = all(unknot_value(n) == RationalQ(qint(n + 1) * (-1) ** n) for n in range(5))
    theta_ok = True
    for i, j, k in itertools.product(range(13), repeat=3):
        if admissible(i, j, k) and i + j + k <= 12:
            ratio = (theta_network(i, j, k) / theta_formula(i, j, k)).to_laurent()
            terms = ratio.items()
            if len(terms) != 1 or abs(terms[0][1]) != 1:
                theta_ok = False
    parts["theta ratio +-q^s"] = theta_ok
    parts["hat C (2,2,2)"] = all(hat_C(2, 2, 2, *rst) == v for rst, v in HAT_222.items())
    parts["C/hat C (2,1,1)"] = all(
        threej_direct(2, 1, 1, *rst) == C_211[rst] and hat_C(2, 1, 1, *rst) == HAT_211[rst] for rst in C_211
    )
    printed_bad = corrected_bad = total = 0
    for tup in tuples(lambda i, j, k: i <= 3 and j <= 3):
        c = threej_direct(*tup)
        if not c:
            continue
        total += 1
        h = as_poly(hat_C(*tup))
        printed_bad += c != h * kl_constant(*tup, printed=True)
        corrected_bad += c != h * kl_constant(*tup)
    parts["KL constant as printed"] = printed_bad == 0
    ok = all(parts.values())
    failed = [name for name, v in parts.items() if not v]
    report(
        7,
        ok,
        f"sub-checks failing: {failed or 'none'}; printed KL constant fails on {printed_bad}/{total} nonzero values "
        f"(constant with (-q)^-r fails on {corrected_bad}/{total})",
    )
    assert ok


def test_criterion_8_gk(report):
    multiset = Counter(gk_dim(a) for a in sequences(5, 3))
    coset_bad = [(m, n) for m in range(11) for n in range(11 - m) if not quantum_coset_identity_check(m, n)]
    ok = multiset == Counter({8: 5, 9: 4, 10: 1}) and not coset_bad
    report(8, ok, f"GK multiset n=5,k=3: {sorted(multiset.elements())}; coset identity m+n <= 10 failures={coset_bad}")
    assert ok


def test_criterion_9_resolutions(report):
    bad = []
    for n, r in itertools.product(range(6), range(6)):
        try:
            alternating_sum_check(n, r)
            for s in range(6):
                for j in range(s, 6):
                    alternating_sum_check(n, r, s, j)
        except ArithmeticError as e:
            bad.append(str(e))
    for n, m, r, s in itertools.product(range(6), range(1, 6), range(6), range(6)):
        if not recursion_check(n, m, r, s):
            bad.append(("recursion", n, m, r, s))
    inv_bad = [(i, j) for i in range(6) for j in range(6) if not inverse_check(i, j)]
    ok = not bad and not inv_bad
    report(9, ok, f"identity/recursion failures={len(bad)} for n,m,r,s <= 5; inverse matrix failures for i,j <= 5: {inv_bad}")
    assert ok


def test_criterion_10_suite_runtime(report):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(TESTS_DIR), "--ignore", str(Path(__file__))],
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - start
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr.strip()[-200:]
    ok = proc.returncode == 0 and elapsed < 300
    report(10, ok, f"property suites headless: '{summary}', {elapsed:.0f}s < 300s")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
