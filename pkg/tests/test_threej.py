import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqsl2.laurent import LaurentPoly, qbinom
from uqsl2.networks import AdmissibilityError, admissible
from uqsl2.threej import (
    C_ROUTES,
    D_ROUTES,
    alternating_exponent_printed,
    arrangement_count,
    arrangements,
    gamma,
    hat_C,
    kl_constant,
    kl_shift,
    oriented_arrangements,
    threej,
    threej_alternating,
    threej_alternating_printed,
    threej_arrangements,
    threej_classical,
    threej_direct,
    threej_positivity,
    threej_quantum_sum,
    threej_sum_terms,
    threej_twisted,
    triangle_shape,
)

q = LaurentPoly.monomial


def poly(*terms):
    """``poly((e, c), ...)`` builds ``sum c q^e``."""
    out = LaurentPoly()
    for e, c in terms:
        out = out + q(e, c)
    return out


def tuples(bound_ij, bound_sum=None):
    for i in range(bound_ij + 1):
        for j in range(bound_ij + 1):
            if bound_sum is not None and i + j > bound_sum:
                continue
            for k in range(abs(i - j), i + j + 1, 2):
                for r in range(i + 1):
                    for s in range(j + 1):
                        for t in range(k + 1):
                            yield i, j, k, r, s, t


def as_poly(v):
    if isinstance(v, LaurentPoly):
        return v
    return v.to_laurent()


# golden values for i = j = k = 2
GOLDEN_C = {
    (1, 1, 1): poly((-2, -1), (2, 1)),
    (1, 0, 0): q(-1, -1),
    (2, 0, 1): q(-1, -1),
    (0, 1, 0): q(1),
    (2, 1, 2): q(-1, -1),
    (0, 2, 1): q(-1),
    (1, 2, 2): q(1),
}

GOLDEN_HAT = {
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
EXT_211 = {(0, 1, 0): q(0), (1, 1, 1): q(2, -1), (1, 0, 0): q(1, -1), (2, 0, 1): q(2)}

# bracket printed in the (4,5,5) example, before its prefactor
P455 = poly((16, 1), (12, -1), (10, -3), (8, -4), (6, -3), (4, -1), (2, 1), (0, 1), (-2, 1))


class TestTriangleShape:
    def test_455(self):
        assert triangle_shape(4, 5, 5) == (2, 3, 2)

    @pytest.mark.parametrize("n", range(6))
    def test_nn0(self, n):
        assert triangle_shape(n, n, 0) == (0, 0, n)

    def test_inequality_error(self):
        with pytest.raises(AdmissibilityError, match="triangle inequality"):
            triangle_shape(1, 1, 3)

    def test_parity_error(self):
        with pytest.raises(AdmissibilityError, match="parity"):
            triangle_shape(1, 1, 1)

    @given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 16))
    def test_shape_sums(self, i, j, k):
        if not admissible(i, j, k):
            with pytest.raises(AdmissibilityError):
                triangle_shape(i, j, k)
            return
        x, y, z = triangle_shape(i, j, k)
        assert (x + z, y + z, x + y) == (i, j, k)
        assert min(x, y, z) >= 0


class TestArrangements:
    def test_455_raw_count(self):
        assert arrangement_count(4, 5, 5, 2, 2, 2)[1] == 16
        assert sum(c.multiplicity for c in arrangements(4, 5, 5, 2, 2, 2)) == 16

    def test_455_signed_terms(self):
        classes = arrangements(4, 5, 5, 2, 2, 2)
        assert [c.a for c in classes] == [0, 1, 2]
        # contribution to C is (-1)^a times the multiplicity
        assert [(-1) ** c.a * c.multiplicity for c in classes] == [1, -12, 3]
        # arrangement signs carry the extra global (-1)^((i+j+k)/2 + r + s) = -1
        assert [c.sign * c.multiplicity for c in classes] == [-1, 12, -3]
        assert [c.gamma for c in classes] == [16, 9, 2]
        assert threej_classical(4, 5, 5, 2, 2, 2) == -8
        assert threej_arrangements(4, 5, 5, 2, 2, 2) == -8

    def test_222_two_classes(self):
        classes = arrangements(2, 2, 2, 1, 1, 1)
        assert len(classes) == 2
        assert {c.a: c.gamma for c in classes} == {0: 3, 1: 0}
        assert arrangement_count(2, 2, 2, 1, 1, 1) == (0, 2)

    def test_empty_when_weight_mismatch(self):
        assert arrangements(2, 2, 2, 0, 0, 0) == []

    def test_inadmissible(self):
        with pytest.raises(AdmissibilityError):
            arrangements(1, 1, 3, 0, 0, 0)

    def test_enumeration_matches_multiplicities(self):
        for tup in tuples(4):
            classes = arrangements(*tup)
            assert sum(c.multiplicity for c in classes) == arrangement_count(*tup)[1]

    def test_orientation_statistics(self):
        for L in oriented_arrangements(4, 5, 5):
            assert L.t == L.r + L.s - 2


class TestDirectAndSum:
    @pytest.mark.parametrize("rst", sorted(GOLDEN_C))
    def test_golden_direct(self, rst):
        assert threej_direct(2, 2, 2, *rst) == GOLDEN_C[rst]

    @pytest.mark.parametrize("rst", sorted(GOLDEN_C))
    def test_golden_sum(self, rst):
        assert threej_quantum_sum(2, 2, 2, *rst) == GOLDEN_C[rst]

    def test_golden_table_complete(self):
        nonzero = {rst for rst in itertools.product(range(3), repeat=3) if threej_direct(2, 2, 2, *rst)}
        assert nonzero == set(GOLDEN_C)

    def test_zero_by_weight(self):
        assert not threej_direct(2, 2, 2, 0, 0, 0)
        assert not threej_quantum_sum(2, 2, 2, 0, 0, 0)

    def test_sum_terms_222(self):
        # q^-1 (-q^-1 + q^3)
        terms = dict(threej_sum_terms(2, 2, 2, 1, 1, 1))
        assert terms == {0: q(3), 1: q(-1, -1)}

    def test_455_sum(self):
        v = threej_quantum_sum(4, 5, 5, 2, 2, 2)
        assert v.at_one() == -8
        assert v == P455.shift(-6)
        assert threej_direct(4, 5, 5, 2, 2, 2) == P455.shift(-6)

    def test_455_printed_label_is_not_the_tuple(self):
        # the printed prefactor q^-3 matches no (r, s, t)
        target = P455.shift(-3)
        hits = [rst for rst in itertools.product(range(5), range(6), range(6)) if threej_direct(4, 5, 5, *rst) == target]
        assert hits == []

    def test_gamma_455(self):
        assert [gamma(4, 5, 5, 2, 2, a) for a in range(3)] == [16, 9, 2]

    def test_sweep_direct_equals_sum(self):
        for tup in tuples(4):
            assert threej_direct(*tup) == threej_quantum_sum(*tup), tup

    @pytest.mark.parametrize("i,j,k", [(1, 1, 3), (2, 1, 2), (0, 0, 2)])
    def test_inadmissible(self, i, j, k):
        with pytest.raises(AdmissibilityError):
            threej_direct(i, j, k, 0, 0, 0)
        with pytest.raises(AdmissibilityError):
            threej_quantum_sum(i, j, k, 0, 0, 0)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            threej_direct(2, 2, 2, 3, 0, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_vanishing_off_weight(self, data):
        i = data.draw(st.integers(0, 4))
        j = data.draw(st.integers(0, 4))
        k = data.draw(st.sampled_from(range(abs(i - j), i + j + 1, 2)))
        r = data.draw(st.integers(0, i))
        s = data.draw(st.integers(0, j))
        t = data.draw(st.integers(0, k))
        z = (i + j - k) // 2
        if t != r + s - z:
            assert not threej_direct(i, j, k, r, s, t)
            assert not threej_quantum_sum(i, j, k, r, s, t)


class TestClassical:
    def test_examples(self):
        assert threej_classical(4, 5, 5, 2, 2, 2) == -8
        assert threej_classical(2, 2, 2, 1, 1, 1) == 0

    @pytest.mark.parametrize("n", range(6))
    def test_nn0_pattern(self, n):
        # z = n forces a = r and s = n - r
        for r in range(n + 1):
            for s in range(n + 1):
                expected = (-1) ** r * qbinom(n, r).at_one() if s == n - r else 0
                assert threej_classical(n, n, 0, r, s, 0) == expected

    def test_sweep_classical_is_sum_at_one(self):
        for tup in tuples(4):
            assert threej_classical(*tup) == threej_quantum_sum(*tup).at_one()
            assert threej_classical(*tup) == threej_arrangements(*tup)


class TestTwistedRoutes:
    def test_sign_positivity(self):
        for i, j, k, r, s, t in tuples(4):
            z = (i + j - k) // 2
            d = as_poly(threej_twisted(i, j, k, r, s, t)) * (-1) ** z
            assert all(c >= 0 for _, c in d.items()), (i, j, k, r, s, t)

    def test_closed_form_matches_direct(self):
        for tup in tuples(4):
            assert threej_twisted(*tup) == threej_positivity(*tup), tup

    def test_222_value(self):
        assert threej_twisted(2, 2, 2, 1, 1, 1) == poly((-2, -1), (0, -1))

    def test_agrees_with_C_on_extreme_vector(self):
        # v_r spade v_s = v_r (x) v_s when s = 0 and r + s <= j
        for i, j, k, r, s, t in tuples(3):
            if s == 0:
                assert threej_twisted(i, j, k, r, s, t) == threej_direct(i, j, k, r, s, t)

    @pytest.mark.xfail(strict=True, reason="printed exponent with h = j does not match the direct route")
    def test_printed_exponent(self):
        for tup in tuples(3):
            assert threej_twisted(*tup) == threej_positivity(*tup, printed=True), tup


class TestAlternating:
    def test_222(self):
        assert threej_alternating(2, 2, 2, 1, 1, 1) == GOLDEN_C[(1, 1, 1)]

    def test_single_term_when_r_is_i(self):
        for i, j, k, r, s, t in tuples(3):
            if r == i:
                # the expansion has only the g = 0 term
                assert threej_alternating(i, j, k, r, s, t) == threej_positivity(i, j, k, r, s, t)

    def test_sweep(self):
        for tup in tuples(3):
            assert threej_alternating(*tup) == threej_direct(*tup), tup

    @pytest.mark.xfail(strict=True, reason="printed exponents and signs do not match the direct route")
    def test_printed_formula(self):
        for tup in tuples(3):
            assert threej_alternating_printed(*tup) == threej_direct(*tup), tup

    def test_printed_exponent_is_integer(self):
        assert isinstance(alternating_exponent_printed(2, 2, 2, 1, 1, 1, 0), int)


class TestDispatch:
    def test_route_names(self):
        assert set(C_ROUTES) | set(D_ROUTES) == {"direct", "sum", "classical", "twisted", "positivity", "alternating"}

    def test_c_routes_agree(self):
        for route in C_ROUTES:
            v = threej(2, 2, 2, 1, 1, 1, route=route)
            if route == "classical":
                assert v == 0
            else:
                assert v == GOLDEN_C[(1, 1, 1)]

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            threej(2, 2, 2, 1, 1, 1, route="nope")


class TestRenormalized:
    @pytest.mark.parametrize("rst", sorted(GOLDEN_HAT))
    def test_hat_222(self, rst):
        assert hat_C(2, 2, 2, *rst) == GOLDEN_HAT[rst]

    @pytest.mark.parametrize("rst", sorted(C_211))
    def test_tables_211(self, rst):
        assert threej_direct(2, 1, 1, *rst) == C_211[rst]
        assert hat_C(2, 1, 1, *rst) == HAT_211[rst]

    @pytest.mark.parametrize("rst", sorted(EXT_211))
    def test_kl_shift_211(self, rst):
        assert as_poly(hat_C(2, 1, 1, *rst)).shift(kl_shift(2, 1, 1, *rst)) == EXT_211[rst]

    def test_corrected_constant_sweep(self):
        for tup in tuples(3):
            assert threej_direct(*tup) == as_poly(hat_C(*tup)) * kl_constant(*tup), tup

    @pytest.mark.xfail(strict=True, reason="printed constant is off by q^-r")
    def test_printed_constant_sweep(self):
        for tup in tuples(3):
            assert threej_direct(*tup) == as_poly(hat_C(*tup)) * kl_constant(*tup, printed=True), tup

    def test_printed_constant_fails_on_paper_table(self):
        # C_{2,1}^1(1,0,0) = -q^-1 while hat_C = -1 and the printed constant is q^0
        assert kl_constant(2, 1, 1, 1, 0, 0, printed=True) * HAT_211[(1, 0, 0)] != C_211[(1, 0, 0)]
        assert kl_constant(2, 1, 1, 1, 0, 0) * HAT_211[(1, 0, 0)] == C_211[(1, 0, 0)]
