import random
from fractions import Fraction

import pytest

import oracles
from randgen import random_polynomial, random_ring
from conelift.polyring import (
    OrderSpec,
    ParseError,
    PolyError,
    Polynomial,
    Ring,
    exact_divide,
    format_polynomial,
    ideal_from_json,
    ideal_to_json,
    initial_form_weight,
    is_homogeneous,
    min_weight,
    order_from_json,
    order_to_json,
    parse_polynomial,
    rat,
    ring_from_json,
    ring_to_json,
    specialize,
    weighted_degree,
)
from conelift import kernel
from conelift import _kernel_py


class TestRing:
    def test_basic_fields(self):
        r = Ring(("x", "y", "z"))
        assert r.n == 3
        assert r.vars == ("x", "y", "z")
        assert r.d == (1, 1, 1)
        assert r.index == {"x": 0, "y": 1, "z": 2}

    def test_custom_grading(self):
        r = Ring(("x", "y"), d=(1, 2))
        assert r.d == (1, 2)
        assert weighted_degree(r.parse("x^2*y")) == 4

    def test_duplicate_names_rejected(self):
        with pytest.raises(PolyError):
            Ring(("x", "x"))

    def test_bad_name_rejected(self):
        with pytest.raises(PolyError):
            Ring(("x", "2y"))

    def test_grading_length_checked(self):
        with pytest.raises(PolyError):
            Ring(("x", "y"), d=(1,))

    def test_gens_and_one(self):
        r = Ring(("x", "y"))
        x, y = r.gens
        assert x * y == r.parse("x*y")
        assert r.one == r.parse("1")

    def test_extend_appends_weight_zero_parameters(self):
        r = Ring(("x",))
        r2 = r.extend(("t",))
        assert r2.vars == ("x", "t")
        assert r2.d == (1, 0)
        assert r.extend(("t",), d_new=(5,)).d == (1, 5)

    def test_laurent_negative_exponents(self):
        r = Ring(("x", "y"), laurent=True)
        f = r.parse("x^-1*y + 1")
        assert f.terms[(-1, 1)] == 1
        with pytest.raises(PolyError):
            Ring(("x",)).parse("x^-1")


class TestParseFormat:
    def test_round_trip_explicit(self):
        r = Ring(("x", "y"))
        for text in ("x^2*y - 3*x + 1/2", "-x + y", "0", "7", "x*y"):
            f = parse_polynomial(r, text)
            assert parse_polynomial(r, format_polynomial(f)) == f

    def test_coefficient_forms(self):
        r = Ring(("x",))
        assert r.parse("3/2*x") == r.parse("x*3/2")
        assert r.parse("2x") == r.parse("2*x")
        assert r.parse("-x") == -r.parse("x")
        assert r.parse("x - x") == r.zero

    def test_parse_errors(self):
        r = Ring(("x",))
        for bad in ("x +", "x^", "q", "x^^2", "(x", "1/0"):
            with pytest.raises(ParseError):
                r.parse(bad)

    def test_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(300):
            ring = random_ring(rng)
            f = random_polynomial(rng, ring, terms=5, zero_ok=True)
            assert parse_polynomial(ring, format_polynomial(f)) == f

    def test_format_uses_caret_powers(self):
        r = Ring(("x", "y"))
        assert format_polynomial(r.parse("x^2*y^3")) == "x^2*y^3"


class TestArithmetic:
    def test_matches_dict_oracle(self):
        rng = random.Random(11)
        for _ in range(300):
            ring = random_ring(rng)
            f = random_polynomial(rng, ring, zero_ok=True)
            g = random_polynomial(rng, ring, zero_ok=True)
            fd = oracles.from_conelift(f)
            gd = oracles.from_conelift(g)
            assert oracles.from_conelift(f + g) == oracles.dp_add(fd, gd)
            assert oracles.from_conelift(f * g) == oracles.dp_mul(fd, gd)
            assert oracles.from_conelift(f - g) == oracles.dp_add(
                fd, oracles.dp_scale(gd, Fraction(-1))
            )

    def test_pow(self):
        r = Ring(("x", "y"))
        f = r.parse("x + y")
        assert f**3 == r.parse("x^3 + 3*x^2*y + 3*x*y^2 + y^3")
        assert f**0 == r.one

    def test_cross_ring_operations_rejected(self):
        f = Ring(("x",)).parse("x")
        g = Ring(("y",)).parse("y")
        with pytest.raises(PolyError):
            f + g

    def test_exact_divide(self):
        r = Ring(("x", "y"))
        f = r.parse("x^2 - y^2")
        g = r.parse("x - y")
        assert exact_divide(f, g) == r.parse("x + y")
        with pytest.raises(PolyError):
            exact_divide(r.parse("x^2 + y"), g)

    def test_scalar_multiplication(self):
        r = Ring(("x",))
        f = r.parse("x + 1")
        assert 2 * f == r.parse("2*x + 2")
        assert f * rat("1/2") == r.parse("1/2*x + 1/2")


class TestOrderSpec:
    def test_default_order_is_graded_lex(self):
        r = Ring(("x", "y"))
        order = r.default_order()
        f = r.parse("x*y + y^2 + x^3")
        assert f.leading_term(order)[0] == (3, 0)
        g = r.parse("x*y + y^2")
        assert g.leading_term(order)[0] == (1, 1)

    def test_lex_vars_permutation(self):
        r = Ring(("x", "y"))
        order = OrderSpec(r, [(1, 1)], lex_vars=("y", "x"))
        assert r.parse("x + y").leading_term(order)[0] == (0, 1)

    def test_non_global_rejected(self):
        r = Ring(("x", "y"))
        with pytest.raises(PolyError):
            OrderSpec(r, [(-1, -1)])

    def test_non_global_allowed_without_validation(self):
        r = Ring(("x", "y"))
        OrderSpec(r, [(-1, -1)], validate=False)

    def test_weight_rows_dominate_tiebreak(self):
        r = Ring(("x", "y"))
        order = OrderSpec(r, [(1, 3)])
        assert r.parse("x^2 + y").leading_term(order)[0] == (0, 1)

    def test_key_total_order_on_samples(self):
        rng = random.Random(3)
        r = Ring(("x", "y", "z"))
        order = OrderSpec(r, [(1, 1, 1), (2, 1, 0)])
        exps = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(40)]
        keys = [order.key(e) for e in exps]
        for e, k in zip(exps, keys):
            assert order.key(e) == k
        ranked = sorted(zip(keys, exps))
        for (k1, e1), (k2, e2) in zip(ranked, ranked[1:]):
            if k1 == k2:
                assert e1 == e2

    def test_multiplicative(self):
        rng = random.Random(5)
        r = Ring(("x", "y"))
        order = OrderSpec(r, [(2, 3)])
        for _ in range(200):
            a = tuple(rng.randint(0, 4) for _ in range(2))
            b = tuple(rng.randint(0, 4) for _ in range(2))
            c = tuple(rng.randint(0, 4) for _ in range(2))
            ac = tuple(x + y for x, y in zip(a, c))
            bc = tuple(x + y for x, y in zip(b, c))
            assert (order.key(a) < order.key(b)) == (
                order.key(ac) < order.key(bc)
            )

    def test_one_is_minimal(self):
        r = Ring(("x", "y"))
        order = r.default_order()
        zero_key = order.key((0, 0))
        for e in ((1, 0), (0, 1), (2, 3)):
            assert order.key(e) > zero_key


class TestKernelBackends:
    def test_backend_selected(self):
        assert kernel.BACKEND in ("cython", "python")

    def test_order_key_parity(self):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(1, 5)
            rows = tuple(
                tuple(rng.randint(-3, 3) for _ in range(n))
                for _ in range(rng.randint(1, 3))
            )
            perm = list(range(n))
            rng.shuffle(perm)
            perm = tuple(perm)
            exp = tuple(rng.randint(0, 5) for _ in range(n))
            assert kernel.order_key(exp, rows, perm) == _kernel_py.order_key(
                exp, rows, perm
            )

    def test_monomial_divides_parity(self):
        rng = random.Random(17)
        for _ in range(300):
            n = rng.randint(1, 5)
            a = tuple(rng.randint(0, 3) for _ in range(n))
            b = tuple(rng.randint(0, 3) for _ in range(n))
            assert kernel.monomial_divides(a, b) == _kernel_py.monomial_divides(
                a, b
            )
            assert _kernel_py.monomial_divides(a, b) == all(
                x <= y for x, y in zip(a, b)
            )


class TestWeightsAndForms:
    def test_weighted_degree_and_homogeneity(self):
        r = Ring(("x", "y"), d=(1, 2))
        assert weighted_degree(r.parse("x^2 + y")) == 2
        assert is_homogeneous(r.parse("x^2 + y"))
        assert not is_homogeneous(r.parse("x + y"))
        with pytest.raises(PolyError):
            weighted_degree(r.zero)

    def test_initial_form_matches_oracle(self):
        rng = random.Random(19)
        for _ in range(300):
            ring = random_ring(rng)
            f = random_polynomial(rng, ring, terms=5)
            w = [Fraction(rng.randint(-4, 4)) for _ in range(ring.n)]
            got = oracles.from_conelift(initial_form_weight(f, w))
            want = oracles.bruteforce_initial_form(
                oracles.from_conelift(f), w
            )
            assert got == want
            assert min_weight(f, w) == min(
                sum(a * b for a, b in zip(w, e)) for e in f.terms
            )

    def test_initial_form_weight_length_check(self):
        r = Ring(("x", "y"))
        with pytest.raises(PolyError):
            initial_form_weight(r.parse("x"), (1,))

    def test_specialize(self):
        r = Ring(("x", "y", "t"))
        f = r.parse("x*t^2 + y*t + x")
        g = specialize(f, {"t": 1})
        assert g.ring.vars == ("x", "y")
        assert g == g.ring.parse("2*x + y")
        assert specialize(f, {"t": 0}) == g.ring.parse("x")

    def test_specialize_pole(self):
        r = Ring(("x", "t"), laurent=True)
        with pytest.raises(PolyError):
            specialize(r.parse("x*t^-1"), {"t": 0})


class TestJsonRoundTrips:
    def test_ring_round_trip(self):
        r = Ring(("x", "y"), d=(1, 2))
        assert ring_from_json(ring_to_json(r)) == r

    def test_ideal_round_trip(self):
        r = Ring(("x", "y"))
        gens = [r.parse("x^2 - y"), r.parse("x*y - 1/3")]
        ring2, gens2 = ideal_from_json(ideal_to_json(r, gens))
        assert ring2 == r
        assert gens2 == gens

    def test_order_round_trip(self):
        r = Ring(("x", "y"))
        order = OrderSpec(r, [(1, 2)], lex_vars=("y", "x"))
        order2 = order_from_json(r, order_to_json(order))
        for e in ((1, 0), (0, 1), (2, 2), (3, 1)):
            assert order.key(e) == order2.key(e)

    def test_malformed_rejected(self):
        with pytest.raises(ParseError):
            ring_from_json({"d": [1]})
        with pytest.raises(ParseError):
            ideal_from_json({"vars": ["x"], "generators": "x"})
        r = Ring(("x",))
        with pytest.raises(ParseError):
            order_from_json(r, {"weight_rows": [[1]], "tiebreak": "grevlex"})


class TestSortedItems:
    def test_sorted_items_descending(self):
        r = Ring(("x", "y"))
        order = r.default_order()
        f = r.parse("x^2 + x*y + y")
        items = f.sorted_items(order)
        keys = [order.key(e) for e, _ in items]
        assert keys == sorted(keys, reverse=True)

    def test_monic(self):
        r = Ring(("x", "y"))
        order = r.default_order()
        f = r.parse("3*x^2 + 6*y")
        assert f.monic(order) == r.parse("x^2 + 2*y")
