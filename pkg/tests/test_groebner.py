import random
from fractions import Fraction

import pytest

import oracles
from randgen import random_ideal_instance, random_polynomial, random_ring
from conelift.groebner import (
    GroebnerBasis,
    Ideal,
    OrderSpec,
    UndeterminedError,
    cone_membership,
    contains_monomial,
    divide_with_remainder,
    groebner_basis,
    initial_ideal,
    lineality_contains,
    lineality_space,
    minimal_monomial_generators,
    refined_order,
    s_polynomial,
    toric_ideal_of_matrix,
    totally_positive_witness,
)
from conelift.polyring import PolyError, Polynomial, Ring, rat


def gb_as_dicts(gb):
    return sorted(
        (oracles.from_conelift(g) for g in gb.elements),
        key=lambda g: oracles.grlex_key(oracles.dp_lead(g)),
    )


class TestIdeal:
    def test_zero_generator_rejected(self):
        r = Ring(("x",))
        with pytest.raises(PolyError):
            Ideal(r, [r.zero])

    def test_foreign_generator_rejected(self):
        r = Ring(("x",))
        s = Ring(("y",))
        with pytest.raises(PolyError):
            Ideal(r, [s.parse("y")])

    def test_equality_is_generator_set_equality(self):
        r = Ring(("x", "y"))
        a = Ideal(r, [r.parse("x"), r.parse("y")])
        b = Ideal(r, [r.parse("y"), r.parse("x"), r.parse("x")])
        assert a == b
        assert hash(a) == hash(b)


class TestAgainstOracles:
    def test_textbook_circle_hyperbola(self):
        r = Ring(("x1", "x2"))
        ideal = Ideal(r, [r.parse("x1^2 + x2^2 - 1"), r.parse("x1*x2 - 1")])
        gb = groebner_basis(ideal, r.default_order())
        want = oracles.naive_buchberger(
            [oracles.from_conelift(g) for g in ideal.generators]
        )
        assert gb_as_dicts(gb) == want

    def test_random_ideals_match_naive_and_sympy(self):
        rng = random.Random(23)
        done = 0
        while done < 120:
            ring, gens = random_ideal_instance(rng)
            ideal = Ideal(ring, gens)
            order = ring.default_order()
            gb = groebner_basis(ideal, order, cache=False)
            dicts = [oracles.from_conelift(g) for g in gens]
            naive = oracles.naive_buchberger(dicts)
            assert gb_as_dicts(gb) == naive
            sym = oracles.sympy_gb_dicts(dicts, " ".join(ring.vars))
            assert gb_as_dicts(gb) == sym
            done += 1

    def test_weighted_order_matches_naive(self):
        rng = random.Random(29)
        for _ in range(60):
            ring, gens = random_ideal_instance(rng)
            rows = [
                tuple(rng.randint(1, 4) for _ in range(ring.n)),
            ]
            order = OrderSpec(ring, rows)
            gb = groebner_basis(Ideal(ring, gens), order, cache=False)
            key = lambda e: oracles.weighted_key(e, rows)
            naive = oracles.naive_buchberger(
                [oracles.from_conelift(g) for g in gens], key
            )
            got = sorted(
                (oracles.from_conelift(g) for g in gb.elements),
                key=lambda g: key(oracles.dp_lead(g, key)),
            )
            assert got == naive


class TestReducedBasisShape:
    def test_monic_and_self_reduced(self):
        rng = random.Random(31)
        for _ in range(80):
            ring, gens = random_ideal_instance(rng)
            order = ring.default_order()
            gb = groebner_basis(Ideal(ring, gens), order, cache=False)
            leads = [g.leading_term(order) for g in gb.elements]
            for (lead, lc) in leads:
                assert lc == 1
            for i, g in enumerate(gb.elements):
                for exp in g.terms:
                    for j, (lead, _) in enumerate(leads):
                        if i == j:
                            continue
                        assert not all(
                            a <= b for a, b in zip(lead, exp)
                        ), "monomial of one element divisible by another lead"

    def test_deterministic_element_order(self):
        r = Ring(("x", "y", "z"))
        ideal = Ideal(r, [r.parse("x*y - z^2"), r.parse("y^2 - x*z")])
        order = r.default_order()
        a = groebner_basis(ideal, order, cache=False)
        b = groebner_basis(ideal, order, cache=False)
        assert a.elements == b.elements

    def test_schedule_permutation_invariance_quick(self):
        rng = random.Random(37)
        for _ in range(40):
            ring, gens = random_ideal_instance(rng)
            ideal = Ideal(ring, gens)
            order = ring.default_order()
            base = groebner_basis(ideal, order, cache=False)
            shuffled = groebner_basis(
                ideal, order, rng=random.Random(rng.random()), cache=False
            )
            assert base.elements == shuffled.elements


class TestDivision:
    def test_postconditions(self):
        rng = random.Random(41)
        for _ in range(150):
            ring, gens = random_ideal_instance(rng)
            order = ring.default_order()
            f = random_polynomial(rng, ring, terms=4, zero_ok=True)
            quots, rem = divide_with_remainder(f, gens, order)
            total = ring.zero
            for q, g in zip(quots, gens):
                total = total + q * g
            assert total + rem == f
            leads = [g.leading_term(order)[0] for g in gens]
            for exp in rem.terms:
                assert not any(
                    all(a <= b for a, b in zip(lead, exp)) for lead in leads
                )
            if f.terms:
                fkey = order.key(f.leading_term(order)[0])
                for q, g in zip(quots, gens):
                    prod = q * g
                    if prod.terms:
                        assert order.key(prod.leading_term(order)[0]) <= fkey

    def test_matches_oracle_remainder_when_gb(self):
        r = Ring(("x", "y"))
        order = r.default_order()
        ideal = Ideal(r, [r.parse("x^2 - y"), r.parse("y^2 - 1")])
        gb = groebner_basis(ideal, order)
        rng = random.Random(43)
        divisors = [oracles.from_conelift(g) for g in gb.elements]
        for _ in range(100):
            f = random_polynomial(rng, r, terms=4, max_exp=4, zero_ok=True)
            got = gb.normal_form(f)
            _, want = oracles.dp_divmod(oracles.from_conelift(f), divisors)
            assert oracles.from_conelift(got) == want


class TestSPolynomial:
    def test_cancels_leading_terms(self):
        rng = random.Random(47)
        for _ in range(100):
            ring, gens = random_ideal_instance(rng)
            if len(gens) < 2:
                continue
            order = ring.default_order()
            f, g = gens[0], gens[1]
            s = s_polynomial(f, g, order)
            lf = f.leading_term(order)[0]
            lg = g.leading_term(order)[0]
            lcm = tuple(max(a, b) for a, b in zip(lf, lg))
            if s.terms:
                assert order.key(s.leading_term(order)[0]) < order.key(lcm)

    def test_matches_oracle(self):
        r = Ring(("x", "y"))
        order = r.default_order()
        f = r.parse("x^2*y - 1")
        g = r.parse("x*y^2 - x")
        s = s_polynomial(f, g, order)
        want = oracles.dp_spoly(
            oracles.from_conelift(f), oracles.from_conelift(g)
        )
        assert oracles.from_conelift(s) == want


class TestMembership:
    def test_contains_combinations(self):
        rng = random.Random(53)
        for _ in range(60):
            ring, gens = random_ideal_instance(rng)
            order = ring.default_order()
            gb = groebner_basis(Ideal(ring, gens), order, cache=False)
            combo = ring.zero
            for g in gens:
                combo = combo + random_polynomial(
                    rng, ring, terms=2, zero_ok=True
                ) * g
            assert gb.contains(combo)
            assert gb.normal_form(combo) == ring.zero

    def test_normal_form_idempotent(self):
        rng = random.Random(59)
        for _ in range(60):
            ring, gens = random_ideal_instance(rng)
            order = ring.default_order()
            gb = groebner_basis(Ideal(ring, gens), order, cache=False)
            f = random_polynomial(rng, ring, terms=4, zero_ok=True)
            nf = gb.normal_form(f)
            assert gb.normal_form(nf) == nf

    def test_unit_ideal_detects_everything(self):
        r = Ring(("x",))
        gb = groebner_basis(
            Ideal(r, [r.parse("x - 1"), r.parse("x")]), r.default_order()
        )
        assert gb.contains(r.one)


class TestUndetermined:
    def test_budget_exhaustion_raises(self):
        r = Ring(("x", "y", "z"))
        ideal = Ideal(
            r,
            [
                r.parse("x^3*y - z^2"),
                r.parse("y^3*z - x^2"),
                r.parse("z^3*x - y^2"),
            ],
        )
        with pytest.raises(UndeterminedError):
            groebner_basis(ideal, r.default_order(), max_reductions=2, cache=False)


class TestCache:
    def test_cache_returns_same_object(self):
        r = Ring(("x", "y"))
        ideal = Ideal(r, [r.parse("x^2 - y")])
        order = r.default_order()
        a = groebner_basis(ideal, order)
        b = groebner_basis(Ideal(r, [r.parse("x^2 - y")]), order)
        assert a is b
        c = groebner_basis(ideal, order, cache=False)
        assert c is not a
        assert c.elements == a.elements


class TestContainsMonomial:
    def test_monomial_ideal_yes(self):
        r = Ring(("x", "y"))
        assert contains_monomial(Ideal(r, [r.parse("x*y")]))

    def test_hidden_monomial_yes(self):
        r = Ring(("x", "y"))
        ideal = Ideal(r, [r.parse("x + y"), r.parse("x - y")])
        assert contains_monomial(ideal)

    def test_principal_non_monomial_no(self):
        # (x + y)(x, y) touches every variable yet holds no monomial
        r = Ring(("x", "y"))
        ideal = Ideal(r, [r.parse("x^2 + x*y"), r.parse("y^2 + x*y")])
        assert not contains_monomial(ideal)

    def test_prime_binomial_no(self):
        r = Ring(("x", "y", "z"))
        assert not contains_monomial(Ideal(r, [r.parse("x*z - y^2")]))

    def test_plucker_no(self):
        r = Ring(("a", "b", "c", "d", "e", "f"))
        ideal = Ideal(r, [r.parse("a*f - b*e + c*d")])
        assert not contains_monomial(ideal)


class TestToricIdeal:
    def test_twisted_cubic(self):
        r = Ring(("x1", "x2", "x3"))
        toric = toric_ideal_of_matrix([[1, 1, 1], [0, 1, 2]], r)
        assert Ideal(r, toric.generators) == Ideal(
            r, [r.parse("x1*x3 - x2^2")]
        )

    def test_negative_entries_laurent_kernel(self):
        r = Ring(("x", "y"))
        toric = toric_ideal_of_matrix([[1, -1]], r)
        assert Ideal(r, toric.generators) == Ideal(r, [r.parse("x*y - 1")])

    def test_segre(self):
        r = Ring(("a", "b", "c", "d"))
        matrix = [
            [1, 1, 0, 0],
            [0, 0, 1, 1],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
        ]
        toric = toric_ideal_of_matrix(matrix, r)
        assert Ideal(r, toric.generators) == Ideal(r, [r.parse("a*d - b*c")])

    def test_width_mismatch_rejected(self):
        r = Ring(("x", "y"))
        with pytest.raises(PolyError):
            toric_ideal_of_matrix([[1, 2, 3]], r)

    def test_kernel_membership_by_balance(self):
        rng = random.Random(61)
        for _ in range(20):
            k, n = 2, 4
            matrix = [
                [rng.randint(0, 2) for _ in range(n)] for _ in range(k)
            ]
            ring = Ring(tuple("x%d" % (i + 1) for i in range(n)))
            toric = toric_ideal_of_matrix(matrix, ring)
            for g in toric.generators:
                assert len(g.terms) == 2
                (e1, c1), (e2, c2) = sorted(g.terms.items())
                assert c1 * c2 == -1
                for row in matrix:
                    assert sum(a * b for a, b in zip(row, e1)) == sum(
                        a * b for a, b in zip(row, e2)
                    )


class TestInitialIdeal:
    def test_interior_weight_gives_monomial_ideal(self):
        r = Ring(
            ("p12", "p13", "p14", "p23", "p24", "p34"),
        )
        ideal = Ideal(r, [r.parse("p13*p24 - p12*p34 - p14*p23")])
        init = initial_ideal(ideal, (1, 0, 1, 1, 0, 1))
        assert init == Ideal(r, [r.parse("p13*p24")])

    def test_boundary_weight_gives_binomial(self):
        r = Ring(
            ("p12", "p13", "p14", "p23", "p24", "p34"),
        )
        ideal = Ideal(r, [r.parse("p13*p24 - p12*p34 - p14*p23")])
        init = initial_ideal(ideal, (1, 0, 0, 0, 0, 1))
        assert init == Ideal(r, [r.parse("p13*p24 - p14*p23")])

    def test_zero_weight_returns_ideal_itself(self):
        r = Ring(("x", "y"))
        ideal = Ideal(r, [r.parse("x^2 - y^2")])
        init = initial_ideal(ideal, (0, 0))
        assert init == ideal

    def test_outside_cone_of_supplied_order_rejected(self):
        r = Ring(("x", "y"))
        ideal = Ideal(r, [r.parse("x - y")])
        order = OrderSpec(r, [(2, 1)])
        with pytest.raises(PolyError):
            initial_ideal(ideal, (5, 0), order=order)


class TestConeMachinery:
    def test_refined_order_cone_membership(self):
        r = Ring(
            ("p12", "p13", "p14", "p23", "p24", "p34"),
        )
        ideal = Ideal(r, [r.parse("p13*p24 - p12*p34 - p14*p23")])
        w_int = (1, 0, 1, 1, 0, 1)
        gb = groebner_basis(ideal, refined_order(r, w_int))
        assert cone_membership(gb, w_int) == "interior"
        assert cone_membership(gb, (1, 0, 0, 0, 0, 1)) == "boundary"
        assert cone_membership(gb, (0, 1, 0, 0, 1, 0)) == "outside"

    def test_lineality(self):
        r = Ring(
            ("p12", "p13", "p14", "p23", "p24", "p34"),
        )
        ideal = Ideal(r, [r.parse("p13*p24 - p12*p34 - p14*p23")])
        gb = groebner_basis(ideal, r.default_order())
        # weights constant on all three quadratic monomials fix the ideal
        ell = (1, 1, 1, 1, 1, 1)
        assert lineality_contains(gb, ell)
        basis = lineality_space(gb)
        assert len(basis) == 4
        for row in basis:
            assert lineality_contains(gb, row)

    def test_minimal_monomial_generators(self):
        exps = [(2, 0), (0, 2), (2, 1), (3, 3), (1, 1)]
        assert minimal_monomial_generators(exps) == [(0, 2), (1, 1), (2, 0)]


class TestStandardMonomials:
    def test_plucker_counts(self):
        r = Ring(
            ("p12", "p13", "p14", "p23", "p24", "p34"),
        )
        ideal = Ideal(r, [r.parse("p13*p24 - p12*p34 - p14*p23")])
        gb = groebner_basis(ideal, r.default_order())
        sm = gb.standard_monomials()
        assert sm.count_by_degree(3) == {0: 1, 1: 6, 2: 20, 3: 50}

    def test_divisor_closed_spot(self):
        rng = random.Random(67)
        r = Ring(("x", "y", "z"))
        order = r.default_order()
        for _ in range(40):
            leads = [
                tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(3)
            ]
            leads = [e for e in leads if any(e)]
            if not leads:
                continue
            from conelift.groebner import StandardMonomialBasis

            sm = StandardMonomialBasis(r, order, leads)
            for deg in range(4):
                for mono in sm.monomials_of_degree(deg):
                    for i in range(3):
                        if mono[i]:
                            below = tuple(
                                e - (1 if j == i else 0)
                                for j, e in enumerate(mono)
                            )
                            assert sm.contains(below)

    def test_counts_against_rank_oracle(self):
        rng = random.Random(71)
        for _ in range(15):
            r = Ring(("x", "y", "z"))
            f = random_polynomial(rng, r, terms=3, max_exp=2)
            if not f.terms:
                continue
            # homogenize by padding with a power of z
            deg = max(sum(e) for e in f.terms)
            terms = {
                e[:2] + (e[2] + deg - sum(e),): c for e, c in f.terms.items()
            }
            f = Polynomial(r, terms)
            ideal = Ideal(r, [f])
            gb = groebner_basis(ideal, r.default_order(), cache=False)
            sm = gb.standard_monomials()
            for d in range(4):
                want = oracles.graded_dim_oracle(
                    [oracles.from_conelift(f)], 3, d
                )
                assert len(sm.monomials_of_degree(d)) == want


class TestWitness:
    def test_crossing_basis_passes(self):
        r = Ring(
            ("p12", "p13", "p14", "p23", "p24", "p34"),
        )
        ideal = Ideal(r, [r.parse("p13*p24 - p12*p34 - p14*p23")])
        gb = groebner_basis(ideal, refined_order(r, (1, 0, 1, 1, 0, 1)))
        assert totally_positive_witness(gb)

    def test_two_positive_terms_fail(self):
        r = Ring(("x", "y"))
        gb = groebner_basis(
            Ideal(r, [r.parse("x^2 + y^2")]), r.default_order()
        )
        assert not totally_positive_witness(gb)
