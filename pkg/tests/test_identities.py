"""Identity-catalog tests: frozen small values, decomposition oracles,
interpolation projections, and full-suite runs on small systems."""

import random
from fractions import Fraction

import pytest

from rootheight.errors import DegreeTooHigh
from rootheight.exactalg import CycNum, Polynomial, cyc_eval
from rootheight.identities import (available_checks, b_from_exponents, b_poly,
                                   dynkin_check, exponent_poly,
                                   lagrange_all_roots,
                                   lagrange_primitive_roots, mirimanoff_check,
                                   munagi_decompose, pole_sum_witness,
                                   primitive_residues, run_suite,
                                   singularity_check, singularity_data)
from rootheight.numth import ArithSeq, divisors, is_cohen, totient
from rootheight.rootsys import RootSystemId, build


def P(*coeffs):
    return Polynomial(coeffs)


class TestHeightPolynomial:
    def test_rank2_hexagonal(self, catalog):
        assert b_poly(catalog["G2"]) == P(2, 1, 1, 1, 1)

    def test_rank_one(self, catalog):
        assert b_poly(catalog["A1"]) == P(1)

    def test_largest_exceptional_count(self, catalog):
        assert b_poly(catalog["E8"])(1) == 120

    def test_from_exponents(self):
        assert b_from_exponents([1, 5]) == P(2, 1, 1, 1, 1)

    def test_exponent_poly(self, catalog):
        assert exponent_poly(catalog["D4"]) == P(0, 1, 0, 2, 0, 1)


class TestMunagi:
    def test_period_two_closed_form(self):
        rng = random.Random(3)
        for _ in range(30):
            a0, a1 = rng.randint(-9, 9), rng.randint(-9, 9)
            dec = munagi_decompose(P(a0, a1), 2)
            assert dec.parts[1] == P(a1)
            assert dec.parts[2] == P(a0 - a1)

    def test_m_sequence_parts_are_constants(self, catalog):
        g2 = catalog["G2"]
        dec = munagi_decompose(Polynomial(g2.m), 6)
        assert {d: list(p.coeffs) for d, p in dec.parts.items()} == {
            1: [1], 2: [-1], 3: [-1], 6: [1]}

    def test_p_sequence_parts_are_constants(self, catalog):
        g2 = catalog["G2"]
        dec = munagi_decompose(Polynomial(g2.p), 6)
        assert {d: list(p.coeffs) for d, p in dec.parts.items()} == {
            1: [1], 2: [-2], 3: [-3], 6: [6]}

    def test_non_constant_part_for_non_cohen_input(self):
        dec = munagi_decompose(P(0, 1, 0, 0), 4)
        assert any(p.degree >= 1 for p in dec.parts.values())

    def test_degree_guard(self):
        with pytest.raises(DegreeTooHigh):
            munagi_decompose(P(1, 1, 1), 2)

    def test_roundtrip_random(self):
        rng = random.Random(11)
        for h in range(2, 25):
            for _ in range(20):
                numer = Polynomial([Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                                    for _ in range(h)])
                dec = munagi_decompose(numer, h)
                assert dec.reconstruct() == numer
                for d, part in dec.parts.items():
                    assert part.degree < totient(d)

    def test_cohen_iff_constant_parts(self):
        rng = random.Random(23)
        from math import gcd
        for h in range(3, 25):
            for _ in range(20):
                vals = {d: rng.randint(-9, 9) for d in divisors(h)}
                seq = [vals[h]] + [vals[gcd(k, h)] for k in range(1, h)]
                dec = munagi_decompose(Polynomial(seq), h)
                assert all(p.degree <= 0 for p in dec.parts.values())
                assert is_cohen(ArithSeq(h, tuple(seq)))[0]

                while True:
                    seq = [rng.randint(-9, 9) for _ in range(h)]
                    if not is_cohen(ArithSeq(h, tuple(seq)))[0]:
                        break
                dec = munagi_decompose(Polynomial(seq), h)
                assert any(p.degree >= 1 for p in dec.parts.values())


class TestInterpolation:
    def test_low_degree_projection(self):
        assert lagrange_all_roots([cyc_eval(P(0, 1), 2, i) for i in range(2)],
                                  2) == P(0, 1)

    def test_constant_on_nodes(self):
        h = 5
        vals = [cyc_eval(Polynomial.monomial(h), h, i) for i in range(h)]
        assert lagrange_all_roots(vals, h) == P(1)

    def test_exponent_poly_projection(self, catalog):
        g2 = catalog["G2"]
        e = exponent_poly(g2)
        vals = [cyc_eval(e, 6, i) for i in range(6)]
        assert lagrange_all_roots(vals, 6) == e

    def test_projection_random(self):
        rng = random.Random(41)
        for h in range(1, 31):
            for _ in range(3 if h <= 12 else 1):
                p = Polynomial([rng.randint(-5, 5) for _ in range(h)])
                vals = [cyc_eval(p, h, i) for i in range(h)]
                assert lagrange_all_roots(vals, h) == p

    def test_primitive_constant(self):
        for h in (3, 4, 6, 8):
            ones = [1] * totient(h)
            assert lagrange_primitive_roots(ones, h) == P(1)

    def test_primitive_linear(self):
        vals = [cyc_eval(P(0, 1), 4, k) for k in primitive_residues(4)]
        assert lagrange_primitive_roots(vals, 4) == P(0, 1)

    def test_primitive_square_collapses(self):
        vals = [cyc_eval(P(0, 0, 1), 4, k) for k in primitive_residues(4)]
        assert lagrange_primitive_roots(vals, 4) == P(-1)

    def test_primitive_projection_random(self):
        rng = random.Random(43)
        for h in range(3, 31):
            phi = totient(h)
            for _ in range(3 if h <= 12 else 1):
                p = Polynomial([rng.randint(-5, 5) for _ in range(phi)])
                vals = [cyc_eval(p, h, k) for k in primitive_residues(h)]
                assert lagrange_primitive_roots(vals, h) == p


class TestSingularity:
    def test_weights_fixtures(self, catalog):
        expected = {
            "A1": (1, 1, 1, 2), "A3": (1, 2, 2, 4),
            "D4": (2, 2, 3, 8), "D5": (2, 3, 4, 12),
            "E6": (3, 4, 6, 24), "E7": (4, 6, 9, 48), "E8": (6, 10, 15, 120),
        }
        for name, (a, b, c, g) in expected.items():
            data = singularity_data(catalog[name])
            assert (data.a, data.b, data.c, data.group_order) == (a, b, c, g)

    def test_half_integer_weights(self, catalog):
        data = singularity_data(catalog["A2"])
        assert (data.a, data.b, data.c) == (1, Fraction(3, 2), Fraction(3, 2))

    def test_cartan_determinants(self, catalog):
        for name, expected in (("A4", 5), ("D6", 4), ("E6", 3), ("E7", 2),
                               ("E8", 1)):
            assert singularity_data(catalog[name]).cartan_det == expected

    def test_reports_pass(self, catalog):
        for name in ("A1", "A2", "A5", "D4", "D7", "E6", "E7", "E8"):
            rep = singularity_check(catalog[name])
            assert rep.passed, rep.witness


class TestScalarChecks:
    def test_dynkin_rank_one(self, catalog):
        assert dynkin_check(catalog["A1"]).passed

    def test_mirimanoff_examples(self, catalog):
        g2 = catalog["G2"]
        assert mirimanoff_check(g2, 0).passed
        rep = mirimanoff_check(g2, 1)
        assert rep.passed
        # direct coefficients b_k * k
        direct = Polynomial([0, 2, 2, 3, 4, 5])
        via = b_poly(g2).shifted(1).derivative().shifted(1)
        assert via == direct
        assert mirimanoff_check(catalog["A1"], 3).passed

    def test_pole_sum_toy_value(self):
        # single primitive square root of unity: z/(1-z) = -1/2 at z = -1
        z = CycNum.zeta_pow(2, 1)
        assert z * (1 - z).inverse() == Fraction(-1, 2)

    def test_pole_sum_rational_all_orders(self):
        for h in range(2, 41):
            assert pole_sum_witness(h) is None


class TestSuite:
    @pytest.mark.parametrize("family,rank", [
        ("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4),
        ("G", 2), ("F", 4),
    ])
    def test_all_checks_pass(self, catalog, family, rank):
        rs = catalog[f"{family}{rank}"]
        for rep in run_suite(rs):
            assert rep.passed, f"{rep.identity_id}: {rep.witness}"

    def test_weight_check_only_simply_laced(self, catalog):
        assert "eq19" in available_checks(catalog["A2"])
        assert "eq19" not in available_checks(catalog["B2"])
        assert "eq19" not in available_checks(catalog["F4"])

    def test_fresh_system_matches_catalog(self):
        rs = build(RootSystemId("D", 5))
        for rep in run_suite(rs, ["prop11", "prop14", "eq19"]):
            assert rep.passed, rep.witness
