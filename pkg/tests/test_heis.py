import math
import random
from fractions import Fraction

import pytest

from cuspspec.errors import DomainError, RationalInputError
from cuspspec.heis import (
    HeisContext,
    HeisPoint,
    HeisRational,
    c_prime_estimate,
    cygan_dist,
    heis_inverse,
    heis_mul,
    heis_penetration,
    is_in_EprimeI,
)
from cuspspec.numkit import OrderSpec, QuadInt, QuadSurd

CTX1 = HeisContext.for_m(1)
O1 = CTX1.order


def q1(a, b):
    return QuadInt(a, b, O1)


def random_exact_point(rng) -> HeisPoint:
    w_re = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    w_im = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    z_im = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return HeisPoint((w_re * w_re + w_im * w_im) / 2, z_im, w_re, w_im)


class TestGroupLaw:
    def test_identity(self):
        x = HeisPoint(2, 0, 2, 0)
        e = HeisPoint.origin()
        assert heis_mul(x, e).coords() == x.coords()
        assert heis_mul(e, x).coords() == x.coords()

    def test_inverse(self):
        rng = random.Random(40)
        for _ in range(100):
            x = random_exact_point(rng)
            assert heis_mul(x, heis_inverse(x)).is_origin()
            assert heis_mul(heis_inverse(x), x).is_origin()

    def test_hand_example(self):
        x = HeisPoint(2, 0, 2, 0)
        y = heis_mul(x, x)
        assert y.coords() == (8, 0, 4, 0)

    def test_constraint_validated(self):
        with pytest.raises(DomainError):
            HeisPoint(1, 0, 2, 0)  # 2*1 != |2|^2

    def test_associativity_exact(self):
        rng = random.Random(41)
        for _ in range(1500):
            a, b, c = (random_exact_point(rng) for _ in range(3))
            assert heis_mul(heis_mul(a, b), c).coords() == heis_mul(a, heis_mul(b, c)).coords()

    def test_closure_is_exact_identity(self):
        # the product constructor re-checks 2 Re z = |w|**2 exactly
        rng = random.Random(42)
        for _ in range(500):
            x, y = random_exact_point(rng), random_exact_point(rng)
            heis_mul(x, y)  # DomainError would fail the test


class TestCygan:
    def test_origin_formula(self):
        assert abs(cygan_dist(HeisPoint.origin(), HeisPoint(2, 0, 2, 0)) - math.sqrt(8)) < 1e-14

    def test_zero_distance(self):
        x = HeisPoint(Fraction(5, 2), 3, 1, 2)
        assert cygan_dist(x, x) == 0.0

    def test_symmetry_via_inverse(self):
        rng = random.Random(43)
        for _ in range(100):
            x, y = random_exact_point(rng), random_exact_point(rng)
            assert abs(cygan_dist(x, y) - cygan_dist(y, x)) < 1e-12

    def test_left_invariance(self):
        rng = random.Random(44)
        for _ in range(300):
            g, x, y = (random_exact_point(rng) for _ in range(3))
            d0 = cygan_dist(x, y)
            d1 = cygan_dist(heis_mul(g, x), heis_mul(g, y))
            assert abs(d0 - d1) < 1e-12


class TestMembership:
    def test_examples(self):
        assert is_in_EprimeI(CTX1, q1(1, 0), q1(1, 1), q1(1, 0))
        assert is_in_EprimeI(CTX1, q1(0, 0), q1(0, 0), q1(1, 0))
        assert not is_in_EprimeI(CTX1, q1(1, 0), q1(1, 0), q1(1, 0))

    def test_ideal_constraint(self):
        ctx2 = HeisContext.for_m(1, [q1(1, 1)])
        # alpha and c must lie in <1+i>
        assert not is_in_EprimeI(ctx2, q1(1, 0), q1(1, 1), q1(1, 0))
        assert is_in_EprimeI(ctx2, q1(1, 0), q1(1, 1), q1(1, 1))

    def test_non_maximal_rejected(self):
        sub = OrderSpec.with_omega(3, 0, 2)
        ctx = HeisContext(sub, __import__("cuspspec.numkit", fromlist=["unit_ideal"]).unit_ideal(sub))
        with pytest.raises(DomainError):
            is_in_EprimeI(ctx, QuadInt(0, 0, sub), QuadInt(0, 0, sub), QuadInt(1, 0, sub))

    def test_triple_point_is_exact_heis_point(self):
        # 2 Re(a/c) = |alpha/c|**2 follows exactly from the triple constraint
        rng = random.Random(45)
        count = 0
        while count < 50:
            a = q1(rng.randint(-9, 9), rng.randint(-9, 9))
            c = q1(rng.randint(-9, 9), rng.randint(-9, 9))
            alpha = q1(rng.randint(-9, 9), rng.randint(-9, 9))
            if c.is_zero() or (a * c.conj()).trace() != alpha.norm():
                continue
            HeisRational(a, alpha, c).point()  # constructor re-validates exactly
            count += 1


class TestCPrime:
    X = HeisPoint(Fraction(1), QuadSurd.sqrt_int(2), Fraction(1), Fraction(1))

    def test_positive_and_stable(self):
        res = c_prime_estimate(CTX1, self.X, 400)
        res4 = c_prime_estimate(CTX1, self.X, 1600)
        assert res.value > 0
        assert abs(res4.value - res.value) / res.value < 0.05

    def test_trace_monotone(self):
        res = c_prime_estimate(CTX1, self.X, 800)
        cum = res.trace.cumulative()
        assert all(a >= b - 1e-15 for a, b in zip(cum, cum[1:]))

    def test_enumerated_triples_admissible(self):
        res = c_prime_estimate(CTX1, self.X, 400)
        for shell in res.trace.shells:
            if not shell.witness:
                continue
            text = shell.witness.strip("()")
            a_s, al_s, c_s = text.split(";")
            from cuspspec.numkit import parse_quadint

            a = parse_quadint(a_s, O1)
            al = parse_quadint(al_s, O1)
            c = parse_quadint(c_s, O1)
            assert is_in_EprimeI(CTX1, a, al, c)

    def test_no_admissible_triples(self):
        ctx2 = HeisContext.for_m(1, [q1(1, 1)])
        with pytest.raises(DomainError):
            c_prime_estimate(ctx2, self.X, 1)

    def test_parabolic_rejected(self):
        x = HeisPoint(Fraction(1), Fraction(2), Fraction(1), Fraction(1))
        with pytest.raises(RationalInputError):
            c_prime_estimate(CTX1, x, 100)

    def test_rational_points_detected_in_field(self):
        # both coordinates in Q(i*sqrt(2)): (1 + i*sqrt2, i*sqrt2) is parabolic
        # for m=2 even though its components are irrational over Q
        ctx2 = HeisContext.for_m(2)
        x = HeisPoint(Fraction(1), QuadSurd.sqrt_int(2), Fraction(0), QuadSurd.sqrt_int(2))
        with pytest.raises(RationalInputError):
            c_prime_estimate(ctx2, x, 100)
        # the same point is generic for m=1 (components not in Q(i))
        assert c_prime_estimate(CTX1, x, 200).value > 0


class TestHeisPenetration:
    def test_examples(self):
        assert abs(heis_penetration(q1(1, 1)) - (math.log(math.sqrt(2)) + math.log(2))) < 1e-14
        assert abs(heis_penetration(q1(1, 0)) - math.log(2)) < 1e-14
        o3 = OrderSpec.maximal(3)
        assert abs(heis_penetration(QuadInt(1, 0, o3)) - math.log(math.sqrt(3))) < 1e-14

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            heis_penetration(q1(0, 0))
